"""Certificate serialization and human-readable rendering of derivations:
JSON for machine checking, plain text and LaTeX in the vertical
inference-figure layout (premiss above the line, rule name beside it).
"""
from __future__ import annotations

import json
from typing import Optional

from .core import Structure
from .rules import (
    Derivation,
    Proof,
    RuleId,
    RuleInstance,
    System,
    make_instance,
    parse_rule,
    parse_system,
)
from .syntax import format_structure, parse_context, parse_structure

__all__ = [
    "derivation_to_json",
    "derivation_from_json",
    "format_derivation_text",
    "format_derivation_latex",
    "mll_proof_to_json",
]


def derivation_to_json(d: Derivation, system: Optional[System] = None) -> dict:
    steps = []
    for inst in d.steps:
        steps.append(
            {
                "rule": inst.rule.label,
                "context": format_structure(inst.context),
                "witness": {k: format_structure(v) for k, v in inst.witness},
                "premiss": format_structure(inst.premiss),
            }
        )
    out = {
        "conclusion": format_structure(d.conclusion),
        "steps": steps,
        "proof": isinstance(d, Proof),
    }
    if system is not None:
        out["system"] = system.name
    return out


def derivation_from_json(data: dict) -> Derivation:
    steps = []
    for entry in data.get("steps", []):
        rule = parse_rule(entry["rule"])
        ctx = parse_context(entry.get("context", "{}"))
        bindings = {k: parse_structure(v) for k, v in entry.get("witness", {}).items()}
        inst = make_instance(rule, ctx, **bindings)
        declared = entry.get("premiss")
        if declared is not None and parse_structure(declared) is not inst.premiss:
            raise ValueError(
                f"step premiss {declared!r} does not replay (expected {format_structure(inst.premiss)!r})"
            )
        steps.append(inst)
    conclusion = parse_structure(data["conclusion"])
    cls = Proof if data.get("proof") else Derivation
    return cls(conclusion, tuple(steps))


def format_derivation_text(d: Derivation) -> str:
    if not d.steps:
        return format_structure(d.conclusion)
    lines = []
    width = max(
        max(len(format_structure(i.premiss)) for i in d.steps),
        max(len(format_structure(i.conclusion)) for i in d.steps),
    )
    lines.append(format_structure(d.premiss))
    for inst in d.steps:
        if inst.rule is RuleId.O_DOWN:
            lines[-1] = format_structure(inst.conclusion)
            lines.insert(0, " " + "-" * width + "  " + inst.rule.label)
            continue
        lines.append(" " + "-" * width + "  " + inst.rule.label)
        lines.append(format_structure(inst.conclusion))
    return "\n".join(lines)


_LATEX_ESC = {"~": r"\bar", "<": r"\langle ", ">": r"\rangle ", ";": ";"}


def _latex_structure(s: Structure) -> str:
    from .core import Atom, Copar, Par, Seq, UNIT, HOLE

    if s is UNIT:
        return r"\circ"
    if s is HOLE:
        return r"\{\;\}"
    if isinstance(s, Atom):
        return rf"\bar{{{s.name}}}" if s.negative else s.name
    if isinstance(s, Seq):
        return r"\langle " + ";".join(_latex_structure(c) for c in s.children) + r"\rangle "
    if isinstance(s, Par):
        return "[" + ",".join(_latex_structure(c) for c in s.children) + "]"
    return "(" + ",".join(_latex_structure(c) for c in s.children) + ")"


_LATEX_RULE = {
    RuleId.O_DOWN: r"\circ\!\downarrow",
    RuleId.AI_DOWN: r"ai\!\downarrow",
    RuleId.AI_UP: r"ai\!\uparrow",
    RuleId.Q_DOWN: r"q\!\downarrow",
    RuleId.Q_UP: r"q\!\uparrow",
    RuleId.S: "s",
    RuleId.WS: "ws",
    RuleId.I_DOWN: r"i\!\downarrow",
    RuleId.I_UP: r"i\!\uparrow",
    RuleId.G_DOWN: r"g\!\downarrow",
    RuleId.G_UP: r"g\!\uparrow",
    RuleId.WG_DOWN: r"wg\!\downarrow",
    RuleId.WG_UP: r"wg\!\uparrow",
}


def format_derivation_latex(d: Derivation) -> str:
    """Vertical inference column: each step one premiss line, a labelled
    rule line, ending at the conclusion."""
    lines = [r"\begin{array}{c}"]
    if not d.steps:
        lines.append(_latex_structure(d.conclusion))
    else:
        first = d.steps[0]
        if first.rule is not RuleId.O_DOWN:
            lines.append(_latex_structure(d.premiss) + r" \\")
        for inst in d.steps:
            lines.append(rf"\hline \rlap{{\scriptsize ${_LATEX_RULE[inst.rule]}$}} \\")
            lines.append(_latex_structure(inst.conclusion) + r" \\")
        lines[-1] = lines[-1][: -len(r" \\")]
    lines.append(r"\end{array}")
    return "\n".join(lines)


def mll_proof_to_json(p) -> dict:
    from .mll import format_formula, format_sequent

    return {
        "rule": p.rule,
        "sequent": [format_formula(f) for f in p.sequent],
        "principal": format_formula(p.principal) if p.principal is not None else None,
        "children": [mll_proof_to_json(c) for c in p.children],
    }
