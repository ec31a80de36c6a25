"""Rule registry, one-step matching in both directions, derivation
certificates with a replay checker, duality, and the macro-rule expansions
that rewrite general interaction/merge steps into the small-step rules.

A rule instance stores its context, its witness bindings and the replayed
premiss/conclusion, so checking a certificate is pure replay with no
search.  Matching works modulo the syntactic equivalence: redexes come
from `decompositions`, unit paddings are tried uniformly, and trivial
instances (premiss equivalent to conclusion) are never emitted.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .core import (
    Atom,
    Copar,
    HOLE,
    Par,
    Seq,
    Structure,
    UNIT,
    atom,
    copar,
    decompositions,
    fill,
    negate,
    occurrences,
    par,
    seq,
    structure_key,
)
from .merge import (
    merge_member,
    merge_member_weak,
    merge_recursive,
    seq_splits,
    split_pairs,
    unmerge_pairs,
)
from . import webs

__all__ = [
    "RuleId",
    "System",
    "SYSTEMS",
    "BV",
    "FBV",
    "SBV",
    "SBVC",
    "MV",
    "WMV",
    "parse_rule",
    "parse_system",
    "RuleInstance",
    "Derivation",
    "Proof",
    "MalformedInstance",
    "MergeWitnessInvalid",
    "make_instance",
    "identity_derivation",
    "compose",
    "in_context",
    "CheckResult",
    "check_derivation",
    "premisses",
    "conclusions",
    "unit_contexts",
    "dual_instance",
    "dual_derivation",
    "expand_i_down",
    "expand_i_up",
    "expand_g_down",
    "expand_g_up",
    "expand_corule",
    "par_extrusion",
]


class RuleId(enum.Enum):
    O_DOWN = "od"
    AI_DOWN = "aid"
    AI_UP = "aiu"
    Q_DOWN = "qd"
    Q_UP = "qu"
    S = "s"
    WS = "ws"
    I_DOWN = "id"
    I_UP = "iu"
    G_DOWN = "gd"
    G_UP = "gu"
    WG_DOWN = "wgd"
    WG_UP = "wgu"

    @property
    def label(self) -> str:
        return _LABELS[self]

    def __repr__(self) -> str:
        return self.label


_LABELS = {
    RuleId.O_DOWN: "o↓",
    RuleId.AI_DOWN: "ai↓",
    RuleId.AI_UP: "ai↑",
    RuleId.Q_DOWN: "q↓",
    RuleId.Q_UP: "q↑",
    RuleId.S: "s",
    RuleId.WS: "ws",
    RuleId.I_DOWN: "i↓",
    RuleId.I_UP: "i↑",
    RuleId.G_DOWN: "g↓",
    RuleId.G_UP: "g↑",
    RuleId.WG_DOWN: "wg↓",
    RuleId.WG_UP: "wg↑",
}

_RULE_ALIASES: dict = {}
for _r, _lab in _LABELS.items():
    _RULE_ALIASES[_r.value] = _r
    _RULE_ALIASES[_lab] = _r
    _RULE_ALIASES[_lab.replace("↓", "v").replace("↑", "^")] = _r
_RULE_ALIASES["o."] = RuleId.O_DOWN
_RULE_ALIASES["unit"] = RuleId.O_DOWN


def parse_rule(text: str) -> RuleId:
    r = _RULE_ALIASES.get(text.strip().lower()) or _RULE_ALIASES.get(text.strip())
    if r is None:
        raise ValueError(f"unknown rule {text!r}")
    return r


@dataclass(frozen=True)
class System:
    name: str
    rules: frozenset

    def __contains__(self, rule: RuleId) -> bool:
        return rule in self.rules

    def union(self, *extra: RuleId, name: Optional[str] = None) -> "System":
        rules = self.rules | frozenset(extra)
        return System(name or "+".join([self.name] + [r.label for r in extra]), rules)


BV = System("BV", frozenset({RuleId.O_DOWN, RuleId.AI_DOWN, RuleId.Q_DOWN, RuleId.S}))
FBV = System("FBV", frozenset({RuleId.O_DOWN, RuleId.AI_DOWN, RuleId.S}))
SBV = System("SBV", frozenset({RuleId.AI_DOWN, RuleId.AI_UP, RuleId.Q_DOWN, RuleId.Q_UP, RuleId.S}))
SBVC = System("SBVc", frozenset({RuleId.Q_DOWN, RuleId.Q_UP, RuleId.S}))
MV = System("MV", frozenset({RuleId.G_DOWN, RuleId.G_UP}))
WMV = System("WMV", frozenset({RuleId.WG_DOWN, RuleId.WG_UP}))

SYSTEMS = {s.name: s for s in (BV, FBV, SBV, SBVC, MV, WMV)}
SYSTEMS["SBVc"] = SBVC


def parse_system(text: str) -> System:
    text = text.strip()
    for key, sys_ in SYSTEMS.items():
        if key.lower() == text.lower():
            return sys_
    rules = frozenset(parse_rule(part) for part in text.split(",") if part.strip())
    if not rules:
        raise ValueError(f"empty system {text!r}")
    return System(text, rules)


# ---------------------------------------------------------------------------
# Instances and replay


class MalformedInstance(ValueError):
    pass


class MergeWitnessInvalid(MalformedInstance):
    pass


@dataclass(frozen=True)
class RuleInstance:
    rule: RuleId
    context: Structure
    witness: tuple  # sorted (key, Structure) pairs
    premiss: Structure
    conclusion: Structure

    @property
    def bindings(self) -> dict:
        return dict(self.witness)

    @property
    def trivial(self) -> bool:
        return self.premiss is self.conclusion

    def __repr__(self) -> str:
        return f"{self.rule.label} {self.premiss!r} / {self.conclusion!r}"


def _b(**kw: Structure) -> tuple:
    return tuple(sorted(kw.items()))


def _replay(rule: RuleId, context: Structure, w: dict):
    if rule is RuleId.O_DOWN:
        if context is not HOLE or w:
            raise MalformedInstance("the unit axiom takes no context and no witness")
        return UNIT, UNIT
    if context._holes != 1:
        raise MalformedInstance("context must have exactly one hole")
    try:
        if rule is RuleId.AI_DOWN:
            a = w["a"]
            if not isinstance(a, Atom):
                raise MalformedInstance("interaction witness must be an atom")
            return fill(context, UNIT), fill(context, par((a, negate(a))))
        if rule is RuleId.AI_UP:
            a = w["a"]
            if not isinstance(a, Atom):
                raise MalformedInstance("interaction witness must be an atom")
            return fill(context, copar((a, negate(a)))), fill(context, UNIT)
        if rule is RuleId.I_DOWN:
            r = w["R"]
            return fill(context, UNIT), fill(context, par((r, negate(r))))
        if rule is RuleId.I_UP:
            r = w["R"]
            return fill(context, copar((r, negate(r)))), fill(context, UNIT)
        if rule is RuleId.Q_DOWN:
            r, t, rp, tp = w["R"], w["T"], w["Rp"], w["Tp"]
            return (
                fill(context, seq((par((r, t)), par((rp, tp))))),
                fill(context, par((seq((r, rp)), seq((t, tp))))),
            )
        if rule is RuleId.Q_UP:
            r, t, rp, tp = w["R"], w["T"], w["Rp"], w["Tp"]
            return (
                fill(context, copar((seq((r, t)), seq((rp, tp))))),
                fill(context, seq((copar((r, rp)), copar((t, tp))))),
            )
        if rule is RuleId.S:
            r, t, rp = w["R"], w["T"], w["Rp"]
            return (
                fill(context, copar((par((r, t)), rp))),
                fill(context, par((copar((r, rp)), t))),
            )
        if rule is RuleId.WS:
            r, t, rp, tp = w["R"], w["T"], w["Rp"], w["Tp"]
            return (
                fill(context, copar((par((r, t)), par((rp, tp))))),
                fill(context, par((copar((r, rp)), copar((t, tp))))),
            )
        if rule in (RuleId.G_DOWN, RuleId.WG_DOWN):
            r, t, q = w["R"], w["T"], w["Q"]
            member = merge_member if rule is RuleId.G_DOWN else merge_member_weak
            if not member(q, r, t):
                raise MergeWitnessInvalid(f"{q!r} is not a merge of {r!r} and {t!r}")
            return fill(context, q), fill(context, par((r, t)))
        if rule in (RuleId.G_UP, RuleId.WG_UP):
            r, t, q = w["R"], w["T"], w["Q"]
            member = merge_member if rule is RuleId.G_UP else merge_member_weak
            if not member(q, r, t):
                raise MergeWitnessInvalid(f"{q!r} is not a merge of {r!r} and {t!r}")
            return fill(context, copar((r, t))), fill(context, q)
    except KeyError as exc:
        raise MalformedInstance(f"missing witness binding {exc}") from None
    raise MalformedInstance(f"no replay for rule {rule}")


def make_instance(rule: RuleId, context: Structure = HOLE, **bindings: Structure) -> RuleInstance:
    premiss, conclusion = _replay(rule, context, bindings)
    return RuleInstance(rule, context, _b(**bindings), premiss, conclusion)


# ---------------------------------------------------------------------------
# Derivations


@dataclass(frozen=True)
class Derivation:
    """A chain of instances, topmost first; an empty chain is the one-
    structure derivation on `conclusion`."""

    conclusion: Structure
    steps: tuple = ()

    @property
    def premiss(self) -> Structure:
        return self.steps[0].premiss if self.steps else self.conclusion

    @property
    def length(self) -> int:
        return len(self.steps)

    def __repr__(self) -> str:
        return f"<derivation {self.premiss!r} => {self.conclusion!r} ({self.length} steps)>"


class Proof(Derivation):
    """A derivation whose topmost inference is the unit axiom."""

    def __repr__(self) -> str:
        return f"<proof of {self.conclusion!r} ({self.length} steps)>"


def identity_derivation(s: Structure) -> Derivation:
    return Derivation(s, ())


def compose(*parts: Derivation) -> Derivation:
    """Concatenate premiss-to-conclusion chains (top to bottom)."""
    parts = [p for p in parts if p is not None]
    if not parts:
        raise ValueError("nothing to compose")
    steps: list = []
    for i, p in enumerate(parts):
        if i and p.premiss is not parts[i - 1].conclusion:
            raise ValueError(
                f"cannot compose: segment {i} starts at {p.premiss!r}, previous ended at {parts[i-1].conclusion!r}"
            )
        steps.extend(p.steps)
    cls = Proof if parts and isinstance(parts[0], Proof) else Derivation
    return cls(parts[-1].conclusion, tuple(steps))


def in_context(d: Derivation, ctx: Structure) -> Derivation:
    """Run a derivation inside a one-hole context."""
    if isinstance(d, Proof):
        raise ValueError("cannot wrap a proof; wrap its body below the unit axiom")
    steps = []
    for inst in d.steps:
        steps.append(make_instance(inst.rule, fill(ctx, inst.context), **inst.bindings))
    return Derivation(fill(ctx, d.conclusion), tuple(steps))


def unit_proof() -> Proof:
    return Proof(UNIT, (make_instance(RuleId.O_DOWN),))


def proof_from_derivation(d: Derivation) -> Proof:
    """Cap a derivation whose premiss is the unit with the unit axiom."""
    if d.premiss is not UNIT:
        raise ValueError(f"premiss is {d.premiss!r}, not the unit")
    return Proof(d.conclusion, (make_instance(RuleId.O_DOWN),) + tuple(d.steps))


def body(p: Derivation) -> Derivation:
    """Strip the unit axiom off a proof, yielding a derivation from the unit."""
    if p.steps and p.steps[0].rule is RuleId.O_DOWN:
        return Derivation(p.conclusion, p.steps[1:])
    return Derivation(p.conclusion, tuple(p.steps))


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    code: Optional[str] = None
    step: Optional[int] = None
    message: str = ""
    warnings: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def check_derivation(d: Derivation, system: System, proof: Optional[bool] = None) -> CheckResult:
    """Replay every step, verify the chain and the rule set; for proof
    claims additionally require a single unit axiom at the top."""
    if proof is None:
        proof = isinstance(d, Proof)
    warnings = []
    prev: Optional[Structure] = None
    for i, inst in enumerate(d.steps):
        try:
            premiss, conclusion = _replay(inst.rule, inst.context, inst.bindings)
        except MalformedInstance as exc:
            return CheckResult(False, "MalformedInstance", i, str(exc))
        if premiss is not inst.premiss or conclusion is not inst.conclusion:
            return CheckResult(False, "MalformedInstance", i, "stored premiss/conclusion do not replay")
        if inst.rule not in system.rules:
            return CheckResult(False, "RuleNotInSystem", i, f"rule {inst.rule.label} not in {system.name}")
        if inst.rule is RuleId.O_DOWN and i != 0:
            return CheckResult(False, "MalformedInstance", i, "unit axiom below the top")
        if prev is not None and inst.premiss is not prev:
            return CheckResult(
                False, "BrokenChain", i, f"step premiss {inst.premiss!r} != previous conclusion {prev!r}"
            )
        if inst.trivial and inst.rule is not RuleId.O_DOWN:
            warnings.append(f"step {i}: trivial instance of {inst.rule.label}")
        prev = inst.conclusion
    if prev is not None and prev is not d.conclusion:
        return CheckResult(False, "BrokenChain", len(d.steps), "declared conclusion differs from last step")
    if proof:
        if not d.steps or d.steps[0].rule is not RuleId.O_DOWN:
            return CheckResult(False, "NotAProof", 0, "topmost inference is not the unit axiom")
    return CheckResult(True, warnings=tuple(warnings))


# ---------------------------------------------------------------------------
# Matching: all instances concluding in / starting from a structure


def _seq_two_splits(x: Structure) -> list:
    """(A, B) with <A;B> = x, including unit paddings."""
    return seq_splits(x)


def _copar_splits_with_unit(x: Structure) -> list:
    out = [(UNIT, x), (x, UNIT)]
    out.extend(split_pairs(x, Copar))
    return out


def _par_splits_with_unit(x: Structure) -> list:
    out = [(UNIT, x), (x, UNIT)]
    out.extend(split_pairs(x, Par))
    return out


def _bipartitions(node: Structure, cls) -> list:
    """Unordered two-block splits of a proper par/copar node's children."""
    mk = par if cls is Par else copar
    cs = node.children
    n = len(cs)
    seen = set()
    out = []
    for mask in range(1 << (n - 1)):
        picks = {0} | {i for i in range(1, n) if (mask >> (i - 1)) & 1}
        if len(picks) == n:
            continue
        a = mk([cs[i] for i in range(n) if i in picks])
        b = mk([cs[i] for i in range(n) if i not in picks])
        if (a, b) in seen:
            continue
        seen.add((a, b))
        out.append((a, b))
    return out


def _dual_pair(x: Structure, y: Structure) -> bool:
    return negate(x) is y


def unit_contexts(s: Structure, decs: Optional[list] = None) -> list:
    """Every context C with C{unit} = s, modulo equivalence: the hole can be
    adjoined next to any substructure in any of the four ways."""
    if s is UNIT:
        return [HOLE]
    out = []
    seen = set()
    for c0, x in decs if decs is not None else decompositions(s):
        for wrapped in (par((x, HOLE)), copar((x, HOLE)), seq((x, HOLE)), seq((HOLE, x))):
            ctx = fill(c0, wrapped)
            if ctx not in seen:
                seen.add(ctx)
                out.append(ctx)
    return out


def _atoms_of(s: Structure) -> list:
    return sorted({a.name for a in occurrences(s)})


def premisses(
    s: Structure,
    system: System,
    alphabet: Optional[Sequence[str]] = None,
    max_size: Optional[int] = None,
) -> tuple:
    """All non-trivial instances whose conclusion is `s`, one per distinct
    (rule, premiss) pair, deterministically ordered.

    Atom-introducing matching (interaction read upward) draws names from
    `alphabet`, defaulting to the names in `s`; general cointeraction needs
    `max_size` to bound the introduced structure.
    """
    found: dict = {}

    def emit(inst: RuleInstance) -> None:
        if inst.trivial:
            return
        key = (inst.rule, inst.premiss, inst.conclusion)
        if key not in found:
            found[key] = inst

    decs = decompositions(s)
    for rule in system.rules:
        if rule is RuleId.O_DOWN:
            continue
        if rule is RuleId.AI_DOWN:
            for ctx, red in decs:
                if isinstance(red, Par) and len(red.children) == 2:
                    x, y = red.children
                    if isinstance(x, Atom) and _dual_pair(x, y):
                        emit(make_instance(rule, ctx, a=x))
        elif rule is RuleId.I_DOWN:
            for ctx, red in decs:
                if isinstance(red, Par):
                    for x, y in _bipartitions(red, Par):
                        if _dual_pair(x, y):
                            emit(make_instance(rule, ctx, R=x))
        elif rule is RuleId.Q_DOWN:
            for ctx, red in decs:
                if not isinstance(red, Par):
                    continue
                for x, y in _bipartitions(red, Par):
                    for r, rp in _seq_two_splits(x):
                        for t, tp in _seq_two_splits(y):
                            emit(make_instance(rule, ctx, R=r, T=t, Rp=rp, Tp=tp))
        elif rule is RuleId.S:
            for ctx, red in decs:
                if not isinstance(red, Par):
                    continue
                for x, y in _bipartitions(red, Par):
                    for xx, yy in ((x, y), (y, x)):
                        # xx carries the copar with the moved piece, yy stays
                        for r, rp in _copar_splits_with_unit(xx):
                            if rp is UNIT:
                                continue
                            emit(make_instance(rule, ctx, R=r, T=yy, Rp=rp))
        elif rule is RuleId.WS:
            for ctx, red in decs:
                if not isinstance(red, Par):
                    continue
                for x, y in _bipartitions(red, Par):
                    for r, rp in _copar_splits_with_unit(x):
                        for t, tp in _copar_splits_with_unit(y):
                            emit(make_instance(rule, ctx, R=r, T=t, Rp=rp, Tp=tp))
        elif rule is RuleId.Q_UP:
            for ctx, red in decs:
                if not isinstance(red, Seq):
                    continue
                cs = red.children
                for i in range(1, len(cs)):
                    a_part, b_part = seq(cs[:i]), seq(cs[i:])
                    for r, rp in _copar_splits_with_unit(a_part):
                        for t, tp in _copar_splits_with_unit(b_part):
                            emit(make_instance(rule, ctx, R=r, T=t, Rp=rp, Tp=tp))
        elif rule is RuleId.AI_UP:
            names = alphabet if alphabet is not None else _atoms_of(s)
            for ctx in unit_contexts(s):
                for name in names:
                    emit(make_instance(rule, ctx, a=atom(name)))
        elif rule is RuleId.I_UP:
            if max_size is None:
                raise ValueError("cointeraction enumeration needs max_size")
            names = alphabet if alphabet is not None else _atoms_of(s)
            budget = (max_size - s.size) // 2
            if budget >= 1:
                from .universe import all_structures

                leaves = [atom(n) for n in names] + [atom(n, True) for n in names]
                for ctx in unit_contexts(s, decs):
                    for r in all_structures(leaves, budget, include_unit=False):
                        emit(make_instance(rule, ctx, R=r))
        elif rule in (RuleId.G_DOWN, RuleId.WG_DOWN):
            weak = rule is RuleId.WG_DOWN
            for ctx, red in decs:
                if not isinstance(red, Par):
                    continue
                for r, t in _bipartitions(red, Par):
                    for q in _merge_candidates(r, t, weak):
                        emit(make_instance(rule, ctx, R=r, T=t, Q=q))
        elif rule in (RuleId.G_UP, RuleId.WG_UP):
            weak = rule is RuleId.WG_UP
            for ctx, red in decs:
                for _, _, r, t in unmerge_pairs(red, weak=weak):
                    if r is UNIT or t is UNIT:
                        continue
                    emit(make_instance(rule, ctx, R=r, T=t, Q=red))
    return _ordered(found)


def conclusions(
    s: Structure,
    system: System,
    alphabet: Optional[Sequence[str]] = None,
    max_size: Optional[int] = None,
) -> tuple:
    """All non-trivial instances whose premiss is `s` (the top-down
    direction); interaction read downward introduces atoms from `alphabet`
    bounded by `max_size`."""
    found: dict = {}

    def emit(inst: RuleInstance) -> None:
        if inst.trivial:
            return
        key = (inst.rule, inst.premiss, inst.conclusion)
        if key not in found:
            found[key] = inst

    decs = decompositions(s)
    for rule in system.rules:
        if rule is RuleId.O_DOWN:
            continue
        if rule is RuleId.AI_DOWN:
            names = alphabet if alphabet is not None else _atoms_of(s)
            for ctx in unit_contexts(s, decs):
                for name in names:
                    emit(make_instance(rule, ctx, a=atom(name)))
        elif rule is RuleId.I_DOWN:
            if max_size is None:
                raise ValueError("interaction enumeration needs max_size")
            names = alphabet if alphabet is not None else _atoms_of(s)
            budget = (max_size - s.size) // 2
            if budget >= 1:
                from .universe import all_structures

                leaves = [atom(n) for n in names] + [atom(n, True) for n in names]
                for ctx in unit_contexts(s, decs):
                    for r in all_structures(leaves, budget, include_unit=False):
                        emit(make_instance(rule, ctx, R=r))
        elif rule is RuleId.AI_UP:
            for ctx, red in decs:
                if isinstance(red, Copar) and len(red.children) == 2:
                    x, y = red.children
                    if isinstance(x, Atom) and _dual_pair(x, y):
                        emit(make_instance(rule, ctx, a=x))
        elif rule is RuleId.I_UP:
            for ctx, red in decs:
                if isinstance(red, Copar):
                    for x, y in _bipartitions(red, Copar):
                        if _dual_pair(x, y):
                            emit(make_instance(rule, ctx, R=x))
        elif rule is RuleId.Q_DOWN:
            for ctx, red in decs:
                if not isinstance(red, Seq):
                    continue
                cs = red.children
                for i in range(1, len(cs)):
                    a_part, b_part = seq(cs[:i]), seq(cs[i:])
                    for r, t in _par_splits_with_unit(a_part):
                        for rp, tp in _par_splits_with_unit(b_part):
                            emit(make_instance(rule, ctx, R=r, T=t, Rp=rp, Tp=tp))
        elif rule is RuleId.Q_UP:
            for ctx, red in decs:
                if not isinstance(red, Copar):
                    continue
                for x, y in _bipartitions(red, Copar):
                    for r, t in _seq_two_splits(x):
                        for rp, tp in _seq_two_splits(y):
                            emit(make_instance(rule, ctx, R=r, T=t, Rp=rp, Tp=tp))
        elif rule is RuleId.S:
            for ctx, red in decs:
                if not isinstance(red, Copar):
                    continue
                for x, y in _bipartitions(red, Copar):
                    for w_part, rp in ((x, y), (y, x)):
                        for r, t in _par_splits_with_unit(w_part):
                            emit(make_instance(rule, ctx, R=r, T=t, Rp=rp))
        elif rule is RuleId.WS:
            for ctx, red in decs:
                if not isinstance(red, Copar):
                    continue
                for x, y in _bipartitions(red, Copar):
                    for r, t in _par_splits_with_unit(x):
                        for rp, tp in _par_splits_with_unit(y):
                            emit(make_instance(rule, ctx, R=r, T=t, Rp=rp, Tp=tp))
        elif rule in (RuleId.G_DOWN, RuleId.WG_DOWN):
            weak = rule is RuleId.WG_DOWN
            for ctx, red in decs:
                for _, _, r, t in unmerge_pairs(red, weak=weak):
                    if r is UNIT or t is UNIT:
                        continue
                    emit(make_instance(rule, ctx, R=r, T=t, Q=red))
        elif rule in (RuleId.G_UP, RuleId.WG_UP):
            weak = rule is RuleId.WG_UP
            for ctx, red in decs:
                if not isinstance(red, Copar):
                    continue
                for r, t in _bipartitions(red, Copar):
                    for q in _merge_candidates(r, t, weak):
                        emit(make_instance(rule, ctx, R=r, T=t, Q=q))
    return _ordered(found)


def _merge_candidates(r: Structure, t: Structure, weak: bool) -> Iterable[Structure]:
    if not weak:
        return merge_recursive(r, t).members
    from .merge import merge_weak

    return merge_weak(r, t).members


def _ordered(found: dict) -> tuple:
    insts = list(found.values())
    insts.sort(key=lambda i: (i.premiss._key, i.rule.value, i.conclusion._key))
    return tuple(insts)


# ---------------------------------------------------------------------------
# Duality


_DUAL = {
    RuleId.AI_DOWN: RuleId.AI_UP,
    RuleId.AI_UP: RuleId.AI_DOWN,
    RuleId.Q_DOWN: RuleId.Q_UP,
    RuleId.Q_UP: RuleId.Q_DOWN,
    RuleId.I_DOWN: RuleId.I_UP,
    RuleId.I_UP: RuleId.I_DOWN,
    RuleId.G_DOWN: RuleId.G_UP,
    RuleId.G_UP: RuleId.G_DOWN,
    RuleId.WG_DOWN: RuleId.WG_UP,
    RuleId.WG_UP: RuleId.WG_DOWN,
    RuleId.S: RuleId.S,
    RuleId.WS: RuleId.WS,
}


def dual_instance(inst: RuleInstance) -> RuleInstance:
    """Corule instance: premiss and conclusion exchanged and negated."""
    rule = _DUAL.get(inst.rule)
    if rule is None:
        raise ValueError(f"{inst.rule.label} has no corule")
    w = inst.bindings
    ctx = negate(inst.context)
    if inst.rule in (RuleId.AI_DOWN, RuleId.AI_UP):
        nw = {"a": w["a"]}
    elif inst.rule in (RuleId.I_DOWN, RuleId.I_UP):
        nw = {"R": negate(w["R"])}
    elif inst.rule in (RuleId.Q_DOWN, RuleId.Q_UP, RuleId.WS):
        nw = {
            "R": negate(w["R"]),
            "T": negate(w["Rp"]),
            "Rp": negate(w["T"]),
            "Tp": negate(w["Tp"]),
        }
    elif inst.rule is RuleId.S:
        nw = {"R": negate(w["R"]), "T": negate(w["Rp"]), "Rp": negate(w["T"])}
    else:  # merge rules
        nw = {"R": negate(w["R"]), "T": negate(w["T"]), "Q": negate(w["Q"])}
    out = make_instance(rule, ctx, **nw)
    if out.premiss is not negate(inst.conclusion) or out.conclusion is not negate(inst.premiss):
        raise AssertionError("dual instance failed to replay")
    return out


def dual_derivation(d: Derivation) -> Derivation:
    steps = tuple(dual_instance(i) for i in reversed(d.steps))
    return Derivation(negate(d.premiss), steps)


# ---------------------------------------------------------------------------
# Expansions of the macro rules into small steps


def _extend(steps: list, inst: RuleInstance) -> None:
    if not inst.trivial:
        steps.append(inst)


def expand_i_down(inst: RuleInstance) -> Derivation:
    """Rewrite a general interaction step into atomic interactions plus
    seq/switch steps, by structural recursion on the introduced structure."""
    if inst.rule is not RuleId.I_DOWN:
        raise MalformedInstance("expected a general interaction instance")
    return _expand_interaction(inst.context, inst.bindings["R"])


def _expand_interaction(ctx: Structure, r: Structure) -> Derivation:
    # derivation from ctx{unit} to ctx{[r, negate(r)]} in {ai_down, q_down, s}
    if r is UNIT:
        return identity_derivation(fill(ctx, UNIT))
    if isinstance(r, Atom):
        return Derivation(fill(ctx, par((r, negate(r)))), (make_instance(RuleId.AI_DOWN, ctx, a=r),))
    if isinstance(r, Copar):
        return _expand_interaction(ctx, negate(r))
    if isinstance(r, Seq):
        p, q = r.children[0], seq(r.children[1:])
        d1 = _expand_interaction(ctx, p)
        d2 = _expand_interaction(fill(ctx, seq((par((p, negate(p))), HOLE))), q)
        last = make_instance(RuleId.Q_DOWN, ctx, R=p, Rp=q, T=negate(p), Tp=negate(q))
        steps = list(d1.steps) + list(d2.steps)
        _extend(steps, last)
        return Derivation(last.conclusion, tuple(steps))
    # proper par
    p, q = r.children[0], par(r.children[1:])
    d1 = _expand_interaction(ctx, q)
    d2 = _expand_interaction(fill(ctx, copar((HOLE, par((q, negate(q)))))), p)
    steps = list(d1.steps) + list(d2.steps)
    s1 = make_instance(RuleId.S, ctx, R=negate(q), T=q, Rp=par((p, negate(p))))
    _extend(steps, s1)
    s2 = make_instance(
        RuleId.S, fill(ctx, par((q, HOLE))), R=negate(p), T=p, Rp=negate(q)
    )
    _extend(steps, s2)
    end = fill(ctx, par((r, negate(r))))
    if (steps and steps[-1].conclusion is not end) or (not steps and fill(ctx, UNIT) is not end):
        raise AssertionError("interaction expansion lost its target")
    return Derivation(end, tuple(steps))


def expand_i_up(inst: RuleInstance) -> Derivation:
    if inst.rule is not RuleId.I_UP:
        raise MalformedInstance("expected a general cointeraction instance")
    return dual_derivation(expand_i_down(dual_instance(inst)))


def expand_g_down(inst: RuleInstance) -> Derivation:
    """Unfold a merge step into seq and switch steps, by structural
    recursion on the merge witness."""
    if inst.rule is not RuleId.G_DOWN:
        raise MalformedInstance("expected a merge instance")
    w = inst.bindings
    return _expand_merge(inst.context, w["Q"], w["R"], w["T"])


def _expand_merge(ctx: Structure, q: Structure, r: Structure, t: Structure) -> Derivation:
    target = fill(ctx, par((r, t)))
    if q is par((r, t)) or r is UNIT or t is UNIT:
        return identity_derivation(target)
    if q is seq((r, t)):
        return Derivation(target, (make_instance(RuleId.Q_DOWN, ctx, R=r, T=UNIT, Rp=UNIT, Tp=t),))
    if q is seq((t, r)):
        return Derivation(target, (make_instance(RuleId.Q_DOWN, ctx, R=UNIT, T=t, Rp=r, Tp=UNIT),))
    if q is copar((r, t)):
        return Derivation(target, (make_instance(RuleId.S, ctx, R=UNIT, T=t, Rp=r),))
    if isinstance(q, Seq):
        for i in range(1, len(q.children)):
            q1, q2 = seq(q.children[:i]), seq(q.children[i:])
            for r1, r2 in seq_splits(r):
                for t1, t2 in seq_splits(t):
                    if merge_member(q1, r1, t1) and merge_member(q2, r2, t2):
                        d2 = _expand_merge(fill(ctx, seq((q1, HOLE))), q2, r2, t2)
                        d1 = _expand_merge(fill(ctx, seq((HOLE, par((r2, t2))))), q1, r1, t1)
                        last = make_instance(RuleId.Q_DOWN, ctx, R=r1, Rp=r2, T=t1, Tp=t2)
                        steps = list(d2.steps) + list(d1.steps)
                        _extend(steps, last)
                        return Derivation(target, tuple(steps))
        raise MergeWitnessInvalid(f"{q!r} admits no seq unfolding over {r!r}, {t!r}")
    if isinstance(q, Par):
        for q1, q2 in split_pairs(q, Par):
            for r1, r2 in split_pairs(r, Par):
                if r2 is q2 and merge_member(q1, r1, t):
                    inner = _expand_merge(fill(ctx, par((HOLE, q2))), q1, r1, t)
                    return Derivation(target, inner.steps)
            for t1, t2 in split_pairs(t, Par):
                if t2 is q2 and merge_member(q1, r, t1):
                    inner = _expand_merge(fill(ctx, par((HOLE, q2))), q1, r, t1)
                    return Derivation(target, inner.steps)
        raise MergeWitnessInvalid(f"{q!r} admits no par unfolding over {r!r}, {t!r}")
    if isinstance(q, Copar):
        for q1, q2 in split_pairs(q, Copar):
            for r1, r2 in split_pairs(r, Copar):
                if r2 is q2 and merge_member(q1, r1, t):
                    inner = _expand_merge(fill(ctx, copar((HOLE, q2))), q1, r1, t)
                    last = make_instance(RuleId.S, ctx, R=r1, T=t, Rp=q2)
                    steps = list(inner.steps)
                    _extend(steps, last)
                    return Derivation(target, tuple(steps))
            for t1, t2 in split_pairs(t, Copar):
                if t2 is q2 and merge_member(q1, r, t1):
                    inner = _expand_merge(fill(ctx, copar((HOLE, q2))), q1, r, t1)
                    last = make_instance(RuleId.S, ctx, R=t1, T=r, Rp=q2)
                    steps = list(inner.steps)
                    _extend(steps, last)
                    return Derivation(target, tuple(steps))
        raise MergeWitnessInvalid(f"{q!r} admits no copar unfolding over {r!r}, {t!r}")
    raise MergeWitnessInvalid(f"{q!r} is not a merge of {r!r} and {t!r}")


def expand_g_up(inst: RuleInstance) -> Derivation:
    if inst.rule is not RuleId.G_UP:
        raise MalformedInstance("expected a comerge instance")
    return dual_derivation(expand_g_down(dual_instance(inst)))


def expand_corule(inst: RuleInstance) -> Derivation:
    """Replace a corule instance by interaction, switch, the rule itself and
    cointeraction: the four-step sandwich."""
    rho_inst = dual_instance(inst)
    s_ctx = inst.context
    # premiss = S{Q} and conclusion = S{P}: both redexes replay at the hole
    q = _redex(inst, premiss_side=True)
    p = _redex(inst, premiss_side=False)
    steps: list = []
    _extend(steps, make_instance(RuleId.I_DOWN, fill(s_ctx, copar((q, HOLE))), R=p))
    _extend(steps, make_instance(RuleId.S, s_ctx, R=negate(p), T=p, Rp=q))
    rho_ctx = fill(s_ctx, par((p, copar((q, HOLE)))))
    _extend(steps, make_instance(rho_inst.rule, rho_ctx, **rho_inst.bindings))
    _extend(steps, make_instance(RuleId.I_UP, fill(s_ctx, par((p, HOLE))), R=q))
    return Derivation(inst.conclusion, tuple(steps))


def _redex(inst: RuleInstance, premiss_side: bool) -> Structure:
    prem, conc = _replay(inst.rule, HOLE, inst.bindings)
    return prem if premiss_side else conc


def par_extrusion(ctx: Structure, r: Structure, t: Structure) -> Derivation:
    """Derivation from ctx[r, t] down to [ctx{r}, t] in {q_down, s}: the
    second component climbs out of the context one layer at a time."""
    if ctx._holes != 1:
        raise ValueError("context must have exactly one hole")
    inner = par((r, t))
    if ctx is HOLE:
        return identity_derivation(inner)
    kids = ctx.children
    k = next(i for i, c in enumerate(kids) if c._holes)
    sub = kids[k]
    if isinstance(ctx, Par):
        siblings = par(kids[:k] + kids[k + 1 :])
        d = par_extrusion(sub, r, t)
        return in_context(d, par((siblings, HOLE)))
    if isinstance(ctx, Copar):
        siblings = copar(kids[:k] + kids[k + 1 :])
        d = in_context(par_extrusion(sub, r, t), copar((siblings, HOLE)))
        steps = list(d.steps)
        last = make_instance(RuleId.S, HOLE, R=fill(sub, r), T=t, Rp=siblings)
        _extend(steps, last)
        return Derivation(par((copar((fill(sub, r), siblings)), t)), tuple(steps))
    # seq layer
    left, right = seq(kids[:k]), seq(kids[k + 1 :])
    d = in_context(par_extrusion(sub, r, t), seq((left, HOLE, right)))
    steps = list(d.steps)
    filled = fill(sub, r)
    if right is not UNIT:
        step = make_instance(
            RuleId.Q_DOWN, seq((left, HOLE)), R=filled, Rp=right, T=t, Tp=UNIT
        )
        _extend(steps, step)
        filled_right = seq((filled, right))
    else:
        filled_right = filled
    if left is not UNIT:
        step = make_instance(RuleId.Q_DOWN, HOLE, R=left, Rp=filled_right, T=UNIT, Tp=t)
        _extend(steps, step)
    return Derivation(par((seq((left, filled_right)), t)), tuple(steps))
