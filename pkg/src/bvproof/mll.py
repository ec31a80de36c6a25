"""Multiplicative sequent calculus with mix: formulas, a naive cut-free
prover used as an independent oracle, replayable proof trees, and the two
translations between formulas and flat structures.

The prover shares no code with the structural search: par is decomposed
eagerly (it is invertible), times and mix branch over every context
partition, identity closes two dual atoms.  Sequents are memoized as
multisets and a polarity-balance filter prunes hopeless branches early.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

from .core import Atom, Copar, Par, Seq, Structure, UNIT, atom, copar, is_flat, par

__all__ = [
    "Formula",
    "FAtom",
    "FPar",
    "FTimes",
    "BOTTOM",
    "ONE",
    "negate_formula",
    "formulas_equal_ac",
    "parse_formula",
    "parse_sequent",
    "format_formula",
    "format_sequent",
    "NotFlat",
    "IsUnit",
    "to_structure",
    "from_structure",
    "MLLProof",
    "prove_mll",
    "check_mll_proof",
    "simulate_mll",
]


class Formula:
    __slots__ = ()

    def __repr__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True, repr=False)
class FAtom(Formula):
    name: str
    negative: bool = False


@dataclass(frozen=True, repr=False)
class FPar(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class FTimes(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class FBottom(Formula):
    pass


@dataclass(frozen=True, repr=False)
class FOne(Formula):
    pass


BOTTOM = FBottom()
ONE = FOne()


def negate_formula(a: Formula) -> Formula:
    if isinstance(a, FAtom):
        return FAtom(a.name, not a.negative)
    if isinstance(a, FPar):
        return FTimes(negate_formula(a.left), negate_formula(a.right))
    if isinstance(a, FTimes):
        return FPar(negate_formula(a.left), negate_formula(a.right))
    if a is BOTTOM:
        return ONE
    if a is ONE:
        return BOTTOM
    raise TypeError(f"not a formula: {a!r}")


def _ac_key(a: Formula):
    if isinstance(a, FAtom):
        return (0, a.name, a.negative)
    if a is BOTTOM:
        return (3,)
    if a is ONE:
        return (4,)
    cls, tag = (FPar, 1) if isinstance(a, FPar) else (FTimes, 2)
    parts = []
    stack = [a]
    while stack:
        f = stack.pop()
        if isinstance(f, cls):
            stack.extend((f.left, f.right))
        else:
            parts.append(_ac_key(f))
    parts.sort()
    return (tag, tuple(parts))


def formulas_equal_ac(a: Formula, b: Formula) -> bool:
    """Equality modulo associativity and commutativity of both connectives."""
    return _ac_key(a) == _ac_key(b)


def format_formula(a: Formula, prec: int = 0) -> str:
    if isinstance(a, FAtom):
        return ("~" if a.negative else "") + a.name
    if a is BOTTOM:
        return "bot"
    if a is ONE:
        return "1"
    if isinstance(a, FTimes):
        s = f"{format_formula(a.left, 2)}*{format_formula(a.right, 2)}"
        return f"({s})" if prec >= 2 else s
    s = f"{format_formula(a.left, 1)}|{format_formula(a.right, 1)}"
    return f"({s})" if prec >= 1 else s


def format_sequent(seq_: Sequence[Formula]) -> str:
    return "|- " + ", ".join(format_formula(f) for f in seq_)


class _FormulaParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        from .syntax import ParseError

        before = self.text[: self.pos]
        line = before.count("\n") + 1
        col = self.pos - (before.rfind("\n") + 1) + 1
        raise ParseError(msg, line, col)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_formula(self) -> Formula:
        left = self.parse_times()
        while self.peek() == "|":
            self.pos += 1
            left = FPar(left, self.parse_times())
        return left

    def parse_times(self) -> Formula:
        left = self.parse_unary()
        while self.peek() == "*":
            self.pos += 1
            left = FTimes(left, self.parse_unary())
        return left

    def parse_unary(self) -> Formula:
        ch = self.peek()
        if ch == "~":
            self.pos += 1
            return negate_formula(self.parse_unary())
        if ch == "(":
            self.pos += 1
            f = self.parse_formula()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return f
        if ch == "1":
            self.pos += 1
            return ONE
        if ch.isalpha() and ch.islower():
            start = self.pos
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() and not self.text[self.pos].isupper()
                or self.text[self.pos] == "_"
            ):
                self.pos += 1
            name = self.text[start : self.pos]
            if name == "bot":
                return BOTTOM
            return FAtom(name)
        self.error("expected a formula")

    def expect_end(self) -> None:
        self.skip()
        if self.pos != len(self.text):
            self.error("trailing input")


def parse_formula(text: str) -> Formula:
    p = _FormulaParser(text)
    f = p.parse_formula()
    p.expect_end()
    return f


def parse_sequent(text: str) -> tuple:
    body = text.strip()
    if body.startswith("|-"):
        body = body[2:]
    body = body.strip()
    if not body:
        return ()
    parts = []
    depth = 0
    cur = ""
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return tuple(parse_formula(p) for p in parts)


# ---------------------------------------------------------------------------
# Translations


class NotFlat(ValueError):
    pass


class IsUnit(ValueError):
    pass


def to_structure(a) -> Structure:
    """Formula (or sequent) to flat structure: par and times map to the two
    commutative contexts, the units collapse onto the structural unit."""
    if isinstance(a, (tuple, list)):
        return par(to_structure(f) for f in a)
    if isinstance(a, FAtom):
        return atom(a.name, a.negative)
    if isinstance(a, FPar):
        return par((to_structure(a.left), to_structure(a.right)))
    if isinstance(a, FTimes):
        return copar((to_structure(a.left), to_structure(a.right)))
    if a is BOTTOM or a is ONE:
        return UNIT
    raise TypeError(f"not a formula: {a!r}")


def from_structure(p: Structure) -> Formula:
    """Flat non-unit structure to formula, the inverse of `to_structure` up
    to associativity and commutativity."""
    if p is UNIT:
        raise IsUnit("the unit has no formula image")
    if isinstance(p, Seq) or not is_flat(p):
        raise NotFlat(f"{p!r} contains a seq")
    return _from(p)


def _from(p: Structure) -> Formula:
    if isinstance(p, Atom):
        return FAtom(p.name, p.negative)
    mk = FPar if isinstance(p, Par) else FTimes
    parts = [_from(c) for c in p.children]
    out = parts[0]
    for nxt in parts[1:]:
        out = mk(out, nxt)
    return out


# ---------------------------------------------------------------------------
# The sequent prover


@dataclass(frozen=True)
class MLLProof:
    rule: str  # id | par | times | mix | bot | one | mix0
    sequent: tuple
    principal: Optional[Formula] = None
    children: tuple = ()

    def __repr__(self) -> str:
        return f"<{self.rule} {format_sequent(self.sequent)}>"


def _balanced(seq_: tuple) -> bool:
    # every atom must pair with a dual somewhere; a name imbalance is hopeless
    counts: Counter = Counter()
    stack = list(seq_)
    while stack:
        f = stack.pop()
        if isinstance(f, FAtom):
            counts[f.name] += -1 if f.negative else 1
        elif isinstance(f, (FPar, FTimes)):
            stack.extend((f.left, f.right))
    return not any(counts.values())


def _key(seq_: tuple) -> tuple:
    return tuple(sorted(map(_ac_key, seq_)))


def prove_mll(sequent: Sequence[Formula], units: bool = False, _memo: Optional[dict] = None) -> Optional[MLLProof]:
    """Complete cut-free search; returns a replayable tree or None.

    Par (and bottom, in units mode) is applied eagerly; times and mix try
    every partition of the remaining formulas; identity closes a pair of
    dual atoms; memoized on the sequent multiset.
    """
    sequent = tuple(sequent)
    memo: dict = _memo if _memo is not None else {}
    return _search(sequent, units, memo)


def _search(sequent: tuple, units: bool, memo: dict) -> Optional[MLLProof]:
    # eager invertible steps
    for i, f in enumerate(sequent):
        if isinstance(f, FPar):
            rest = sequent[:i] + sequent[i + 1 :]
            child = _search(rest + (f.left, f.right), units, memo)
            if child is None:
                return None
            return MLLProof("par", sequent, f, (child,))
        if units and f is BOTTOM:
            rest = sequent[:i] + sequent[i + 1 :]
            child = _search(rest, units, memo)
            if child is None:
                return None
            return MLLProof("bot", sequent, f, (child,))
    if not _balanced(sequent):
        return None
    key = _key(sequent)
    if key in memo:
        cached = memo[key]
        if cached is None:
            return None
        return MLLProof(cached.rule, sequent, cached.principal, cached.children)
    memo[key] = None  # fail on cycles; overwritten on success
    result = _search_core(sequent, units, memo)
    memo[key] = result
    return result


def _search_core(sequent: tuple, units: bool, memo: dict) -> Optional[MLLProof]:
    n = len(sequent)
    if n == 0:
        return MLLProof("mix0", sequent) if units else None
    if n == 1 and units and sequent[0] is ONE:
        return MLLProof("one", sequent)
    if n == 2:
        a, b = sequent
        if isinstance(a, FAtom) and isinstance(b, FAtom) and negate_formula(a) == b:
            return MLLProof("id", sequent, a)
    for i, f in enumerate(sequent):
        if not isinstance(f, FTimes):
            continue
        rest = sequent[:i] + sequent[i + 1 :]
        m = len(rest)
        for mask in range(1 << m):
            phi = tuple(rest[j] for j in range(m) if (mask >> j) & 1)
            psi = tuple(rest[j] for j in range(m) if not (mask >> j) & 1)
            left = _search((f.left,) + phi, units, memo)
            if left is None:
                continue
            right = _search((f.right,) + psi, units, memo)
            if right is None:
                continue
            return MLLProof("times", sequent, f, (left, right))
    if n >= 2:
        for mask in range(1 << (n - 1)):
            phi = tuple(sequent[j] for j in range(n) if j == 0 or (mask >> (j - 1)) & 1)
            psi = tuple(sequent[j] for j in range(n) if j != 0 and not (mask >> (j - 1)) & 1)
            if not psi:
                continue
            left = _search(phi, units, memo)
            if left is None:
                continue
            right = _search(psi, units, memo)
            if right is None:
                continue
            return MLLProof("mix", sequent, None, (left, right))
    return None


def _multiset(seq_: tuple) -> Counter:
    return Counter(map(_ac_key, seq_))


def check_mll_proof(p: MLLProof, units: bool = False) -> bool:
    """Replay a proof tree bottom-up, verifying each node's arithmetic."""
    ms = _multiset(p.sequent)
    if p.rule == "id":
        if len(p.sequent) != 2:
            return False
        a, b = p.sequent
        return _ac_key(negate_formula(a)) == _ac_key(b)
    if p.rule == "par":
        f = p.principal
        if not isinstance(f, FPar) or not p.children:
            return False
        want = ms - Counter([_ac_key(f)]) + Counter([_ac_key(f.left), _ac_key(f.right)])
        return ms[_ac_key(f)] > 0 and _multiset(p.children[0].sequent) == want and check_mll_proof(p.children[0], units)
    if p.rule == "times":
        f = p.principal
        if not isinstance(f, FTimes) or len(p.children) != 2:
            return False
        l, r = p.children
        lm, rm = _multiset(l.sequent), _multiset(r.sequent)
        if lm[_ac_key(f.left)] < 1 or rm[_ac_key(f.right)] < 1:
            return False
        combined = lm - Counter([_ac_key(f.left)]) + rm - Counter([_ac_key(f.right)]) + Counter([_ac_key(f)])
        return combined == ms and check_mll_proof(l, units) and check_mll_proof(r, units)
    if p.rule == "mix":
        if len(p.children) != 2:
            return False
        l, r = p.children
        return _multiset(l.sequent) + _multiset(r.sequent) == ms and check_mll_proof(l, units) and check_mll_proof(
            r, units
        )
    if units and p.rule == "bot":
        if p.principal is not BOTTOM or not p.children:
            return False
        want = ms - Counter([_ac_key(BOTTOM)])
        return ms[_ac_key(BOTTOM)] > 0 and _multiset(p.children[0].sequent) == want and check_mll_proof(
            p.children[0], units
        )
    if units and p.rule == "one":
        return p.sequent == (ONE,)
    if units and p.rule == "mix0":
        return p.sequent == ()
    return False


# ---------------------------------------------------------------------------
# Simulation inside the flat structural system


def simulate_mll(p: MLLProof):
    """Translate a sequent proof into a proof of the translated conclusion
    in the flat structural system: par steps are transparent, identity
    unfolds through atomic interactions and switches, times and mix close
    with the corresponding switch steps."""
    from .core import HOLE, fill, negate
    from .rules import (
        Derivation,
        RuleId,
        body,
        identity_derivation,
        in_context,
        make_instance,
        proof_from_derivation,
    )
    from .rules import par_extrusion  # noqa: F401  (re-exported helper)

    def go(node: MLLProof) -> Derivation:
        # derivation from the unit to the translation of node.sequent
        target = to_structure(node.sequent)
        if node.rule == "id":
            a = node.principal
            from .rules import expand_i_down

            inst = make_instance(RuleId.I_DOWN, HOLE, R=to_structure(a))
            d = expand_i_down(inst)
            return d
        if node.rule in ("par", "bot"):
            return go(node.children[0])
        if node.rule == "one":
            return identity_derivation(UNIT)
        if node.rule == "mix0":
            return identity_derivation(UNIT)
        if node.rule in ("times", "mix"):
            left, right = node.children
            dl, dr = go(left), go(right)
            lt, rt = dl.conclusion, dr.conclusion
            steps = list(dl.steps)
            steps.extend(in_context(dr, copar((lt, HOLE))).steps)
            if node.rule == "mix":
                inst = make_instance(RuleId.S, HOLE, R=UNIT, T=rt, Rp=lt)
                if not inst.trivial:
                    steps.append(inst)
                return Derivation(par((lt, rt)), tuple(steps))
            f = node.principal
            a_s, b_s = to_structure(f.left), to_structure(f.right)
            # recover the contexts structurally: lt = [a_s, phi], rt = [b_s, psi]
            phi = _strip(lt, a_s)
            psi = _strip(rt, b_s)
            inst1 = make_instance(RuleId.S, HOLE, R=a_s, T=phi, Rp=par((b_s, psi)))
            if not inst1.trivial:
                steps.append(inst1)
            inst2 = make_instance(RuleId.S, par((HOLE, phi)), R=b_s, T=psi, Rp=a_s)
            if not inst2.trivial:
                steps.append(inst2)
            return Derivation(par((copar((a_s, b_s)), phi, psi)), tuple(steps))
        raise ValueError(f"cannot simulate rule {node.rule!r}")

    d = go(p)
    if d.conclusion is not to_structure(p.sequent):
        raise AssertionError("simulation missed the translated conclusion")
    return proof_from_derivation(d)


def _strip(whole: Structure, part: Structure) -> Structure:
    """whole = [part, rest] as a par multiset; return rest."""
    if whole is part:
        return UNIT
    if isinstance(whole, Par):
        kids = list(whole.children)
        if isinstance(part, Par):
            for c in part.children:
                kids.remove(c)
        else:
            kids.remove(part)
        return par(kids)
    raise ValueError(f"{part!r} does not sit inside {whole!r}")