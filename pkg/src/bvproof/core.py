"""Canonical structures: atoms, seq/par/copar nesting, negation, contexts.

Every term is kept in one canonical form per equivalence class:
associativity is flattened, commutative children are sorted under a fixed
total order, units are dropped, singleton brackets collapse, and negation
sits only on atoms.  Canonical forms are interned, so structural equality
is object identity and hashing is O(1).

Raw (non-canonical) terms are plain nested tuples, produced by the parser
or by hand in tests:

    ("unit",) | ("hole",) | ("atom", name, negative) | ("neg", t)
    | ("seq", (t, ...)) | ("par", (t, ...)) | ("copar", (t, ...))

`canonicalize` maps raw terms to canonical structures; two raw terms are
equivalent exactly when their canonical forms are identical.
"""
from __future__ import annotations

import operator
from typing import Callable, Iterable, Sequence

__all__ = [
    "Structure",
    "Unit",
    "Hole",
    "Atom",
    "Seq",
    "Par",
    "Copar",
    "UNIT",
    "HOLE",
    "atom",
    "seq",
    "par",
    "copar",
    "negate",
    "canonicalize",
    "structure_to_raw",
    "equivalent",
    "occurrences",
    "size",
    "is_flat",
    "structure_key",
    "decompositions",
    "fill",
    "is_context",
    "hole_arity",
    "context_layers",
    "occurrence_context",
    "relabel",
    "is_proper_seq",
    "is_proper_par",
    "is_proper_copar",
    "is_proper_seq_context",
    "is_proper_par_context",
    "is_proper_copar_context",
]


class Structure:
    """Base class for interned canonical terms.  Do not instantiate directly."""

    __slots__ = ("_size", "_holes", "_key", "_occ", "_neg")

    def __repr__(self) -> str:
        from .syntax import format_structure

        return format_structure(self)

    @property
    def size(self) -> int:
        return self._size


class Unit(Structure):
    __slots__ = ()


class Hole(Structure):
    __slots__ = ()


class Atom(Structure):
    __slots__ = ("name", "negative")


class Seq(Structure):
    __slots__ = ("children",)


class Par(Structure):
    __slots__ = ("children",)


class Copar(Structure):
    __slots__ = ("children",)


_RANK = {Unit: 0, Hole: 1, Atom: 2, Seq: 3, Par: 4, Copar: 5}

_INTERN: dict = {}


def _new(cls) -> Structure:
    s = object.__new__(cls)
    s._occ = None
    s._neg = None
    return s


def _singleton(cls, size: int, holes: int, key: tuple) -> Structure:
    s = _new(cls)
    s._size = size
    s._holes = holes
    s._key = key
    return s


UNIT: Unit = _singleton(Unit, 0, 0, (0,))
HOLE: Hole = _singleton(Hole, 0, 1, (1,))


def atom(name: str, negative: bool = False) -> Atom:
    key = (Atom, name, negative)
    s = _INTERN.get(key)
    if s is None:
        s = _new(Atom)
        s.name = name
        s.negative = negative
        s._size = 1
        s._holes = 0
        s._key = (2, name, negative)
        _INTERN[key] = s
    return s


def _composite(cls, children: tuple) -> Structure:
    key = (cls, children)
    s = _INTERN.get(key)
    if s is None:
        s = _new(cls)
        s.children = children
        s._size = sum(c._size for c in children)
        s._holes = sum(c._holes for c in children)
        s._key = (_RANK[cls], len(children), tuple(c._key for c in children))
        _INTERN[key] = s
    return s


def structure_key(s: Structure):
    """Total order on canonical forms: unit < hole < atoms < seq < par < copar;
    atoms by name then positive-before-negative; composites by arity then
    lexicographically on children."""
    return s._key


def _flatten(cls, parts: Iterable[Structure]) -> list:
    flat = []
    for p in parts:
        if p is UNIT:
            continue
        if type(p) is cls:
            flat.extend(p.children)
        else:
            flat.append(p)
    return flat


def seq(parts: Iterable[Structure]) -> Structure:
    flat = _flatten(Seq, parts)
    if not flat:
        return UNIT
    if len(flat) == 1:
        return flat[0]
    return _composite(Seq, tuple(flat))


_KEYGET = operator.attrgetter("_key")


def par(parts: Iterable[Structure]) -> Structure:
    flat = _flatten(Par, parts)
    if not flat:
        return UNIT
    if len(flat) == 1:
        return flat[0]
    flat.sort(key=_KEYGET)
    return _composite(Par, tuple(flat))


def copar(parts: Iterable[Structure]) -> Structure:
    flat = _flatten(Copar, parts)
    if not flat:
        return UNIT
    if len(flat) == 1:
        return flat[0]
    flat.sort(key=_KEYGET)
    return _composite(Copar, tuple(flat))


def negate(s: Structure) -> Structure:
    """De Morgan dual: swaps par and copar, keeps seq order, flips atom
    polarity, fixes the unit.  Involutive."""
    n = s._neg
    if n is None:
        if s is UNIT:
            n = UNIT
        elif s is HOLE:
            n = HOLE
        elif isinstance(s, Atom):
            n = atom(s.name, not s.negative)
        elif isinstance(s, Seq):
            n = seq(negate(c) for c in s.children)
        elif isinstance(s, Par):
            n = copar(negate(c) for c in s.children)
        else:
            n = par(negate(c) for c in s.children)
        s._neg = n
        n._neg = s
    return n


def canonicalize(t) -> Structure:
    """Canonical form of a raw term (negation pushed to atoms, units and
    singleton brackets removed, nesting flattened, commutative children
    sorted).  Canonical structures pass through unchanged."""
    return _canon(t, False)


def _canon(t, negating: bool) -> Structure:
    if isinstance(t, Structure):
        if t._holes and negating:
            raise ValueError("hole under negation")
        return negate(t) if negating else t
    tag = t[0]
    if tag == "unit":
        return UNIT
    if tag == "hole":
        if negating:
            raise ValueError("hole under negation")
        return HOLE
    if tag == "atom":
        return atom(t[1], t[2] ^ negating)
    if tag == "neg":
        return _canon(t[1], not negating)
    if tag == "seq":
        return seq(_canon(c, negating) for c in t[1])
    if tag == "par":
        mk = copar if negating else par
        return mk(_canon(c, negating) for c in t[1])
    if tag == "copar":
        mk = par if negating else copar
        return mk(_canon(c, negating) for c in t[1])
    raise ValueError(f"not a raw term: {t!r}")


def structure_to_raw(s: Structure):
    if s is UNIT:
        return ("unit",)
    if s is HOLE:
        return ("hole",)
    if isinstance(s, Atom):
        return ("atom", s.name, s.negative)
    tag = {Seq: "seq", Par: "par", Copar: "copar"}[type(s)]
    return (tag, tuple(structure_to_raw(c) for c in s.children))


def equivalent(a: Structure, b: Structure) -> bool:
    return a is b


def occurrences(s: Structure) -> tuple:
    """Atom occurrences of the canonical form, in left-to-right traversal
    order.  Position in the tuple is the occurrence index; duplicate atoms
    are distinguished only by that index."""
    occ = s._occ
    if occ is None:
        if isinstance(s, Atom):
            occ = (s,)
        elif isinstance(s, (Unit, Hole)):
            occ = ()
        else:
            acc: list = []
            for c in s.children:
                acc.extend(occurrences(c))
            occ = tuple(acc)
        s._occ = occ
    return occ


def size(s: Structure) -> int:
    return s._size


def is_flat(s: Structure) -> bool:
    """True when the canonical form contains no seq node."""
    if isinstance(s, Seq):
        return False
    if isinstance(s, (Par, Copar)):
        return all(is_flat(c) for c in s.children)
    return True


def is_proper_seq(s: Structure) -> bool:
    return isinstance(s, Seq)


def is_proper_par(s: Structure) -> bool:
    return isinstance(s, Par)


def is_proper_copar(s: Structure) -> bool:
    return isinstance(s, Copar)


# ---------------------------------------------------------------------------
# Contexts


def is_context(s: Structure) -> bool:
    return s._holes == 1


def hole_arity(s: Structure) -> int:
    return s._holes


_FILL_CACHE: dict = {}
_FILL_CACHE_LIMIT = 2_000_000


def fill(ctx: Structure, x: Structure) -> Structure:
    """Plug `x` into the hole of `ctx` and canonicalize."""
    if ctx is HOLE:
        return x
    if ctx._holes == 0:
        return ctx
    key = (ctx, x)
    got = _FILL_CACHE.get(key)
    if got is not None:
        return got
    kids = [fill(c, x) if c._holes else c for c in ctx.children]
    if isinstance(ctx, Seq):
        got = seq(kids)
    elif isinstance(ctx, Par):
        got = par(kids)
    elif isinstance(ctx, Copar):
        got = copar(kids)
    else:
        raise ValueError("context has no hole position")
    if len(_FILL_CACHE) > _FILL_CACHE_LIMIT:
        _FILL_CACHE.clear()
    _FILL_CACHE[key] = got
    return got


_PROBE = None


def _probe() -> Atom:
    global _PROBE
    if _PROBE is None:
        _PROBE = atom("probe_point")
    return _PROBE


def is_proper_seq_context(ctx: Structure) -> bool:
    return isinstance(fill(ctx, _probe()), Seq)


def is_proper_par_context(ctx: Structure) -> bool:
    return isinstance(fill(ctx, _probe()), Par)


def is_proper_copar_context(ctx: Structure) -> bool:
    return isinstance(fill(ctx, _probe()), Copar)


def context_layers(ctx: Structure) -> list:
    """Path from the root of a one-hole context down to the hole.

    Each layer is ("par", siblings) / ("copar", siblings) with siblings a
    tuple, or ("seq", left, right) with the children before and after the
    branch that carries the hole.
    """
    if ctx._holes != 1:
        raise ValueError("not a one-hole context")
    layers = []
    cur = ctx
    while cur is not HOLE:
        kids = cur.children
        k = next(i for i, c in enumerate(kids) if c._holes)
        if isinstance(cur, Seq):
            layers.append(("seq", kids[:k], kids[k + 1 :]))
        elif isinstance(cur, Par):
            layers.append(("par", kids[:k] + kids[k + 1 :]))
        else:
            layers.append(("copar", kids[:k] + kids[k + 1 :]))
        cur = kids[k]
    return layers


def occurrence_context(s: Structure, index: int) -> Structure:
    """Context obtained by replacing the `index`-th atom occurrence of `s`
    with the hole."""
    n = len(occurrences(s))
    if not 0 <= index < n:
        raise IndexError(index)

    def walk(t: Structure, base: int) -> Structure:
        if isinstance(t, Atom):
            return HOLE if base == index else t
        mk = {Seq: seq, Par: par, Copar: copar}[type(t)]
        out = []
        for c in t.children:
            w = len(occurrences(c))
            if base <= index < base + w:
                out.append(walk(c, base))
            else:
                out.append(c)
            base += w
        return mk(out)

    return walk(s, 0)


def relabel(s: Structure, mapping: dict) -> Structure:
    """Rebuild `s` with atoms substituted per `mapping`; re-canonicalizes."""
    if isinstance(s, Atom):
        return mapping.get(s, s)
    if isinstance(s, (Unit, Hole)):
        return s
    mk = {Seq: seq, Par: par, Copar: copar}[type(s)]
    return mk(relabel(c, mapping) for c in s.children)


# ---------------------------------------------------------------------------
# Decomposition into (context, substructure) pairs modulo the equations


def decompositions(s: Structure):
    """All pairs (C, R) with C{R} = s and R != unit, modulo equivalence.

    R ranges over substructures in the equational sense: sub-multisets of
    par/copar children, contiguous segments of seq children, and everything
    reachable inside single children.  Includes (hole, s).  Duplicate-free.
    """
    out: list = []
    if s is UNIT or s is HOLE:
        return out
    seen: set = set()

    def emit(ctx: Structure, red: Structure) -> None:
        p = (ctx, red)
        if p not in seen:
            seen.add(p)
            out.append(p)

    def walk(build: Callable[[Structure], Structure], t: Structure) -> None:
        emit(build(HOLE), t)
        if isinstance(t, (Par, Copar)):
            mk = par if isinstance(t, Par) else copar
            cs = t.children
            n = len(cs)
            for mask in range(1, (1 << n) - 1):
                sub = [cs[i] for i in range(n) if (mask >> i) & 1]
                rest = [cs[i] for i in range(n) if not (mask >> i) & 1]
                emit(build(mk(rest + [HOLE])), mk(sub))
            for i in range(n):
                rest = [cs[j] for j in range(n) if j != i]
                walk(lambda h, rest=rest, mk=mk, build=build: build(mk(rest + [h])), cs[i])
        elif isinstance(t, Seq):
            cs = t.children
            n = len(cs)
            for i in range(n):
                for j in range(i + 1, n + 1):
                    if j - i == n:
                        continue
                    emit(build(seq(list(cs[:i]) + [HOLE] + list(cs[j:]))), seq(cs[i:j]))
            for i in range(n):
                pre, post = cs[:i], cs[i + 1 :]
                walk(
                    lambda h, pre=pre, post=post, build=build: build(seq(list(pre) + [h] + list(post))),
                    cs[i],
                )

    walk(lambda h: h, s)
    return out
