"""Exhaustive enumeration of canonical structures over a fixed occurrence
multiset.  Small-scope oracle fuel: every structure is produced exactly
once by closing binary seq/par/copar combinations under flattening.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

from .core import Atom, Structure, UNIT, atom, copar, par, seq, structure_key

__all__ = ["structures_over", "all_structures", "distinct_atoms", "count_structures"]

_CACHE: dict = {}


def distinct_atoms(n: int, prefix: str = "x") -> tuple:
    return tuple(atom(f"{prefix}{i}") for i in range(n))


def structures_over(occ: Sequence[Structure]) -> tuple:
    """All canonical structures whose occurrence multiset is exactly `occ`
    (atoms, possibly with repetitions; the hole pseudo-atom is allowed,
    which enumerates one-hole contexts)."""
    ms = tuple(sorted(occ, key=structure_key))
    return _structures(ms)


def _structures(ms: tuple) -> tuple:
    got = _CACHE.get(ms)
    if got is not None:
        return got
    n = len(ms)
    if n == 0:
        result: tuple = (UNIT,)
    elif n == 1:
        result = (ms[0],)
    else:
        out = set()
        for m1, m2 in _splits(ms):
            for a in _structures(m1):
                for b in _structures(m2):
                    out.add(seq((a, b)))
                    out.add(seq((b, a)))
                    out.add(par((a, b)))
                    out.add(copar((a, b)))
        result = tuple(sorted(out, key=structure_key))
    _CACHE[ms] = result
    return result


def _splits(ms: tuple) -> Iterator[tuple]:
    # unordered proper splits of a sorted multiset, each once
    n = len(ms)
    seen = set()
    for mask in range(1, 1 << (n - 1)):
        m1 = tuple(ms[i] for i in range(n) if (mask >> i) & 1 or i == n - 1 and False)
        m1 = tuple(ms[i] for i in range(n) if (mask >> i) & 1)
        m2 = tuple(ms[i] for i in range(n) if not (mask >> i) & 1)
        key = (m1, m2)
        if key in seen:
            continue
        seen.add(key)
        yield m1, m2


def all_structures(alphabet: Sequence[Atom], max_size: int, include_unit: bool = True) -> Iterator[Structure]:
    """Every canonical structure with at most `max_size` atom occurrences
    drawn (with repetition) from `alphabet`."""
    if include_unit:
        yield UNIT
    alpha = sorted(set(alphabet), key=structure_key)
    for n in range(1, max_size + 1):
        for combo in itertools.combinations_with_replacement(alpha, n):
            yield from _structures(combo)


def count_structures(alphabet: Sequence[Atom], max_size: int) -> int:
    total = 0
    for _ in all_structures(alphabet, max_size):
        total += 1
    return total
