"""Merge sets: all ways to interleave two structures while conserving their
internal structural relations, plus the integrity condition on par/copar
pairs that cut elimination requires.  Two independent definitions are
provided: a recursive one used for computation and a semantic web-based
one used as an oracle.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .core import (
    Atom,
    Copar,
    Par,
    Seq,
    Structure,
    UNIT,
    atom,
    copar,
    occurrences,
    par,
    relabel,
    seq,
    structure_key,
)
from . import webs
from .universe import structures_over

__all__ = [
    "MergeSet",
    "MergeBoundExceeded",
    "merge_recursive",
    "merge_semantic",
    "merge_weak",
    "merge_member",
    "merge_member_weak",
    "merge_sets",
    "seq_splits",
    "split_pairs",
    "unmerge_pairs",
]


class MergeBoundExceeded(ValueError):
    """Semantic enumeration refused: too many combined occurrences."""


@dataclass(frozen=True)
class MergeSet:
    left: Structure
    right: Structure
    members: frozenset

    def sorted_members(self) -> list:
        return sorted(self.members, key=structure_key)

    def __contains__(self, q: Structure) -> bool:
        return q in self.members

    def __len__(self) -> int:
        return len(self.members)


def seq_splits(s: Structure) -> list:
    """All ways to read `s` as a seq of two parts, unit paddings included."""
    if isinstance(s, Seq):
        cs = s.children
        return [(seq(cs[:i]), seq(cs[i:])) for i in range(len(cs) + 1)]
    return [(UNIT, s), (s, UNIT)]


def split_pairs(s: Structure, cls) -> list:
    """Ordered two-part splits of a proper par/copar into nonempty halves."""
    if not isinstance(s, cls):
        return []
    mk = par if cls is Par else copar
    cs = s.children
    n = len(cs)
    out = []
    seen = set()
    for mask in range(1, (1 << n) - 1):
        a = mk([cs[i] for i in range(n) if (mask >> i) & 1])
        b = mk([cs[i] for i in range(n) if not (mask >> i) & 1])
        if (a, b) not in seen:
            seen.add((a, b))
            out.append((a, b))
    return out


_REC_CACHE: dict = {}


def merge_recursive(r: Structure, t: Structure) -> MergeSet:
    """The merge set by its recursive characterization: seq/par/copar of the
    two wholes, seq-wise recombination of seq splittings (units allowed on
    one side), and absorption of one structure into a proper par/copar part
    of the other."""
    return MergeSet(r, t, _merge_rec(r, t))


def _merge_rec(r: Structure, t: Structure) -> frozenset:
    if structure_key(t) < structure_key(r):
        r, t = t, r
    key = (r, t)
    got = _REC_CACHE.get(key)
    if got is not None:
        return got
    if r is UNIT:
        result = frozenset((t,))
    elif t is UNIT:
        result = frozenset((r,))
    else:
        out = {seq((r, t)), seq((t, r)), par((r, t)), copar((r, t))}
        for r1, r2 in seq_splits(r):
            for t1, t2 in seq_splits(t):
                if (r1 is UNIT or r2 is UNIT) and (t1 is UNIT or t2 is UNIT):
                    continue
                for q1 in _merge_rec(r1, t1):
                    for q2 in _merge_rec(r2, t2):
                        out.add(seq((q1, q2)))
        for part, rest in split_pairs(r, Par):
            for q in _merge_rec(part, t):
                out.add(par((q, rest)))
        for part, rest in split_pairs(r, Copar):
            for q in _merge_rec(part, t):
                out.add(copar((q, rest)))
        for part, rest in split_pairs(t, Par):
            for q in _merge_rec(r, part):
                out.add(par((q, rest)))
        for part, rest in split_pairs(t, Copar):
            for q in _merge_rec(r, part):
                out.add(copar((q, rest)))
        result = frozenset(out)
    _REC_CACHE[key] = result
    return result


def merge_member(q: Structure, r: Structure, t: Structure) -> bool:
    return q in _merge_rec(r, t)


# ---------------------------------------------------------------------------
# Semantic definition


def _labels(n: int) -> tuple:
    return tuple(atom(f"mlab{i}") for i in range(n))


def merge_semantic(
    r: Structure,
    t: Structure,
    bound: int = 8,
    via: str = "structures",
) -> MergeSet:
    """Oracle: enumerate every structure over the combined occurrences,
    keep those in which both inputs are immersed at their own occurrences
    and the par/copar integrity condition holds across the two sides.

    `via="webs"` swaps the candidate source for the exhaustive web-candidate
    enumeration (4 choices per pair), which is only tractable for four or
    five occurrences.
    """
    r_occ, t_occ = occurrences(r), occurrences(t)
    n = len(r_occ) + len(t_occ)
    if n > bound:
        raise MergeBoundExceeded(f"{n} combined occurrences exceed the bound {bound}")
    labels = _labels(n)
    split = len(r_occ)
    wr, wt = webs.web_of(r), webs.web_of(t)

    members = set()
    back = {labels[i]: occ for i, occ in enumerate(r_occ + t_occ)}
    for q_lab, wq in _candidates(labels, via):
        pos = {a: k for k, a in enumerate(wq.occs)}
        emb_r = tuple(pos[labels[i]] for i in range(split))
        emb_t = tuple(pos[labels[split + i]] for i in range(len(t_occ)))
        if not _relations_match(wr, wq, emb_r):
            continue
        if not _relations_match(wt, wq, emb_t):
            continue
        if not _integrity(wq, emb_r, emb_t):
            continue
        members.add(relabel(q_lab, back))
    return MergeSet(r, t, frozenset(members))


def _candidates(labels: tuple, via: str) -> Iterator:
    if via == "structures":
        for q in structures_over(labels):
            yield q, webs.web_of(q)
    elif via == "webs":
        if len(labels) > 5:
            raise MergeBoundExceeded("web-candidate enumeration limited to 5 occurrences")
        for z in webs.all_candidates(labels):
            if webs.is_web(z):
                yield webs.reconstruct(z), z
    else:
        raise ValueError(f"unknown candidate source {via!r}")


def _relations_match(w_small: webs.WebCandidate, w_big: webs.WebCandidate, emb: tuple) -> bool:
    n = len(w_small.occs)
    for a in range(n):
        for b in range(a + 1, n):
            if w_small.relation(a, b) != w_big.relation(emb[a], emb[b]):
                return False
    return True


def _integrity(wq: webs.WebCandidate, left: tuple, right: tuple) -> bool:
    # across the two sides, a par (copar) square with both diagonals par
    # (copar) must close on at least one side pair
    rel = wq.relation
    for want in (webs.PAR, webs.COPAR):
        for a, b in itertools.combinations(left, 2):
            if rel(a, b) != want:
                continue
            for c, d in itertools.permutations(right, 2):
                if rel(c, d) != want:
                    continue
                if rel(a, d) == want and rel(b, c) == want:
                    if rel(a, c) != want and rel(b, d) != want:
                        return False
    return True


def merge_weak(r: Structure, t: Structure, bound: int = 8) -> MergeSet:
    """Merge set without the integrity condition (semantic definition with
    the par/copar square filter dropped)."""
    r_occ, t_occ = occurrences(r), occurrences(t)
    n = len(r_occ) + len(t_occ)
    if n > bound:
        raise MergeBoundExceeded(f"{n} combined occurrences exceed the bound {bound}")
    labels = _labels(n)
    split = len(r_occ)
    wr, wt = webs.web_of(r), webs.web_of(t)
    members = set()
    back = {labels[i]: occ for i, occ in enumerate(r_occ + t_occ)}
    for q_lab, wq in _candidates(labels, "structures"):
        pos = {a: k for k, a in enumerate(wq.occs)}
        emb_r = tuple(pos[labels[i]] for i in range(split))
        emb_t = tuple(pos[labels[split + i]] for i in range(len(t_occ)))
        if _relations_match(wr, wq, emb_r) and _relations_match(wt, wq, emb_t):
            members.add(relabel(q_lab, back))
    return MergeSet(r, t, frozenset(members))


def merge_member_weak(q: Structure, r: Structure, t: Structure) -> bool:
    """Membership in the merge set without the integrity condition: some
    split of the occurrences of `q` restricts to the webs of `r` and `t`."""
    for left, right, a, b in unmerge_pairs(q, weak=True, sizes=(len(occurrences(r)),)):
        if a is r and b is t:
            return True
    return False


def unmerge_pairs(q: Structure, weak: bool = False, sizes: Optional[Sequence[int]] = None):
    """All (left-indices, right-indices, R, T) with `q` in the merge of R
    and T: each occurrence bipartition restricts the web of `q` to the webs
    of a unique pair of structures, filtered by the integrity condition
    unless `weak`.  `sizes` restricts the left side's cardinality."""
    wq = webs.web_of(q)
    n = len(wq.occs)
    wanted = set(sizes) if sizes is not None else None
    seen = set()
    for mask in range(1 << n):
        left = tuple(i for i in range(n) if (mask >> i) & 1)
        if wanted is not None and len(left) not in wanted:
            continue
        if left in seen:
            continue
        right = tuple(i for i in range(n) if not (mask >> i) & 1)
        seen.add(left)
        if not weak and not _integrity(wq, left, right):
            continue
        a = webs._rebuild(webs.restrict(wq, left))
        b = webs._rebuild(webs.restrict(wq, right))
        yield left, right, a, b


def merge_sets(phi: Iterable[Structure], psi: Iterable[Structure]) -> frozenset:
    """Pointwise extension of the merge to sets of structures."""
    out = set()
    for r in phi:
        for t in psi:
            out |= _merge_rec(r, t)
    return frozenset(out)
