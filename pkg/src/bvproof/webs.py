"""Relation webs: for every pair of atom occurrences, which context kind
separates them.  A web determines a structure up to equivalence; the seven
axioms s1-s7 characterize exactly the webs of structures, and the
partition-growing algorithm turns any axiom-satisfying candidate back into
a structure.
"""
from __future__ import annotations

import itertools
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
    seq,
)

__all__ = [
    "SEQ",
    "COSEQ",
    "PAR",
    "COPAR",
    "WebCandidate",
    "NotAStructure",
    "web_of",
    "check_axioms",
    "is_web",
    "reconstruct",
    "restrict",
    "immersed",
    "enumerate_immersed",
    "energy_leq",
    "web_to_json",
    "web_from_json",
    "all_candidates",
]

# pair relations, stored for index pairs (i, j) with i < j
SEQ = "seq"        # i before j
COSEQ = "coseq"    # j before i
PAR = "par"
COPAR = "copar"

_FLIP = {SEQ: COSEQ, COSEQ: SEQ, PAR: PAR, COPAR: COPAR}
# collapse seq/coseq into one class for the triangular property
_CLASS = {SEQ: "order", COSEQ: "order", PAR: PAR, COPAR: COPAR}


class WebCandidate:
    """A finite indexed set of atom occurrences plus one relation per
    unordered pair.  `rel` maps (i, j) with i < j to one of the four pair
    relations; the inverse order relation is implicit."""

    __slots__ = ("occs", "rel")

    def __init__(self, occs: Sequence[Atom], rel: dict):
        self.occs = tuple(occs)
        self.rel = rel

    def relation(self, i: int, j: int) -> Optional[str]:
        """Relation of the ordered pair (i, j): SEQ means i comes before j."""
        if i == j:
            return None
        if i < j:
            return self.rel.get((i, j))
        r = self.rel.get((j, i))
        return None if r is None else _FLIP[r]

    def __len__(self) -> int:
        return len(self.occs)

    def __eq__(self, other) -> bool:
        return isinstance(other, WebCandidate) and self.occs == other.occs and self.rel == other.rel

    def __hash__(self) -> int:
        return hash((self.occs, tuple(sorted(self.rel.items()))))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{i}{_ARROW[r]}{j}" for (i, j), r in sorted(self.rel.items()))
        names = ",".join(("~" if a.negative else "") + a.name for a in self.occs)
        return f"<web [{names}] {pairs}>"


_ARROW = {SEQ: "<", COSEQ: ">", PAR: "|", COPAR: "&"}


class NotAStructure(ValueError):
    """Raised when a candidate violates one of the web axioms."""

    def __init__(self, axiom: str, witness: tuple):
        super().__init__(f"axiom {axiom} fails on occurrences {witness}")
        self.axiom = axiom
        self.witness = witness


def web_of(s: Structure) -> WebCandidate:
    """The relation web of a canonical structure: every pair of occurrences
    separated by a seq/par/copar node gets the corresponding relation."""
    occ = occurrences(s)
    rel: dict = {}

    def walk(t: Structure, base: int) -> int:
        if isinstance(t, Atom):
            return base + 1
        if t is UNIT:
            return base
        kind = SEQ if isinstance(t, Seq) else (PAR if isinstance(t, Par) else COPAR)
        spans = []
        cur = base
        for c in t.children:
            end = walk(c, cur)
            spans.append((cur, end))
            cur = end
        for x in range(len(spans)):
            for y in range(x + 1, len(spans)):
                for i in range(*spans[x]):
                    for j in range(*spans[y]):
                        rel[(i, j)] = kind
        return cur

    walk(s, 0)
    return WebCandidate(occ, rel)


def check_axioms(z: WebCandidate) -> dict:
    """Verdict per axiom, each `(passed, witness-or-None)`.

    s1 (irreflexivity), s2 (exactly one relation per pair), s3 (order and
    co-order mutually inverse) and s5 (symmetry of par/copar) hold by
    construction of the pair storage; s2 still fails when a pair is unset.
    s4 is transitivity of the order, s6 the triangular property over
    triples, s7 the square property in its three variants over quadruples.
    """
    n = len(z.occs)
    report = {k: (True, None) for k in ("s1", "s2", "s3", "s4", "s5", "s6", "s7_seq", "s7_par", "s7_copar")}
    for i in range(n):
        for j in range(i + 1, n):
            if z.rel.get((i, j)) is None:
                report["s2"] = (False, (i, j))
    if not report["s2"][0]:
        return report
    rel = z.relation

    def before(i, j):
        return rel(i, j) == SEQ

    for a, b, c in itertools.permutations(range(n), 3):
        if before(a, b) and before(b, c) and not before(a, c):
            report["s4"] = (False, (a, b, c))
            break
    for a, b, c in itertools.combinations(range(n), 3):
        k1, k2, k3 = _CLASS[rel(a, b)], _CLASS[rel(b, c)], _CLASS[rel(c, a)]
        if k1 != k2 and k2 != k3 and k3 != k1:
            report["s6"] = (False, (a, b, c))
            break
    for a, b, c, d in itertools.permutations(range(n), 4):
        if before(a, b) and before(a, d) and before(c, d):
            if not (
                before(a, c) or before(b, c) or before(b, d)
                or before(c, a) or before(c, b) or before(d, b)
            ):
                report["s7_seq"] = (False, (a, b, c, d))
                break
    for name, want in (("s7_par", PAR), ("s7_copar", COPAR)):
        if not report[name][0]:
            continue
        for a, b, c, d in itertools.permutations(range(n), 4):
            if rel(a, b) == want and rel(a, d) == want and rel(c, d) == want:
                if not (rel(a, c) == want or rel(b, c) == want or rel(b, d) == want):
                    report[name] = (False, (a, b, c, d))
                    break
    return report


def is_web(z: WebCandidate) -> bool:
    return all(ok for ok, _ in check_axioms(z).values())


def restrict(z: WebCandidate, indices: Sequence[int]) -> WebCandidate:
    """Sub-candidate induced by a subset of occurrence indices (kept in
    ascending index order).  Restrictions of webs are webs."""
    idx = sorted(indices)
    pos = {orig: k for k, orig in enumerate(idx)}
    rel = {}
    for a, b in itertools.combinations(idx, 2):
        r = z.relation(a, b)
        if r is not None:
            rel[(pos[a], pos[b])] = r
    return WebCandidate(tuple(z.occs[i] for i in idx), rel)


# ---------------------------------------------------------------------------
# Reconstruction (candidate -> structure)


def reconstruct(z: WebCandidate) -> Structure:
    """A structure whose web equals `z`; unique modulo equivalence.

    Grows a two-sided partition occurrence by occurrence, rearranging via
    the triangular and square properties when the fresh occurrence does not
    extend the current sides, then recurses on both sides.  Deterministic:
    the seed pair is the two lowest-indexed occurrences and each step picks
    the lowest-indexed unplaced occurrence.
    """
    for axiom, (ok, witness) in check_axioms(z).items():
        if not ok:
            raise NotAStructure(axiom, witness)
    return _rebuild(z)


def _rebuild(z: WebCandidate) -> Structure:
    n = len(z.occs)
    if n == 0:
        return UNIT
    if n == 1:
        return z.occs[0]
    mu, nu, sigma = _partition(z)
    left = _rebuild(restrict(z, mu))
    right = _rebuild(restrict(z, nu))
    if sigma == SEQ:
        return seq((left, right))
    if sigma == PAR:
        return par((left, right))
    return copar((left, right))


def _partition(z: WebCandidate):
    rel = z.relation
    n = len(z.occs)
    r01 = rel(0, 1)
    if r01 == COSEQ:
        mu, nu, sigma = [1], [0], SEQ
    else:
        mu, nu, sigma = [0], [1], r01

    def holds(x, y, s):
        return rel(x, y) == s

    for c in range(2, n):
        if all(holds(d, c, sigma) for d in mu):
            nu.append(c)
        elif all(holds(c, e, sigma) for e in nu):
            mu.append(c)
        elif sigma == SEQ:
            mu, nu, sigma = _rearrange_seq(rel, mu, nu, c)
        else:
            mu, nu, sigma = _rearrange_sym(rel, mu, nu, c, sigma)
        if __debug__:
            for x in mu:
                for y in nu:
                    assert rel(x, y) == sigma, "partition invariant broken"
    return mu, nu, sigma


def _rearrange_seq(rel, mu, nu, c):
    # mu < nu but c neither extends mu's left side nor nu's right side
    a = next(d for d in mu if rel(d, c) != SEQ)
    tau = _CLASS[rel(a, c)]
    assert tau in (PAR, COPAR)
    t = PAR if tau == PAR else COPAR
    mu_t = [d for d in mu if rel(d, c) == t]
    mu_seq = [d for d in mu if rel(d, c) == SEQ]
    nu_t = [e for e in nu if rel(c, e) == t]
    nu_coseq = [e for e in nu if rel(c, e) == SEQ]
    assert len(mu_t) + len(mu_seq) == len(mu) and len(nu_t) + len(nu_coseq) == len(nu)
    if mu_seq:
        return mu_seq, mu_t + nu_t + nu_coseq + [c], SEQ
    if nu_coseq:
        return mu_t + nu_t + [c], nu_coseq, SEQ
    return mu_t + nu_t, [c], t


def _rearrange_sym(rel, mu, nu, c, sigma):
    # mu and nu fully related by the symmetric sigma (par or copar), but c
    # fails against both sides; all failing pairs share one relation tau
    a = next(d for d in mu if rel(d, c) != sigma)
    tau = rel(a, c)
    mu_s = [d for d in mu if rel(d, c) == sigma]
    mu_t = [d for d in mu if rel(d, c) == tau]
    nu_s = [e for e in nu if rel(e, c) == sigma]
    nu_t = [e for e in nu if rel(e, c) == tau]
    assert len(mu_s) + len(mu_t) == len(mu) and len(nu_s) + len(nu_t) == len(nu)
    if mu_s:
        return mu_s, mu_t + [c] + nu_t + nu_s, sigma
    if nu_s:
        return mu_t + [c] + nu_t, nu_s, sigma
    if tau == SEQ:
        return mu_t + nu_t, [c], SEQ
    if tau == COSEQ:
        return [c], mu_t + nu_t, SEQ
    return mu_t + nu_t, [c], tau


# ---------------------------------------------------------------------------
# Immersion and the energy order


def immersed(r: Structure, q: Structure, embedding: Optional[Sequence[int]] = None) -> bool:
    """True when `r` embeds into `q` preserving names, polarities and all
    three structural relations.  `embedding` maps occurrence indices of `r`
    to occurrence indices of `q`; omit it to search for one.
    """
    wr, wq = web_of(r), web_of(q)
    if embedding is not None:
        return _embeds(wr, wq, tuple(embedding))
    ro, qo = occurrences(r), occurrences(q)
    slots = [[j for j, b in enumerate(qo) if b is a] for a in ro]

    def go(k: int, used: tuple) -> bool:
        if k == len(slots):
            return _embeds(wr, wq, used)
        for j in slots[k]:
            if j not in used:
                if go(k + 1, used + (j,)):
                    return True
        return False

    return go(0, ())


def _embeds(wr: WebCandidate, wq: WebCandidate, emb: tuple) -> bool:
    if len(emb) != len(wr.occs) or len(set(emb)) != len(emb):
        return False
    for k, j in enumerate(emb):
        if wq.occs[j] is not wr.occs[k]:
            return False
    for a in range(len(wr.occs)):
        for b in range(a + 1, len(wr.occs)):
            if wr.relation(a, b) != wq.relation(emb[a], emb[b]):
                return False
    return True


def enumerate_immersed(q: Structure, max_occurrences: int = 14) -> set:
    """Every structure immersed in `q`: one reconstruction per occurrence
    subset (each restriction of a web is a web)."""
    w = web_of(q)
    n = len(w.occs)
    if n > max_occurrences:
        raise ValueError(f"too many occurrences for exhaustive immersion ({n} > {max_occurrences})")
    out = set()
    for mask in range(1 << n):
        idx = [i for i in range(n) if (mask >> i) & 1]
        out.add(_rebuild(restrict(w, idx)))
    return out


def energy_leq(t: Structure, r: Structure) -> bool:
    """Occurrence-preserving order: same indexed occurrence list, par pairs
    only gained and copar pairs only lost when moving from `t` to `r`."""
    if occurrences(t) != occurrences(r):
        return False
    wt, wr = web_of(t), web_of(r)
    for pair, rel in wt.rel.items():
        if rel == PAR and wr.rel[pair] != PAR:
            return False
    for pair, rel in wr.rel.items():
        if rel == COPAR and wt.rel[pair] != COPAR:
            return False
    return True


# ---------------------------------------------------------------------------
# Serialization and small-scope candidate enumeration


def web_to_json(z: WebCandidate) -> dict:
    occs = [
        {"index": i, "name": a.name, "polarity": "negative" if a.negative else "positive"}
        for i, a in enumerate(z.occs)
    ]
    pairs = []
    for (i, j), r in sorted(z.rel.items()):
        if r == COSEQ:
            pairs.append({"i": j, "j": i, "rel": "seq"})
        else:
            pairs.append({"i": i, "j": j, "rel": r})
    return {"occurrences": occs, "pairs": pairs}


def web_from_json(data: dict) -> WebCandidate:
    occ_entries = sorted(data["occurrences"], key=lambda e: e["index"])
    occs = tuple(atom(e["name"], e["polarity"] == "negative") for e in occ_entries)
    rel = {}
    for p in data["pairs"]:
        i, j, r = p["i"], p["j"], p["rel"]
        if r not in (SEQ, PAR, COPAR):
            raise ValueError(f"unknown relation {r!r}")
        if i < j:
            rel[(i, j)] = r
        else:
            rel[(j, i)] = COSEQ if r == SEQ else r
    return WebCandidate(occs, rel)


def all_candidates(occs: Sequence[Atom]) -> Iterator[WebCandidate]:
    """Every fully-set candidate over the given occurrences (4 choices per
    pair); exponential, keep the occurrence count tiny."""
    n = len(occs)
    pairs = list(itertools.combinations(range(n), 2))
    for combo in itertools.product((SEQ, COSEQ, PAR, COPAR), repeat=len(pairs)):
        yield WebCandidate(tuple(occs), dict(zip(pairs, combo)))
