"""The acceptance checks, one callable per criterion, shared between the
command-line `suite` command and the test suite.

Scale knobs: `max_size` bounds the enumerations (the environment variable
BV_MAX_SIZE overrides the default 6) and `seed` fixes the sampled parts.
Heavy universes are swept once per run and shared across criteria: the
provable sets come from the downward closure of the axiom (complete for
the non-growing systems because premiss sizes never exceed conclusion
sizes), not from enumerating all structures.
"""
from __future__ import annotations

import itertools
import os
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .core import (
    Atom,
    Copar,
    Par,
    Seq,
    Structure,
    UNIT,
    atom,
    copar,
    decompositions,
    fill,
    is_flat,
    negate,
    occurrences,
    par,
    seq,
    structure_key,
)
from . import webs
from .merge import merge_recursive, seq_splits, split_pairs
from .mll import check_mll_proof, from_structure, prove_mll, simulate_mll, to_structure
from .rules import (
    BV,
    FBV,
    RuleId,
    System,
    check_derivation,
    premisses,
    parse_system,
)
from .search import (
    eliminate_up,
    forward_closure,
    proof_from_closure,
    prove,
    prove_bounded,
    prove_with_required,
    split_find,
    synthesize_up_proof,
)
from .universe import all_structures, distinct_atoms, structures_over

__all__ = ["CriterionReport", "AcceptanceContext", "CRITERIA", "run_suite", "default_max_size"]


def default_max_size() -> int:
    try:
        return int(os.environ.get("BV_MAX_SIZE", "6"))
    except ValueError:
        return 6


@dataclass
class CriterionReport:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.name} ({self.seconds:.1f}s) {self.detail}"


class AcceptanceContext:
    """Shared enumerations; everything is computed once and cached."""

    def __init__(self, max_size: int = 6, names: Sequence[str] = ("a", "b", "c"), seed: int = 2024):
        self.max_size = max_size
        self.names = list(names)
        self.seed = seed
        self._cache: dict = {}

    def _get(self, key: str, build: Callable):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def alphabet(self) -> list:
        return self._get(
            "alphabet",
            lambda: [atom(n) for n in self.names] + [atom(n, True) for n in self.names],
        )

    @property
    def bv_provable(self) -> dict:
        return self._get("bv", lambda: forward_closure(BV, self.names, self.max_size))

    @property
    def fbv_provable(self) -> dict:
        return self._get("fbv", lambda: forward_closure(FBV, self.names, self.max_size))

    @property
    def bvq_provable(self) -> dict:
        sys_q = BV.union(RuleId.Q_UP, name="BV+qup")
        return self._get("bvq", lambda: forward_closure(sys_q, self.names, self.max_size))

    def rng(self, salt: int = 0) -> random.Random:
        return random.Random(self.seed + salt)

    def random_structure(self, rng: random.Random, size: int, names: Optional[Sequence[str]] = None) -> Structure:
        names = list(names or self.names)

        def build(n: int) -> Structure:
            if n == 0:
                return UNIT
            if n == 1:
                return atom(rng.choice(names), rng.random() < 0.5)
            k = rng.randint(1, n - 1)
            left, right = build(k), build(n - k)
            return rng.choice((seq, par, copar))((left, right))

        return build(size)


# ---------------------------------------------------------------------------


def criterion_1(ctx: AcceptanceContext) -> CriterionReport:
    """Running examples: the motivating structure and its sequent-side twin
    are provable quickly, with validating certificates."""
    t0 = time.time()
    from .syntax import parse_structure
    from .mll import parse_formula

    g = parse_structure("[a,b,(~b,[(~a,c),~c])]")
    t_one = time.time()
    pr1 = prove(g, BV)
    d1 = time.time() - t_one
    ok1 = pr1 is not None and check_derivation(pr1, BV, proof=True).ok and d1 < 1.0

    translated = to_structure(parse_formula("a|(b|(~b*((~a*c)|~c)))"))
    ok_same = translated is g
    t_two = time.time()
    pr2 = prove(translated, BV)
    d2 = time.time() - t_two
    ok2 = pr2 is not None and check_derivation(pr2, BV, proof=True).ok and d2 < 1.0

    passed = ok1 and ok2 and ok_same
    detail = f"search times {d1*1000:.0f}ms/{d2*1000:.0f}ms, certificates valid"
    return CriterionReport(1, "paper example provability", passed, detail, time.time() - t0)


def criterion_2(ctx: AcceptanceContext) -> CriterionReport:
    """No structure and its negation are both provable."""
    t0 = time.time()
    provable = ctx.bv_provable
    bad = [s for s in provable if s is not UNIT and negate(s) in provable]
    detail = f"{len(provable)} provable structures at size <= {ctx.max_size}, {len(bad)} violations"
    return CriterionReport(2, "consistency", not bad, detail, time.time() - t0)


def criterion_3(ctx: AcceptanceContext) -> CriterionReport:
    """Up-fragment admissibility: adding coseq changes nothing (exact),
    adding atomic cointeraction changes nothing (bounded search on a
    deterministic sample), and synthesized up-proofs eliminate into valid
    basic-system proofs of the same conclusion."""
    t0 = time.time()
    failures = []
    bv = set(ctx.bv_provable)
    bvq = set(ctx.bvq_provable)
    if bv != bvq:
        failures.append(f"coseq changes provability: {len(bv ^ bvq)} disagreements")

    sys_up = BV.union(RuleId.Q_UP, RuleId.AI_UP, name="BV+up")
    # exact within the size cap: the whole up fragment proves nothing new
    # as long as intermediates stay within the enumeration bound
    capped = forward_closure(sys_up, ctx.names, ctx.max_size)
    if set(capped) != bv:
        failures.append(f"up fragment changes provability within the cap: {len(set(capped) ^ bv)}")

    # bounded refutation sample with two occurrences of slack: unprovable
    # structures must stay unprovable even through larger intermediates
    rng = ctx.rng(3)
    unprovable_pool = []
    for s in all_structures(ctx.alphabet, min(3, ctx.max_size)):
        if s is not UNIT and s not in bv:
            unprovable_pool.append(s)
    sample = unprovable_pool if len(unprovable_pool) <= 150 else rng.sample(unprovable_pool, 150)
    larger = [s for s in _sampled_structures(ctx, rng, count=12, sizes=(4, min(4, ctx.max_size))) if s not in bv]
    checked = 0
    for s in sample + larger:
        pr = prove_bounded(s, sys_up, max_size=s.size + 2, max_depth=12, alphabet=ctx.names)
        checked += 1
        if pr is not None:
            failures.append(f"up rules proved {s!r} which the basic system cannot")
            break

    # constructive elimination on every provable structure
    elim = 0
    for s in sorted(bv, key=structure_key):
        up = synthesize_up_proof(s)
        if up is None:
            continue
        out = eliminate_up(up)
        elim += 1
        if not (out.conclusion is s and check_derivation(out, BV, proof=True).ok):
            failures.append(f"elimination failed on {s!r}")
            break
        if any(st.rule in (RuleId.AI_UP, RuleId.Q_UP) for st in out.steps):
            failures.append(f"up instance survived elimination on {s!r}")
            break
    qup_done = 0
    for s in sorted(bv, key=structure_key):
        if qup_done >= 50:
            break
        pr = prove_with_required(s, BV.union(RuleId.Q_UP, name="BV+qup"), RuleId.Q_UP)
        if pr is None:
            continue
        out = eliminate_up(pr)
        qup_done += 1
        if not (out.conclusion is s and check_derivation(out, BV, proof=True).ok):
            failures.append(f"coseq elimination failed on {s!r}")
            break
    detail = (
        f"{len(bv)} provables, {checked} bounded refutations, "
        f"{elim} cointeraction and {qup_done} coseq eliminations"
        + ("; " + failures[0] if failures else "")
    )
    return CriterionReport(3, "up-fragment admissibility", not failures, detail, time.time() - t0)


def _sampled_structures(ctx: AcceptanceContext, rng: random.Random, count: int, sizes: tuple) -> list:
    out = []
    lo, hi = sizes
    while len(out) < count:
        out.append(ctx.random_structure(rng, rng.randint(lo, hi)))
    return out


def criterion_4(ctx: AcceptanceContext) -> CriterionReport:
    """Conservativity over the sequent calculus on the flat fragment."""
    t0 = time.time()
    failures = []
    fbv = {s for s in ctx.fbv_provable}
    bv_flat = {s for s in ctx.bv_provable if is_flat(s)}
    if fbv != bv_flat:
        failures.append(f"flat/basic disagree on {len(fbv ^ bv_flat)} structures")
    # every provable flat structure must satisfy the polarity balance the
    # sequent side relies on for pruning
    for s in fbv:
        counts: dict = {}
        for a in occurrences(s):
            counts[a.name] = counts.get(a.name, 0) + (-1 if a.negative else 1)
        if any(counts.values()):
            failures.append(f"provable but unbalanced: {s!r}")
            break
    checked = 0
    memo: dict = {}
    for s in _balanced_flats(ctx):
        want = s in fbv
        got = prove_mll((from_structure(s),), _memo=memo) is not None
        checked += 1
        if want != got:
            failures.append(f"sequent oracle disagrees on {s!r}: flat={want} sequent={got}")
            break
    # unbalanced spot checks: the oracle must reject them too
    rng = ctx.rng(4)
    rejected = 0
    for s in _sampled_structures(ctx, rng, 200, (1, ctx.max_size)):
        if not is_flat(s) or s is UNIT:
            continue
        counts = {}
        for a in occurrences(s):
            counts[a.name] = counts.get(a.name, 0) + (-1 if a.negative else 1)
        if not any(counts.values()):
            continue
        if prove_mll((from_structure(s),), _memo=memo) is not None:
            failures.append(f"oracle proved unbalanced {s!r}")
            break
        rejected += 1
    detail = f"{len(fbv)} flat provables, {checked} oracle comparisons, {rejected} unbalanced rejections"
    if failures:
        detail += "; " + failures[0]
    return CriterionReport(4, "conservativity over the sequent oracle", not failures, detail, time.time() - t0)


def _balanced_flats(ctx: AcceptanceContext) -> Iterable[Structure]:
    names = ctx.names
    max_pairs = ctx.max_size // 2
    for k in range(1, max_pairs + 1):
        for combo in itertools.combinations_with_replacement(names, k):
            ms = []
            for n in combo:
                ms.append(atom(n))
                ms.append(atom(n, True))
            for s in structures_over(tuple(ms)):
                if is_flat(s):
                    yield s


def criterion_5(ctx: AcceptanceContext) -> CriterionReport:
    """Web soundness on random structures, reconstruction as inverse up to
    equivalence, and exact axioms-iff-realizable on four occurrences."""
    t0 = time.time()
    failures = []
    rng = ctx.rng(5)
    for _ in range(10_000):
        s = ctx.random_structure(rng, rng.randint(0, 8))
        report = webs.check_axioms(webs.web_of(s))
        if not all(ok for ok, _ in report.values()):
            failures.append(f"axioms fail on {s!r}")
            break
    count = 0
    for n in range(6):
        for s in structures_over(distinct_atoms(n)):
            count += 1
            if webs.reconstruct(webs.web_of(s)) is not s:
                failures.append(f"reconstruction misses {s!r}")
                break
    for size in (6, 7):
        for _ in range(1500):
            s = ctx.random_structure(rng, size)
            count += 1
            if webs.reconstruct(webs.web_of(s)) is not s:
                failures.append(f"reconstruction misses {s!r}")
                break
    # all fully-set candidates on <= 4 occurrences: axioms pass iff realizable
    cand_checked = 0
    for n in range(1, 5):
        occs = distinct_atoms(n)
        realizable = set()
        for s in structures_over(occs):
            w = webs.web_of(s)
            # re-index the web by the identity of the distinct labels
            pos = {a: i for i, a in enumerate(w.occs)}
            key = []
            for i in range(n):
                for j in range(i + 1, n):
                    key.append(w.relation(pos[occs[i]], pos[occs[j]]))
            realizable.add(tuple(key))
        for z in webs.all_candidates(occs):
            cand_checked += 1
            key = []
            for i in range(n):
                for j in range(i + 1, n):
                    key.append(z.relation(i, j))
            ok = webs.is_web(z)
            real = tuple(key) in realizable
            if ok != real:
                failures.append(f"candidate mismatch on {n} occurrences: axioms={ok} realizable={real}")
                break
    detail = f"10000 random webs, {count} reconstructions, {cand_checked} candidates"
    if failures:
        detail += "; " + failures[0]
    return CriterionReport(5, "webs characterize structures", not failures, detail, time.time() - t0)


def criterion_6(ctx: AcceptanceContext) -> CriterionReport:
    """Merge sets: the recursive and semantic definitions agree, negation is
    a bijection between dual merge sets, the excluded interleavings stay
    excluded and the non-associativity witness reproduces."""
    t0 = time.time()
    failures = []
    from .syntax import parse_structure as P
    from .merge import merge_member, merge_sets

    budget = ctx.max_size
    checked = 0
    semantic: dict = {}
    pair_sizes = [(r, t) for r in range(0, budget + 1) for t in range(0, budget + 1 - r)]
    for r_n, t_n in pair_sizes:
        r_labels = distinct_atoms(r_n, "u")
        t_labels = distinct_atoms(t_n, "v")
        combined = tuple(r_labels + t_labels)
        table: dict = {}
        for q in structures_over(combined):
            wq = webs.web_of(q)
            pos = {a: i for i, a in enumerate(wq.occs)}
            left = tuple(pos[a] for a in r_labels)
            right = tuple(pos[a] for a in t_labels)
            from .merge import _integrity, _relations_match

            if not _integrity(wq, left, right):
                continue
            r_part = webs._rebuild(webs.restrict(wq, left))
            t_part = webs._rebuild(webs.restrict(wq, right))
            table.setdefault((r_part, t_part), set()).add(q)
        for r_s in structures_over(r_labels):
            for t_s in structures_over(t_labels):
                rec = merge_recursive(r_s, t_s).members
                sem = table.get((r_s, t_s), set())
                checked += 1
                if rec != sem:
                    failures.append(
                        f"definitions disagree for {r_s!r} and {t_s!r}: "
                        f"{len(rec - sem)} extra, {len(sem - rec)} missing"
                    )
                    break
                neg = {negate(q) for q in rec}
                dual = merge_recursive(negate(r_s), negate(t_s)).members
                if neg != dual:
                    failures.append(f"negation bijection fails for {r_s!r}, {t_s!r}")
                    break
                if merge_recursive(t_s, r_s).members != rec:
                    failures.append(f"commutativity fails for {r_s!r}, {t_s!r}")
                    break
            if failures:
                break
        if failures:
            break
    # endpoints and units
    if not failures:
        r_s, t_s = P("<a;b>"), P("(c,[d,e])")
        ms = merge_recursive(r_s, t_s).members
        for endpoint in (seq((r_s, t_s)), seq((t_s, r_s)), par((r_s, t_s)), copar((r_s, t_s))):
            if endpoint not in ms:
                failures.append(f"endpoint {endpoint!r} missing")
        if merge_recursive(r_s, UNIT).members != frozenset((r_s,)):
            failures.append("unit law fails")
    # the two excluded interleavings and the non-associativity witness
    if not failures:
        if P("[<a;c>,<b;d>]") in merge_recursive(P("[a,b]"), P("[c,d]")).members:
            failures.append("excluded par interleaving appears")
        if P("([a,c],[b,d])") in merge_recursive(P("(a,b)"), P("(c,d)")).members:
            failures.append("excluded copar interleaving appears")
        w1 = merge_sets([P("a")], merge_sets([P("b")], [P("(c,d)")]))
        w2 = merge_sets(merge_sets([P("a")], [P("b")]), [P("(c,d)")])
        wit = P("([a,c],[b,d])")
        if not (wit in w1 and wit not in w2):
            failures.append("non-associativity witness does not reproduce")
    detail = f"{checked} pairs cross-checked"
    if failures:
        detail += "; " + failures[0]
    return CriterionReport(6, "merge definitions agree", not failures, detail, time.time() - t0)


def criterion_7(ctx: AcceptanceContext) -> CriterionReport:
    """The two separation examples: each one-step derivation exists in its
    own rule and is unreachable in the complementary system."""
    t0 = time.time()
    from .search import derivable
    from .syntax import parse_structure as P

    failures = []
    top1, bot1 = P("(<a;c>,b)"), P("<(a,b);c>")
    r = derivable(top1, bot1, parse_system("qd,s"))
    if r.derivation is not None or not r.decisive:
        failures.append("coseq separation failed")
    r = derivable(top1, bot1, parse_system("qu"))
    if r.derivation is None or r.derivation.length != 1:
        failures.append("coseq one-step derivation missing")
    top2, bot2 = P("([a,c],b)"), P("[(a,b),c]")
    r = derivable(top2, bot2, parse_system("qd,qu"))
    if r.derivation is not None or not r.decisive:
        failures.append("switch separation failed")
    r = derivable(top2, bot2, parse_system("s"))
    if r.derivation is None or r.derivation.length != 1:
        failures.append("switch one-step derivation missing")
    detail = "both separations hold" if not failures else failures[0]
    return CriterionReport(7, "derivability separations", not failures, detail, time.time() - t0)


def criterion_8(ctx: AcceptanceContext) -> CriterionReport:
    """Every expansion and extrusion output validates in its target system."""
    t0 = time.time()
    from .core import HOLE
    from .rules import (
        dual_instance,
        expand_corule,
        expand_g_down,
        expand_g_up,
        expand_i_down,
        expand_i_up,
        make_instance,
        par_extrusion,
    )

    failures = []
    witness_bound = min(5, ctx.max_size)
    contexts = [HOLE, par((atom("k"), HOLE)), copar((atom("k"), HOLE)), seq((atom("k"), HOLE))]
    n_i = 0
    for n in range(witness_bound + 1):
        for r in structures_over(distinct_atoms(n)):
            for ctx_s in contexts:
                inst = make_instance(RuleId.I_DOWN, ctx_s, R=r)
                d = expand_i_down(inst)
                n_i += 1
                if not (
                    d.premiss is inst.premiss
                    and d.conclusion is inst.conclusion
                    and check_derivation(d, parse_system("aid,qd,s")).ok
                ):
                    failures.append(f"interaction expansion fails on {r!r}")
                    break
                iu = make_instance(RuleId.I_UP, ctx_s, R=r)
                du = expand_i_up(iu)
                if not (
                    du.premiss is iu.premiss
                    and du.conclusion is iu.conclusion
                    and check_derivation(du, parse_system("aiu,qu,s")).ok
                ):
                    failures.append(f"cointeraction expansion fails on {r!r}")
                    break
            if failures:
                break
        if failures:
            break
    n_g = 0
    if not failures:
        for r_n in range(0, witness_bound + 1):
            for t_n in range(0, witness_bound + 1 - r_n):
                for r_s in structures_over(distinct_atoms(r_n, "u")):
                    for t_s in structures_over(distinct_atoms(t_n, "v")):
                        members = merge_recursive(r_s, t_s).members
                        for q in members:
                            gi = make_instance(RuleId.G_DOWN, HOLE, R=r_s, T=t_s, Q=q)
                            d = expand_g_down(gi)
                            n_g += 1
                            if not (
                                d.premiss is gi.premiss
                                and d.conclusion is gi.conclusion
                                and check_derivation(d, parse_system("qd,s")).ok
                            ):
                                failures.append(f"merge expansion fails on {q!r}")
                                break
                            gu = make_instance(RuleId.G_UP, HOLE, R=r_s, T=t_s, Q=q)
                            du = expand_g_up(gu)
                            if not (
                                du.premiss is gu.premiss
                                and du.conclusion is gu.conclusion
                                and check_derivation(du, parse_system("qu,s")).ok
                            ):
                                failures.append(f"comerge expansion fails on {q!r}")
                                break
                        if failures:
                            break
                    if failures:
                        break
                if failures:
                    break
            if failures:
                break
    n_co = 0
    if not failures:
        rng = ctx.rng(8)
        pool = [s for s in all_structures(ctx.alphabet, 4)]
        for s in rng.sample(pool, min(len(pool), 120)):
            for inst in premisses(s, parse_system("qu,aiu"), alphabet=ctx.names)[:4]:
                d = expand_corule(inst)
                n_co += 1
                base = parse_system("id,iu,s") if inst.rule is RuleId.AI_UP else parse_system("id,iu,s,qd")
                target = base.union(RuleId.AI_DOWN) if inst.rule is RuleId.AI_UP else base
                if not (
                    d.premiss is inst.premiss
                    and d.conclusion is inst.conclusion
                    and check_derivation(d, target).ok
                ):
                    failures.append(f"corule expansion fails on {inst!r}")
                    break
            if failures:
                break
    n_x = 0
    if not failures:
        from .core import HOLE as _H

        ctx_pool = [_H]
        for n in range(1, 4):
            for base in structures_over(distinct_atoms(n, "w")):
                for c0, x in decompositions(base):
                    for wrapped in (par((x, _H)), copar((x, _H)), seq((x, _H)), seq((_H, x))):
                        ctx_pool.append(fill(c0, wrapped))
        seen = set()
        for c in ctx_pool:
            if c in seen:
                continue
            seen.add(c)
            d = par_extrusion(c, atom("r"), atom("t"))
            n_x += 1
            want_from = fill(c, par((atom("r"), atom("t"))))
            want_to = par((fill(c, atom("r")), atom("t")))
            if not (
                d.premiss is want_from and d.conclusion is want_to and check_derivation(d, parse_system("qd,s")).ok
            ):
                failures.append(f"extrusion fails on {c!r}")
                break
    detail = f"{n_i} interaction, {n_g} merge, {n_co} corule, {n_x} extrusion expansions"
    if failures:
        detail += "; " + failures[0]
    return CriterionReport(8, "expansions validate", not failures, detail, time.time() - t0)


def criterion_9(ctx: AcceptanceContext) -> CriterionReport:
    """Splitting succeeds with validating witnesses on every provable par
    of a seq or copar with a context."""
    t0 = time.time()
    failures = []
    count = 0
    for s in sorted(ctx.bv_provable, key=structure_key):
        shapes = []
        if isinstance(s, Seq):
            for r, t in seq_splits(s):
                if r is not UNIT and t is not UNIT:
                    shapes.append(("seq", r, t, UNIT))
        if isinstance(s, Copar):
            for r, t in split_pairs(s, Copar):
                shapes.append(("copar", r, t, UNIT))
        if isinstance(s, Par):
            done = set()
            for idx, child in enumerate(s.children):
                if child in done:
                    continue
                done.add(child)
                rest = par(s.children[:idx] + s.children[idx + 1 :])
                if isinstance(child, Seq):
                    for r, t in seq_splits(child):
                        if r is not UNIT and t is not UNIT:
                            shapes.append(("seq", r, t, rest))
                if isinstance(child, Copar):
                    for r, t in split_pairs(child, Copar):
                        shapes.append(("copar", r, t, rest))
        for kind, r, t, p in shapes:
            try:
                w = split_find(r, t, p, kind)
            except Exception as exc:  # noqa: BLE001 - report any failure
                failures.append(f"split_find failed on {s!r}: {exc}")
                break
            count += 1
            bridge_top = seq((w.p1, w.p2)) if kind == "seq" else par((w.p1, w.p2))
            ok = (
                w.bridge.premiss is bridge_top
                and w.bridge.conclusion is p
                and check_derivation(w.bridge, BV).ok
                and check_derivation(w.left_proof, BV, proof=True).ok
                and w.left_proof.conclusion is par((r, w.p1))
                and check_derivation(w.right_proof, BV, proof=True).ok
                and w.right_proof.conclusion is par((t, w.p2))
            )
            if not ok:
                failures.append(f"split witness invalid for {s!r}")
                break
        if failures:
            break
    detail = f"{count} splittings validated"
    if failures:
        detail += "; " + failures[0]
    return CriterionReport(9, "splitting witnesses", not failures, detail, time.time() - t0)


def criterion_10(ctx: AcceptanceContext) -> CriterionReport:
    """Size and energy monotonicity of every enumerated instance."""
    t0 = time.time()
    failures = []
    sys_all = parse_system("aid,qd,qu,s,ws")
    pool: list = [UNIT]
    pool.extend(all_structures(ctx.alphabet, min(4, ctx.max_size), include_unit=False))
    rng = ctx.rng(10)
    pool.extend(s for s in _sampled_structures(ctx, rng, 250, (5, ctx.max_size)))
    pool.extend(itertools.islice(sorted(ctx.bv_provable, key=structure_key), 0, None, 4))
    checked = 0
    for s in pool:
        for inst in premisses(s, sys_all):
            checked += 1
            if inst.premiss.size > inst.conclusion.size:
                failures.append(f"size grows on {inst!r}")
                break
            if inst.rule in (RuleId.Q_DOWN, RuleId.Q_UP, RuleId.S, RuleId.WS):
                if not webs.energy_leq(inst.premiss, inst.conclusion):
                    failures.append(f"energy order fails on {inst!r}")
                    break
                if inst.premiss is inst.conclusion:
                    failures.append(f"trivial instance emitted: {inst!r}")
                    break
        if failures:
            break
    detail = f"{checked} instances checked"
    if failures:
        detail += "; " + failures[0]
    return CriterionReport(10, "size and energy monotonicity", not failures, detail, time.time() - t0)


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


def run_suite(
    max_size: Optional[int] = None,
    names: Sequence[str] = ("a", "b", "c"),
    seed: int = 2024,
    only: Optional[Sequence[int]] = None,
    report: Callable[[CriterionReport], None] = lambda r: None,
) -> list:
    ctx = AcceptanceContext(max_size or default_max_size(), names, seed)
    out = []
    for i, crit in enumerate(CRITERIA, start=1):
        if only and i not in only:
            continue
        rep = crit(ctx)
        out.append(rep)
        report(rep)
    return out
