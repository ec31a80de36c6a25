"""Decision procedures: provability by exhaustive bottom-up search with
memoization, bounded derivability between structures, splitting-witness
extraction, and constructive elimination of the up fragment from proofs.

Termination of the exact searches rests on two facts: atomic interaction
strictly shrinks the occurrence multiset going up, and every other
occurrence-preserving rule strictly lowers the energy order, so the
premiss graph over canonical forms is finite and acyclic.
"""
from __future__ import annotations

import itertools
from collections import deque
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
    fill,
    negate,
    occurrences,
    par,
    seq,
    structure_key,
)
from .rules import (
    BV,
    CheckResult,
    Derivation,
    Proof,
    RuleId,
    RuleInstance,
    System,
    body,
    check_derivation,
    compose,
    conclusions,
    dual_derivation,
    identity_derivation,
    in_context,
    make_instance,
    premisses,
    proof_from_derivation,
    unit_proof,
)
from .merge import seq_splits, split_pairs

__all__ = [
    "SearchConfig",
    "NotProvable",
    "DepthBoundRequired",
    "SplitSearchExhausted",
    "DeriveOutcome",
    "SplitWitness",
    "ConsistencyResult",
    "prove",
    "prove_sbv",
    "prove_bfs",
    "prove_bounded",
    "prove_with_required",
    "forward_closure",
    "proof_from_closure",
    "derivable",
    "split_find",
    "context_reduce",
    "eliminate_up",
    "consistency_check",
    "synthesize_up_proof",
]

# rules whose premisses never grow the occurrence multiset (upward search
# over them terminates without any bound)
_NON_GROWING = frozenset(
    {
        RuleId.O_DOWN,
        RuleId.AI_DOWN,
        RuleId.Q_DOWN,
        RuleId.Q_UP,
        RuleId.S,
        RuleId.WS,
        RuleId.G_DOWN,
        RuleId.G_UP,
        RuleId.WG_DOWN,
        RuleId.WG_UP,
        RuleId.I_DOWN,
    }
)

_UP_RULES = frozenset({RuleId.AI_UP, RuleId.Q_UP})


class NotProvable(ValueError):
    pass


class DepthBoundRequired(ValueError):
    pass


class SplitSearchExhausted(RuntimeError):
    """The witness search ran out of candidates; this contradicts the
    splitting theorem and therefore indicates a bug."""


@dataclass
class SearchConfig:
    max_size: Optional[int] = None
    memo_enabled: bool = True
    derivability_depth: Optional[int] = None
    alphabet: Optional[Sequence[str]] = None


# memo tables per rule set: structure -> winning instance | False
_PROVE_MEMO: dict = {}


def _memo_for(system: System) -> dict:
    return _PROVE_MEMO.setdefault(system.rules, {})


def _decidable_up(system: System) -> bool:
    return system.rules <= _NON_GROWING


def prove(s: Structure, system: System = BV, config: Optional[SearchConfig] = None) -> Optional[Proof]:
    """Total decision of provability for systems whose upward search space
    is finite; returns a checkable proof or None (definitively unprovable).

    Depth-first over premisses with a memo keyed on canonical forms; the
    memo keeps the winning instance per provable structure, so certificates
    are materialized lazily by walking winners up to the unit.
    """
    if RuleId.O_DOWN not in system.rules:
        raise ValueError(f"system {system.name} has no axiom; proofs are undefined")
    if not _decidable_up(system):
        raise ValueError(
            f"system {system.name} contains growing rules; use prove_bounded for a bounded search"
        )
    config = config or SearchConfig()
    memo = _memo_for(system) if config.memo_enabled else {}
    if _dfs(s, system, memo):
        return _materialize(s, memo)
    return None


_IN_PROGRESS = object()


def _dfs(s: Structure, system: System, memo: dict) -> bool:
    got = memo.get(s)
    if got is _IN_PROGRESS:
        return False
    if got is not None:
        return got is not False
    if s is UNIT:
        memo[s] = make_instance(RuleId.O_DOWN)
        return True
    memo[s] = _IN_PROGRESS
    for inst in premisses(s, system):
        if _dfs(inst.premiss, system, memo):
            memo[s] = inst
            return True
    memo[s] = False
    return False


def _materialize(s: Structure, memo: dict) -> Proof:
    chain: list = []
    cur = s
    while True:
        inst = memo[cur]
        chain.append(inst)
        if inst.rule is RuleId.O_DOWN:
            break
        cur = inst.premiss
    chain.reverse()
    return Proof(s, tuple(chain))


def prove_sbv(s: Structure) -> Optional[Proof]:
    """Provability in the symmetric system with the axiom adjoined; decided
    through the basic system, whose proofs serve as certificates."""
    return prove(s, BV)


def prove_bfs(s: Structure, system: System = BV) -> bool:
    """Independent breadth-first verdict (no certificates, no shared memo);
    used to cross-check the depth-first decision."""
    if not _decidable_up(system):
        raise ValueError("breadth-first check needs a non-growing system")
    seen = {s}
    queue = deque([s])
    while queue:
        cur = queue.popleft()
        if cur is UNIT:
            return True
        for inst in premisses(cur, system):
            if inst.premiss not in seen:
                seen.add(inst.premiss)
                queue.append(inst.premiss)
    return False


def prove_bounded(
    s: Structure,
    system: System,
    max_size: int,
    max_depth: int,
    alphabet: Optional[Sequence[str]] = None,
) -> Optional[Proof]:
    """Bounded search for systems with growing rules (cointeraction read
    upward): premisses may exceed the conclusion's size up to `max_size`,
    chains are cut at `max_depth`.  None means unknown at these bounds."""
    alphabet = alphabet if alphabet is not None else sorted({a.name for a in occurrences(s)})
    path: set = set()
    found: dict = {}
    failed_at: dict = {}  # structure -> largest depth at which search failed

    def go(cur: Structure, depth: int) -> bool:
        if cur is UNIT:
            found[cur] = make_instance(RuleId.O_DOWN)
            return True
        if depth == 0 or cur in path:
            return False
        if cur in found:
            return True
        if failed_at.get(cur, -1) >= depth:
            return False
        path.add(cur)
        try:
            for inst in premisses(cur, system, alphabet=alphabet, max_size=max_size):
                if inst.premiss.size > max_size:
                    continue
                if go(inst.premiss, depth - 1):
                    found[cur] = inst
                    return True
        finally:
            path.discard(cur)
        failed_at[cur] = depth
        return False

    if go(s, max_depth):
        return _materialize(s, found)
    return None


def prove_with_required(s: Structure, system: System, required: RuleId) -> Optional[Proof]:
    """A proof of `s` in `system` containing at least one `required` step;
    only for non-growing systems (the flagged state space is still finite)."""
    if not _decidable_up(system):
        raise ValueError("required-rule search needs a non-growing system")
    memo: dict = {}

    def go(cur: Structure, used: bool) -> bool:
        key = (cur, used)
        got = memo.get(key)
        if got is _IN_PROGRESS:
            return False
        if got is not None:
            return got is not False
        if cur is UNIT and used:
            memo[key] = make_instance(RuleId.O_DOWN)
            return True
        memo[key] = _IN_PROGRESS
        for inst in premisses(cur, system):
            if go(inst.premiss, used or inst.rule is required):
                memo[key] = inst
                return True
        memo[key] = False
        return False

    if not go(s, False):
        return None
    stack: list = []
    cur, used = s, False
    while True:
        inst = memo[(cur, used)]
        stack.append(inst)
        if inst.rule is RuleId.O_DOWN:
            break
        cur = inst.premiss
        used = used or inst.rule is required
    stack.reverse()
    return Proof(s, tuple(stack))


def forward_closure(
    system: System,
    alphabet: Sequence[str],
    max_size: int,
    start: Structure = UNIT,
) -> dict:
    """All structures derivable downward from `start` with every
    intermediate within `max_size` occurrences: exactly the provable
    structures of that size for systems whose rules never shrink going
    down.  Maps each reached structure to its predecessor instance."""
    table: dict = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for inst in conclusions(cur, system, alphabet=alphabet, max_size=max_size):
            nxt = inst.conclusion
            if nxt.size > max_size or nxt in table:
                continue
            table[nxt] = inst
            queue.append(nxt)
    return table


def proof_from_closure(s: Structure, table: dict) -> Proof:
    chain: list = []
    cur = s
    while True:
        inst = table[cur]
        if inst is None:
            break
        chain.append(inst)
        cur = inst.premiss
    chain.append(make_instance(RuleId.O_DOWN))
    chain.reverse()
    return Proof(s, tuple(chain))


# ---------------------------------------------------------------------------
# Derivability


@dataclass(frozen=True)
class DeriveOutcome:
    derivation: Optional[Derivation]
    decisive: bool

    def __bool__(self) -> bool:
        return self.derivation is not None


def derivable(
    top: Structure,
    bottom: Structure,
    system: System,
    config: Optional[SearchConfig] = None,
) -> DeriveOutcome:
    """Search for a derivation with premiss `top` and conclusion `bottom`.

    For systems of occurrence-preserving-or-shrinking rules the search is a
    total decision; systems with growing rules need a depth bound and an
    unsuccessful bounded search is not decisive.
    """
    config = config or SearchConfig()
    growing = not (system.rules <= _NON_GROWING)
    if growing and config.derivability_depth is None:
        raise DepthBoundRequired(
            f"system {system.name} can grow premisses; set derivability_depth"
        )
    if top is bottom:
        return DeriveOutcome(identity_derivation(bottom), True)
    alphabet = config.alphabet
    if alphabet is None:
        alphabet = sorted({a.name for a in occurrences(top)} | {a.name for a in occurrences(bottom)})
    max_size = config.max_size
    if max_size is None:
        max_size = max(top.size, bottom.size) + (config.derivability_depth or 0) * 2
    depth = config.derivability_depth
    parent: dict = {bottom: None}

    def expand(cur: Structure):
        if growing:
            return premisses(cur, system, alphabet=alphabet, max_size=max_size)
        return premisses(cur, system)

    # breadth-first so the found derivation is shortest; finite by energy
    frontier = deque([(bottom, 0)])
    while frontier:
        cur, d = frontier.popleft()
        if depth is not None and d >= depth:
            continue
        for inst in expand(cur):
            nxt = inst.premiss
            if nxt in parent:
                continue
            if nxt.size > max_size:
                continue
            parent[nxt] = inst
            if nxt is top:
                steps = []
                walk = nxt
                while parent[walk] is not None:
                    steps.append(parent[walk])
                    walk = parent[walk].conclusion
                return DeriveOutcome(Derivation(bottom, tuple(steps)), True)
            frontier.append((nxt, d + 1))
    return DeriveOutcome(None, not growing)


# ---------------------------------------------------------------------------
# Splitting


@dataclass(frozen=True)
class SplitWitness:
    kind: str  # "seq" | "copar"
    p1: Structure
    p2: Structure
    bridge: Derivation
    left_proof: Proof
    right_proof: Proof


def _reachable_up(p: Structure, system: System) -> dict:
    """All premisses reachable upward from `p`, with predecessor instances
    pointing back toward `p` (finite for non-growing systems)."""
    table: dict = {p: None}
    queue = deque([p])
    while queue:
        cur = queue.popleft()
        for inst in premisses(cur, system):
            nxt = inst.premiss
            if nxt not in table:
                table[nxt] = inst
                queue.append(nxt)
    return table


def _derivation_down(u: Structure, table: dict, conclusion: Structure) -> Derivation:
    steps = []
    cur = u
    while table[cur] is not None:
        inst = table[cur]
        steps.append(inst)
        cur = inst.conclusion
    return Derivation(conclusion, tuple(steps))


def split_find(r: Structure, t: Structure, p: Structure, kind: str) -> SplitWitness:
    """Witness for shallow splitting: given that [<r;t>, p] (resp.
    [(r,t), p]) is provable, find p1, p2 with a bridge derivation from
    <p1;p2> (resp. [p1,p2]) to p and proofs of [r,p1] and [t,p2].

    The candidates are exactly the structures reachable upward from `p`,
    explored in breadth-first order so the witness is deterministic; the
    splitting theorem guarantees the search succeeds.
    """
    if kind not in ("seq", "copar"):
        raise ValueError(f"kind must be 'seq' or 'copar', not {kind!r}")
    shape = seq((r, t)) if kind == "seq" else copar((r, t))
    goal = par((shape, p))
    if prove(goal, BV) is None:
        raise NotProvable(f"{goal!r} is not provable")
    table = _reachable_up(p, BV)
    order = sorted(table, key=structure_key)
    for u in order:
        if kind == "seq":
            splits = seq_splits(u)
        else:
            splits = [(UNIT, u), (u, UNIT)] + split_pairs(u, Par)
        for p1, p2 in splits:
            left = prove(par((r, p1)), BV)
            if left is None:
                continue
            right = prove(par((t, p2)), BV)
            if right is None:
                continue
            bridge = _derivation_down(u, table, p)
            return SplitWitness(kind, p1, p2, bridge, left, right)
    raise SplitSearchExhausted(f"no split of {p!r} for {shape!r}")


# ---------------------------------------------------------------------------
# Context reduction


def _strip_trivial(steps: Iterable[RuleInstance]) -> tuple:
    return tuple(i for i in steps if not i.trivial)


def _append(steps: list, inst: RuleInstance) -> None:
    if not inst.trivial:
        steps.append(inst)


def _pair_into_copar_proof(px: Proof, py: Proof, x: Structure, sx: Structure, y: Structure, sy: Structure) -> Proof:
    """From proofs of [x, sx] and [y, sy], a proof of [(x,y), sx, sy]."""
    target = par((copar((x, y)), sx, sy))
    steps: list = list(body(px).steps)
    if y is UNIT:
        steps.extend(in_context(body(py), par((x, sx, HOLE))).steps)
    elif x is UNIT:
        steps = list(body(py).steps)
        steps.extend(in_context(body(px), par((y, sy, HOLE))).steps)
    else:
        steps.extend(in_context(body(py), copar((par((x, sx)), HOLE))).steps)
        _append(steps, make_instance(RuleId.S, HOLE, R=x, T=sx, Rp=par((y, sy))))
        _append(steps, make_instance(RuleId.S, par((HOLE, sx)), R=y, T=sy, Rp=x))
    d = Derivation(target, tuple(steps))
    if d.premiss is not UNIT:
        raise AssertionError("copar pairing lost the unit")
    return proof_from_derivation(d)


def context_reduce(ctx: Structure, r: Structure):
    """Reduce a provable context to a par: a structure `u` with [r, u]
    provable and a transport building, for every x, a derivation from
    [x, u] to ctx{x}.

    Walks the hole path outside in: par layers join `u`, seq and copar
    layers are split off by the splitting theorem.
    """
    if prove(fill(ctx, r), BV) is None:
        raise NotProvable(f"{fill(ctx, r)!r} is not provable")
    return _reduce(ctx, r, UNIT)


def _reduce(ctx: Structure, r: Structure, p: Structure):
    # invariant: [ctx{r}, p] is provable
    if ctx is HOLE:
        def transport(x: Structure) -> Derivation:
            return identity_derivation(par((x, p)))

        return p, transport
    kids = ctx.children
    k = next(i for i, c in enumerate(kids) if c._holes)
    sub = kids[k]
    if isinstance(ctx, Par):
        siblings = par(kids[:k] + kids[k + 1 :])
        u, inner = _reduce(sub, r, par((siblings, p)))

        def transport(x: Structure, inner=inner) -> Derivation:
            return inner(x)

        return u, transport
    if isinstance(ctx, Copar):
        siblings = copar(kids[:k] + kids[k + 1 :])
        w = split_find(fill(sub, r), siblings, p, "copar")
        u, inner = _reduce(sub, r, w.p1)
        sibling_proof = w.right_proof

        def transport(x: Structure, inner=inner, w=w, siblings=siblings, sub=sub, kids=kids, k=k) -> Derivation:
            sx = fill(sub, x)
            d1 = inner(x)  # [x,u] => [sx, w.p1]
            start = d1.conclusion
            steps = list(d1.steps)
            steps.extend(in_context(body(sibling_proof), copar((start, HOLE))).steps)
            # ([sx,p1],[siblings,p2]) => [(sx,siblings), p1, p2]
            _append(steps, make_instance(RuleId.S, HOLE, R=sx, T=w.p1, Rp=par((siblings, w.p2))))
            _append(steps, make_instance(RuleId.S, par((HOLE, w.p1)), R=siblings, T=w.p2, Rp=sx))
            here = par((copar((sx, siblings)), w.p1, w.p2))
            bridge = in_context(w.bridge, par((copar((sx, siblings)), HOLE)))
            steps.extend(bridge.steps)
            out = par((fill(ctx, x), p))
            d = Derivation(out, tuple(steps))
            return d

        return u, transport
    # seq layer
    left, right = seq(kids[:k]), seq(kids[k + 1 :])
    if right is not UNIT:
        w_r = split_find(seq((left, fill(sub, r))), right, p, "seq")
        p_head, p_right = w_r.p1, w_r.p2
        right_proof = w_r.right_proof
        bridge_r = w_r.bridge
    else:
        w_r = None
        p_head, p_right = p, UNIT
        right_proof = unit_proof()
        bridge_r = identity_derivation(p)
    if left is not UNIT:
        w_l = split_find(left, fill(sub, r), p_head, "seq")
        p_left, p_mid = w_l.p1, w_l.p2
        left_proof = w_l.left_proof
        bridge_l = w_l.bridge
    else:
        w_l = None
        p_left, p_mid = UNIT, p_head
        left_proof = unit_proof()
        bridge_l = identity_derivation(p_head)
    u, inner = _reduce(sub, r, p_mid)

    def transport(x: Structure) -> Derivation:
        sx = fill(sub, x)
        d1 = inner(x)  # [x,u] => [sx, p_mid]
        steps = list(d1.steps)
        cur = d1.conclusion
        # extend with proofs of [right, p_right] and [left, p_left] in seq position
        if right is not UNIT:
            steps.extend(in_context(body(right_proof), seq((cur, HOLE))).steps)
            cur = seq((cur, par((right, p_right))))
        if left is not UNIT:
            steps.extend(in_context(body(left_proof), seq((HOLE, cur))).steps)
            cur = seq((par((left, p_left)), cur))
        # q-down steps gather the three seats into [<left;sx;right>, <p_left;p_mid;p_right>]
        if right is not UNIT:
            inner_ctx = seq((par((left, p_left)), HOLE)) if left is not UNIT else HOLE
            _append(
                steps,
                make_instance(
                    RuleId.Q_DOWN, inner_ctx, R=sx, T=p_mid, Rp=right, Tp=p_right
                ),
            )
        if left is not UNIT:
            _append(
                steps,
                make_instance(
                    RuleId.Q_DOWN,
                    HOLE,
                    R=left,
                    T=p_left,
                    Rp=seq((sx, right)),
                    Tp=seq((p_mid, p_right)),
                ),
            )
        # bridges: <p_left;p_mid;p_right> => <p_head;p_right> => p
        spine = seq((left, sx, right))
        if left is not UNIT and w_l is not None:
            steps.extend(
                in_context(
                    bridge_l, par((spine, seq((HOLE, p_right)) if right is not UNIT else HOLE))
                ).steps
            )
        if right is not UNIT and w_r is not None:
            steps.extend(in_context(bridge_r, par((spine, HOLE))).steps)
        out = par((fill(ctx, x), p))
        return Derivation(out, tuple(steps))

    return u, transport


# ---------------------------------------------------------------------------
# Admissibility of the up fragment, constructively


def eliminate_up(proof: Proof) -> Proof:
    """Rewrite a proof using coseq/atomic-cointeraction steps into a proof
    of the same conclusion in the basic system, removing the topmost up
    instance each round."""
    check = check_derivation(proof, BV.union(RuleId.Q_UP, RuleId.AI_UP, name="BV+up"), proof=True)
    if not check.ok:
        raise ValueError(f"malformed proof: {check.code} at step {check.step}: {check.message}")
    steps = list(proof.steps)
    while True:
        idx = next((i for i, inst in enumerate(steps) if inst.rule in _UP_RULES), None)
        if idx is None:
            result = Proof(proof.conclusion, tuple(steps))
            final = check_derivation(result, BV, proof=True)
            if not final.ok:
                raise AssertionError(f"up elimination produced an invalid proof: {final}")
            return result
        inst = steps[idx]
        if inst.trivial:
            del steps[idx]
            continue
        if inst.rule is RuleId.Q_UP:
            replacement = _eliminate_qup(inst)
        else:
            replacement = _eliminate_aiup(inst)
        steps = list(replacement.steps) + steps[idx + 1 :]


def _eliminate_qup(inst: RuleInstance) -> Proof:
    w = inst.bindings
    r, t, rp, tp = w["R"], w["T"], w["Rp"], w["Tp"]
    ctx = inst.context
    redex_prem = copar((seq((r, t)), seq((rp, tp))))
    u, transport = context_reduce(ctx, redex_prem)
    w0 = split_find(seq((r, t)), seq((rp, tp)), u, "copar")
    w1 = split_find(r, t, w0.p1, "seq")
    w2 = split_find(rp, tp, w0.p2, "seq")
    sr, st, srp, stp = w1.p1, w1.p2, w2.p1, w2.p2
    # [ (r,rp), sr, srp ] and [ (t,tp), st, stp ]
    pa = _pair_into_copar_proof(w1.left_proof, w2.left_proof, r, sr, rp, srp)
    pb = _pair_into_copar_proof(w1.right_proof, w2.right_proof, t, st, tp, stp)
    a_struct = par((copar((r, rp)), sr, srp))
    b_struct = par((copar((t, tp)), st, stp))
    steps: list = list(body(pa).steps)
    steps.extend(in_context(body(pb), seq((a_struct, HOLE))).steps)
    _append(
        steps,
        make_instance(
            RuleId.Q_DOWN,
            HOLE,
            R=copar((r, rp)),
            T=par((sr, srp)),
            Rp=copar((t, tp)),
            Tp=par((st, stp)),
        ),
    )
    x_struct = seq((copar((r, rp)), copar((t, tp))))
    _append(
        steps,
        make_instance(
            RuleId.Q_DOWN,
            par((x_struct, HOLE)),
            R=sr,
            T=srp,
            Rp=st,
            Tp=stp,
        ),
    )
    # [x, <sr;st>, <srp;stp>] => bridges => [x, p1, p2] => [x, u] => transport => ctx{x}
    steps.extend(in_context(w1.bridge, par((x_struct, HOLE, seq((srp, stp))))).steps)
    steps.extend(in_context(w2.bridge, par((x_struct, w0.p1, HOLE))).steps)
    steps.extend(in_context(w0.bridge, par((x_struct, HOLE))).steps)
    d_tr = transport(x_struct)
    steps.extend(d_tr.steps)
    out = Derivation(inst.conclusion, tuple(steps))
    return proof_from_derivation(out)


def _eliminate_aiup(inst: RuleInstance) -> Proof:
    a = inst.bindings["a"]
    ctx = inst.context
    u, transport = context_reduce(ctx, copar((a, negate(a))))
    w0 = split_find(a, negate(a), u, "copar")
    s1, s2 = w0.p1, w0.p2
    ctx1 = _interacting_context(s1, negate(a))
    ctx2 = _interacting_context(s2, a)
    p1 = prove(fill(ctx1, UNIT), BV)
    p2 = prove(fill(ctx2, UNIT), BV)
    if p1 is None or p2 is None:
        raise SplitSearchExhausted("no provable interaction context; contradicts admissibility")
    steps: list = list(body(p1).steps)
    steps.extend(in_context(body(p2), ctx1).steps)
    double = fill(ctx1, ctx2)
    _append(steps, make_instance(RuleId.AI_DOWN, double, a=a))
    ext1 = par_extrusion_local(ctx2, a, negate(a))
    steps.extend(in_context(ext1, ctx1).steps)
    ext2 = par_extrusion_local(ctx1, negate(a), fill(ctx2, a))
    steps.extend(ext2.steps)
    steps.extend(w0.bridge.steps)
    d_tr = transport(UNIT)
    steps.extend(d_tr.steps)
    out = Derivation(inst.conclusion, tuple(steps))
    return proof_from_derivation(out)


def par_extrusion_local(ctx: Structure, r: Structure, t: Structure) -> Derivation:
    from .rules import par_extrusion

    return par_extrusion(ctx, r, t)


def _interacting_context(s: Structure, target: Atom) -> Structure:
    """A context of one `target` occurrence in `s` whose unit fill stays
    provable; exists whenever [negate(target), s] is provable."""
    from .core import occurrence_context

    occ = occurrences(s)
    for i, a in enumerate(occ):
        if a is target:
            c = occurrence_context(s, i)
            if prove(fill(c, UNIT), BV) is not None:
                return c
    raise SplitSearchExhausted(f"no interacting occurrence of {target!r} in {s!r}")


@dataclass(frozen=True)
class ConsistencyResult:
    structure: Structure
    provable: bool
    negation_provable: bool

    @property
    def ok(self) -> bool:
        if self.structure is UNIT:
            return True
        return not (self.provable and self.negation_provable)

    def __bool__(self) -> bool:
        return self.ok


def consistency_check(s: Structure) -> ConsistencyResult:
    """A structure and its negation are never both provable (except the
    unit, which is exempt)."""
    return ConsistencyResult(s, prove(s, BV) is not None, prove(negate(s), BV) is not None)


def synthesize_up_proof(s: Structure, name: Optional[str] = None) -> Optional[Proof]:
    """A proof of `s` in the basic system extended with atomic
    cointeraction that actually uses a cointeraction step.

    Every proof of a non-unit structure opens with an atomic interaction
    on the unit; that first step is replaced by a six-step gadget proving
    the same interaction pair through a detour that creates and then cuts
    a copar pair.
    """
    base = prove(s, BV)
    if base is None or len(base.steps) < 2:
        return None
    first = base.steps[1]
    if first.rule is not RuleId.AI_DOWN or first.premiss is not UNIT:
        return None
    a = first.bindings["a"]
    pair = par((a, negate(a)))
    gadget_steps = [
        make_instance(RuleId.O_DOWN),
        make_instance(RuleId.AI_DOWN, HOLE, a=a),
        make_instance(RuleId.AI_DOWN, copar((pair, HOLE)), a=a),
        make_instance(RuleId.S, HOLE, R=a, T=negate(a), Rp=pair),
        make_instance(RuleId.S, par((HOLE, negate(a))), R=negate(a), T=a, Rp=a),
        make_instance(RuleId.AI_UP, par((HOLE, a, negate(a))), a=a),
    ]
    gadget = Proof(pair, tuple(gadget_steps))
    sys_up = BV.union(RuleId.AI_UP, name="BV+aiu")
    if not check_derivation(gadget, sys_up, proof=True).ok:
        raise AssertionError("up-detour gadget failed to check")
    steps = tuple(gadget.steps) + tuple(base.steps[2:])
    out = Proof(s, steps)
    res = check_derivation(out, sys_up, proof=True)
    if not res.ok:
        raise AssertionError(f"spliced up proof failed: {res}")
    return out
