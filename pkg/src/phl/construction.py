"""Grafting a poset onto a convex piece of another.

Given P with a convex subset A, Q with a convex subset B, and an
isomorphism beta: P|A -> Q|B, the graft T lives on W + Y where
W = P minus A and Y is the carrier of Q.  Its order glues four parts:

    within W    the order of P;
    within Y    the order of Q;
    down pairs  y <= w  whenever some a in A has a <=_P w and
                y <=_Q beta(a);
    up pairs    w <= y  whenever some a in A has w <=_P a and
                beta(a) <=_Q y.

The result is always a partial order; the carriers of P and Q must be
disjoint (construct specs through from_labels to namespace them).  The
map psi sending A to B via beta and fixing W embeds P into P|A + T, and
P + Q compares below P|A + T under the strict-count order: every
connected class embeddable in P + Q embeds at least as often into
P|A + T, which graft_pipeline checks exactly.  When A is an antichain,
antichain_ev_extension builds the stronger vicinity-level witness: an
injective strict point map from the system of P + Q into the system of
P|A + T that fixes the points of Q and of P|A.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import config
from ._bits import bits, mask_of
from .canonical import is_isomorphic
from .errors import (
    CarriersNotDisjoint,
    EmptyPoset,
    InternalInvariantViolation,
    NotAntichain,
    NotAPartialOrder,
    NotConvex,
    NotIsomorphism,
    ProofObligationFailed,
    UnknownLabel,
)
from .evsystem import EVElement, EVMap, build_ev, is_strict_ev_hom
from .gscheme import WitnessReport, bounded_gle_check
from .homs import HomMap, count_maps
from .lovasz import display_name, embeddable_connected
from .poset import Poset, direct_sum, induced, is_convex


@dataclass(frozen=True)
class ConstructionSpec:
    """Ingredients of a graft: posets, convex index sets, the gluing map."""

    p: Poset
    q: Poset
    a: frozenset[int]
    b: frozenset[int]
    beta: tuple[tuple[int, int], ...]  # sorted (p-index, q-index) pairs

    @classmethod
    def from_indices(cls, p: Poset, q: Poset, a: Iterable[int], b: Iterable[int], beta: dict) -> "ConstructionSpec":
        return cls(p, q, frozenset(a), frozenset(b), tuple(sorted(beta.items())))

    @classmethod
    def from_labels(cls, p: Poset, q: Poset, a_labels, b_labels, beta_labels: dict) -> "ConstructionSpec":
        """Resolve labels and namespace colliding carriers.

        When p and q share labels, both are rebuilt with /0 and /1
        suffixes on the collisions (matching direct-sum namespacing)
        before the index sets are resolved.
        """
        clash = set(p.labels) & set(q.labels)
        if clash:
            summed = direct_sum(p, q)
            p_new = induced(summed, range(p.n))
            q_new = induced(summed, range(p.n, p.n + q.n))
            p_map = dict(zip(p.labels, p_new.labels))
            q_map = dict(zip(q.labels, q_new.labels))
            a_labels = [p_map.get(x, x) for x in a_labels]
            b_labels = [q_map.get(x, x) for x in b_labels]
            beta_labels = {
                p_map.get(k, k): q_map.get(v, v) for k, v in beta_labels.items()
            }
            p, q = p_new, q_new
        a = [p.index(x) for x in a_labels]
        b = [q.index(x) for x in b_labels]
        beta = {p.index(k): q.index(v) for k, v in beta_labels.items()}
        return cls.from_indices(p, q, a, b, beta)


@dataclass(frozen=True)
class RelationParts:
    """The four disjoint label-pair families assembling the graft order."""

    within_w: tuple[tuple[str, str], ...]
    within_y: tuple[tuple[str, str], ...]
    down: tuple[tuple[str, str], ...]
    up: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class GraftResult:
    t: Poset
    a_prime: Poset
    extended: Poset  # a_prime + t
    psi: HomMap
    parts: RelationParts


def _validate_spec(spec: ConstructionSpec) -> dict[int, int]:
    p, q = spec.p, spec.q
    if set(p.labels) & set(q.labels):
        raise CarriersNotDisjoint(
            "carriers share labels; build the spec with from_labels to namespace them"
        )
    a = sorted(spec.a)
    b = sorted(spec.b)
    for i in a:
        if not (0 <= i < p.n):
            raise UnknownLabel(f"index {i} outside the first carrier")
    for i in b:
        if not (0 <= i < q.n):
            raise UnknownLabel(f"index {i} outside the second carrier")
    if not is_convex(p, a):
        witness = _convexity_witness(p, a)
        raise NotConvex("A", witness)
    if not is_convex(q, b):
        witness = _convexity_witness(q, b)
        raise NotConvex("B", witness)
    beta = dict(spec.beta)
    if sorted(beta) != a or sorted(set(beta.values())) != b or len(beta) != len(spec.a):
        raise NotIsomorphism("beta must be a bijection from A onto B")
    for x in a:
        for y in a:
            if p.leq(x, y) != q.leq(beta[x], beta[y]):
                raise NotIsomorphism(
                    f"beta does not preserve order at ({p.labels[x]}, {p.labels[y]})"
                )
    return beta


def _convexity_witness(p: Poset, subset) -> tuple[str, str, str]:
    smask = mask_of(subset)
    for x in subset:
        for y in subset:
            if p.leq(x, y):
                gap = (p.up_mask(x) & p.down_mask(y)) & ~smask
                if gap:
                    z = next(bits(gap))
                    return (p.labels[x], p.labels[z], p.labels[y])
    raise InternalInvariantViolation("no convexity witness in a non-convex subset")


def build_graft(spec: ConstructionSpec) -> GraftResult:
    """Assemble the graft T, its inclusion data and the embedding psi."""
    beta = _validate_spec(spec)
    p, q = spec.p, spec.q
    w_idx = [i for i in range(p.n) if i not in spec.a]
    labels = tuple(p.labels[i] for i in w_idx) + q.labels
    nw = len(w_idx)
    n = nw + q.n
    wpos = {orig: k for k, orig in enumerate(w_idx)}

    within_w = []
    within_y = []
    down_pairs = []
    up_pairs = []
    rows = [0] * n
    for k, i in enumerate(w_idx):
        for k2, i2 in enumerate(w_idx):
            if p.leq(i, i2):
                rows[k] |= 1 << k2
                within_w.append((labels[k], labels[k2]))
    for j in range(q.n):
        for j2 in bits(q.up_mask(j)):
            rows[nw + j] |= 1 << (nw + j2)
            within_y.append((labels[nw + j], labels[nw + j2]))
    for j in range(q.n):
        for k, w in enumerate(w_idx):
            if any(p.leq(a2, w) and q.leq(j, beta[a2]) for a2 in spec.a):
                rows[nw + j] |= 1 << k
                down_pairs.append((labels[nw + j], labels[k]))
            if any(p.leq(w, a2) and q.leq(beta[a2], j) for a2 in spec.a):
                rows[k] |= 1 << (nw + j)
                up_pairs.append((labels[k], labels[nw + j]))

    try:
        t = Poset(labels, rows)
    except NotAPartialOrder as exc:
        raise InternalInvariantViolation(
            f"graft relation failed to be a partial order: {exc}"
        ) from exc

    parts = RelationParts(
        tuple(within_w), tuple(within_y), tuple(down_pairs), tuple(up_pairs)
    )
    seen_pairs = set(parts.within_w)
    for fam in (parts.within_y, parts.down, parts.up):
        for pair in fam:
            if pair in seen_pairs:
                raise InternalInvariantViolation("relation parts overlap")
            seen_pairs.add(pair)

    a_prime = induced(p, spec.a)
    extended = direct_sum(a_prime, t)
    if extended.labels != a_prime.labels + t.labels:
        raise InternalInvariantViolation("graft carriers were not disjoint")
    a_sorted = sorted(spec.a)
    apos = {orig: k for k, orig in enumerate(a_sorted)}
    na = len(a_sorted)
    tpos_of_q = {j: na + nw + j for j in range(q.n)}
    psi_map = []
    for i in range(p.n):
        if i in spec.a:
            psi_map.append(tpos_of_q[beta[i]])
        else:
            psi_map.append(na + wpos[i])
    psi = HomMap(p, extended, tuple(psi_map))
    if not psi.is_embedding:
        raise InternalInvariantViolation("psi is not an embedding")

    # the graft restricted to W plus the image of A is a copy of p,
    # and restricted to Y it is exactly q
    w_b = list(range(nw)) + [nw + j for j in sorted(beta.values())]
    if not is_isomorphic(induced(t, w_b), p):
        raise InternalInvariantViolation("graft does not restrict to a copy of P")
    if induced(t, range(nw, n)) != q:
        raise InternalInvariantViolation("graft does not restrict to Q")
    return GraftResult(t, a_prime, extended, psi, parts)


@dataclass(frozen=True)
class EmbRow:
    name: str
    count_sum: int
    count_graft: int


@dataclass(frozen=True)
class GraftReport:
    ok: bool
    result: GraftResult
    rows: tuple[EmbRow, ...]
    scan: WitnessReport | None


def graft_pipeline(spec: ConstructionSpec, n_max: int | None = None) -> GraftReport:
    """Build the graft and check the exact comparison obligation.

    For every connected class E embeddable in P + Q the embedding count
    into P|A + T must be at least the count into P + Q; this is exact
    and certifies the comparison on its own.  ProofObligationFailed
    reports the violating class otherwise (no such class exists -- a
    failure here means a bug).  The redundant bounded scan runs at
    n_max, defaulting to the package scan bound; pass 0 to skip it.
    """
    if n_max is None:
        n_max = config.DEFAULT_SCAN_BOUND
    result = build_graft(spec)
    summed = direct_sum(spec.p, spec.q)
    extended = result.extended
    rows = []
    for rep in embeddable_connected(summed).posets:
        c_sum = count_maps("emb", rep, summed)
        c_graft = count_maps("emb", rep, extended)
        rows.append(EmbRow(display_name(rep), c_sum, c_graft))
        if c_sum > c_graft:
            raise ProofObligationFailed(
                f"class {rows[-1].name} embeds {c_sum} times into the sum but "
                f"{c_graft} into the graft",
                witness=rep,
            )
    scan = None
    if n_max:
        scan = bounded_gle_check(summed, extended, n_max)
        if not scan.holds:
            raise InternalInvariantViolation(
                "exact obligation passed but the redundant scan found a counterexample"
            )
    return GraftReport(True, result, tuple(rows), scan)


@dataclass(frozen=True)
class ExtensionReport:
    ok: bool
    source_size: int
    target_size: int
    note: str


def antichain_ev_extension(spec: ConstructionSpec) -> tuple[EVMap, ExtensionReport]:
    """Vicinity-level witness for an antichain gluing set.

    Builds the point map from the system of P + Q to the system of
    P|A + T that is the identity on points anchored in Q or equal to a
    bare point of P|A, and the psi-pushforward elsewhere; verifies it is
    injective and strict.  Requires A nonempty (EmptyPoset) and an
    antichain (NotAntichain).
    """
    if not spec.a:
        raise EmptyPoset("the gluing set is empty, so there is no system to extend")
    if not spec.p.is_antichain(spec.a):
        raise NotAntichain("the gluing set must be an antichain")
    result = build_graft(spec)
    p, q = spec.p, spec.q
    summed = direct_sum(p, q)
    extended = result.extended
    source = build_ev(summed)
    target = build_ev(extended)

    # positions: summed = p (0..p.n-1) then q; extended = a_prime then t,
    # t = w then y
    ext_index = {lab: i for i, lab in enumerate(extended.labels)}
    psi_ext = list(result.psi.map)
    q_to_ext = [ext_index[lab] for lab in q.labels]
    aprime_to_ext = [ext_index[lab] for lab in result.a_prime.labels]
    a_sorted = sorted(spec.a)

    mapping = []
    for e in source.elements:
        if e.anchor >= p.n:
            # anchored in Q: identical point, translated to the new carrier
            anc = q_to_ext[e.anchor - p.n]
            d = mask_of(q_to_ext[i - p.n] for i in bits(e.down))
            u = mask_of(q_to_ext[i - p.n] for i in bits(e.up))
        elif e.anchor in spec.a and e.down == 0 and e.up == 0:
            # a bare point of P|A: kept on the a_prime copy
            anc = aprime_to_ext[a_sorted.index(e.anchor)]
            d = u = 0
        else:
            anc = psi_ext[e.anchor]
            d = mask_of(psi_ext[i] for i in bits(e.down))
            u = mask_of(psi_ext[i] for i in bits(e.up))
        img = EVElement(anc, d, u)
        if img not in target:
            raise InternalInvariantViolation(
                f"extension leaves the target system at {e.render(summed)}"
            )
        mapping.append(target.position(img))

    ev_map = EVMap(source, target, tuple(mapping))
    if len(set(mapping)) != len(mapping):
        raise InternalInvariantViolation("extension is not injective")
    if not is_strict_ev_hom(ev_map):
        raise InternalInvariantViolation("extension is not strict")
    report = ExtensionReport(
        True,
        len(source),
        len(target),
        "antichain gluing set: the injective strict system extension "
        "certifies the scheme-level comparison, beyond the count route",
    )
    return ev_map, report
