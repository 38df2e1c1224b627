"""Order-preserving maps between finite posets, by class.

Map classes ("kinds") are hom, strict, strict_onto, emb and aut:

  hom          x <= y implies f(x) <= f(y)
  strict       additionally x < y implies f(x) < f(y)
  strict_onto  strict and surjective
  emb          f(x) <= f(y) iff x <= y (implies injective and strict)
  aut          embedding of a poset onto itself

Enumeration extends a partial assignment one domain index at a time,
trying codomain values in ascending order and pruning as soon as any
decided pair violates the class predicate, so maps stream out in
lexicographic order without post-filtering.  Counting walks the same
tree without materializing maps.  brute_force_count filters the full
value-tuple space through the defining predicate instead and serves as
an independent oracle.

Fibers, zigzag blocks and the quotient factorization: for a map f and
element x, gamma_block gives the zigzag component of x inside its fiber
f^-1(f(x)).  quotient collapses these blocks, orders them by the
transitive hull of "some member below some member", and factors f as a
quotient map followed by a strict inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import config
from ._bits import bits, mask_of
from .errors import (
    DomainMismatch,
    IndexOutOfRange,
    InternalInvariantViolation,
    InvalidParameter,
    NotAPartialOrder,
    OracleTooLarge,
)
from .poset import Poset, gamma, require_nonempty

KINDS = ("hom", "strict", "strict_onto", "emb", "aut")


# -- full-map predicates (the definitions; also the oracle's filter) ------

def tuple_is_hom(p: Poset, q: Poset, f: tuple[int, ...]) -> bool:
    return all(
        q.leq(f[i], f[j])
        for i in range(p.n)
        for j in bits(p.upo_mask(i))
    )


def tuple_is_strict(p: Poset, q: Poset, f: tuple[int, ...]) -> bool:
    return all(
        q.lt(f[i], f[j])
        for i in range(p.n)
        for j in bits(p.upo_mask(i))
    )


def tuple_is_onto(q: Poset, f: tuple[int, ...]) -> bool:
    return len(set(f)) == q.n


def tuple_is_embedding(p: Poset, q: Poset, f: tuple[int, ...]) -> bool:
    return all(
        q.leq(f[i], f[j]) == p.leq(i, j)
        for i in range(p.n)
        for j in range(p.n)
    )


class HomMap:
    """An arbitrary value map between two posets, classified on creation."""

    __slots__ = ("dom", "cod", "map", "is_hom", "is_strict", "is_onto",
                 "is_embedding", "is_automorphism", "_hash")

    def __init__(self, dom: Poset, cod: Poset, mapping):
        mapping = tuple(int(v) for v in mapping)
        if len(mapping) != dom.n:
            raise DomainMismatch(
                f"map has {len(mapping)} entries for a domain of size {dom.n}"
            )
        for v in mapping:
            if not (0 <= v < cod.n):
                raise IndexOutOfRange(f"value {v} outside codomain of size {cod.n}")
        self.dom = dom
        self.cod = cod
        self.map = mapping
        self.is_hom = tuple_is_hom(dom, cod, mapping)
        self.is_strict = self.is_hom and tuple_is_strict(dom, cod, mapping)
        self.is_onto = tuple_is_onto(cod, mapping)
        self.is_embedding = tuple_is_embedding(dom, cod, mapping)
        self.is_automorphism = dom == cod and self.is_embedding and self.is_onto
        self._hash = hash((dom, cod, mapping))

    @classmethod
    def from_labels(cls, dom: Poset, cod: Poset, assignment: dict) -> "HomMap":
        if set(assignment) != set(dom.labels):
            raise DomainMismatch("assignment keys must be exactly the domain labels")
        return cls(dom, cod, tuple(cod.index(assignment[lab]) for lab in dom.labels))

    def __call__(self, x):
        """Image of a domain index, or of a label as a label."""
        if isinstance(x, str):
            return self.cod.labels[self.map[self.dom.index(x)]]
        return self.map[x]

    def label_map(self) -> dict[str, str]:
        return {self.dom.labels[i]: self.cod.labels[v] for i, v in enumerate(self.map)}

    def after(self, inner: "HomMap") -> "HomMap":
        """Composite self o inner."""
        if inner.cod != self.dom:
            raise DomainMismatch("composition needs inner.cod == outer.dom")
        return HomMap(inner.dom, self.cod, tuple(self.map[v] for v in inner.map))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HomMap)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.map == other.map
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        arrows = ",".join(f"{a}>{b}" for a, b in self.label_map().items())
        return f"HomMap({arrows})"


# -- enumeration core ------------------------------------------------------

def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise InvalidParameter(f"kind must be one of {KINDS}, got {kind!r}")


def _solutions(kind: str, p: Poset, q: Poset) -> Iterator[list[int]]:
    """DFS over partial assignments; yields an internal list at each leaf.

    Values are tried in ascending order at each index, so complete maps
    appear in lexicographic tuple order.
    """
    n, m = p.n, q.n
    pup = p._up
    qup = q._up
    strictish = kind in ("strict", "strict_onto")
    iff = kind in ("emb", "aut")
    onto = kind in ("strict_onto", "aut")
    assign = [0] * n
    used = [0] * m

    def feasible(i: int, v: int) -> bool:
        for j in range(i):
            w = assign[j]
            fwd = (pup[j] >> i) & 1
            bwd = (pup[i] >> j) & 1
            wv = (qup[w] >> v) & 1
            vw = (qup[v] >> w) & 1
            if iff:
                if fwd != wv or bwd != vw:
                    return False
            else:
                if fwd and not wv:
                    return False
                if bwd and not vw:
                    return False
                if strictish and (fwd or bwd) and w == v:
                    return False
        return True

    missing = m

    def rec(i: int) -> Iterator[list[int]]:
        nonlocal missing
        if i == n:
            yield assign
            return
        for v in range(m):
            if onto and missing - (0 if used[v] else 1) > n - i - 1:
                continue
            if not feasible(i, v):
                continue
            assign[i] = v
            if not used[v]:
                missing -= 1
            used[v] += 1
            yield from rec(i + 1)
            used[v] -= 1
            if not used[v]:
                missing += 1
        return

    yield from rec(0)


def enumerate_maps(kind: str, p: Poset, q: Poset) -> Iterator[HomMap]:
    """Stream the maps of the given class in lexicographic order."""
    _check_kind(kind)
    require_nonempty(p, q)
    if kind == "aut" and p != q:
        raise DomainMismatch("aut enumeration needs identical domain and codomain")
    for sol in _solutions(kind, p, q):
        yield HomMap(p, q, tuple(sol))


def count_maps(kind: str, p: Poset, q: Poset) -> int:
    """Number of maps of the given class, without materializing them."""
    _check_kind(kind)
    require_nonempty(p, q)
    if kind == "aut" and p != q:
        raise DomainMismatch("aut enumeration needs identical domain and codomain")
    return sum(1 for _ in _solutions(kind, p, q))


def brute_force_count(kind: str, p: Poset, q: Poset, ceiling: int | None = None) -> int:
    """Oracle count: filter all |Q|^|P| value tuples through the definition."""
    _check_kind(kind)
    require_nonempty(p, q)
    if kind == "aut" and p != q:
        raise DomainMismatch("aut enumeration needs identical domain and codomain")
    if ceiling is None:
        ceiling = config.DEFAULT_ORACLE_CEILING
    total = q.n ** p.n
    if total > ceiling:
        raise OracleTooLarge(f"{total} raw maps exceed the oracle ceiling {ceiling}")

    def accept(f: tuple[int, ...]) -> bool:
        if kind == "hom":
            return tuple_is_hom(p, q, f)
        if kind == "strict":
            return tuple_is_hom(p, q, f) and tuple_is_strict(p, q, f)
        if kind == "strict_onto":
            return (
                tuple_is_hom(p, q, f)
                and tuple_is_strict(p, q, f)
                and tuple_is_onto(q, f)
            )
        if kind == "emb":
            return tuple_is_embedding(p, q, f)
        return tuple_is_embedding(p, q, f) and tuple_is_onto(q, f)

    from itertools import product as iproduct

    return sum(1 for f in iproduct(range(q.n), repeat=p.n) if accept(f))


# -- pointwise order -------------------------------------------------------

def pointwise_leq(f: HomMap, g: HomMap) -> bool:
    """f <= g pointwise; both maps must share domain and codomain."""
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainMismatch("pointwise comparison needs equal domains and codomains")
    return all(f.cod.leq(a, b) for a, b in zip(f.map, g.map))


# -- zigzag blocks and the quotient factorization --------------------------

@dataclass(frozen=True)
class GammaBlock:
    anchor: int
    members: frozenset[int]


def gamma_block(xi: HomMap, x: int) -> GammaBlock:
    """Zigzag component of x inside its own fiber."""
    if not xi.is_hom:
        raise InvalidParameter("gamma blocks are defined for homomorphisms")
    if not (0 <= x < xi.dom.n):
        raise IndexOutOfRange(f"element {x} outside domain")
    fiber = [y for y in range(xi.dom.n) if xi.map[y] == xi.map[x]]
    return GammaBlock(x, gamma(xi.dom, fiber, x))


@dataclass(frozen=True)
class QuotientFactorization:
    """Blocks, quotient poset, quotient map pi and strict inclusion iota."""

    blocks: tuple[frozenset[int], ...]
    quotient: Poset
    pi: HomMap
    iota: HomMap


def quotient(xi: HomMap) -> QuotientFactorization:
    """Collapse zigzag fiber blocks and factor xi = iota o pi."""
    if not xi.is_hom:
        raise InvalidParameter("quotient factorization is defined for homomorphisms")
    p = xi.dom
    blocks: list[frozenset[int]] = []
    block_of = [-1] * p.n
    for x in range(p.n):
        if block_of[x] >= 0:
            continue
        blk = gamma_block(xi, x).members
        idx = len(blocks)
        blocks.append(blk)
        for y in blk:
            block_of[y] = idx
    order = sorted(range(len(blocks)), key=lambda b: min(blocks[b]))
    blocks = [blocks[b] for b in order]
    for new, blk in enumerate(blocks):
        for y in blk:
            block_of[y] = new

    k = len(blocks)
    masks = [mask_of(b) for b in blocks]
    rows = []
    for a in range(k):
        row = 0
        for b in range(k):
            if any(p.up_mask(x) & masks[b] for x in blocks[a]):
                row |= 1 << b
        rows.append(row)
    for c in range(k):
        rc = rows[c]
        bit = 1 << c
        for a in range(k):
            if rows[a] & bit:
                rows[a] |= rc
    labels = tuple(
        "{" + ",".join(p.labels[i] for i in sorted(blk)) + "}" for blk in blocks
    )
    try:
        qposet = Poset(labels, rows)
    except NotAPartialOrder as exc:
        raise InternalInvariantViolation(
            f"quotient relation failed to be a partial order: {exc}"
        ) from exc

    pi = HomMap(p, qposet, tuple(block_of))
    iota = HomMap(qposet, xi.cod, tuple(xi.map[min(blk)] for blk in blocks))
    if not pi.is_hom:
        raise InternalInvariantViolation("quotient map is not a homomorphism")
    if not iota.is_strict:
        raise InternalInvariantViolation("inclusion of the quotient is not strict")
    if iota.after(pi).map != xi.map:
        raise InternalInvariantViolation("factorization does not recompose")
    return QuotientFactorization(tuple(blocks), qposet, pi, iota)


def gamma_class_count(xi: HomMap, t: Poset) -> int:
    """Number of homomorphisms sharing xi's block partition, valued in t.

    Equals the number of strict maps from the quotient into t.
    """
    require_nonempty(t)
    return count_maps("strict", quotient(xi).quotient, t)
