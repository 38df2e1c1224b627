"""Factoring strict-map counts through embedded connected classes.

For connected P, every strict map P -> T factors uniquely as a strict
surjection onto its (connected) image followed by an embedding, so

    #strict(P, T) = sum over classes Q embeddable in T of
                    #strict_onto(P, Q) / #aut(Q) * #emb(Q, T).

The automorphism group of Q acts freely on strict surjections onto Q,
making the quotient integral.  factor_matrices assembles the three
count matrices over a shared row universe and checks the identity
column by column; verify_factorization checks a single (P, T) pair.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._bits import bits
from .canonical import canonical_form, canonicalize, is_isomorphic
from .errors import (
    InternalInvariantViolation,
    InvalidParameter,
    NonIntegralQuotient,
    UniverseMismatch,
)
from .homs import count_maps
from .poset import Poset, catalog, gamma, induced, is_connected, require_nonempty


class IsoClassTable:
    """Isomorphism classes keyed by canonical code, ordered (size, code)."""

    __slots__ = ("codes", "posets", "_pos")

    def __init__(self, posets):
        entries: dict[bytes, Poset] = {}
        for p in posets:
            code = canonical_form(p)
            if code not in entries:
                entries[code] = p
        ordered = sorted(entries, key=lambda c: (c[0], c))
        self.codes = tuple(ordered)
        self.posets = tuple(entries[c] for c in ordered)
        self._pos = {c: i for i, c in enumerate(ordered)}

    def __len__(self) -> int:
        return len(self.codes)

    def position(self, p: Poset):
        """Position of p's class, or None when absent."""
        return self._pos.get(canonical_form(p))

    def __contains__(self, p: Poset) -> bool:
        return self.position(p) is not None


def embeddable_connected(t: Poset) -> IsoClassTable:
    """Classes of connected posets embeddable into t.

    Embeddings are exactly isomorphisms onto induced subposets, so the
    table collects the connected induced subposets of t up to
    isomorphism, as canonical representatives.
    """
    require_nonempty(t)
    reps: dict[bytes, Poset] = {}
    for m in range(1, 1 << t.n):
        members = tuple(bits(m))
        if gamma(t, members, members[0]) != frozenset(members):
            continue
        sub = induced(t, members)
        code = canonical_form(sub)
        if code not in reps:
            reps[code] = canonicalize(sub)
    return IsoClassTable(reps.values())


def count_strict_onto_orbits(p: Poset, q: Poset) -> int:
    """Strict surjections p -> q counted up to automorphisms of q."""
    require_nonempty(p, q)
    onto = count_maps("strict_onto", p, q)
    auts = count_maps("aut", q, q)
    if onto % auts:
        raise NonIntegralQuotient(
            f"{onto} strict surjections not divisible by {auts} automorphisms"
        )
    return onto // auts


def image_class_count(qclass: Poset, p: Poset, t: Poset) -> int:
    """Strict maps p -> t whose image is an induced copy of qclass."""
    require_nonempty(qclass, p, t)
    if not is_connected(qclass):
        raise InvalidParameter("image class representative must be connected")
    return count_strict_onto_orbits(p, qclass) * count_maps("emb", qclass, t)


@dataclass(frozen=True)
class CountMatrix:
    row_names: tuple[str, ...]
    col_names: tuple[str, ...]
    cells: tuple[tuple[int, ...], ...]

    def to_csv(self) -> str:
        lines = ["," + ",".join(self.col_names)]
        for name, row in zip(self.row_names, self.cells):
            lines.append(name + "," + ",".join(str(v) for v in row))
        return "\n".join(lines) + "\n"

    def to_pretty(self) -> str:
        """Aligned table with zero entries left blank."""
        cols = [""] + list(self.col_names)
        body = [
            [name] + [str(v) if v else "" for v in row]
            for name, row in zip(self.row_names, self.cells)
        ]
        widths = [max(len(r[c]) for r in [cols] + body) for c in range(len(cols))]
        out = []
        for r in [cols] + body:
            out.append("  ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip())
        return "\n".join(out) + "\n"


@dataclass(frozen=True)
class FactorMatrices:
    """Strict-surjection-orbit, embedding and strict-map count matrices."""

    universe: tuple[Poset, ...]
    targets: tuple[Poset, ...]
    sro: CountMatrix
    emb: CountMatrix
    strict: CountMatrix


_NAMED_CLASSES: list[tuple[str, Poset]] = []


def _named_classes() -> list[tuple[str, Poset]]:
    if not _NAMED_CLASSES:
        for k in range(1, 5):
            _NAMED_CLASSES.append((f"A{k}", catalog("A", k)))
        for k in range(2, 5):
            _NAMED_CLASSES.append((f"C{k}", catalog("C", k)))
        for k in range(3, 5):
            _NAMED_CLASSES.append((f"V{k}", catalog("V", k)))
            _NAMED_CLASSES.append((f"Lambda{k}", catalog("Lambda", k)))
        for name in ("N", "W", "N2"):
            _NAMED_CLASSES.append((name, catalog(name)))
    return _NAMED_CLASSES


def display_name(p: Poset) -> str:
    """Catalog name of p's class when it has one, else a code-based tag."""
    for name, rep in _named_classes():
        if rep.n == p.n and is_isomorphic(rep, p):
            return name
    return f"P{p.n}#{canonical_form(p)[1:3].hex()}"


def factor_matrices(
    row_universe,
    targets,
    row_names=None,
    target_names=None,
) -> FactorMatrices:
    """The three count matrices over a shared row universe.

    The universe must consist of pairwise non-isomorphic connected
    posets and cover exactly the classes embeddable into at least one
    target; UniverseMismatch reports any defect.  The factorization
    identity strict = sro . emb is checked for every column.
    """
    universe = tuple(row_universe)
    targets = tuple(targets)
    if not universe or not targets:
        raise InvalidParameter("universe and targets must be nonempty")
    codes = [canonical_form(p) for p in universe]
    if len(set(codes)) != len(codes):
        raise UniverseMismatch("universe repeats an isomorphism class")
    for p in universe:
        if not is_connected(p):
            raise UniverseMismatch("universe members must be connected")
    needed: dict[bytes, Poset] = {}
    for t in targets:
        table = embeddable_connected(t)
        for code, rep in zip(table.codes, table.posets):
            needed.setdefault(code, rep)
    have = set(codes)
    if have != set(needed):
        missing = sorted(display_name(needed[c]) for c in set(needed) - have)
        extra_codes = have - set(needed)
        extra = sorted(
            display_name(p) for p, c in zip(universe, codes) if c in extra_codes
        )
        parts = []
        if missing:
            parts.append(f"missing classes: {', '.join(missing)}")
        if extra:
            parts.append(f"classes embeddable in no target: {', '.join(extra)}")
        raise UniverseMismatch("; ".join(parts))

    if row_names is None:
        row_names = tuple(display_name(p) for p in universe)
    else:
        row_names = tuple(row_names)
    if target_names is None:
        target_names = tuple(display_name(t) for t in targets)
    else:
        target_names = tuple(target_names)

    sro_cells = tuple(
        tuple(count_strict_onto_orbits(p, q) for q in universe) for p in universe
    )
    emb_cells = tuple(
        tuple(count_maps("emb", p, t) for t in targets) for p in universe
    )
    strict_cells = tuple(
        tuple(count_maps("strict", p, t) for t in targets) for p in universe
    )
    for i in range(len(universe)):
        for tj in range(len(targets)):
            total = sum(
                sro_cells[i][k] * emb_cells[k][tj] for k in range(len(universe))
            )
            if total != strict_cells[i][tj]:
                raise InternalInvariantViolation(
                    f"factorization identity fails at row {row_names[i]}, "
                    f"column {target_names[tj]}: {total} != {strict_cells[i][tj]}"
                )
    uni_names = row_names
    return FactorMatrices(
        universe=universe,
        targets=targets,
        sro=CountMatrix(row_names, uni_names, sro_cells),
        emb=CountMatrix(row_names, target_names, emb_cells),
        strict=CountMatrix(row_names, target_names, strict_cells),
    )


@dataclass(frozen=True)
class FactorizationTerm:
    name: str
    orbit_count: int
    emb_count: int

    @property
    def product(self) -> int:
        return self.orbit_count * self.emb_count


@dataclass(frozen=True)
class FactorizationReport:
    ok: bool
    strict_total: int
    factored_total: int
    terms: tuple[FactorizationTerm, ...]


def verify_factorization(p: Poset, t: Poset) -> FactorizationReport:
    """Check #strict(p, t) against the per-class factorization; p connected."""
    require_nonempty(p, t)
    if not is_connected(p):
        raise InvalidParameter("factorization requires a connected domain")
    table = embeddable_connected(t)
    terms = []
    total = 0
    for rep in table.posets:
        term = FactorizationTerm(
            display_name(rep),
            count_strict_onto_orbits(p, rep),
            count_maps("emb", rep, t),
        )
        terms.append(term)
        total += term.product
    strict_total = count_maps("strict", p, t)
    if total != strict_total:
        raise InternalInvariantViolation(
            f"factorization identity fails: {total} != {strict_total}"
        )
    return FactorizationReport(True, strict_total, total, tuple(terms))
