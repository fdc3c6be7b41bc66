"""Lattice combinatorics of Del Pezzo surfaces.

Vectors of the rank r+1 lattice of signature (1, r) are integer tuples
(a, b_1, ..., b_r) standing for a*l - sum_i b_i*e_i, so the pairing is
a*a' - sum_i b_i*b_i', the anticanonical class is (3, 1, ..., 1), and the
blowup classes e_i have a single entry -1.  Everything is exact integer
arithmetic: bounded enumeration of roots and exceptional vectors, Weyl
orbits by reflection closure, homological structures on one- and
two-component anticanonical curves, the marking that survives the
double-conic degeneration at degree 2, and the theta-characteristic
torsor count.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from ._linalg import invert, smith_normal_form, solve
from .graphs import DiagramType, classify, coxeter_graph

__all__ = [
    "LatticeError",
    "PicardVector",
    "RootSubsystem",
    "StructureReport",
    "TwoComponentClass",
    "MarkingReport",
    "ThetaReport",
    "line_class",
    "point_class",
    "anticanonical_class",
    "vec_add",
    "vec_sub",
    "vec_neg",
    "pairing",
    "root_basis",
    "weight_vector",
    "reflect",
    "roots",
    "exceptional_vectors",
    "exceptional_difference_roots",
    "subsystem_type",
    "check_dp_structure",
    "classify_two_component_structures",
    "limit_marking",
    "limit_marking_check",
    "theta_torsor_check",
]

PicardVector = tuple[int, ...]


class LatticeError(ValueError):
    """Raised for rank mismatches and inputs outside the lattice contracts."""


def _rank_of(v) -> int:
    r = len(v) - 1
    if not 3 <= r <= 8:
        raise LatticeError(f"rank {r} is outside 3..8")
    return r


def line_class(r: int) -> PicardVector:
    """The hyperplane class l."""
    _check_rank(r)
    return (1,) + (0,) * r


def point_class(r: int, i: int) -> PicardVector:
    """The blowup class e_i, 1 <= i <= r."""
    _check_rank(r)
    if not 1 <= i <= r:
        raise LatticeError(f"point index {i} is outside 1..{r}")
    return tuple(-1 if j == i else 0 for j in range(r + 1))


def anticanonical_class(r: int) -> PicardVector:
    """The class k = 3l - e_1 - ... - e_r."""
    _check_rank(r)
    return (3,) + (1,) * r


def _check_rank(r: int) -> None:
    if not 3 <= r <= 8:
        raise LatticeError(f"rank {r} is outside 3..8")


def vec_add(u: PicardVector, v: PicardVector) -> PicardVector:
    if len(u) != len(v):
        raise LatticeError("rank mismatch")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: PicardVector, v: PicardVector) -> PicardVector:
    if len(u) != len(v):
        raise LatticeError("rank mismatch")
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(v: PicardVector) -> PicardVector:
    return tuple(-a for a in v)


def pairing(u: PicardVector, v: PicardVector) -> int:
    """The signature (1, r) form: u.v = a*a' - sum_i b_i*b_i'."""
    if len(u) != len(v):
        raise LatticeError("rank mismatch")
    return u[0] * v[0] - sum(a * b for a, b in zip(u[1:], v[1:]))


def root_basis(r: int) -> tuple[PicardVector, ...]:
    """The root basis l-e_1-e_2-e_3, e_1-e_2, ..., e_{r-1}-e_r."""
    _check_rank(r)
    alpha = [(1, 1, 1, 1) + (0,) * (r - 3)]
    for i in range(2, r + 1):
        v = [0] * (r + 1)
        v[i - 1] = -1
        v[i] = 1
        alpha.append(tuple(v))
    return tuple(alpha)


def weight_vector(v: PicardVector) -> tuple[int, ...]:
    """The image of v in the dual of the root lattice: (v.alpha_i)_i."""
    return tuple(pairing(v, a) for a in root_basis(_rank_of(v)))


def reflect(v: PicardVector, alpha: PicardVector) -> PicardVector:
    """Orthogonal reflection of v in a norm -2 vector alpha."""
    if pairing(alpha, alpha) != -2:
        raise LatticeError("reflections are attached to norm -2 vectors")
    c = pairing(v, alpha)
    return tuple(x + c * a for x, a in zip(v, alpha))


# ---------------------------------------------------------------------------
# Bounded enumeration

# For v with v.k = kdeg and v.v = norm the e-part obeys sum(b) = 3a - kdeg
# and sum(b^2) = a^2 - norm, so Cauchy-Schwarz bounds a by the real roots of
# (9-r)a^2 - 6*kdeg*a + (kdeg^2 + r*norm) <= 0; negative definiteness of the
# k-complement (r <= 8) makes that interval finite.


def _b_parts(count: int, total: int, square_total: int):
    if count == 0:
        if total == 0 and square_total == 0:
            yield ()
        return
    if square_total < 0 or total * total > count * square_total:
        return
    bound = isqrt(square_total)
    for b in range(-bound, bound + 1):
        for rest in _b_parts(count - 1, total - b, square_total - b * b):
            yield (b,) + rest


def _bounded_search(r: int, kdeg: int, norm: int) -> tuple[PicardVector, ...]:
    disc = 9 * kdeg * kdeg - (9 - r) * (kdeg * kdeg + r * norm)
    if disc < 0:
        return ()
    spread = isqrt(disc)
    lo = -((spread - 3 * kdeg) // (9 - r))
    hi = (3 * kdeg + spread) // (9 - r)
    found = []
    for a in range(lo, hi + 1):
        for bs in _b_parts(r, 3 * a - kdeg, a * a - norm):
            found.append((a,) + bs)
    return tuple(sorted(found))


@lru_cache(maxsize=None)
def exceptional_vectors(r: int) -> tuple[PicardVector, ...]:
    """All v with v.v = -1 and v.k = 1, by exhaustive bounded search."""
    _check_rank(r)
    return _bounded_search(r, 1, -1)


@lru_cache(maxsize=None)
def _root_vectors(r: int) -> tuple[PicardVector, ...]:
    _check_rank(r)
    return _bounded_search(r, 0, -2)


@dataclass(frozen=True)
class RootSubsystem:
    """A negation-closed set of norm -2 vectors with its catalogue type."""

    vectors: tuple[PicardVector, ...]
    dtype: DiagramType


@lru_cache(maxsize=None)
def roots(r: int) -> RootSubsystem:
    """The root system of the k-complement, with its recognized type."""
    vectors = _root_vectors(r)
    return RootSubsystem(vectors, subsystem_type(vectors))


def exceptional_difference_roots(r: int) -> tuple[PicardVector, ...]:
    """Differences of mutually perpendicular exceptional vectors."""
    exc = exceptional_vectors(r)
    out = set()
    for e in exc:
        for f in exc:
            if e != f and pairing(e, f) == 0:
                out.add(vec_sub(e, f))
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# Type recognition


def subsystem_type(vectors) -> DiagramType:
    """Catalogue type of a root subsystem.

    Positive roots are chosen by lexicographic sign, the indecomposable
    ones form the simple system, and reflection closure of the simples must
    reproduce the input exactly.  Reducible types list their components by
    decreasing rank.
    """
    vs = {tuple(int(x) for x in v) for v in vectors}
    if not vs:
        raise LatticeError("an empty set has no subsystem type")
    if len({len(v) for v in vs}) != 1:
        raise LatticeError("rank mismatch")
    zero = (0,) * len(next(iter(vs)))
    for v in vs:
        if pairing(v, v) != -2:
            raise LatticeError(f"{v} does not have norm -2")
        if vec_neg(v) not in vs:
            raise LatticeError(f"the set is not closed under negation at {v}")
    positives = {v for v in vs if v > zero}
    simples = sorted(
        v
        for v in positives
        if not any(w != v and vec_sub(v, w) in positives for w in positives)
    )
    edges = []
    for i in range(len(simples)):
        for j in range(i + 1, len(simples)):
            p = pairing(simples[i], simples[j])
            if p == 1:
                edges.append((i, j, 3))
            elif p != 0:
                raise LatticeError("simple-root extraction failed; not a root system")
    closure = set(simples) | {vec_neg(v) for v in simples}
    queue = list(closure)
    while queue:
        v = queue.pop()
        for alpha in simples:
            w = reflect(v, alpha)
            if w not in closure:
                if w not in vs:
                    raise LatticeError(
                        "reflection closure escapes the set; not a root system"
                    )
                closure.add(w)
                queue.append(w)
    if closure != vs:
        raise LatticeError("the set is larger than the span of its simple roots")
    dtype = classify(coxeter_graph([str(i) for i in range(len(simples))], edges))
    if dtype.kind == "reducible":
        parts = sorted(dtype.components, key=lambda t: (-t.rank, t.family))
        return DiagramType.reducible(parts)
    return dtype


# ---------------------------------------------------------------------------
# Homological structures


@dataclass(frozen=True)
class StructureReport:
    """Outcome of a structure check, with one line per violated condition."""

    ok: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def check_dp_structure(components, intersections=None) -> StructureReport:
    """Check the three conditions on component classes of a degree 9-r curve.

    components are the classes of the irreducible components; intersections
    is the symmetric component intersection matrix of the abstract curve,
    required as soon as there is more than one component.  The conditions:
    (i) the classes sum to k, (ii) distinct components pair the way they
    meet on the curve, (iii) no component pairs negatively with an
    exceptional vector it does not equal.
    """
    comps = [tuple(int(x) for x in c) for c in components]
    if not comps:
        raise LatticeError("at least one component class is required")
    if len({len(c) for c in comps}) != 1:
        raise LatticeError("rank mismatch between component classes")
    r = _rank_of(comps[0])
    if len(comps) > 1 and intersections is None:
        raise LatticeError("a component intersection matrix is required")
    violations = []
    total = comps[0]
    for c in comps[1:]:
        total = vec_add(total, c)
    k = anticanonical_class(r)
    if total != k:
        violations.append(f"(i) components sum to {total}, not {k}")
    if intersections is not None:
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                want = int(intersections[i][j])
                got = pairing(comps[i], comps[j])
                if got != want:
                    violations.append(
                        f"(ii) components {i} and {j} meet in {want} "
                        f"but their classes pair to {got}"
                    )
    for idx, c in enumerate(comps):
        for e in exceptional_vectors(r):
            if c != e and pairing(e, c) < 0:
                violations.append(
                    f"(iii) component {idx} pairs negatively with exceptional {e}"
                )
    return StructureReport(not violations, tuple(violations))


@dataclass(frozen=True)
class TwoComponentClass:
    """A Weyl orbit of two-component structures.

    representative is the pair (c, k-c) with c the component of dominant
    weight; weights are the images of the two components in the dual of the
    root lattice; kernel_type is the type of the roots orthogonal to both.
    """

    representative: tuple[PicardVector, PicardVector]
    weights: tuple[tuple[int, ...], tuple[int, ...]]
    kernel_type: DiagramType
    orbit_size: int


# Two smooth rational components meeting twice: the only reduced two-part
# anticanonical shapes.  The abstract intersection number is therefore 2.
_TWO_COMPONENT_MEETING = ((0, 2), (2, 0))


def classify_two_component_structures(d: int) -> tuple[TwoComponentClass, ...]:
    """Weyl orbits of two-component structures in degree d, for d in 2..5.

    Every valid first component is either some e_i or of the shape
    n*l - sum_{i in S} e_i with 0 <= n <= 3: condition (iii) against the
    e_i and the l-e_i-e_j forces the coefficients of both halves into
    {0, 1}.  That finite candidate set is filtered, closed into orbits
    under the simple reflections, and each orbit is reported through a
    dominant-weight component.  An orbit that is symmetric under swapping
    the two halves carries two dominant components; the one with the
    lexicographically smaller weight vector wins.
    """
    if d not in (2, 3, 4, 5):
        raise LatticeError(f"degree {d} is outside 2..5")
    r = 9 - d
    k = anticanonical_class(r)
    candidates = {point_class(r, i) for i in range(1, r + 1)}
    for n in range(4):
        for mask in range(1 << r):
            candidates.add(
                (n,) + tuple((mask >> i) & 1 for i in range(r))
            )
    pairs = set()
    for c in candidates:
        partner = vec_sub(k, c)
        if check_dp_structure((c, partner), _TWO_COMPONENT_MEETING):
            pairs.add(frozenset((c, partner)))
    basis = root_basis(r)
    classes = []
    remaining = set(pairs)
    while remaining:
        seed = min(remaining, key=sorted)
        orbit = {seed}
        queue = [seed]
        while queue:
            pair = queue.pop()
            a, b = sorted(pair)
            for alpha in basis:
                image = frozenset((reflect(a, alpha), reflect(b, alpha)))
                if image not in orbit:
                    if image not in pairs:
                        raise LatticeError(
                            "orbit closure left the classified set"
                        )
                    orbit.add(image)
                    queue.append(image)
        remaining -= orbit
        dominant = [
            c
            for pair in orbit
            for c in pair
            if all(x >= 0 for x in weight_vector(c))
        ]
        if not 1 <= len(dominant) <= 2:
            raise LatticeError("orbit lacks a dominant representative")
        c = min(dominant, key=weight_vector)
        w = weight_vector(c)
        kernel = subsystem_type(
            [a for a in _root_vectors(r) if pairing(a, c) == 0]
        )
        classes.append(
            TwoComponentClass(
                (c, vec_sub(k, c)),
                (w, tuple(-x for x in w)),
                kernel,
                len(orbit),
            )
        )
    return tuple(sorted(classes, key=lambda cl: cl.representative))


# ---------------------------------------------------------------------------
# The degree 2 degeneration marking


def limit_marking() -> tuple[tuple[int, tuple[int, int], PicardVector], ...]:
    """The 56 signed symbols of the double-conic degeneration at r = 7.

    Each entry is (sign, (i, j), vector) for a 2-element subset {i, j} of
    the eight numbered points: the minus family is e_j over {0, j} and
    2l - sum(e) + e_i + e_j over {i, j}; the plus family is k - e_j over
    {0, j} and l - e_i - e_j over {i, j}.
    """
    table = []
    for i in range(8):
        for j in range(i + 1, 8):
            if i == 0:
                minus = point_class(7, j)
                plus = vec_sub(anticanonical_class(7), point_class(7, j))
            else:
                minus = (2,) + tuple(0 if m in (i, j) else 1 for m in range(1, 8))
                plus = (1,) + tuple(1 if m in (i, j) else 0 for m in range(1, 8))
            table.append((-1, (i, j), minus))
            table.append((1, (i, j), plus))
    return tuple(table)


@dataclass(frozen=True)
class MarkingReport:
    """The full pairwise audit of the degeneration marking."""

    ok: bool
    checks: int
    violations: tuple[str, ...]
    sign_rule_ok: bool
    beta_type: DiagramType

    def __bool__(self) -> bool:
        return self.ok


def beta_basis() -> tuple[PicardVector, ...]:
    """The basis (e_2+...+e_7-2l, e_1-e_2, ..., e_6-e_7) of the even-l roots."""
    first = (-2, 0, -1, -1, -1, -1, -1, -1)
    return (first,) + root_basis(7)[1:]


def limit_marking_check() -> MarkingReport:
    """Audit the degeneration marking against the intersection table.

    Distinct symbols must pair to 0/1 by the sign and overlap of their
    point sets (2 for equal sets of opposite sign), every assigned vector
    must be exceptional, the sign must be the parity of the l-coefficient,
    and the beta basis must have Cartan type A_7.
    """
    table = limit_marking()
    exc = set(exceptional_vectors(7))
    violations = []
    checks = 0
    for sign, points, v in table:
        checks += 1
        if v not in exc:
            violations.append(f"E{sign:+d}{points} = {v} is not exceptional")
    for x in range(len(table)):
        sign_a, pts_a, va = table[x]
        for y in range(x + 1, len(table)):
            sign_b, pts_b, vb = table[y]
            checks += 1
            overlap = len(set(pts_a) & set(pts_b))
            if pts_a == pts_b:
                want = 2
            elif overlap == 1:
                want = 0 if sign_a == sign_b else 1
            else:
                want = 1 if sign_a == sign_b else 0
            got = pairing(va, vb)
            if got != want:
                violations.append(
                    f"E{sign_a:+d}{pts_a} . E{sign_b:+d}{pts_b} = {got}, want {want}"
                )
    sign_rule_ok = all(sign == (1 if v[0] % 2 else -1) for sign, _, v in table)
    beta = beta_basis()
    root_set = set(_root_vectors(7))
    beta_ok = all(b in root_set for b in beta)
    edges = []
    for i in range(len(beta)):
        for j in range(i + 1, len(beta)):
            p = pairing(beta[i], beta[j])
            if p == 1:
                edges.append((i, j, 3))
            elif p != 0:
                beta_ok = False
    beta_type = classify(
        coxeter_graph([str(i) for i in range(len(beta))], edges)
    )
    ok = (
        not violations
        and sign_rule_ok
        and beta_ok
        and beta_type.name == "A7"
    )
    return MarkingReport(ok, checks, tuple(violations), sign_rule_ok, beta_type)


# ---------------------------------------------------------------------------
# The theta torsor


@dataclass(frozen=True)
class ThetaReport:
    """Count of degree 1 classes modulo twice the dual root lattice."""

    ok: bool
    torsor_size: int
    classes_hit: int
    pairs_collapse: bool

    def __bool__(self) -> bool:
        return self.ok


def theta_torsor_check() -> ThetaReport:
    """Degree 1 vectors at r = 7 modulo 2Q*, and where the exceptionals land.

    Q* is the dual of the root lattice Q embedded by the pairing; 2Q* is a
    finite-index sublattice of Q, and the degree 1 vectors form a Q-torsor.
    The index comes from the Smith form of 2*G^{-1} with G the Gram matrix
    of the root basis; exceptional vectors are binned by their class.
    """
    r = 7
    basis = root_basis(r)
    gram = [[pairing(a, b) for b in basis] for a in basis]
    ginv = invert(gram)
    lattice = []
    for row in ginv:
        entries = []
        for x in row:
            x = 2 * x
            if x.denominator != 1:
                raise LatticeError("2Q* does not lie in the root lattice")
            entries.append(int(x))
        lattice.append(entries)
    diag, u, _ = smith_normal_form(lattice)
    factors = [diag[i][i] for i in range(r)]
    torsor_size = 1
    for f in factors:
        torsor_size *= abs(f)

    base = point_class(r, r)

    def class_key(v: PicardVector) -> tuple[int, ...]:
        x = vec_sub(v, base)
        coords = solve(gram, [pairing(a, x) for a in basis])
        if any(c.denominator != 1 for c in coords):
            raise LatticeError(f"{v} - {base} is not in the root lattice")
        ints = [int(c) for c in coords]
        return tuple(
            sum(u[i][j] * ints[j] for j in range(r)) % factors[i]
            for i in range(r)
        )

    k = anticanonical_class(r)
    bins: dict[tuple[int, ...], list[PicardVector]] = {}
    for e in exceptional_vectors(r):
        bins.setdefault(class_key(e), []).append(e)
    pairs_collapse = all(
        sorted(members) == sorted((members[0], vec_sub(k, members[0])))
        for members in bins.values()
    )
    return ThetaReport(
        pairs_collapse and 2 * len(bins) == len(exceptional_vectors(r)),
        torsor_size,
        len(bins),
        pairs_collapse,
    )
