"""Affine Weyl groups acting on coweight space, exactly.

An affine graph is realized on V = Q^l in fundamental-coweight coordinates
for its finite part (vertex 0 removed): the i-th coordinate of a point x is
the pairing of the i-th finite simple root with x.  Every object of interest
is an AffineMap with rational entries, so all the structural identities
(point reflections, translations, parabolic longest elements, the alcove
symmetries g_i and g_ij) are checked by exact matrix algebra.

Conventions: the fundamental alcove has vertices a_0 = 0 and
a_j = e_j / comark_j; a vertex is special when its comark is 1; Q is the
row lattice of the finite Cartan matrix and P = Z^l, with [P:Q] equal to
the Cartan determinant.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ._linalg import (
    det,
    in_row_lattice,
    invert,
    lattice_index,
    primitive_kernel_vector,
    transpose,
)
from .graphs import (
    CoxeterGraph,
    GraphAutomorphism,
    GraphError,
    classify,
    full_subgraph,
)
from .weylrep import CartanData, cartan_matrix, longest_element, reflection_rep

Vector = tuple[Fraction, ...]
FracMatrix = tuple[tuple[Fraction, ...], ...]


def _vec(values) -> Vector:
    return tuple(Fraction(v) for v in values)


def _mat(rows) -> FracMatrix:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def _zero(n: int) -> Vector:
    return tuple(Fraction(0) for _ in range(n))


@dataclass(frozen=True)
class AffineMap:
    """x |-> linear x + translation, with exact rational entries."""

    linear: FracMatrix
    translation: Vector

    def __call__(self, x) -> Vector:
        return tuple(
            sum((row[k] * x[k] for k in range(len(x))), Fraction(0)) + t
            for row, t in zip(self.linear, self.translation)
        )

    def compose(self, other: AffineMap) -> AffineMap:
        """self after other."""
        lin = tuple(
            tuple(
                sum(
                    (self.linear[i][k] * other.linear[k][j]
                     for k in range(len(self.translation))),
                    Fraction(0),
                )
                for j in range(len(self.translation))
            )
            for i in range(len(self.translation))
        )
        return AffineMap(lin, self(other.translation))

    def inverse(self) -> AffineMap:
        inv = _mat(invert(self.linear))
        ident = AffineMap(inv, _zero(len(self.translation)))
        return AffineMap(inv, tuple(-c for c in ident(self.translation)))

    @property
    def is_identity(self) -> bool:
        n = len(self.translation)
        return all(c == 0 for c in self.translation) and all(
            self.linear[i][j] == (1 if i == j else 0)
            for i in range(n)
            for j in range(n)
        )

    @staticmethod
    def identity(n: int) -> AffineMap:
        return AffineMap(
            tuple(
                tuple(Fraction(1 if i == j else 0) for j in range(n))
                for i in range(n)
            ),
            _zero(n),
        )

    @staticmethod
    def translation_by(v) -> AffineMap:
        return AffineMap(AffineMap.identity(len(v)).linear, _vec(v))


@dataclass(frozen=True)
class AffineRealization:
    """The exact affine realization of a connected affine graph."""

    graph: CoxeterGraph
    finite_part: CartanData
    cartan: tuple[tuple[int, ...], ...]
    marks: tuple[int, ...]
    comarks: tuple[int, ...]
    alcove_vertices: tuple[Vector, ...]
    q_index: int

    @property
    def rank(self) -> int:
        """Dimension of V (one less than the vertex count)."""
        return self.finite_part.rank

    # -- simple reflections and the basic affine maps

    def simple_reflection(self, v: int) -> AffineMap:
        n = self.rank
        if v == 0:
            theta_dual = self._theta_dual()
            height = tuple(Fraction(self.comarks[j + 1]) for j in range(n))
            lin = tuple(
                tuple(
                    Fraction(1 if q == p else 0) - theta_dual[q] * height[p]
                    for p in range(n)
                )
                for q in range(n)
            )
            return AffineMap(lin, theta_dual)
        p = v - 1
        a = self.finite_part.cartan
        lin = tuple(
            tuple(
                Fraction(1 if q == p2 else 0) - (Fraction(a[p][q]) if p2 == p else 0)
                for p2 in range(n)
            )
            for q in range(n)
        )
        return AffineMap(lin, _zero(n))

    def _theta_dual(self) -> Vector:
        # Coordinates of the coroot of the highest root: the pairing of each
        # finite simple root against it, i.e. the mark-weighted row sum of
        # the finite Cartan matrix.
        n = self.rank
        a = self.finite_part.cartan
        coords = tuple(
            sum(Fraction(self.marks[p + 1] * a[p][q]) for p in range(n))
            for q in range(n)
        )
        assert sum(self.comarks[q + 1] * coords[q] for q in range(n)) == 2
        return coords

    def translation_map(self, v) -> AffineMap:
        return AffineMap.translation_by(v)

    def point_reflection(self, j: int) -> AffineMap:
        """iota_j: the point reflection at the alcove vertex a_j."""
        a = self.alcove_vertices[j]
        return AffineMap(self._minus_identity(), tuple(2 * c for c in a))

    def midpoint_reflection(self, i: int, j: int) -> AffineMap:
        """iota_ij: the point reflection at the midpoint of a_i and a_j."""
        ai, aj = self.alcove_vertices[i], self.alcove_vertices[j]
        return AffineMap(self._minus_identity(), tuple(x + y for x, y in zip(ai, aj)))

    def _minus_identity(self) -> FracMatrix:
        n = self.rank
        return tuple(
            tuple(Fraction(-1 if p == q else 0) for q in range(n)) for p in range(n)
        )

    def parabolic_longest(self, keep) -> AffineMap:
        """w_F: the longest element of the parabolic on the given vertices,
        as an affine map (the identity for the empty set)."""
        keep = tuple(keep)
        if not keep:
            return AffineMap.identity(self.rank)
        sub = full_subgraph(self.graph, keep)
        if not classify(sub).is_finite:
            raise GraphError(f"parabolic on {keep} is not finite")
        _, word = longest_element(reflection_rep(sub))
        # simple reflections are integral in coweight coordinates, so the
        # product is accumulated with plain integer arithmetic
        n = self.rank
        lin = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        tr = [0] * n
        for i in word:
            s = self.simple_reflection(keep[i])
            slin = [[int(x) for x in row] for row in s.linear]
            str_ = [int(x) for x in s.translation]
            if any(str_):
                tr = [
                    sum(row[k] * str_[k] for k in range(n)) + t
                    for row, t in zip(lin, tr)
                ]
            lin = [
                [
                    sum(lin[a][k] * slin[k][b] for k in range(n))
                    for b in range(n)
                ]
                for a in range(n)
            ]
        return AffineMap(
            tuple(tuple(Fraction(x) for x in row) for row in lin),
            tuple(Fraction(x) for x in tr),
        )

    def complement_longest(self, drop) -> AffineMap:
        drop = set(drop)
        return self.parabolic_longest(
            v for v in range(self.graph.vertex_count) if v not in drop
        )

    # -- alcove symmetries

    def automorphism_map(self, perm: GraphAutomorphism) -> AffineMap:
        """The affine map sending each alcove vertex a_v to a_{perm(v)}."""
        n = self.rank
        base = self.alcove_vertices[perm(0)]
        cols = [
            tuple(
                self.comarks[p + 1] * (c - b)
                for c, b in zip(self.alcove_vertices[perm(p + 1)], base)
            )
            for p in range(n)
        ]
        lin = tuple(tuple(cols[p][q] for p in range(n)) for q in range(n))
        return AffineMap(lin, base)

    def vertex_permutation(self, m: AffineMap) -> GraphAutomorphism | None:
        """The alcove-vertex permutation induced by m, if m permutes the
        alcove vertices and the permutation preserves multiplicities."""
        images = []
        for v in range(self.graph.vertex_count):
            y = m(self.alcove_vertices[v])
            try:
                images.append(self.alcove_vertices.index(y))
            except ValueError:
                return None
        if len(set(images)) != len(images):
            return None
        g = self.graph
        for v in range(g.vertex_count):
            for u in range(v + 1, g.vertex_count):
                if g.m(v, u) != g.m(images[v], images[u]):
                    return None
        return GraphAutomorphism(tuple(images))


@dataclass(frozen=True)
class SpecialStructure:
    """Alcove symmetries attached to the special vertices."""

    special: tuple[int, ...]
    minuscule_pairs: tuple[tuple[int, int], ...]
    g_i: dict[int, GraphAutomorphism]
    g_ij: dict[tuple[int, int], GraphAutomorphism]
    s_gamma: tuple[GraphAutomorphism, ...]


@dataclass(frozen=True)
class IdentityCheck:
    identity: str
    passed: bool


def realize(g: CoxeterGraph) -> AffineRealization:
    dtype = classify(g)
    if dtype.kind != "affine":
        raise GraphError(f"affine realization needs an affine type, got {dtype}")
    a = cartan_matrix(g)
    comarks = primitive_kernel_vector(a)
    marks = primitive_kernel_vector(transpose(a))
    if comarks[0] != 1:
        raise GraphError(
            "vertex 0 must be a special vertex (comark 1); relabel the graph"
        )
    n = g.vertex_count - 1
    finite_part = reflection_rep(full_subgraph(g, range(1, n + 1)))
    q_index = int(det(finite_part.cartan))
    alcove = [tuple(Fraction(0) for _ in range(n))]
    for p in range(n):
        alcove.append(
            tuple(
                Fraction(1, comarks[p + 1]) if q == p else Fraction(0)
                for q in range(n)
            )
        )
    return AffineRealization(
        graph=g,
        finite_part=finite_part,
        cartan=a,
        marks=marks,
        comarks=comarks,
        alcove_vertices=tuple(alcove),
        q_index=q_index,
    )


def special_vertices(r: AffineRealization) -> tuple[int, ...]:
    return tuple(i for i, c in enumerate(r.comarks) if c == 1)


def special_structure(r: AffineRealization) -> SpecialStructure:
    special = special_vertices(r)
    g_i: dict[int, GraphAutomorphism] = {}
    for j in special:
        m = r.complement_longest((j,)).compose(r.point_reflection(j))
        perm = r.vertex_permutation(m)
        if perm is None or perm(j) != j:
            raise GraphError(f"w_{j} iota_{j} does not fix the alcove vertex {j}")
        g_i[j] = perm
    g_ij: dict[tuple[int, int], GraphAutomorphism] = {}
    for i, j in combinations(special, 2):
        m = r.complement_longest((i, j)).compose(r.midpoint_reflection(i, j))
        perm = r.vertex_permutation(m)
        if perm is None or perm(i) != j or perm(j) != i:
            raise GraphError(f"w_{i}{j} iota_{i}{j} does not swap {i} and {j}")
        g_ij[(i, j)] = perm
    ident = GraphAutomorphism(tuple(range(r.graph.vertex_count)))
    closure = {ident}
    frontier = [ident]
    gens = list(g_i.values()) + list(g_ij.values())
    while frontier:
        cur = frontier.pop()
        for gen in gens:
            nxt = gen.compose(cur)
            if nxt not in closure:
                closure.add(nxt)
                frontier.append(nxt)
    return SpecialStructure(
        special=special,
        minuscule_pairs=tuple(combinations(special, 2)),
        g_i=g_i,
        g_ij=g_ij,
        s_gamma=tuple(sorted(closure, key=lambda p: p.mapping)),
    )


def nonspecial_blowup_candidates(
    r: AffineRealization,
) -> dict[int, GraphAutomorphism]:
    """All vertices j for which w_j iota_j permutes the alcove vertices,
    with the induced automorphism g_j for each."""
    found: dict[int, GraphAutomorphism] = {}
    for j in range(r.graph.vertex_count):
        m = r.complement_longest((j,)).compose(r.point_reflection(j))
        perm = r.vertex_permutation(m)
        if perm is not None:
            found[j] = perm
    return found


def check_affine_identities(r: AffineRealization) -> tuple[IdentityCheck, ...]:
    """Exact verification of the alcove-symmetry identities:

    (a) iota_j = w_j gbar_j for special j (and the pair version for iota_ij);
    (b) tau(a_j - a_i) = iota_ij iota_i = w_ij gbar_ij w_i gbar_i;
    (c) the differences a_j - a_i extend Q to a lattice of index [P:Q];
    (d) the classes of the special alcove vertices fill P/Q exactly once.
    """
    ss = special_structure(r)
    checks: list[IdentityCheck] = []
    a = r.alcove_vertices
    for j in ss.special:
        lhs = r.point_reflection(j)
        rhs = r.complement_longest((j,)).compose(r.automorphism_map(ss.g_i[j]))
        checks.append(IdentityCheck(f"iota_{j} = w_{j} gbar_{j}", lhs == rhs))
    for i, j in ss.minuscule_pairs:
        lhs = r.midpoint_reflection(i, j)
        rhs = r.complement_longest((i, j)).compose(
            r.automorphism_map(ss.g_ij[(i, j)])
        )
        checks.append(
            IdentityCheck(f"iota_{i}{j} = w_{i}{j} gbar_{i}{j}", lhs == rhs)
        )
    for i, j in ss.minuscule_pairs:
        tau = AffineMap.translation_by(
            tuple(x - y for x, y in zip(a[j], a[i]))
        )
        short = r.midpoint_reflection(i, j).compose(r.point_reflection(i))
        long_chain = (
            r.complement_longest((i, j))
            .compose(r.automorphism_map(ss.g_ij[(i, j)]))
            .compose(r.complement_longest((i,)))
            .compose(r.automorphism_map(ss.g_i[i]))
        )
        checks.append(
            IdentityCheck(
                f"tau(a_{j} - a_{i}) = iota_{i}{j} iota_{i} "
                f"= w_{i}{j} gbar_{i}{j} w_{i} gbar_{i}",
                tau == short and tau == long_chain,
            )
        )
    n = r.rank
    q_rows = [list(row) for row in r.finite_part.cartan]
    diffs = [
        [int(x - y) for x, y in zip(a[j], a[i])]
        for i, j in ss.minuscule_pairs
    ]
    extended = lattice_index(q_rows + diffs, n)
    checks.append(
        IdentityCheck(
            f"Q extended by the a_j - a_i has index {r.q_index} over Q",
            extended == 1 and lattice_index(q_rows, n) == r.q_index,
        )
    )
    classes_distinct = all(
        not in_row_lattice(
            r.finite_part.cartan, [int(x - y) for x, y in zip(a[j], a[i])]
        )
        for i, j in ss.minuscule_pairs
    )
    checks.append(
        IdentityCheck(
            "P/Q acts simply transitively on the special vertices",
            classes_distinct and len(ss.special) == r.q_index,
        )
    )
    return tuple(checks)
