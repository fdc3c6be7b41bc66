"""Integer reflection representation of a crystallographic Coxeter graph.

The simple reflection s_i acts on the root lattice by
s_i(alpha_j) = alpha_j - a_ij alpha_i, where a is the Cartan matrix built
from the graph (rows scaled by the row root, so the short endpoint of a
double/triple bond carries the -2/-3 entry).  Group elements are integer
matrices acting on coordinate columns in the simple-root basis.
"""
from __future__ import annotations

from functools import cached_property
from math import factorial

from .graphs import INF, CoxeterGraph, GraphError, classify

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def cartan_matrix(g: CoxeterGraph) -> Matrix:
    """Integer Cartan matrix of the graph.

    Bonds of multiplicity 4 or 6 need short-root metadata to orient the
    entries; infinite bonds get the symmetric pair (-2, -2).
    """
    n = g.vertex_count
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i, j, m in g.edges():
        if m == 3:
            a[i][j] = a[j][i] = -1
        elif m == INF:
            a[i][j] = a[j][i] = -2
        else:
            if g.short_vertices is None:
                raise GraphError(
                    f"bond {g.labels[i]}-{g.labels[j]} of multiplicity {int(m)} "
                    "has no orientation; only builtin graphs carry length data"
                )
            short_first = i in g.short_vertices
            low = -2 if m == 4 else -3
            if short_first:
                a[i][j], a[j][i] = low, -1
            else:
                a[i][j], a[j][i] = -1, low
    return tuple(tuple(row) for row in a)


def _reflection_matrix(cartan: Matrix, i: int) -> Matrix:
    n = len(cartan)
    rows = []
    for k in range(n):
        if k != i:
            rows.append(tuple(1 if k == j else 0 for j in range(n)))
        else:
            rows.append(tuple((1 if i == j else 0) - cartan[i][j] for j in range(n)))
    return tuple(rows)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def is_positive_root(v: Vector) -> bool:
    return all(x >= 0 for x in v)


class CartanData:
    """Reflection representation of a graph: Cartan matrix, simple
    reflections, and (for finite types) the root system."""

    def __init__(self, graph: CoxeterGraph):
        self.graph = graph
        self.cartan = cartan_matrix(graph)
        self.rank = graph.vertex_count
        self.simple_reflections = tuple(
            _reflection_matrix(self.cartan, i) for i in range(self.rank)
        )

    @cached_property
    def diagram_type(self):
        return classify(self.graph)

    def _require_finite(self, what: str) -> None:
        if not self.diagram_type.is_finite:
            raise GraphError(f"{what} needs a finite type, got {self.diagram_type}")

    @cached_property
    def roots(self) -> tuple[Vector, ...]:
        """All roots of a finite type, sorted."""
        self._require_finite("root enumeration")
        simples = [tuple(1 if j == i else 0 for j in range(self.rank))
                   for i in range(self.rank)]
        seen = set(simples)
        queue = list(simples)
        while queue:
            v = queue.pop()
            for s in self.simple_reflections:
                w = mat_vec(s, v)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return tuple(sorted(seen))

    @cached_property
    def positive_roots(self) -> tuple[Vector, ...]:
        return tuple(v for v in self.roots if is_positive_root(v))

    @cached_property
    def _root_index(self) -> dict[Vector, int]:
        return {v: i for i, v in enumerate(self.roots)}

    @cached_property
    def _reflection_tables(self) -> tuple[tuple[int, ...], ...]:
        """For each simple i, the permutation of root indices under s_i."""
        idx = self._root_index
        return tuple(
            tuple(idx[mat_vec(s, v)] for v in self.roots)
            for s in self.simple_reflections
        )

    def simple_root(self, i: int) -> Vector:
        return tuple(1 if j == i else 0 for j in range(self.rank))


def reflection_rep(g: CoxeterGraph) -> CartanData:
    return CartanData(g)


def element_length(c: CartanData, w: Matrix) -> int:
    """Coxeter length: the number of positive roots sent negative."""
    return sum(1 for v in c.positive_roots if not is_positive_root(mat_vec(w, v)))


def longest_element(c: CartanData) -> tuple[Matrix, tuple[int, ...]]:
    """The longest element and its canonical reduced word.

    Greedy: repeatedly append the smallest-index generator that still
    increases length (that is, whose simple root the current element sends
    positive).  Deterministic, and for A_2 yields the word (0, 1, 0).
    """
    c._require_finite("the longest element")
    w = identity_matrix(c.rank)
    word: list[int] = []
    target = len(c.positive_roots)
    while len(word) < target:
        for i in range(c.rank):
            if is_positive_root(tuple(row[i] for row in w)):
                w = mat_mul(w, c.simple_reflections[i])
                word.append(i)
                break
        else:  # pragma: no cover
            raise AssertionError("greedy ascent stalled below the longest element")
    return w, tuple(word)


def reduced_word(c: CartanData, w: Matrix) -> tuple[int, ...]:
    """A canonical reduced word for w (smallest right descent first removed)."""
    word: list[int] = []
    u = w
    n = c.rank
    ident = identity_matrix(n)
    while u != ident:
        for i in range(n):
            if not is_positive_root(tuple(row[i] for row in u)):
                u = mat_mul(u, c.simple_reflections[i])
                word.append(i)
                break
        else:  # pragma: no cover
            raise AssertionError("element has no descent but is not the identity")
    return tuple(reversed(word))


def word_to_matrix(c: CartanData, word) -> Matrix:
    w = identity_matrix(c.rank)
    for i in word:
        w = mat_mul(w, c.simple_reflections[i])
    return w


def canonical_involution(c: CartanData) -> tuple[int, ...]:
    """The permutation i -> j with w_0 s_i w_0 = s_j (identity iff -1 lies
    in the Weyl group)."""
    w0, _ = longest_element(c)
    perm = []
    for i in range(c.rank):
        col = tuple(row[i] for row in w0)
        neg = tuple(-x for x in col)
        j = next(k for k in range(c.rank) if neg == c.simple_root(k))
        perm.append(j)
    return tuple(perm)


def group_order(c: CartanData, cap: int = 4 * 10**6) -> int | None:
    """Exact order of the Weyl group by breadth-first closure, or None once
    more than cap elements have been seen.

    For finite types elements are keyed by the images of the simple roots
    (indices into the root list) and the closure is taken under left
    multiplication through precomputed reflection permutation tables; this
    is the matrix BFS with the matrix stored in compressed form.
    """
    if c.diagram_type.is_finite:
        tables = c._reflection_tables
        idx = c._root_index
        start = tuple(idx[c.simple_root(i)] for i in range(c.rank))
        seen = {start}
        queue = [start]
        rng = range(c.rank)
        while queue:
            key = queue.pop()
            for i in rng:
                t = tables[i]
                nxt = tuple(t[k] for k in key)
                if nxt not in seen:
                    if len(seen) >= cap:
                        return None
                    seen.add(nxt)
                    queue.append(nxt)
        return len(seen)
    # No root list to compress through; walk matrices directly up to cap.
    start_m = identity_matrix(c.rank)
    seen_m = {start_m}
    queue_m = [start_m]
    while queue_m:
        w = queue_m.pop()
        for s in c.simple_reflections:
            nxt = mat_mul(s, w)
            if nxt not in seen_m:
                if len(seen_m) >= cap:
                    return None
                seen_m.add(nxt)
                queue_m.append(nxt)
    return len(seen_m)  # pragma: no cover


def catalogue_order(dtype) -> int | None:
    """Closed-form Weyl group order of a catalogue type (None if infinite)."""
    if dtype.kind == "reducible":
        total = 1
        for comp in dtype.components:
            o = catalogue_order(comp)
            if o is None:
                return None
            total *= o
        return total
    if dtype.kind != "finite":
        return None
    family, n = dtype.family, dtype.rank
    if family == "A":
        return factorial(n + 1)
    if family in ("B", "C"):
        return 2**n * factorial(n)
    if family == "D":
        return 2 ** (n - 1) * factorial(n)
    if family == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[n]
    if family == "F":
        return 1152
    if family == "G":
        return 12
    raise GraphError(f"unknown finite family {family}")  # pragma: no cover
