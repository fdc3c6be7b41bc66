"""Coxeter graphs with crystallographic bond multiplicities.

A Coxeter graph here is a finite vertex set with bond multiplicities
m_ij in {2, 3, 4, 6, inf} (m_ij = 2 meaning no bond).  Builtin graphs follow
the Bourbaki catalogue, carry Bourbaki vertex labels (with 0 the added vertex
of an affine diagram), and remember which simple roots are short so that the
integer reflection representation can orient double and triple bonds.

Classification is by exact isomorphism against the catalogue, never by
numerical definiteness tests.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

INF = float("inf")

ALLOWED_MULTS = (3, 4, 6, INF)


class GraphError(ValueError):
    pass


class GraphParseError(GraphError):
    pass


@dataclass(frozen=True)
class CoxeterGraph:
    """A Coxeter graph with optional root-length (Dynkin arrow) metadata.

    labels are display names for the vertices; internally vertices are the
    indices 0..n-1.  mults is the full symmetric multiplicity matrix with 1
    on the diagonal.  short_vertices, when present, marks the vertices whose
    simple root is short; every bond with m in {4, 6} must then have exactly
    one short endpoint.
    """

    labels: tuple[str, ...]
    mults: tuple[tuple[float, ...], ...]
    short_vertices: frozenset[int] | None = None

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n == 0:
            raise GraphError("a Coxeter graph needs at least one vertex")
        if len(set(self.labels)) != n:
            raise GraphError("vertex labels must be distinct")
        if len(self.mults) != n or any(len(row) != n for row in self.mults):
            raise GraphError("multiplicity matrix shape does not match vertex count")
        for i in range(n):
            if self.mults[i][i] != 1:
                raise GraphError("diagonal multiplicities must be 1")
            for j in range(i + 1, n):
                m = self.mults[i][j]
                if m != self.mults[j][i]:
                    raise GraphError("multiplicity matrix must be symmetric")
                if m != 2 and m not in ALLOWED_MULTS:
                    raise GraphError(f"multiplicity {m} is not in {{2, 3, 4, 6, inf}}")
        if self.short_vertices is not None:
            for i, j, m in self.edges():
                if m in (4, 6) and (i in self.short_vertices) == (j in self.short_vertices):
                    raise GraphError(
                        f"bond {self.labels[i]}-{self.labels[j]} of multiplicity {m} "
                        "needs exactly one short endpoint"
                    )

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    def m(self, i: int, j: int) -> float:
        return self.mults[i][j]

    def edges(self) -> list[tuple[int, int, float]]:
        n = self.vertex_count
        return [
            (i, j, self.mults[i][j])
            for i in range(n)
            for j in range(i + 1, n)
            if self.mults[i][j] != 2
        ]

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.vertex_count) if j != i and self.mults[i][j] != 2]

    def is_simply_laced(self) -> bool:
        return all(m == 3 for _, _, m in self.edges())

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GraphError(f"no vertex labeled {label!r}") from None

    def components(self) -> list[tuple[int, ...]]:
        """Connected components, each sorted, in order of smallest vertex."""
        n = self.vertex_count
        seen = [False] * n
        comps = []
        for start in range(n):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.neighbors(v):
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(tuple(sorted(comp)))
        return comps

    def __repr__(self) -> str:
        bonds = ", ".join(
            f"{self.labels[i]}-{self.labels[j]}"
            + (f":{int(m)}" if m != 3 and m != INF else (":inf" if m == INF else ""))
            for i, j, m in self.edges()
        )
        return f"CoxeterGraph({self.vertex_count} vertices; {bonds or 'no bonds'})"


def coxeter_graph(
    labels,
    edges,
    short_vertices=None,
) -> CoxeterGraph:
    """Build a graph from labels and an iterable of (i, j, m) bonds."""
    labels = tuple(labels)
    n = len(labels)
    mults = [[2.0] * n for _ in range(n)]
    for i in range(n):
        mults[i][i] = 1
    for i, j, m in edges:
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise GraphError(f"bond ({i}, {j}) is out of range")
        if mults[i][j] != 2:
            raise GraphError(f"duplicate bond ({i}, {j})")
        mults[i][j] = mults[j][i] = m
    mults_t = tuple(tuple(int(m) if m != INF else INF for m in row) for row in mults)
    shorts = None if short_vertices is None else frozenset(short_vertices)
    return CoxeterGraph(labels, mults_t, shorts)


@dataclass(frozen=True)
class GraphAutomorphism:
    """A multiplicity-preserving permutation of the vertices."""

    mapping: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def compose(self, other: GraphAutomorphism) -> GraphAutomorphism:
        """self after other."""
        return GraphAutomorphism(tuple(self.mapping[j] for j in other.mapping))

    def inverse(self) -> GraphAutomorphism:
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return GraphAutomorphism(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))


@dataclass(frozen=True)
class DiagramType:
    """Catalogue type of a Coxeter graph.

    kind is one of "finite", "affine", "indefinite", "reducible"; family and
    rank are set for the first two, components for the last.
    """

    kind: str
    family: str | None = None
    rank: int | None = None
    components: tuple["DiagramType", ...] = field(default_factory=tuple)

    @staticmethod
    def finite(family: str, rank: int) -> "DiagramType":
        return DiagramType("finite", family, rank)

    @staticmethod
    def affine(family: str, rank: int) -> "DiagramType":
        return DiagramType("affine", family, rank)

    @staticmethod
    def indefinite() -> "DiagramType":
        return DiagramType("indefinite")

    @staticmethod
    def reducible(components) -> "DiagramType":
        return DiagramType("reducible", components=tuple(components))

    @property
    def is_finite(self) -> bool:
        if self.kind == "reducible":
            return all(c.is_finite for c in self.components)
        return self.kind == "finite"

    @property
    def is_affine(self) -> bool:
        return self.kind == "affine"

    @property
    def name(self) -> str:
        if self.kind == "finite":
            return f"{self.family}{self.rank}"
        if self.kind == "affine":
            return f"{self.family}{self.rank}~"
        if self.kind == "indefinite":
            return "Indefinite"
        return " + ".join(c.name for c in self.components)

    def __str__(self) -> str:
        return self.name


# ---------------------------------------------------------------------------
# Bourbaki catalogue


def _chain_edges(vertex_ids, m_last=3):
    edges = []
    for a, b in zip(vertex_ids, vertex_ids[1:]):
        edges.append((a, b, 3))
    if edges and m_last != 3:
        a, b, _ = edges[-1]
        edges[-1] = (a, b, m_last)
    return edges


def _finite_catalogue_graph(family: str, rank: int) -> CoxeterGraph | None:
    """The Bourbaki diagram of the given finite type, or None if absent."""
    labels = tuple(str(i) for i in range(1, rank + 1))
    idx = list(range(rank))
    if family == "A" and rank >= 1:
        return coxeter_graph(labels, _chain_edges(idx))
    if family == "B" and rank >= 2:
        return coxeter_graph(labels, _chain_edges(idx, m_last=4), short_vertices={rank - 1})
    if family == "C" and rank >= 3:
        return coxeter_graph(labels, _chain_edges(idx, m_last=4),
                             short_vertices=set(range(rank - 1)))
    if family == "D" and rank >= 4:
        edges = _chain_edges(idx[: rank - 1])
        edges.append((rank - 3, rank - 1, 3))
        return coxeter_graph(labels, edges)
    if family == "E" and rank in (6, 7, 8):
        # Bourbaki: chain 1-3-4-...-rank with vertex 2 attached to vertex 4.
        chain = [0] + idx[2:]
        edges = _chain_edges(chain)
        edges.append((1, 3, 3))
        return coxeter_graph(labels, edges)
    if family == "F" and rank == 4:
        edges = [(0, 1, 3), (1, 2, 4), (2, 3, 3)]
        return coxeter_graph(labels, edges, short_vertices={2, 3})
    if family == "G" and rank == 2:
        return coxeter_graph(labels, [(0, 1, 6)], short_vertices={0})
    return None


# For each affine family: the finite vertex (Bourbaki label) the added vertex
# attaches to, and the bond multiplicity of the new edge.
_AFFINE_ATTACH = {
    "B": ("2", 3),
    "C": ("1", 4),
    "D": ("2", 3),
    "F": ("1", 3),
    "G": ("2", 3),
}


def _affine_catalogue_graph(family: str, rank: int) -> CoxeterGraph | None:
    """The Bourbaki affine diagram of the given type, or None if absent."""
    if family == "A":
        if rank == 1:
            return coxeter_graph(("0", "1"), [(0, 1, INF)])
        if rank >= 2:
            labels = tuple(str(i) for i in range(rank + 1))
            edges = _chain_edges(list(range(rank + 1)))
            edges.append((0, rank, 3))
            return coxeter_graph(labels, edges)
        return None
    if family == "C" and rank == 2:
        # Bourbaki B~2 = C~2: a chain with double bonds at both ends.
        return coxeter_graph(("0", "1", "2"), [(0, 1, 4), (1, 2, 4)], short_vertices={1})
    if family == "E":
        base = _finite_catalogue_graph("E", rank)
        attach = {6: "2", 7: "1", 8: "8"}.get(rank)
        if base is None or attach is None:
            return None
        return _attach_affine_vertex(base, attach, 3)
    if family in _AFFINE_ATTACH:
        minimum = {"B": 3, "C": 3, "D": 4, "F": 4, "G": 2}[family]
        if rank < minimum:
            return None
        base = _finite_catalogue_graph(family, rank)
        if base is None:
            return None
        attach, m = _AFFINE_ATTACH[family]
        return _attach_affine_vertex(base, attach, m)
    return None


def _attach_affine_vertex(base: CoxeterGraph, attach_label: str, m: float) -> CoxeterGraph:
    labels = ("0",) + base.labels
    edges = [(i + 1, j + 1, mm) for i, j, mm in base.edges()]
    edges.append((0, base.index_of(attach_label) + 1, m))
    shorts = None
    if base.short_vertices is not None:
        shorts = {i + 1 for i in base.short_vertices}
    elif m in (4, 6):
        raise GraphError("affine bond needs length data")
    return coxeter_graph(labels, edges, shorts)


def catalogue_entries(max_vertices: int):
    """Yield (name, graph) for every catalogue diagram with at most the
    given number of vertices, finite types first."""
    for n in range(1, max_vertices + 1):
        for family in "ABCDEFG":
            g = _finite_catalogue_graph(family, n)
            if g is not None:
                yield f"{family}{n}", g
    for n in range(2, max_vertices + 1):
        rank = n - 1
        for family in "ABCDEFG":
            g = _affine_catalogue_graph(family, rank)
            if g is not None and g.vertex_count == n:
                yield f"{family}{rank}~", g


# ---------------------------------------------------------------------------
# Isomorphism machinery


def _vertex_signature(g: CoxeterGraph, i: int):
    return tuple(sorted((g.mults[i][j] if g.mults[i][j] != INF else 0)
                        for j in g.neighbors(i)))


def _isomorphisms(g: CoxeterGraph, h: CoxeterGraph, match_arrows: bool = False):
    """Yield multiplicity-preserving bijections g -> h as index tuples."""
    n = g.vertex_count
    if h.vertex_count != n:
        return
    sig_g = [_vertex_signature(g, i) for i in range(n)]
    sig_h = [_vertex_signature(h, i) for i in range(n)]
    if sorted(sig_g) != sorted(sig_h):
        return
    candidates = [[j for j in range(n) if sig_h[j] == sig_g[i]] for i in range(n)]
    mapping = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            if match_arrows and not _arrows_match(g, h, mapping):
                return
            yield tuple(mapping)
            return
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for k in range(i):
                if g.mults[i][k] != h.mults[j][mapping[k]]:
                    ok = False
                    break
            if ok:
                mapping[i] = j
                used[j] = True
                yield from extend(i + 1)
                used[j] = False
                mapping[i] = -1

    yield from extend(0)


def _arrows_match(g: CoxeterGraph, h: CoxeterGraph, mapping) -> bool:
    if g.short_vertices is None or h.short_vertices is None:
        return True
    for i, j, m in g.edges():
        if m in (4, 6):
            if (i in g.short_vertices) != (mapping[i] in h.short_vertices):
                return False
    return True


def automorphisms(g: CoxeterGraph) -> tuple[GraphAutomorphism, ...]:
    """All multiplicity-preserving vertex permutations, lexicographically
    sorted (so the identity comes first)."""
    perms = sorted(_isomorphisms(g, g))
    return tuple(GraphAutomorphism(p) for p in perms)


def _catalogue_candidates(n: int):
    for family in "ABCDEFG":
        g = _finite_catalogue_graph(family, n)
        if g is not None:
            yield DiagramType.finite(family, n), g
    rank = n - 1
    for family in "ABCDEFG":
        g = _affine_catalogue_graph(family, rank)
        if g is not None:
            yield DiagramType.affine(family, rank), g


def _classify_connected(g: CoxeterGraph) -> DiagramType:
    matches = []
    for dtype, cat in _catalogue_candidates(g.vertex_count):
        if next(_isomorphisms(g, cat), None) is not None:
            matches.append((dtype, cat))
    if not matches:
        return DiagramType.indefinite()
    if len(matches) == 1:
        return matches[0][0]
    # The only catalogue shape collision is finite B_n = C_n (n >= 3);
    # length metadata decides, defaulting to B for bare graphs.
    families = {d.family for d, _ in matches}
    if families == {"B", "C"} and all(d.kind == "finite" for d, _ in matches):
        if g.short_vertices is None:
            return next(d for d, _ in matches if d.family == "B")
        for dtype, cat in matches:
            for iso in _isomorphisms(g, cat):
                if _arrows_match(g, cat, iso):
                    return dtype
    raise GraphError(f"ambiguous catalogue match for {g!r}")  # pragma: no cover


def classify(g: CoxeterGraph) -> DiagramType:
    """Catalogue type of g: finite or affine Bourbaki name, Indefinite, or
    Reducible with per-component types.  Isomorphism-invariant."""
    comps = g.components()
    if len(comps) == 1:
        return _classify_connected(g)
    return DiagramType.reducible(
        _classify_connected(full_subgraph(g, comp)) for comp in comps
    )


def full_subgraph(g: CoxeterGraph, keep) -> CoxeterGraph:
    """The full subgraph on the given vertex indices (labels kept)."""
    keep = tuple(sorted(set(keep)))
    if not keep:
        raise GraphError("a full subgraph needs at least one vertex")
    for v in keep:
        if not 0 <= v < g.vertex_count:
            raise GraphError(f"vertex index {v} out of range")
    labels = tuple(g.labels[v] for v in keep)
    mults = tuple(tuple(g.mults[a][b] for b in keep) for a in keep)
    shorts = None
    if g.short_vertices is not None:
        shorts = frozenset(i for i, v in enumerate(keep) if v in g.short_vertices)
    return CoxeterGraph(labels, mults, shorts)


def affine_completion(g: CoxeterGraph) -> CoxeterGraph:
    """The affine diagram completing a connected finite catalogue graph.

    The added vertex is labeled "0" and attached where the lowest root of the
    catalogue representative attaches; for B/C shapes without length data the
    B orientation is assumed (via classify).
    """
    dtype = classify(g)
    if dtype.kind != "finite":
        raise GraphError(f"affine completion needs a connected finite graph, got {dtype}")
    family, rank = dtype.family, dtype.rank
    if family == "B" and rank == 2:
        family = "C"  # Bourbaki B~2 := C~2
    affine = _affine_catalogue_graph(family, rank)
    if affine is None:
        raise GraphError(f"no affine completion for {dtype}")  # pragma: no cover
    cat = _finite_catalogue_graph(dtype.family, dtype.rank)
    iso = None
    for candidate in _isomorphisms(g, cat):
        if _arrows_match(g, cat, candidate):
            iso = candidate
            break
    if iso is None:
        raise GraphError(f"{dtype} graph does not carry consistent length data")
    # Relabel the affine catalogue graph so the finite part keeps g's labels.
    zero = "0" if "0" not in g.labels else "0'"
    inv = {j: i for i, j in enumerate(iso)}
    labels = (zero,) + tuple(g.labels[inv[j]] for j in range(g.vertex_count))
    shorts = None
    if affine.short_vertices is not None:
        shorts = affine.short_vertices
    elif g.short_vertices is not None:
        shorts = frozenset(i + 1 for i in range(g.vertex_count)
                           if inv[i] in g.short_vertices)
    return CoxeterGraph(labels, affine.mults, shorts)


# ---------------------------------------------------------------------------
# Parsing

_BUILTIN_RE = re.compile(r"^([A-G])([0-9]+)(~?)$")
_NONCRYSTALLOGRAPHIC_RE = re.compile(r"^(H[34]|I2\(\d+\))$")


def parse_graph(text: str) -> CoxeterGraph:
    """Parse a builtin name ("E7~", "A4") or a custom graph literal
    ("graph {n=3; edges: 1-2, 2-3:4}")."""
    s = text.strip()
    if _NONCRYSTALLOGRAPHIC_RE.match(s):
        raise GraphParseError(
            f"{s} is noncrystallographic and outside the supported multiplicity "
            "set {2, 3, 4, 6, inf}"
        )
    m = _BUILTIN_RE.match(s)
    if m:
        family, rank, affine = m.group(1), int(m.group(2)), bool(m.group(3))
        g = (_affine_catalogue_graph if affine else _finite_catalogue_graph)(family, rank)
        if g is None:
            raise GraphParseError(f"unknown catalogue name {s!r}")
        return g
    if s.startswith("graph"):
        return _parse_custom(s)
    raise GraphParseError(f"cannot parse graph {text!r}: neither a catalogue "
                          "name nor a graph literal")


def _parse_custom(s: str) -> CoxeterGraph:
    pos = len("graph")

    def skip_ws(p):
        while p < len(s) and s[p].isspace():
            p += 1
        return p

    def expect(p, token):
        p = skip_ws(p)
        if not s.startswith(token, p):
            raise GraphParseError(f"parse error at position {p}: expected {token!r}")
        return p + len(token)

    def read_int(p):
        p = skip_ws(p)
        start = p
        while p < len(s) and s[p].isdigit():
            p += 1
        if p == start:
            raise GraphParseError(f"parse error at position {start}: expected an integer")
        return int(s[start:p]), p

    pos = expect(pos, "{")
    pos = expect(pos, "n")
    pos = expect(pos, "=")
    n, pos = read_int(pos)
    if n < 1:
        raise GraphParseError("vertex count must be positive")
    pos = expect(pos, ";")
    pos = expect(pos, "edges:")
    edges = []
    pos = skip_ws(pos)
    while pos < len(s) and s[pos] != "}":
        i, pos = read_int(pos)
        pos = expect(pos, "-")
        j, pos = read_int(pos)
        m: float = 3
        pos = skip_ws(pos)
        if pos < len(s) and s[pos] == ":":
            pos = skip_ws(pos + 1)
            if s.startswith("inf", pos):
                m = INF
                pos += 3
            else:
                m, pos = read_int(pos)
                if m not in (3, 4, 6):
                    raise GraphParseError(
                        f"multiplicity {m} not allowed; use 3, 4, 6 or inf"
                    )
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise GraphParseError(f"edge {i}-{j} out of range for n={n}")
        edges.append((i - 1, j - 1, m))
        pos = skip_ws(pos)
        if pos < len(s) and s[pos] == ",":
            pos += 1
            pos = skip_ws(pos)
    pos = expect(pos, "}")
    if s[skip_ws(pos):]:
        raise GraphParseError(f"parse error at position {pos}: trailing input")
    labels = tuple(str(i) for i in range(1, n + 1))
    try:
        return coxeter_graph(labels, edges)
    except GraphError as exc:
        raise GraphParseError(str(exc)) from None
