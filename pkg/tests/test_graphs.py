"""Catalogue classification, parsing, subgraphs, automorphisms."""
from __future__ import annotations

import math
import random

import pytest

from artifact.graphs import (
    INF,
    CoxeterGraph,
    DiagramType,
    GraphError,
    GraphParseError,
    affine_completion,
    automorphisms,
    catalogue_entries,
    classify,
    coxeter_graph,
    full_subgraph,
    parse_graph,
)


def gram_min_eigenvalue(g: CoxeterGraph) -> float:
    """Smallest eigenvalue of the cosine Gram matrix (numerical oracle).

    B_ij = -cos(pi/m_ij); positive semidefinite exactly for finite/affine
    graphs.  Plain Jacobi iteration keeps this oracle independent of the
    catalogue machinery.
    """
    n = g.vertex_count
    b = [[0.0] * n for _ in range(n)]
    for i in range(n):
        b[i][i] = 1.0
        for j in range(n):
            if i != j:
                m = g.mults[i][j]
                b[i][j] = -1.0 if m == INF else -math.cos(math.pi / m)
    # Jacobi eigenvalue sweep; n <= 9 so convergence is immediate.
    for _ in range(800):
        off, p, q = 0.0, 0, 1
        for i in range(n):
            for j in range(i + 1, n):
                if abs(b[i][j]) > off:
                    off, p, q = abs(b[i][j]), i, j
        if off < 1e-12:
            break
        theta = 0.5 * math.atan2(2 * b[p][q], b[q][q] - b[p][p])
        c, s = math.cos(theta), math.sin(theta)
        for k in range(n):
            bpk, bqk = b[p][k], b[q][k]
            b[p][k] = c * bpk - s * bqk
            b[q][k] = s * bpk + c * bqk
        for k in range(n):
            bkp, bkq = b[k][p], b[k][q]
            b[k][p] = c * bkp - s * bkq
            b[k][q] = s * bkp + c * bkq
    return min(b[i][i] for i in range(n))


def random_connected_graph(rng: random.Random) -> CoxeterGraph:
    n = rng.randint(3, 7)
    labels = tuple(str(i + 1) for i in range(n))
    edges = {}
    order = list(range(1, n))
    rng.shuffle(order)
    for v in order:
        w = rng.randrange(v)
        edges[(w, v)] = rng.choice((3, 3, 3, 4, 6))
    extra = rng.randint(0, 3)
    for _ in range(extra):
        i, j = sorted(rng.sample(range(n), 2))
        if (i, j) not in edges:
            edges[(i, j)] = rng.choice((3, 4, 6, INF))
    return coxeter_graph(labels, [(i, j, m) for (i, j), m in edges.items()])


def test_catalogue_entries_classify_to_their_own_names():
    count = 0
    for name, g in catalogue_entries(9):
        assert classify(g).name == name
        count += 1
    # ranks 1..9 finite: A(9) B(8) C(7) D(6) E(3) F(1) G(1) = 35
    # vertex counts 2..9 affine: A(8) B(6) C(7) D(5) E(3) F(1) G(1) = 31
    assert count == 66


def test_catalogue_counts():
    names = [name for name, _ in catalogue_entries(9)]
    finite = [n for n in names if not n.endswith("~")]
    affine = [n for n in names if n.endswith("~")]
    assert len(finite) == 35
    assert len(affine) == 31
    assert "C2~" in affine and "B2~" not in affine


def test_classification_is_relabeling_invariant():
    rng = random.Random(7)
    for name, g in catalogue_entries(8):
        perm = list(range(g.vertex_count))
        rng.shuffle(perm)
        inv = {v: i for i, v in enumerate(perm)}
        labels = tuple(g.labels[v] for v in perm)
        mults = tuple(tuple(g.mults[perm[a]][perm[b]] for b in range(g.vertex_count))
                      for a in range(g.vertex_count))
        shorts = None
        if g.short_vertices is not None:
            shorts = frozenset(inv[v] for v in g.short_vertices)
        assert classify(CoxeterGraph(labels, mults, shorts)).name == name


def test_bc_disambiguation():
    # Same underlying Coxeter graph; the short-root marking decides.
    assert classify(parse_graph("B4")).name == "B4"
    assert classify(parse_graph("C4")).name == "C4"
    bare = parse_graph("graph {n=4; edges: 1-2, 2-3, 3-4:4}")
    assert classify(bare).name == "B4"


def test_random_noncatalogue_graphs_are_indefinite():
    rng = random.Random(20260816)
    found = 0
    while found < 50:
        g = random_connected_graph(rng)
        if gram_min_eigenvalue(g) < -1e-6:
            assert classify(g).name == "Indefinite"
            found += 1


def test_catalogue_graphs_are_positive_semidefinite():
    for name, g in catalogue_entries(9):
        eig = gram_min_eigenvalue(g)
        if name.endswith("~"):
            assert abs(eig) < 1e-7
        else:
            assert eig > 1e-9


def test_reducible_classification():
    g = parse_graph("graph {n=3; edges: 1-2}")
    t = classify(g)
    assert t.kind == "reducible"
    assert t.name == "A2 + A1"
    assert t.is_finite


def test_parse_custom_multiplicities():
    g = parse_graph("graph {n=3; edges: 1-2:4, 2-3:4}")
    assert classify(g).name == "C2~"
    g = parse_graph("graph {n=2; edges: 1-2:inf}")
    assert classify(g).name == "A1~"
    assert g.mults[0][1] == INF


def test_parse_errors():
    with pytest.raises(GraphParseError):
        parse_graph("A0")
    with pytest.raises(GraphParseError):
        parse_graph("Q5")
    with pytest.raises(GraphParseError):
        parse_graph("graph {n=2; edges: 1-2:5}")
    with pytest.raises(GraphParseError):
        parse_graph("graph {n=2; edges: 1-3}")
    with pytest.raises(GraphParseError):
        parse_graph("graph {n=2 edges: 1-2}")
    with pytest.raises(GraphParseError):
        parse_graph("H3")
    with pytest.raises(GraphParseError):
        parse_graph("I2(5)")


def test_full_subgraph_examples():
    e7a = parse_graph("E7~")
    drop0 = full_subgraph(e7a, [e7a.index_of(str(i)) for i in range(1, 8)])
    assert classify(drop0).name == "E7"
    drop2 = full_subgraph(e7a, [i for i in range(8) if e7a.labels[i] != "2"])
    assert classify(drop2).name == "A7"
    e6 = full_subgraph(e7a, [e7a.index_of(str(i)) for i in (1, 2, 3, 4, 5, 6)])
    assert classify(e6).name == "E6"
    with pytest.raises(GraphError):
        full_subgraph(e7a, [])


def test_automorphism_groups():
    # The affine polygon A~_l has dihedral symmetry of order 2(l+1).
    assert len(automorphisms(parse_graph("A2~"))) == 6
    assert len(automorphisms(parse_graph("A3~"))) == 8
    assert len(automorphisms(parse_graph("A4~"))) == 10
    assert len(automorphisms(parse_graph("D4"))) == 6
    assert len(automorphisms(parse_graph("D4~"))) == 24
    assert len(automorphisms(parse_graph("E6~"))) == 6
    assert len(automorphisms(parse_graph("E7~"))) == 2
    assert len(automorphisms(parse_graph("E8~"))) == 1
    assert len(automorphisms(parse_graph("F4~"))) == 1
    assert len(automorphisms(parse_graph("G2~"))) == 1
    auts = automorphisms(parse_graph("A2~"))
    assert auts[0].is_identity
    flip = next(a for a in auts if not a.is_identity)
    assert flip.compose(flip.inverse()).is_identity


def test_affine_completions():
    for base, expected, attach_label in [
        ("A4", "A4~", None),
        ("D4", "D4~", "2"),
        ("D5", "D5~", "2"),
        ("E6", "E6~", "2"),
        ("E7", "E7~", "1"),
        ("E8", "E8~", "8"),
        ("F4", "F4~", "1"),
        ("G2", "G2~", "2"),
        ("B3", "B3~", "2"),
        ("C3", "C3~", "1"),
        ("B2", "C2~", "1"),
    ]:
        g = parse_graph(base)
        a = affine_completion(g)
        assert classify(a).name == expected
        zero = a.index_of("0")
        if attach_label is not None:
            assert a.neighbors(zero) == [a.index_of(attach_label)]
    with pytest.raises(GraphError):
        affine_completion(parse_graph("A2~"))
    with pytest.raises(GraphError):
        affine_completion(parse_graph("graph {n=3; edges: 1-2}"))


def test_diagram_type_api():
    t = DiagramType.finite("E", 7)
    assert t.name == "E7" and t.is_finite and not t.is_affine
    assert DiagramType.affine("A", 1).name == "A1~"
    assert DiagramType.indefinite().name == "Indefinite"
