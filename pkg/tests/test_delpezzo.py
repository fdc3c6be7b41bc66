import pytest

from artifact.delpezzo import (
    LatticeError,
    anticanonical_class,
    beta_basis,
    check_dp_structure,
    classify_two_component_structures,
    exceptional_difference_roots,
    exceptional_vectors,
    limit_marking,
    limit_marking_check,
    line_class,
    pairing,
    point_class,
    reflect,
    root_basis,
    roots,
    subsystem_type,
    theta_torsor_check,
    vec_sub,
    weight_vector,
)

ROOT_COUNTS = {3: 8, 4: 20, 5: 40, 6: 72, 7: 126, 8: 240}
ROOT_TYPES = {3: "A2 + A1", 4: "A4", 5: "D5", 6: "E6", 7: "E7", 8: "E8"}
EXCEPTIONAL_COUNTS = {3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}


def test_pairing_examples():
    assert pairing(anticanonical_class(6), anticanonical_class(6)) == 3
    assert pairing(point_class(5, 1), point_class(5, 1)) == -1
    assert pairing(line_class(4), anticanonical_class(4)) == 3
    with pytest.raises(LatticeError):
        pairing(line_class(4), line_class(5))


def test_class_constructors():
    assert line_class(3) == (1, 0, 0, 0)
    assert point_class(4, 2) == (0, 0, -1, 0, 0)
    assert anticanonical_class(5) == (3, 1, 1, 1, 1, 1)
    with pytest.raises(LatticeError):
        line_class(9)
    with pytest.raises(LatticeError):
        point_class(4, 5)
    with pytest.raises(LatticeError):
        point_class(4, 0)


@pytest.mark.parametrize("r", sorted(ROOT_COUNTS))
def test_root_counts_and_types(r):
    system = roots(r)
    assert len(system.vectors) == ROOT_COUNTS[r]
    assert system.dtype.name == ROOT_TYPES[r]
    for alpha in system.vectors:
        assert pairing(alpha, alpha) == -2
        assert pairing(alpha, anticanonical_class(r)) == 0


@pytest.mark.parametrize("r", sorted(EXCEPTIONAL_COUNTS))
def test_exceptional_counts(r):
    exc = exceptional_vectors(r)
    assert len(exc) == EXCEPTIONAL_COUNTS[r]
    k = anticanonical_class(r)
    for e in exc:
        assert pairing(e, e) == -1
        assert pairing(e, k) == 1


def test_exceptional_families_present():
    exc = set(exceptional_vectors(7))
    assert point_class(7, 3) in exc
    assert (1, 1, 0, 0, 1, 0, 0, 0) in exc  # l - e_1 - e_4
    assert (2, 1, 1, 1, 1, 1, 0, 0) in exc  # 2l - e_1 - ... - e_5
    assert (3, 2, 1, 1, 1, 1, 1, 1) in exc  # 3l - 2e_1 - e_2 - ... - e_7


def test_rank_eight_search_exceeds_the_low_degree_families():
    # The families with l-coefficient up to 3 account for only 148 of the
    # 240 vectors at r = 8; the bounded search must find the rest.
    exc = exceptional_vectors(8)
    assert max(v[0] for v in exc) == 6
    assert sum(1 for v in exc if v[0] <= 3) == 148


@pytest.mark.parametrize("r", [3, 4, 5, 6, 7])
def test_roots_are_orthogonal_exceptional_differences(r):
    assert set(exceptional_difference_roots(r)) == set(roots(r).vectors)


@pytest.mark.parametrize("r", [4, 6, 7])
def test_reflections_permute_exceptionals_and_fix_k(r):
    exc = set(exceptional_vectors(r))
    k = anticanonical_class(r)
    for alpha in root_basis(r):
        assert reflect(k, alpha) == k
        assert {reflect(e, alpha) for e in exc} == exc


def test_reflection_requires_norm_minus_two():
    with pytest.raises(LatticeError):
        reflect(line_class(4), line_class(4))


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_stabilizer_of_l_permutes_the_points(r):
    # The e-difference reflections generate the full symmetric group of
    # the e_i: the orbit of e_1 under them is exactly {e_1, ..., e_r}.
    swaps = root_basis(r)[1:]
    orbit = {point_class(r, 1)}
    frontier = list(orbit)
    while frontier:
        v = frontier.pop()
        for alpha in swaps:
            w = reflect(v, alpha)
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    assert orbit == {point_class(r, i) for i in range(1, r + 1)}


def test_weight_vector_examples():
    assert weight_vector(point_class(6, 6)) == (0, 0, 0, 0, 0, 1)
    assert weight_vector(vec_sub(line_class(6), point_class(6, 1))) == (
        0, 1, 0, 0, 0, 0,
    )
    assert weight_vector(anticanonical_class(6)) == (0,) * 6


def test_subsystem_type_small_cases():
    a1 = [(0, 1, -1, 0, 0), (0, -1, 1, 0, 0)]
    assert subsystem_type(a1).name == "A1"
    with pytest.raises(LatticeError):
        subsystem_type([])
    with pytest.raises(LatticeError):
        subsystem_type([(0, 1, -1, 0, 0)])  # not closed under negation
    with pytest.raises(LatticeError):
        subsystem_type([line_class(4), vec_sub((0,) * 5, line_class(4))])


def test_check_dp_structure_examples():
    k6 = anticanonical_class(6)
    assert check_dp_structure([k6]).ok

    k7 = anticanonical_class(7)
    e7 = point_class(7, 7)
    good = check_dp_structure((e7, vec_sub(k7, e7)), ((0, 2), (2, 0)))
    assert good.ok and good.violations == ()

    bad = check_dp_structure(
        (point_class(7, 1), vec_sub(k7, point_class(7, 2))), ((0, 2), (2, 0))
    )
    assert not bad.ok
    assert any(v.startswith("(i)") for v in bad.violations)

    with pytest.raises(LatticeError):
        check_dp_structure((e7, vec_sub(k7, e7)))
    with pytest.raises(LatticeError):
        check_dp_structure([])


def test_check_dp_structure_reports_condition_three():
    # l-e_1 sums with 2l-e_2-...-e_7 to k and meets it twice, but the
    # partner pairs to -1 with the exceptionals 2l-e_i1-...-e_i5 drawn
    # from {2..7}, so only condition (iii) fails.
    k7 = anticanonical_class(7)
    c = vec_sub(line_class(7), point_class(7, 1))
    report = check_dp_structure((c, vec_sub(k7, c)), ((0, 2), (2, 0)))
    assert not report.ok
    assert report.violations
    assert all(v.startswith("(iii)") for v in report.violations)


def test_check_dp_structure_reports_condition_two():
    k7 = anticanonical_class(7)
    e7 = point_class(7, 7)
    report = check_dp_structure((e7, vec_sub(k7, e7)), ((0, 3), (3, 0)))
    assert not report.ok
    assert all(v.startswith("(ii)") for v in report.violations)


def test_two_component_classification_table():
    rows = [
        (
            d,
            cl.representative[0],
            cl.weights[0],
            cl.kernel_type.name,
            cl.orbit_size,
        )
        for d in (2, 3, 4, 5)
        for cl in classify_two_component_structures(d)
    ]
    assert rows == [
        (2, point_class(7, 7), (0, 0, 0, 0, 0, 0, 1), "E6", 28),
        (3, point_class(6, 6), (0, 0, 0, 0, 0, 1), "D5", 27),
        (4, point_class(5, 5), (0, 0, 0, 0, 1), "A4", 16),
        (4, (1, 1, 0, 0, 0, 0), (0, 1, 0, 0, 0), "D4", 5),
        (5, point_class(4, 4), (0, 0, 0, 1), "A2 + A1", 10),
        (5, (1, 1, 0, 0, 0), (0, 1, 0, 0), "A3", 5),
    ]


def test_two_component_classes_are_structures():
    for d in (2, 3, 4, 5):
        for cl in classify_two_component_structures(d):
            c, partner = cl.representative
            assert check_dp_structure((c, partner), ((0, 2), (2, 0))).ok
            assert cl.weights[1] == tuple(-x for x in cl.weights[0])
            assert pairing(c, partner) == 2


def test_two_component_degree_bounds():
    with pytest.raises(LatticeError):
        classify_two_component_structures(1)
    with pytest.raises(LatticeError):
        classify_two_component_structures(6)


def test_limit_marking_table_shape():
    table = limit_marking()
    assert len(table) == 56
    vectors = [v for _, _, v in table]
    assert len(set(vectors)) == 56
    assert set(vectors) == set(exceptional_vectors(7))
    assert dict(((s, p), v) for s, p, v in table)[(-1, (0, 3))] == point_class(7, 3)
    assert dict(((s, p), v) for s, p, v in table)[(1, (1, 2))] == (
        1, 1, 1, 0, 0, 0, 0, 0,
    )


def test_limit_marking_check_passes():
    report = limit_marking_check()
    assert report.ok
    assert report.checks == 1596
    assert report.violations == ()
    assert report.sign_rule_ok
    assert report.beta_type.name == "A7"


def test_beta_basis_consists_of_even_l_roots():
    root_set = set(roots(7).vectors)
    for b in beta_basis():
        assert b in root_set
        assert b[0] % 2 == 0


def test_theta_torsor_counts():
    report = theta_torsor_check()
    assert report.ok
    assert report.torsor_size == 64
    assert report.classes_hit == 28
    assert report.pairs_collapse
