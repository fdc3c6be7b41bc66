from fractions import Fraction

import pytest

from artifact.tacnode import (
    GaussianRational,
    SeriesError,
    TacnodalFamily,
    branch_sign_trials,
    class_ratio,
    make_section,
    random_family,
    series,
    series_sqrt,
)

I = GaussianRational(Fraction(0), Fraction(1))
ONE = GaussianRational(Fraction(1))


def test_gaussian_rational_arithmetic():
    a = GaussianRational(1, 2)
    b = GaussianRational(3, -1)
    assert a + b == GaussianRational(4, 1)
    assert a - b == GaussianRational(-2, 3)
    assert a * b == GaussianRational(5, 5)
    assert (a * b) / b == a
    assert 1 + I * I == GaussianRational(0)
    assert -a == GaussianRational(-1, -2)
    assert GaussianRational(Fraction(1, 2)) * 2 == ONE
    assert bool(GaussianRational(0)) is False
    with pytest.raises(ZeroDivisionError):
        a / GaussianRational(0)
    with pytest.raises(TypeError):
        GaussianRational(0.5)


def test_gaussian_rational_repr():
    assert repr(GaussianRational(Fraction(1, 2), -3)) == "1/2-3i"
    assert repr(I) == "i"
    assert repr(-I) == "-i"
    assert repr(GaussianRational(-2)) == "-2"
    assert repr(GaussianRational(0, Fraction(1, 2))) == "1/2i"


def test_gaussian_rational_sqrt_branch():
    assert GaussianRational(4).sqrt() == GaussianRational(2)
    assert GaussianRational(Fraction(9, 4)).sqrt() == GaussianRational(Fraction(3, 2))
    assert GaussianRational(-1).sqrt() == I
    assert GaussianRational(-4).sqrt() == 2 * I
    assert GaussianRational(3, 4).sqrt() == GaussianRational(2, 1)
    assert GaussianRational(-3, -4).sqrt() == GaussianRational(1, -2)
    assert GaussianRational(0).sqrt() == GaussianRational(0)
    for value in (GaussianRational(2), I, GaussianRational(1, 1)):
        with pytest.raises(SeriesError):
            value.sqrt()
    # every square is recognized, and the branch squares back
    for square in (GaussianRational(5, -12), GaussianRational(-5, 12)):
        root = square.sqrt()
        assert root * root == square
        assert root.re > 0 or (root.re == 0 and root.im >= 0)


def test_series_factory_and_order():
    s = series([1, 0, -2], 6)
    assert s.truncation == 6
    assert s.order() == 0
    assert series([0, 0, 1], 4).order() == 2
    zero = series([], 3)
    assert zero.is_zero and zero.order() == float("inf")
    with pytest.raises(SeriesError):
        series([1, 2], 1)
    with pytest.raises(SeriesError):
        series([1], 0)
    with pytest.raises(TypeError):
        series([0.5], 2)


def test_series_ring_operations():
    t = series([0, 1], 5)
    one = series([1], 5)
    assert (one + t) * (one - t) == series([1, 0, -1], 5)
    assert (one + t) - (one + t) == series([], 5)
    assert (2 * t) == series([0, 2], 5)
    assert t * Fraction(1, 2) == series([0, Fraction(1, 2)], 5)
    short = series([1, 1], 2)
    assert (t * short).truncation == 2


def test_series_division():
    t = series([0, 1], 6)
    one = series([1], 6)
    assert (one - t * t) / (one + t) == one - t
    cubed = series([0, 0, 0, 1], 6)
    assert cubed / t == series([0, 0, 1], 5)
    assert (cubed / t).truncation == 5
    with pytest.raises(SeriesError):
        t / cubed
    with pytest.raises(SeriesError):
        one / series([], 6)
    geometric = one / (one - t)
    assert geometric == series([1, 1, 1, 1, 1, 1])


def test_series_derivative():
    t = series([0, 1], 6)
    f = series([1, 2, 0, -1], 6)
    g = series([3, 0, 1], 6)
    assert (t * t).derivative() == series([0, 2], 5)
    product_rule = f.derivative() * g + f * g.derivative()
    assert (f * g).derivative() == product_rule.truncate(5)
    assert f.derivative().truncation == 5
    with pytest.raises(SeriesError):
        series([1], 1).derivative()


def test_series_sqrt_examples():
    one_plus_t = series([1, 1], 8)
    root = series_sqrt(one_plus_t)
    assert root.coeffs[:4] == (
        ONE,
        GaussianRational(Fraction(1, 2)),
        GaussianRational(Fraction(-1, 8)),
        GaussianRational(Fraction(1, 16)),
    )
    assert (root * root - one_plus_t).is_zero
    assert series_sqrt(series([0, 0, 4], 6)) == series([0, 2], 5)
    assert series_sqrt(series([0, 0, -1], 6)) == series([0, I], 5)


def test_series_sqrt_errors_and_roundtrip():
    with pytest.raises(SeriesError):
        series_sqrt(series([0, 1], 4))
    with pytest.raises(SeriesError):
        series_sqrt(series([], 4))
    with pytest.raises(SeriesError):
        series_sqrt(series([2, 1], 4))
    s = series([-2, 5, Fraction(1, 3), -1, 2], 9)
    back = series_sqrt(s * s)
    assert back == -s.truncate(back.truncation)
    mixed = series([GaussianRational(0, 2), 1, I], 7)
    root = series_sqrt(mixed)
    assert (root * root - mixed).is_zero


def _toy_family(truncation=16):
    # branch tangents t and -t: b = t^2, c = -t^2
    b = series([0, 0, 1], truncation)
    c = series([0, 0, -1], truncation)
    return TacnodalFamily(b, c)


def test_family_validation():
    f = _toy_family()
    assert f.truncation == 16
    assert f.d == series([0, 0, 1, 0, 1], 16)
    assert f.is_split
    with pytest.raises(SeriesError):
        TacnodalFamily(series([0, 1], 8), series([0, 0, 1], 8))
    with pytest.raises(SeriesError):
        TacnodalFamily(series([0, 0, 1], 8), series([], 8))
    with pytest.raises(SeriesError):
        TacnodalFamily(series([0, 0, 1], 8), series([1, 1], 8))
    with pytest.raises(SeriesError):
        TacnodalFamily(series([0, 0, 1], 8), series([0, 0, -1], 9))


def test_family_split_detection():
    # leading coefficient 3 of c is not a square in the Gaussian rationals
    assert not TacnodalFamily(series([0, 0, 1], 8), series([0, 0, 3], 8)).is_split
    # odd order of c
    assert not TacnodalFamily(series([0, 0, 1], 8), series([0, 0, 0, 1], 8)).is_split


def test_make_section_examples():
    f = _toy_family()
    plus = make_section(f, series([1], 16), 1)
    minus = make_section(f, series([1], 16), -1)
    assert plus.branch == 1 and minus.branch == -1
    assert plus.y.coeffs[0] == ONE
    assert minus.y.coeffs[0] == -ONE
    assert plus.y == -minus.y
    shifted = make_section(f, series([2, 1], 16), 1)
    assert shifted.y.coeffs[0] == GaussianRational(4)
    residual = shifted.y * shifted.y - shifted.x * shifted.x * (
        shifted.x * shifted.x + 2 * f.b * shifted.x + f.c
    )
    assert residual.is_zero


def test_make_section_errors():
    f = _toy_family()
    with pytest.raises(SeriesError):
        make_section(f, series([0, 1], 16), 1)
    with pytest.raises(SeriesError):
        make_section(f, series([1], 16), 0)


def test_class_ratio_identity_and_signs():
    f = _toy_family()
    s_plus = make_section(f, series([1], 16), 1)
    s_minus = make_section(f, series([2, -1], 16), -1)
    s_other = make_section(f, series([-3, 0, 1], 16), 1)
    same = class_ratio(f, s_plus, s_plus)
    assert same.coeffs[0] == ONE and not any(same.coeffs[1:])
    assert class_ratio(f, s_plus, s_other).coeffs[0] == ONE
    assert class_ratio(f, s_plus, s_minus).coeffs[0] == -ONE
    assert class_ratio(f, s_minus, s_plus).coeffs[0] == -ONE


def test_class_ratio_cocycle():
    f = random_family(11, 1, 16)
    a = make_section(f, series([1, 1], 16), 1)
    b = make_section(f, series([2, 0, -1], 16), -1)
    c = make_section(f, series([-1, 2], 16), -1)
    r_ab = class_ratio(f, a, b)
    r_bc = class_ratio(f, b, c)
    r_ac = class_ratio(f, a, c)
    product = r_ab * r_bc
    common = min(product.truncation, r_ac.truncation)
    assert product.truncate(common) == r_ac.truncate(common)


def test_class_ratio_requires_split_family():
    f = TacnodalFamily(series([0, 0, 1], 8), series([0, 0, 3], 8))
    section = make_section(f, series([1], 8), 1)
    with pytest.raises(SeriesError):
        class_ratio(f, section, section)


def test_class_ratio_rejects_foreign_sections():
    f = _toy_family()
    g = random_family(3, 1, 16)
    section = make_section(g, series([1], 16), 1)
    with pytest.raises(SeriesError):
        class_ratio(f, section, section)


def test_random_family_shape():
    f = random_family(7, 1, 16)
    assert f.truncation == 16
    assert f.c.order() == 2
    assert (f.b * f.b).order() >= 4
    assert f.is_split
    assert random_family(7, 1, 16) == f
    assert random_family(8, 1, 16) != f
    f3 = random_family(7, 3, 16)
    assert f3.c.order() == 6
    with pytest.raises(SeriesError):
        random_family(7, 0, 16)
    with pytest.raises(SeriesError):
        random_family(7, 4, 16)


def test_random_family_branch_tangents():
    # u, v with c = uv and b = -(u+v)/2 are recovered from -b +- sqrt(d)
    f = random_family(21, 2, 16)
    root = series_sqrt(f.d)
    u = -f.b + root
    v = -f.b - root
    assert (u * v - f.c.truncate(u.truncation)).is_zero
    assert u.order() == 2 and v.order() == 2
    assert u.coeffs[2] == -v.coeffs[2]
    assert u.coeffs[2].im == 0 and 1 <= abs(u.coeffs[2].re) <= 5


def test_truncation_refinement_agrees():
    coarse = random_family(5, 1, 16)
    fine = random_family(5, 1, 32)
    assert fine.b.truncate(16) == coarse.b
    assert fine.c.truncate(16) == coarse.c
    x1 = [2, 1, 0, -1]
    x2 = [-1, 0, 3]
    ratio_coarse = class_ratio(
        coarse,
        make_section(coarse, series(x1, 16), 1),
        make_section(coarse, series(x2, 16), -1),
    )
    ratio_fine = class_ratio(
        fine,
        make_section(fine, series(x1, 32), 1),
        make_section(fine, series(x2, 32), -1),
    )
    assert ratio_fine.truncate(ratio_coarse.truncation) == ratio_coarse
    assert ratio_coarse.coeffs[0] == -ONE


def test_branch_sign_trials():
    report = branch_sign_trials(trials=30, truncation=16, seed=0)
    assert report.trials == 30
    assert report.failures == 0
    assert report.ok and bool(report)
    assert len(report.examples) == 3
    for example in report.examples:
        assert example["constant_term"] in ("1", "-1")
        expected = example["branches"][0] * example["branches"][1]
        assert example["constant_term"] == ("1" if expected == 1 else "-1")
    assert branch_sign_trials(trials=5, truncation=16, seed=0, k=2).ok
    with pytest.raises(SeriesError):
        branch_sign_trials(trials=0)
    with pytest.raises(SeriesError):
        branch_sign_trials(trials=1, truncation=4)
    with pytest.raises(SeriesError):
        branch_sign_trials(trials=1, truncation=16, k=4)
