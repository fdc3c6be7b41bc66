"""Exact series arithmetic for tacnodal degenerations of nodal curves.

A family y^2 = x^2 (x^2 + 2 b x + c) over the formal disc, with b and c
power series in t subject to ord(b^2) > ord(c) > 0, has nodal generic
fiber and a tacnodal special fiber whose smooth locus falls into the two
branches y = x^2 and y = -x^2 + O(t).  When the family is split (ord(c)
even and sqrt(c), sqrt(d) with d = b^2 - c exist over the coefficient
field), the coordinate

    u = (x^2 + y + x sqrt(c)) / (x^2 + y - x sqrt(c))

identifies the degree-zero relative Picard group over the punctured disc
with units, sending a difference of sections (s1) - (s2) to u(s1)/u(s2).
That ratio takes the value +1 at t = 0 when the two sections hit the same
branch of the special fiber and -1 otherwise.  All series are truncated
with Gaussian-rational coefficients, so the sign comes out as an exact
constant-term identity rather than a numerical limit.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import inf, isqrt

__all__ = [
    "SeriesError",
    "GaussianRational",
    "TruncatedSeries",
    "series",
    "series_sqrt",
    "TacnodalFamily",
    "CurveSection",
    "make_section",
    "class_ratio",
    "random_family",
    "branch_sign_trials",
    "TrialReport",
]


class SeriesError(ValueError):
    """A series operation left its domain of validity."""


def _exact_root(value: Fraction) -> Fraction | None:
    # Square root inside the rationals, or None when there is none.
    if value < 0:
        return None
    num = isqrt(value.numerator)
    den = isqrt(value.denominator)
    if num * num != value.numerator or den * den != value.denominator:
        return None
    return Fraction(num, den)


@dataclass(frozen=True, repr=False)
class GaussianRational:
    """An element re + im*i of the field of Gaussian rationals."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for field in ("re", "im"):
            value = getattr(self, field)
            if isinstance(value, float):
                raise TypeError("coefficients must be exact, not floating point")
            object.__setattr__(self, field, Fraction(value))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other: object) -> GaussianRational:
        other = _coefficient(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: object) -> GaussianRational:
        other = _coefficient(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: object) -> GaussianRational:
        other = _coefficient(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other: object) -> GaussianRational:
        other = _coefficient(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> GaussianRational:
        other = _coefficient(other)
        if other is None:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if not norm:
            raise ZeroDivisionError("division by zero")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other: object) -> GaussianRational:
        other = _coefficient(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def sqrt(self) -> GaussianRational:
        """The square root with nonnegative real part, ties broken toward
        nonnegative imaginary part.  Raises SeriesError when the element is
        not a square in the Gaussian rationals."""
        if not self:
            return GaussianRational(Fraction(0))
        if not self.im:
            root = _exact_root(self.re)
            if root is not None:
                return GaussianRational(root)
            root = _exact_root(-self.re)
            if root is not None:
                return GaussianRational(Fraction(0), root)
        else:
            # re + im*i = (x + y*i)^2 forces x^2 = (re + |self|)/2, y = im/2x.
            length = _exact_root(self.re * self.re + self.im * self.im)
            if length is not None:
                real = _exact_root((self.re + length) / 2)
                if real:
                    return GaussianRational(real, self.im / (2 * real))
        raise SeriesError(f"{self} is not a square in the Gaussian rationals")

    def __repr__(self) -> str:
        if not self.im:
            return str(self.re)
        imag = "i" if abs(self.im) == 1 else f"{abs(self.im)}i"
        if not self.re:
            return imag if self.im > 0 else "-" + imag
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{imag}"


_ZERO = GaussianRational(Fraction(0))
_ONE = GaussianRational(Fraction(1))


def _coefficient(value: object) -> GaussianRational | None:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(Fraction(value))
    return None


@dataclass(frozen=True, repr=False)
class TruncatedSeries:
    """A power series in t known exactly through degree truncation - 1."""

    coeffs: tuple[GaussianRational, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise SeriesError("truncation must be at least 1")
        if not all(isinstance(c, GaussianRational) for c in coeffs):
            raise TypeError("coefficients must be Gaussian rationals")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def truncation(self) -> int:
        return len(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def order(self) -> int | float:
        for index, value in enumerate(self.coeffs):
            if value:
                return index
        return inf

    def truncate(self, truncation: int) -> TruncatedSeries:
        if not 1 <= truncation <= len(self.coeffs):
            raise SeriesError("cannot truncate beyond the known coefficients")
        return TruncatedSeries(self.coeffs[:truncation])

    def __add__(self, other: object) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return TruncatedSeries(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: object) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return TruncatedSeries(
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(tuple(-a for a in self.coeffs))

    def __mul__(self, other: object) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            size = min(len(self.coeffs), len(other.coeffs))
            out = []
            for degree in range(size):
                total = _ZERO
                for i in range(degree + 1):
                    total = total + self.coeffs[i] * other.coeffs[degree - i]
                out.append(total)
            return TruncatedSeries(tuple(out))
        scalar = _coefficient(other)
        if scalar is None:
            return NotImplemented
        return TruncatedSeries(tuple(scalar * a for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            scalar = _coefficient(other)
            if scalar is None:
                return NotImplemented
            return TruncatedSeries(tuple(a / scalar for a in self.coeffs))
        shift = other.order()
        if shift is inf:
            raise SeriesError("division by a series that vanishes through truncation")
        if self.order() < shift:
            raise SeriesError("quotient would have a pole at t = 0")
        size = min(len(self.coeffs), len(other.coeffs)) - shift
        if size < 1:
            raise SeriesError("insufficient precision for the quotient")
        num = self.coeffs[shift:shift + size]
        den = other.coeffs[shift:shift + size]
        out: list[GaussianRational] = []
        for degree in range(size):
            total = num[degree]
            for i in range(1, degree + 1):
                total = total - den[i] * out[degree - i]
            out.append(total / den[0])
        return TruncatedSeries(tuple(out))

    def derivative(self) -> TruncatedSeries:
        if len(self.coeffs) < 2:
            raise SeriesError("derivative needs truncation at least 2")
        return TruncatedSeries(
            tuple((i + 1) * c for i, c in enumerate(self.coeffs[1:]))
        )

    def __repr__(self) -> str:
        terms = []
        for degree, value in enumerate(self.coeffs):
            if not value:
                continue
            text = repr(value)
            if "+" in text[1:] or "-" in text[1:]:
                text = f"({text})"
            if degree == 0:
                terms.append(text)
            else:
                power = "t" if degree == 1 else f"t^{degree}"
                terms.append(power if text == "1" else f"{text}*{power}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(t^{len(self.coeffs)})"


def series(values, truncation: int | None = None) -> TruncatedSeries:
    """Build a TruncatedSeries from low-degree coefficients, padding with
    zeros up to the requested truncation."""
    coeffs = []
    for value in values:
        coefficient = _coefficient(value)
        if coefficient is None:
            raise TypeError(f"cannot use {value!r} as a series coefficient")
        coeffs.append(coefficient)
    if truncation is None:
        truncation = len(coeffs)
    if truncation < 1:
        raise SeriesError("truncation must be at least 1")
    if len(coeffs) > truncation:
        raise SeriesError("more coefficients than the truncation allows")
    return TruncatedSeries(tuple(coeffs) + (_ZERO,) * (truncation - len(coeffs)))


def series_sqrt(s: TruncatedSeries) -> TruncatedSeries:
    """The square root branch whose leading coefficient has nonnegative real
    part (ties toward nonnegative imaginary part).

    The order of s must be even and its leading coefficient a square in the
    Gaussian rationals; the result is exact through truncation - order/2.
    """
    if s.is_zero:
        raise SeriesError("the zero series has no determined square root")
    order = s.order()
    if order % 2:
        raise SeriesError(f"series of odd order {order} has no square root")
    half = order // 2
    unit = s.coeffs[order:]
    lead = unit[0].sqrt()
    out = [lead]
    double = lead + lead
    for degree in range(1, len(unit)):
        total = unit[degree]
        for i in range(1, degree):
            total = total - out[i] * out[degree - i]
        out.append(total / double)
    return TruncatedSeries((_ZERO,) * half + tuple(out))


@dataclass(frozen=True)
class TacnodalFamily:
    """The double cover y^2 = x^2 (x^2 + 2 b x + c) of the projective line
    over the formal disc.

    Good tacnodal degeneration means ord(b^2) > ord(c) > 0 with c (hence
    d = b^2 - c) nonzero through the truncation; the constructor rejects
    anything else.  The family is split when ord(c) is even and sqrt(c),
    sqrt(d) exist over the Gaussian rationals.
    """

    b: TruncatedSeries
    c: TruncatedSeries

    def __post_init__(self) -> None:
        if self.b.truncation != self.c.truncation:
            raise SeriesError("b and c must share a truncation")
        c_order = self.c.order()
        if c_order is inf:
            raise SeriesError("c vanishes through the truncation")
        if c_order < 1:
            raise SeriesError("good tacnodal degeneration needs ord(c) > 0")
        if (self.b * self.b).order() <= c_order:
            raise SeriesError("good tacnodal degeneration needs ord(b^2) > ord(c)")
        if (self.b * self.b - self.c).is_zero:
            raise SeriesError("d = b^2 - c vanishes through the truncation")

    @property
    def truncation(self) -> int:
        return self.b.truncation

    @property
    def d(self) -> TruncatedSeries:
        return self.b * self.b - self.c

    @property
    def is_split(self) -> bool:
        try:
            series_sqrt(self.c)
            series_sqrt(self.d)
        except SeriesError:
            return False
        return True


@dataclass(frozen=True)
class CurveSection:
    """A section t -> (x(t), y(t)) of a tacnodal family, missing the
    singular point of the special fiber; branch is the sign with
    y = branch * x^2 modulo t.  Built by make_section, which checks the
    curve equation through the truncation."""

    x: TruncatedSeries
    y: TruncatedSeries
    branch: int


def make_section(f: TacnodalFamily, x: TruncatedSeries, branch: int) -> CurveSection:
    """The section over x(t) on the prescribed branch of the special fiber.

    x(0) must be nonzero; y is branch * x * sqrt(x^2 + 2bx + c) with the
    square root normalized to equal x at t = 0.
    """
    if branch not in (1, -1):
        raise SeriesError("branch must be +1 or -1")
    if not x.coeffs[0]:
        raise SeriesError("the section would pass through the singular point")
    root = series_sqrt(x * x + 2 * f.b * x + f.c)
    if root.coeffs[0] != x.coeffs[0]:
        root = -root
    return CurveSection(x, branch * (x * root), branch)


def _on_family(f: TacnodalFamily, s: CurveSection) -> bool:
    residual = s.y * s.y - s.x * s.x * (s.x * s.x + 2 * f.b * s.x + f.c)
    return residual.is_zero


def class_ratio(
    f: TacnodalFamily, s1: CurveSection, s2: CurveSection
) -> TruncatedSeries:
    """The image of the divisor class (s1) - (s2) in the degree-zero Picard
    group of the generic fiber, as a unit series: u(s1)/u(s2) for the
    coordinate u = (x^2 + y + x sqrt(c)) / (x^2 + y - x sqrt(c)).

    Its value at t = 0 is +1 when the sections meet the same branch of the
    special fiber and -1 otherwise.  Requires a split family.
    """
    try:
        root = series_sqrt(f.c)
    except SeriesError as error:
        raise SeriesError("the family is not split") from error
    for section in (s1, s2):
        if not _on_family(f, section):
            raise SeriesError("section does not satisfy the family equation")
    num1 = s1.x * s1.x + s1.y + s1.x * root
    den1 = s1.x * s1.x + s1.y - s1.x * root
    num2 = s2.x * s2.x + s2.y + s2.x * root
    den2 = s2.x * s2.x + s2.y - s2.x * root
    return (num1 * den2) / (den1 * num2)


_SMALL_NONZERO = (-5, -4, -3, -2, -1, 1, 2, 3, 4, 5)


def random_family(seed: int, k: int = 1, truncation: int = 16) -> TacnodalFamily:
    """A deterministic pseudo-random split good tacnodal degeneration.

    The branch tangents are built first, as u = alpha t^k (1 + t p(t)) and
    v = -alpha t^k (1 + t q(t)) with small random integer coefficients, and
    then b = -(u + v)/2, c = u v.  This makes ord(c) = 2k, ord(b^2) >= 2k + 2
    and sqrt(d) = (u - v)/2 exact, so the family is split by construction.
    Requires k >= 1 and truncation > 4k.
    """
    if k < 1 or truncation <= 4 * k:
        raise SeriesError("random_family needs k >= 1 and truncation > 4k")
    rng = random.Random(seed)
    alpha = rng.choice(_SMALL_NONZERO)
    u_coeffs = [0] * truncation
    v_coeffs = [0] * truncation
    u_coeffs[k] = alpha
    v_coeffs[k] = -alpha
    for degree in range(k + 1, truncation):
        u_coeffs[degree] = alpha * rng.randint(-3, 3)
        v_coeffs[degree] = -alpha * rng.randint(-3, 3)
    u = series(u_coeffs)
    v = series(v_coeffs)
    b = (u + v) * Fraction(-1, 2)
    return TacnodalFamily(b, u * v)


@dataclass(frozen=True)
class TrialReport:
    """Aggregate of randomized branch-sign trials."""

    trials: int
    failures: int
    examples: tuple

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def __bool__(self) -> bool:
        return self.ok


def _random_unit(rng: random.Random, truncation: int) -> TruncatedSeries:
    coeffs = [rng.choice(_SMALL_NONZERO)]
    coeffs.extend(rng.randint(-3, 3) for _ in range(truncation - 1))
    return series(coeffs)


def branch_sign_trials(
    trials: int = 100,
    truncation: int = 16,
    seed: int = 0,
    k: int | None = None,
) -> TrialReport:
    """Run randomized checks of the branch sign rule: for a random split
    family and two random sections, the class ratio at t = 0 must equal the
    product of the two branch signs.  A trial that violates this counts as
    a failure; the report keeps the first few trials as examples."""
    if trials < 1:
        raise SeriesError("need at least one trial")
    orders = [k] if k is not None else [n for n in (1, 2, 3) if truncation > 4 * n]
    if not orders or orders[0] < 1 or truncation <= 4 * orders[-1]:
        raise SeriesError("branch_sign_trials needs k >= 1 and truncation > 4k")
    rng = random.Random(seed)
    failures = 0
    examples = []
    for _ in range(trials):
        order = rng.choice(orders)
        family = random_family(rng.randrange(2**32), order, truncation)
        first = make_section(family, _random_unit(rng, truncation), rng.choice((1, -1)))
        second = make_section(family, _random_unit(rng, truncation), rng.choice((1, -1)))
        value = class_ratio(family, first, second).coeffs[0]
        expected = GaussianRational(Fraction(first.branch * second.branch))
        if value != expected:
            failures += 1
        if len(examples) < 3:
            examples.append(
                {
                    "k": order,
                    "branches": [first.branch, second.branch],
                    "constant_term": repr(value),
                }
            )
    return TrialReport(trials, failures, tuple(examples))
