"""Truncated power series in ``t`` over motive ratios.

Series carry a twist exponent ``w``: the product obeys
``t^a * t^b = L^(w*a*b) t^(a+b)``.  ``w = 0`` is the ordinary product and
``w = m - 1`` is the product used for Brauer-Severi generating series.

The plethystic exponential is computed through Adams operations,
``Exp(f) = exp(sum_k psi_k(f)(t^k) / k)``, using the Newton recurrence
``n g_n = sum_i h_i g_{n-i}`` with ``h_n = sum_{d | n} d psi_{n/d}(f_d)``.
Every integer division along the way is checked for exactness.
"""

from __future__ import annotations

from typing import Iterable

from .errors import NonIntegralExp, TwistMismatch, UnsupportedAdams, UnsupportedCoefficient
from .motive import L, MotiveClass, MotiveRatio, laurent_expand

__all__ = [
    "Series",
    "series_mul",
    "geometric_fraction",
    "pleth_exp",
    "pleth_log",
    "exp_product_form",
    "laurent_truncate",
    "mobius",
    "conjecture_term",
    "conjecture_coefficient",
]


def _ratio(value) -> MotiveRatio:
    return MotiveRatio.coerce(value)


class Series:
    """Coefficients ``c_0 .. c_N`` of a series truncated at order ``N``."""

    __slots__ = ("coeffs", "twist")

    def __init__(self, coeffs: Iterable, twist: int = 0):
        coeffs = tuple(_ratio(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        if twist < 0:
            raise ValueError("twist must be non-negative")
        self.coeffs = coeffs
        self.twist = twist

    @classmethod
    def zero(cls, order: int, twist: int = 0) -> Series:
        return cls([0] * (order + 1), twist)

    @classmethod
    def one(cls, order: int, twist: int = 0) -> Series:
        return cls([1] + [0] * order, twist)

    @classmethod
    def monomial(cls, coeff, power: int, order: int, twist: int = 0) -> Series:
        coeffs: list = [0] * (order + 1)
        if power <= order:
            coeffs[power] = coeff
        return cls(coeffs, twist)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> MotiveRatio:
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def _check(self, other: Series) -> None:
        if self.twist != other.twist:
            raise TwistMismatch(f"twists {self.twist} and {other.twist} differ")
        if self.order != other.order:
            raise ValueError(f"truncation orders {self.order} and {other.order} differ")

    def _lift(self, other) -> Series:
        if isinstance(other, Series):
            self._check(other)
            return other
        return Series.monomial(other, 0, self.order, self.twist)

    def __add__(self, other) -> Series:
        other = self._lift(other)
        return Series((a + b for a, b in zip(self.coeffs, other.coeffs)), self.twist)

    __radd__ = __add__

    def __neg__(self) -> Series:
        return Series((-a for a in self.coeffs), self.twist)

    def __sub__(self, other) -> Series:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Series:
        return self._lift(other) - self

    def __mul__(self, other) -> Series:
        if isinstance(other, Series):
            return series_mul(self, other)
        c = _ratio(other)
        return Series((c * a for a in self.coeffs), self.twist)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Series:
        if isinstance(other, Series):
            return self * other.inverse()
        c = _ratio(other)
        return Series((a / c for a in self.coeffs), self.twist)

    def __rtruediv__(self, other) -> Series:
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int) -> Series:
        if k < 0:
            return self.inverse() ** (-k)
        result = Series.one(self.order, self.twist)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.twist == other.twist
            and self.order == other.order
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    __hash__ = None  # type: ignore[assignment]

    def truncate(self, order: int) -> Series:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return Series(self.coeffs[: order + 1], self.twist)

    def with_twist(self, twist: int) -> Series:
        return Series(self.coeffs, twist)

    def first_mismatch(self, other: Series) -> int | None:
        self._check(other)
        for n, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return n
        return None

    def substitute_power(self, k: int) -> Series:
        """``t -> t^k`` (same truncation order)."""
        coeffs: list = [0] * (self.order + 1)
        for n, c in enumerate(self.coeffs):
            if n * k <= self.order:
                coeffs[n * k] = c
        return Series(coeffs, self.twist)

    def scale_variable(self, factor) -> Series:
        """``t -> factor * t``."""
        factor = _ratio(factor)
        out = []
        power = MotiveRatio(1)
        for c in self.coeffs:
            out.append(c * power)
            power = power * factor
        return Series(out, self.twist)

    def adams(self, k: int) -> Series:
        """Apply ``psi_k`` to every coefficient (``t`` untouched)."""
        return Series((c.adams(k) for c in self.coeffs), self.twist)

    def inverse(self) -> Series:
        if self.twist:
            raise TwistMismatch("inversion is only implemented for the ordinary product")
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv = [MotiveRatio(1) / c0]
        for n in range(1, self.order + 1):
            acc = MotiveRatio(0)
            for i in range(1, n + 1):
                acc = acc + self.coeffs[i] * inv[n - i]
            inv.append(-acc / c0)
        return Series(inv, 0)

    def has_tags(self) -> bool:
        return any(not c.is_tag_free() for c in self.coeffs)

    def to_json(self) -> dict:
        return {"twist": self.twist, "order": self.order, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> Series:
        coeffs = [MotiveRatio.from_json(c) for c in data["coeffs"]]
        if "order" in data and int(data["order"]) != len(coeffs) - 1:
            raise ValueError("series order does not match the number of coefficients")
        return cls(coeffs, int(data.get("twist", 0)))

    def __str__(self) -> str:
        parts = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            text = str(c)
            if n and (" " in text):
                text = f"({text})"
            power = "t" if n == 1 else f"t^{n}"
            if n == 0:
                parts.append(text)
            elif text == "1":
                parts.append(power)
            else:
                parts.append(f"{text}*{power}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(t^{self.order + 1})"

    def __repr__(self) -> str:
        return f"Series({str(self)!r}, twist={self.twist})"


def series_mul(a: Series, b: Series) -> Series:
    a._check(b)
    w = a.twist
    out = []
    for k in range(a.order + 1):
        acc = MotiveRatio(0)
        for i in range(k + 1):
            x, y = a.coeffs[i], b.coeffs[k - i]
            if x.is_zero() or y.is_zero():
                continue
            term = x * y
            if w:
                term = term * (L ** (w * i * (k - i)))
            acc = acc + term
        out.append(acc)
    return Series(out, w)


def geometric_fraction(a, period: int, order: int) -> Series:
    """``a * t^p / (1 - t^p)`` truncated at ``order``."""
    if period < 1:
        raise ValueError("period must be positive")
    a = _ratio(a)
    coeffs: list = [0] * (order + 1)
    for n in range(period, order + 1, period):
        coeffs[n] = a
    return Series(coeffs, 0)


def mobius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _prepare(f: Series, order: int, what: str) -> Series:
    if f.twist:
        raise TwistMismatch(f"{what} is defined for untwisted series only")
    if f.order < order:
        raise ValueError(f"series known to order {f.order}, {what} requested to {order}")
    f = f.truncate(order)
    if order > 2 and f.has_tags():
        raise UnsupportedAdams(f"{what} of Mt-bearing series is only available to order 2")
    return f


def pleth_exp(f: Series, order: int | None = None) -> Series:
    """Plethystic exponential of a series without constant term."""
    order = f.order if order is None else order
    f = _prepare(f, order, "Exp")
    if not f[0].is_zero():
        raise ValueError("Exp needs a series without constant term")
    h = [MotiveRatio(0)]
    for n in range(1, order + 1):
        acc = MotiveRatio(0)
        for d in _divisors(n):
            if not f[d].is_zero():
                acc = acc + f[d].adams(n // d) * d
        h.append(acc)
    g = [MotiveRatio(1)]
    for n in range(1, order + 1):
        acc = MotiveRatio(0)
        for i in range(1, n + 1):
            acc = acc + h[i] * g[n - i]
        g.append(acc.div_int(n, error=NonIntegralExp))
    return Series(g, 0)


def pleth_log(g: Series, order: int | None = None) -> Series:
    """Inverse of :func:`pleth_exp` on series with constant term 1."""
    order = g.order if order is None else order
    g = _prepare(g, order, "Log")
    if g[0] != 1:
        raise ValueError("Log needs a series with constant term 1")
    # a_n = n [t^n] log g, from t g' = (t (log g)') g
    a = [MotiveRatio(0)]
    for n in range(1, order + 1):
        acc = g[n] * n
        for i in range(1, n):
            acc = acc - a[i] * g[n - i]
        a.append(acc)
    f = [MotiveRatio(0)]
    for n in range(1, order + 1):
        acc = MotiveRatio(0)
        for d in _divisors(n):
            mu = mobius(n // d)
            if mu and not a[d].is_zero():
                acc = acc + a[d].adams(n // d) * mu
        f.append(acc.div_int(n, error=NonIntegralExp))
    return Series(f, 0)


def laurent_truncate(s: Series, lmin: int) -> Series:
    """Expand every coefficient in powers of ``1/L``, keeping exponents ``>= lmin``."""
    return Series((laurent_expand(c, 2 * lmin) for c in s.coeffs), s.twist)


def exp_product_form(f: Series, order: int, lmin: int) -> Series:
    """Exp as the truncated product ``prod (1 - L^j t^n)^(-c)``.

    Each coefficient of ``f`` is expanded in decreasing powers of ``L``; the
    result is exact for all ``L``-exponents ``>= lmin``.
    """
    f = _prepare(f, order, "Exp")
    if f.has_tags():
        raise UnsupportedCoefficient("the product form needs coefficients free of Mt")
    if not f[0].is_zero():
        raise ValueError("Exp needs a series without constant term")
    tops = [c.num.max_e2() - c.den.max_e2() for c in f.coeffs[1:] if not c.is_zero()]
    budget = order * max([0] + tops)
    work_min = 2 * lmin - budget
    factors: list[tuple[int, int, int]] = []
    for n in range(1, order + 1):
        if f[n].is_zero():
            continue
        expansion = laurent_expand(f[n], work_min)
        for (e2, _), c in expansion.items():
            if e2 % 2:
                raise UnsupportedCoefficient("half powers of L have no product form here")
            factors.append((n, e2, c))
    result: list[dict[int, int]] = [{0: 1}] + [{} for _ in range(order)]
    for n, e2, c in sorted(factors):
        # (1 - x)^(-c) = sum_k binom(c + k - 1, k) x^k, x = L^(e2/2) t^n
        terms = []
        for k in range(1, order // n + 1):
            coef = _rising_binomial(c, k)
            if coef:
                terms.append((n * k, e2 * k, coef))
        if not terms:
            continue
        new = [dict(r) for r in result]
        for deg in range(order + 1):
            for pdeg, pe2, pc in terms:
                if deg + pdeg > order:
                    continue
                target = new[deg + pdeg]
                for e, v in result[deg].items():
                    e_new = e + pe2
                    if e_new < work_min:
                        continue
                    target[e_new] = target.get(e_new, 0) + v * pc
        result = new
    coeffs = []
    for r in result:
        coeffs.append(MotiveClass({(e, 0): v for e, v in r.items() if e >= 2 * lmin}))
    return Series(coeffs, 0)


def _rising_binomial(c: int, k: int) -> int:
    """``binom(c + k - 1, k)`` for any integer ``c``."""
    num = 1
    for i in range(k):
        num *= c + i
    den = 1
    for i in range(2, k + 1):
        den *= i
    return num // den


def conjecture_term(motive, period: int, order: int) -> Series:
    """``-M / (L^(1/2) - L^(-1/2)) * t^p / (1 - t^p)``.

    Converts a denominator-free motive ``M`` from the conjectural Exp form into
    the bracket normalisation used by :func:`pleth_exp`.
    """
    coeff = conjecture_coefficient(motive)
    return geometric_fraction(coeff, period, order)


def conjecture_coefficient(motive) -> MotiveRatio:
    """``-M / (L^(1/2) - L^(-1/2))``."""
    root = MotiveClass({(1, 0): 1, (-1, 0): -1})
    return -MotiveRatio.coerce(motive) / MotiveRatio(root)


def conjecture_motive(coefficient) -> MotiveRatio:
    """Inverse of :func:`conjecture_coefficient`."""
    root = MotiveClass({(1, 0): 1, (-1, 0): -1})
    return -MotiveRatio.coerce(coefficient) * MotiveRatio(root)
