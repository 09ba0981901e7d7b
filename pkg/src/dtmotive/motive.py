"""Exact arithmetic with naive equivariant motives.

A :class:`MotiveClass` is a finite integer combination of monomials
``L^(e2/2) * g`` where ``L`` is the Lefschetz motive and ``g`` is one of the
formal generators ``1``, ``Mt`` and ``Mt2``.  Here ``Mt = 1 - [mu_3]`` and
``Mt2`` stands for its square, which is kept as an irreducible symbol.
Exponents are stored doubled (``e2``) so half powers of ``L`` stay integral.

:class:`MotiveRatio` is a quotient of two classes.  Ratios are never brought
into a canonical form with a polynomial gcd; equality is decided by
cross-multiplication.  A cheap reduction does cancel integer content, powers
of ``L`` and cyclotomic factors, which is enough to keep the denominators
that occur in practice (products of ``L^k - 1``) small.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import (
    FractionalExponent,
    NonExactDivision,
    NonIntegralSigma,
    UnreducedEquivariantPower,
    UnsupportedAdams,
    UnsupportedCoefficient,
)

UNIT, MTILDE, MTILDE2 = 0, 1, 2
TAG_NAMES = ("1", "Mt", "Mt2")
_TAG_BY_NAME = {name: i for i, name in enumerate(TAG_NAMES)}

_MAX_CYCLOTOMIC = 48


def _tag_product(a: int, b: int) -> int:
    if a == UNIT:
        return b
    if b == UNIT:
        return a
    if a == MTILDE and b == MTILDE:
        return MTILDE2
    raise UnreducedEquivariantPower(
        f"product {TAG_NAMES[a]}*{TAG_NAMES[b]} is not reduced in this ring"
    )


class MotiveClass:
    """Immutable integer combination of ``L^(e2/2) * tag`` monomials."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean: dict[tuple[int, int], int] = {}
        for (e2, tag), c in (terms or {}).items():
            if tag not in (UNIT, MTILDE, MTILDE2):
                raise ValueError(f"unknown equivariant tag {tag!r}")
            c = int(c)
            if c:
                clean[(int(e2), tag)] = c
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c: int) -> MotiveClass:
        return cls({(0, UNIT): c})

    @classmethod
    def lefschetz(cls, power: int | Fraction = 1) -> MotiveClass:
        e2 = Fraction(power) * 2
        if e2.denominator != 1:
            raise FractionalExponent(f"L^{power}: only half-integer powers exist")
        return cls({(int(e2), UNIT): 1})

    @classmethod
    def mtilde(cls) -> MotiveClass:
        return cls({(0, MTILDE): 1})

    @classmethod
    def mtilde2(cls) -> MotiveClass:
        return cls({(0, MTILDE2): 1})

    @classmethod
    def mu3(cls) -> MotiveClass:
        """The class ``[mu_3]``, stored as ``1 - Mt``."""
        return cls({(0, UNIT): 1, (0, MTILDE): -1})

    @classmethod
    def from_polynomial(cls, coeffs: Iterable[int], tag: int = UNIT) -> MotiveClass:
        """``coeffs[i]`` is the coefficient of ``L^i``."""
        return cls({(2 * i, tag): c for i, c in enumerate(coeffs)})

    @classmethod
    def coerce(cls, value) -> MotiveClass:
        if isinstance(value, MotiveClass):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not motives")
        if isinstance(value, int):
            return cls.constant(value)
        if isinstance(value, Fraction) and value.denominator == 1:
            return cls.constant(value.numerator)
        raise TypeError(f"cannot interpret {value!r} as a MotiveClass")

    @classmethod
    def parse(cls, text: str) -> MotiveClass:
        from .expr import parse_motive

        value = parse_motive(text)
        if isinstance(value, MotiveRatio):
            return value.as_class()
        return value

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def tags(self) -> set[int]:
        return {tag for (_, tag) in self._terms}

    def is_tag_free(self) -> bool:
        return self.tags() <= {UNIT}

    def min_e2(self) -> int:
        return min(e2 for e2, _ in self._terms)

    def max_e2(self) -> int:
        return max(e2 for e2, _ in self._terms)

    def has_half_powers(self) -> bool:
        return any(e2 % 2 for e2, _ in self._terms)

    def component(self, tag: int) -> MotiveClass:
        """The tag-free class multiplying ``tag``."""
        return MotiveClass({(e2, UNIT): c for (e2, t), c in self._terms.items() if t == tag})

    def split(self) -> tuple[MotiveClass, MotiveClass, MotiveClass]:
        """Return ``(A, B, C)`` with ``self = A + B*Mt + C*Mt2``."""
        return self.component(UNIT), self.component(MTILDE), self.component(MTILDE2)

    def split_mu3(self) -> tuple[MotiveClass, MotiveClass, MotiveClass]:
        """Return ``(A, B, C)`` with ``self = A + B*[mu3] + C*[mu3]^2``.

        Uses ``Mt = 1 - [mu3]`` and ``Mt2 = (1 - [mu3])^2``.
        """
        a, b, c = self.split()
        return a + b + c, -b - 2 * c, c

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        return g

    def leading_coefficient(self) -> int:
        key = max(self._terms, key=lambda k: (k[0], -k[1]))
        return self._terms[key]

    def shift(self, e2: int) -> MotiveClass:
        """Multiply by ``L^(e2/2)``."""
        return MotiveClass({(k + e2, t): c for (k, t), c in self._terms.items()})

    def map_coefficients(self, fn) -> MotiveClass:
        return MotiveClass({k: fn(c) for k, c in self._terms.items()})

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> MotiveClass:
        try:
            other = MotiveClass.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return MotiveClass(out)

    __radd__ = __add__

    def __neg__(self) -> MotiveClass:
        return MotiveClass({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> MotiveClass:
        try:
            other = MotiveClass.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> MotiveClass:
        return MotiveClass.coerce(other) - self

    def __mul__(self, other) -> MotiveClass:
        if isinstance(other, MotiveRatio):
            return NotImplemented
        try:
            other = MotiveClass.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[tuple[int, int], int] = {}
        for (e1, t1), c1 in self._terms.items():
            for (e2, t2), c2 in other._terms.items():
                key = (e1 + e2, _tag_product(t1, t2))
                out[key] = out.get(key, 0) + c1 * c2
        return MotiveClass(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MotiveClass:
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = MotiveClass.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other) -> MotiveRatio:
        if isinstance(other, MotiveRatio):
            return MotiveRatio(self) / other
        return MotiveRatio(self, MotiveClass.coerce(other))

    def __rtruediv__(self, other) -> MotiveRatio:
        return MotiveRatio(MotiveClass.coerce(other), self)

    def __eq__(self, other) -> bool:
        if isinstance(other, MotiveRatio):
            return other == self
        try:
            other = MotiveClass.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def exact_div(self, divisor) -> MotiveClass:
        """Divide by a tag-free class, raising if the quotient is not integral."""
        divisor = MotiveClass.coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero motive")
        if not divisor.is_tag_free():
            raise NonExactDivision("divisor carries equivariant tags")
        if self.is_zero():
            return self
        dterms = [(e2, c) for (e2, _), c in divisor._terms.items()]
        lead_e, lead_c = max(dterms)
        low_b = min(e for e, _ in dterms)
        quotient: dict[tuple[int, int], int] = {}
        for tag in sorted(self.tags()):
            rem = {e2: c for (e2, t), c in self._terms.items() if t == tag}
            min_q = min(rem) - low_b
            while rem:
                e = max(rem)
                c = rem[e]
                qe = e - lead_e
                if qe < min_q or c % lead_c:
                    raise NonExactDivision(f"{self} is not divisible by {divisor}")
                qc = c // lead_c
                quotient[(qe, tag)] = qc
                for be, bc in dterms:
                    k = qe + be
                    v = rem.get(k, 0) - qc * bc
                    if v:
                        rem[k] = v
                    else:
                        rem.pop(k, None)
        return MotiveClass(quotient)

    def divides(self, other) -> bool:
        try:
            MotiveClass.coerce(other).exact_div(self)
        except NonExactDivision:
            return False
        return True

    # -- lambda-ring operations ------------------------------------------

    def adams(self, k: int) -> MotiveClass:
        if not isinstance(k, int) or k < 1:
            raise UnsupportedAdams(f"Adams operation index must be a positive integer, got {k!r}")
        if k == 1:
            return self
        out = MotiveClass()
        for (e2, tag), c in self._terms.items():
            if e2 % 2:
                raise UnsupportedAdams("Adams operations on half powers of L are not fixed here")
            base = MotiveClass({(k * e2, UNIT): c})
            if tag == UNIT:
                out = out + base
            elif tag == MTILDE and k == 2:
                out = out + base * (2 * MotiveClass.lefschetz() - MotiveClass.mtilde2())
            else:
                raise UnsupportedAdams(f"psi_{k}({TAG_NAMES[tag]}) is not determined")
        return out

    # -- specialisation ---------------------------------------------------

    def evaluate(self, q: int, mu3_count: int = 1) -> int:
        """Substitute ``L -> q`` and ``[mu3] -> mu3_count``."""
        total = 0
        mt = 1 - mu3_count
        values = (1, mt, mt * mt)
        for (e2, tag), c in self._terms.items():
            if e2 % 2:
                raise FractionalExponent(f"half power L^({e2}/2) cannot be evaluated")
            if e2 < 0:
                raise FractionalExponent(f"negative power L^{e2 // 2} has no point count")
            total += c * q ** (e2 // 2) * values[tag]
        return total

    def evaluate_fraction(self, q: int, mu3_count: int = 1) -> Fraction:
        total = Fraction(0)
        mt = 1 - mu3_count
        values = (1, mt, mt * mt)
        for (e2, tag), c in self._terms.items():
            if e2 % 2:
                raise FractionalExponent(f"half power L^({e2}/2) cannot be evaluated")
            total += c * Fraction(q) ** (e2 // 2) * values[tag]
        return total

    # -- serialisation ----------------------------------------------------

    def sorted_terms(self) -> list[tuple[int, int, int]]:
        return sorted((e2, tag, c) for (e2, tag), c in self._terms.items())

    def to_json(self) -> list[dict]:
        return [{"e2": e2, "tag": TAG_NAMES[tag], "c": str(c)} for e2, tag, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> MotiveClass:
        if isinstance(data, str):
            return cls.parse(data)
        terms: dict[tuple[int, int], int] = {}
        for rec in data:
            key = (int(rec["e2"]), _TAG_BY_NAME[rec["tag"]])
            terms[key] = terms.get(key, 0) + int(rec["c"])
        return cls(terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e2, tag, c in sorted(self.sorted_terms(), key=lambda t: (-t[0], t[1])):
            factors = []
            if tag != UNIT:
                factors.append(TAG_NAMES[tag])
            if e2:
                factors.append(_power_str(e2))
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            term = "*".join(factors)
            if not parts:
                parts.append(f"-{term}" if c < 0 else term)
            else:
                parts.append(f"- {term}" if c < 0 else f"+ {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MotiveClass({str(self)!r})"


def _power_str(e2: int) -> str:
    if e2 % 2:
        return f"L^({e2}/2)"
    e = e2 // 2
    return "L" if e == 1 else f"L^{e}"


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> MotiveClass:
    """``Phi_d(s)`` in the variable ``s = L^(1/2)``."""
    poly = MotiveClass({(d, UNIT): 1, (0, UNIT): -1})
    for e in range(1, d):
        if d % e == 0:
            poly = poly.exact_div(cyclotomic(e))
    return poly


def _reduce_pair(num: MotiveClass, den: MotiveClass) -> tuple[MotiveClass, MotiveClass]:
    if den.is_zero():
        raise ZeroDivisionError("MotiveRatio with zero denominator")
    if num.is_zero():
        return num, MotiveClass.constant(1)
    shift = -den.min_e2()
    num, den = num.shift(shift), den.shift(shift)
    if den.is_tag_free():
        changed = True
        while changed and den.max_e2() > 0:
            changed = False
            for d in range(1, min(_MAX_CYCLOTOMIC, den.max_e2()) + 1):
                phi = cyclotomic(d)
                while phi.max_e2() <= den.max_e2():
                    try:
                        qd = den.exact_div(phi)
                        qn = num.exact_div(phi)
                    except NonExactDivision:
                        break
                    num, den = qn, qd
                    changed = True
    g = math.gcd(num.content(), den.content())
    if den.leading_coefficient() < 0:
        g = -g
    if g != 1:
        num = MotiveClass({k: c // g for k, c in num.items()})
        den = MotiveClass({k: c // g for k, c in den.items()})
    return num, den


class MotiveRatio:
    """Quotient ``num / den`` of motive classes.

    Instances are not hashable: two equal ratios may be stored with different
    numerators and denominators.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1, *, reduce: bool = True):
        num = MotiveClass.coerce(num)
        den = MotiveClass.coerce(den)
        if reduce:
            num, den = _reduce_pair(num, den)
        elif den.is_zero():
            raise ZeroDivisionError("MotiveRatio with zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, value) -> MotiveRatio:
        if isinstance(value, MotiveRatio):
            return value
        if isinstance(value, Fraction):
            return cls(value.numerator, value.denominator)
        return cls(MotiveClass.coerce(value))

    @classmethod
    def parse(cls, text: str) -> MotiveRatio:
        from .expr import parse_motive

        return cls.coerce(parse_motive(text))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> MotiveRatio:
        try:
            other = MotiveRatio.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return MotiveRatio(self.num + other.num, self.den)
        return MotiveRatio(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> MotiveRatio:
        return MotiveRatio(-self.num, self.den, reduce=False)

    def __sub__(self, other) -> MotiveRatio:
        try:
            other = MotiveRatio.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> MotiveRatio:
        return MotiveRatio.coerce(other) - self

    def __mul__(self, other) -> MotiveRatio:
        try:
            other = MotiveRatio.coerce(other)
        except TypeError:
            return NotImplemented
        return MotiveRatio(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> MotiveRatio:
        other = MotiveRatio.coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero motive")
        return MotiveRatio(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> MotiveRatio:
        return MotiveRatio.coerce(other) / self

    def __pow__(self, k: int) -> MotiveRatio:
        if k < 0:
            return MotiveRatio(1) / (self ** -k)
        return MotiveRatio(self.num ** k, self.den ** k)

    def __eq__(self, other) -> bool:
        try:
            other = MotiveRatio.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def tags(self) -> set[int]:
        return self.num.tags() | self.den.tags()

    def is_tag_free(self) -> bool:
        return self.num.is_tag_free() and self.den.is_tag_free()

    def div_int(self, n: int, error=NonExactDivision) -> MotiveRatio:
        """Divide by the integer ``n``; the numerator content must absorb it."""
        if self.num.content() % n and not self.num.is_zero():
            raise error(f"({self}) / {n} leaves non-integral coefficients")
        return MotiveRatio(self.num.map_coefficients(lambda c: c // n), self.den)

    def adams(self, k: int) -> MotiveRatio:
        return MotiveRatio(self.num.adams(k), self.den.adams(k))

    def as_class(self) -> MotiveClass:
        """The ratio as a class, if the denominator divides exactly."""
        return self.num.exact_div(self.den)

    def is_class(self) -> bool:
        try:
            self.as_class()
        except NonExactDivision:
            return False
        return True

    def evaluate(self, q: int, mu3_count: int = 1) -> Fraction:
        den = self.den.evaluate_fraction(q, mu3_count)
        if den == 0:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at q={q}")
        return self.num.evaluate_fraction(q, mu3_count) / den

    def laurent_expand(self, lmin: int) -> MotiveClass:
        """Expand in decreasing powers of ``L``, dropping exponents below ``lmin``."""
        return laurent_expand(self, 2 * lmin)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> MotiveRatio:
        if isinstance(data, str):
            return cls.parse(data)
        if isinstance(data, list):
            return cls(MotiveClass.from_json(data))
        return cls(MotiveClass.from_json(data["num"]), MotiveClass.from_json(data["den"]))

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        num = str(self.num)
        if len(self.num) > 1:
            num = f"({num})"
        den = str(self.den)
        if len(self.den) > 1 or self.den.min_e2() != 0:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"MotiveRatio({str(self)!r})"


def laurent_expand(value: MotiveRatio, min_e2: int) -> MotiveClass:
    """Expand ``num/den`` as a series in ``L^(-1/2)`` truncated below ``min_e2``."""
    num, den = value.num, value.den
    if num.is_zero():
        return num
    if not den.is_tag_free():
        raise UnsupportedCoefficient("denominator carries equivariant tags")
    top = den.max_e2()
    lead = den._terms[(top, UNIT)]
    if lead not in (1, -1):
        raise UnsupportedCoefficient(f"leading coefficient {lead} of {den} is not a unit")
    # 1/den = L^(-top/2) * lead * 1/(1 + sum_j b_j u^j), u = L^(-1/2)
    b = {top - e2: c * lead for (e2, _), c in den.items() if e2 != top}
    depth = num.max_e2() - top - min_e2
    if depth < 0:
        return MotiveClass()
    inv = [0] * (depth + 1)
    inv[0] = 1
    for j in range(1, depth + 1):
        inv[j] = -sum(bc * inv[j - i] for i, bc in b.items() if i <= j)
    out: dict[tuple[int, int], int] = {}
    for (e2, tag), c in num.items():
        for j, ic in enumerate(inv):
            if not ic:
                continue
            e = e2 - top - j
            if e < min_e2:
                break
            key = (e, tag)
            out[key] = out.get(key, 0) + c * ic * lead
    return MotiveClass(out)


# -- functional surface ---------------------------------------------------

L = MotiveClass.lefschetz()
ONE = MotiveClass.constant(1)
MT = MotiveClass.mtilde()
MT2 = MotiveClass.mtilde2()
MU3 = MotiveClass.mu3()


def mot_add(a: MotiveClass, b: MotiveClass) -> MotiveClass:
    return a + b


def mot_mul(a: MotiveClass, b: MotiveClass) -> MotiveClass:
    return a * b


def gl_motive(n: int) -> MotiveClass:
    """``[GL_n] = prod_{k<n} (L^n - L^k)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    result = ONE
    for k in range(n):
        result = result * (L ** n - L ** k)
    return result


def adams(a, k: int):
    """Adams operation on a class or ratio."""
    if isinstance(a, MotiveRatio):
        return a.adams(k)
    return MotiveClass.coerce(a).adams(k)


def sigma2(a) -> MotiveRatio:
    """Second symmetric power ``(a^2 + psi_2(a)) / 2``."""
    a = MotiveRatio.coerce(a)
    total = a * a + a.adams(2)
    return total.div_int(2, error=NonIntegralSigma)


def mot_eval(a: MotiveClass, q: int, mu3_count: int = 1) -> int:
    """Point-count specialisation ``L -> q``, ``[mu3] -> mu3_count``."""
    if mu3_count not in (0, 1, 3):
        raise ValueError("mu3_count must be 0, 1 or 3")
    return MotiveClass.coerce(a).evaluate(q, mu3_count)


def cube_roots_of_unity(q: int) -> int:
    """Number of solutions of ``x^3 = 1`` in ``F_q``."""
    return 3 if q % 3 == 1 else 1
