"""Stratification identities, the Brauer-Severi induction and DT series.

Fiber motives ``M_n(lam)`` and Brauer-Severi motives ``BS_n(lam)`` are kept
in a :class:`MotiveTable` keyed by ``(n, lam_tag, kind)``; ``lam_tag`` is 0
or 1 since every nonzero fiber is isomorphic to the one over 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import AssumptionViolated, MissingEntry, Mismatch, NonExactDivision
from .expr import parse_motive
from .motive import L, MotiveClass, MotiveRatio, gl_motive
from .series import Series, pleth_exp
from .superpotential import Polynomial, Superpotential, cell_equations

FIBER = "FIBER"
BS = "BS"


@dataclass
class MotiveTable:
    m: int = 3
    entries: dict[tuple[int, int, str], MotiveClass] = field(default_factory=dict)

    def set(self, n: int, tag: int, kind: str, value) -> MotiveTable:
        if kind not in (FIBER, BS):
            raise ValueError(f"unknown kind {kind!r}")
        if tag not in (0, 1):
            raise ValueError("lambda tag must be 0 or 1")
        self.entries[(n, tag, kind)] = MotiveClass.coerce(value)
        return self

    def get(self, n: int, tag: int, kind: str) -> MotiveClass:
        key = (n, tag, kind)
        if key in self.entries:
            return self.entries[key]
        if n == 1:  # a nonzero vector is cyclic in dimension one
            other = (1, tag, BS if kind == FIBER else FIBER)
            if other in self.entries:
                return self.entries[other]
        if n == 0 and kind == FIBER:
            # the single zero representation sits over lambda = 0
            return MotiveClass.constant(1 if tag == 0 else 0)
        raise MissingEntry(f"no {kind} motive for n={n}, lambda={tag}")

    def has(self, n: int, tag: int, kind: str) -> bool:
        try:
            self.get(n, tag, kind)
        except MissingEntry:
            return False
        return True

    def copy(self) -> MotiveTable:
        return MotiveTable(self.m, dict(self.entries))

    def to_json(self) -> dict:
        rows = [{"n": n, "lambda": tag, "kind": kind, "motive": str(v)}
                for (n, tag, kind), v in sorted(self.entries.items())]
        return {"m": self.m, "entries": rows}

    @classmethod
    def from_json(cls, data) -> MotiveTable:
        if isinstance(data, str):
            data = json.loads(data)
        table = cls(int(data.get("m", 3)))
        for row in data["entries"]:
            value = parse_motive(row["motive"]) if isinstance(row["motive"], str) else MotiveClass.from_json(row["motive"])
            if isinstance(value, MotiveRatio):
                value = value.as_class()
            table.set(int(row["n"]), int(row["lambda"]), row["kind"].upper(), value)
        return table


def _twist_power(m: int, a: int, b: int) -> MotiveClass:
    return MotiveClass.lefschetz((m - 1) * a * b)


def _sum_over_mu(tag: int, bs, fib) -> MotiveClass:
    """Expand ``sum_mu BS(mu) M(lam - mu)`` with ``bs(t)``, ``fib(t)`` for tags 0/1."""
    if tag == 1:
        return (L - 2) * bs(1) * fib(1) + bs(0) * fib(1) + bs(1) * fib(0)
    return (L - 1) * bs(1) * fib(1) + bs(0) * fib(0)


def stratum_motive(k: int, n: int, tag: int, T: MotiveTable) -> MotiveClass:
    """Class of the pairs ``(v, phi)`` whose cyclic span has dimension ``k``."""
    if k == 0:
        return T.get(n, tag, FIBER)
    if k == n:
        return gl_motive(n) * T.get(n, tag, BS)
    if not 0 < k < n:
        raise ValueError("need 0 <= k <= n")
    inner = _sum_over_mu(tag, lambda t: T.get(k, t, BS), lambda t: fiber(n - k, t, T))
    # only the full product is divisible by [GL_(n-k)]
    return (gl_motive(n) * _twist_power(T.m, k, n - k) * inner).exact_div(gl_motive(n - k))


def fiber(n: int, tag: int, T: MotiveTable) -> MotiveClass:
    """Fiber motive from the table, or by induction when only BS is known."""
    if T.has(n, tag, FIBER):
        return T.get(n, tag, FIBER)
    return induct_fiber(n, tag, T)


def induct_fiber(n: int, tag: int, T: MotiveTable) -> MotiveClass:
    """Solve ``L^n M_n = M_n + sum_k X_k + [GL_n] BS_n`` for ``M_n``."""
    total = gl_motive(n) * T.get(n, tag, BS)
    for k in range(1, n):
        total = total + stratum_motive(k, n, tag, T)
    return total.exact_div(L ** n - 1)


def bs_from_fiber(n: int, tag: int, T: MotiveTable) -> MotiveClass:
    """Inverse of :func:`induct_fiber`: the BS motive from the fiber motive."""
    total = (L ** n - 1) * T.get(n, tag, FIBER)
    for k in range(1, n):
        total = total - stratum_motive(k, n, tag, T)
    return total.exact_div(gl_motive(n))


def delta(n: int, kind: str, T: MotiveTable) -> MotiveClass:
    if kind == FIBER:
        return fiber(n, 0, T) - fiber(n, 1, T)
    return T.get(n, 0, BS) - T.get(n, 1, BS)


def induct_delta(n: int, T: MotiveTable) -> MotiveRatio:
    """``Delta M_n / [GL_n]`` from the BS differences of dimensions ``<= n``.

    ``(L^n - 1) Delta M_n / [GL_n] = Delta BS_n
      + sum_k L^((m-1)k(n-k)) / [GL_(n-k)] Delta BS_k Delta M_(n-k)``
    """
    rhs = MotiveRatio(delta(n, BS, T))
    for k in range(1, n):
        dm = induct_delta(n - k, T) * gl_motive(n - k)
        rhs = rhs + MotiveRatio(_twist_power(T.m, k, n - k)) / gl_motive(n - k) * delta(k, BS, T) * dm
    return rhs / (L ** n - 1)


# -- reports ---------------------------------------------------------------------

@dataclass
class CheckReport:
    check: str
    status: str
    lhs: str
    rhs: str
    location: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"check": self.check, "status": self.status, "lhs": self.lhs, "rhs": self.rhs,
                "location": self.location}


def compare(check: str, lhs, rhs, location: str = "") -> CheckReport:
    return CheckReport(check, "pass" if lhs == rhs else "fail", str(lhs), str(rhs), location)


# -- generating series ------------------------------------------------------------

def b_series(T: MotiveTable, tag: int, order: int) -> Series:
    coeffs = [MotiveRatio(0)] + [MotiveRatio(T.get(n, tag, BS)) for n in range(1, order + 1)]
    return Series(coeffs, twist=T.m - 1)


def r_series(T: MotiveTable, tag: int, order: int) -> Series:
    coeffs = [MotiveRatio(0)] + [fiber(n, tag, T) / gl_motive(n) for n in range(1, order + 1)]
    return Series(coeffs, twist=T.m - 1)


def functional_equation_sides(T: MotiveTable, order: int) -> tuple[Series, Series]:
    """``1 + R_1(L t)`` and ``sum_mu B_mu * R_(1-mu)`` in the twisted product."""
    one = Series.one(order, twist=T.m - 1)
    R1, R0 = r_series(T, 1, order), r_series(T, 0, order)
    B1, B0 = b_series(T, 1, order), b_series(T, 0, order)
    lhs = one + R1.scale_variable(L)
    rhs = one + B1 + R1 + (B1 * R1) * (L - 2) + B0 * R1 + B1 * R0
    return lhs, rhs


def functional_equation_check(T: MotiveTable, order: int = 2) -> CheckReport:
    lhs, rhs = functional_equation_sides(T, order)
    bad = lhs.first_mismatch(rhs)
    loc = "" if bad is None else f"t^{bad}"
    return CheckReport("functional equation", "pass" if bad is None else "fail", str(lhs), str(rhs), loc)


def u_series(T: MotiveTable, order: int) -> Series:
    """``sum_n L^(-(m-1) n^2 / 2) Delta M_n / [GL_n] t^n`` (untwisted)."""
    coeffs = [MotiveRatio(1)]
    for n in range(1, order + 1):
        shift = MotiveClass.lefschetz(Fraction(-(T.m - 1) * n * n, 2))
        coeffs.append(induct_delta(n, T) * shift)
    return Series(coeffs)


def u_series_from_bracket(bracket: Series) -> Series:
    return pleth_exp(bracket)


# -- dimensional reduction ---------------------------------------------------------

def dimensional_reduction_check(T: MotiveTable, rep2: MotiveClass) -> list[CheckReport]:
    m0, m1 = fiber(2, 0, T), fiber(2, 1, T)
    return [
        compare("fiber partition L^12 = M2(0) + (L-1) M2(1)", L ** 12, m0 + (L - 1) * m1, "n=2"),
        compare("M2(0) - M2(1) = L^4 [rep_2]", m0 - m1, L ** 4 * MotiveClass.coerce(rep2), "n=2"),
    ]


# -- the third cell for W = a X^3 + b Y^3 + c Z^3 + XYZ + e XZY ---------------------

def _check_s3_params(delta_: Fraction, epsilon: Fraction) -> None:
    if delta_ != 1:
        raise AssumptionViolated("the third-cell formula needs the XYZ coefficient equal to 1")
    if epsilon == 0:
        raise AssumptionViolated("the third-cell formula needs a nonzero XZY coefficient")


def s3_bracket_equation(W: Superpotential) -> Polynomial:
    """``W(n,s,0) + W(-n/e, -e s, 0)`` on ``A^2``, or with ``z`` free on ``A^3`` when ``c = 0``."""
    alpha, beta, gamma = (W.coefficient(w) for w in ("XXX", "YYY", "ZZZ"))
    delta_, epsilon = W.coefficient("XYZ"), W.coefficient("XZY")
    _check_s3_params(delta_, epsilon)
    variables = ("n", "s") if gamma else ("n", "s", "z")
    n = Polynomial.variable(variables, "n")
    s = Polynomial.variable(variables, "s")
    z = Polynomial.variable(variables, "z") if not gamma else Polynomial(variables)

    def w_comm(x, y, zz):
        return alpha * x * x * x + beta * y * y * y + gamma * zz * zz * zz + (delta_ + epsilon) * x * y * zz

    zero = Polynomial(variables)
    return w_comm(n, s, zero) + w_comm(n * (-1 / epsilon), s * (-epsilon), z)


def prop_s3_motive(W: Superpotential, bracket) -> MotiveClass:
    """Third-cell motive from the motive of the residual bracket equation."""
    gamma = W.coefficient("ZZZ")
    _check_s3_params(W.coefficient("XYZ"), W.coefficient("XZY"))
    bracket = MotiveClass.coerce(bracket)
    if gamma:
        return L ** 7 - L ** 4 + L ** 3 * bracket
    return L ** 7 - L ** 5 + L ** 3 * bracket


def prop_s3_count_check(W: Superpotential, q: int) -> CheckReport:
    """Point-count form of the third-cell formula at one prime, all ``lambda = 1``."""
    from .counting import count_all_lambdas

    gamma = W.coefficient("ZZZ")
    b = count_all_lambdas(s3_bracket_equation(W), q)[1]
    direct = count_all_lambdas(cell_equations(W, 1)[2].equation, q)[1]
    formula = q ** 7 - (q ** 4 if gamma else q ** 5) + q ** 3 * b
    return compare(f"third cell count at q={q}", direct, formula, f"q={q}")


# -- standard tables ----------------------------------------------------------------

def table_from_catalog(case: str, with_fibers: bool = True) -> MotiveTable:
    """Dimension one and two entries; n = 2 fibers only where they are displayed."""
    from .catalog import CATALOG

    entries = CATALOG[case]
    T = MotiveTable(3)
    T.set(1, 1, FIBER, entries["M1(1)"].value)
    T.set(1, 0, FIBER, entries["M1(0)"].value)
    T.set(2, 1, BS, entries["BS2(1)"].value)
    T.set(2, 0, BS, entries["BS2(0)"].value)
    if with_fibers:
        for tag in (0, 1):
            name = f"M2({tag})"
            if name in entries:
                T.set(2, tag, FIBER, entries[name].value)
    return T


def require_exact(value: MotiveRatio, what: str) -> MotiveClass:
    try:
        return value.as_class()
    except NonExactDivision as exc:
        raise Mismatch(f"{what} is not a polynomial motive: {exc}", value=str(value)) from None


def check_all(reports: Iterable[CheckReport]) -> bool:
    return all(r.ok for r in reports)
