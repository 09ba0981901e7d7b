"""Superpotentials, their trace functions and Brauer-Severi cell equations.

For three letters and 2x2 matrices the entries are named

    X = [[n, p], [q, r]],  Y = [[s, t], [u, v]],  Z = [[w, x], [y, z]]

so ``n, r, s, v, w, z`` are diagonal, ``p, t, x`` upper and ``q, u, y``
lower variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from .errors import DecompositionFailure, ParseError

LETTERS = "XYZ"
DIAGONAL = ("n", "r", "s", "v", "w", "z")
UPPER = ("p", "t", "x")
LOWER = ("q", "u", "y")
ENTRY_VARS = ("n", "p", "q", "r", "s", "t", "u", "v", "w", "x", "y", "z")

# cell representatives of the Brauer-Severi scheme of 2x2 matrices, v = e1
CELL_FIXED = (
    {"n": 0, "q": 1},
    {"q": 0, "s": 0, "u": 1},
    {"q": 0, "u": 0, "w": 0, "y": 1},
)
# grading that keeps every cell equation homogeneous of weight 3
CELL_WEIGHTS = {**{v: 1 for v in DIAGONAL}, **{v: 2 for v in UPPER}, **{v: 0 for v in LOWER}}


class Polynomial:
    """Sparse polynomial with rational coefficients in named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.vars = tuple(variables)
        clean = {}
        for mono, c in (terms or {}).items():
            if len(mono) != len(self.vars):
                raise ValueError("monomial length does not match the variable list")
            c = Fraction(c)
            if c:
                clean[tuple(mono)] = c
        self.terms = clean

    @classmethod
    def variable(cls, variables: Iterable[str], name: str) -> Polynomial:
        variables = tuple(variables)
        mono = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {mono: Fraction(1)})

    @classmethod
    def constant(cls, variables: Iterable[str], c) -> Polynomial:
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): Fraction(c)})

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise ValueError("polynomials live in different variable sets")
            return other
        return Polynomial.constant(self.vars, other)

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> Polynomial:
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.vars, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            if set(self.vars) != set(other.vars):
                return self.is_zero() and other.is_zero()
            return self.terms == other.reorder(self.vars).terms
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self.terms

    def reorder(self, variables: Iterable[str]) -> Polynomial:
        """Same polynomial over another variable list (must contain the used ones)."""
        variables = tuple(variables)
        index = {v: i for i, v in enumerate(variables)}
        out = {}
        for m, c in self.terms.items():
            new = [0] * len(variables)
            for v, e in zip(self.vars, m):
                if e:
                    if v not in index:
                        raise ValueError(f"variable {v!r} is used but not in the target list")
                    new[index[v]] = e
            out[tuple(new)] = c
        return Polynomial(variables, out)

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(m[i] for m in self.terms))

    def substitute(self, values: Mapping[str, object], keep: Iterable[str] | None = None) -> Polynomial:
        """Substitute constants for some variables; the rest stay symbolic."""
        if keep is None:
            keep = [v for v in self.vars if v not in values]
        keep = tuple(keep)
        kidx = {v: i for i, v in enumerate(keep)}
        out: dict[tuple[int, ...], Fraction] = {}
        for m, c in self.terms.items():
            coef = c
            new = [0] * len(keep)
            for v, e in zip(self.vars, m):
                if not e:
                    continue
                if v in values:
                    coef *= Fraction(values[v]) ** e
                else:
                    new[kidx[v]] = e
            if coef:
                key = tuple(new)
                out[key] = out.get(key, 0) + coef
        return Polynomial(keep, out)

    def rename(self, mapping: Mapping[str, str]) -> Polynomial:
        return Polynomial([mapping.get(v, v) for v in self.vars], self.terms)

    def degree_in(self, var: str) -> int:
        i = self.vars.index(var)
        return max((m[i] for m in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def weights_of(self, weights: Mapping[str, int]) -> set[int]:
        return {sum(weights[v] * e for v, e in zip(self.vars, m)) for m in self.terms}

    def evaluate(self, values: Mapping[str, int | Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for v, e in zip(self.vars, m):
                if e:
                    term *= Fraction(values[v]) ** e
            total += term
        return total

    def monomials(self) -> list[tuple[dict[str, int], Fraction]]:
        return [({v: e for v, e in zip(self.vars, m) if e}, c) for m, c in self._sorted()]

    def _sorted(self):
        return sorted(self.terms.items(), key=lambda mc: (-sum(mc[0]), [-e for e in mc[0]]))

    def to_json(self) -> list:
        return [[mono, str(c)] for mono, c in self.monomials()]

    @classmethod
    def from_json(cls, variables: Iterable[str], data) -> Polynomial:
        variables = tuple(variables)
        out = {}
        for mono, c in data:
            key = tuple(int(mono.get(v, 0)) for v in variables)
            out[key] = out.get(key, 0) + Fraction(c)
        return cls(variables, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        short = all(len(v) == 1 for v in self.vars)
        parts = []
        for m, c in self._sorted():
            factors = []
            for v, e in zip(self.vars, m):
                if e:
                    factors.append(v if e == 1 else f"{v}^{e}")
            body = "".join(factors) if short else "*".join(factors)
            mag = abs(c)
            if mag != 1 or not body:
                coef = str(mag)
                if body:
                    coef = f"({coef})" if mag.denominator != 1 else coef
                    body = coef + ("" if short else "*") + body
                else:
                    body = coef
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


TracePolynomial = Polynomial


def canonical_rotation(word: tuple[int, ...]) -> tuple[int, ...]:
    return min(word[i:] + word[:i] for i in range(len(word)))


@dataclass(frozen=True)
class Superpotential:
    """Linear combination of cyclic words; letters are 0-based indices."""

    m: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @classmethod
    def from_terms(cls, m: int, terms: Iterable[tuple[Iterable[int], object]]) -> Superpotential:
        merged: dict[tuple[int, ...], Fraction] = {}
        for word, c in terms:
            word = tuple(word)
            if not word:
                raise ValueError("empty words are not allowed")
            if any(not 0 <= i < m for i in word):
                raise ValueError(f"letter index out of range for m={m}")
            key = canonical_rotation(word)
            merged[key] = merged.get(key, 0) + Fraction(c)
        return cls(m, tuple(sorted((w, c) for w, c in merged.items() if c)))

    @classmethod
    def cubic(cls, alpha=0, beta=0, gamma=0, delta=0, epsilon=0) -> Superpotential:
        """``alpha X^3 + beta Y^3 + gamma Z^3 + delta XYZ + epsilon XZY``."""
        return cls.from_terms(3, [
            ((0, 0, 0), alpha), ((1, 1, 1), beta), ((2, 2, 2), gamma),
            ((0, 1, 2), delta), ((0, 2, 1), epsilon),
        ])

    def degree(self) -> int:
        lengths = {len(w) for w, _ in self.terms}
        if len(lengths) != 1:
            raise ValueError(f"superpotential is not homogeneous (word lengths {sorted(lengths)})")
        return lengths.pop()

    def coefficient(self, word: Iterable[int] | str) -> Fraction:
        if isinstance(word, str):
            word = [LETTERS.index(ch) for ch in word]
        key = canonical_rotation(tuple(word))
        return dict(self.terms).get(key, Fraction(0))

    def evaluate_commutative(self, values: Iterable) -> Fraction:
        values = [Fraction(v) for v in values]
        total = Fraction(0)
        for word, c in self.terms:
            term = c
            for i in word:
                term *= values[i]
            total += term
        return total

    def __add__(self, other: Superpotential) -> Superpotential:
        return Superpotential.from_terms(max(self.m, other.m), list(self.terms) + list(other.terms))

    def scale(self, c) -> Superpotential:
        return Superpotential.from_terms(self.m, [(w, k * Fraction(c)) for w, k in self.terms])

    def word_str(self, word: tuple[int, ...]) -> str:
        if self.m <= 3:
            return "".join(LETTERS[i] for i in word)
        return "".join(f"X{i + 1}" for i in word)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for word, c in self.terms:
            mag = abs(c)
            body = self.word_str(word) if mag == 1 else f"{mag} {self.word_str(word)}"
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)


def parse_potential(text: str, m: int | None = None) -> Superpotential:
    """Parse ``[sign] [coef] WORD`` terms, e.g. ``XYZ - XZY - 1/3 XXX``.

    Words use ``X, Y, Z`` or indexed letters ``X1 .. Xm``; ``X^3`` is
    shorthand for ``XXX``.
    """
    pos = 0
    terms: list[tuple[tuple[int, ...], Fraction]] = []
    max_letter = 0
    used_xyz = False
    size = len(text)

    def skip():
        nonlocal pos
        while pos < size and text[pos].isspace():
            pos += 1

    def integer() -> int:
        nonlocal pos
        start = pos
        while pos < size and text[pos].isdigit():
            pos += 1
        return int(text[start:pos])

    skip()
    if pos == size:
        raise ParseError("empty superpotential", 0)
    first = True
    while pos < size:
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
            skip()
        elif not first:
            raise ParseError(f"expected '+' or '-', found {text[pos]!r}", pos)
        first = False
        coef = Fraction(1)
        if pos < size and text[pos].isdigit():
            num = integer()
            den = 1
            skip()
            if pos < size and text[pos] == "/":
                pos += 1
                skip()
                if pos >= size or not text[pos].isdigit():
                    raise ParseError("expected a denominator after '/'", pos)
                den = integer()
                if den == 0:
                    raise ParseError("zero denominator", pos - 1)
            coef = Fraction(num, den)
            skip()
            if pos < size and text[pos] == "*":
                pos += 1
                skip()
        word: list[int] = []
        while pos < size and text[pos] in LETTERS:
            ch = text[pos]
            pos += 1
            if ch == "X" and pos < size and text[pos].isdigit():
                idx = integer()
                if idx < 1:
                    raise ParseError("letter indices start at 1", pos - 1)
                letter = idx - 1
            else:
                letter = LETTERS.index(ch)
                used_xyz = True
            reps = 1
            if pos < size and text[pos] == "^":
                pos += 1
                if pos >= size or not text[pos].isdigit():
                    raise ParseError("expected an exponent after '^'", pos)
                reps = integer()
            word.extend([letter] * reps)
            max_letter = max(max_letter, letter + 1)
        if not word:
            raise ParseError("expected a word in the letters X, Y, Z or X1..Xm", pos)
        terms.append((tuple(word), sign * coef))
        skip()
    if m is None:
        m = max(max_letter, 3 if used_xyz else 0)
    return Superpotential.from_terms(m, terms)


def entry_names(m: int, n: int) -> list[list[list[str]]]:
    """Names of the entries of the ``m`` generic ``n x n`` matrices."""
    if (m, n) == (3, 2):
        return [[["n", "p"], ["q", "r"]], [["s", "t"], ["u", "v"]], [["w", "x"], ["y", "z"]]]
    if n == 1 and m <= 3:
        return [[["xyz"[k]]] for k in range(m)]
    return [[[f"x{k + 1}_{i + 1}{j + 1}" for j in range(n)] for i in range(n)] for k in range(m)]


def matrix_variables(m: int, n: int) -> tuple[str, ...]:
    if (m, n) == (3, 2):
        return ENTRY_VARS
    return tuple(name for mat in entry_names(m, n) for row in mat for name in row)


def _matmul(a, b, n, variables):
    zero = Polynomial(variables)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for k in range(n):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def trace_expand(W: Superpotential, n: int) -> Polynomial:
    """``Tr W(X_1, .., X_m)`` for generic ``n x n`` matrices."""
    if n < 1:
        raise ValueError("matrix size must be positive")
    variables = matrix_variables(W.m, n)
    names = entry_names(W.m, n)
    mats = [[[Polynomial.variable(variables, names[k][i][j]) for j in range(n)] for i in range(n)]
            for k in range(W.m)]
    total = Polynomial(variables)
    for word, c in W.terms:
        acc = mats[word[0]]
        for letter in word[1:]:
            acc = _matmul(acc, mats[letter], n, variables)
        trace = Polynomial(variables)
        for i in range(n):
            trace = trace + acc[i][i]
        total = total + trace * c
    return total


@dataclass
class BlockDecomposition:
    """``Tr W = C + Q_q q + Q_u u + Q_y y`` with ``Q_a = sum_b L_ab b``."""

    cubic: Polynomial
    linear: dict[tuple[str, str], Polynomial]
    variables: tuple[str, ...] = ENTRY_VARS

    def Q(self, lower: str) -> Polynomial:
        acc = Polynomial(self.variables)
        for upper in UPPER:
            acc = acc + self.linear[(lower, upper)] * Polynomial.variable(self.variables, upper)
        return acc

    def reconstruct(self) -> Polynomial:
        acc = self.cubic
        for lower in LOWER:
            acc = acc + self.Q(lower) * Polynomial.variable(self.variables, lower)
        return acc


def block_decompose(P: Polynomial) -> BlockDecomposition:
    variables = ENTRY_VARS
    if not set(P.used_vars()) <= set(variables):
        raise DecompositionFailure("expected a trace polynomial of three 2x2 matrices")
    P = P.reorder(variables)
    idx = {v: i for i, v in enumerate(variables)}
    cubic = {}
    linear = {(a, b): {} for a in LOWER for b in UPPER}
    for mono, c in P.terms.items():
        lowers = [v for v in LOWER if mono[idx[v]]]
        uppers = [v for v in UPPER if mono[idx[v]]]
        nl = sum(mono[idx[v]] for v in LOWER)
        nu = sum(mono[idx[v]] for v in UPPER)
        if nl == 0 and nu == 0:
            cubic[mono] = c
            continue
        if nl != 1 or nu != 1:
            raise DecompositionFailure(
                f"monomial {Polynomial(variables, {mono: c})} is not a closed path through both vertices"
            )
        rest = list(mono)
        rest[idx[lowers[0]]] -= 1
        rest[idx[uppers[0]]] -= 1
        if sum(rest) != 1:
            raise DecompositionFailure("bilinear part is not linear in the diagonal variables")
        linear[(lowers[0], uppers[0])][tuple(rest)] = c
    return BlockDecomposition(
        Polynomial(variables, cubic),
        {k: Polynomial(variables, v) for k, v in linear.items()},
    )


@dataclass
class StratumSpec:
    """An affine hypersurface ``equation = rhs`` with a weight grading."""

    name: str
    equation: Polynomial
    fixed: dict[str, int] = field(default_factory=dict)
    weights: dict[str, int] = field(default_factory=dict)
    rhs_class: int = 1

    @property
    def ambient_dim(self) -> int:
        return len(self.equation.vars)

    @property
    def variables(self) -> tuple[str, ...]:
        return self.equation.vars

    def is_weight_homogeneous(self, total: int = 3) -> bool:
        return self.equation.weights_of(self.weights) <= {total}

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.ambient_dim,
            "variables": list(self.variables),
            "fixed": dict(self.fixed),
            "weights": {v: self.weights[v] for v in self.variables if v in self.weights},
            "equation": self.equation.to_json(),
            "rhs": self.rhs_class,
        }

    @classmethod
    def from_json(cls, data: dict) -> StratumSpec:
        variables = data.get("variables") or sorted({v for mono, _ in data["equation"] for v in mono})
        return cls(
            name=data.get("name", "stratum"),
            equation=Polynomial.from_json(variables, data["equation"]),
            fixed={k: int(v) for k, v in data.get("fixed", {}).items()},
            weights={k: int(v) for k, v in data.get("weights", {}).items()},
            rhs_class=int(data.get("rhs", 1)),
        )


def cell_equations(W: Superpotential, lambda_tag: int = 1) -> list[StratumSpec]:
    """Equations of the three Brauer-Severi cells ``S_1, S_2, S_3``."""
    if W.m != 3:
        raise ValueError("cell equations are only available for three letters")
    if lambda_tag not in (0, 1):
        raise ValueError("lambda tag must be 0 or 1")
    P = trace_expand(W, 2)
    specs = []
    for i, fixed in enumerate(CELL_FIXED, start=1):
        free = [v for v in ENTRY_VARS if v not in fixed]
        eq = P.substitute(fixed, keep=free)
        specs.append(StratumSpec(
            name=f"S{i}",
            equation=eq,
            fixed=dict(fixed),
            weights={v: CELL_WEIGHTS[v] for v in free},
            rhs_class=lambda_tag,
        ))
    return specs


def fiber_spec(W: Superpotential, n: int, lambda_tag: int = 1) -> StratumSpec:
    """The whole fiber ``Tr W = lambda`` as a stratum over all matrix entries."""
    P = trace_expand(W, n)
    weights = {v: 1 for v in P.vars}
    return StratumSpec(name=f"M{n}", equation=P, weights=weights, rhs_class=lambda_tag)


def all_assignments(q: int, k: int):
    return product(range(q), repeat=k)
