"""Exact point counts over prime fields.

The main routine counts solutions of ``f = lambda`` for every ``lambda`` in
``F_q`` at once.  Variables that occur only linearly (and never together in a
monomial) are eliminated in closed form; the remaining ones are enumerated
in numpy chunks, optionally sharded across processes.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from .errors import BadPrime, Mismatch, NonIntegralFit, NotLinear
from .motive import MotiveClass, cube_roots_of_unity
from .superpotential import (
    LOWER, UPPER, DIAGONAL, Polynomial, StratumSpec, Superpotential,
    block_decompose, trace_expand,
)

CHUNK = 1 << 20


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q ** 0.5) + 1))


def check_prime(q: int, poly: Polynomial | None = None) -> None:
    if not is_prime(q):
        raise BadPrime(f"{q} is not a prime")
    if poly is not None:
        for c in poly.terms.values():
            if c.denominator % q == 0:
                raise BadPrime(f"coefficient {c} has no reduction modulo {q}")


def reduce_mod(c: Fraction, q: int) -> int:
    c = Fraction(c)
    if c.denominator % q == 0:
        raise BadPrime(f"coefficient {c} has no reduction modulo {q}")
    return c.numerator * pow(c.denominator, -1, q) % q


# -- linear variable detection ------------------------------------------------

def find_linear_vars(poly: Polynomial) -> tuple[str, ...]:
    """A largest set of variables of degree one that never share a monomial."""
    cands = [v for v in poly.used_vars() if poly.degree_in(v) == 1]
    idx = {v: i for i, v in enumerate(poly.vars)}
    clash = set()
    for mono in poly.terms:
        present = [v for v in cands if mono[idx[v]]]
        clash.update(combinations(present, 2))
    for size in range(len(cands), 0, -1):
        for subset in combinations(cands, size):
            if not any(pair in clash for pair in combinations(subset, 2)):
                return subset
    return ()


def check_linear(poly: Polynomial, linear: Iterable[str]) -> None:
    linear = tuple(linear)
    idx = {v: i for i, v in enumerate(poly.vars)}
    for v in linear:
        if v not in idx:
            raise NotLinear(f"{v!r} is not a variable of the equation")
    for mono in poly.terms:
        degs = [mono[idx[v]] for v in linear]
        if sum(degs) > 1:
            raise NotLinear(f"variables {linear} are not jointly linear")


# -- the enumeration kernel -----------------------------------------------------

@dataclass(frozen=True)
class _Compiled:
    """Coefficients ``c_0, c_v`` as polynomials in the enumerated variables."""

    q: int
    k: int  # number of enumerated variables
    parts: tuple[tuple[tuple[int, tuple[int, ...]], ...], ...]  # c_0 first


def _compile(poly: Polynomial, q: int, linear: Sequence[str]) -> tuple[_Compiled, tuple[str, ...]]:
    idx = {v: i for i, v in enumerate(poly.vars)}
    outer = tuple(v for v in poly.vars if v not in linear)
    buckets: list[dict[tuple[int, ...], int]] = [dict() for _ in range(len(linear) + 1)]
    for mono, c in poly.terms.items():
        slot = 0
        for j, v in enumerate(linear, start=1):
            if mono[idx[v]]:
                slot = j
        key = tuple(mono[idx[v]] for v in outer)
        buckets[slot][key] = (buckets[slot].get(key, 0) + reduce_mod(c, q)) % q
    parts = tuple(tuple((c, m) for m, c in sorted(b.items()) if c) for b in buckets)
    return _Compiled(q, len(outer), parts), outer


def _eval_part(part, digits: np.ndarray, q: int) -> np.ndarray:
    out = np.zeros(digits.shape[1], dtype=np.int64)
    powers: dict[tuple[int, int], np.ndarray] = {}
    for c, mono in part:
        term = np.full(digits.shape[1], c, dtype=np.int64)
        for i, e in enumerate(mono):
            if e:
                key = (i, e)
                if key not in powers:
                    powers[key] = np.asarray([pow(a, e, q) for a in range(q)], dtype=np.int64)[digits[i]]
                term = term * powers[key] % q
        out += term
    return out % q


def _count_range(comp: _Compiled, start: int, stop: int) -> tuple[int, list[int]]:
    """Over flat indices ``[start, stop)``: (#points with a live linear part, histogram of c_0 otherwise)."""
    q, k = comp.q, comp.k
    hist = np.zeros(q, dtype=np.int64)
    live = 0
    for lo in range(start, stop, CHUNK):
        hi = min(stop, lo + CHUNK)
        flat = np.arange(lo, hi, dtype=np.int64)
        digits = np.empty((k, hi - lo), dtype=np.int64)
        for i in range(k - 1, -1, -1):
            digits[i] = flat % q
            flat //= q
        dead = np.ones(hi - lo, dtype=bool)
        for part in comp.parts[1:]:
            dead &= _eval_part(part, digits, q) == 0
        live += int((~dead).sum())
        c0 = _eval_part(comp.parts[0], digits[:, dead], q)
        hist += np.bincount(c0, minlength=q)
    return live, [int(h) for h in hist]


def _shards(total: int, jobs: int) -> list[tuple[int, int]]:
    pieces = max(1, jobs * 4) if jobs > 1 else 1
    step = -(-total // pieces)
    return [(lo, min(total, lo + step)) for lo in range(0, total, step)] or [(0, 0)]


def count_all_lambdas(poly: Polynomial, q: int, linear_vars: Iterable[str] | None = None,
                      jobs: int = 1) -> list[int]:
    """``counts[lam]`` = number of points of ``poly = lam`` in ``F_q^vars``."""
    check_prime(q, poly)
    linear = find_linear_vars(poly) if linear_vars is None else tuple(linear_vars)
    check_linear(poly, linear)
    comp, _ = _compile(poly, q, linear)
    total = q ** comp.k
    shards = _shards(total, jobs)
    if jobs > 1 and len(shards) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_count_range, [comp] * len(shards),
                                    [a for a, _ in shards], [b for _, b in shards]))
    else:
        results = [_count_range(comp, a, b) for a, b in shards]
    live = sum(r[0] for r in results)
    hist = [sum(r[1][lam] for r in results) for lam in range(q)]
    ell = len(linear)
    if ell == 0:
        return hist
    return [live * q ** (ell - 1) + hist[lam] * q ** ell for lam in range(q)]


def count_points(poly: Polynomial | StratumSpec, q: int, lam: int,
                 linear_vars: Iterable[str] | None = None, jobs: int = 1) -> int:
    if isinstance(poly, StratumSpec):
        poly = poly.equation
    return count_all_lambdas(poly, q, linear_vars, jobs)[lam % q]


def count_naive(poly: Polynomial, q: int) -> list[int]:
    """Reference: plain enumeration of every point, vectorized."""
    check_prime(q, poly)
    comp, _ = _compile(poly, q, ())
    hist = [0] * q
    _, h = _count_range(comp, 0, q ** comp.k)
    for lam in range(q):
        hist[lam] += h[lam]
    return hist


# -- n = 2 fibers via the block structure ---------------------------------------

def batch_rank(mats: np.ndarray, q: int) -> np.ndarray:
    """Ranks over ``F_q`` of a stack of matrices of shape (N, r, c)."""
    A = np.array(mats, dtype=np.int64) % q
    N, r, c = A.shape
    rank = np.zeros(N, dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = [pow(a, -1, q) for a in range(1, q)]
    rows = np.arange(r)
    allN = np.arange(N)
    for col in range(c):
        cand = (A[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(cand, axis=1)
        sel = allN[has]
        prow, trow = piv[has], rank[has]
        tmp = A[sel, prow].copy()
        A[sel, prow] = A[sel, trow]
        A[sel, trow] = tmp
        pivot = A[sel, trow] * inv[A[sel, trow, col]][:, None] % q
        A[sel, trow] = pivot
        factors = A[sel, :, col].copy()
        factors[np.arange(len(sel)), trow] = 0
        A[sel] = (A[sel] - factors[:, :, None] * pivot[:, None, :]) % q
        rank[sel] += 1
    return rank


def count_fiber_n2(W: Superpotential, q: int, lam: int | None = None,
                   method: str = "rank", jobs: int = 1):
    """Points of ``Tr W = lam`` on pairs of 2x2 matrices (all ``lam`` if None).

    ``rank``: loop over the six diagonal entries; for fixed diagonal the
    equation is ``C + l^T M u`` in lower/upper entries and its count depends
    only on ``rank M``.  ``generic``: linear elimination in ``q, u, y``.
    """
    P = trace_expand(W, 2)
    check_prime(q, P)
    if method == "generic":
        counts = count_all_lambdas(P, q, LOWER, jobs)
    elif method == "rank":
        counts = _fiber_by_rank(P, q)
    else:
        raise ValueError(f"unknown method {method!r}")
    return counts if lam is None else counts[lam % q]


def _fiber_by_rank(P: Polynomial, q: int) -> list[int]:
    dec = block_decompose(P)
    diag = DIAGONAL
    n_pts = q ** len(diag)
    flat = np.arange(n_pts, dtype=np.int64)
    digits = np.empty((len(diag), n_pts), dtype=np.int64)
    for i in range(len(diag) - 1, -1, -1):
        digits[i] = flat % q
        flat //= q

    def values(poly: Polynomial) -> np.ndarray:
        comp, _ = _compile(poly.reorder(diag), q, ())
        return _eval_part(comp.parts[0], digits, q)

    c0 = values(dec.cubic)
    M = np.empty((n_pts, 3, 3), dtype=np.int64)
    for a, low in enumerate(LOWER):
        for b, up in enumerate(UPPER):
            M[:, a, b] = values(dec.linear[(low, up)])
    rk = batch_rank(M, q)
    kernel = q ** (3 - rk)  # lower vectors with l^T M = 0
    live = int(((q ** 3 - kernel) * q ** 2).sum())
    counts = [live] * q
    dead = kernel * q ** 3
    for lam in range(q):
        counts[lam] += int(dead[c0 == lam].sum())
    return counts


# -- pairs of anticommuting 2x2 matrices ---------------------------------------

def _grid(q: int, k: int) -> np.ndarray:
    flat = np.arange(q ** k, dtype=np.int64)
    out = np.empty((q ** k, k), dtype=np.int64)
    for i in range(k - 1, -1, -1):
        out[:, i] = flat % q
        flat //= q
    return out


def count_anticommutator_rep2(q: int) -> int:
    """Pairs ``(X, Y)`` of 2x2 matrices over ``F_q`` with ``XY + YX = 0``.

    For fixed ``X`` the solutions ``Y`` form the kernel of a linear map, so
    the count is ``sum_X q^(4 - rank)``.
    """
    check_prime(q)
    X = _grid(q, 4).reshape(-1, 2, 2)
    cols = []
    for i, j in product(range(2), repeat=2):
        E = np.zeros((2, 2), dtype=np.int64)
        E[i, j] = 1
        cols.append((X @ E + E @ X).reshape(-1, 4))
    A = np.stack(cols, axis=2) % q
    rk = batch_rank(A, q)
    return int(sum(q ** (4 - int(r)) for r in rk))


def count_anticommutator_brute(q: int) -> int:
    """Reference: enumerate all of ``F_q^8``."""
    check_prime(q)
    pts = _grid(q, 8)
    X = pts[:, :4].reshape(-1, 2, 2)
    Y = pts[:, 4:].reshape(-1, 2, 2)
    S = (X @ Y + Y @ X) % q
    return int((S.reshape(-1, 4) == 0).all(axis=1).sum())


# -- strata by the dimension of the cyclic subspace --------------------------------

def _matrices_from_points(pts: np.ndarray, m: int, n: int) -> np.ndarray:
    return pts.reshape(-1, m, n, n)


def count_dim_stratum(W: Superpotential, n: int, k: int, lam: int, q: int,
                      method: str = "vectorized") -> int:
    """Pairs ``(v, phi)`` with ``Tr W(phi) = lam`` and ``dim <phi> v = k``."""
    counts = dim_stratum_counts(W, n, q, method)
    return counts[lam % q][k]


def dim_stratum_counts(W: Superpotential, n: int, q: int, method: str = "vectorized") -> list[list[int]]:
    """``out[lam][k]`` for all ``lam`` and ``0 <= k <= n``."""
    P = trace_expand(W, n)
    check_prime(q, P)
    m = W.m
    nv = m * n * n
    pts = _grid(q, nv)
    comp, outer = _compile(P, q, ())
    order = [P.vars.index(v) for v in outer]
    lam_vals = _eval_part(comp.parts[0], pts[:, order].T, q)
    mats = _matrices_from_points(pts, m, n)
    vecs = _grid(q, n)
    out = [[0] * (n + 1) for _ in range(q)]
    if method == "vectorized":
        if n != 2:
            raise ValueError("the vectorized path handles n = 2 only")
        for v in vecs:
            if not v.any():
                dims = np.zeros(len(pts), dtype=np.int64)
            else:
                Av = mats @ v  # (N, m, 2)
                det = (v[0] * Av[..., 1] - v[1] * Av[..., 0]) % q
                dims = np.where((det == 0).all(axis=1), 1, 2)
            for lam in range(q):
                sel = lam_vals == lam
                binc = np.bincount(dims[sel], minlength=n + 1)
                for d in range(n + 1):
                    out[lam][d] += int(binc[d])
    elif method == "bfs":
        for idx in range(len(pts)):
            A = mats[idx]
            lam = int(lam_vals[idx])
            for v in vecs:
                out[lam][span_dimension(A, v, q)] += 1
    else:
        raise ValueError(f"unknown method {method!r}")
    return out


def span_dimension(mats: np.ndarray, v: np.ndarray, q: int) -> int:
    """Dimension of the smallest subspace containing ``v`` stable under ``mats``."""
    basis: list[np.ndarray] = []
    queue = [np.asarray(v) % q]
    while queue:
        w = queue.pop(0)
        trial = np.array(basis + [w])
        if int(batch_rank(trial[None], q)[0]) > len(basis):
            basis.append(w)
            queue.extend((A @ w) % q for A in mats)
    return len(basis)


# -- interpolation --------------------------------------------------------------

def fit_count_polynomial(points: Sequence[tuple[int, int]], degree_bound: int) -> MotiveClass:
    """Integer polynomial through ``(q, count)``; extra points must agree."""
    pts = sorted(dict(points).items())
    if len(pts) < degree_bound + 1:
        raise ValueError(f"need {degree_bound + 1} distinct points, got {len(pts)}")
    use = pts[:degree_bound + 1]
    coeffs = [Fraction(0)] * (degree_bound + 1)
    for i, (xi, yi) in enumerate(use):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(use):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xj * basis[d + 1]
            denom *= xi - xj
        for d, b in enumerate(basis):
            coeffs[d] += yi * b / denom
    if any(c.denominator != 1 for c in coeffs):
        raise NonIntegralFit(f"interpolated coefficients {[str(c) for c in coeffs]} are not integers")
    poly = MotiveClass.from_polynomial([int(c) for c in coeffs])
    for x, y in pts[degree_bound + 1:]:
        if poly.evaluate(x) != y:
            raise NonIntegralFit(f"fit does not reproduce the count {y} at q={x}")
    return poly


# -- records and the residue-class protocol --------------------------------------

@dataclass(frozen=True)
class CountRecord:
    q: int
    lambda_class: str
    count: int
    elapsed_ms: int = 0
    lambda_value: int | None = None

    def csv_row(self) -> str:
        return f"{self.q},{self.lambda_class},{self.count},{self.elapsed_ms}"


CSV_HEADER = "q,lambda_class,count,elapsed_ms"


def non_cube(q: int) -> int:
    """Smallest element of ``F_q^*`` that is not a cube (needs ``q = 1 mod 3``)."""
    cubes = {pow(a, 3, q) for a in range(1, q)}
    return next(a for a in range(2, q) if a not in cubes)


def cubic_class_reps(q: int) -> list[int]:
    """One ``lambda`` per class of ``F_q^* / (F_q^*)^3``."""
    if q % 3 != 1:
        return [1]
    g = non_cube(q)
    return [1, g, g * g % q]


def lambda_class(q: int, lam: int) -> str:
    lam %= q
    if lam == 0:
        return "zero"
    if q % 3 != 1:
        return "unit"
    cube = pow(lam, (q - 1) // 3, q)
    g = non_cube(q)
    for i in range(3):
        if pow(pow(g, i, q), (q - 1) // 3, q) == cube:
            return f"cubic-class-{i}"
    raise AssertionError("unreachable")


def count_records(poly: Polynomial, q: int, lambda_tag: int | str = "all", jobs: int = 1) -> list[CountRecord]:
    start = time.perf_counter()
    counts = count_all_lambdas(poly, q, jobs=jobs)
    elapsed = int((time.perf_counter() - start) * 1000)
    lams = [0] if lambda_tag == 0 else cubic_class_reps(q)
    if lambda_tag == "all":
        lams = [0] + cubic_class_reps(q)
    return [CountRecord(q, lambda_class(q, lam), counts[lam], elapsed, lam) for lam in lams]


@dataclass
class ProtocolResult:
    q: int
    channel: str
    status: str  # "pass", "fail" or "skipped"
    expected: object
    got: object
    note: str = ""

    def to_json(self) -> dict:
        return {"q": self.q, "channel": self.channel, "status": self.status,
                "expected": self.expected, "got": self.got, "note": self.note}


def verify_motive_against_counts(P: MotiveClass, poly: Polynomial | StratumSpec, primes: Iterable[int],
                                 lambda_tag: int | None = None, jobs: int = 1,
                                 raise_on_fail: bool = False) -> list[ProtocolResult]:
    """Compare an equivariant motive with point counts of ``poly = lambda``.

    ``q = 2 mod 3``: cubing is bijective and ``Mt -> 0``.  ``q = 1 mod 3``:
    for ``lambda != 0`` the three cubic classes must see ``[mu3] -> 3`` on
    exactly one class and ``[mu3] -> 0`` on the other two; motives carrying
    ``Mt2`` are not checked there.  ``lambda = 0`` uses ``[mu3] -> #mu_3(F_q)``.
    """
    if isinstance(poly, StratumSpec):
        if lambda_tag is None:
            lambda_tag = poly.rhs_class
        poly = poly.equation
    if lambda_tag is None:
        lambda_tag = 1
    P = MotiveClass.coerce(P)
    has_mt2 = not P.component(2).is_zero()
    results = []
    for q in primes:
        counts = count_all_lambdas(poly, q, jobs=jobs)
        if lambda_tag == 0:
            expected = P.evaluate(q, cube_roots_of_unity(q))
            got = counts[0]
            results.append(ProtocolResult(q, "zero", "pass" if got == expected else "fail", expected, got))
        elif q % 3 != 1:
            expected = P.evaluate(q, 1)
            got = counts[1]
            results.append(ProtocolResult(q, "unit", "pass" if got == expected else "fail", expected, got))
        elif has_mt2:
            results.append(ProtocolResult(q, "cubic-classes", "skipped", None,
                                          [counts[r] for r in cubic_class_reps(q)],
                                          "Mt^2 terms are not polynomial-count for q = 1 mod 3"))
        else:
            expected = sorted([P.evaluate(q, 3), P.evaluate(q, 0), P.evaluate(q, 0)])
            got = [counts[r] for r in cubic_class_reps(q)]
            ok = sorted(got) == expected
            results.append(ProtocolResult(q, "cubic-classes", "pass" if ok else "fail", expected, got))
    if raise_on_fail:
        for r in results:
            if r.status == "fail":
                raise Mismatch(f"count mismatch at q={r.q} ({r.channel}): expected {r.expected}, got {r.got}",
                               q=r.q, channel=r.channel, expected=r.expected, got=r.got)
    return results
