"""Acceptance criteria 1-8, one test each, with their time budgets.

A summary line per criterion is printed at the end of the run (see conftest).
"""

from __future__ import annotations

import time
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from dtmotive.catalog import POTENTIALS, bracket, value
from dtmotive.counting import (
    count_all_lambdas, count_anticommutator_rep2, count_fiber_n2, cubic_class_reps, dim_stratum_counts,
    fit_count_polynomial, verify_motive_against_counts,
)
from dtmotive.motive import L, MT, MT2, MotiveClass, MotiveRatio, cube_roots_of_unity, gl_motive, mot_eval
from dtmotive.pipeline import (
    dimensional_reduction_check, functional_equation_check, induct_delta, induct_fiber, table_from_catalog,
    u_series,
)
from dtmotive.expr import parse_series
from dtmotive.series import Series, exp_product_form, geometric_fraction, laurent_truncate, pleth_exp, pleth_log
from dtmotive.superpotential import cell_equations, parse_potential, trace_expand

from conftest import polynomial_classes, tag_free_classes

QUANTUM = parse_potential(POTENTIALS["quantum"])
WEYL = parse_potential(POTENTIALS["weyl"])
R = MotiveRatio.parse


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


@pytest.mark.criterion(1)
def test_quantum_cells_by_counting(record_property):
    cells = {
        "S1": L ** 9 - L ** 6 - 2 * L ** 5 + 3 * L ** 4 - L ** 3,
        "S2": L ** 8 - 2 * L ** 5 + L ** 4,
        "S3": L ** 7 - 2 * L ** 4 + L ** 3,
    }
    for spec in cell_equations(QUANTUM, 1):
        motive = cells[spec.name]
        assert motive == value("quantum", f"{spec.name}(1)")
        for q in (5, 7):
            with Timer() as t:
                got = count_all_lambdas(spec.equation, q)[1]
            assert got == mot_eval(motive, q), (spec.name, q)
            assert t.seconds < 60
        got = count_all_lambdas(spec.equation, 2)[1]
        if got != mot_eval(motive, 2):
            # 2rvz vanishes in characteristic 2; the complex motive does not apply there
            note = f"{spec.name} at q=2: counted {got}, motive gives {mot_eval(motive, 2)}"
            warnings.warn(note)
            record_property("warning", note)


@pytest.mark.criterion(2)
def test_quantum_induction():
    with Timer() as t:
        bare = table_from_catalog("quantum", with_fibers=False)
        m1 = induct_fiber(2, 1, bare)
        dm = (induct_delta(2, bare) * gl_motive(2)).as_class()
    assert m1 == L ** 11 - L ** 8 - 3 * L ** 7 + 2 * L ** 6 + 2 * L ** 5 - L ** 4
    assert dm == L ** 4 * (L ** 5 + 3 * L ** 4 - 2 * L ** 3 - 2 * L ** 2 + L)
    assert t.seconds < 1


@pytest.mark.criterion(3)
def test_dimensional_reduction():
    with Timer() as t:
        points = [(q, count_anticommutator_rep2(q)) for q in (5, 7, 11, 13, 17, 19, 23)]
    rep2 = fit_count_polynomial(points, 5)  # the seventh prime must agree with the fit
    assert rep2 == L ** 5 + 3 * L ** 4 - 2 * L ** 3 - 2 * L ** 2 + L
    T = table_from_catalog("quantum")
    reports = dimensional_reduction_check(T, rep2)
    assert all(r.ok for r in reports), [r.to_json() for r in reports if not r.ok]
    assert t.seconds < 300


@pytest.mark.criterion(4)
def test_quantum_exp():
    with Timer() as t:
        f = parse_series("(2L-1)/(L-1)*t/(1-t) + (L-1)*t^2/(1-t^2)", 2)
        assert f == geometric_fraction(R("(2L-1)/(L-1)"), 1, 2) + geometric_fraction(L - 1, 2, 2)
        c2 = pleth_exp(f)[2]
    expect = R("(L^4 + 3L^3 - 2L^2 - 2L + 1)/((L^2-1)(L-1))")
    assert c2.num * expect.den == expect.num * c2.den
    assert pleth_exp(bracket("quantum", 2))[2] == expect
    assert t.seconds < 1


@pytest.mark.criterion(5)
def test_weyl_cells_by_residue_classes():
    cells = {
        1: {"S1": L ** 9 - L ** 6, "S2": L ** 8 - MT * L ** 6, "S3": L ** 7 - MT * L ** 5},
        0: {"S1": L ** 9 + L ** 7 - L ** 6, "S2": L ** 8, "S3": L ** 7},
    }
    for tag, motives in cells.items():
        for spec in cell_equations(WEYL, tag):
            motive = motives[spec.name]
            assert motive == value("weyl", f"{spec.name}({tag})")
            with Timer() as t:
                results = verify_motive_against_counts(motive, spec, [5, 7, 13])
            assert [r.status for r in results] == ["pass"] * 3, [r.to_json() for r in results]
            assert t.seconds < 120
    # the q = 1 mod 3 channel is live: the classes differ at lambda = 1
    s2 = count_all_lambdas(cell_equations(WEYL, 1)[1].equation, 7)
    assert len({s2[lam] for lam in cubic_class_reps(7)}) == 2


@pytest.mark.criterion(6)
def test_weyl_series():
    T = table_from_catalog("weyl")
    c2 = u_series(T, 2)[2]
    expect = MotiveRatio(L ** 3 * (L - 1) + MT * L * (L ** 2 - 1) + MT2 * L ** 2, (L ** 2 - 1) * (L - 1))
    assert c2 == expect
    assert pleth_exp(bracket("weyl", 2))[2] == expect


@pytest.mark.criterion(7)
def test_functional_equation_and_stratification_shadow():
    with Timer() as t:
        for case in ("quantum", "weyl"):
            report = functional_equation_check(table_from_catalog(case), 2)
            assert report.ok, report.to_json()
        for q in (2, 3):
            strata = dim_stratum_counts(QUANTUM, 2, q)
            fibers = count_fiber_n2(QUANTUM, q)
            m1 = count_all_lambdas(trace_expand(QUANTUM, 1), q)
            cells = [count_all_lambdas(s.equation, q) for s in cell_equations(QUANTUM)]
            gl2 = mot_eval(gl_motive(2), q)
            for lam in range(q):
                assert strata[lam][0] == fibers[lam]
                conv = sum(m1[mu] * m1[(lam - mu) % q] for mu in range(q))
                assert strata[lam][1] * (q - 1) == gl2 * q ** 2 * conv
                assert strata[lam][2] == gl2 * sum(c[lam] for c in cells)
                assert sum(strata[lam]) == q ** 2 * fibers[lam]
    assert t.seconds < 120


@pytest.mark.criterion(8)
def test_property_suites():
    mu3 = {q: cube_roots_of_unity(q) for q in (2, 5, 7, 13)}

    @settings(max_examples=40, deadline=None)
    @given(tag_free_classes(), tag_free_classes(), tag_free_classes())
    def ring_axioms(a, b, c):
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a

    denominators = [MotiveClass.constant(1), L - 1, L ** 2 - 1]

    @settings(max_examples=15, deadline=None)
    @given(st.lists(st.builds(MotiveRatio, tag_free_classes(max_terms=2), st.sampled_from(denominators)),
                    min_size=5, max_size=5))
    def round_trip(cs):
        f = Series([MotiveRatio(0)] + cs)
        assert pleth_log(pleth_exp(f)) == f

    @settings(max_examples=40, deadline=None)
    @given(polynomial_classes(), polynomial_classes(), st.sampled_from([2, 5, 7, 13]))
    def homomorphism(a, b, q):
        a = a * MT + b
        assert mot_eval(a * b, q, mu3[q]) == mot_eval(a, q, mu3[q]) * mot_eval(b, q, mu3[q])
        assert mot_eval(a + b, q, mu3[q]) == mot_eval(a, q, mu3[q]) + mot_eval(b, q, mu3[q])

    with Timer() as t:
        ring_axioms()
        round_trip()
        homomorphism()
        for W, q in ((QUANTUM, 5), (WEYL, 7)):
            counts = count_fiber_n2(W, q)
            assert sum(counts) == q ** 12
            for lam in range(1, q):
                assert all(counts[lam] == counts[lam * u ** 3 % q] for u in range(1, q))
        for text in ("(2L-1)/(L-1)*t/(1-t) + (L-1)*t^2/(1-t^2)", "L/(L-1)*t"):
            f = parse_series(text, 3)
            assert exp_product_form(f, 3, -3) == laurent_truncate(pleth_exp(f), -3)
    assert t.seconds < 60
