"""Motivic Donaldson-Thomas series of cubic superpotentials, checked against point counts."""

from .motive import L, MT, MT2, MotiveClass, MotiveRatio, adams, gl_motive, mot_eval, sigma2
from .series import Series, exp_product_form, pleth_exp, pleth_log
from .superpotential import Superpotential, cell_equations, parse_potential, trace_expand
from .pipeline import MotiveTable, induct_delta, induct_fiber, table_from_catalog, u_series

__all__ = [
    "L", "MT", "MT2", "MotiveClass", "MotiveRatio", "adams", "gl_motive", "mot_eval", "sigma2",
    "Series", "exp_product_form", "pleth_exp", "pleth_log",
    "Superpotential", "cell_equations", "parse_potential", "trace_expand",
    "MotiveTable", "induct_delta", "induct_fiber", "table_from_catalog", "u_series",
]
