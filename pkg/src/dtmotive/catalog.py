"""Reference motives for the two worked superpotentials.

``quantum`` is ``W = XYZ + XZY`` (the quantum 3-space at ``q = -1``) and
``weyl`` is ``W = XYZ - XZY - 1/3 X^3`` (the homogenized Weyl algebra).
Each entry keeps the formula text it was transcribed from, so a failing
regression points at the exact display.
"""

from __future__ import annotations

from dataclasses import dataclass

from .expr import parse_motive, parse_series
from .motive import MotiveClass, MotiveRatio
from .series import Series


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    expression: str  # in the package's expression language
    source: str  # formula text of the transcribed display
    derived: bool = False  # computed here rather than transcribed

    @property
    def value(self) -> MotiveClass | MotiveRatio:
        return parse_motive(self.expression)

    def to_json(self) -> dict:
        return {"name": self.name, "value": str(self.value), "source": self.source, "derived": self.derived}


POTENTIALS = {
    "quantum": "XYZ + XZY",
    "weyl": "XYZ - XZY - 1/3 XXX",
}

BRACKETS = {
    "quantum": "(2L-1)/(L-1)*t/(1-t) + (L-1)*t^2/(1-t^2)",
    "weyl": "L*Mt/(L-1)*t/(1-t)",
}

_QUANTUM = [
    CatalogEntry("M1(1)", "(L-1)^2", r"[\mathbb{M}_{3,1}^W(1)] = (\mathbb{L}-1)^2"),
    CatalogEntry("M1(0)", "3L^2 - 3L + 1", r"[ \mathbb{M}_{3,1}^W(0)]=3 \mathbb{L}^2-3\mathbb{L}+1"),
    CatalogEntry("S1(1)", "L^9 - L^6 - 2L^5 + 3L^4 - L^3",
                 r"[ \mathbf{S_1} ] = \mathbb{L}^9-\mathbb{L}^6-2\mathbb{L}^5+3\mathbb{L}^4-\mathbb{L}^3"),
    CatalogEntry("S2(1)", "L^8 - 2L^5 + L^4", r"[ \mathbf{S_2} ] = \mathbb{L}^8- 2 \mathbb{L}^5 + \mathbb{L}^4"),
    CatalogEntry("S3(1)", "L^7 - 2L^4 + L^3", r"[ \mathbf{S_3} ] = \mathbb{L}^7 - 2 \mathbb{L}^4 + \mathbb{L}^3"),
    CatalogEntry("BS2(1)", "L^9 + L^8 + L^7 - L^6 - 4L^5 + 2L^4",
                 r"[ \mathbf{BS}_{3,2}^W(1) ] = \mathbb{L}^9+\mathbb{L}^8+\mathbb{L}^7-\mathbb{L}^6-4\mathbb{L}^5+2\mathbb{L}^4"),
    CatalogEntry("M2(1)", "L^11 - L^8 - 3L^7 + 2L^6 + 2L^5 - L^4",
                 r"[ \mathbb{M}_{3,2}^W(1) ] &= \mathbb{L}^{11}-\mathbb{L}^8-3\mathbb{L}^7+2\mathbb{L}^6+2\mathbb{L}^5-\mathbb{L}^4"),
    CatalogEntry("M2(0)", "L^11 + L^9 + 2L^8 - 5L^7 + 3L^5 - L^4",
                 r"[ \mathbb{M}_{3,2}^W(0) ] &= \mathbb{L}^{11} + \mathbb{L}^9 + 2 \mathbb{L}^8 - 5\mathbb{L}^7 + 3 \mathbb{L}^5 - \mathbb{L}^4"),
    CatalogEntry("dM2", "L^4 (L^5 + 3L^4 - 2L^3 - 2L^2 + L)",
                 r"[\mathbb{M}_{3,2}^W(0)]-[\mathbb{M}_{3,2}^W(1) ]=\mathbb{L}^4(\mathbb{L}^5+3 \mathbb{L}^4-2\mathbb{L}^3-2\mathbb{L}^2+\mathbb{L})"),
    CatalogEntry("rep2", "L^5 + 3L^4 - 2L^3 - 2L^2 + L",
                 r"[ R_2 ] = \mathbb{L}^5 + 3 \mathbb{L}^4 -  2 \mathbb{L}^3 - 2 \mathbb{L}^2 + \mathbb{L}"),
    CatalogEntry("cone_gr24", "(L-1)(L^2+1)(L^2+L+1) + 1",
                 r"(\mathbb{L}-1)(\mathbb{L}^2+1)(\mathbb{L}^2+\mathbb{L}+1) + 1"),
    CatalogEntry("U[1]", "(2L-1)/(L-1)", r"\frac{2 \mathbb{L}-1}{\mathbb{L}-1}"),
    CatalogEntry("U[2]", "(L^4 + 3L^3 - 2L^2 - 2L + 1)/((L^2-1)(L-1))",
                 r"\frac{\mathbb{L}^4+3\mathbb{L}^3-2 \mathbb{L}^2 - 2 \mathbb{L}+1}{(\mathbb{L}^2-1)(\mathbb{L}-1)}"),
    # not displayed; solved from the fiber motives and checked by counting
    CatalogEntry("BS2(0)", "L^9 + L^8 + 2L^7 + 3L^6 - 6L^5 + 2L^4",
                 r"([GL_2]^{-1})((\mathbb{L}^2-1)[\mathbb{M}_{3,2}^W(0)] - [\wis{X}_{1,2,0}])", derived=True),
]

_WEYL = [
    CatalogEntry("M1(1)", "L^2 mu3", r"[\mathbb{M}_{3,1}^W(1)] =  \mathbb{L}^2[\mu_3]"),
    CatalogEntry("M1(0)", "L^2", r"[\mathbb{M}_{3,1}^W(0)] = \mathbb{L}^2"),
    CatalogEntry("S1(1)", "L^9 - L^6", r"[ \mathbf{S_1} ] = \mathbb{L}^9 - \mathbb{L}^6"),
    CatalogEntry("S2(1)", "L^8 - Mt L^6", r"[ \mathbf{S_2} ] = \mathbb{L}^8- \tilde{\mathbf{M}} \mathbb{L}^6"),
    CatalogEntry("S3(1)", "L^7 - Mt L^5", r"[ \mathbf{S_3} ] = \mathbb{L}^7 - \tilde{\mathbf{M}} \mathbb{L}^5"),
    CatalogEntry("BS2(1)", "L^9 + L^8 + L^7 + (mu3 - 2) L^6 + (mu3 - 1) L^5",
                 r"[ \mathbf{BS}_{3,2}^W(1) ] = \mathbb{L}^9 + \mathbb{L}^8 + \mathbb{L}^7 + ([\mu_3]-2) \mathbb{L}^6 + ([\mu_3]-1) \mathbb{L}^5"),
    CatalogEntry("S1(0)", "L^9 + L^7 - L^6", r"[ \mathbf{S_1} ] = \mathbb{L}^9 + \mathbb{L}^7 - \mathbb{L}^6"),
    CatalogEntry("S2(0)", "L^8", r"[ \mathbf{S_2} ] = \mathbb{L}^8"),
    CatalogEntry("S3(0)", "L^7", r"[ \mathbf{S_3} ] = \mathbb{L}^7"),
    CatalogEntry("BS2(0)", "L^9 + L^8 + 2L^7 - L^6",
                 r"[ \mathbf{BS}_{3,2}^W(0) ] = \mathbb{L}^9 + \mathbb{L}^8 + 2 \mathbb{L}^7 - \mathbb{L}^6"),
    CatalogEntry("dBS2", "L^7 + Mt L^6 + Mt L^5",
                 r"[\mathbf{BS}_{3,2}^W(0)]-[\mathbf{BS}_{3,2}^W(1)] = \mathbb{L}^7+ \tilde{\mathbf{M}} \mathbb{L}^6 + \tilde{\mathbf{M}} \mathbb{L}^5"),
    CatalogEntry("dM1", "Mt L^2", r"[ \mathbb{M}^W_{3,1}(0)]-[\mathbb{M}^W_{3,1}(1)] = \tilde{\mathbf{M}} \mathbb{L}^2"),
    CatalogEntry("(L^2-1)dM2/GL2", "L^7 + Mt L^6 + Mt L^5 + Mt2 L^6/(L-1)",
                 r"\mathbb{L}^7 + \tilde{\mathbf{M}} \mathbb{L}^6 + \tilde{\mathbf{M}} \mathbb{L}^5 + \tilde{\mathbf{M}}^2 \frac{\mathbb{L}^6}{(\mathbb{L}-1)}"),
    CatalogEntry("U[1]", "L Mt/(L-1)", r"\frac{\mathbb{L}(1-[\mu_3])}{\mathbb{L}-1}"),
    CatalogEntry("U[2]", "(L^3 (L-1) + Mt L (L^2-1) + Mt2 L^2)/((L^2-1)(L-1))",
                 r"\frac{\mathbb{L}^3(\mathbb{L}-1) + \tilde{\mathbf{M}} \mathbb{L}(\mathbb{L}^2-1) + \tilde{\mathbf{M}}^2 \mathbb{L}^2}{(\mathbb{L}^2-1)(\mathbb{L}-1)}"),
]

CATALOG: dict[str, dict[str, CatalogEntry]] = {
    "quantum": {e.name: e for e in _QUANTUM},
    "weyl": {e.name: e for e in _WEYL},
}

CASES = tuple(CATALOG)


def entry(case: str, name: str) -> CatalogEntry:
    return CATALOG[case][name]


def value(case: str, name: str):
    return CATALOG[case][name].value


def bracket(case: str, order: int) -> Series:
    return parse_series(BRACKETS[case], order)


def stratum_names(lambda_tag: int) -> list[str]:
    return [f"S{i}({lambda_tag})" for i in (1, 2, 3)]
