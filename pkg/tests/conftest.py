"""Shared fixtures: sample data, operators typed in from published formulas, cached fits."""

from fractions import Fraction
from importlib import resources

import pytest
import sympy as sp

from cyforge.io import parse_laurent, parse_vertex_matrix
from cyforge.period import period_step, principal_period
from cyforge.pfops import DiffOperator, fit_details
from cyforge.polytope import LatticePolytope, polar_dual

DATA = resources.files("cyforge") / "data"
SUPPORTS = ["cross", "quintic", "x44a", "x44b", "x48a1", "x48a2", "x48b"]
SERIES_DEPTH = 25

INST_44 = [3744, 50112, 1656320, 77726016, 4505800320, 298578230016, 21713403010176]
INST_48 = [2600, 25600, 530000, 15880000, 584279000, 24562482400, 1132828485400]


def read_support(name):
    text = (DATA / "supports" / f"{name}.laurent").read_text()
    return parse_laurent("\n".join(ln for ln in text.splitlines() if not ln.startswith("#")))


def dual_side(name):
    """Polytope spanned by a shipped support (the polar dual of the Newton polytope)."""
    return LatticePolytope(read_support(name).monomials)


def newton_side(name):
    return polar_dual(dual_side(name))


def read_polytope(name):
    return parse_vertex_matrix((DATA / "polytopes" / f"{name}.txt").read_text())


_th, _z = sp.symbols("th z")


def operator_from_sympy(expr):
    """Canonical coefficient rows of an expression in th and z, read off with sympy."""
    poly = sp.Poly(sp.expand(expr), _z, _th)
    rows = [[Fraction(0)] * 5 for _ in range(poly.degree(_z) + 1)]
    for (i, j), c in poly.terms():
        rows[i][j] = Fraction(int(c.p), int(c.q))
    return DiffOperator(rows)


def _published():
    th, z = _th, _z
    return {
        "quintic": th**4 - 5 * z * (5 * th + 1) * (5 * th + 2) * (5 * th + 3) * (5 * th + 4),
        "op44a": th**4 - 2 * z * (102 * th**4 + 204 * th**3 + 155 * th**2 + 53 * th + 7)
        + 4 * z**2 * (th + 1) ** 2 * (396 * th**2 + 792 * th + 311)
        - 784 * z**3 * (th + 1) * (th + 2) * (2 * th + 1) * (2 * th + 5),
        "op44b": th**4 - 2 * z * (90 * th**4 + 188 * th**3 + 141 * th**2 + 47 * th + 6)
        - 4 * z**2 * (564 * th**4 + 1520 * th**3 + 1705 * th**2 + 934 * th + 192)
        - 16 * z**3 * (2 * th + 1) * (286 * th**3 + 813 * th**2 + 851 * th + 294)
        - 192 * z**4 * (2 * th + 1) * (2 * th + 3) * (4 * th + 3) * (4 * th + 5),
        "op48a": th**4 - z * (113 * th**4 + 226 * th**3 + 173 * th**2 + 60 * th + 8)
        - 8 * z**2 * (th + 1) ** 2 * (119 * th**2 + 238 * th + 92)
        - 484 * z**3 * (th + 1) * (th + 2) * (2 * th + 1) * (2 * th + 5),
        "op48b": th**4 - z * (137 * th**4 + 258 * th**3 + 201 * th**2 + 72 * th + 10)
        + 4 * z**2 * (387 * th**4 + 1016 * th**3 + 1151 * th**2 + 642 * th + 135)
        - 4 * z**3 * (2 * th + 1) * (758 * th**3 + 2137 * th**2 + 2269 * th + 820)
        + 2000 * z**4 * (th + 1) ** 2 * (2 * th + 1) * (2 * th + 3),
    }


@pytest.fixture(scope="session")
def published():
    return {k: operator_from_sympy(v) for k, v in _published().items()}


class FitCache:
    def __init__(self):
        self._fits = {}

    def __call__(self, name):
        if name not in self._fits:
            s = read_support(name)
            step = period_step(principal_period(s, 12))
            series = principal_period(s, SERIES_DEPTH * step)
            self._fits[name] = fit_details(series, 4)
        return self._fits[name]


@pytest.fixture(scope="session")
def fits():
    return FitCache()


ACCEPTANCE_LINES = {}


def record(criterion, ok, detail):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES[criterion] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
