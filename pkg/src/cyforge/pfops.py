"""Order-4 Picard-Fuchs operators ``sum_n z^n sum_i c[n][i] theta^i``.

Operators are canonical when ``c[0] = (0, 0, 0, 0, 1)``, i.e. monic
``theta^4`` at ``z^0``. All coefficients are exact ``Fraction``s.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .errors import AmbiguousFit, NoOperatorFound, NonMUMPoint
from .lattice import InconsistentSystem, nullity, solve_rational
from .period import compress, period_step
from .series import RationalSeries, binomial_series, format_fraction

log = logging.getLogger(__name__)

ORDER = 4
GUARD = 5


class DiffOperator:
    """Differential operator in ``theta = z d/dz`` with polynomial coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Sequence]):
        rows = []
        for row in coeffs:
            row = [Fraction(x) for x in row]
            if len(row) > ORDER + 1:
                raise ValueError("theta-order above 4")
            rows.append(tuple(row + [Fraction(0)] * (ORDER + 1 - len(row))))
        while len(rows) > 1 and not any(rows[-1]):
            rows.pop()
        if not rows:
            raise ValueError("empty operator")
        self.coeffs: tuple[tuple[Fraction, ...], ...] = tuple(rows)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_canonical(self) -> bool:
        return self.coeffs[0] == (0, 0, 0, 0, 1)

    def poly(self, i: int) -> list[Fraction]:
        """Coefficients in z of the polynomial multiplying ``theta^i``."""
        return [row[i] for row in self.coeffs]

    def theta_poly(self, n: int) -> tuple[Fraction, ...]:
        return self.coeffs[n]

    def __eq__(self, other):
        return isinstance(other, DiffOperator) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"DiffOperator({self.to_text()!r})"

    def to_text(self) -> str:
        """Render as ``c * z^n * T^i`` terms, ordered by ``n`` then falling ``i``."""
        parts = []
        for n, row in enumerate(self.coeffs):
            for i in range(ORDER, -1, -1):
                c = row[i]
                if not c:
                    continue
                factors = []
                mag = abs(c)
                if mag != 1 or (n == 0 and i == 0):
                    factors.append(format_fraction(mag))
                if n:
                    factors.append("z" if n == 1 else f"z^{n}")
                if i:
                    factors.append("T" if i == 1 else f"T^{i}")
                sign = "-" if c < 0 else "+"
                parts.append((sign, " * ".join(factors)))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    @classmethod
    def from_text(cls, text: str) -> "DiffOperator":
        src = text.replace(" ", "")
        if not src:
            raise ValueError("empty operator text")
        terms = re.findall(r"[+-]?[^+-]+", src)
        if "".join(terms) != src:
            raise ValueError(f"cannot parse operator {text!r}")
        table: dict[int, dict[int, Fraction]] = {}
        for term in terms:
            sign = -1 if term.startswith("-") else 1
            body = term.lstrip("+-")
            c = Fraction(sign)
            n = i = 0
            for f in body.split("*"):
                m = re.fullmatch(r"([zT])(?:\^(\d+))?", f)
                if m:
                    e = int(m.group(2) or 1)
                    if m.group(1) == "z":
                        n += e
                    else:
                        i += e
                elif re.fullmatch(r"\d+(/\d+)?", f):
                    c *= Fraction(f)
                else:
                    raise ValueError(f"bad factor {f!r} in operator text")
            if i > ORDER:
                raise ValueError("theta-order above 4")
            row = table.setdefault(n, {})
            row[i] = row.get(i, Fraction(0)) + c
        deg = max(table)
        return cls([[table.get(n, {}).get(i, 0) for i in range(ORDER + 1)] for n in range(deg + 1)])

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "c": [[format_fraction(x) for x in row] for row in self.coeffs],
        }

    @classmethod
    def from_json(cls, data) -> "DiffOperator":
        if isinstance(data, str):
            data = json.loads(data)
        return cls([[Fraction(x) for x in row] for row in data["c"]])


def from_theta_polynomials(polys: Sequence[Sequence]) -> DiffOperator:
    """Build from ``[P_0, P_1, ...]`` where ``P_n`` lists theta coefficients low to high."""
    return DiffOperator(polys)


def apply(op: DiffOperator, s: RationalSeries) -> RationalSeries:
    """Image of a power series; degree-k coefficient is sum c[n][i] (k-n)^i s[k-n]."""
    out = []
    for k in range(s.order + 1):
        total = Fraction(0)
        for n, row in enumerate(op.coeffs):
            if n > k:
                break
            a = s[k - n]
            if not a:
                continue
            m = k - n
            total += a * sum(c * m ** i for i, c in enumerate(row) if c)
        out.append(total)
    return RationalSeries(out)


def apply_log(op: DiffOperator, parts: Sequence[RationalSeries]) -> list[RationalSeries]:
    """Apply to ``sum_m parts[m] log(z)^m / m!``, returning the same shape."""
    order = min(p.order for p in parts)
    parts = [p.truncate(order) for p in parts]
    zero = RationalSeries.constant(0, order)

    def theta(fs):
        # theta(f log^m/m!) = theta(f) log^m/m! + f log^(m-1)/(m-1)!
        return [fs[m].theta() + (fs[m + 1] if m + 1 < len(fs) else zero) for m in range(len(fs))]

    powers = [list(parts)]
    for _ in range(ORDER):
        powers.append(theta(powers[-1]))
    result = [zero] * len(parts)
    for i in range(ORDER + 1):
        poly = op.poly(i)
        if not any(poly):
            continue
        cz = RationalSeries(poly[: order + 1] + [0] * max(0, order + 1 - len(poly)))
        result = [r + cz * f for r, f in zip(result, powers[i])]
    return result


def self_duality_defect(op: DiffOperator) -> list[Fraction]:
    """Coefficients of ``C_3 - 2 theta C_4`` (all zero when the identity holds)."""
    c3, c4 = op.poly(3), op.poly(4)
    return [a - 2 * n * b for n, (a, b) in enumerate(zip(c3, c4))]


def calabi_yau_condition_defect(op: DiffOperator, order: int = 20) -> RationalSeries:
    """Series residue of the essential self-adjointness condition.

    For ``theta^4 + a3 theta^3 + a2 theta^2 + a1 theta + a0`` (after dividing by
    ``C_4``) the condition reads
    ``a1 = a2 a3 / 2 - a3^3 / 8 + theta a2 - 3/4 a3 theta a3 - 1/2 theta^2 a3``.
    """
    c = [RationalSeries(list(op.poly(i)) + [0] * order).truncate(order) for i in range(ORDER + 1)]
    inv = c[4].inverse()
    a3, a2, a1 = c[3] * inv, c[2] * inv, c[1] * inv
    rhs = a2 * a3 / 2 - a3 * a3 * a3 / 8 + a2.theta() - a3 * a3.theta() * Fraction(3, 4) - a3.theta().theta() / 2
    return a1 - rhs


@dataclass
class FitResult:
    operator: DiffOperator
    step: int
    series: RationalSeries          # the period in the operator's variable
    verified_through: int
    minimal_order_confirmed: bool
    self_dual: bool


def _fit_degree(a: RationalSeries, d: int, last: int):
    rows, rhs = [], []
    for k in range(1, last + 1):
        row = []
        for n in range(1, d + 1):
            for i in range(ORDER + 1):
                row.append((k - n) ** i * a[k - n] if k >= n else 0)
        rows.append(row)
        rhs.append(-(k ** ORDER) * a[k])
    return solve_rational(rows, rhs)


def _lower_order_exists(a: RationalSeries, d: int) -> bool:
    """True if some nonzero operator of theta-order <= 3 and z-degree <= d kills ``a``."""
    rows = []
    for k in range(a.order + 1):
        row = []
        for n in range(d + 1):
            for i in range(ORDER):
                row.append((k - n) ** i * a[k - n] if k >= n else 0)
        rows.append(row)
    return nullity(rows) > 0


def fit_details(s: RationalSeries, d_max: int, guard: int = GUARD) -> FitResult:
    """Smallest-degree canonical operator annihilating the period ``s``.

    A series supported on multiples of ``g`` is first rewritten in ``z^g``.
    Degrees ``d = 1..d_max`` are tried in turn; the solve uses coefficients up
    to ``order - guard`` and the last ``guard`` coefficients verify the result.
    """
    if s[0] != 1:
        raise ValueError("period must be normalized to constant term 1")
    step = period_step(s) or 1
    a, _ = compress(s, step)
    n = a.order
    if n < ORDER * 1 + 1 + guard:
        raise NoOperatorFound(f"series too short ({n} terms after compression)")
    for d in range(1, d_max + 1):
        if n < ORDER * d + d + guard:
            break
        try:
            sol = _fit_degree(a, d, n - guard)
        except InconsistentSystem:
            continue
        if not sol.unique:
            raise AmbiguousFit(f"degree {d}: solution space has dimension {sol.nullity}")
        coeffs = [[0, 0, 0, 0, 1]] + [sol.x[(m - 1) * 5:(m) * 5] for m in range(1, d + 1)]
        op = DiffOperator(coeffs)
        residual = apply(op, a)
        if any(residual.coefficients):
            log.info("degree %d fit failed verification", d)
            continue
        lower = _lower_order_exists(a, d) if a.order + 1 >= ORDER * (d + 1) + guard else False
        defect = self_duality_defect(op)
        if any(defect):
            log.warning("fitted operator violates C3 = 2 theta C4: %s", [str(x) for x in defect])
        return FitResult(op, step, a, n, not lower, not any(defect))
    raise NoOperatorFound(f"no operator of degree <= {d_max} found with {n} terms; increase d_max or order")


def fit_operator(s: RationalSeries, d_max: int, guard: int = GUARD) -> DiffOperator:
    return fit_details(s, d_max, guard).operator


@dataclass(frozen=True)
class FrobeniusBasis:
    sigma: tuple[RationalSeries, ...]

    @property
    def order(self) -> int:
        return self.sigma[0].order

    def log_parts(self, j: int) -> list[RationalSeries]:
        """``varpi_j / j!`` as coefficients of ``log(z)^m / m!``, m = 0..j."""
        return [self.sigma[j - m] for m in range(j + 1)]


def _eps_mul(a, b):
    n = len(a)
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]


def _eps_inv(a):
    n = len(a)
    out = [1 / a[0]]
    for k in range(1, n):
        out.append(-sum(a[i] * out[k - i] for i in range(1, k + 1)) / a[0])
    return out


def _eps_poly_at(row, shift: int, n: int):
    """``sum_i row[i] (shift + eps)^i`` truncated to ``eps^(n-1)``."""
    out = [Fraction(0)] * n
    for i, c in enumerate(row):
        if not c:
            continue
        for j in range(min(i, n - 1) + 1):
            out[j] += c * _binom(i, j) * shift ** (i - j)
    return out


def _binom(n, k):
    return factorial(n) // (factorial(k) * factorial(n - k))


def frobenius(op: DiffOperator, order: int) -> FrobeniusBasis:
    """Frobenius solutions at a point of maximal unipotent monodromy.

    ``sigma_j`` is the ``eps^j`` Taylor coefficient of the coefficient series
    ``a_k(eps)`` of the formal solution ``z^eps sum a_k(eps) z^k``.
    """
    if not op.is_canonical:
        raise NonMUMPoint("indicial polynomial is not theta^4")
    n = ORDER
    a: list[list[Fraction]] = [[Fraction(1)] + [Fraction(0)] * (n - 1)]
    for k in range(1, order + 1):
        acc = [Fraction(0)] * n
        for m in range(1, min(op.degree, k) + 1):
            prod = _eps_mul(_eps_poly_at(op.coeffs[m], k - m, n), a[k - m])
            acc = [x + y for x, y in zip(acc, prod)]
        lead = _eps_poly_at(op.coeffs[0], k, n)
        a.append([-x for x in _eps_mul(acc, _eps_inv(lead))])
    sigma = tuple(RationalSeries([a[k][j] for k in range(order + 1)]) for j in range(n))
    return FrobeniusBasis(sigma)


def holomorphic_period(op: DiffOperator, order: int) -> RationalSeries:
    return frobenius(op, order).sigma[0]


# smallest magnitude first, so the identity map reports e = 0
HALF_INTEGER_EXPONENTS = tuple(sorted((Fraction(k, 2) for k in range(-4, 5)), key=lambda e: (abs(e), e)))


def mobius_equivalent(a: DiffOperator, b: DiffOperator, c, e_range: Iterable = HALF_INTEGER_EXPONENTS, order: int = 24):
    """Exponent ``e`` such that ``(1 + c x)^e Pi_a(x / (1 + c x))`` is killed by ``b``.

    Returns None when no exponent in ``e_range`` works.
    """
    c = Fraction(c)
    pa = holomorphic_period(a, order)
    zx = RationalSeries([0, 1] + [0] * (order - 1)) * binomial_series(c, -1, order)
    pulled = pa.compose(zx)
    for e in e_range:
        cand = binomial_series(c, e, order) * pulled
        if not any(apply(b, cand).coefficients):
            return Fraction(e) if Fraction(e).denominator != 1 else int(e)
    return None
