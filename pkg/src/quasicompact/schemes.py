"""Quasi-compact stencils for combined Riemann-Liouville derivatives.

A scheme approximates

    c_{-1} D f(x-h) + c_0 D f(x) + c_1 D f(x+h)
        ~ d_{-1} δ_{h,-1} f(x) + d_0 δ_{h,0} f(x) + d_1 δ_{h,1} f(x)

with the left RL derivative ``D`` and shifted Grünwald operators ``δ``.
Its Fourier error symbol is

    E(z) = sum_j c_j e^{jz} - sum_p d_p e^{pz} ((1 - e^{-z}) / z)^alpha,

and the scheme has order ``m`` when the coefficients ``e_1..e_{m-1}`` of ``E``
vanish. Two schemes of the same order ``l`` are combined into one of order
``l + 1`` by cancelling their ``e_l`` terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import series
from .grunwald import check_alpha
from .specialfn import DomainError

#: coefficient treated as zero when reading off the order
ZERO_TOL = 1e-10
#: coefficient treated as a genuine leading error term
NONZERO_TOL = 1e-8
MAX_SERIES_LENGTH = 8


class DegenerateCombinationError(ValueError):
    """The two schemes cannot be combined into a normalized higher-order one."""


class SchemeLabelError(ValueError):
    pass


@dataclass(frozen=True)
class SchemeSpec:
    """A quasi-compact stencil: compact-side ``c`` and Grünwald-shift ``d`` triples."""

    label: str
    c: tuple
    d: tuple
    order: int

    @property
    def symmetric_c(self) -> bool:
        return abs(self.c[0] - self.c[2]) <= 1e-14 * max(1.0, abs(self.c[1]))

    @property
    def is_normalized(self) -> bool:
        return abs(sum(self.c) - 1.0) < 1e-12 and abs(sum(self.d) - 1.0) < 1e-12


@dataclass(frozen=True)
class SecondOrderParams:
    """Parameters of the catalogued second-order constructions.

    ``family`` is one of ``"three-point"`` (superconvergent point interpolated
    from x-h, x, x+h), ``"two-point"`` (interpolated from ``(m, n)``) or
    ``"shifted"`` (two shifted operators ``(p, q)``, each re-centred through
    ``(m1, n1)`` and ``(m2, n2)``).
    """

    family: str
    p: int = 1
    q: int = 1
    m1: int = 0
    n1: int = 0
    m2: int = 0
    n2: int = 0


def beta(alpha: float) -> float:
    """Superconvergent offset ``1 - alpha/2``."""
    return 1.0 - check_alpha(alpha) / 2.0


def lambda_pair(m: int, n: int, b: float) -> tuple:
    """Interpolation weights of the point ``x + b h`` from ``x+(m-1)h`` and ``x+(n-1)h``."""
    if m == n:
        raise DomainError("lambda weights need m != n")
    return (b - n + 1) / (m - n), (b - m + 1) / (n - m)


def xi_pair(p: int, q: int, b: float) -> tuple:
    """Weights on ``δ_{h,p}`` and ``δ_{h,q}`` reproducing the derivative at ``x``."""
    if p == q:
        raise DomainError("xi weights need p != q")
    return (b + q - 1) / (q - p), (b + p - 1) / (p - q)


# catalogue ids 1..10
CATALOG = {
    1: SecondOrderParams("three-point"),
    2: SecondOrderParams("two-point", m1=1, n1=2),
    3: SecondOrderParams("two-point", m1=0, n1=1),
    4: SecondOrderParams("shifted", 0, 1, 1, 2, 0, 1),
    5: SecondOrderParams("shifted", 0, 1, 1, 2, 1, 2),
    6: SecondOrderParams("shifted", 0, 1, 1, 3, 0, 1),
    7: SecondOrderParams("shifted", 0, 1, 2, 3, 0, 1),
    8: SecondOrderParams("shifted", -1, 1, 2, 3, 0, 1),
    9: SecondOrderParams("shifted", -1, 1, 2, 4, 0, 1),
    10: SecondOrderParams("shifted", -1, 1, 3, 4, 0, 1),
}


def _triple(weights: dict, what: str) -> tuple:
    bad = [k for k, v in weights.items() if abs(k) > 1 and v != 0.0]
    if bad:
        raise DomainError(f"{what} uses offsets {bad}; not quasi-compact")
    return tuple(float(weights.get(k, 0.0)) for k in (-1, 0, 1))


def second_order_from_params(params: SecondOrderParams, alpha: float, label: str = "") -> SchemeSpec:
    b = beta(alpha)
    c: dict = {}
    d: dict = {}
    if params.family == "three-point":
        c = {-1: -b * (1 - b) / 2, 0: 1 - b * b, 1: b * (1 + b) / 2}
        d = {1: 1.0}
    elif params.family == "two-point":
        m, n = params.m1, params.n1
        lmn, lnm = lambda_pair(m, n, b)
        c = {m - 1: lmn, n - 1: lnm}
        d = {1: 1.0}
    elif params.family == "shifted":
        p, q = params.p, params.q
        xpq, xqp = xi_pair(p, q, b)
        for weight, shift, (m, n) in ((xpq, p, (params.m1, params.n1)),
                                      (xqp, q, (params.m2, params.n2))):
            lmn, lnm = lambda_pair(m, n, b)
            for off, lam in ((shift + m - 2, lmn), (shift + n - 2, lnm)):
                c[off] = c.get(off, 0.0) + weight * lam
        d = {p: xpq, q: xqp}
    else:
        raise ValueError(f"unknown family {params.family!r}")
    return SchemeSpec(label, _triple(c, "compact side"), _triple(d, "shift side"), 2)


def build_second_order(scheme_id: int, alpha: float) -> SchemeSpec:
    """Catalogued second-order scheme number 1..10."""
    if scheme_id not in CATALOG:
        raise SchemeLabelError(f"second-order scheme id must be 1..10, got {scheme_id}")
    return second_order_from_params(CATALOG[scheme_id], alpha, str(scheme_id))


def symbol_series(scheme: SchemeSpec, alpha: float, L: int = MAX_SERIES_LENGTH) -> np.ndarray:
    """Coefficients ``e_0..e_{L-1}`` of the scheme's error symbol ``E(z)``."""
    if L > MAX_SERIES_LENGTH:
        raise ValueError(f"series length is limited to {MAX_SERIES_LENGTH}")
    alpha = check_alpha(alpha)
    gsym = _grunwald_symbol(alpha, L)
    e = np.zeros(L)
    for j, cj in zip((-1, 0, 1), scheme.c):
        if cj:
            e += cj * series.exp_shift(j, L)
    for p, dp in zip((-1, 0, 1), scheme.d):
        if dp:
            e -= dp * series.mul(series.exp_shift(p, L), gsym)
    return e


@lru_cache(maxsize=256)
def _grunwald_symbol_cached(alpha: float, L: int) -> tuple:
    return tuple(series.grunwald_symbol(alpha, L))


def _grunwald_symbol(alpha, L):
    return np.array(_grunwald_symbol_cached(float(alpha), int(L)))


def expansion_coeffs(gamma_: float, p: int, alpha: float, L: int = MAX_SERIES_LENGTH) -> np.ndarray:
    """Coefficients ``a_l(gamma, p)`` of ``e^{gamma z} - e^{pz} G(z)^alpha``.

    ``gamma`` may be any real offset, so this covers the superconvergent point.
    """
    alpha = check_alpha(alpha)
    return series.exp_shift(gamma_, L) - series.mul(series.exp_shift(p, L), _grunwald_symbol(alpha, L))


def verify_order(scheme: SchemeSpec, alpha: float) -> int:
    """Largest ``m`` with ``e_1 = ... = e_{m-1} = 0`` and ``e_m`` clearly nonzero."""
    e = symbol_series(scheme, alpha, MAX_SERIES_LENGTH)
    scale = max(1.0, max(abs(v) for v in scheme.c + scheme.d))
    for m in range(1, MAX_SERIES_LENGTH):
        if abs(e[m]) > ZERO_TOL * scale:
            return m
    return MAX_SERIES_LENGTH


def combine(i: SchemeSpec, j: SchemeSpec, alpha: float, normalize: bool = True) -> SchemeSpec:
    """Cancel the leading error terms of two order-``l`` schemes.

    ``c~ = e_{l,j} c_i - e_{l,i} c_j`` (same for ``d``), rescaled so that
    ``sum(c~) = sum(d~) = 1``. With ``normalize=False`` the raw combination is
    returned, which is the only form available when the sums cancel.
    """
    if i.order != j.order:
        raise DegenerateCombinationError("schemes must share the same order")
    l = i.order
    if l + 1 >= MAX_SERIES_LENGTH:
        raise ValueError("combined order exceeds the series length")
    ei = symbol_series(i, alpha)[l]
    ej = symbol_series(j, alpha)[l]
    c = tuple(float(ej * a - ei * b) for a, b in zip(i.c, j.c))
    d = tuple(float(ej * a - ei * b) for a, b in zip(i.d, j.d))
    label = f"{_wrap(i.label)}+{_wrap(j.label)}" if l >= 3 else f"({i.label},{j.label})"
    if normalize:
        s = sum(c)
        if abs(s) < 1e-12 or abs(ei - ej) < 1e-12:
            raise DegenerateCombinationError(
                f"combination {label} at alpha={alpha} has vanishing weight sums")
        c = tuple(v / s for v in c)
        d = tuple(v / s for v in d)
    return SchemeSpec(label, c, d, l + 1)


def _wrap(label: str) -> str:
    return label if label.startswith("(") else f"({label})"


_PAIR = re.compile(r"^\((\d+),(\d+)\)$")


def parse_label(label: str, alpha: float) -> SchemeSpec:
    """Build a scheme from ``"5"``, ``"(4,5)"`` or ``"(1,2)+(1,8)"``.

    Whitespace is ignored.
    """
    text = re.sub(r"\s+", "", label)
    if text.isdigit():
        return build_second_order(int(text), alpha)
    parts = text.split("+")
    if len(parts) == 1:
        return _parse_pair(parts[0], alpha)
    if len(parts) == 2:
        return combine(_parse_pair(parts[0], alpha), _parse_pair(parts[1], alpha), alpha)
    raise SchemeLabelError(f"cannot parse scheme label {label!r}")


def _parse_pair(text: str, alpha: float) -> SchemeSpec:
    m = _PAIR.match(text)
    if not m:
        raise SchemeLabelError(f"cannot parse scheme label {text!r}")
    a, b = int(m.group(1)), int(m.group(2))
    return combine(build_second_order(a, alpha), build_second_order(b, alpha), alpha)


#: third-order combinations listed as stable for the CN scheme
TABLE_THIRD_ORDER = (
    [(1, k) for k in range(2, 11)]
    + [(2, k) for k in range(4, 11)]
    + [(3, 5), (3, 7), (3, 8), (3, 9), (3, 10)]
    + [(4, 5)]
    + [(5, 8), (5, 9), (5, 10)]
)


def explicit_third_order(alpha: float) -> dict:
    """Closed-form third-order stencils for the pairs (1,2), (2,4), (2,5) and (4,5).

    The (2,5) entry is the one relation whose weight sums both vanish; it is
    returned divided by its common factor, ``c = (b - 1, 1 - 2b, b)`` and
    ``d = (0, -1, 1)``, and is not a consistent scheme for ``D^alpha`` on its
    own. The other three are normalized to unit sums.
    """
    b = beta(alpha)
    raw = {
        "(1,2)": ((-b * (1 - b) ** 2 * (6 * b - 1) / 24, b * (1 - b) ** 2 * (6 * b + 5) / 12,
                   b * (1 - b) * (2 * b + 1) * (3 * b + 1) / 24),
                  (0.0, 0.0, b * (1 - b) / 2)),
        "(2,4)": ((0.0, b * (1 - b) * (11 - 6 * b) / 12, b * (1 - b) * (6 * b + 1) / 12),
                  (0.0, b * (1 - b) * (6 * b - 1) / 12, b * (1 - b) * (13 - 6 * b) / 12)),
        "(4,5)": ((b * (1 - b) ** 2 * (6 * b + 1) / 12, b * (1 - b) * (6 * b * b - 5 * b + 5) / 6,
                   b * (1 - b) ** 2 * (6 * b + 1) / 12),
                  (0.0, b * b * (1 - b), b * (1 - b) ** 2)),
    }
    out = {}
    for label, (c, d) in raw.items():
        s = sum(c)
        out[label] = SchemeSpec(label, tuple(v / s for v in c), tuple(v / s for v in d), 3)
    out["(2,5)"] = SchemeSpec("(2,5)", (b - 1.0, 1.0 - 2.0 * b, b), (0.0, -1.0, 1.0), 3)
    return out
