"""Genus-0 local Gromov-Witten invariants of nef Looijenga pairs.

``local_psi`` returns the invariant with a single point insertion and a
psi class, ``local_point`` the one with ``l - 1`` point insertions.  Both
are exact :class:`fractions.Fraction` values.  Classes with some
``d . D_i <= 0`` lie outside the domain of the closed formulas and give 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd
from typing import Callable, Dict, Sequence, Tuple

from . import geom
from .geom import PairGeometry, UnsupportedPair
from .qalg import divisors_with_mobius

__all__ = [
    "LocalResult",
    "local_psi",
    "local_point",
    "local_ratio",
    "local_result",
    "local_dp5",
    "local_multinomial_toric",
    "kp_invariant",
]


def _C(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


# ---------------------------------------------------------------------------
# closed-form rows, one per family of deformation-equivalent pairs


def _row_p2(d):
    (n,) = d
    return Fraction(_sign(n) * _C(2 * n, n), 2 * n * n)


def _row_f0(d):
    d1, d2 = d
    return Fraction(_C(d1 + d2, d1) ** 2, (d1 + d2) ** 2)


def _row_dp1(d):
    d0, d1 = d
    return Fraction(_sign(d1) * _C(d0, d1) * _C(d1 + d0, d0), d0 * (d1 + d0))


def _row_dp2(d):
    d0, d1, d2 = d
    num = _sign(d0 + d1 + d2) * _C(d0, d1) * _C(d0, d2) * _C(d1 + d2, d0)
    return Fraction(num, d0 * (d1 + d2))


def _row_dp3(d):
    d0, d1, d2, d3 = d
    s = d1 + d2 + d3
    args = (d0 - d1, d0 - d2, d0 - d3, d1 + d2 - d0, d1 + d3 - d0, d2 + d3 - d0)
    if min(args) < 0:
        return Fraction(0)
    den = 1
    for a in args:
        den *= factorial(a)
    return Fraction(_sign(s) * factorial(d0 - 1) * factorial(s - d0 - 1), den)


def _dp5_terms(d):
    d0, d1, d2, d3, d4, d5 = d
    # Every factorial argument must be nonnegative; the four "difference"
    # denominators bound the box.
    for j1 in range(0, d0 - d1 + 1):
        for j2 in range(0, d0 - d1 - j1 + 1):
            for j3 in range(0, d0 - d4 - j1 + 1):
                for j4 in range(0, min(d0 - d5 - j2, d2 + d3 - d0 - j3) + 1):
                    yield j1, j2, j3, j4


@lru_cache(maxsize=None)
def local_dp5(d: Tuple[int, ...]) -> Fraction:
    """The quadruple sum for dP5(0,0); terms with a negative factorial argument vanish."""
    d0, d1, d2, d3, d4, d5 = d
    s = d1 + d2 + d3 + d4 + d5
    total = Fraction(0)
    for j1, j2, j3, j4 in _dp5_terms(d):
        x = d1 + d4 + d5 - 2 * d0 + j1 + j2 + j3 + j4 - 1
        num = (
            s - 3 * d0 + j1 + j2 - 1,
            d1 + d4 - d0 + j1 + j3 - 1,
            d1 + d5 - d0 + j2 + j4 - 1,
            d4 + d5 - d0 + j3 + j4 - 1,
        )
        den = (
            j1, j2, j3, j4,
            d1 + d2 + d4 - 2 * d0 + j1,
            d0 - d1 - j1 - j2,
            d5 - d3 + j4,
            d1 + d3 + d5 - 2 * d0 + j2,
            d0 - d4 - j1 - j3,
            d4 - d2 + j3,
            d0 - d5 - j2 - j4,
            d2 + d3 - d0 - j3 - j4,
            x, x,
        )
        if min(num) < 0 or min(den) < 0:
            continue
        n = 1
        for a in num:
            n *= factorial(a)
        m = 1
        for a in den:
            m *= factorial(a)
        total += Fraction(n, m)
    return _sign(s) * total


def _row_dp5(d):
    return local_dp5(tuple(d))


def _row_p2_111(d):
    (n,) = d
    return Fraction(_sign(n + 1), n ** 3)


def _row_f0_200(d):
    d1, d2 = d
    return Fraction(-_C(d1 + d2, d2), d1 * d2 * (d1 + d2))


def _row_dp1_110(d):
    d0, d1 = d
    return Fraction(_sign(d1 + 1) * _C(d0, d1), d0 * d0 * d1)


def _row_dp2_100(d):
    d0, d1, d2 = d
    return Fraction(_sign(d0 + d1 + d2 + 1) * _C(d0, d1) * _C(d1, d0 - d2), d0 * d1 * d2)


def _row_dp3_000(d):
    d0, d1, d2, d3 = d
    num = _sign(d1 + d2 + d3 + 1) * _C(d1, d0 - d2) * _C(d2, d0 - d3) * _C(d3, d0 - d1)
    return Fraction(num, d1 * d2 * d3)


def _row_f0_0000(d):
    d1, d2 = d
    return Fraction(1, (d1 * d2) ** 2)


def _ratio_one(d):
    return 1


_ROWS: Dict[str, Tuple[Callable, Callable]] = {
    "P2(1,4)": (_row_p2, _ratio_one),
    "F0(2,2)": (_row_f0, _ratio_one),
    "F0(0,4)": (_row_f0, _ratio_one),
    "dP1(1,3)": (_row_dp1, _ratio_one),
    "dP1(0,4)": (_row_dp1, _ratio_one),
    "dP2(1,2)": (_row_dp2, _ratio_one),
    "dP2(0,3)": (_row_dp2, _ratio_one),
    "dP3(1,1)": (_row_dp3, _ratio_one),
    "dP3(0,2)": (_row_dp3, _ratio_one),
    "dP4(1,0)": (None, _ratio_one),
    "dP4(0,1)": (None, _ratio_one),
    "dP5(0,0)": (_row_dp5, _ratio_one),
    "P2(1,1,1)": (_row_p2_111, lambda d: d[0] ** 2),
    "F0(2,0,0)": (_row_f0_200, lambda d: d[0] * d[1]),
    "dP1(1,1,0)": (_row_dp1_110, lambda d: d[0] * d[1]),
    "dP2(1,0,0)": (_row_dp2_100, lambda d: d[1] * d[2]),
    "dP3(0,0,0)": (
        _row_dp3_000,
        lambda d: d[0] ** 2 - (d[1] + d[2] + d[3]) * d[0] + d[1] * d[2] + d[1] * d[3] + d[2] * d[3],
    ),
    "F0(0,0,0,0)": (_row_f0_0000, lambda d: (d[0] * d[1]) ** 2),
}


def _in_domain(pair: PairGeometry, d: Sequence[int]) -> bool:
    if not geom.is_effective(pair, d):
        return False
    return all(x > 0 for x in geom.intersections(pair, d))


def _orbifold_psi(pair: PairGeometry, d) -> Fraction:
    n, (k,) = pair.orbifold_n, d
    return Fraction(_sign(n * k) * _C((n + 1) * k, k), (n + 1) * k * k)


def local_psi(pair, d: Sequence[int]) -> Fraction:
    """N^{loc,psi}_{0,d}; zero outside the effective cone or when some d.D_i <= 0."""
    pair = geom.get_pair(pair) if isinstance(pair, str) else pair
    d = tuple(int(x) for x in d)
    if len(d) != pair.dim:
        raise ValueError(f"{pair.id} expects {pair.dim} degree coordinates, got {len(d)}")
    if not _in_domain(pair, d):
        return Fraction(0)
    if pair.orbifold_n is not None:
        return _orbifold_psi(pair, d)
    try:
        row, _ = _ROWS[pair.id]
    except KeyError:
        raise UnsupportedPair(pair.id) from None
    if row is not None:
        try:
            return row(d)
        except ZeroDivisionError:
            # the closed row is singular on this face of the cone
            if pair.l != 2:
                raise
    # dP4 rows, and singular faces of the other l = 2 rows: pull back to
    # dP5(0,0) with the new exceptional coordinates set to d0
    _, lifted = geom.lift_to(pair, d, ["dP5(0,0)"])
    return local_dp5(lifted)


def local_ratio(pair, d: Sequence[int]) -> int:
    """The ratio N^loc / N^{loc,psi}, a quadratic in d for l >= 3 and 1 for l = 2."""
    pair = geom.get_pair(pair) if isinstance(pair, str) else pair
    if pair.orbifold_n is not None:
        return 1
    try:
        return _ROWS[pair.id][1](tuple(d))
    except KeyError:
        raise UnsupportedPair(pair.id) from None


def local_point(pair, d: Sequence[int]) -> Fraction:
    """N^loc_{0,d} with point insertions."""
    pair = geom.get_pair(pair) if isinstance(pair, str) else pair
    psi = local_psi(pair, d)
    if psi == 0:
        return psi
    return local_ratio(pair, d) * psi


@dataclass(frozen=True)
class LocalResult:
    pair: str
    degree: Tuple[int, ...]
    psi: Fraction
    ratio: int
    point: Fraction

    def to_json_obj(self) -> dict:
        return {
            "pair": self.pair,
            "degree": list(self.degree),
            "N_loc_psi": str(self.psi),
            "ratio": self.ratio,
            "N_loc": str(self.point),
        }


def local_result(pair, d: Sequence[int]) -> LocalResult:
    pair = geom.get_pair(pair) if isinstance(pair, str) else pair
    d = tuple(d)
    psi = local_psi(pair, d)
    ratio = local_ratio(pair, d)
    return LocalResult(pair.id, d, psi, ratio, ratio * psi)


def local_multinomial_toric(partition: Sequence[Sequence[int]], t: Sequence[int]) -> Fraction:
    """Local invariant of a toric Fano with D_i the sum of the toric divisors in block S_i.

    ``partition`` lists the blocks as 0-based indices into ``t``, the
    intersection numbers of the class with the toric divisors.
    """
    seen = sorted(i for block in partition for i in block)
    if seen != list(range(len(t))):
        raise ValueError("blocks must partition the toric divisors")
    if any(x < 0 for x in t):
        raise ValueError("toric intersection numbers must be nonnegative")
    sign_exp, denom, value = 0, 1, 1
    for block in partition:
        di = sum(t[i] for i in block)
        if di <= 0:
            raise ValueError("every D_i must meet the class positively")
        sign_exp += di - 1
        denom *= di
        multi = factorial(di)
        for i in block:
            multi //= factorial(t[i])
        value *= multi
    return Fraction(_sign(sign_exp) * value, denom)


def kp_invariant(pair, d: Sequence[int]) -> Fraction:
    """Genus-0 BPS number by Moebius inversion of the point invariants (l = 2 only)."""
    pair = geom.get_pair(pair) if isinstance(pair, str) else pair
    if pair.l != 2:
        raise ValueError(f"KP invariants need l = 2, {pair.id} has l = {pair.l}")
    d = tuple(d)
    g = 0
    for x in d:
        g = gcd(g, x)
    if g == 0:
        return Fraction(0)
    total = Fraction(0)
    for k, mu in divisors_with_mobius(g):
        if mu:
            total += Fraction(mu, k * k) * local_point(pair, tuple(x // k for x in d))
    return total
