"""All-genus log Gromov-Witten invariants of nef Looijenga pairs.

Each pair is pulled back along its registry chain to one of the maximal
models (dP3(1,1), dP3(0,2), dP3(0,0,0), F0(0,0,0,0)) and evaluated there by
a closed q-binomial formula.  The returned Laurent polynomial ``P`` in
q^{1/2} becomes the generating series of the genus expansion under
q = exp(i hbar); see :func:`log_result` for the genus numbers.

dP4 and dP5 pairs have no q-refined formula; only their genus-0 value is
available, obtained from the local invariants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt
from typing import List, Optional, Sequence, Tuple

from . import geom, localgw
from .geom import PairGeometry, UnsupportedPair
from .qalg import ONE, ZERO, LaurentQ, exact_div, genus_coefficients, q_binomial, q_int

__all__ = [
    "LogResult",
    "log_poly",
    "log_genus0",
    "log_result",
    "log_psi",
    "log_multisum_dp1_04",
    "log_multisum_f0_04",
    "log_closed_conj",
    "is_conjectural",
    "qbin",
]

TAME_TOP = "dP3(1,1)"
PARTNER_TOP = "dP3(0,2)"
L3_TOP = "dP3(0,0,0)"
L4_TOP = "F0(0,0,0,0)"
NO_Q_REFINEMENT = ("dP4(1,0)", "dP4(0,1)", "dP5(0,0)")


def qbin(n: int, k: int) -> LaurentQ:
    """[n choose k]_q, zero when n < 0 or k is out of range."""
    if n < 0 or k < 0 or k > n:
        return ZERO
    return q_binomial(n, k)


def _pair(p) -> PairGeometry:
    return geom.get_pair(p) if isinstance(p, str) else p


# ---------------------------------------------------------------------------
# maximal models


def dp311_poly(d: Sequence[int]) -> LaurentQ:
    d0, d1, d2, d3 = d
    s = d1 + d2 + d3 - d0
    return qbin(d3, d0 - d1) * qbin(d3, d0 - d2) * qbin(d0, d3) * qbin(s, d3)


def dp302_poly(d: Sequence[int]) -> LaurentQ:
    """Deformation of the dP3(1,1) formula to dP3(0,2); conjectural away from q = 1."""
    d0, d1, d2, d3 = d
    s = d1 + d2 + d3 - d0
    base = dp311_poly(d)
    if base.is_zero():
        return ZERO
    return exact_div(base * q_int(d1) * q_int(d2 + d3), q_int(d0) * q_int(s))


def dp3000_poly(d: Sequence[int]) -> LaurentQ:
    d0, d1, d2, d3 = d
    quad = d0 * d0 - d1 * (d0 - d2) - d2 * (d0 - d3) - d3 * (d0 - d1)
    binoms = qbin(d1, d0 - d2) * qbin(d2, d0 - d3) * qbin(d3, d0 - d1)
    if binoms.is_zero():
        return ZERO
    return exact_div(q_int(quad), q_int(1)) * binoms


def f0_0000_poly(d: Sequence[int]) -> LaurentQ:
    d1, d2 = d
    return exact_div(q_int(d1 * d2) ** 2, q_int(1) ** 2)


_TOPS = {TAME_TOP: dp311_poly, PARTNER_TOP: dp302_poly, L3_TOP: dp3000_poly, L4_TOP: f0_0000_poly}


def is_conjectural(pair) -> bool:
    """True when the q-refined value rests on a deformation conjecture (q = 1 is proven)."""
    pair = _pair(pair)
    if pair.orbifold_n is not None or pair.id in NO_Q_REFINEMENT:
        return False
    try:
        top, _ = geom.lift_to(pair, [0] * pair.dim, list(_TOPS))
    except UnsupportedPair:
        return False
    return top.id == PARTNER_TOP


def _check(pair: PairGeometry, d: Tuple[int, ...]) -> bool:
    """Effective with positive contact order along every boundary component."""
    if len(d) != pair.dim:
        raise ValueError(f"{pair.id} expects {pair.dim} degree coordinates, got {len(d)}")
    if not geom.is_effective(pair, d):
        return False
    return all(x > 0 for x in geom.intersections(pair, d))


def log_poly(pair, d: Sequence[int]) -> LaurentQ:
    """q-polynomial of the all-genus log invariant; 0 off the effective cone."""
    pair = _pair(pair)
    d = tuple(int(x) for x in d)
    if not _check(pair, d):
        return ZERO
    if pair.orbifold_n is not None:
        n, (k,) = pair.orbifold_n, d
        return qbin((n + 1) * k, k)
    if pair.id in NO_Q_REFINEMENT:
        raise UnsupportedPair(f"no higher-genus log formula for {pair.id}")
    top, lifted = geom.lift_to(pair, d, list(_TOPS))
    return _TOPS[top.id](lifted)


def log_genus0(pair, d: Sequence[int]) -> Fraction:
    """N^log_{0,d}; for dP4/dP5 recovered from the local invariant."""
    pair = _pair(pair)
    d = tuple(int(x) for x in d)
    if pair.id not in NO_Q_REFINEMENT:
        return log_poly(pair, d).at_one()
    if not _check(pair, d):
        return Fraction(0)
    factor = Fraction(1)
    for x in geom.intersections(pair, d):
        factor *= Fraction((-1) ** (x - 1), x)
    return localgw.local_point(pair, d) / factor


def log_psi(pair, d: Sequence[int]) -> Fraction:
    """N^{log,psi}_{0,d} for l >= 3."""
    pair = _pair(pair)
    if pair.l < 3:
        raise ValueError("psi-class log invariants are only defined here for l >= 3")
    d = tuple(int(x) for x in d)
    if not _check(pair, d):
        return Fraction(0)
    if pair.l == 4:
        return Fraction(1)
    _, (d0, d1, d2, d3) = geom.lift_to(pair, d, [L3_TOP])
    return Fraction(geom_binom(d1, d0 - d2) * geom_binom(d2, d0 - d3) * geom_binom(d3, d0 - d1))


def geom_binom(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class LogResult:
    pair: str
    degree: Tuple[int, ...]
    P: Optional[LaurentQ]
    genus: List[Fraction]
    psi: Optional[Fraction] = None
    conjectural: bool = False
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def to_json_obj(self) -> dict:
        out = {
            "pair": self.pair,
            "degree": list(self.degree),
            "qpoly": None if self.P is None else self.P.to_json_obj(),
            "genus_coeffs": [str(x) for x in self.genus],
            "conjectural": self.conjectural,
        }
        if self.psi is not None:
            out["psi"] = str(self.psi)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def log_result(pair, d: Sequence[int], genus_max: int = 5, psi: bool = False) -> LogResult:
    pair = _pair(pair)
    d = tuple(int(x) for x in d)
    psi_val = log_psi(pair, d) if psi and pair.l >= 3 else None
    if pair.id in NO_Q_REFINEMENT:
        return LogResult(pair.id, d, None, [log_genus0(pair, d)], psi_val, False,
                         ("genus 0 only, recovered from the local invariant",))
    P = log_poly(pair, d)
    conj = is_conjectural(pair)
    notes = ("conjectural for q != 1; theorem at q = 1",) if conj else ()
    return LogResult(pair.id, d, P, genus_coefficients(P, pair.l, genus_max), psi_val, conj, notes)


# ---------------------------------------------------------------------------
# infinite-scattering multi-sums and their conjectured closed forms


def _dp1_04_index(d0: int, d1: int):
    """Yield (k0, [(n_j, k_j)] with n decreasing) solving the dP1(0,4) constraints."""
    target = d0 - d1

    def rec(remaining_k, remaining_nk, n_max, acc):
        if remaining_nk == 0:
            if acc:
                yield remaining_k, list(acc)
            return
        for n in range(min(n_max, remaining_nk), 0, -1):
            for k in range(1, min(remaining_k, remaining_nk // n) + 1):
                acc.append((n, k))
                yield from rec(remaining_k - k, remaining_nk - n * k, n - 1, acc)
                acc.pop()

    yield from rec(d1, target, target, [])


def log_multisum_dp1_04(d0: int, d1: int) -> LaurentQ:
    """Broken-line multi-sum for dP1(0,4) in the class d0(H-E) + d1 E."""
    if d0 <= 0 or d1 <= 0 or d1 > d0:
        return ZERO
    if d0 == d1:
        # only the term without side-wall bends survives
        return qbin(2 * d1, d1)
    total = ZERO
    for k0, bends in _dp1_04_index(d0, d1):
        term = ONE
        for i, (n, k) in enumerate(bends):
            shift = 2 * sum((nj - n) * kj for nj, kj in bends[:i])
            term = term * qbin(2 * d0 - shift, k)
        term = term * qbin(2 * d1, k0)
        total = total + term
    return total


def _f0_04_index(d1: int):
    """Yield [(n_j, k_j)] with n increasing and sum n_j k_j = d1."""

    def rec(remaining, n_min, acc):
        if remaining == 0:
            if acc:
                yield list(acc)
            return
        for n in range(n_min, remaining + 1):
            for k in range(1, remaining // n + 1):
                acc.append((n, k))
                yield from rec(remaining - n * k, n + 1, acc)
                acc.pop()

    yield from rec(d1, 1, [])


def log_multisum_f0_04(d1: int, d2: int) -> LaurentQ:
    """Broken-line multi-sum for F0(0,4) in bidegree (d1, d2)."""
    if d1 < 1 or d2 < 1:
        return ZERO
    m_max = (isqrt(1 + 8 * d1) - 1) // 2
    total = ZERO
    for bends in _f0_04_index(d1):
        m = len(bends)
        if m > m_max:
            continue
        ks = [k for _, k in bends]
        term = qbin(d2, sum(ks))
        for i, (n, k) in enumerate(bends):
            top = d2 + 2 * n * sum(ks[i:]) + 2 * sum(nj * kj for nj, kj in bends[:i])
            term = term * qbin(top, k)
        total = total + term
    return total


def log_closed_conj(pair, d: Sequence[int]) -> LaurentQ:
    """Conjectured closed q-binomial forms for dP1(0,4) and F0(0,4)."""
    pid = _pair(pair).id
    if pid == "dP1(0,4)":
        d0, d1 = d
        if d0 <= 0 or d1 <= 0 or d1 > d0:
            return ZERO
        return exact_div(q_int(2 * d0) * qbin(d0, d1) * qbin(d0 + d1 - 1, d0), q_int(d0))
    if pid == "F0(0,4)":
        d1, d2 = d
        if d1 < 1 or d2 < 1:
            return ZERO
        return exact_div(q_int(2 * d1 + d2) * qbin(d1 + d2 - 1, d1) ** 2, q_int(d2))
    raise UnsupportedPair(f"no conjectured closed form for {pid}")
