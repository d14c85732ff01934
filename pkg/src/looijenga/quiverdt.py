"""Donaldson-Thomas invariants of symmetric quivers and the KP/DT comparison.

The motivic partition function

    P_Q(q; x) = sum_d (-q^{1/2})^{E(d,d)} x^d / prod_i (q;q)_{d_i}

is expanded with exact rational-function coefficients, and its plethystic
logarithm is taken in the convention

    P_Q = exp( sum_{n>=1} 1/(n [n]_q) sum_d Omega_d(psi_n) x^{nd} ),

where Omega_d(q) = sum_i DT_{d,i} (-q^{1/2})^{-i} and psi_n substitutes
q^{1/2} -> q^{n/2}.  DT^num_d = sum_i DT_{d,i} is Omega_d at q^{1/2} = -1;
with this normalisation DT^num is non-negative for every symmetric quiver.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Dict, List, Sequence, Tuple

from . import geom, localgw
from .geom import UnsupportedPair
from .qalg import ONE, ZERO, LaurentQ, NonExactDivision, RationalQ, divisors, mobius, q_int

__all__ = [
    "Quiver",
    "DTSeries",
    "KPDTRecord",
    "AsymmetricQuiver",
    "motivic_partition_function",
    "dt_invariants",
    "quiver_from_pair",
    "verify_kp_dt",
    "random_symmetric_quiver",
    "parse_quiver",
    "format_quiver",
    "loop_quiver",
]

Vec = Tuple[int, ...]


class AsymmetricQuiver(ValueError):
    pass


@dataclass(frozen=True)
class Quiver:
    """Quiver given by its adjacency counts a[i][j] (edges i -> j)."""

    adjacency: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        a = self.adjacency
        n = len(a)
        if any(len(r) != n for r in a):
            raise ValueError("adjacency matrix must be square")
        if any(x < 0 for r in a for x in r):
            raise ValueError("edge counts must be non-negative")

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def is_symmetric(self) -> bool:
        a = self.adjacency
        return all(a[i][j] == a[j][i] for i in range(self.n) for j in range(self.n))

    def euler(self, d: Sequence[int], e: Sequence[int]) -> int:
        a = self.adjacency
        return sum(x * y for x, y in zip(d, e)) - sum(
            d[i] * a[i][j] * e[j] for i in range(self.n) for j in range(self.n)
        )

    def to_json_obj(self) -> dict:
        return {"vertices": self.n, "adjacency": [list(r) for r in self.adjacency]}


def loop_quiver(m: int) -> Quiver:
    return Quiver(((m,),))


def parse_quiver(text: str) -> Quiver:
    """Vertex count on the first non-comment line, then one adjacency row per line."""
    rows = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise ValueError("empty quiver file")
    n = int(rows[0][0])
    body = [tuple(int(x) for x in r) for r in rows[1:]]
    if len(body) != n:
        raise ValueError(f"expected {n} adjacency rows, got {len(body)}")
    return Quiver(tuple(body))


def format_quiver(q: Quiver) -> str:
    return "\n".join([str(q.n)] + [" ".join(str(x) for x in r) for r in q.adjacency]) + "\n"


# ---------------------------------------------------------------------------
# partition function and plethystic logarithm


@lru_cache(maxsize=None)
def _qq(k: int) -> LaurentQ:
    """(q;q)_k."""
    out = ONE
    for m in range(1, k + 1):
        out = out * (ONE - LaurentQ.monomial(2 * m))
    return out


def _box(dmax: Sequence[int]):
    return product(*[range(m + 1) for m in dmax])


def _dmax_vec(q: Quiver, dmax) -> Vec:
    if isinstance(dmax, int):
        return (dmax,) * q.n
    dmax = tuple(dmax)
    if len(dmax) != q.n:
        raise ValueError("dmax has the wrong length")
    return dmax


def motivic_partition_function(q: Quiver, dmax) -> Dict[Vec, RationalQ]:
    """Coefficients of P_Q for every dimension vector in the box."""
    if not q.is_symmetric():
        raise AsymmetricQuiver("the motivic DT series is only defined here for symmetric quivers")
    out = {}
    for d in _box(_dmax_vec(q, dmax)):
        e = q.euler(d, d)
        num = LaurentQ.monomial(e, -1 if e % 2 else 1)
        den = ONE
        for x in d:
            den = den * _qq(x)
        out[d] = RationalQ(num, den)
    return out


def _psi(f: RationalQ, n: int) -> RationalQ:
    """Adams operation q^{1/2} -> q^{n/2}."""
    return f.substitute_qk(n)


@lru_cache(maxsize=None)
def _dirichlet_inverse(n: int) -> Fraction:
    """Inverse of k -> 1/k under Dirichlet convolution."""
    return Fraction(mobius(n), n)


def _series_log(P: Dict[Vec, RationalQ], dmax: Vec) -> Dict[Vec, RationalQ]:
    """log P via |d| a_d = sum_e |e| L_e a_{d-e}, |d| the total degree."""
    keys = sorted(P, key=sum)
    L: Dict[Vec, RationalQ] = {}
    for d in keys:
        if not any(d):
            continue
        tot = sum(d)
        acc = P[d] * tot
        for e in L:
            if all(a <= b for a, b in zip(e, d)) and e != d:
                rest = tuple(b - a for a, b in zip(e, d))
                acc = acc - L[e] * P[rest] * sum(e)
        L[d] = acc * Fraction(1, tot)
    return L


@dataclass
class DTSeries:
    quiver: Quiver
    dmax: Vec
    omega: Dict[Vec, LaurentQ] = field(default_factory=dict)

    def numerical(self, d: Sequence[int]) -> int:
        v = self.omega.get(tuple(d), ZERO).at_minus_sqrt()
        if v.denominator != 1:
            raise ArithmeticError(f"non-integral DT^num at {tuple(d)}: {v}")
        return int(v)

    def motivic(self, d: Sequence[int]) -> Dict[int, int]:
        """DT_{d,i} read off from Omega_d = sum_i DT_{d,i} (-q^{1/2})^{-i}."""
        out = {}
        for e, c in self.omega.get(tuple(d), ZERO).items():
            i = -e
            out[i] = int(c * (-1 if i % 2 else 1))  # (-q^{1/2})^{-i} = (-1)^i q^{-i/2}
        return out

    def to_json_obj(self) -> dict:
        rows = []
        for d in sorted(self.omega):
            rows.append({"d": list(d), "omega": self.omega[d].to_json_obj(), "dt_num": self.numerical(d)})
        return {"quiver": self.quiver.to_json_obj(), "dmax": list(self.dmax), "invariants": rows}


def dt_invariants(q: Quiver, dmax) -> DTSeries:
    """Omega_d(q) for all nonzero d in the box; each certified as a Laurent polynomial."""
    dv = _dmax_vec(q, dmax)
    P = motivic_partition_function(q, dv)
    L = _series_log(P, dv)
    one = RationalQ(q_int(1))
    out = DTSeries(q, dv)
    for d in sorted(L, key=lambda v: (sum(v), v)):
        g = 0
        for x in d:
            g = gcd(g, x)
        F = RationalQ(ZERO)
        for n in divisors(g):
            b = _dirichlet_inverse(n)
            if b:
                F = F + _psi(L[tuple(x // n for x in d)], n) * b
        om = F * one
        if not om.den.is_constant():
            # theorem-backed: a non-polynomial here is a convention error
            raise NonExactDivision(om.num, f"Omega_{d} is not a Laurent polynomial: {om}")
        out.omega[d] = om.to_laurent()
    return out


def random_symmetric_quiver(rng: random.Random, max_vertices: int = 3, max_edges: int = 3) -> Quiver:
    n = rng.randint(1, max_vertices)
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = rng.randint(0, max_edges)
    return Quiver(tuple(tuple(r) for r in a))


# ---------------------------------------------------------------------------
# quivers of two-component pairs


def _adjacency(f: int, r: int, s: int) -> Tuple[Tuple[int, ...], ...]:
    n = r + s + 1
    a = [[0] * n for _ in range(n)]
    a[0][0] = f + 1
    for i in range(1, n):
        a[0][i] = a[i][0] = 1
    for k in range(s):
        a[1 + r + k][1 + r + k] = 1
    return tuple(tuple(x) for x in a)


@dataclass(frozen=True)
class PairQuiver:
    pair: str
    quiver: Quiver
    kappa: Tuple[Vec, ...]  # rows: degree coordinate i = sum_j kappa[i][j] v_j
    alpha: Vec
    source: str  # pair whose data was used (deformation partners share it)

    def kappa_of(self, v: Sequence[int]) -> Vec:
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.kappa)

    def to_json_obj(self) -> dict:
        return {
            "pair": self.pair,
            "quiver": self.quiver.to_json_obj(),
            "kappa": [list(r) for r in self.kappa],
            "alpha": list(self.alpha),
            "data_from": self.source,
        }


def quiver_from_pair(pair) -> PairQuiver:
    pair = geom.get_pair(pair) if isinstance(pair, str) else pair
    if pair.l != 2 or not pair.quasi_tame:
        raise UnsupportedPair(f"{pair.id} is not a two-component quasi-tame pair")
    src = pair
    if src.quiver is None and src.partner is not None:
        src = geom.get_pair(src.partner)
    if src.quiver is None:
        raise UnsupportedPair(f"no quiver data for {pair.id}")
    qd = src.quiver
    return PairQuiver(pair.id, Quiver(_adjacency(qd.f, qd.r, qd.s)), qd.kappa, qd.alpha, src.id)


@dataclass(frozen=True)
class KPDTRecord:
    pair: str
    d: Vec
    degree: Vec
    dt_num: int
    kp: Fraction
    shift: int
    ok: bool

    def to_json_obj(self) -> dict:
        return {
            "pair": self.pair,
            "d": list(self.d),
            "degree": list(self.degree),
            "dt_num": self.dt_num,
            "kp": str(self.kp),
            "shift": self.shift,
            "pass": self.ok,
        }


def verify_kp_dt(pair, dmax) -> List[KPDTRecord]:
    """DT^num_d(Q) = |KP_{kappa(d)} + sum_i alpha_i delta_{d, v_i}| on the box."""
    pq = quiver_from_pair(pair)
    series = dt_invariants(pq.quiver, dmax)
    p = geom.get_pair(pq.pair)
    out = []
    for d in sorted(series.omega, key=lambda v: (sum(v), v)):
        deg = pq.kappa_of(d)
        shift = 0
        if sum(d) == 1:
            shift = pq.alpha[d.index(1)]
        kp = localgw.kp_invariant(p, deg) if geom.is_effective(p, deg) else Fraction(0)
        dt = series.numerical(d)
        out.append(KPDTRecord(pq.pair, d, deg, dt, kp, shift, dt == abs(kp + shift)))
    return out
