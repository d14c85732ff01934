"""Quantum scattering diagrams and broken lines in the plane.

A wall is a ray ``base + s * direction`` (s >= 0) whose direction is
``-rho`` for a primitive integer vector ``rho``.  Its function is a
polynomial ``F(T) = sum_r c_r T^r`` in the single variable
``T = t^tau z^(g * rho)``; ordinary walls have ``F = 1 + T`` and ``g = 1``.

Geometry is exact (``fractions.Fraction``).  Broken lines are found by
walking backwards from the endpoint: at every wall the line either passes
straight through or "un-bends", and a candidate is kept when it escapes to
infinity carrying exactly the asymptotic monomial and the requested
t-degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import geom
from .qalg import ONE, ZERO, LaurentQ, exact_div, q_int

__all__ = [
    "UnsupportedCollision",
    "NegativePairing",
    "EndpointOnWall",
    "Wall",
    "ScatterDiagram",
    "BrokenLine",
    "ScatterModel",
    "simple_wall",
    "complete_scattering",
    "quantum_transport",
    "broken_lines",
    "log_invariant_2pt",
    "log_invariant_3pt",
    "log_invariant_psi",
    "get_model",
    "MODEL_NAMES",
    "parse_diagram",
    "format_diagram",
]

Vec = Tuple[int, int]
Point = Tuple[Fraction, Fraction]
TVec = Tuple[int, ...]


class UnsupportedCollision(ValueError):
    """Two walls meet in a configuration the engine does not resolve."""


class NegativePairing(ValueError):
    """Quantum transport requested from the wrong side of a wall."""


class EndpointOnWall(ValueError):
    """The endpoint, or a broken line, touches a wall or scattering point non-generically."""


def _det(a: Sequence, b: Sequence):
    return a[0] * b[1] - a[1] * b[0]


def _primitive(v: Vec) -> Tuple[Vec, int]:
    g = gcd(abs(v[0]), abs(v[1]))
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return (v[0] // g, v[1] // g), g


def _pt(x) -> Point:
    return (Fraction(x[0]), Fraction(x[1]))


def _tle(a: TVec, b: TVec) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _tadd(a: TVec, b: TVec, k: int = 1) -> TVec:
    return tuple(x + k * y for x, y in zip(a, b))


@dataclass(frozen=True)
class Wall:
    base: Point
    rho: Vec  # primitive; the wall runs in direction -rho
    tau: TVec  # t-exponent of T
    g: int = 1  # T carries z^(g * rho)
    coeffs: Tuple[LaurentQ, ...] = (ONE, ONE)  # c_0 = 1, c_1, ...
    label: str = ""
    parents: Tuple[int, ...] = ()

    def __post_init__(self):
        if _primitive(self.rho)[1] != 1:
            raise ValueError(f"wall exponent {self.rho} is not primitive")
        if self.coeffs[0] != ONE:
            raise ValueError("wall functions must have constant term 1")

    @property
    def direction(self) -> Vec:
        return (-self.rho[0], -self.rho[1])

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def is_binomial(self) -> bool:
        return self.g == 1 and self.truncation == 1 and self.coeffs[1] == ONE

    def contains(self, p: Point) -> bool:
        dx, dy = p[0] - self.base[0], p[1] - self.base[1]
        w = self.direction
        if dx * w[1] - dy * w[0] != 0:
            return False
        return dx * w[0] + dy * w[1] >= 0

    def describe(self, tvars: Sequence[str]) -> str:
        mono = "*".join(f"{v}^{e}" if e > 1 else v for v, e in zip(tvars, self.tau) if e) or "1"
        ex = (self.g * self.rho[0], self.g * self.rho[1])
        if self.is_binomial():
            fn = f"1 + {mono} z^{ex}"
        else:
            fn = " + ".join(f"({c}) ({mono} z^{ex})^{r}" if r else "1" for r, c in enumerate(self.coeffs) if c)
        return f"[{self.label}] base=({self.base[0]},{self.base[1]}) dir={self.direction} f = {fn}"


def simple_wall(base, rho: Vec, tau: TVec, label: str = "") -> Wall:
    """The wall 1 + t^tau z^rho starting at ``base``."""
    return Wall(_pt(base), tuple(rho), tuple(tau), label=label)


@dataclass(frozen=True)
class ScatterDiagram:
    tvars: Tuple[str, ...]
    budget: TVec
    walls: Tuple[Wall, ...]

    def describe(self) -> str:
        return "\n".join(w.describe(self.tvars) for w in self.walls)


# ---------------------------------------------------------------------------
# scattering


def _central_coeffs(ind: int, nmax: int) -> Tuple[LaurentQ, ...]:
    """Series of prod_l (1 - q^{-1/2+l} T)^{-1} (1 - q^{1/2+l} T)^{-1}, l = -(ind-1)/2..(ind-1)/2."""
    series = [ONE] + [ZERO] * nmax
    # l ranges over half-integers when ind is even; work with doubled exponents
    for two_l in range(-(ind - 1), ind, 2):
        for shift in (-1, 1):
            half = two_l + shift  # 2 * (l +- 1/2), i.e. the half-exponent of q
            geo = [LaurentQ.monomial(half * r) for r in range(nmax + 1)]
            series = [sum((series[i] * geo[r - i] for i in range(r + 1)), ZERO) for r in range(nmax + 1)]
    return tuple(series)


def _crossing(a: Wall, b: Wall) -> Optional[Point]:
    """Point where the interiors of two non-parallel rays meet, if any."""
    va, vb = a.direction, b.direction
    den = _det(va, vb)
    if den == 0:
        return None
    dx, dy = b.base[0] - a.base[0], b.base[1] - a.base[1]
    s = Fraction(_det((dx, dy), vb), den)
    u = Fraction(_det((dx, dy), va), den)
    if s < 0 or u < 0:
        return None
    return (a.base[0] + s * va[0], a.base[1] + s * va[1])


def complete_scattering(walls: Iterable[Wall], budget: Sequence[int], tvars: Optional[Sequence[str]] = None) -> ScatterDiagram:
    """Add all walls produced by pairwise collisions whose t-degree fits into ``budget``."""
    budget = tuple(budget)
    out: List[Wall] = list(walls)
    if tvars is None:
        tvars = tuple(f"t{i}" for i in range(len(budget)))
    done = set()
    changed = True
    while changed:
        changed = False
        for i, j in itertools.combinations(range(len(out)), 2):
            if (i, j) in done:
                continue
            done.add((i, j))
            a, b = out[i], out[j]
            if i in b.parents or j in a.parents or (a.parents and a.parents == b.parents):
                continue
            p = _crossing(a, b)
            if p is None:
                continue
            tau = _tadd(a.tau, b.tau)
            if not _tle(tau, budget):
                continue
            if p == a.base or p == b.base:
                raise UnsupportedCollision(f"wall {a.label or i} meets the base of {b.label or j} at {p}")
            new = _scatter_pair(a, b, i, j, p, budget)
            if new:
                _check_triple(out, i, j, p, budget)
                out.extend(new)
                changed = True
    return ScatterDiagram(tuple(tvars), budget, tuple(out))


def _check_triple(walls: List[Wall], i: int, j: int, p: Point, budget: TVec) -> None:
    for k, w in enumerate(walls):
        if k in (i, j) or i in w.parents or not w.contains(p):
            continue
        if _tle(_tadd(w.tau, walls[i].tau), budget) or _tle(_tadd(w.tau, walls[j].tau), budget):
            raise UnsupportedCollision(f"three walls meet at {p}; perturb the diagram")


def _scatter_pair(a: Wall, b: Wall, i: int, j: int, p: Point, budget: TVec) -> List[Wall]:
    if not (a.is_binomial() and b.is_binomial()):
        raise UnsupportedCollision(f"collision of non-elementary walls at {p}")
    det = abs(_det(a.rho, b.rho))
    label = f"{a.label or i}*{b.label or j}"
    if det == 1:
        rho, g = _primitive((a.rho[0] + b.rho[0], a.rho[1] + b.rho[1]))
        return [Wall(p, rho, _tadd(a.tau, b.tau), g, (ONE, ONE), label, (i, j))]
    if det != 2:
        raise UnsupportedCollision(f"|det| = {det} collision at {p}")
    walls = []
    tau = _tadd(a.tau, b.tau)
    rho, ind = _primitive((a.rho[0] + b.rho[0], a.rho[1] + b.rho[1]))
    nmax = min((bb // x for x, bb in zip(tau, budget) if x), default=0)
    walls.append(Wall(p, rho, tau, ind, _central_coeffs(ind, nmax), f"central({label})", (i, j)))
    for first, second in ((a, b), (b, a)):
        n = 1
        while True:
            t = _tadd(_tadd(first.tau, first.tau, n), second.tau, n)
            if not _tle(t, budget):
                break
            ex = ((n + 1) * first.rho[0] + n * second.rho[0], (n + 1) * first.rho[1] + n * second.rho[1])
            r, g = _primitive(ex)
            walls.append(Wall(p, r, t, g, (ONE, ONE), f"side{n}({label})", (i, j)))
            n += 1
    return walls


# ---------------------------------------------------------------------------
# transport


@lru_cache(maxsize=None)
def _transport_series(coeffs: Tuple[LaurentQ, ...], g: int, k: int, rmax: int) -> Tuple[LaurentQ, ...]:
    """Coefficients of T^R, R <= rmax, in prod_{l} F(q^{g l} T) over l = -(k-1)/2..(k-1)/2."""
    series = [ONE] + [ZERO] * rmax
    for two_l in range(-(k - 1), k, 2):
        # q^{g l r} has half-exponent g * two_l * r
        fac = [coeffs[r].shift(g * two_l * r) if r < len(coeffs) else ZERO for r in range(rmax + 1)]
        series = [sum((series[i] * fac[r - i] for i in range(r + 1)), ZERO) for r in range(rmax + 1)]
    return tuple(series)


def quantum_transport(coeff: LaurentQ, m: Vec, wall: Wall, side: Sequence, tvec: Optional[TVec] = None,
                      rmax: Optional[int] = None, classical: bool = False) -> List[Tuple[LaurentQ, Vec, TVec]]:
    """All results of transporting ``coeff * z^m`` across ``wall`` from the chamber containing ``side``.

    Returns ``(coefficient, exponent, t-exponent)`` triples.
    """
    side = _pt(side)
    w = wall.direction
    normal = (-w[1], w[0])
    off = (side[0] - wall.base[0]) * normal[0] + (side[1] - wall.base[1]) * normal[1]
    if off == 0:
        raise EndpointOnWall("the reference point lies on the wall's line")
    if off < 0:
        normal = (-normal[0], -normal[1])
    k = normal[0] * m[0] + normal[1] * m[1]
    if k < 0:
        raise NegativePairing(f"<n, m> = {k} < 0")
    if tvec is None:
        tvec = (0,) * len(wall.tau)
    if rmax is None:
        rmax = k * wall.truncation
    series = _transport_series(wall.coeffs, wall.g, k, rmax)
    out = []
    for r, c in enumerate(series):
        if c.is_zero():
            continue
        if classical:
            c = LaurentQ.const(c.at_one())
        out.append((coeff * c, (m[0] + r * wall.g * wall.rho[0], m[1] + r * wall.g * wall.rho[1]),
                    _tadd(tvec, wall.tau, r)))
    return out


# ---------------------------------------------------------------------------
# broken lines


@dataclass(frozen=True)
class BrokenLine:
    asymptotic: Vec
    bends: Tuple[Tuple[int, int], ...]  # (wall index, power R), in order from infinity
    coefficient: LaurentQ
    tvec: TVec
    end_exponent: Vec
    endpoint: Point
    segments: Tuple[Tuple[Point, Vec], ...] = field(default=(), compare=False)


def _hits(diagram: ScatterDiagram, p: Point, v: Vec, remaining: TVec):
    """Walls that the ray p + s v (s > 0) meets and could bend at, sorted by s."""
    found = []
    for idx, w in enumerate(diagram.walls):
        if not _tle(w.tau, remaining):
            continue
        wd = w.direction
        den = _det(v, wd)
        if den == 0:
            continue
        dx, dy = w.base[0] - p[0], w.base[1] - p[1]
        s = Fraction(_det((dx, dy), wd), den)
        u = Fraction(_det((dx, dy), v), den)
        if s <= 0 or u < 0:
            continue
        if u == 0:
            raise EndpointOnWall(f"a broken line passes through the base point {w.base} of wall {w.label or idx}")
        found.append((s, idx))
    found.sort()
    for (s1, a), (s2, b) in zip(found, found[1:]):
        if s1 == s2:
            raise EndpointOnWall(f"a broken line meets walls {a} and {b} at the same point; move the endpoint")
    return found


def broken_lines(diagram: ScatterDiagram, m: Vec, endpoint, budget: Optional[Sequence[int]] = None,
                 classical: bool = False, exact_t: Optional[Sequence[int]] = None) -> List[BrokenLine]:
    """All broken lines with asymptotic monomial z^m ending at ``endpoint``.

    Every line whose t-degree fits into ``budget`` (default: the diagram's)
    is returned; ``exact_t`` restricts to one t-degree.
    """
    m = tuple(m)
    if m == (0, 0):
        raise ValueError("asymptotic monomial must be non-trivial")
    p = _pt(endpoint)
    for idx, w in enumerate(diagram.walls):
        if w.contains(p):
            raise EndpointOnWall(f"endpoint {p} lies on wall {w.label or idx}")
    budget = tuple(diagram.budget if budget is None else budget)
    targets = [tuple(exact_t)] if exact_t is not None else [
        t for t in itertools.product(*(range(b + 1) for b in budget))]

    results: List[BrokenLine] = []
    # candidate end exponents: m plus any combination of wall exponents fitting the budget
    for target in targets:
        _search_end(diagram, m, p, target, classical, results)
    results.sort(key=lambda b: (b.tvec, b.end_exponent, b.bends))
    return results


def _search_end(diagram, m_asym, p, target, classical, results):
    # The final exponent is m_asym + sum R g rho over the bends; enumerate by backward DFS
    # over the exponent at p, which we do not know, so recurse over bends directly.
    walls = diagram.walls
    deltas = _reachable(diagram, target)
    for delta in deltas:
        m_end = (m_asym[0] + delta[0], m_asym[1] + delta[1])
        if m_end == (0, 0):
            continue
        _backtrack(walls, diagram, p, m_end, target, ONE, [], [(p, m_end)], m_asym, target, classical, results, p)


@lru_cache(maxsize=4096)
def _reachable_cached(kinds: Tuple[Tuple[Vec, TVec], ...], target: TVec) -> Tuple[Vec, ...]:
    out = set()

    def rec(i, t, vec):
        if i == len(kinds):
            if t == target:
                out.add(vec)
            return
        ex, tau = kinds[i]
        r = 0
        while True:
            tt = _tadd(t, tau, r)
            if not _tle(tt, target):
                break
            rec(i + 1, tt, (vec[0] + r * ex[0], vec[1] + r * ex[1]))
            r += 1
            if not any(tau):
                break

    rec(0, (0,) * len(target), (0, 0))
    return tuple(sorted(out))


def _reachable(diagram: ScatterDiagram, target: TVec) -> Tuple[Vec, ...]:
    kinds = sorted({((w.g * w.rho[0], w.g * w.rho[1]), w.tau) for w in diagram.walls if _tle(w.tau, target)})
    return _reachable_cached(tuple(kinds), target)


def _backtrack(walls, diagram, p, m, remaining, coeff, bends, segs, m_asym, target, classical, results, endpoint):
    hits = _hits(diagram, p, m, remaining)
    _walk(walls, diagram, hits, 0, m, remaining, coeff, bends, segs, m_asym, target, classical, results, endpoint)


def _walk(walls, diagram, hits, i, m, remaining, coeff, bends, segs, m_asym, target, classical, results, endpoint):
    if i == len(hits):
        if m == m_asym and not any(remaining):
            results.append(BrokenLine(m_asym, tuple(reversed(bends)), coeff, target, segs[0][1], endpoint,
                                      tuple(reversed(segs))))
        return
    # pass straight through wall i
    _walk(walls, diagram, hits, i + 1, m, remaining, coeff, bends, segs, m_asym, target, classical, results, endpoint)
    s, idx = hits[i]
    w = walls[idx]
    k = abs(_det(w.rho, m))
    if k == 0:
        return
    seg_start = segs[-1][0]
    q = (seg_start[0] + s * m[0], seg_start[1] + s * m[1])
    rmax = 0
    while _tle(tuple((rmax + 1) * x for x in w.tau), remaining):
        rmax += 1
    if rmax == 0:
        return
    series = _transport_series(w.coeffs, w.g, k, rmax)
    for r in range(1, rmax + 1):
        c = series[r]
        if c.is_zero():
            continue
        if classical:
            c = LaurentQ.const(c.at_one())
        m_prev = (m[0] - r * w.g * w.rho[0], m[1] - r * w.g * w.rho[1])
        if m_prev == (0, 0):
            continue
        rem = _tadd(remaining, w.tau, -r)
        bends.append((idx, r))
        segs.append((q, m_prev))
        _backtrack(walls, diagram, q, m_prev, rem, coeff * c, bends, segs, m_asym, target, classical, results, endpoint)
        segs.pop()
        bends.pop()


# ---------------------------------------------------------------------------
# built-in models


@dataclass(frozen=True)
class ScatterModel:
    name: str
    pair: str
    tvars: Tuple[str, ...]
    initial: Tuple[Wall, ...]
    rays: Tuple[Vec, ...]  # primitive direction of the ray of each boundary component

    def contacts(self, d: Sequence[int]) -> Tuple[int, ...]:
        pair = _model_pair(self)
        return geom.intersections(pair, d)

    def asymptotics(self, d: Sequence[int]) -> List[Vec]:
        return [(c * r[0], c * r[1]) for c, r in zip(self._contacts_in_ray_order(d), self.rays)]

    def _contacts_in_ray_order(self, d):
        return _CONTACTS[self.name.split("[")[0]](tuple(d))

    def budget(self, d: Sequence[int]) -> TVec:
        return _BUDGET[self.name.split("[")[0]](tuple(d))

    def endpoint(self, d: Sequence[int]) -> Point:
        return _pt(_ENDPOINT[self.name.split("[")[0]](tuple(d)))

    def diagram(self, d: Sequence[int]) -> ScatterDiagram:
        return complete_scattering(self.initial, self.budget(d), self.tvars)


def _model_pair(model: ScatterModel) -> geom.PairGeometry:
    if model.pair.startswith("P(1,1,"):
        return geom.orbifold_pair(int(model.pair[6:-1]))
    return geom.get_pair(model.pair)


F = Fraction

_CONTACTS = {
    "dP3(1,1)": lambda d: (d[0], d[1] + d[2] + d[3] - d[0]),
    "dP3(0,0,0)": lambda d: (d[1], d[2], d[3]),
    "dP1(0,4)": lambda d: (d[1], 2 * d[0]),
    "F0(0,4)": lambda d: (d[1], 2 * d[0] + d[1]),
    "P(1,1,n)": None,
}
_BUDGET = {
    "dP3(1,1)": lambda d: (d[0], d[0] - d[1], d[0] - d[2], d[0] - d[3]),
    "dP3(0,0,0)": lambda d: (d[0] - d[1], d[0] - d[2], d[0] - d[3]),
    "dP1(0,4)": lambda d: (d[0], d[0] - d[1]),
    "F0(0,4)": lambda d: (d[0], d[0]),
    "P(1,1,n)": lambda d: (d[0],),
}
_ENDPOINT = {
    # the figures' endpoints, nudged off the lattice so no line meets a scattering point
    "dP3(1,1)": lambda d: (5 + F(1, 1009), F(13, 2) + F(1, 1013)),
    "dP3(0,0,0)": lambda d: (1 + F(1, 1009), -1 + F(1, 1013)),
    "dP1(0,4)": lambda d: (2, 1),
    # just left of the central wall, so the bending line meets the t-wall right of its
    # singularity, and below every side wall y = 2 n x with n <= d1
    "F0(0,4)": lambda d: (-F(1, 4 * (2 * d[0] + d[1] + 1)) + F(1, 100003), -d[0] - F(5, 2) + F(1, 1013)),
    "P(1,1,n)": lambda d: (2, 1),
}

MODEL_NAMES = ("dP3(1,1)", "dP3(0,0,0)", "dP1(0,4)", "F0(0,4)", "P(1,1,n)")


def get_model(name: str) -> ScatterModel:
    """Built-in toric model; ``P(1,1,n)`` needs a concrete n, e.g. ``P(1,1,2)``."""
    if name == "dP3(1,1)":
        # focus-focus points on D_2 spread horizontally to keep collisions pairwise
        walls = (
            simple_wall((F(-23, 10), 0), (-1, 0), (1, 0, 0, 0), "t"),
            simple_wall((0, F(-23, 10)), (0, -1), (0, 1, 0, 0), "t1"),
            simple_wall((1, F(-23, 10)), (0, -1), (0, 0, 1, 0), "t2"),
            simple_wall((2, F(-23, 10)), (0, -1), (0, 0, 0, 1), "t3"),
        )
        return ScatterModel(name, name, ("t", "t1", "t2", "t3"), walls, ((1, 2), (0, -1)))
    if name == "dP3(0,0,0)":
        walls = (
            simple_wall((F(-9, 5), 0), (-1, 0), (1, 0, 0), "t1"),
            simple_wall((0, F(-21, 5)), (0, -1), (0, 1, 0), "t2"),
            simple_wall((F(24, 5), F(9, 5)), (1, 1), (0, 0, 1), "t3"),
        )
        return ScatterModel(name, name, ("t1", "t2", "t3"), walls, ((-1, 0), (0, -1), (1, 1)))
    if name in ("dP1(0,4)", "F0(0,4)"):
        walls = (
            simple_wall((F(-23, 10), 0), (-1, 0), (1, 0), "t"),
            simple_wall((F(3, 4), F(3, 2)), (1, 2), (0, 1), "t1"),
        )
        rays = ((1, 2), (0, -1)) if name == "dP1(0,4)" else ((0, 1), (0, -1))
        return ScatterModel(name, name, ("t", "t1"), walls, rays)
    if name.startswith("P(1,1,") and name.endswith(")"):
        n = int(name[6:-1])
        if n < 1:
            raise ValueError("P(1,1,n) needs n >= 1")
        walls = (simple_wall((F(-23, 10), 0), (-1, 0), (1,), "t"),)
        return ScatterModel(f"P(1,1,n)[{n}]", name, ("t",), walls, ((1, n + 1), (0, -1)))
    raise geom.UnsupportedPair(f"no built-in scattering model {name!r}")


def _model_setup(model, d, endpoint):
    model = get_model(model) if isinstance(model, str) else model
    d = tuple(int(x) for x in d)
    if model.name.startswith("P(1,1,n)"):
        n = model.rays[0][1] - 1
        ms = [(d[0], (n + 1) * d[0]), (0, -(n + 1) * d[0])]
    else:
        ms = model.asymptotics(d)
    budget = model.budget(d)
    p = model.endpoint(d) if endpoint is None else _pt(endpoint)
    return model, d, ms, budget, p


def _effective_positive(model: ScatterModel, d) -> bool:
    pair = _model_pair(model)
    if len(d) != pair.dim:
        raise ValueError(f"{pair.id} expects {pair.dim} degree coordinates")
    return geom.is_effective(pair, d) and all(x > 0 for x in geom.intersections(pair, d))


def _lines_by_end(diagram, m, p, budget, classical):
    table: Dict[Tuple[Vec, TVec], LaurentQ] = {}
    for bl in broken_lines(diagram, m, p, budget, classical):
        key = (bl.end_exponent, bl.tvec)
        table[key] = table.get(key, ZERO) + bl.coefficient
    return table


def log_invariant_2pt(model, d: Sequence[int], endpoint=None, classical: bool = False) -> LaurentQ:
    """Coefficient of t^e in the identity component of theta_{m1} theta_{m2}."""
    model, d, ms, budget, p = _model_setup(model, d, endpoint)
    if len(ms) != 2:
        raise ValueError(f"{model.name} has {len(ms)} boundary components; use the 3-point version")
    if not _effective_positive(model, d):
        return ZERO
    diagram = model.diagram(d)
    a = _lines_by_end(diagram, ms[0], p, budget, classical)
    b = _lines_by_end(diagram, ms[1], p, budget, classical)
    total = ZERO
    for (m1, t1), c1 in a.items():
        t2 = tuple(x - y for x, y in zip(budget, t1))
        c2 = b.get(((-m1[0], -m1[1]), t2))
        if c2 is not None:
            total = total + c1 * c2
    return total


def _three(model, d, endpoint, classical, weight):
    model, d, ms, budget, p = _model_setup(model, d, endpoint)
    if len(ms) != 3:
        raise ValueError(f"{model.name} does not have three boundary components")
    if not _effective_positive(model, d):
        return ZERO
    diagram = model.diagram(d)
    tabs = [_lines_by_end(diagram, m, p, budget, classical) for m in ms]
    total = ZERO
    for (m1, t1), c1 in tabs[0].items():
        for (m2, t2), c2 in tabs[1].items():
            t3 = tuple(x - y - z for x, y, z in zip(budget, t1, t2))
            if min(t3) < 0:
                continue
            c3 = tabs[2].get(((-m1[0] - m2[0], -m1[1] - m2[1]), t3))
            if c3 is not None:
                total = total + weight(abs(_det(m1, m2))) * c1 * c2 * c3
    return total


def log_invariant_3pt(model, d: Sequence[int], endpoint=None, classical: bool = False) -> LaurentQ:
    """Three broken lines meeting at p, weighted by [|det(m1, m2)|]_q / [1]_q."""
    return _three(model, d, endpoint, classical, lambda k: exact_div(q_int(k), q_int(1)) if k else ZERO)


def log_invariant_psi(model, d: Sequence[int], endpoint=None) -> Fraction:
    """Classical three-line count with weight 1 at the vertex."""
    return _three(model, d, endpoint, True, lambda k: ONE).at_one()


# ---------------------------------------------------------------------------
# text format
#
#   tvars t t1 t2
#   budget 2 1 1
#   wall <bx> <by> <rho_x> <rho_y> <t-exponents...> [label]
#
# Only elementary walls 1 + t^tau z^rho are expressible.


def parse_diagram(text: str) -> Tuple[Tuple[str, ...], TVec, List[Wall]]:
    tvars: Tuple[str, ...] = ()
    budget: TVec = ()
    walls: List[Wall] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "tvars":
            tvars = tuple(rest)
        elif head == "budget":
            budget = tuple(int(x) for x in rest)
        elif head == "wall":
            if not tvars:
                raise ValueError(f"line {lineno}: 'tvars' must come before walls")
            n = len(tvars)
            if len(rest) not in (4 + n, 5 + n):
                raise ValueError(f"line {lineno}: expected base, rho and {n} t-exponents")
            base = (Fraction(rest[0]), Fraction(rest[1]))
            rho = (int(rest[2]), int(rest[3]))
            tau = tuple(int(x) for x in rest[4:4 + n])
            label = rest[4 + n] if len(rest) == 5 + n else ""
            walls.append(simple_wall(base, rho, tau, label))
        else:
            raise ValueError(f"line {lineno}: unknown directive {head!r}")
    if len(budget) != len(tvars):
        raise ValueError("budget must list one bound per t-variable")
    return tvars, budget, walls


def format_diagram(diagram: ScatterDiagram) -> str:
    lines = ["tvars " + " ".join(diagram.tvars), "budget " + " ".join(map(str, diagram.budget))]
    for w in diagram.walls:
        if w.is_binomial():
            lines.append(" ".join(["wall", str(w.base[0]), str(w.base[1]), str(w.rho[0]), str(w.rho[1]),
                                   *map(str, w.tau), w.label or "-"]))
        else:
            lines.append("# " + w.describe(diagram.tvars))
    return "\n".join(lines)
