"""Registry of smooth nef Looijenga pairs and the P(1,1,n) family.

All pair data lives in ``data/pairs.json``.  Degree coordinates:

* del Pezzo ``dP_r``: ``d = d0 (H - sum E_i) + sum d_i E_i``, coordinates ``(d0, ..., dr)``;
* ``F0``: ``d = d1 H1 + d2 H2``;
* ``P2`` and ``P(1,1,n)``: a single degree ``d``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from importlib import resources
from math import gcd
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

__all__ = [
    "PairGeometry",
    "CurveClass",
    "QuiverData",
    "load_registry",
    "list_pairs",
    "get_pair",
    "orbifold_pair",
    "intersect",
    "intersections",
    "is_effective",
    "blow_down_lift",
    "lift_chain",
    "genus_polynomial",
    "UnsupportedPair",
]


class UnsupportedPair(ValueError):
    pass


def _matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


@dataclass(frozen=True)
class QuiverData:
    f: int
    r: int
    s: int
    kappa: Tuple[Tuple[int, ...], ...]  # rows = degree coordinates, columns = vertices
    alpha: Tuple[int, ...]

    @property
    def n_vertices(self) -> int:
        return 1 + self.r + self.s


@dataclass(frozen=True)
class PairGeometry:
    id: str
    l: int
    surface: str
    basis: Tuple[str, ...]
    coords: Tuple[str, ...]
    form: Tuple[Tuple[int, ...], ...]
    class_matrix: Tuple[Tuple[int, ...], ...]
    divisors: Tuple[Tuple[int, ...], ...]
    tame: bool
    quasi_tame: bool
    property_O: bool
    effective_rule: str
    chi: Optional[int] = None
    table_row: Optional[int] = None
    lift: Optional[Tuple[str, Tuple[Tuple[int, ...], ...]]] = None
    partner: Optional[str] = None
    quiver: Optional[QuiverData] = None
    orbifold_n: Optional[int] = None

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def class_vector(self, degrees: Sequence[int]) -> Tuple[int, ...]:
        return _matvec(self.class_matrix, degrees)

    def pairing(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(a[i] * self.form[i][j] * b[j] for i in range(self.rank) for j in range(self.rank))

    def anticanonical(self) -> Tuple[int, ...]:
        if self.surface.startswith("dP"):
            return tuple([3] + [-1] * (self.rank - 1))
        if self.surface == "F0":
            return (2, 2)
        if self.surface == "P2":
            return (3,)
        raise UnsupportedPair(f"no anticanonical class for {self.id}")

    @property
    def K2(self) -> int:
        k = self.anticanonical()
        return self.pairing(k, k)

    def divisor_sum(self) -> Tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.divisors))

    def self_intersections(self) -> Tuple[int, ...]:
        return tuple(self.pairing(D, D) for D in self.divisors)

    def to_json_obj(self) -> dict:
        out = {
            "id": self.id,
            "l": self.l,
            "basis": list(self.basis),
            "coords": list(self.coords),
            "divisors": [list(D) for D in self.divisors],
            "tame": self.tame,
            "quasi_tame": self.quasi_tame,
            "property_O": self.property_O,
        }
        if self.orbifold_n is None:
            out["K2"] = self.K2
        else:
            out["n"] = self.orbifold_n
        if self.lift:
            out["lift"] = {"to": self.lift[0], "matrix": [list(r) for r in self.lift[1]]}
        if self.partner:
            out["partner"] = self.partner
        if self.quiver:
            q = self.quiver
            out["quiver"] = {"f": q.f, "r": q.r, "s": q.s, "kappa": [list(r) for r in q.kappa], "alpha": list(q.alpha)}
        return out


@dataclass(frozen=True)
class CurveClass:
    pair: PairGeometry
    degrees: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(x) for x in self.degrees))
        if len(self.degrees) != self.pair.dim:
            raise ValueError(f"{self.pair.id} needs {self.pair.dim} degree coordinates, got {self.degrees}")

    def intersect(self, i: int) -> int:
        return intersect(self, i)

    def intersections(self) -> Tuple[int, ...]:
        return intersections(self.pair, self.degrees)

    @property
    def content(self) -> int:
        g = 0
        for x in self.degrees:
            g = gcd(g, x)
        return g

    def divisible_by(self, k: int) -> bool:
        return all(x % k == 0 for x in self.degrees)

    def __truediv__(self, k: int) -> "CurveClass":
        if not self.divisible_by(k):
            raise ValueError(f"{self.degrees} is not divisible by {k}")
        return CurveClass(self.pair, tuple(x // k for x in self.degrees))

    def is_effective(self) -> bool:
        return is_effective(self.pair, self.degrees)


# ----------------------------------------------------------------------------
# loading


def _tuplify(m):
    return tuple(tuple(int(x) for x in row) for row in m)


def _parse_pair(entry: dict) -> PairGeometry:
    lift = None
    if "lift" in entry:
        lift = (entry["lift"]["to"], _tuplify(entry["lift"]["matrix"]))
    quiver = None
    if "quiver" in entry:
        q = entry["quiver"]
        quiver = QuiverData(int(q["f"]), int(q["r"]), int(q["s"]), _tuplify(q["kappa"]), tuple(int(a) for a in q["alpha"]))
    return PairGeometry(
        id=entry["id"],
        l=int(entry["l"]),
        surface=entry["surface"],
        basis=tuple(entry["basis"]),
        coords=tuple(entry["coords"]),
        form=_tuplify(entry["form"]),
        class_matrix=_tuplify(entry["class_matrix"]),
        divisors=_tuplify(entry["divisors"]),
        tame=bool(entry["tame"]),
        quasi_tame=bool(entry["quasi_tame"]),
        property_O=bool(entry["property_O"]),
        effective_rule=entry["effective"],
        chi=entry.get("chi"),
        table_row=entry.get("table_row"),
        lift=lift,
        partner=entry.get("partner"),
        quiver=quiver,
    )


_REGISTRY: Dict[str, PairGeometry] = {}
_REGISTRY_SOURCE: Optional[str] = None


def load_registry(path: Optional[str | Path] = None) -> Dict[str, PairGeometry]:
    """Load (and cache) the pair registry; ``path`` overrides the bundled file."""
    global _REGISTRY, _REGISTRY_SOURCE
    key = str(path) if path else "<bundled>"
    if _REGISTRY and _REGISTRY_SOURCE == key:
        return _REGISTRY
    if path:
        text = Path(path).read_text()
    else:
        text = resources.files("looijenga").joinpath("data/pairs.json").read_text()
    data = json.loads(text)
    reg = {}
    for entry in data["pairs"]:
        p = _parse_pair(entry)
        reg[p.id] = p
    _REGISTRY, _REGISTRY_SOURCE = reg, key
    return reg


def list_pairs() -> List[PairGeometry]:
    return list(load_registry().values())


_ORBIFOLD_CACHE: Dict[int, PairGeometry] = {}


def orbifold_pair(n: int) -> PairGeometry:
    """The pair P(1,1,n) with d.D1 = d and d.D2 = (n+1) d."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n not in _ORBIFOLD_CACHE:
        _ORBIFOLD_CACHE[n] = PairGeometry(
            id=f"P(1,1,{n})",
            l=2,
            surface="P(1,1,n)",
            basis=("L",),
            coords=("d",),
            form=((1,),),
            class_matrix=((1,),),
            divisors=((1,), (n + 1,)),
            tame=True,
            quasi_tame=True,
            property_O=True,
            effective_rule="positive",
            orbifold_n=n,
        )
    return _ORBIFOLD_CACHE[n]


def get_pair(pair_id: str) -> PairGeometry:
    if pair_id.startswith("P(1,1,"):
        try:
            n = int(pair_id[len("P(1,1,"):-1])
        except ValueError:
            raise UnsupportedPair(pair_id) from None
        return orbifold_pair(n)
    reg = load_registry()
    if pair_id not in reg:
        raise UnsupportedPair(f"unknown pair {pair_id!r}")
    return reg[pair_id]


def _pair(p) -> PairGeometry:
    return get_pair(p) if isinstance(p, str) else p


# ----------------------------------------------------------------------------
# intersections and effectivity


def intersections(pair, degrees: Sequence[int]) -> Tuple[int, ...]:
    pair = _pair(pair)
    cls = pair.class_vector(degrees)
    return tuple(pair.pairing(cls, D) for D in pair.divisors)


def intersect(d: CurveClass, i: int) -> int:
    """d . D_i with 1-based divisor index i."""
    if not 1 <= i <= d.pair.l:
        raise IndexError(f"divisor index {i} out of range for {d.pair.id}")
    return intersections(d.pair, d.degrees)[i - 1]


def _dp5_inequalities(d: Sequence[int]) -> bool:
    d0, ds = d[0], list(d[1:])
    if d0 < 0 or any(x < 0 for x in ds):
        return False
    for c in itertools.combinations(ds, 3):
        if sum(c) < d0:
            return False
    for c in itertools.combinations(ds, 4):
        if sum(c) < 2 * d0:
            return False
    total = sum(ds)
    return all(total + x >= 3 * d0 for x in ds)


def is_effective(pair, degrees: Sequence[int]) -> bool:
    pair = _pair(pair)
    degrees = tuple(degrees)
    if pair.effective_rule == "positive":
        return all(x >= 0 for x in degrees)
    if pair.effective_rule == "delpezzo":
        # absent exceptional classes carry coefficient 0, i.e. d_i = d0
        padded = degrees + (degrees[0],) * (6 - len(degrees))
        return _dp5_inequalities(padded)
    raise UnsupportedPair(f"no effectivity rule for {pair.id}")


# ----------------------------------------------------------------------------
# blow-down chains


def lift_chain(pair) -> List[PairGeometry]:
    """The pair followed by its successive interior blow-ups in the registry."""
    pair = _pair(pair)
    out = [pair]
    while out[-1].lift is not None:
        out.append(get_pair(out[-1].lift[0]))
    return out


def blow_down_lift(target, source, degrees: Sequence[int]) -> Tuple[int, ...]:
    """Pull a class of ``target`` back to its blow-up ``source`` along the chain."""
    target, source = _pair(target), _pair(source)
    d = tuple(degrees)
    cur = target
    while cur.id != source.id:
        if cur.lift is None:
            raise UnsupportedPair(f"{source.id} is not a blow-up of {target.id} in the registry")
        d = _matvec(cur.lift[1], d)
        cur = get_pair(cur.lift[0])
    return d


def lift_to(pair, degrees: Sequence[int], candidates: Sequence[str]) -> Tuple[PairGeometry, Tuple[int, ...]]:
    """Lift along the chain until reaching one of ``candidates``."""
    pair = _pair(pair)
    d = tuple(degrees)
    cur = pair
    while cur.id not in candidates:
        if cur.lift is None:
            raise UnsupportedPair(f"{pair.id} does not lift to any of {list(candidates)}")
        d = _matvec(cur.lift[1], d)
        cur = get_pair(cur.lift[0])
    return cur, d


# ----------------------------------------------------------------------------
# genus polynomials


def _g_dp3(d):
    d0, d1, d2, d3 = d
    return 2 * (d1 + d2 + d3 - d0) * d0 - d1 * d1 - d2 * d2 - d3 * d3 - d1 - d2 - d3 + 2


def _g_f0(d):
    d1, d2 = d
    return 2 * (d1 * d2 - d1 - d2 + 1)


_GENUS = {"dP3(1,1)": _g_dp3, "dP3(0,2)": _g_dp3, "dP3(0,0,0)": _g_dp3, "F0(0,0,0,0)": _g_f0}


def genus_polynomial(pair, degrees: Sequence[int]) -> int:
    pair = _pair(pair)
    src, d = lift_to(pair, degrees, list(_GENUS))
    return _GENUS[src.id](d)
