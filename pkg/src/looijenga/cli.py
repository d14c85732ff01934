"""Command-line harness: single invariants, verification suites and tables.

Every command prints canonical JSON (sorted keys, fixed separators) or CSV,
so repeated runs are byte-identical.  ``verify`` exits 0 only when every
gating record passes; conjecture-backed records are reported separately and
gate only under ``--strict``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from . import bps, geom, localgw, loggw, opengw, quiverdt, scatter
from .geom import PairGeometry, UnsupportedPair
from .qalg import LaurentQ, NonExactDivision, RationalQ

Vec = Tuple[int, ...]

# dP4/dP5 classes grow fast; the default log-local box is smaller for them
_SMALL_BOX = ("dP4(1,0)", "dP4(0,1)", "dP5(0,0)")


# ---------------------------------------------------------------------------
# reports


@dataclass
class VerificationReport:
    suite: str
    pair: str
    box: int
    records: List[dict] = field(default_factory=list)
    seconds: float = 0.0

    def add(self, inputs: dict, lhs, rhs, ok: bool, conjectural: bool = False, note: str = "") -> None:
        rec = {"inputs": inputs, "lhs": _fmt(lhs), "rhs": _fmt(rhs), "pass": bool(ok), "conjectural": conjectural}
        if note:
            rec["note"] = note
        self.records.append(rec)

    def gating(self, strict: bool = False) -> List[dict]:
        return [r for r in self.records if strict or not r["conjectural"]]

    def passed(self, strict: bool = False) -> bool:
        return all(r["pass"] for r in self.gating(strict))

    def summary(self) -> dict:
        out = {}
        for key, rs in (("proven", [r for r in self.records if not r["conjectural"]]),
                        ("conjectural", [r for r in self.records if r["conjectural"]])):
            out[key] = {"total": len(rs), "pass": sum(r["pass"] for r in rs), "fail": sum(not r["pass"] for r in rs)}
        return out

    def to_json_obj(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "pair": self.pair,
            "box": self.box,
            "summary": self.summary(),
            "records": [r for r in self.records if not r["conjectural"]],
            "conjectural": [r for r in self.records if r["conjectural"]],
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _fmt(x):
    if isinstance(x, (LaurentQ, RationalQ, Fraction)):
        return str(x)
    return x


def _timed(fn: Callable[..., VerificationReport]):
    def wrapper(*args, **kwargs):
        t = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.seconds = time.perf_counter() - t
        return rep

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def degree_box(pair: PairGeometry, box: int, positive_contacts: bool = True) -> Iterable[Vec]:
    """Effective classes with every coordinate in [0, box] (>= 1 for P(1,1,n))."""
    lo = 0 if pair.orbifold_n is None else 1
    for d in product(range(lo, box + 1), repeat=pair.dim):
        if not geom.is_effective(pair, d):
            continue
        if positive_contacts and any(x <= 0 for x in geom.intersections(pair, d)):
            continue
        yield d


# ---------------------------------------------------------------------------
# suites


@_timed
def verify_log_local(pair, box: int) -> VerificationReport:
    """N^loc_{0,d} = prod_j (-1)^{c_j - 1}/c_j * N^log_{0,d} on the box."""
    pair = geom.get_pair(pair) if isinstance(pair, str) else pair
    rep = VerificationReport("log-local", pair.id, box)
    note = "log side recovered from the local side" if pair.id in loggw.NO_Q_REFINEMENT else ""
    for d in degree_box(pair, box):
        factor = Fraction(1)
        for c in geom.intersections(pair, d):
            factor *= Fraction((-1) ** (c - 1), c)
        loc = localgw.local_point(pair, d)
        rhs = factor * loggw.log_genus0(pair, d)
        rep.add({"degree": list(d)}, loc, rhs, loc == rhs, note=note)
    return rep


@_timed
def verify_log_open(pair, box: int) -> VerificationReport:
    pair = geom.get_pair(pair) if isinstance(pair, str) else pair
    rep = VerificationReport("log-open", pair.id, box)
    for r in opengw.verify_log_open(pair, box):
        rep.add({"degree": list(r.degree), "kind": r.kind}, r.open_side, r.log_side, r.ok,
                conjectural=r.kind == "q-conjectural")
    return rep


@_timed
def verify_kp_dt(pair, dmax: int) -> VerificationReport:
    pair = geom.get_pair(pair) if isinstance(pair, str) else pair
    rep = VerificationReport("kp-dt", pair.id, dmax)
    for r in quiverdt.verify_kp_dt(pair, dmax):
        rep.add({"d": list(r.d), "degree": list(r.degree), "shift": r.shift}, r.dt_num, r.kp, r.ok)
    return rep


@_timed
def verify_integrality(pair, box: int) -> VerificationReport:
    pair = geom.get_pair(pair) if isinstance(pair, str) else pair
    rep = VerificationReport("integrality", pair.id, box)
    conj = loggw.is_conjectural(pair)
    for r in bps.verify_integrality(pair, box):
        checks = {"integral": r.integral, "symmetric": r.symmetric, "within_bound": r.within_bound,
                  "genus0_match": r.genus0_match}
        rep.add({"degree": list(r.degree), "genus_bound": r.bound, **checks}, r.omega,
                bps.omega_genus0(pair, r.degree), r.ok, conjectural=conj)
    return rep


IDENTITIES = ("qps", "dp1binom", "f004", "dp302", "scatter-oracle")


@_timed
def verify_identities(which: str, box: int) -> VerificationReport:
    """Closed-form identities, each side evaluated exactly over the box."""
    if which == "qps":
        rep = VerificationReport("identities/qps", "dP3(1,1)", box)
        model = scatter.get_model("dP3(1,1)")
        pair = geom.get_pair("dP3(1,1)")
        for d in degree_box(pair, box):
            a = scatter.log_invariant_2pt(model, d)
            b = loggw.dp311_poly(d)
            rep.add({"degree": list(d)}, a, b, a == b)
        return rep
    if which in ("dp1binom", "f004"):
        pid = "dP1(0,4)" if which == "dp1binom" else "F0(0,4)"
        multi = loggw.log_multisum_dp1_04 if which == "dp1binom" else loggw.log_multisum_f0_04
        rep = VerificationReport(f"identities/{which}", pid, box)
        pair = geom.get_pair(pid)
        for d in degree_box(pair, box):
            a = multi(*d)
            b = loggw.log_closed_conj(pair, d)
            rep.add({"degree": list(d)}, a, b, a == b, conjectural=True)
        return rep
    if which == "dp302":
        rep = VerificationReport("identities/dp302", "dP3(0,2)", box)
        pair = geom.get_pair("dP3(0,2)")
        for d in degree_box(pair, box):
            P = loggw.dp302_poly(d)
            # q = 1: a theorem (log-local); q generic: the deformation conjecture
            loc = localgw.local_point(pair, d)
            factor = Fraction(1)
            for c in geom.intersections(pair, d):
                factor *= Fraction((-1) ** (c - 1), c)
            g0 = factor * P.at_one()
            rep.add({"degree": list(d), "q": "1"}, g0, loc, g0 == loc)
            O = opengw.open_invariant(pair, d)
            rhs = opengw.logopen_prefactor(pair, d) * RationalQ(P)
            rep.add({"degree": list(d), "q": "generic"}, O, rhs, O == rhs, conjectural=True)
        return rep
    if which == "scatter-oracle":
        rep = VerificationReport("identities/scatter-oracle", "*", box)
        m = scatter.get_model("dP3(0,0,0)")
        pair = geom.get_pair("dP3(0,0,0)")
        for d in degree_box(pair, min(box, 3)):
            a = scatter.log_invariant_3pt(m, d)
            b = loggw.log_poly(pair, d)
            rep.add({"model": "dP3(0,0,0)", "degree": list(d)}, a, b, a == b)
        for n in (1, 2, 3):
            pair = geom.orbifold_pair(n)
            m = scatter.get_model(pair.id)
            for d in degree_box(pair, box):
                a = scatter.log_invariant_2pt(m, d)
                b = loggw.log_poly(pair, d)
                rep.add({"model": pair.id, "degree": list(d)}, a, b, a == b)
        for pid, multi in (("dP1(0,4)", loggw.log_multisum_dp1_04), ("F0(0,4)", loggw.log_multisum_f0_04)):
            pair = geom.get_pair(pid)
            m = scatter.get_model(pid)
            for d in degree_box(pair, min(box, 3)):
                a = scatter.log_invariant_2pt(m, d)
                if d[0] >= 1:
                    b = multi(*d)
                    rep.add({"model": pid, "degree": list(d), "against": "multisum"}, a, b, a == b)
                else:
                    # the multi-sum is stated for d_1 >= 1; the edge goes through the lifted formula
                    b = loggw.log_poly(pair, d)
                    rep.add({"model": pid, "degree": list(d), "against": "log_poly"}, a, b, a == b,
                            conjectural=loggw.is_conjectural(pair))
        return rep
    raise ValueError(f"unknown identity {which!r}; choose from {', '.join(IDENTITIES)}")


# ---------------------------------------------------------------------------
# tables

TABLE_COLUMNS = ("log", "loc", "kp", "open", "bps")


def table_rows(pair, dmax: int, columns: Sequence[str]) -> List[dict]:
    pair = geom.get_pair(pair) if isinstance(pair, str) else pair
    for c in columns:
        if c not in TABLE_COLUMNS:
            raise ValueError(f"unknown column {c!r}; choose from {', '.join(TABLE_COLUMNS)}")
    rows = []
    for d in degree_box(pair, dmax):
        row = {"degree": " ".join(map(str, d))}
        for c in columns:
            if c == "log":
                row[c] = str(loggw.log_poly(pair, d)) if pair.id not in loggw.NO_Q_REFINEMENT else str(loggw.log_genus0(pair, d))
            elif c == "loc":
                row[c] = str(localgw.local_point(pair, d))
            elif c == "kp":
                row[c] = str(localgw.kp_invariant(pair, d))
            elif c == "open":
                row[c] = str(opengw.open_invariant(pair, d))
            elif c == "bps":
                row[c] = str(bps.omega_q(pair, d))
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# output


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def to_csv(rows: List[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({k: (dumps(v) if isinstance(v, (list, dict)) else v) for k, v in r.items()})
    return buf.getvalue()


def _report_csv(rep: VerificationReport) -> str:
    rows = []
    for r in rep.records:
        rows.append({"suite": rep.suite, "pair": rep.pair, "inputs": r["inputs"], "lhs": r["lhs"],
                     "rhs": r["rhs"], "pass": r["pass"], "conjectural": r["conjectural"]})
    return to_csv(rows, ("suite", "pair", "inputs", "lhs", "rhs", "pass", "conjectural"))


# ---------------------------------------------------------------------------
# argument handling


def _degree(text: str) -> Vec:
    parts = text.replace(",", " ").split()
    if not parts:
        raise argparse.ArgumentTypeError("empty degree")
    try:
        return tuple(int(x) for x in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree {text!r}") from None


def _load_quiver(arg: str):
    p = Path(arg)
    if p.is_file():
        return quiverdt.parse_quiver(p.read_text()), None
    pq = quiverdt.quiver_from_pair(arg)
    return pq.quiver, pq


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--config", help="alternative geometry data file")
    common.add_argument("--strict", action="store_true", help="let conjectural checks gate the exit code")
    common.add_argument("--timing", action="store_true", help="include wall-clock seconds in reports")

    ap = argparse.ArgumentParser(prog="looijenga", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    sub.add_parser("list-pairs", parents=[common])
    for name in ("log", "local", "open", "bps"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("pair")
        sp.add_argument("--degree", type=_degree, required=True)
        if name == "log":
            sp.add_argument("--genus-max", type=int, default=5)
    sp = sub.add_parser("dt", parents=[common])
    sp.add_argument("--quiver", required=True, help="quiver file or pair id")
    sp.add_argument("--dmax", type=int, default=None)
    sp = sub.add_parser("scatter", parents=[common])
    sp.add_argument("model", help=f"one of {', '.join(scatter.MODEL_NAMES)} (P(1,1,n) with concrete n)")
    sp.add_argument("--degree", type=_degree, required=True)
    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("suite", choices=("log-local", "log-open", "kp-dt", "integrality", "identities"))
    sp.add_argument("target", help="pair id, or identity name for 'identities'")
    sp.add_argument("--box", type=int, default=None)
    sp.add_argument("--dmax", type=int, default=None)
    sp = sub.add_parser("table", parents=[common])
    sp.add_argument("pair")
    sp.add_argument("--dmax", type=int, default=3)
    sp.add_argument("--set", default="log,loc", help=f"comma-separated subset of {','.join(TABLE_COLUMNS)}")
    return ap


def _default_dt_dmax(n: int) -> int:
    return 6 if n <= 2 else (4 if n == 3 else 3)


def _run(args) -> Tuple[str, int]:
    fmt = args.format
    if args.cmd == "list-pairs":
        pairs = geom.list_pairs()
        if fmt == "csv":
            rows = [{"id": p.id, "l": p.l, "tame": p.tame, "quasi_tame": p.quasi_tame, "property_O": p.property_O}
                    for p in pairs]
            return to_csv(rows, ("id", "l", "tame", "quasi_tame", "property_O")), 0
        return dumps([p.to_json_obj() for p in pairs]), 0

    if args.cmd == "log":
        res = loggw.log_result(args.pair, args.degree, genus_max=args.genus_max, psi=True)
        return dumps(res.to_json_obj()), 0
    if args.cmd == "local":
        res = localgw.local_result(args.pair, args.degree)
        obj = res.to_json_obj()
        if geom.get_pair(args.pair).l == 2:
            obj["KP"] = str(localgw.kp_invariant(args.pair, args.degree))
        return dumps(obj), 0
    if args.cmd == "open":
        g = opengw.open_geometry_for(args.pair)
        obj = {
            "pair": geom.get_pair(args.pair).id,
            "geometry": g.id,
            "degree": list(args.degree),
            "relative_class": list(opengw.relative_class(args.pair, args.degree)),
            "O": str(opengw.open_invariant(args.pair, args.degree)),
            "O_genus0": str(opengw.open_genus0(args.pair, args.degree)),
        }
        return dumps(obj), 0
    if args.cmd == "bps":
        om = bps.omega_q(args.pair, args.degree)
        obj = {
            "pair": geom.get_pair(args.pair).id,
            "degree": list(args.degree),
            "omega": om.to_json_obj(),
            "omega_str": str(om),
            "omega_genus0": str(bps.omega_genus0(args.pair, args.degree)),
            "genus_bound": bps.genus_bound(args.pair, args.degree),
            "conjectural": loggw.is_conjectural(args.pair),
        }
        return dumps(obj), 0
    if args.cmd == "dt":
        quiver, pq = _load_quiver(args.quiver)
        dmax = args.dmax if args.dmax is not None else _default_dt_dmax(quiver.n)
        series = quiverdt.dt_invariants(quiver, dmax)
        if fmt == "csv":
            rows = [{"d": " ".join(map(str, d)), "dt_num": series.numerical(d), "omega": str(series.omega[d])}
                    for d in sorted(series.omega)]
            return to_csv(rows, ("d", "dt_num", "omega")), 0
        obj = series.to_json_obj()
        if pq is not None:
            obj["pair_data"] = pq.to_json_obj()
        return dumps(obj), 0
    if args.cmd == "scatter":
        model = scatter.get_model(args.model)
        n_rays = len(model.rays)
        fn = scatter.log_invariant_2pt if n_rays == 2 else scatter.log_invariant_3pt
        val = fn(model, args.degree)
        return dumps({"model": model.name, "degree": list(args.degree), "log": val.to_json_obj(),
                      "log_str": str(val)}), 0
    if args.cmd == "verify":
        rep = _verify(args)
        out = _report_csv(rep) if fmt == "csv" else dumps(rep.to_json_obj(timing=args.timing))
        if not rep.passed(args.strict):
            fails = [r for r in rep.gating(args.strict) if not r["pass"]]
            for r in fails:
                print(f"FAIL {rep.suite} {rep.pair} {dumps(r['inputs'])}: {r['lhs']} != {r['rhs']}", file=sys.stderr)
            return out, 1
        return out, 0
    if args.cmd == "table":
        cols = [c for c in args.set.split(",") if c]
        rows = table_rows(args.pair, args.dmax, cols)
        if fmt == "csv":
            return to_csv(rows, ["degree"] + cols), 0
        return dumps({"pair": geom.get_pair(args.pair).id, "dmax": args.dmax, "columns": cols, "rows": rows}), 0
    raise AssertionError(args.cmd)


def _verify(args) -> VerificationReport:
    s = args.suite
    if s == "identities":
        return verify_identities(args.target, args.box if args.box is not None else 4)
    pair = geom.get_pair(args.target)
    if s == "log-local":
        box = args.box if args.box is not None else (3 if pair.id in _SMALL_BOX else 5)
        return verify_log_local(pair, box)
    if s == "log-open":
        return verify_log_open(pair, args.box if args.box is not None else 4)
    if s == "kp-dt":
        n = quiverdt.quiver_from_pair(pair).quiver.n
        return verify_kp_dt(pair, args.dmax if args.dmax is not None else _default_dt_dmax(n))
    return verify_integrality(pair, args.box if args.box is not None else 4)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.config:
        geom.load_registry(args.config)
    try:
        out, code = _run(args)
    except (UnsupportedPair, quiverdt.AsymmetricQuiver, NonExactDivision, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
