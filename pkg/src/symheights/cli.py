"""Command-line front end.

Every subcommand prints one JSON report on stdout containing the resolved
configuration and the result.  Record streams go to ``--out`` (NDJSON) and
``--csv``.  Exit status: 0 success, 1 assertion failure, 2 usage error,
3 undecided or precision exhausted.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import __version__
from .algebraic import (
    AlgPoint,
    alg_height,
    prox_alg,
    psi,
    sigma,
)
from .configs import LineConfig, classify_type, triple_points
from .errors import HeightError, ParseError, PrecisionExhausted, UnsupportedRegime
from .exact_core import Place, PlaceSet, as_fraction
from .exceptional import (
    Rat1Map,
    enumerate_phi,
    multinomial_count,
    phi_I_list,
    z_member,
)
from .experiments import (
    OUT,
    ratio_scan,
    sharp_family,
    tbor_family,
    td3b_family,
    write_csv,
    write_ndjson,
    zariski_density_check,
)
from .heights import Divisor1, Form, ProjPoint, global_height, local_height

EXIT_OK, EXIT_ASSERT, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3

DIVISOR_PRESETS = {
    "six-points": "0,1,-1,2,-2,inf",
    "four-points": "0,1,inf,2",
}

DEFAULTS = {
    "divisor": None,
    "places": "inf",
    "d": None,
    "t": None,
    "B": 10,
    "steps": 60,
    "count": 20,
    "prec_cap": 256,
    "out": None,
    "csv": None,
    "seed": 0,
    "jobs": 1,
    "point": None,
    "minpoly": None,
    "form": None,
    "place": None,
    "points": None,
    "lines": None,
    "kind": None,
    "map": None,
    "e": 3,
    "root_index": 0,
}


class UsageError(Exception):
    pass


def _enc(e) -> dict:
    return {"lo": float(e.lo), "hi": float(e.hi)}


def _divisor(cfg) -> Divisor1:
    spec = cfg["divisor"]
    if spec is None:
        raise UsageError("--divisor is required")
    return Divisor1.parse(DIVISOR_PRESETS.get(spec, spec))


def _need(cfg, *keys):
    for k in keys:
        if cfg.get(k) is None:
            raise UsageError(f"--{k.replace('_', '-')} is required")


def _alg_point(cfg) -> AlgPoint:
    if cfg["minpoly"] is not None:
        return AlgPoint.parse(cfg["minpoly"], int(cfg["root_index"]))
    if cfg["point"] is not None:
        return AlgPoint.rational(ProjPoint.parse(cfg["point"]))
    raise UsageError("--minpoly or --point is required")


# --------------------------------------------------------------------------
# commands


def cmd_height(cfg):
    if cfg["point"] is not None and cfg["minpoly"] is None:
        P = ProjPoint.parse(cfg["point"])
        if cfg["form"] is not None:
            f = Form.parse(cfg["form"], dim=P.dim)
            v = Place.parse(cfg["place"] or "inf")
            val = local_height(P, f, v)
            return {"local_height": _enc(val.enclosure()), "exact": repr(val)}, EXIT_OK
        val = global_height(P)
        return {"height": _enc(val.enclosure()), "exact": repr(val)}, EXIT_OK
    P = _alg_point(cfg)
    return {"height": _enc(alg_height(P))}, EXIT_OK


def cmd_prox(cfg):
    D = _divisor(cfg)
    P = _alg_point(cfg)
    return {"m": _enc(prox_alg(P, D, cfg["places"]))}, EXIT_OK


def cmd_psi(cfg):
    P = _alg_point(cfg)
    return {"psi": str(psi(P, cfg["d"]))}, EXIT_OK


def cmd_sigma(cfg):
    _need(cfg, "points")
    pts = [ProjPoint.parse(s) for s in cfg["points"].split(";" if ";" in cfg["points"] else ",")]
    return {"sigma": str(sigma(pts))}, EXIT_OK


def _map_dict(phi: Rat1Map) -> dict:
    f1, f2 = phi.strings()
    return {"f1": f1, "f2": f2, "label": phi.label}


def cmd_phi_enum(cfg):
    _need(cfg, "d", "t")
    D = _divisor(cfg)
    d, t = cfg["d"], as_fraction(cfg["t"])
    try:
        maps = enumerate_phi(D, d, t)
        complete = True
    except UnsupportedRegime:
        maps = phi_I_list(D, d)
        complete = False
    return {
        "count": len(maps),
        "multinomial": multinomial_count(D.q, d),
        "complete": complete,
        "maps": [_map_dict(m) for m in maps],
    }, EXIT_OK


def cmd_z_member(cfg):
    _need(cfg, "d", "t")
    D = _divisor(cfg)
    P = _alg_point(cfg)
    res = z_member(P, D, cfg["d"], as_fraction(cfg["t"]))
    out = {"status": res.status, "regime": res.regime, "tested": res.tested}
    if res.witness is not None:
        out["witness"] = _map_dict(res.witness)
    return out, EXIT_OK


def cmd_classify(cfg):
    _need(cfg, "lines")
    lc = LineConfig.parse(cfg["lines"])
    tag = classify_type(lc)
    return {
        "type": tag.tag,
        "c": str(tag.c),
        "summary": str(tag),
        "repeated": list(tag.repeated) if tag.repeated else None,
        "witness_points": [str(p) for p in tag.triple_points],
        "triple_points": [str(p) for p in triple_points(lc)],
    }, EXIT_OK


def _emit(records, cfg):
    if cfg["out"]:
        with open(cfg["out"], "w") as fh:
            write_ndjson(records, fh)
    if cfg["csv"]:
        with open(cfg["csv"], "w") as fh:
            write_csv(records, fh)


def cmd_scan(cfg):
    _need(cfg, "d", "t")
    D = _divisor(cfg)
    d, t = cfg["d"], as_fraction(cfg["t"])
    res = ratio_scan(D, cfg["places"], d, cfg["B"], t, cap=cfg["prec_cap"], jobs=cfg["jobs"])
    _emit(res.records, cfg)
    summary = res.summary()
    code = EXIT_OK
    out_flags = res.z_counts.get(OUT, 0)
    if t > 2 * d - 1 and out_flags:
        code = EXIT_ASSERT
    if res.undecided:
        code = EXIT_UNDECIDED
    summary["assertion"] = "no Out flags above 2d - 1" if t > 2 * d - 1 else "none"
    return summary, code


def cmd_tbor(cfg):
    _need(cfg, "map")
    D = _divisor(cfg)
    phi = Rat1Map.parse(cfg["map"])
    recs = tbor_family(phi, D, cfg["places"], cfg["count"])
    _emit(recs, cfg)
    defects = [r.extra["defect_hi"] for r in recs]
    return {
        "points": len(recs),
        "max_defect": max(defects) if defects else None,
        "running_max": [r.extra["running_max"] for r in recs],
    }, EXIT_OK


def cmd_sharp(cfg):
    _need(cfg, "kind", "lines")
    lc = LineConfig.parse(cfg["lines"])
    recs = sharp_family(cfg["kind"], lc, cfg["places"], cfg["steps"])
    _emit(recs, cfg)
    return {
        "points": len(recs),
        "last_ratio_lo": recs[-1].ratio_lo if recs else None,
        "dense_deg3": zariski_density_check([r.point for r in recs], 3),
    }, EXIT_OK


def cmd_td3b(cfg):
    _need(cfg, "t")
    D = _divisor(cfg)
    res = td3b_family(D, cfg["places"], as_fraction(cfg["t"]), cfg["count"], cap=cfg["prec_cap"])
    _emit(res.records, cfg)
    out = res.summary()
    code = EXIT_OK if len(res.records) >= cfg["count"] else EXIT_ASSERT
    if res.undecided:
        code = EXIT_UNDECIDED
    return out, code


def cmd_density_check(cfg):
    _need(cfg, "points")
    pts = [ProjPoint.parse(s) for s in cfg["points"].split(";")]
    ok = zariski_density_check(pts, cfg["e"])
    return {"dense": ok, "degree_bound": cfg["e"], "points": len(pts)}, EXIT_OK


COMMANDS = {
    "height": cmd_height,
    "prox": cmd_prox,
    "psi": cmd_psi,
    "sigma": cmd_sigma,
    "phi-enum": cmd_phi_enum,
    "z-member": cmd_z_member,
    "classify": cmd_classify,
    "scan": cmd_scan,
    "tbor": cmd_tbor,
    "sharp": cmd_sharp,
    "td3b": cmd_td3b,
    "density-check": cmd_density_check,
}


# --------------------------------------------------------------------------
# parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON file of option values; flags override it")
    common.add_argument("--divisor", help="comma-separated rationals and 'inf', or a preset name")
    common.add_argument("--places", help="places of S, e.g. 'inf,2,3'")
    common.add_argument("-d", type=int, dest="d", help="degree bound")
    common.add_argument("-t", dest="t", help="threshold as an integer or p/q")
    common.add_argument("-B", type=int, dest="B", help="coefficient bound")
    common.add_argument("--steps", type=int)
    common.add_argument("--count", type=int)
    common.add_argument("--prec-cap", type=int, dest="prec_cap")
    common.add_argument("--out", help="NDJSON record file")
    common.add_argument("--csv", help="CSV record file")
    common.add_argument("--seed", type=int)
    common.add_argument("--jobs", type=int)
    common.add_argument("--point", help="rational point such as '(3:4:1)' or '5/2'")
    common.add_argument("--minpoly", help="minimal polynomial such as 'x^2-2'")
    common.add_argument("--root-index", type=int, dest="root_index")
    common.add_argument("--form", help="homogeneous form for a local height")
    common.add_argument("--place", help="single place for a local height")
    common.add_argument("--points", help="points separated by ';'")
    common.add_argument("--lines", help="linear forms separated by ';'")
    common.add_argument("--kind", choices=["I", "II", "III"])
    common.add_argument("--map", help="morphism as 'f1; f2' in x, y")
    common.add_argument("-e", type=int, dest="e", help="degree bound for density checks")

    p = _Parser(prog="symheights", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return p


def resolve(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                from_file = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        unknown = set(from_file) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(from_file)
    for k in DEFAULTS:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    if cfg["t"] is not None:
        if isinstance(cfg["t"], float) or not re.fullmatch(r"\s*-?\d+(/\d+)?\s*", str(cfg["t"])):
            raise UsageError("t must be an integer or a 'p/q' string")
        cfg["t"] = str(as_fraction(cfg["t"]))
    cfg["places"] = str(PlaceSet.parse(cfg["places"]))
    if cfg["jobs"] < 1:
        raise UsageError("--jobs must be positive")
    return cfg


def _error(kind: str, message: str):
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        _error("UsageError", str(exc))
        return EXIT_USAGE
    try:
        cfg = resolve(args)
        result, code = COMMANDS[args.command](cfg)
    except (UsageError, ParseError) as exc:
        _error(type(exc).__name__, str(exc))
        return EXIT_USAGE
    except PrecisionExhausted as exc:
        _error("PrecisionExhausted", str(exc))
        return EXIT_UNDECIDED
    except (HeightError, ValueError) as exc:
        _error(type(exc).__name__, str(exc))
        return EXIT_USAGE
    report = {"command": args.command, "config": cfg, "precision_cap": cfg["prec_cap"],
              "result": result}
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
