"""Command-line surface: every module exposed with JSON in, JSON out.

Each subcommand reads a JSON payload (file or stdin), computes, and writes a
single JSON object {"ok": bool, "result": ..., "diagnostics": ...} to stdout.
Exit codes: 0 success, 1 domain/validation error, 2 numerical failure,
3 usage error. Output is byte-identical for identical input, seed, and
single-worker settings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import cech as cech_mod
from . import irrational as irr
from . import lattice as lat
from . import llv
from . import period as per
from . import serialize as ser
from . import walls as wl
from .config import DEFAULT_TOL, RunConfig
from .errors import DomainError, HkgeomError, NumericalError

CONFIG_ENV = "HKGEOM_CONFIG"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_config(args) -> RunConfig:
    tol = DEFAULT_TOL
    seed = None
    workers = 1
    path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        overrides = data.get("tolerances", {})
        tol = tol.replace(**{k: float(v) for k, v in overrides.items()})
        seed = data.get("seed", seed)
        workers = data.get("workers", workers)
    for name in ("iso", "orth", "pos", "lie", "wall"):
        flag = getattr(args, f"tol_{name}", None)
        if flag is not None:
            tol = tol.replace(**{name: flag})
    if getattr(args, "seed", None) is not None:
        seed = args.seed
    if getattr(args, "workers", None) is not None:
        workers = args.workers
    return RunConfig(tol=tol, seed=seed, workers=workers)


def _read_payload(args) -> dict:
    src = getattr(args, "input", "-") or "-"
    if src == "-":
        text = sys.stdin.read()
    else:
        with open(src, "r", encoding="utf-8") as fh:
            text = fh.read()
    if not text.strip():
        return {}
    return json.loads(text)


def _payload_lattice(payload) -> lat.QuadLattice:
    if "lattice" in payload:
        return ser.decode_lattice(payload["lattice"])
    return ser.decode_lattice(payload)


def _payload_ring(payload, args) -> llv.CohomologyRing:
    if getattr(args, "ring", None):
        if os.path.exists(args.ring):
            with open(args.ring, "r", encoding="utf-8") as fh:
                return ser.decode_ring(json.load(fh))
        return ser.decode_ring(args.ring)
    if "ring" not in payload:
        raise DomainError("no ring given: use --ring or a 'ring' payload field")
    return ser.decode_ring(payload["ring"])


def _payload_span(payload, args):
    if getattr(args, "span", None):
        with open(args.span, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return data["span"] if isinstance(data, dict) else data
    if "span" in payload:
        return payload["span"]
    raise DomainError("no span given: use --span or a 'span' payload field")


def _float_rows(rows):
    return [[float(ser.decode_scalar(x)) for x in row] for row in rows]


def _require_seed(cfg: RunConfig) -> int:
    if cfg.seed is None:
        raise DomainError("sampling commands require an explicit --seed")
    return cfg.seed


# -- handlers -------------------------------------------------------------------


def _h_lattice_signature(payload, args, cfg):
    L = _payload_lattice(payload)
    p, m = L.signature
    return [p, m], {"rank": L.rank, "det": L.det}


def _h_lattice_dual(payload, args, cfg):
    L = _payload_lattice(payload)
    coords, exact = ser.decode_vector(payload["coords"])
    if not exact:
        raise DomainError("dual values need rational coordinates")
    return {"value": ser.encode_scalar(lat.dual_value(L, coords))}, {}


def _h_lattice_negative(payload, args, cfg):
    L = _payload_lattice(payload)
    coords, exact = ser.decode_vector(payload["coords"])
    if not exact:
        raise DomainError("negativity tests need rational coordinates")
    verdict = lat.is_negative_form(L, coords)
    p, m = lat.kernel_signature(L, coords)
    return {
        "negative": verdict,
        "dual_value": ser.encode_scalar(lat.dual_value(L, coords)),
        "kernel_signature": [p, m],
    }, {}


def _h_lattice_spinor(payload, args, cfg):
    L = _payload_lattice(payload)
    rows = [[ser.decode_scalar(x) for x in row] for row in payload["matrix"]]
    sign = lat.spinor_norm_sign(L, rows)
    return {"sign": sign, "in_o_sharp": sign == 1}, {}


def _h_period_validate(payload, args, cfg):
    L = _payload_lattice(payload)
    z = ser.decode_period_point(L, payload["point"], cfg.tol)
    return {
        "point": ser.encode_period_point(z),
        "q_re": per.qform(L, z.re),
        "q_im": per.qform(L, z.im),
        "pairing": per.bform(L, z.re, z.im),
    }, {}


def _h_period_convert(payload, args, cfg):
    L = _payload_lattice(payload)
    if "point" in payload:
        z = ser.decode_period_point(L, payload["point"], cfg.tol)
        plane = per.point_to_plane(z)
        return {"plane": ser.encode_two_plane(plane)}, {}
    if "plane" in payload:
        rows = _float_rows(payload["plane"])
        if len(rows) != 2:
            raise DomainError("a 2-plane needs exactly two spanning vectors")
        plane = per.oriented_two_plane(L, rows[0], rows[1], cfg.tol)
        z = per.plane_to_point(plane, cfg.tol)
        return {"point": ser.encode_period_point(z)}, {}
    raise DomainError("convert needs a 'point' or a 'plane' field")


def _h_period_cone(payload, args, cfg):
    L = _payload_lattice(payload)
    z = ser.decode_period_point(L, payload["point"], cfg.tol)
    vec, _ = ser.decode_vector(payload["vector"])
    return {
        "contains": per.positive_cone_contains(z, [float(x) for x in vec], cfg.tol)
    }, {}


def _h_period_sample(payload, args, cfg):
    L = _payload_lattice(payload)
    seed = _require_seed(cfg)
    z = per.sample_period_point(L, seed, cfg.tol)
    result = {"point": ser.encode_period_point(z)}
    if getattr(args, "line", False):
        ell = per.sample_irrational_line(
            z, height=args.height, relation_tol=args.tol_relation, seed=seed, tol=cfg.tol
        )
        result["line"] = ser.encode_float_vector(ell)
    return result, {"seed": seed}


def _h_twistor_plane(payload, args, cfg):
    L = _payload_lattice(payload)
    z = ser.decode_period_point(L, payload["point"], cfg.tol)
    line, _ = ser.decode_vector(payload["line"])
    plane = per.twistor_plane(z, [float(x) for x in line], cfg.tol)
    return {"plane": ser.encode_three_plane(plane)}, {}


def _h_twistor_point(payload, args, cfg):
    L = _payload_lattice(payload)
    span = _float_rows(payload["plane"])
    plane = per.orient_three_plane(L, span, cfg.tol)
    direction, _ = ser.decode_vector(payload["direction"])
    z = per.conic_point(plane, [float(x) for x in direction], cfg.tol)
    return {"point": ser.encode_period_point(z)}, {}


def _h_twistor_chain(payload, args, cfg):
    L = _payload_lattice(payload)
    source = ser.decode_period_point(L, payload["source"], cfg.tol)
    target = ser.decode_period_point(L, payload["target"], cfg.tol)
    chain = per.chain_connect(source, target, max_links=args.max_links, tol=cfg.tol)
    per.verify_chain(chain, source, target, cfg.tol)
    return {"links": ser.encode_chain(chain), "count": len(chain)}, {
        "max_links": args.max_links
    }


def _h_irrational_closure(payload, args, cfg):
    vectors = payload["vectors"]
    mode = payload.get("mode", getattr(args, "mode", None) or "exact")
    if mode == "exact":
        decoded = []
        for row in vectors:
            vec, exact = ser.decode_vector(row)
            if not exact:
                raise DomainError("exact mode needs rational vectors")
            decoded.append(vec)
        report = irr.rational_closure(decoded, mode="exact")
    else:
        rows = _float_rows(vectors)
        report = irr.rational_closure(
            rows, mode="detect", height=args.height, tol=args.tol_relation
        )
    return {
        "mode": report.mode,
        "ambient_dim": report.ambient_dim,
        "span_dim": report.span_dim,
        "closure_dim": report.closure_dim,
        "relations": [ser.encode_vector(r) for r in report.relations],
    }, {}


def _h_irrational_test(payload, args, cfg):
    rows = _float_rows(payload["vectors"])
    verdict = irr.is_fully_irrational(rows, height=args.height, tol=args.tol_relation)
    return {
        "fully_irrational": verdict.fully_irrational,
        "deterministic": verdict.deterministic,
        "witness": ser.encode_vector(verdict.witness) if verdict.witness else None,
    }, {"height": args.height, "tol": args.tol_relation}


def _h_irrational_picard(payload, args, cfg):
    L = _payload_lattice(payload)
    z = ser.decode_period_point(L, payload["point"], cfg.tol)
    verdict = irr.picard_trivial(z, height=args.height, tol=args.tol_relation)
    return {
        "trivial_up_to_height": verdict.trivial_up_to_height,
        "witness": list(verdict.witness) if verdict.witness else None,
        "method": verdict.method,
    }, {"height": args.height, "tol": args.tol_relation}


def _h_walls_enum(payload, args, cfg):
    L = _payload_lattice(payload)
    span = [ser.decode_vector(row)[0] for row in payload["span"]]
    d = int(payload.get("square", getattr(args, "square", None) or -2))
    radius = payload.get("radius", getattr(args, "radius", None) or 2)
    if isinstance(radius, float):
        raise DomainError("radius must be an int or a 'p/q' string")
    walls = wl.enumerate_walls_near(L, span, d, ser.decode_scalar(radius))
    mj = wl.majorant(L, span)
    return {
        "walls": [ser.encode_wall(w) for w in walls],
        "count": len(walls),
        "square": d,
        "radius": ser.encode_scalar(ser.decode_scalar(radius)),
        "majorant_gram": [ser.encode_vector(row) for row in mj.matrix],
    }, {}


def _h_walls_avoid(payload, args, cfg):
    L = _payload_lattice(payload)
    span = _float_rows(payload["span"])
    plane = per.orient_three_plane(L, span, cfg.tol)
    walls = ser.decode_wallset(L, payload["walls"])
    report = wl.wall_avoidance(plane, walls, tau=cfg.tol.wall)
    return {
        "avoided": report.avoided,
        "min_restriction_norm": report.min_restriction_norm
        if report.nearest is not None
        else None,
        "nearest": ser.encode_wall(report.nearest) if report.nearest else None,
    }, {}


def _h_walls_chamber(payload, args, cfg):
    L = _payload_lattice(payload)
    z = ser.decode_period_point(L, payload["point"], cfg.tol)
    walls = ser.decode_wallset(L, payload["walls"])
    vec, _ = ser.decode_vector(payload["vector"])
    contains = wl.kahler_chamber_contains(
        z, walls, [float(x) for x in vec], tau=cfg.tol.wall, tol=cfg.tol
    )
    relevant = wl.relevant_walls(z, walls, tau=cfg.tol.wall)
    return {
        "contains": contains,
        "relevant_walls": [ser.encode_wall(w) for w in relevant],
    }, {}


def _h_walls_ueps(payload, args, cfg):
    L = _payload_lattice(payload)
    span = [ser.decode_vector(row)[0] for row in payload["span"]]
    vec, _ = ser.decode_vector(payload["vector"])
    eps = float(payload.get("eps", getattr(args, "eps", None) or 0.5))
    return {
        "contains": wl.in_u_eps(L, span, [float(x) for x in vec], eps),
        "eps": eps,
    }, {}


def _h_llv_e(payload, args, cfg):
    ring = _payload_ring(payload, args)
    eta, _ = ser.decode_vector(payload["eta"])
    op = llv.lefschetz_e(ring, [float(x) for x in eta])
    return {"matrix": [ser.encode_float_vector(r) for r in op.matrix], "degree": 2}, {}


def _h_llv_f(payload, args, cfg):
    ring = _payload_ring(payload, args)
    eta, _ = ser.decode_vector(payload["eta"])
    op = llv.lefschetz_f(ring, [float(x) for x in eta])
    res = llv.sl2_residuals(ring, [float(x) for x in eta])
    return {
        "matrix": [ser.encode_float_vector(r) for r in op.matrix],
        "degree": -2,
        "bracket_residual": max(res.values()),
    }, {}


def _h_llv_closure(payload, args, cfg):
    ring = _payload_ring(payload, args)
    if getattr(args, "full", False) or payload.get("full"):
        closure = llv.full_llv_closure(ring, tau=cfg.tol.lie)
    else:
        span = _float_rows(_payload_span(payload, args))
        plane = per.orient_three_plane(ring.lattice, span, cfg.tol)
        closure = llv.so5_closure(ring, plane, tau=cfg.tol.lie)
    return {
        "dimension": closure.dimension,
        "by_degree": {str(d): n for d, n in closure.by_degree.items()},
        "residual": closure.residual,
    }, {"tau_lie": cfg.tol.lie}


def _h_llv_fujiki(payload, args, cfg):
    ring = _payload_ring(payload, args)
    c = llv.fujiki_constant(ring, seed=cfg.seed or 0)
    return {"constant": ser.encode_scalar(c)}, {"seed": cfg.seed or 0}


def _h_llv_hodge(payload, args, cfg):
    L = _payload_lattice(payload)
    z = ser.decode_period_point(L, payload["point"], cfg.tol)
    dec = llv.hodge_decompose(L, z, cfg.tol)
    return {
        "dims": list(dec.dims),
        "inertia_h11": list(dec.inertia_h11),
    }, {}


def _h_llv_deligne(payload, args, cfg):
    ring = _payload_ring(payload, args)
    span = _float_rows(_payload_span(payload, args))
    plane = per.orient_three_plane(ring.lattice, span, cfg.tol)
    closure = llv.so5_closure(ring, plane, tau=cfg.tol.lie)
    z = ser.decode_period_point(ring.lattice, payload["point"], cfg.tol)
    x = llv.deligne_generator(closure, z)
    spec = llv.weight_spectrum(ring, x)
    deg2 = sorted(round(v.imag, 9) for v in spec[2])
    return {
        "weights_im_degree2": deg2,
        "max_real_part": max(abs(v.real) for vals in spec.values() for v in vals)
        if spec
        else 0.0,
    }, {}


def _h_cech_d(payload, args, cfg):
    nerve = ser.decode_nerve(payload["nerve"])
    group = ser.decode_group(payload["group"])
    c = ser.decode_cochain(nerve, group, payload["cochain"])
    return {"cochain": ser.encode_cochain(cech_mod.coboundary(c))}, {}


def _h_cech_cocycle(payload, args, cfg):
    nerve = ser.decode_nerve(payload["nerve"])
    group = ser.decode_group(payload["group"])
    c = ser.decode_cochain(nerve, group, payload["cochain"])
    return {"is_cocycle": cech_mod.is_cocycle(c)}, {}


def _h_cech_solve(payload, args, cfg):
    nerve = ser.decode_nerve(payload["nerve"])
    group = ser.decode_group(payload["group"])
    c = ser.decode_cochain(nerve, group, payload["cochain"])
    res = cech_mod.solve_coboundary(c)
    if res.solved:
        return {"solution": ser.encode_cochain(res.solution)}, {}
    raise _Obstructed(res)


class _Obstructed(Exception):
    def __init__(self, result):
        self.result = result


def _h_cech_cohomology(payload, args, cfg):
    nerve = ser.decode_nerve(payload["nerve"])
    group = ser.decode_group(payload["group"])
    degree = int(payload.get("degree", getattr(args, "degree", None) or 0))
    factors = cech_mod.cohomology(nerve, group, degree)
    return {"degree": degree, "factors": list(factors)}, {}


HANDLERS = {
    ("lattice", "signature"): _h_lattice_signature,
    ("lattice", "dual"): _h_lattice_dual,
    ("lattice", "negative"): _h_lattice_negative,
    ("lattice", "spinor"): _h_lattice_spinor,
    ("period", "validate"): _h_period_validate,
    ("period", "convert"): _h_period_convert,
    ("period", "cone"): _h_period_cone,
    ("period", "sample"): _h_period_sample,
    ("twistor", "plane"): _h_twistor_plane,
    ("twistor", "point"): _h_twistor_point,
    ("twistor", "chain"): _h_twistor_chain,
    ("irrational", "closure"): _h_irrational_closure,
    ("irrational", "test"): _h_irrational_test,
    ("irrational", "picard"): _h_irrational_picard,
    ("walls", "enum"): _h_walls_enum,
    ("walls", "avoid"): _h_walls_avoid,
    ("walls", "chamber"): _h_walls_chamber,
    ("walls", "ueps"): _h_walls_ueps,
    ("llv", "e"): _h_llv_e,
    ("llv", "f"): _h_llv_f,
    ("llv", "closure"): _h_llv_closure,
    ("llv", "fujiki"): _h_llv_fujiki,
    ("llv", "hodge"): _h_llv_hodge,
    ("llv", "deligne"): _h_llv_deligne,
    ("cech", "d"): _h_cech_d,
    ("cech", "cocycle"): _h_cech_cocycle,
    ("cech", "solve"): _h_cech_solve,
    ("cech", "cohomology"): _h_cech_cohomology,
}

SUBCOMMANDS = {
    "lattice": ["signature", "dual", "negative", "spinor"],
    "period": ["validate", "convert", "cone", "sample"],
    "twistor": ["plane", "point", "chain"],
    "irrational": ["closure", "test", "picard"],
    "walls": ["enum", "avoid", "chamber", "ueps"],
    "llv": ["e", "f", "closure", "fujiki", "hodge", "deligne"],
    "cech": ["d", "cocycle", "solve", "cohomology"],
}


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", default="-", help="JSON input path or - for stdin")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--config", default=None, help="config JSON path")
    common.add_argument("--json", action="store_true", help="JSON output (always on)")
    for name in ("iso", "orth", "pos", "lie", "wall"):
        common.add_argument(f"--tol-{name}", dest=f"tol_{name}", type=float, default=None)
    common.add_argument("--height", type=int, default=100, help="height bound for searches")
    common.add_argument(
        "--tol-relation", dest="tol_relation", type=float, default=1e-9,
        help="vanishing tolerance for relation searches",
    )

    parser = _Parser(prog="hkgeom", description=__doc__)
    groups = parser.add_subparsers(dest="group", required=True)
    for group, ops in SUBCOMMANDS.items():
        gp = groups.add_parser(group)
        sub = gp.add_subparsers(dest="op", required=True)
        for op in ops:
            leaf = sub.add_parser(op, parents=[common])
            if (group, op) == ("twistor", "chain"):
                leaf.add_argument("--max-links", dest="max_links", type=int, default=64)
            if (group, op) == ("period", "sample"):
                leaf.add_argument("--line", action="store_true")
            if group == "llv":
                leaf.add_argument("--ring", default=None)
                leaf.add_argument("--span", default=None)
            if (group, op) == ("llv", "closure"):
                leaf.add_argument("--full", action="store_true")
            if (group, op) == ("walls", "enum"):
                leaf.add_argument("--square", type=int, default=None)
                leaf.add_argument("--radius", default=None)
            if (group, op) == ("walls", "ueps"):
                leaf.add_argument("--eps", type=float, default=None)
            if (group, op) == ("irrational", "closure"):
                leaf.add_argument("--mode", choices=["exact", "detect"], default=None)
            if (group, op) == ("cech", "cohomology"):
                leaf.add_argument("--degree", type=int, default=None)
    return parser


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as err:
        _emit({"ok": False, "error": {"type": "usage", "message": str(err)}})
        return 3
    try:
        cfg = _load_config(args)
        payload = _read_payload(args)
        handler = HANDLERS[(args.group, args.op)]
        result, diagnostics = handler(payload, args, cfg)
        diagnostics.setdefault("workers", cfg.workers)
        _emit({"ok": True, "result": result, "diagnostics": diagnostics})
        return 0
    except _Obstructed as obs:
        _emit(
            {
                "ok": False,
                "error": {"type": "obstruction", "message": "cocycle is not a coboundary"},
                "obstruction": list(obs.result.obstruction),
                "presentation": list(obs.result.presentation),
            }
        )
        return 1
    except DomainError as err:
        _emit({"ok": False, "error": {"type": "domain", "message": str(err)}})
        return 1
    except NumericalError as err:
        _emit({"ok": False, "error": {"type": "numerical", "message": str(err)}})
        return 2
    except (KeyError, ValueError, OSError, json.JSONDecodeError) as err:
        _emit({"ok": False, "error": {"type": "domain", "message": f"{type(err).__name__}: {err}"}})
        return 1
    except HkgeomError as err:
        _emit({"ok": False, "error": {"type": "internal", "message": str(err)}})
        return 2


if __name__ == "__main__":
    sys.exit(main())
