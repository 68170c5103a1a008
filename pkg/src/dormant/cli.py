"""Command-line front end producing deterministic JSON or CSV reports."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from datetime import datetime, timezone
from fractions import Fraction
from itertools import product

from . import __version__
from .arith import PrimeLevel, RadiusClass, radius_classes
from .csets import (
    DEFAULT_MAX_ENUM,
    PERMUTATIONS,
    RadiiTuple4,
    count_B04_dp,
    csets_04,
    dsn_membership,
)
from .errors import ConsistencyError, DormantError, InputError
from .invariants import (
    degree_upper_bound,
    genus_04,
    genus_raw_from,
    genus_upper_bound,
    quadratic_identity_value,
    simplified_hypothesis,
)
from .tower import DEFAULT_PRECISION, PadicRadiusSpec, alpha_goodness_certificate, tower_report

EXIT_OK, EXIT_INPUT, EXIT_CONSISTENCY = 0, 2, 3
SAFE_INT = 2**53
ENV_PREFIX = "DORMANT_"

# option name -> (converter, builtin default)
SETTINGS = {
    "p": (int, None),
    "N": (int, 1),
    "radii": (str, None),
    "radii_index": (str, None),
    "format": (str, "json"),
    "precision": (int, DEFAULT_PRECISION),
    "max_enum": (int, DEFAULT_MAX_ENUM),
    "seed": (int, 0),
}

FORMULAS = {
    "csets": ["edge-label set B_N", "delta bijection", "(0,4) balanced numbering set", "boundary sets C^0, C^1, C^inf"],
    "genus": ["boundary sets C^0, C^1, C^inf", "general genus formula", "genus upper bound", "degree upper bound",
              "critical-point bound", "quadratic identity under the small-radii hypothesis"],
    "degree": ["boundary sets C^0, C^1, C^inf", "degree of the forgetful projection"],
    "tower": ["rational-place lower bound", "general genus formula", "slack sets D_(s,N)",
              "alpha-goodness inequality"],
    "ds-check": ["slack sets D_s and D_(s,N)", "lower bound s^N on the (0,4) set"],
    "heun-scan": ["Heun operator", "companion connection p-curvature"],
    "heun-validate": ["Heun operator", "oper invariant", "degree of the forgetful projection"],
    "sweep": ["boundary sets C^0, C^1, C^inf", "general genus formula", "genus upper bound", "degree upper bound",
              "quadratic identity under the small-radii hypothesis"],
}


# ---- serialization -----------------------------------------------------


def to_jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) > SAFE_INT else x
    if isinstance(x, Fraction):
        return to_jsonable(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, RadiusClass):
        return to_jsonable(x.rep)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, float):
        return x
    return str(x)


def dump_json(doc) -> str:
    return json.dumps(to_jsonable(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dump_csv(command: str, result: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if command == "tower":
        alphas = result["alphas"]
        w.writerow(["N", "degree", "total", "genus", "p_lower"] + [f"ratio_{a}" for a in alphas])
        for r in result["rows"]:
            w.writerow([r["N"], r["degree"], r["total"], to_jsonable(r["genus"]), r["p_lower"]]
                       + [r["ratios"][a] for a in alphas])
    elif command == "csets":
        w.writerow(["set", "rep"])
        for name in ("c0", "c1", "cinf"):
            for rep in result[name] or []:
                w.writerow([name, rep])
    elif command == "heun-validate":
        w.writerow(["t", "count"])
        for t, c in result["per_t"].items():
            w.writerow([t, c])
    else:
        w.writerow(["key", "value"])
        for k in sorted(result):
            v = to_jsonable(result[k])
            w.writerow([k, v if not isinstance(v, (list, dict)) else json.dumps(v, sort_keys=True)])
    return buf.getvalue()


# ---- settings ----------------------------------------------------------


def read_config(path: str) -> dict:
    """Key-value file: one ``key = value`` per line, ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {raw.strip()!r}")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


def resolve_settings(ns: argparse.Namespace, env=None) -> None:
    """Fill unset options: flags > DORMANT_* environment > config file > default."""
    env = os.environ if env is None else env
    cfg_path = ns.config or env.get(ENV_PREFIX + "CONFIG")
    cfg = read_config(cfg_path) if cfg_path else {}
    for name, (conv, default) in SETTINGS.items():
        if not hasattr(ns, name) or getattr(ns, name) is not None:
            continue
        for source in (env.get(ENV_PREFIX + name.upper()), cfg.get(name)):
            if source is not None:
                setattr(ns, name, conv(source))
                break
        else:
            setattr(ns, name, default)


def parse_ints(text: str) -> list:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}")


def radii_from(ns, N=None) -> RadiiTuple4:
    if ns.p is None:
        raise InputError("-p is required")
    ctx = PrimeLevel(ns.p, ns.N if N is None else N)
    if (ns.radii is None) == (ns.radii_index is None):
        raise InputError("give exactly one of --radii and --radii-index")
    if ns.radii is not None:
        vals = parse_ints(ns.radii)
        if len(vals) != 4:
            raise InputError("need four radii")
        return RadiiTuple4.from_reps(ctx, vals)
    vals = parse_ints(ns.radii_index)
    if len(vals) != 4:
        raise InputError("need four radius indices")
    return RadiiTuple4.from_indices(ctx, vals)


def radii_doc(rho: RadiiTuple4) -> dict:
    return {"p": rho.ctx.p, "N": rho.ctx.N, "reps": list(rho.reps), "indices": list(rho.lambdas)}


# ---- commands ----------------------------------------------------------


def cmd_csets(ns) -> dict:
    rho = radii_from(ns)
    rep = csets_04(rho, max_enum=ns.max_enum)
    listed = rep.c0 is not None
    return {
        "radii": radii_doc(rho),
        "c0": [c.rep for c in rep.c0] if listed else None,
        "c1": [c.rep for c in rep.c1] if listed else None,
        "cinf": [c.rep for c in rep.cinf] if listed else None,
        "sizes": list(rep.sizes),
        "total": rep.total,
        "sum_star": rep.sum_star,
        "sum_star_sq": rep.sum_star_sq,
        "sum_star_prod": rep.sum_star_prod,
        "method": rep.method,
    }


def cmd_genus(ns) -> dict:
    rho = radii_from(ns)
    rep = genus_04(rho, max_enum=ns.max_enum)
    return {
        "radii": radii_doc(rho),
        "genus": rep.genus,
        "degree": rep.degree,
        "total": rep.cset.total,
        "genus_upper_bound": rep.genus_upper,
        "degree_upper_bound": rep.degree_upper,
        "critical_points_bound": rep.crit_bound.bound,
        "critical_points_bound_simplified": rep.crit_bound.simplified,
        "simplified_hypothesis": rep.simplified_applicable,
        "quadratic_identity": rep.identity889_holds,
    }


def cmd_degree(ns) -> dict:
    rho = radii_from(ns)
    rep = csets_04(rho, max_enum=ns.max_enum)
    return {"radii": radii_doc(rho), "degree": rep.sizes[0], "degree_upper_bound": degree_upper_bound(rho.ctx)}


def _tower_spec(ns) -> PadicRadiusSpec:
    if ns.p is None:
        raise InputError("-p is required")
    if ns.kind == "rational":
        try:
            vals = [Fraction(x) for x in ns.values.split(",")]
        except ValueError:
            raise InputError(f"bad rational list {ns.values!r}")
        if len(vals) == 1:
            vals *= 4
        return PadicRadiusSpec.rational(ns.p, vals)
    if ns.kind == "digits":
        streams = [parse_ints(s) for s in ns.values.split(";")]
        if len(streams) == 1:
            streams *= 4
        return PadicRadiusSpec.digit_stream(ns.p, streams)
    vals = parse_ints(ns.values)
    if len(vals) == 1:
        vals *= 4
    return PadicRadiusSpec.constant(ns.p, vals)


def cmd_tower(ns) -> dict:
    spec = _tower_spec(ns)
    alphas = [Fraction(a) for a in ns.alpha.split(",")]
    rep = tower_report(spec, ns.n_max, alphas, precision=ns.precision, max_enum=ns.max_enum)
    out = {
        "spec": spec.describe(),
        "alphas": [str(a) for a in alphas],
        "rows": [
            {
                "N": r.N,
                "reps": list(r.reps),
                "indices": list(r.lambdas),
                "degree": r.degree,
                "total": r.total,
                "genus": r.genus,
                "p_lower": r.p_lower,
                "ratios": {str(a): v for a, v in r.ratios.items()},
            }
            for r in rep.rows
        ],
        "verdicts": {str(a): v for a, v in rep.verdicts.items()},
        "tower_condition": rep.tower_condition,
        "non_increasing_levels": rep.non_increasing_levels,
        "delta_lower_estimate": rep.delta_lower,
        "delta_step": rep.delta_step,
        "notes": rep.notes,
    }
    if ns.s is not None:
        cert = alpha_goodness_certificate(spec, ns.s, ns.n_max, precision=ns.precision, max_enum=ns.max_enum)
        out["certificate"] = {
            "s": cert.s,
            "passed": cert.passed,
            "wording": cert.wording,
            "levels": [
                {
                    "N": lv.N,
                    "degree_floor_holds": lv.degree_floor_holds,
                    "total_floor_holds": lv.total_floor_holds,
                    "genus_bound_holds": lv.genus_bound_holds,
                    "lhs": lv.lhs_interval,
                    "rhs": lv.rhs_interval,
                    "verdict": lv.verdict,
                    "method": lv.method,
                }
                for lv in cert.levels
            ],
        }
    return out


def cmd_ds_check(ns) -> dict:
    if ns.p is None:
        raise InputError("-p is required")
    ctx = PrimeLevel(ns.p, ns.N)
    lam = parse_ints(ns.lambdas)
    if len(lam) != 4:
        raise InputError("need four lambdas")
    member = dsn_membership(ctx, ns.s, lam)
    out = {"p": ns.p, "N": ns.N, "s": ns.s, "lambdas": lam, "member": member}
    if member:
        count = count_B04_dp(ctx, lam).count
        out["b04_count"] = count
        out["lower_bound"] = ns.s**ctx.N
        out["lower_bound_holds"] = count >= ns.s**ctx.N
    return out


def _signs(text: str) -> tuple:
    if len(text) != 4 or set(text) - {"+", "-"}:
        raise InputError("--signs takes four characters from '+-', e.g. '++-+'")
    return tuple(1 if c == "+" else -1 for c in text)


def cmd_heun_scan(ns) -> dict:
    from .heun import GF, dormancy_polynomial, scan_dormant_q, upoly

    rho = radii_from(ns, N=1)
    signs = _signs(ns.signs)
    field = GF(ns.p, ns.extension)
    dormant = scan_dormant_q(field, ns.t, rho, signs)
    poly = dormancy_polynomial(ns.t, rho, signs)
    return {
        "radii": radii_doc(rho),
        "t": ns.t,
        "signs": ns.signs,
        "extension_degree": ns.extension,
        "field_modulus": list(field.modulus),
        "dormant_q": [list(q.coeffs) if ns.extension > 1 else int(q) for q in dormant],
        "dormancy_polynomial": list(poly),
        "prime_field_roots": upoly.roots_in_prime_field(poly, ns.p),
    }


def cmd_heun_validate(ns) -> dict:
    from .heun import count_dormant_opers

    rho = radii_from(ns, N=1)
    degree = csets_04(rho, max_enum=ns.max_enum).sizes[0]
    ts = parse_ints(ns.t) if ns.t else list(range(2, ns.p))
    per_t = {t: count_dormant_opers(t, rho) for t in ts}
    max_count = max(per_t.values())
    match = max_count == degree and all(c <= degree for c in per_t.values())
    return {
        "radii": radii_doc(rho),
        "degree": degree,
        "per_t": per_t,
        "max_count": max_count,
        "verdict": "match" if match else "mismatch",
    }


def sweep_checks(rho: RadiiTuple4, max_enum: int) -> list:
    """Run the invariant suite on one tuple; return the names of failed checks."""
    failed = []
    try:
        rep = csets_04(rho, max_enum=max_enum, method="enumeration")
    except ConsistencyError:
        return ["tri-equality"]
    for key, perm in PERMUTATIONS.items():
        lam = tuple(rho.lambdas[i] for i in perm)
        if count_B04_dp(rho.ctx, lam) != rep.per_set[key]:
            failed.append("dp-vs-enumeration")
            break
    if rep.sizes[0] > degree_upper_bound(rho.ctx):
        failed.append("degree-bound")
    if rep.total:
        g = genus_raw_from(rep)
        if g.denominator != 1:
            failed.append("genus-integrality")
        if g < 0:
            failed.append("genus-nonnegative")
        if g > genus_upper_bound(rho.ctx):
            failed.append("genus-bound")
        if simplified_hypothesis(rho) and quadratic_identity_value(rep) != 0:
            failed.append("quadratic-identity")
    return failed


def cmd_sweep(ns) -> dict:
    if ns.p is None:
        raise InputError("-p is required")
    ctx = PrimeLevel(ns.p, ns.N)
    classes = [c.rep for c in radius_classes(ctx)]
    if ns.samples == 0:
        tuples = product(classes, repeat=4)
    else:
        rng = random.Random(ns.seed)
        tuples = ([rng.choice(classes) for _ in range(4)] for _ in range(ns.samples))
    checked = 0
    failures = []
    for reps in tuples:
        rho = RadiiTuple4.from_reps(ctx, reps)
        bad = sweep_checks(rho, ns.max_enum)
        checked += 1
        if bad:
            failures.append({"reps": list(rho.reps), "failed": bad})
            print(f"violation at radii {list(rho.reps)}: {', '.join(bad)}", file=ns.err_stream)
    return {
        "p": ns.p,
        "N": ns.N,
        "mode": "exhaustive" if ns.samples == 0 else "random",
        "seed": ns.seed if ns.samples else None,
        "checked": checked,
        "violations": len(failures),
        "failures": failures,
    }


COMMANDS = {
    "csets": cmd_csets,
    "genus": cmd_genus,
    "degree": cmd_degree,
    "tower": cmd_tower,
    "ds-check": cmd_ds_check,
    "heun-scan": cmd_heun_scan,
    "heun-validate": cmd_heun_validate,
    "sweep": cmd_sweep,
}


# ---- parser ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", type=int, default=None, help="odd prime")
    common.add_argument("-N", type=int, default=None, help="level (default 1)")
    common.add_argument("--radii", default=None, help="canonical radius reps, e.g. 3,2,4,2")
    common.add_argument("--radii-index", dest="radii_index", default=None, help="radii as delta-indices (lambdas)")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--precision", type=int, default=None, help="bits for interval comparisons (default 128)")
    common.add_argument("--max-enum", dest="max_enum", type=int, default=None,
                        help="largest set size to list explicitly (default 10^6)")
    common.add_argument("--config", default=None, help="key = value settings file")
    common.add_argument("--timestamps", action="store_true", help="add a generation time to the provenance")

    parser = argparse.ArgumentParser(prog="dormant", description="Dormant (0,4) modular curve calculator")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("csets", "genus", "degree"):
        sub.add_parser(name, parents=[common])

    t = sub.add_parser("tower", parents=[common])
    t.add_argument("--kind", choices=("constant", "rational", "digits"), default="rational")
    t.add_argument("--values", default="-1/4",
                   help="constant: lambdas; rational: a/b list (write --values=-1/4 for negatives); "
                   "digits: ';'-separated digit lists")
    t.add_argument("--n-max", dest="n_max", type=int, default=3)
    t.add_argument("--alpha", default="1/2", help="comma-separated rational exponents")
    t.add_argument("-s", type=int, default=None, help="also certify alpha-goodness with this s")

    d = sub.add_parser("ds-check", parents=[common])
    d.add_argument("-s", type=int, required=True)
    d.add_argument("--lambdas", required=True)

    h = sub.add_parser("heun-scan", parents=[common])
    h.add_argument("--t", type=int, required=True)
    h.add_argument("--signs", default="++++")
    h.add_argument("--extension", type=int, default=1, choices=(1, 2))

    v = sub.add_parser("heun-validate", parents=[common])
    v.add_argument("--t", default=None, help="comma-separated t values (default all of F_p minus 0, 1)")

    s = sub.add_parser("sweep", parents=[common])
    s.add_argument("--samples", type=int, default=0, help="0 means exhaustive")
    s.add_argument("--seed", type=int, default=None)
    return parser


def request_doc(ns) -> dict:
    skip = {"config", "timestamps", "err_stream"}
    return {k: v for k, v in sorted(vars(ns).items()) if k not in skip}


def run(argv=None, env=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    ns.err_stream = err
    try:
        resolve_settings(ns, env)
        result = COMMANDS[ns.command](ns)
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=err)
        return EXIT_CONSISTENCY
    except (DormantError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    provenance = {"tool": "dormant", "version": __version__, "paper_equations": FORMULAS[ns.command]}
    if ns.timestamps:
        provenance["generated_at"] = datetime.now(timezone.utc).isoformat()
    if ns.format == "csv":
        out.write(dump_csv(ns.command, to_jsonable(result) if ns.command != "tower" else result))
    else:
        out.write(dump_json({"request": request_doc(ns), "result": result, "provenance": provenance}))
    code = EXIT_OK
    if ns.command == "sweep" and result["violations"]:
        code = EXIT_CONSISTENCY
    return code


def main() -> None:
    sys.exit(run())
