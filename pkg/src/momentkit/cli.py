"""Batch front end: analyze / scan / kappa / curve subcommands.

Inputs are moment-sequence interchange files or measure-definition specs
(JSON with a top-level "measure" block); outputs are JSON reports or CSV
tables with a provenance block (input hash, mode, degree, grid descriptors,
toolkit version).  Reports are deterministic: identical config and input
produce byte-identical output except the isolable "generated_at" field.
Exit code 0 for any verdict, 2 on errors (which are themselves reported as
structured entries).
"""

from __future__ import annotations

import argparse
import csv
import datetime
import hashlib
import json
import sys
from fractions import Fraction
from typing import Any

from . import __version__
from .curves import catalog, curve_from_json, lift_and_test, pushforward_to_curve
from .envelopes import cosine_envelope, geometric_envelope
from .errors import MomentKitError, NotAdmissible
from .gaps import (
    GapEstimate,
    direction_scan,
    direction_set,
    hyperplane_gap,
    orthant_criterion,
    poisson_kappa_1d,
    poisson_kappa_estimate,
    sphere_average_kappa,
)
from .hamburger import VerdictConfig, verdict_1d
from .moments import (
    Atomic,
    Exponential1D,
    GaussianProduct,
    LogNormal1D,
    MomentSequence,
    NonnegativeOrthant,
    Product,
    QLattice1D,
    generate_moments,
    pushforward_direction,
)
from .scalars import Mode, RationalMode, default_float_bits, mode_from_string
from .serialization import format_value, sequence_from_json, support_to_json
from .verdicts import Flavor

CRITERIA = ("admissibility", "carleman", "christoffel", "weyl", "fantappie",
            "cosine", "poisson", "orthant", "hyperplane", "scan")
CONE_ONLY = {"fantappie", "hyperplane"}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="momentkit",
                                     description="moment determinacy analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="run a criterion suite, emit a JSON report")
    _common_input_args(pa)
    pa.add_argument("--criteria", default="verdict",
                    help="comma list from: verdict," + ",".join(CRITERIA))
    pa.add_argument("--out", required=True)

    ps = sub.add_parser("scan", help="direction scan (d >= 2), emit CSV")
    _common_input_args(ps)
    ps.add_argument("--directions", default="8",
                    help="direction count, or a JSON file with a list of vectors")
    ps.add_argument("--out", required=True)

    pk = sub.add_parser("kappa", help="Poisson gap field, emit CSV")
    _common_input_args(pk)
    pk.add_argument("--field", default="-2:2:5,0.5:2:4",
                    help="x0:x1:nx,t0:t1:nt grid specification")
    pk.add_argument("--lp-degree", type=int, default=2)
    pk.add_argument("--sphere-average", action="store_true")
    pk.add_argument("--out", required=True)

    pc = sub.add_parser("curve", help="curve lift analysis, emit a JSON report")
    pc.add_argument("--curve", required=True,
                    help="catalog:<name> or a curve description file")
    pc.add_argument("--sigma", required=True, help="1D lift: spec or interchange file")
    pc.add_argument("--mode", default="rational")
    pc.add_argument("--degree", type=int, default=8)
    pc.add_argument("--weight-exponent", type=int, default=2)
    pc.add_argument("--out", required=True)

    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "scan":
            return cmd_scan(args)
        if args.command == "kappa":
            return cmd_kappa(args)
        if args.command == "curve":
            return cmd_curve(args)
    except (MomentKitError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        _write_error_report(args, exc)
        return 2
    return 2


def _common_input_args(p) -> None:
    p.add_argument("--input", required=True, help="interchange file or measure spec")
    p.add_argument("--mode", default=None,
                   help="rational | float:<bits>; spec files may set their own")
    p.add_argument("--degree", type=int, default=None)


# ---------------------------------------------------------------------------
# input loading


def load_input(path: str, mode_arg: str | None, degree_arg: int | None) -> tuple:
    """(sequence, provenance dict).  Measure specs carry closed-form moment
    rules; interchange files carry the numbers themselves."""
    with open(path, "rb") as fh:
        raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    doc = json.loads(raw.decode("utf-8"))
    if "measure" in doc:
        dimension = int(doc.get("dimension", 1))
        max_degree = degree_arg or int(doc.get("max_degree", 20))
        mode_str = mode_arg or doc.get("mode") or _default_mode_string(max_degree)
        mode = mode_from_string(mode_str)
        defn = _measure_from_json(doc["measure"])
        seq = generate_moments(defn, dimension, max_degree, mode)
    else:
        seq = sequence_from_json(raw.decode("utf-8"))
        if degree_arg is not None and degree_arg < seq.max_degree:
            from .polynomials import multi_indices

            entries = {a: seq.entries[a] for a in multi_indices(seq.dimension, degree_arg)}
            seq = MomentSequence(seq.dimension, degree_arg, seq.mode, entries,
                                 seq.support, seq.meta)
        mode_str = None
    provenance = {
        "input_path": path,
        "input_sha256": digest,
        "mode": ("rational" if isinstance(seq.mode, RationalMode)
                 else f"float:{seq.mode.precision_bits}"),
        "max_degree": seq.max_degree,
        "toolkit_version": __version__,
    }
    return seq, provenance


def _default_mode_string(max_degree: int) -> str:
    return f"float:{default_float_bits(max_degree)}"


def _measure_from_json(doc: dict):
    kind = doc["variant"]
    if kind == "gaussian_product":
        return GaussianProduct(tuple(Fraction(v) for v in doc["variances"]))
    if kind == "exponential":
        return Exponential1D()
    if kind == "log_normal":
        return LogNormal1D(doc["s"])
    if kind == "q_lattice":
        return QLattice1D(Fraction(doc["q"]))
    if kind == "atomic":
        return Atomic(tuple(tuple(Fraction(c) for c in p) for p in doc["points"]),
                      tuple(Fraction(w) for w in doc["weights"]))
    if kind == "product":
        return Product(tuple((_measure_from_json(f["measure"]), int(f["dimension"]))
                             for f in doc["factors"]))
    raise MomentKitError(f"unknown measure variant {kind!r}")


# ---------------------------------------------------------------------------
# analyze


def cmd_analyze(args) -> int:
    seq, provenance = load_input(args.input, args.mode, args.degree)
    wanted = [c.strip() for c in args.criteria.split(",") if c.strip()]
    for name in wanted:
        if name not in CRITERIA and name != "verdict":
            raise MomentKitError(f"unknown criterion {name!r}")
        if name in CONE_ONLY and not isinstance(seq.support, NonnegativeOrthant):
            raise MomentKitError(
                f"criterion {name!r} needs cone support; input is full-space"
            )
    report: dict[str, Any] = {
        "schema_version": "1",
        "provenance": dict(provenance, criteria=wanted),
        "input_summary": {
            "dimension": seq.dimension,
            "max_degree": seq.max_degree,
            "support": support_to_json(seq.support),
        },
        "criteria": [],
        "errors": [],
    }
    mode = seq.mode
    fmt = lambda v: format_value(mode, v)

    verdict = None
    try:
        if seq.dimension == 1:
            verdict = verdict_1d(seq, None, VerdictConfig())
        elif "scan" in wanted or "verdict" in wanted:
            directions = direction_set(seq.dimension, 2 * seq.dimension, mode)
            scan = direction_scan(seq, directions)
            verdict = scan["aggregate"]
    except NotAdmissible as exc:
        report["errors"].append({"error": "NotAdmissible", "detail": str(exc)})
        _finish_report(report, args.out)
        return 2

    if verdict is not None:
        report["verdict"] = verdict.as_dict(lambda v: fmt(v))

    for name in wanted:
        if name == "verdict":
            continue
        try:
            report["criteria"].append(_run_criterion(name, seq))
        except MomentKitError as exc:
            report["errors"].append({"criterion": name, "error": type(exc).__name__,
                                     "detail": str(exc)})
    _finish_report(report, args.out)
    return 0 if not report["errors"] else 2


def _run_criterion(name: str, seq: MomentSequence) -> dict:
    from .hamburger import admissibility_check, carleman, christoffel, hankel
    from .hamburger import recurrence_from_moments, weyl_disk
    from .scalars import complex_scalar

    mode = seq.mode
    fmt = lambda v: format_value(mode, v)
    out: dict[str, Any] = {"name": name}
    if name == "admissibility":
        adm = admissibility_check(hankel(_as_1d(seq), seq.max_degree // 2))
        out.update(classification=adm.classification, rank=adm.rank,
                   sufficiency="necessary-only")
        return out
    if name == "carleman":
        s1 = _as_1d(seq)
        flavor = (Flavor.STIELTJES if isinstance(s1.support, NonnegativeOrthant)
                  else Flavor.HAMBURGER)
        res = carleman(s1, flavor, max(s1.max_degree // 2, 1))
        out.update(partial_sum=fmt(res.partial_sum), diverging=res.diverging,
                   horizon=res.horizon, flavor=res.flavor.value,
                   sufficiency=("rigorous-sufficient" if res.diverging and
                                s1.is_certified_carleman() else "limit-rigorous-numeric"))
        return out
    if name in ("christoffel", "weyl"):
        s1 = _as_1d(seq)
        rec = recurrence_from_moments(s1, s1.max_degree // 2)
        z = complex_scalar(mode, 0, 1)
        top = min(rec.order - 1, rec.rank - 1)
        if name == "christoffel":
            values = {n: fmt(christoffel(rec, z, n))
                      for n in sorted({max(top // 4, 1), max(top // 2, 1), top})}
            out.update(values={str(k): v for k, v in values.items()},
                       sufficiency="limit-rigorous-numeric")
        else:
            disk = weyl_disk(rec, z, top)
            out.update(center_re=fmt(disk.center.re), center_im=fmt(disk.center.im),
                       radius_sq=fmt(disk.radius_sq), degree=top,
                       degenerate=disk.degenerate,
                       sufficiency="limit-rigorous-numeric")
        return out
    if name == "fantappie":
        s1 = _as_1d(seq)
        env = geometric_envelope(s1, min(4, s1.max_degree // 2))
        est = GapEstimate.from_envelope(env, s1)
        out.update(envelope_gap=fmt(env.gap_functional), order=env.order,
                   sup_side=fmt(est.sup_side), inf_side=fmt(est.inf_side),
                   certified=True, sufficiency="necessary-only")
        return out
    if name == "cosine":
        s1 = _as_1d(seq)
        env = cosine_envelope(s1, min(4, s1.max_degree // 2))
        out.update(envelope_gap=fmt(env.gap_functional), order=env.order,
                   certified=True, sufficiency="necessary-only")
        return out
    if name == "poisson":
        if seq.dimension == 1:
            k = poisson_kappa_1d(seq, 0, 1, max((seq.max_degree - 2) // 2, 1))
            out.update(kappa=fmt(k), point=[0.0, 1.0], exact=True,
                       sufficiency="limit-rigorous-numeric")
        else:
            est = poisson_kappa_estimate(seq, (0,) * seq.dimension, 1,
                                         min(2, seq.max_degree))
            out.update(gap=fmt(est.gap), certified=False, degree=est.degree,
                       grid=est.grid, sufficiency="heuristic")
        return out
    if name == "orthant":
        corners = [(0,) * seq.dimension]
        one = mode.one()
        corners += [tuple((one if i == j else -one) for j in range(seq.dimension))
                    for i in range(seq.dimension)]
        slacks = []
        for corner in corners:
            res = orthant_criterion(seq, corner)
            slacks.append({"corner": [mode.to_float(c) for c in corner],
                           "slack": fmt(res["slack"])})
        out.update(slacks=slacks, sufficiency="necessary-only")
        return out
    if name == "hyperplane":
        a = (mode.one(),) * seq.dimension
        res = hyperplane_gap(seq, a, min(6, seq.max_degree))
        out.update(value_plus=fmt(res["value_plus"]), value_minus=fmt(res["value_minus"]),
                   certified=False, degree=res["degree"], grid=res["grid"],
                   sufficiency="heuristic")
        return out
    if name == "scan":
        directions = direction_set(seq.dimension, 2 * seq.dimension, mode)
        scan = direction_scan(seq, directions)
        out.update(aggregate=scan["aggregate"].as_dict(lambda v: fmt(v)),
                   rows=[{"direction": [mode.to_float(c) for c in r["direction"]],
                          "status": r["verdict"].status.value}
                         for r in scan["rows"]],
                   basis_covered=scan["basis_covered"])
        return out
    raise MomentKitError(f"criterion {name} not implemented")


def _as_1d(seq: MomentSequence) -> MomentSequence:
    if seq.dimension == 1:
        return seq
    return pushforward_direction(seq, (1,) + (0,) * (seq.dimension - 1))


# ---------------------------------------------------------------------------
# scan


def cmd_scan(args) -> int:
    seq, _provenance = load_input(args.input, args.mode, args.degree)
    if seq.dimension < 2:
        raise MomentKitError("scan needs a multivariate input")
    mode = seq.mode
    try:
        count = int(args.directions)
        directions = direction_set(seq.dimension, count, mode)
    except ValueError:
        with open(args.directions) as fh:
            directions = [tuple(Fraction(c) for c in row) for row in json.load(fh)]
    scan = direction_scan(seq, directions)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = [f"xi_{i}" for i in range(seq.dimension)]
        header += ["status", "numeric_flagged", "criteria"]
        writer.writerow(header)
        for row in scan["rows"]:
            v = row["verdict"]
            crits = ";".join(sorted({e.criterion for e in v.evidence}))
            writer.writerow([_csv_value(mode, c) for c in row["direction"]]
                            + [v.status.value, v.numeric_flagged, crits])
        agg = scan["aggregate"]
        writer.writerow(["aggregate", "", ""][: max(seq.dimension, 1)]
                        + [agg.status.value, agg.numeric_flagged,
                           f"basis_covered={scan['basis_covered']}"])
    return 0


def _csv_value(mode: Mode, v) -> str:
    """Rationals as p/q; floats as shortest round-trip decimal (the hex form
    goes in a companion column where bit-exactness matters)."""
    if isinstance(mode, RationalMode):
        return mode.to_string(v)
    return repr(float(v))


# ---------------------------------------------------------------------------
# kappa field


def cmd_kappa(args) -> int:
    seq, _provenance = load_input(args.input, args.mode, args.degree)
    xs, ts = _parse_field(args.field)
    mode = seq.mode
    rows = []
    max_level = max((seq.max_degree - 2) // 2, 1)
    pf = (pushforward_direction(seq, (1,) + (0,) * (seq.dimension - 1))
          if seq.dimension >= 2 else None)
    for t in ts:
        for x in xs:
            xq = Fraction(x).limit_denominator(10 ** 6)
            tq = Fraction(t).limit_denominator(10 ** 6)
            if seq.dimension == 1:
                k = poisson_kappa_1d(seq, xq, tq, max_level)
                rows.append([x, t, mode.to_float(k), "weyl-disk-1d", True, ""])
            else:
                est = poisson_kappa_estimate(seq, (xq,) * seq.dimension, tq,
                                             args.lp_degree)
                k1 = poisson_kappa_1d(pf, xq, tq, max((pf.max_degree - 2) // 2, 1))
                rows.append([x, t, mode.to_float(est.gap), "grid-lp", False,
                             repr(mode.to_float(k1))])
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "t", "kappa", "method", "certified", "crosscheck_1d"])
        writer.writerows(rows)
        if args.sphere_average:
            avg = sphere_average_kappa(seq, (0,) * seq.dimension, 1, Fraction(1, 2),
                                       8, min(args.lp_degree, max_level))
            writer.writerow(["sphere_average", 1.0, avg, "average", False, ""])
    return 0


def _parse_field(spec: str) -> tuple:
    xs_spec, ts_spec = spec.split(",")
    xs = _parse_range(xs_spec)
    ts = _parse_range(ts_spec)
    if any(t <= 0 for t in ts):
        raise MomentKitError("kappa field needs t > 0")
    return xs, ts


def _parse_range(spec: str) -> list:
    lo, hi, n = spec.split(":")
    lo, hi, n = float(lo), float(hi), int(n)
    if n == 1:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


# ---------------------------------------------------------------------------
# curve


def cmd_curve(args) -> int:
    if args.curve.startswith("catalog:"):
        curve = catalog(args.curve.split(":", 1)[1])
    else:
        with open(args.curve) as fh:
            curve = curve_from_json(fh.read())
    mode = mode_from_string(args.mode)
    sigma, provenance = load_input(args.sigma, args.mode, None)
    need = args.degree * curve.max_component_degree
    if sigma.max_degree < need:
        with open(args.sigma) as fh:
            doc = json.load(fh)
        if "measure" in doc:
            sigma = generate_moments(_measure_from_json(doc["measure"]), 1, need,
                                     sigma.mode)
        else:
            raise MomentKitError(
                f"lift degree {sigma.max_degree} below required {need}"
            )
    cm = pushforward_to_curve(sigma, curve, args.degree)
    verdict = lift_and_test(cm, VerdictConfig(), args.weight_exponent)
    fmt = lambda v: format_value(sigma.mode, v)
    report = {
        "schema_version": "1",
        "provenance": dict(provenance, curve=curve.name,
                           weight_exponent=args.weight_exponent),
        "curve": {"name": curve.name, "dimension": curve.dimension,
                  "weight_degree": len(curve.weight) - 1},
        "verdict": verdict.as_dict(lambda v: fmt(v)),
        "errors": [],
    }
    _finish_report(report, args.out)
    return 0


# ---------------------------------------------------------------------------
# report plumbing


def _finish_report(report: dict, out_path: str) -> None:
    report["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    with open(out_path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


def _write_error_report(args, exc: Exception) -> None:
    out = getattr(args, "out", None)
    report = {
        "schema_version": "1",
        "errors": [{"error": type(exc).__name__, "detail": str(exc)}],
    }
    if out:
        _finish_report(report, out)
    else:
        json.dump(report, sys.stderr, indent=2)


if __name__ == "__main__":
    sys.exit(main())
