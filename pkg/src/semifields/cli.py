"""Command-line front end: ``semifields <subcommand> ...``.

Every JSON report is ``{"schema", "command", "payload", "timings"}`` and
validates against ``schemas/report.json``.  Exit codes: 0 success,
1 verification or bound failure, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from pathlib import Path

import numpy as np

from . import families, isotopy, planarity, serialize, structure
from .families import FamilyConditionError
from .gf import FieldError, make_field
from .maps import BiprojPair, MapError
from .ntheory import NoPrimitiveDivisor, zsigmondy_prime
from .presemifield import StructureError, polar_value, polarize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


# helpers ---------------------------------------------------------------------------


def _elem(ctx, value):
    """Parse a CLI field element: an integer discrete log or the word ``zero``."""
    if value is None:
        return None
    if value == "zero":
        return 0
    try:
        return int(ctx.exp[int(value) % (ctx.order - 1)])
    except ValueError as exc:
        raise UsageError(f"field elements are discrete logs or 'zero', got {value!r}") from exc


def _load_map(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read map JSON from {path}: {exc}") from exc
    if "payload" in data and "schema" in data and data.get("command") == "construct":
        data = data["payload"]
    serialize.validate(data, "map")
    return serialize.map_from_json(data)


def _witness_out(ctx, witness):
    if witness is None or "u" not in witness:
        return witness
    el = lambda c: serialize.element_to_json(ctx, c)
    return {"u": "inf" if witness["u"] == "inf" else el(witness["u"]),
            "x": el(witness["x"]), "y": el(witness["y"])}


def _cert_payload(cert, ctx) -> dict:
    d = cert.to_dict()
    for c in d["checkers"].values():
        c["witness"] = _witness_out(ctx, c["witness"])
    return d


def _cache_path(obj, oracle: bool) -> Path | None:
    root = os.environ.get("SEMIFIELD_CACHE_DIR")
    if not root:
        return None
    tag = "oracle" if oracle else "default"
    return Path(root) / f"{serialize.map_hash(obj)}-{tag}.json"


def _certify(obj, P, oracle: bool, jobs: int, timings: dict):
    """Certificate for ``P`` with the on-disk memo keyed by the canonical map hash."""
    path = _cache_path(obj, oracle)
    if path is not None and path.exists():
        data = json.loads(path.read_text())
        checks = {k: planarity.CheckResult(v["planar"], v["witness"], v["kernel_computations"], 0.0)
                  for k, v in data["checkers"].items()}
        P.certificate = planarity.PlanarityCertificate(data["planar"], checks)
        timings["certify_cached"] = True
        return P.certificate
    t0 = time.perf_counter()
    # pairs use the projective-line test unless the oracle is requested
    bf = True if oracle else (False if isinstance(obj, BiprojPair) else None)
    cert = planarity.certify(P, bruteforce=bf, jobs=jobs)
    timings["certify"] = round(time.perf_counter() - t0, 4)
    timings.update({f"certify_{k}": v for k, v in cert.timings().items()})
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(serialize.canonical_dumps(cert.to_dict()))
    return cert


def _envelope(command: str, payload, timings: dict) -> dict:
    return {"schema": f"semifields.report/{serialize.SCHEMA_VERSION}", "command": command,
            "payload": payload, "timings": timings}


# subcommands -----------------------------------------------------------------------


def cmd_field_info(args, timings):
    ctx = make_field(args.p, args.m)
    tower = ctx.tower(args.k)
    try:
        pz = zsigmondy_prime(args.p, args.m)
    except NoPrimitiveDivisor:
        pz = None
    payload = {
        "p": ctx.p, "m": ctx.m, "order": ctx.order, "modulus": [int(c) for c in ctx.modulus],
        "generator": {"log": 1, "vec": ctx.digits[ctx.generator].tolist()},
        "tower": {name: {"degree": sub.degree, "generator": serialize.element_to_json(ctx, sub.generator)}
                  for name, sub in sorted(tower.items())},
        "zsigmondy_prime": pz,
    }
    return payload, EXIT_OK


FAMILY_ALIASES = {"S": "S", "dickson": "D", "albert": "A", "zp": "ZP", "bh": "BH", "zkw": "ZKW",
                  "b3": "B3", "b4": "B4", "cmdy": "CM/DY", "cg": "CG", "g": "G", "field": "F"}


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing parameters: " + ", ".join("--" + n for n in missing))


def build_family(args):
    fam = args.family
    if fam == "S":
        _need(args, "p", "m", "k")
        ctx = make_field(args.p, args.m)
        return families.family_s(p=args.p, m=args.m, k=args.k, B=_elem(ctx, args.B), a=_elem(ctx, args.a))
    if fam == "dickson":
        _need(args, "p", "m", "k")
        return families.dickson(args.p, args.m, args.k, _elem(make_field(args.p, args.m), args.a))
    if fam == "albert":
        _need(args, "p", "n", "k")
        form = args.form
        if form == "biproj" or (form is None and args.n % 2 == 0):
            a = _elem(make_field(args.p, args.n // 2), args.a)
            return families.albert(args.p, args.n, args.k, a, form="biproj")
        return families.albert(args.p, args.n, args.k, form="univariate")
    if fam == "zp":
        _need(args, "p", "m", "k", "j")
        return families.zhou_pott(args.p, args.m, args.k, args.j, _elem(make_field(args.p, args.m), args.a))
    if fam == "bh":
        _need(args, "p", "m", "k")
        return families.bh(args.p, args.m, args.k, _elem(make_field(args.p, args.m), args.a))
    if fam in ("zkw", "b3", "b4"):
        _need(args, "p", "s", "t")
        top = 4 if fam == "b4" else 3
        ctor = {"zkw": families.zkw, "b3": families.b3, "b4": families.b4}[fam]
        return ctor(args.p, args.s, args.t, _elem(make_field(args.p, top * args.s), args.a))
    if fam == "cmdy":
        _need(args, "m")
        return families.cm_dy(args.m, args.sign, literal=args.literal)
    if fam == "cg":
        _need(args, "m")
        return families.cg(args.m)
    if fam == "g":
        _need(args, "m")
        return families.ganley(args.m, _elem(make_field(3, args.m), args.a))
    if fam == "field":
        _need(args, "p", "n")
        return families.field_square(args.p, args.n)
    raise UsageError(f"unknown family {fam}")


def cmd_construct(args, timings):
    src, _ = build_family(args)
    return serialize.map_to_json(src), EXIT_OK


def _spot_checks(obj, P, count: int, seed: int) -> dict:
    """Compare the stored tensor with direct differencing on random pairs."""
    rng = random.Random(seed)
    n, p = P.n, P.p
    X = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(count)], dtype=np.int64)
    Y = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(count)], dtype=np.int64)
    ok = bool(np.array_equal(P.mult(X, Y), polar_value(obj, X, Y))) if count else True
    return {"count": count, "seed": seed, "agree": ok}


def cmd_verify(args, timings):
    obj = _load_map(args.input)
    P = polarize(obj)
    cert = _certify(obj, P, args.oracle, args.jobs, timings)
    payload = {"map_hash": serialize.map_hash(obj), "family": obj.family,
               "certificate": _cert_payload(cert, obj.ctx)}
    if args.spot_checks:
        payload["spot_checks"] = _spot_checks(obj, P, args.spot_checks, args.seed)
    ok = cert.planar and payload.get("spot_checks", {"agree": True})["agree"]
    return payload, EXIT_OK if ok else EXIT_FAIL


def _certified(args, timings):
    obj = _load_map(args.input)
    P = polarize(obj)
    cert = _certify(obj, P, False, args.jobs, timings)
    return obj, P, cert


def cmd_nuclei(args, timings):
    obj, P, cert = _certified(args, timings)
    if not cert.planar:
        return {"planar": False, "certificate": _cert_payload(cert, obj.ctx)}, EXIT_FAIL
    t0 = time.perf_counter()
    rep = structure.nuclei_of(P)
    timings["nuclei"] = round(time.perf_counter() - t0, 4)
    payload = rep.to_dict()
    return payload, EXIT_FAIL if rep.match is False else EXIT_OK


def cmd_centralizer(args, timings):
    obj, P, cert = _certified(args, timings)
    if obj.family != "S":
        raise UsageError("centralizer enumeration applies to Family S maps only")
    if not cert.planar:
        return {"planar": False, "certificate": _cert_payload(cert, obj.ctx)}, EXIT_FAIL
    t0 = time.perf_counter()
    rep = structure.centralizer_enumerate(P, audit=args.audit)
    timings["centralizer"] = round(time.perf_counter() - t0, 4)
    ok = rep.match and rep.condition_c and rep.identity_found and rep.torus_sylow_found \
        and rep.audited is not False
    return rep.to_dict(), EXIT_OK if ok else EXIT_FAIL


def cmd_orbit(args, timings):
    ctx = make_field(args.p, args.m)
    t0 = time.perf_counter()
    rep = isotopy.orbit_of_a(args.p, args.m, args.k, _elem(ctx, args.B), _elem(ctx, args.a))
    timings["orbit"] = round(time.perf_counter() - t0, 4)
    return rep.to_dict(matrices=True), EXIT_OK if rep.pairing_ok else EXIT_FAIL


def cmd_classify(args, timings):
    if args.family != "S":
        raise UsageError("class census is implemented for Family S")
    ctx = make_field(args.p, args.m)
    t0 = time.perf_counter()
    census = isotopy.count_classes_family_s(args.p, args.m, _elem(ctx, args.B))
    timings["classify"] = round(time.perf_counter() - t0, 4)
    if args.csv:
        _write_census_csv(census, args.csv)
    ok = census.within_bounds and all(census.condition_c.values())
    return census.to_dict(matrices=not args.no_matrices), EXIT_OK if ok else EXIT_FAIL


def census_csv(census) -> str:
    ctx = make_field(census.p, census.m)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "a_log", "class_size", "Nl", "Nm", "Nr", "centralizer_size"])
    for c in census.classes:
        k, a = c["rep"]
        w.writerow([k, serialize.element_to_json(ctx, a), len(c["members"]), *c["nuclei"], c["centralizer"]])
    return buf.getvalue()


def _write_census_csv(census, path):
    Path(path).write_text(census_csv(census))


def cmd_compare(args, timings):
    objs = [_load_map(args.a), _load_map(args.b)]
    Ps = [polarize(o) for o in objs]
    for o, P in zip(objs, Ps):
        _certify(o, P, False, args.jobs, timings)
        if not P.certificate.planar:
            raise UsageError("both inputs must be planar")
    t0 = time.perf_counter()
    v = isotopy.compare(*Ps)
    timings["compare"] = round(time.perf_counter() - t0, 4)
    return v.to_dict(matrices=True), EXIT_OK


TABLE1_FIELDS = ["family", "params", "valid", "violations", "planar", "Nl", "Nm", "Nr",
                 "predicted", "match", "count", "count_bounds"]


def _table1_candidates(p: int, m: int):
    """First valid parameter choice per row (or the first attempted, with its violations)."""
    n = 2 * m

    def first(builder, options):
        err = None
        for opt in options:
            try:
                return opt, builder(*opt), None
            except FamilyConditionError as exc:
                err = err or (opt, exc)
        return (err[0] if err else None), None, (err[1] if err else None)

    yield "F", first(lambda: families.field_square(p, n), [()])
    yield "A", first(lambda k: families.albert(p, n, k, form="biproj"), [(k,) for k in range(1, n)])
    yield "D", first(lambda k: families.dickson(p, m, k), [(k,) for k in range(1, m)])
    yield "ZP", first(lambda k, j: families.zhou_pott(p, m, k, j),
                      [(k, j) for k in range(1, m) for j in range(1, m)])
    yield "BH", first(lambda k: families.bh(p, m, k), [(k,) for k in range(1, m)])
    yield "S", first(lambda k: families.family_s(p=p, m=m, k=k), [(k,) for k in range(1, m)])


def cmd_table1(args, timings):
    rows = []
    for fam, (opt, built, err) in _table1_candidates(args.p, args.m):
        row = dict.fromkeys(TABLE1_FIELDS, "")
        row["family"] = fam
        row["params"] = " ".join(str(x) for x in (opt or ()))
        if built is None:
            row["valid"] = False
            row["violations"] = "; ".join(err.violations) if err else "no admissible parameters"
            if fam == "S":
                row["count"] = 0
            rows.append(row)
            continue
        src, P = built
        row["valid"] = True
        cert = planarity.certify(P, bruteforce=None if not isinstance(src, BiprojPair) else False)
        row["planar"] = cert.planar
        if cert.planar:
            rep = structure.nuclei_of(P)
            row["Nl"], row["Nm"], row["Nr"] = rep.orders
            row["predicted"] = " ".join(map(str, rep.prediction or ()))
            row["match"] = rep.match
        if fam == "S":
            lo, hi = families.family_s_count_bounds(args.p, 2 * args.m)
            row["count_bounds"] = f"{lo:.4f}..{hi}"
            if args.p ** (args.m // 2) <= args.count_cap:
                row["count"] = isotopy.count_classes_family_s(args.p, args.m).count
        rows.append(row)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=TABLE1_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    ok = all(r["match"] is not False and r["planar"] is not False for r in rows)
    return buf.getvalue(), EXIT_OK if ok else EXIT_FAIL


# argument parsing ------------------------------------------------------------------


def _family_args(sp):
    for name in ("p", "m", "k", "n", "j", "s", "t"):
        sp.add_argument(f"--{name}", type=int)
    sp.add_argument("--B", help="discrete log of B, or 'zero'")
    sp.add_argument("--a", help="discrete log of a, or 'zero'")
    sp.add_argument("--sign", type=int, default=1, choices=(1, -1))
    sp.add_argument("--form", choices=("biproj", "univariate"))
    sp.add_argument("--literal", action="store_true", help="CM/DY with the -X linear term")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="semifields", description="Commutative pre-semifields of odd order.")
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker cap")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks only")
    ap.add_argument("--no-timings", action="store_true", help="omit the timings field")
    ap.add_argument("--pretty", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("field-info")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", type=int)

    sp = sub.add_parser("construct")
    sp.add_argument("--family", required=True, choices=sorted(FAMILY_ALIASES))
    _family_args(sp)

    sp = sub.add_parser("verify")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--oracle", action="store_true", help="force the brute-force certifier")
    sp.add_argument("--spot-checks", type=int, default=0)

    for name in ("nuclei", "centralizer"):
        sp = sub.add_parser(name)
        sp.add_argument("--in", dest="input", required=True)
        if name == "centralizer":
            sp.add_argument("--audit", action="store_true")

    sp = sub.add_parser("orbit")
    for name in ("p", "m", "k"):
        sp.add_argument(f"--{name}", type=int, required=True)
    sp.add_argument("--B")
    sp.add_argument("--a")

    sp = sub.add_parser("classify")
    sp.add_argument("--family", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--B")
    sp.add_argument("--csv", help="also write the per-class CSV summary here")
    sp.add_argument("--no-matrices", action="store_true")

    sp = sub.add_parser("compare")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)

    sp = sub.add_parser("table1")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--count-cap", type=int, default=100)
    return ap


COMMANDS = {"field-info": cmd_field_info, "construct": cmd_construct, "verify": cmd_verify,
            "nuclei": cmd_nuclei, "centralizer": cmd_centralizer, "orbit": cmd_orbit,
            "classify": cmd_classify, "compare": cmd_compare, "table1": cmd_table1}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    timings: dict = {}
    t0 = time.perf_counter()
    try:
        payload, code = COMMANDS[args.command](args, timings)
    except (UsageError, FamilyConditionError, FieldError, MapError, StructureError, NoPrimitiveDivisor,
            serialize.SerializationError) as exc:
        print(f"semifields: error: {exc}", file=sys.stderr)
        out.write(serialize.canonical_dumps({"error": str(exc), "type": type(exc).__name__}) + "\n")
        return EXIT_USAGE
    except Exception as exc:  # jsonschema errors on input land here too
        if type(exc).__name__ == "ValidationError":
            print(f"semifields: error: invalid input JSON: {exc.message}", file=sys.stderr)
            return EXIT_USAGE
        raise
    timings["total"] = round(time.perf_counter() - t0, 4)
    if isinstance(payload, str):
        out.write(payload)
        return code
    report = _envelope(args.command, payload, {} if args.no_timings else timings)
    serialize.validate(report, "report")
    text = serialize.pretty_dumps(report) if args.pretty else serialize.canonical_dumps(report)
    out.write(text + "\n")
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))
