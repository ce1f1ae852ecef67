"""Command-line interface: ``tilings enumerate | verify | search``.

Output is JSON lines, one object per entity, with a summary object last.
Exit codes: 0 success, 1 a check failed, 2 bad parameters, 3 resource bound.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import comb
from typing import Iterable, TextIO

from .cyclic_order import PartialCyclicOrder, chain_from_sequence, enumerate_extensions, union
from .dlx import ResourceBoundExceeded
from .gchamber import ChamberMatrix, ZeroMinor, construct_chamber_point, verify_point_in_chamber
from .hypersimplex import WSimplex, enumerate_D, eulerian_number
from .labels import label_from_json
from .parke_taylor import FAMILIES, verify_identity
from .subdivision import Subdivision, ValidationError, enumerate_bicolored, enumerate_tricolored, sigma_order, validate
from .tiling import CHECKS, Tiling, enumerate_tilings, is_tiling, max_n, run_checks

EXIT_OK, EXIT_FAIL, EXIT_PARAMS, EXIT_RESOURCE = 0, 1, 2, 3


class BadParams(ValueError):
    pass


def _emit(out: TextIO, obj) -> None:
    out.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _need(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise BadParams("missing " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _check_kn(k: int | None, n: int, tricolored: bool = False) -> None:
    if n < 3:
        raise BadParams("n must be at least 3")
    if n > max_n():
        raise ResourceBoundExceeded(f"n={n} exceeds TILER_MAX_N={max_n()}")
    if k is not None and not 0 <= k <= n - 2:
        raise BadParams("k must satisfy 0 <= k <= n-2")


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise BadParams(f"cannot read {path}: {exc}") from exc


def load_order(data: dict) -> PartialCyclicOrder:
    """Accept a cyclic order, a list of chains, or a subdivision."""
    if "polygons" not in data and "subdivision" in data:
        data = data["subdivision"]
    if "polygons" in data:
        sub = Subdivision.from_json(data)
        validate(sub)
        return sigma_order(sub)
    if "chains" in data:
        ground = [label_from_json(x) for x in data["ground"]]
        chains = [chain_from_sequence([label_from_json(x) for x in c], ground) for c in data["chains"]]
        return union(chains, ground)
    if "triples" in data:
        return PartialCyclicOrder.from_json(data)
    raise BadParams("order file needs 'triples', 'chains' or 'polygons'")


def load_tiling_file(data) -> tuple[list[Subdivision], int, int]:
    tiles = data["tiles"] if isinstance(data, dict) else data
    subs = [Subdivision.from_json(t) for t in tiles]
    if not subs:
        raise BadParams("empty tiling")
    k = data.get("k", subs[0].k) if isinstance(data, dict) else subs[0].k
    n = data.get("n", subs[0].n) if isinstance(data, dict) else subs[0].n
    return subs, k, n


def _parse_checks(spec: str | None) -> list[str]:
    if spec is None or spec == "all":
        return list(CHECKS)
    checks = [c.strip() for c in spec.split(",") if c.strip()]
    bad = [c for c in checks if c not in CHECKS]
    if bad:
        raise BadParams(f"unknown checks {bad}; choose from {list(CHECKS)} or 'all'")
    return checks


# ---------------------------------------------------------------- commands


def cmd_enumerate(args, out: TextIO) -> int:
    if args.kind == "subdivisions":
        _need(args, "n")
        _check_kn(args.k, args.n)
        if args.tricolored:
            subs = enumerate_tricolored(args.n, args.k)
        else:
            _need(args, "k")
            subs = enumerate_bicolored(args.k, args.n)
        for s in subs:
            _emit(out, s.to_json())
        _emit(out, {"summary": {"kind": "subdivisions", "k": args.k, "n": args.n, "count": len(subs)}})
        return EXIT_OK
    if args.kind == "wsimplices":
        _need(args, "k", "n")
        _check_kn(args.k, args.n)
        ws = enumerate_D(args.k, args.n)
        for s in ws:
            _emit(out, s.to_json())
        _emit(out, {"summary": {"kind": "wsimplices", "k": args.k, "n": args.n, "count": len(ws),
                                "eulerian": eulerian_number(args.k, args.n - 1)}})
        return EXIT_OK
    _need(args, "order_file")
    order = load_order(_load_json(args.order_file))
    if len(order.ground) > max_n():
        raise ResourceBoundExceeded(f"ground set of size {len(order.ground)} exceeds TILER_MAX_N={max_n()}")
    exts = enumerate_extensions(order)
    for t in exts:
        _emit(out, t.to_json())
    _emit(out, {"summary": {"kind": "extensions", "count": len(exts)}})
    return EXIT_OK


def _verify_tiling(args, out: TextIO) -> int:
    _need(args, "file")
    subs, k, n = load_tiling_file(_load_json(args.file))
    _check_kn(k, n)
    res = is_tiling(subs, k, n)
    if not isinstance(res, Tiling):
        report = {"kind": "tiling", "k": k, "n": n, "size": len(subs), "pass": False, **res.to_json()}
        _emit(out, report)
        return EXIT_FAIL
    checks = run_checks(res, _parse_checks(args.check), seed=args.seed, samples=args.samples)
    _emit(out, {"kind": "tiling", "k": k, "n": n, "size": len(res), "volume": res.volume(),
                "eulerian": eulerian_number(k, n - 1), "checks": checks, "pass": checks["pass"]})
    return EXIT_OK if checks["pass"] else EXIT_FAIL


def _identity_params(args) -> dict:
    fam = args.family
    if fam in ("tile_weight", "grey_vanishing"):
        _need(args, "file")
        data = _load_json(args.file)
        if "polygons" not in data and "subdivision" in data:
            data = data["subdivision"]
        sub = Subdivision.from_json(data)
        _check_kn(None, sub.n)
        return {"subdivision": sub}
    _need(args, "n")
    _check_kn(None, args.n)
    if fam == "u1":
        return {"n": args.n}
    if fam == "shuffle":
        _need(args, "u", "v")
        return {"n": args.n, "u": args.u, "v": args.v}
    if fam == "subset":
        _need(args, "subset")
        return {"n": args.n, "subset": args.subset}
    raise BadParams(f"unknown family {fam}")


def _verify_identities(args, out: TextIO) -> int:
    _need(args, "family")
    report = verify_identity(args.family, _identity_params(args), trials=args.trials, seed=args.seed)
    _emit(out, report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def _verify_chambers(args, out: TextIO) -> int:
    if args.file:
        data = _load_json(args.file)
        _need(args, "w")
        m = ChamberMatrix.from_json(data["matrix"] if isinstance(data, dict) else data)
        s = WSimplex.from_word(args.w)
        try:
            ok = verify_point_in_chamber(m, s)
            verdict = "inside" if ok else "outside"
        except ZeroMinor as exc:
            _emit(out, {"kind": "chambers", "w": list(s.w), "verdict": "indeterminate", "reason": str(exc),
                        "pass": False})
            return EXIT_FAIL
        _emit(out, {"kind": "chambers", "w": list(s.w), "verdict": verdict, "pass": ok})
        return EXIT_OK if ok else EXIT_FAIL
    _need(args, "n")
    _check_kn(args.k, args.n)
    ks = [args.k] if args.k is not None else range(args.n - 1)
    total = failed = 0
    for k in ks:
        for s in enumerate_D(k, args.n):
            m = construct_chamber_point(s)
            ok = verify_point_in_chamber(m, s)
            total += 1
            if not ok:
                failed += 1
                _emit(out, {"w": list(s.w), "matrix": m.to_json(), "pass": False})
    _emit(out, {"kind": "chambers", "n": args.n, "checked": total, "failed": failed, "pass": failed == 0})
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_verify(args, out: TextIO) -> int:
    return {"tiling": _verify_tiling, "identities": _verify_identities, "chambers": _verify_chambers}[args.kind](args, out)


def cmd_search(args, out: TextIO) -> int:
    _need(args, "k", "n")
    _check_kn(args.k, args.n)
    if args.limit is not None and args.limit < 1:
        raise BadParams("--limit must be positive")
    checks = _parse_checks(args.check) if args.check else []
    count = 0
    all_pass = True
    try:
        for t in enumerate_tilings(args.k, args.n, limit=args.limit, max_nodes=args.max_nodes):
            count += 1
            rec = t.to_json()
            rec["volume"] = t.volume()
            if checks:
                res = run_checks(t, checks, seed=args.seed, samples=args.samples)
                rec["checks"] = res
                all_pass = all_pass and res["pass"]
            _emit(out, rec)
    except ResourceBoundExceeded as exc:
        _emit(out, {"summary": {"k": args.k, "n": args.n, "count": count, "partial": True, "reason": str(exc)}})
        return EXIT_RESOURCE
    _emit(out, {"summary": {"k": args.k, "n": args.n, "count": count, "magic": comb(args.n - 2, args.k),
                            "eulerian": eulerian_number(args.k, args.n - 1), "partial": False,
                            "pass": all_pass}})
    return EXIT_OK if all_pass else EXIT_FAIL


# ---------------------------------------------------------------- parser


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()] if text.strip() else []
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tilings", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=["jsonl"], default="jsonl")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list subdivisions, w-simplices or circular extensions")
    p.add_argument("kind", choices=["subdivisions", "wsimplices", "extensions"])
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--tricolored", action="store_true", help="include grey polygons")
    p.add_argument("--order-file", dest="order_file")

    p = sub.add_parser("verify", help="check a tiling, an identity family or chamber points")
    p.add_argument("kind", choices=["tiling", "identities", "chambers"])
    p.add_argument("--file")
    p.add_argument("--check")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--u", type=_int_list)
    p.add_argument("--v", type=_int_list)
    p.add_argument("--subset", type=_int_list)
    p.add_argument("--w", type=_int_list)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--samples", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("search", help="find all positroid tilings by exact cover")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--limit", type=int)
    p.add_argument("--check")
    p.add_argument("--samples", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-nodes", dest="max_nodes", type=int)
    return parser


def main(argv: Iterable[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "enumerate":
            return cmd_enumerate(args, out)
        if args.command == "verify":
            return cmd_verify(args, out)
        return cmd_search(args, out)
    except ResourceBoundExceeded as exc:
        _emit(out, {"error": str(exc), "kind": "resource"})
        return EXIT_RESOURCE
    except (BadParams, ValidationError, ValueError, KeyError, TypeError) as exc:
        print(f"tilings: error: {exc}", file=sys.stderr)
        return EXIT_PARAMS


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
