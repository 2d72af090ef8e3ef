"""Command-line front end: a thin client over the service layer.

Subcommands map one-to-one onto the HTTP endpoints.  By default the request
is dispatched in-process through the same handler the endpoint uses; with
``--server URL`` it is POSTed to a running service instead.

Exit codes: 0 all checks passed, 1 assertion failure, 2 usage/config error.
The environment variable CONTRACTION_CALC_SEED overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from pydantic import ValidationError

from . import schemas, service

ENDPOINTS = {
    "lipschitz-sweep": (schemas.LipschitzSweepRequest, service.run_lipschitz_sweep),
    "besov-sweep": (schemas.BesovSweepRequest, service.run_besov_sweep),
    "verify-identities": (schemas.IdentitySweepRequest, service.run_identity_sweep),
    "derivative-check": (schemas.DerivativeCheckRequest, service.run_derivative_check),
    "counterexample": (schemas.CounterexampleRequest, service.run_counterexample),
    "blowup-table": (schemas.BlowupTableRequest, service.run_blowup_table),
    "besov-norm": (schemas.BesovNormRequest, service.run_besov_norm),
}

CSV_HEADER = ["seed", "m", "dim", "p", "lhs", "rhs", "ratio"]


def _parse_p(token: str):
    return "inf" if token == "inf" else float(token)


def _parse_list(token: str) -> list:
    return [t.strip() for t in token.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--output", help="write the report to this file instead of stdout")
    common.add_argument("--deterministic", action="store_true",
                        help="suppress the timestamp field for byte-identical reports")
    common.add_argument("--jobs", type=int, default=None,
                        help="worker threads for trial sweeps (default: serial)")
    common.add_argument("--server", help="POST the request to a running service at this URL")

    parser = argparse.ArgumentParser(
        prog="paircalc",
        description="Verification harnesses for functions of pairs of "
                    "noncommuting contractions.",
    )
    sub = parser.add_subparsers(dest="command")

    def add(name, help_text):
        return sub.add_parser(name, help=help_text, parents=[common])

    p = add("lipschitz-sweep", "random sweep of the 2m||f||_inf Lipschitz bound, p in [1,2]")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--p", type=_parse_p, default=2.0)
    p.add_argument("--seed", type=int, default=0)

    p = add("besov-sweep", "measure the empirical Besov-norm Lipschitz constant")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--p", type=_parse_p, default=2.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m-values", type=_parse_list, default=[2, 4, 8, 16])

    p = add("verify-identities", "finite-sum difference formulas vs direct differences")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)

    p = add("derivative-check", "finite-difference convergence of the path derivative")
    p.add_argument("--paths", type=int, default=20)
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)

    p = add("counterexample", "check the p > 2 blow-up instance at one (m, p)")
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--p", type=_parse_p, default="inf")

    p = add("blowup-table", "Besov-normalized blow-up ratios across m for p > 2")
    p.add_argument("--m-list", type=_parse_list, default=[4, 8, 16, 32])
    p.add_argument("--p-list", type=_parse_list, default=["inf", 4.0])

    p = add("besov-norm", "Besov norm and projective bound of a polynomial JSON file")
    p.add_argument("--input", required=True, help="path to a BiPoly JSON file")

    return parser


def _request_payload(args) -> dict:
    cmd = args.command
    seed_override = os.environ.get("CONTRACTION_CALC_SEED")
    seed = int(seed_override) if seed_override is not None else getattr(args, "seed", 0)
    if cmd == "lipschitz-sweep":
        return {"trials": args.trials, "dim": args.dim, "m": args.m,
                "p": args.p, "seed": seed, "jobs": args.jobs}
    if cmd == "besov-sweep":
        return {"trials": args.trials, "dim": args.dim, "p": args.p, "seed": seed,
                "m_values": [int(v) for v in args.m_values], "jobs": args.jobs}
    if cmd == "verify-identities":
        return {"trials": args.trials, "dim": args.dim, "m": args.m,
                "seed": seed, "tol": args.tol, "jobs": args.jobs}
    if cmd == "derivative-check":
        return {"paths": args.paths, "dim": args.dim, "m": args.m,
                "seed": seed, "jobs": args.jobs}
    if cmd == "counterexample":
        return {"m": args.m, "p": args.p}
    if cmd == "blowup-table":
        return {"m_list": [int(v) for v in args.m_list],
                "p_list": [_parse_p(str(v)) for v in args.p_list]}
    if cmd == "besov-norm":
        with open(args.input) as fh:
            return {"poly": json.load(fh)}
    raise AssertionError(f"unhandled command {cmd!r}")


def _dispatch(command: str, payload: dict, server: str | None) -> dict:
    model_cls, handler = ENDPOINTS[command]
    request = model_cls(**payload)
    if server:
        import httpx

        resp = httpx.post(f"{server.rstrip('/')}/{command}",
                          json=json.loads(request.model_dump_json()), timeout=600.0)
        resp.raise_for_status()
        return resp.json()
    return json.loads(handler(request).model_dump_json())


def _report_passed(command: str, report: dict) -> bool:
    if command == "besov-norm":
        return True  # pure computation, nothing to assert
    if "summary" in report:
        return bool(report["summary"]["passed"])
    return bool(report.get("passed", False))


def _to_csv(command: str, report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    if command == "besov-norm":
        writer.writerow(["n", "sup_norm"])
        for block in report["blocks"]:
            writer.writerow([block["n"], block["sup_norm"]])
        return buf.getvalue()
    writer.writerow(CSV_HEADER)
    if command == "counterexample":
        rows = [report["record"]]
    elif command == "blowup-table":
        rows = report["rows"]
    else:
        rows = report["trials"]
    for r in rows:
        writer.writerow([r["seed"], r["m"], r["dim"], r["p"],
                         r["lhs"], r["rhs"], r["ratio"]])
    return buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2

    try:
        payload = _request_payload(args)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        report = _dispatch(args.command, payload, args.server)
    except ValidationError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 2

    envelope = {"command": args.command, "report": report}
    if not args.deterministic:
        envelope["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())

    if args.format == "csv":
        text = _to_csv(args.command, report)
    else:
        text = json.dumps(envelope, indent=2) + "\n"

    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    return 0 if _report_passed(args.command, report) else 1


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
