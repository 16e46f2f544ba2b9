"""`qie` command line: a thin client over the engine service.

Subcommands map one-to-one onto the service endpoints.  By default requests
run against an in-process instance of the app (no server needed); pass
--server URL to target a running deployment instead.  Output is deterministic
CSV or JSON with the effective configuration echoed in every file.

Exit codes: 0 success, 2 invalid configuration, 3 resource cap exceeded,
4 stalled engine where the requested quantity is undefined.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from typing import Any

import httpx

from . import emit
from .config import DEFAULTS, effective_config, parse_config_file, parse_value
from .errors import DomainError

EXIT_OK = 0
EXIT_INVALID_CONFIG = 2
EXIT_RESOURCE_CAP = 3
EXIT_STALLED = 4

_KIND_TO_EXIT = {
    "invalid_config": EXIT_INVALID_CONFIG,
    "resource_cap": EXIT_RESOURCE_CAP,
    "stalled": EXIT_STALLED,
}

_CYCLE_KEYS = ("levels", "omega_fb", "omega3", "omega4", "t_h", "sigma_h",
               "tau_h", "tau_fb", "coeffs", "merge_tol", "atom_cap")

REQUEST_KEYS = {
    "cycle": _CYCLE_KEYS,
    "distribution": _CYCLE_KEYS,
    "scaling": _CYCLE_KEYS + ("alpha", "gamma", "kappa_min", "kappa_max", "kappa_points"),
    "compare": ("levels", "omega_fb", "t_h", "coeffs",
                "t1_min", "t1_max", "t1_points", "t2_min", "t2_max", "t2_points",
                "eta_ratios"),
    "schemes": _CYCLE_KEYS,
}

COLUMNS = {
    "cycle": ("delta_S", "Q_h", "delta_U_h", "W_h", "W", "eta", "power",
              "sigma_w2_paper", "sigma_w2_derived", "sigma_w2_dist",
              "fano", "cov", "stalled"),
    "distribution": ("value", "weight"),
    "scaling": ("kappa", "eta", "power", "work_mean", "work_variance",
                "fano", "cov", "eta_limit", "power_limit", "fano_limit"),
    "compare": ("eta_ratio", "T1", "T2", "cov_ratio", "lower", "upper",
                "info_more_stable"),
    "schemes": ("scheme", "mean_du", "delta_E", "gap"),
}


def _add_option(parser: argparse.ArgumentParser, key: str, flag: str, help_text: str) -> None:
    parser.add_argument(flag, dest=key, metavar="X", default=None,
                        type=lambda text, k=key: parse_value(k, text), help=help_text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qie",
        description="finite-time quantum Carnot information engine analyses",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", default=None,
                        help="plain 'key = value' configuration file")
    common.add_argument("--server", metavar="URL", default=None,
                        help="target a running service instead of the in-process app")
    _add_option(common, "levels", "--levels", "polarization eigenvalues, e.g. 2,1")
    _add_option(common, "omega_fb", "--omega-fb", "feedback-branch frequency")
    _add_option(common, "omega3", "--omega3", "frequency after isentropic compression")
    _add_option(common, "omega4", "--omega4", "frequency after isothermal expansion")
    _add_option(common, "t_h", "--th", "hot bath temperature")
    _add_option(common, "sigma_h", "--sigma-h", "hot-isotherm dissipation coefficient")
    _add_option(common, "tau_h", "--tau-h", "isothermal branch duration")
    _add_option(common, "tau_fb", "--tau-fb", "measurement-and-feedback duration")
    _add_option(common, "alpha", "--alpha", "time-scaling exponent")
    _add_option(common, "gamma", "--gamma", "dissipation-scaling exponent")
    _add_option(common, "coeffs", "--coeffs", "variance coefficients: auto|paper|derived|a,b")
    _add_option(common, "merge_tol", "--merge-tol", "atom merge tolerance")
    _add_option(common, "atom_cap", "--atom-cap", "maximum enumerated atom count")
    _add_option(common, "format", "--format", "output format: csv|json")
    common.add_argument("--out", metavar="PATH", default=None, help="output file (default stdout)")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("cycle", parents=[common],
                   help="deterministic energetics and work-fluctuation scalars")
    sub.add_parser("distribution", parents=[common],
                   help="exact work-output atom table")
    scaling = sub.add_parser("scaling", parents=[common],
                             help="fast-thermalization kappa sweep")
    _add_option(scaling, "kappa_min", "--kappa-min", "smallest kappa")
    _add_option(scaling, "kappa_max", "--kappa-max", "largest kappa")
    _add_option(scaling, "kappa_points", "--kappa-points", "geometric grid size")
    compare = sub.add_parser("compare", parents=[common],
                             help="information vs heat engine COV-ratio grid")
    _add_option(compare, "t1_min", "--t1-min", "smallest T1")
    _add_option(compare, "t1_max", "--t1-max", "largest T1")
    _add_option(compare, "t1_points", "--t1-points", "T1 grid size")
    _add_option(compare, "t2_min", "--t2-min", "smallest T2")
    _add_option(compare, "t2_max", "--t2-max", "largest T2")
    _add_option(compare, "t2_points", "--t2-points", "T2 grid size")
    _add_option(compare, "eta_ratios", "--eta-ratios", "eta_heat/eta_C values, e.g. 0.5,0.75,0.95")
    sub.add_parser("schemes", parents=[common],
                   help="EPM/TPM/DBN energy bookkeeping on the feedback branch")
    return parser


def _post(path: str, payload: dict, server: str | None) -> tuple[int, dict]:
    from .service.app import create_app

    async def go() -> tuple[int, dict]:
        if server is None:
            transport = httpx.ASGITransport(app=create_app())
            client = httpx.AsyncClient(transport=transport, base_url="http://qie.internal")
        else:
            client = httpx.AsyncClient(base_url=server, timeout=300.0)
        async with client:
            response = await client.post(path, json=payload)
            return response.status_code, response.json()

    return asyncio.run(go())


def _rows(command: str, records: list[dict]) -> list[list[Any]]:
    return [[record[column] for column in COLUMNS[command]] for record in records]


def _render(command: str, config: dict, body: dict, output_format: str) -> str:
    if output_format == "json":
        payload: dict[str, Any] = {"config": body["config"], "records": body["records"]}
        if command == "distribution":
            payload["mean"] = body["mean"]
            payload["variance"] = body["variance"]
        return emit.json_document(payload)
    trailing = []
    if command == "distribution":
        trailing = [f"mean = {emit.format_number(body['mean'])}",
                    f"variance = {emit.format_number(body['variance'])}"]
    return emit.csv_document(command, config, COLUMNS[command],
                             _rows(command, body["records"]), trailing)


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    flag_values = {key: getattr(args, key) for key in DEFAULTS if hasattr(args, key)}
    try:
        file_values = parse_config_file(args.config) if args.config else {}
        config = effective_config(file_values, flag_values)
    except (DomainError, OSError) as exc:
        print(f"qie: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID_CONFIG

    payload = {key: config[key] for key in REQUEST_KEYS[args.command]}
    try:
        status, body = _post(f"/{args.command}", payload, args.server)
    except httpx.HTTPError as exc:
        print(f"qie: request failed: {exc}", file=sys.stderr)
        return 1
    if status == 422:
        print(f"qie: invalid configuration: {body.get('detail')}", file=sys.stderr)
        return EXIT_INVALID_CONFIG
    if status != 200:
        detail = body.get("detail", {})
        kind = detail.get("kind", "invalid_config") if isinstance(detail, dict) else "invalid_config"
        message = detail.get("message", detail) if isinstance(detail, dict) else detail
        print(f"qie: {message}", file=sys.stderr)
        return _KIND_TO_EXIT.get(kind, 1)

    echo = {key: config[key] for key in REQUEST_KEYS[args.command]}
    _write(_render(args.command, echo, body, config["format"]), config["out"])
    return EXIT_OK


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
