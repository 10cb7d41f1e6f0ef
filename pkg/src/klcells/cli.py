"""Command-line front end: a thin client of the computation service.

By default the CLI talks to an in-process instance of the FastAPI app, so
no server is needed; ``--server URL`` points it at a remote instance
instead.  Output is byte-deterministic for a fixed request: JSON payloads
are dumped with sorted keys, tables are built from sorted rows, and
nothing is randomised or timestamped.

Exit codes: 0 on success (all checks pass), 1 when a check subcommand
reports a violation, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

USAGE_ERROR = 2
CHECK_FAILED = 1


class ServiceClient:
    """Minimal POST client, in-process by default."""

    def __init__(self, server: str | None = None):
        if server:
            import httpx

            self._client = httpx.Client(base_url=server)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

                from .service.app import app

                self._client = TestClient(app)

    def post(self, path: str, payload: dict) -> tuple[int, Any]:
        resp = self._client.post(path, json=payload)
        try:
            body = resp.json()
        except ValueError:
            body = {"detail": resp.text}
        return resp.status_code, body

    def get(self, path: str) -> tuple[int, Any]:
        resp = self._client.get(path)
        return resp.status_code, resp.json()


def _emit(data: Any, fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    elif fmt == "dot":
        dot = _find_dot(data)
        if dot is None:
            raise SystemExit("no DOT payload available for this command")
        text = dot + "\n"
    else:  # table
        lines: list[str] = []
        _tabulate(data, lines, prefix="")
        text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _find_dot(data: Any) -> str | None:
    if isinstance(data, dict):
        if isinstance(data.get("dot"), str):
            return data["dot"]
        for value in data.values():
            found = _find_dot(value)
            if found:
                return found
    return None


def _tabulate(data: Any, lines: list[str], prefix: str) -> None:
    if isinstance(data, dict):
        for key in sorted(data):
            value = data[key]
            if isinstance(value, (dict, list)):
                lines.append(f"{prefix}{key}:")
                _tabulate(value, lines, prefix + "  ")
            else:
                lines.append(f"{prefix}{key}: {value}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, (dict, list)):
                _tabulate(item, lines, prefix + "  ")
                lines.append(prefix + "-")
            else:
                lines.append(f"{prefix}{item}")
    else:
        lines.append(f"{prefix}{data}")


def _run(client: ServiceClient, path: str, payload: dict, args) -> int:
    status, body = client.post(path, payload)
    if status >= 500:
        sys.stderr.write(json.dumps(body, sort_keys=True) + "\n")
        return CHECK_FAILED
    if status >= 400:
        sys.stderr.write(json.dumps(body, sort_keys=True) + "\n")
        return USAGE_ERROR
    passed = body.get("passed", True) if isinstance(body, dict) else True
    _emit(body, args.format, args.output)
    return 0 if passed else CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", default=None,
                        help="URL of a running service; default is in-process")
    common.add_argument("--format", choices=("json", "table", "dot"),
                        default="json")
    common.add_argument("--output", default=None, help="write output to a file")

    parser = argparse.ArgumentParser(
        prog="klcells",
        description="canonical bases, cells, tilting Homs, tensor-ideal lattices",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def system_flags(p, affine_default=False):
        p.add_argument("--type", required=True,
                       help="A1, A2, B2, G2 or A3")
        p.add_argument("--affine", action="store_true", default=affine_default)

    p = sub.add_parser("kl", parents=[common], help="canonical basis table over a ball")
    system_flags(p)
    p.add_argument("--max-length", type=int, default=6)
    p.add_argument("--x", default=None, help="single element, e.g. 0-1-0")
    p.add_argument("--cache-dir", default=None)

    p = sub.add_parser("asph", parents=[common], help="antispherical/spherical canonical basis")
    system_flags(p, affine_default=False)
    p.add_argument("--max-length", type=int, default=6)
    p.add_argument("--spherical", action="store_true")
    p.add_argument("--cross-validate", action="store_true")
    p.add_argument("--bound-check", action="store_true")

    p = sub.add_parser("bound", parents=[common], help="degree-bound report on a coset ball")
    system_flags(p)
    p.add_argument("--max-length", type=int, default=10)

    p = sub.add_parser("cells", parents=[common], help="cell partition (and orbit diagnostic)")
    system_flags(p)
    p.add_argument("--side", choices=("left", "right", "twosided"),
                   default="twosided")
    p.add_argument("--max-length", type=int, default=0)
    p.add_argument("--diagnostic", action="store_true")

    p = sub.add_parser("duflo", parents=[common], help="distinguished elements of a finite type")
    p.add_argument("--type", required=True)

    p = sub.add_parser("checkp", parents=[common], help="decategorified P-property suite")
    p.add_argument("--type", required=True)

    tilt = sub.add_parser("tilt", parents=[common], help="graded Hom data of tilting objects")
    tsub = tilt.add_subparsers(dest="tilt_command", required=True)

    p = tsub.add_parser("hom", parents=[common], help="graded Hom polynomial of a pair")
    p.add_argument("--type", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = tsub.add_parser("census", parents=[common], help="unit-Hom census of a coset ball")
    p.add_argument("--type", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--max-length", type=int, required=True)

    p = tsub.add_parser("nilpotence", parents=[common], help="radical degree bound on a ball")
    p.add_argument("--type", required=True)
    p.add_argument("--max-length", type=int, required=True)

    p = sub.add_parser("lattice-a2", parents=[common], help="the six-ideal lattice of type A2")
    p.add_argument("--ell", type=int, default=None)

    p = sub.add_parser("b2-family", parents=[common], help="pairwise certificates for the B2 family")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--i-min", type=int, default=3)
    p.add_argument("--i-max", type=int, default=4)

    p = sub.add_parser("orbits", parents=[common], help="nilpotent-orbit poset and its ideals")
    p.add_argument("--algebra", required=True,
                   help="sl2, sl3, ..., so5 or g2")

    cyc = sub.add_parser("cyclic", parents=[common], help="cyclic p-group tensor combinatorics")
    csub = cyc.add_subparsers(dest="cyclic_command", required=True)

    p = csub.add_parser("decompose", parents=[common], help="tensor decomposition table")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--fgl", default="multiplicative")
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--b", type=int, default=None)

    p = csub.add_parser("classify", parents=[common], help="ideal chain, object map, primes")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--fgl", default="multiplicative")

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _fgl_arg(text: str):
    """A builtin law name, or a JSON object {"i,j": coeff, ...}."""
    if text in ("multiplicative", "additive"):
        return text
    try:
        raw = json.loads(text)
    except json.JSONDecodeError:
        sys.stderr.write("--fgl expects a builtin name or a JSON object\n")
        raise SystemExit(USAGE_ERROR)
    if not isinstance(raw, dict):
        sys.stderr.write("--fgl expects a builtin name or a JSON object\n")
        raise SystemExit(USAGE_ERROR)
    return raw  # string "i,j" keys pass through the wire unchanged


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    client = ServiceClient(args.server)

    if args.command == "kl":
        payload = {"type": args.type, "affine": args.affine,
                   "max_length": args.max_length, "x": args.x,
                   "cache_dir": args.cache_dir}
        return _run(client, "/kl", payload, args)
    if args.command == "asph":
        if not args.affine:
            sys.stderr.write("asph requires --affine\n")
            return USAGE_ERROR
        payload = {"type": args.type, "max_length": args.max_length,
                   "spherical": args.spherical,
                   "cross_validate": args.cross_validate,
                   "bound_check": args.bound_check}
        status, body = client.post("/asph", payload)
        if status >= 400:
            sys.stderr.write(json.dumps(body, sort_keys=True) + "\n")
            return USAGE_ERROR
        _emit(body, args.format, args.output)
        if args.bound_check and body.get("bound_report", {}).get("violations"):
            return CHECK_FAILED
        return 0
    if args.command == "bound":
        return _run(client, "/bound",
                    {"type": args.type, "max_length": args.max_length}, args)
    if args.command == "cells":
        payload = {"type": args.type, "affine": args.affine, "side": args.side,
                   "max_length": args.max_length, "diagnostic": args.diagnostic}
        return _run(client, "/cells", payload, args)
    if args.command == "duflo":
        return _run(client, "/duflo", {"type": args.type}, args)
    if args.command == "checkp":
        return _run(client, "/check-p", {"type": args.type}, args)
    if args.command == "tilt":
        if args.tilt_command == "hom":
            return _run(client, "/tilt/hom",
                        {"type": args.type, "ell": args.ell,
                         "x": args.x, "y": args.y}, args)
        if args.tilt_command == "census":
            return _run(client, "/tilt/census",
                        {"type": args.type, "ell": args.ell,
                         "max_length": args.max_length}, args)
        return _run(client, "/tilt/nilpotence",
                    {"type": args.type, "max_length": args.max_length}, args)
    if args.command == "lattice-a2":
        return _run(client, "/lattice/a2", {"ell": args.ell}, args)
    if args.command == "b2-family":
        return _run(client, "/b2/family",
                    {"ell": args.ell, "i_min": args.i_min,
                     "i_max": args.i_max}, args)
    if args.command == "orbits":
        return _run(client, "/orbits", {"algebra": args.algebra}, args)
    if args.command == "cyclic":
        if args.cyclic_command == "decompose":
            payload = {"p": args.p, "n": args.n, "fgl": _fgl_arg(args.fgl),
                       "a": args.a, "b": args.b}
            return _run(client, "/cyclic/decompose", payload, args)
        payload = {"p": args.p, "n": args.n, "fgl": _fgl_arg(args.fgl)}
        return _run(client, "/cyclic/classify", payload, args)
    raise SystemExit(USAGE_ERROR)


if __name__ == "__main__":
    sys.exit(main())
