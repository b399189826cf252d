"""Command-line front end.

The CLI is a thin client of the HTTP service: by default it talks to an
in-process instance over an ASGI transport (no network, deterministic); set
--server or ASSOC_SERVER_URL to target a running instance instead.

Exit codes: 0 success, 2 usage/parse error, 3 mathematical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MATH = 3
ENV_SERVER_URL = "ASSOC_SERVER_URL"


class ServiceClient:
    """POST/GET against either an in-process app or a remote base URL."""

    def __init__(self, server_url: str | None = None):
        if server_url:
            import httpx

            self._client = httpx.Client(base_url=server_url, timeout=300.0)
        else:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import create_app

            self._client = TestClient(create_app())

    def post(self, path: str, payload: dict):
        return self._client.post(path, json=payload)

    def get(self, path: str):
        return self._client.get(path)


def _finish(resp, as_json: bool, render_text) -> int:
    """Map an HTTP response to output + exit code."""
    try:
        body = resp.json()
    except ValueError:
        body = {"detail": resp.text}
    if resp.status_code >= 500:
        print(f"error: {body}", file=sys.stderr)
        return EXIT_MATH
    if resp.status_code == 409:
        detail = body.get("detail", "mathematical failure")
        print(f"error: {detail}", file=sys.stderr)
        for item in body.get("unreduced", []):
            print(f"unreduced: {item}", file=sys.stderr)
        return EXIT_MATH
    if resp.status_code >= 400:
        detail = body.get("detail", body)
        print(f"error: {detail}", file=sys.stderr)
        return EXIT_USAGE
    if as_json:
        print(json.dumps(body, ensure_ascii=False, sort_keys=True))
    else:
        render_text(body)
    return EXIT_OK


def _add_json_flag(p: argparse.ArgumentParser):
    p.add_argument("--json", action="store_true", help="print the raw JSON response")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mzvassoc",
        description="Exact multiple zeta values and Drinfeld associator coefficients")
    parser.add_argument("--server", default=os.environ.get(ENV_SERVER_URL),
                        help="base URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="group", required=True)

    mzv = sub.add_parser("mzv", help="multiple-zeta-value engine")
    mzv_sub = mzv.add_subparsers(dest="command", required=True)
    p = mzv_sub.add_parser("reduce", help="reduce an admissible composition to the basis")
    p.add_argument("composition", help='e.g. "4,2"')
    _add_json_flag(p)
    p = mzv_sub.add_parser("shuffle", help="shuffle product of two words")
    p.add_argument("u")
    p.add_argument("v")
    _add_json_flag(p)
    p = mzv_sub.add_parser("stuffle", help="stuffle product of two compositions")
    p.add_argument("u")
    p.add_argument("v")
    _add_json_flag(p)
    p = mzv_sub.add_parser("check-table", help="numerically verify the reduction table")
    p.add_argument("--max-weight", type=int, default=None)
    p.add_argument("--tolerance", type=float, default=1e-6)
    _add_json_flag(p)

    assoc = sub.add_parser("assoc", help="associator coefficients")
    assoc_sub = assoc.add_subparsers(dest="command", required=True)
    p = assoc_sub.add_parser("coeff", help="one coefficient")
    p.add_argument("--which", required=True,
                   choices=["kz", "akz", "psi", "half_psi", "half", "at"])
    p.add_argument("--word", required=True)
    p.add_argument("--style", choices=["two_pi_i", "pi_power"], default=None)
    _add_json_flag(p)
    p = assoc_sub.add_parser("table", help="all degree-<=2 coefficients up to a length")
    p.add_argument("--which", required=True,
                   choices=["kz", "akz", "psi", "half_psi", "half", "at"])
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--style", choices=["two_pi_i", "pi_power"], default=None)
    _add_json_flag(p)
    p = assoc_sub.add_parser("verify-theorems",
                             help="recompute both theorem values and the invariant suite")
    _add_json_flag(p)

    at = sub.add_parser("at", help="path-exponential associator pipeline")
    at_sub = at.add_subparsers(dest="command", required=True)
    p = at_sub.add_parser("solve", help="solve the c_(alpha,beta) system exactly")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--extended", action="store_true",
                   help="allow n=4,5 (builds the weight-9/11 tables)")
    _add_json_flag(p)
    p = at_sub.add_parser("integrals", help="exact moment integrals")
    p.add_argument("--n", type=int, required=True)
    _add_json_flag(p)

    serve = sub.add_parser("serve", help="run the HTTP service with uvicorn")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.group == "serve":
        import uvicorn

        from .service import app
        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK

    client = ServiceClient(args.server)

    if args.group == "mzv":
        if args.command == "reduce":
            return _finish(client.post("/mzv/reduce", {"composition": args.composition}),
                           args.json, lambda b: print(b["rendered"]))
        if args.command == "shuffle":
            return _finish(client.post("/mzv/shuffle", {"u": args.u, "v": args.v}),
                           args.json, lambda b: print(b["rendered"]))
        if args.command == "stuffle":
            return _finish(client.post("/mzv/stuffle", {"u": args.u, "v": args.v}),
                           args.json, lambda b: print(b["rendered"]))
        if args.command == "check-table":
            payload = {"tolerance": args.tolerance}
            if args.max_weight is not None:
                payload["max_weight"] = args.max_weight

            def render(b):
                print(f"entries: {b['entries']}")
                print(f"max deviation: {b['max_abs_deviation']:.3e}")
                print(f"tolerance: {b['tolerance']:.3e}")
                print("OK" if b["ok"] else "FAILED")

            return _finish(client.post("/mzv/check-table", payload), args.json, render)

    if args.group == "assoc":
        if args.command == "coeff":
            payload = {"which": args.which, "word": args.word}
            if args.style:
                payload["style"] = args.style
            return _finish(client.post("/assoc/coeff", payload),
                           args.json, lambda b: print(b["rendered"]))
        if args.command == "table":
            payload = {"which": args.which, "max_len": args.max_len}
            if args.style:
                payload["style"] = args.style

            def render(b):
                for rec in b["records"]:
                    print(f"{rec['word']}: {rec['rendered']}")

            return _finish(client.post("/assoc/table", payload), args.json, render)
        if args.command == "verify-theorems":
            resp = client.post("/assoc/verify-theorems", {})

            def render(b):
                for check in b["checks"]:
                    status = "PASS" if check["passed"] else "FAIL"
                    print(f"{status} {check['name']} -- {check['detail']}")
                print("all checks passed" if b["passed"] else "SOME CHECKS FAILED")

            code = _finish(resp, args.json, render)
            if code == EXIT_OK and not resp.json().get("passed", False):
                return EXIT_MATH
            return code

    if args.group == "at":
        if args.command == "solve":
            payload = {"n": args.n, "extended": args.extended}

            def render(b):
                print(f"c_{2 * b['n']} = {b['c2n_rendered']}")
                for entry in b["cab"]:
                    print(f"c_({entry['alpha']},{entry['beta']}) = {entry['rendered']}")

            return _finish(client.post("/at/solve", payload), args.json, render)
        if args.command == "integrals":
            def render(b):
                for item in b["values"]:
                    print(f"{item['name']} = {item['value']}")

            return _finish(client.post("/at/integrals", {"n": args.n}), args.json, render)

    raise AssertionError("unhandled command")


if __name__ == "__main__":
    sys.exit(main())
