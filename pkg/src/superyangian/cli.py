"""Command-line front end: a thin client over the computation service.

By default requests run against an in-process application instance, so
no server is needed for batch use; pass --server (or set SY_SERVER) to
talk to a running instance instead.  Exit status is zero exactly when
every executed check passed; all numeric output is exact.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from typing import Any, Dict


def _env(name: str, default=None):
    return os.environ.get(f"SY_{name}", default)


def _client(server: str | None):
    if server:
        import httpx
        return httpx.Client(base_url=server, timeout=None)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient
    from .service.app import create_app
    return TestClient(create_app())


def _post(args, path: str, payload: Dict[str, Any]) -> Dict[str, Any]:
    client = _client(args.server)
    response = client.post(path, json=payload)
    if response.status_code >= 400:
        detail = response.json().get("detail", response.text)
        print(f"error: {detail}", file=sys.stderr)
        raise SystemExit(2)
    return response.json()


def _emit(args, data: Dict[str, Any], plain: str) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(plain)


def _render_checks(data: Dict[str, Any]) -> str:
    lines = [f"suite {data['suite']} on {data['diagram']} "
             f"(cap {data['cap']}, len {data['length']})"]
    for c in data["checks"]:
        mark = {"pass": "ok  ", "fail": "FAIL", "skip": "skip"}[c["status"]]
        detail = f"  {c['detail']}" if c.get("detail") else ""
        lines.append(f"  [{mark}] {c['name']}{detail}")
    counts = data["counts"]
    lines.append(f"passed: {data['passed']} "
                 f"({counts['pass']} pass, {counts['fail']} fail, "
                 f"{counts['skip']} skip)")
    return "\n".join(lines)


def cmd_diagram(args) -> int:
    if args.distinguished:
        m, n = args.distinguished
        data = _post(args, "/api/diagram/distinguished",
                     {"n_even": m, "n_odd": n})
    else:
        data = _post(args, "/api/diagram", {"diagram": args.diagram})
    _emit(args, data, f"{data['diagram']}  "
                      f"(even {data['n_even']}, odd {data['n_odd']}, "
                      f"simple-root parities {data['simple_root_parities']})")
    return 0


def cmd_cartan(args) -> int:
    data = _post(args, "/api/cartan", {"diagram": args.diagram})
    _emit(args, data, "\n".join(" ".join(f"{v:3d}" for v in row)
                                for row in data["cartan"]))
    return 0


def cmd_roots(args) -> int:
    data = _post(args, "/api/roots", {"diagram": args.diagram})
    rows = [f"  {name}  parity {p}  height {h}"
            for name, p, h in zip(data["positive_roots"], data["parities"],
                                  data["heights"])]
    _emit(args, data, f"positive roots of {data['diagram']}:\n" + "\n".join(rows))
    return 0


def cmd_weyl(args) -> int:
    data = _post(args, "/api/weyl", {"n_even": args.np, "n_odd": args.nm})
    lines = [f"diagram {data['diagram']}: group order {data['group_order']}, "
             f"complete order {data['complete_order']}"]
    for c in data["checks"]:
        mark = "ok" if c["status"] == "pass" else c["status"].upper()
        lines.append(f"  [{mark}] {c['name']} {c.get('detail', '')}".rstrip())
    _emit(args, data, "\n".join(lines))
    return 0 if data["passed"] else 1


def cmd_series(args) -> int:
    payload = {"kind": args.kind, "order": args.order}
    if args.n is not None:
        payload["n"] = args.n
    data = _post(args, "/api/series", payload)
    _emit(args, data, data["text"])
    return 0


def cmd_check(args) -> int:
    if args.what != "ge":
        print("error: only the 'ge' check is defined", file=sys.stderr)
        return 2
    data = _post(args, "/api/check/ge",
                 {"a": args.a, "sign": args.sign, "parity": args.parity,
                  "order": args.order})
    if data["refused"]:
        _emit(args, data, f"refused: {data['detail']}")
        return 1
    _emit(args, data, "pass" if data["passed"] else "fail")
    return 0 if data["passed"] else 1


def cmd_verify(args) -> int:
    payload = {"suite": args.suite, "cap": args.cap, "length": args.len,
               "max_level": args.max_level, "jobs": args.jobs,
               "words": args.words}
    if args.diagram:
        payload["diagram"] = args.diagram
    if args.np and args.nm:
        payload["n_even"], payload["n_odd"] = args.np, args.nm
    data = _post(args, "/api/verify", payload)
    _emit(args, data, _render_checks(data))
    return 0 if data["passed"] else 1


def cmd_classify(args) -> int:
    data = _post(args, "/api/classify",
                 {"n_even": args.np, "n_odd": args.nm, "mode": args.mode})
    _emit(args, data, json.dumps(data["classes"]))
    return 0


def cmd_distinguish(args) -> int:
    data = _post(args, "/api/classify/distinguish",
                 {"first": args.first, "second": args.second})
    _emit(args, data, f"{data['verdict']}"
                      + (f": {data['reason']}" if data.get("reason") else ""))
    return 0


def cmd_phi(args) -> int:
    data = _post(args, "/api/phi", {"diagram": args.diagram,
                                    "generator": args.gen, "cap": args.cap})
    _emit(args, data, data["text"])
    return 0


def cmd_delta(args) -> int:
    data = _post(args, "/api/delta", {"diagram": args.diagram,
                                      "generator": args.gen, "cap": args.cap})
    _emit(args, data, data["text"])
    return 0


def cmd_serve(args) -> int:
    import uvicorn
    from .service.app import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("plain", "json"),
                   default=_env("FORMAT", "plain"))
    p.add_argument("--server", default=_env("SERVER"),
                   help="base URL of a running service (default: in-process)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superyangian",
        description="Exact computations with truncated Drinfeld super "
                    "Yangians of type A")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagram", help="parity diagram info")
    p.add_argument("--diagram", default=_env("DIAGRAM"))
    p.add_argument("--distinguished", nargs=2, type=int, metavar=("M", "N"))
    _add_common(p)
    p.set_defaults(fn=cmd_diagram)

    p = sub.add_parser("cartan", help="Cartan matrix of a diagram")
    p.add_argument("--diagram", required=_env("DIAGRAM") is None,
                   default=_env("DIAGRAM"))
    _add_common(p)
    p.set_defaults(fn=cmd_cartan)

    p = sub.add_parser("roots", help="positive roots of a diagram")
    p.add_argument("--diagram", required=_env("DIAGRAM") is None,
                   default=_env("DIAGRAM"))
    _add_common(p)
    p.set_defaults(fn=cmd_roots)

    p = sub.add_parser("weyl", help="Weyl group orders and relation checks")
    p.add_argument("--np", type=int, required=True)
    p.add_argument("--nm", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_weyl)

    p = sub.add_parser("series", help="print an exact scalar series")
    p.add_argument("kind", choices=("G", "qnumber", "unit", "sqrt-unit"))
    p.add_argument("--order", type=int, default=int(_env("ORDER", 8)))
    p.add_argument("--n", type=int, default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_series)

    p = sub.add_parser("check", help="scalar identity checks")
    p.add_argument("what", choices=("ge",))
    p.add_argument("--a", default="1")
    p.add_argument("--sign", choices=("plus", "minus"), default="plus")
    p.add_argument("--parity", type=int, default=1)
    p.add_argument("--order", type=int, default=int(_env("ORDER", 8)))
    _add_common(p)
    p.set_defaults(fn=cmd_check)

    def add_verify(owner, name="verify"):
        q = owner.add_parser(name, help="run a verification suite")
        q.add_argument("--suite", default="yangian",
                       choices=sorted(list(_suite_names())))
        q.add_argument("--diagram", default=_env("DIAGRAM"))
        q.add_argument("--np", type=int)
        q.add_argument("--nm", type=int)
        q.add_argument("--cap", type=int, default=int(_env("CAP", 4)))
        q.add_argument("--len", type=int, default=int(_env("LEN", 6)))
        q.add_argument("--max-level", type=int, default=2)
        q.add_argument("--words", type=int, default=200)
        q.add_argument("--jobs", type=int, default=int(_env("JOBS", 1)))
        q.add_argument("--relations", default="all",
                       help="kept for compatibility; suites run all relations")
        _add_common(q)
        q.set_defaults(fn=cmd_verify)
        return q

    add_verify(sub)

    p = sub.add_parser("classify", help="diagram classes")
    p.add_argument("--np", type=int, required=True)
    p.add_argument("--nm", type=int, required=True)
    p.add_argument("--mode", choices=("hopf", "super"), default="hopf")
    _add_common(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("distinguish", help="compare two diagrams")
    p.add_argument("first")
    p.add_argument("second")
    _add_common(p)
    p.set_defaults(fn=cmd_distinguish)

    p = sub.add_parser("phi", help="loop-generator image in the Yangian")
    p.add_argument("--diagram", required=_env("DIAGRAM") is None,
                   default=_env("DIAGRAM"))
    p.add_argument("--gen", required=True, help="E:i:r, F:i:r or H:i:r")
    p.add_argument("--cap", type=int, default=int(_env("CAP", 3)))
    _add_common(p)
    p.set_defaults(fn=cmd_phi)

    def add_delta(owner, name="delta"):
        q = owner.add_parser(name, help="coproduct of a generator")
        q.add_argument("--diagram", required=_env("DIAGRAM") is None,
                       default=_env("DIAGRAM"))
        q.add_argument("--gen", required=True, help="h:i:r, x+:i:r or x-:i:r")
        q.add_argument("--cap", type=int, default=int(_env("CAP", 3)))
        _add_common(q)
        q.set_defaults(fn=cmd_delta)
        return q

    add_delta(sub)

    # grouped aliases for the deformed-algebra commands
    p = sub.add_parser("yangian", help="yangian subcommands")
    ysub = p.add_subparsers(dest="ycommand", required=True)
    add_verify(ysub)
    add_delta(ysub)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=cmd_serve)

    return parser


def _suite_names():
    from .suites import SUITES
    return SUITES.keys()


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    # let value flags take negative rationals without the "=" form
    merged, skip = [], False
    for k, arg in enumerate(argv):
        if skip:
            skip = False
            continue
        if arg == "--a" and k + 1 < len(argv) and argv[k + 1].startswith("-"):
            merged.append(f"--a={argv[k + 1]}")
            skip = True
        else:
            merged.append(arg)
    parser = build_parser()
    args = parser.parse_args(merged)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
