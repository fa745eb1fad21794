"""Command-line front end.

Exit statuses: 0 success, 1 a verification failed, 2 usage error,
3 parse or configuration error, 4 size limit exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .checks import SUITES, run_suites
from .expr import ParseError, parse_kclass, parse_qrat, render
from .kring import KRing
from .lefschetz import LineSummand, i_cotangent, j_small, lefschetz_transform
from .loopspace import omega_r
from .qcalc import project_minus, project_plus
from .scalars import ScalarRing, render_scalar
from .twistkit import MODES, TwistData, TwistError, dilaton_vector

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE, EXIT_SIZE = 0, 1, 2, 3, 4

LIMITS = {"n": 12, "deg": 10, "eps_order": 8, "expr": 4000}


class ConfigError(ValueError):
    pass


class SizeLimitError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, help="rank: the target is CP^(n-1)")
    p.add_argument("--deg", type=int, help="Novikov truncation D")
    p.add_argument("--eps-order", type=int, help="truncation order of the marker eps")
    p.add_argument("--params", help="comma-separated equivariant parameters (default lam)")
    p.add_argument("--format", choices=("text", "json"), help="output format")
    p.add_argument("--ascii", action="store_true", help="ASCII '-' and '*' in rendered output")
    p.add_argument("--config", help="JSON file with default settings")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qktwist", description="Twisted quantum K-theory calculator.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")
    sub.required = True
    common = _common()

    sub.add_parser("j", parents=[common], help="small J-function of CP^(n-1)")
    sub.add_parser("i-cotangent", parents=[common], help="the I-series of T*CP^(n-1)")

    p = sub.add_parser("lefschetz", parents=[common], help="Quantum Lefschetz transform of J")
    p.add_argument("--bundle", action="append", default=[], metavar="M[:WEIGHT]",
                   help="line summand weight*P^-M (repeatable)")
    p.add_argument("--mode", choices=("pi", "dual"), default="pi")

    p = sub.add_parser("project", parents=[common], help="split f = f_+ + f_-")
    p.add_argument("--expr", required=True)

    p = sub.add_parser("pair", parents=[common], help="the form Omega^(r)(f, g)")
    p.add_argument("--f", required=True, dest="f_expr")
    p.add_argument("--g", required=True, dest="g_expr")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--delta", default="1", help="pairing twist, a q-free class")

    p = sub.add_parser("dilaton", parents=[common], help="deformed dilaton vector v_r")
    p.add_argument("--twist", required=True, help="twist data: inline JSON or a file")
    p.add_argument("--r", type=int, default=1)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", action="append", choices=[*SUITES, "all"],
                   help="suite name (repeatable; default all)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--twist", help=argparse.SUPPRESS)
    return parser


# -- configuration ---------------------------------------------------------

def _load_json(text_or_path: str, what: str):
    path = Path(text_or_path)
    try:
        if not text_or_path.lstrip().startswith(("{", "[")) and path.exists():
            text_or_path = path.read_text()
        return json.loads(text_or_path)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"malformed {what}: {exc}") from None


def resolve(args) -> dict:
    """Merge flags over the config file over built-in defaults."""
    cfg = {"n": 2, "deg": 2, "eps_order": 2, "params": "lam", "format": "text"}
    if args.config:
        data = _load_json(args.config, "config")
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        for key, value in data.items():
            key = key.replace("-", "_")
            if key == "truncation":
                key = "deg"
            if key not in (*cfg, "twist"):
                raise ConfigError(f"unknown config key {key!r}")
            cfg[key] = value
    for key in ("n", "deg", "eps_order", "params", "format"):
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    if getattr(args, "twist", None):
        cfg["twist"] = args.twist
    if isinstance(cfg["params"], str):
        cfg["params"] = [p.strip() for p in cfg["params"].split(",") if p.strip()]
    for key in ("n", "deg", "eps_order"):
        if not isinstance(cfg[key], int) or isinstance(cfg[key], bool):
            raise ConfigError(f"{key} must be an integer")
    if cfg["n"] < 1 or cfg["deg"] < 0 or cfg["eps_order"] < 1:
        raise ConfigError("need n >= 1, deg >= 0 and eps-order >= 1")
    if cfg["format"] not in ("text", "json"):
        raise ConfigError("format must be text or json")
    if not cfg["params"]:
        raise ConfigError("at least one equivariant parameter is required")
    for key in ("n", "deg", "eps_order"):
        if cfg[key] > LIMITS[key]:
            raise SizeLimitError(f"{key} = {cfg[key]} exceeds the limit {LIMITS[key]}")
    return cfg


def make_ring(cfg) -> KRing:
    try:
        scalars = ScalarRing(cfg["params"], {"eps": cfg["eps_order"]})
    except Exception as exc:
        raise ConfigError(f"bad parameters: {exc}") from None
    return KRing(cfg["n"], scalars)


def _parse(text: str, ring: KRing, cls: bool = False):
    if len(text) > LIMITS["expr"]:
        raise SizeLimitError("expression too long")
    return parse_kclass(text, ring) if cls else parse_qrat(text, ring)


def parse_twist(spec, ring: KRing) -> TwistData:
    data = _load_json(spec, "twist data") if isinstance(spec, str) else spec
    if not isinstance(data, dict):
        raise ConfigError("twist data must be a JSON object")
    mode = data.get("mode", "infinitesimal")
    if mode not in MODES:
        raise ConfigError(f"unknown twist mode {mode!r}")
    try:
        if mode.startswith("eulerian"):
            lines = [_parse(s, ring, cls=True) for s in data.get("lines", [])]
            return TwistData(ring, mode, lines=tuple(lines), side=int(data.get("side", -1)))
        entries = {}
        for k, text in data.get("entries", {}).items():
            entries[int(k)] = _parse(text, ring).as_laurent()
        return TwistData(ring, mode, entries)
    except (TwistError, ArithmeticError, TypeError) as exc:
        raise ConfigError(f"bad twist data: {exc}") from None


# -- output ----------------------------------------------------------------

def _series_payload(series, n, uni):
    terms = [{"d": list(d), "value": render(f, uni)} for d, f in series.terms.items()]
    return {"n": n, "truncation": series.bound, "terms": terms}


def _emit(payload, fmt, text_lines, out):
    if fmt == "json":
        out.write(json.dumps(payload, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def _series_text(payload):
    return [f"Q^{','.join(map(str, t['d']))}: {t['value']}" for t in payload["terms"]]


def _bundles(specs, ring):
    out = []
    for spec in specs:
        m, _, weight = spec.partition(":")
        try:
            m = int(m)
        except ValueError:
            raise ConfigError(f"bundle exponent must be an integer: {spec!r}") from None
        w = _parse(weight, ring, cls=True) if weight else None
        out.append(LineSummand(m, w))
    return out


def _scalar_text(s, uni):
    text = render_scalar(s).replace(" ", "")
    return text.replace("-", "−").replace("*", "·") if uni else text


def dispatch(args, out) -> int:
    cfg = resolve(args)
    fmt, uni = cfg["format"], not args.ascii
    cmd = args.command
    if cmd == "verify":
        names = args.suite or ["all"]
        results = run_suites(names, seed=args.seed)
        ok = all(r.passed for r in results)
        payload = {
            "suites": list(SUITES) if "all" in names else names,
            "results": [{"suite": r.suite, "name": r.name, "passed": r.passed} for r in results],
            "passed": ok,
        }
        summary = f"{sum(r.passed for r in results)}/{len(results)} checks passed"
        _emit(payload, fmt, [r.line() for r in results] + [summary], out)
        return EXIT_OK if ok else EXIT_FAIL

    ring = make_ring(cfg)
    n, D = cfg["n"], cfg["deg"]
    if cmd in ("j", "i-cotangent", "lefschetz"):
        if cmd == "j":
            series = j_small(n, D, ring)
        elif cmd == "i-cotangent":
            series = i_cotangent(n, D, ring)
        else:
            series = lefschetz_transform(j_small(n, D, ring), _bundles(args.bundle, ring), args.mode)
        payload = _series_payload(series, n, uni)
        _emit(payload, fmt, _series_text(payload), out)
    elif cmd == "project":
        f = _parse(args.expr, ring)
        plus, minus = render(project_plus(f), uni), render(project_minus(f), uni)
        payload = {"expr": args.expr, "plus": plus, "minus": minus}
        _emit(payload, fmt, [f"plus: {plus}", f"minus: {minus}"], out)
    elif cmd == "pair":
        if args.r < 1:
            raise ConfigError("r must be positive")
        f, g = _parse(args.f_expr, ring), _parse(args.g_expr, ring)
        delta = _parse(args.delta, ring, cls=True)
        value = _scalar_text(omega_r(f, g, args.r, delta), uni)
        _emit({"r": args.r, "value": value}, fmt, [value], out)
    elif cmd == "dilaton":
        if args.r < 1:
            raise ConfigError("r must be positive")
        data = parse_twist(cfg["twist"], ring)
        try:
            v = render(dilaton_vector(args.r, data), uni)
        except TwistError as exc:
            raise ConfigError(str(exc)) from None
        _emit({"r": args.r, "value": v}, fmt, [v], out)
    return EXIT_OK


def run(argv=None, out=None) -> int:
    """Run the CLI on ``argv`` and return the exit status."""
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return dispatch(args, out)
    except SizeLimitError as exc:
        print(f"qktwist: size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except ParseError as exc:
        print(f"qktwist: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConfigError as exc:
        print(f"qktwist: config error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
