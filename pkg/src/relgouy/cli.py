"""Command line interface: ``relgouy eval | verify <scenario> | report``.

Exit codes: 0 success/pass, 1 verification failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from ._accel import backend_name
from .fieldgrid import ConfigError, RunConfig, evaluate, load_config, parse_config, render
from .scenarios import SCENARIOS, adjudication_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _fail("usage", message)


def _fail(kind, message):
    sys.stderr.write(json.dumps({"error": kind, "message": str(message)}) + "\n")
    raise SystemExit(EXIT_USAGE)


def _read_config(path) -> RunConfig:
    if path is None:
        return parse_config({})
    if path == "-":
        return load_config(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return load_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc.strerror}") from exc


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    changes = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if getattr(args, "format", None):
        changes["output_format"] = args.format
    if args.out:
        changes["output_path"] = args.out
    return replace(cfg, **changes) if changes else cfg


def _emit(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _report_json(scenario, cfg, metrics, passed, extra=None):
    doc = {"scenario": scenario, "config_echo": cfg.echo(), "metrics": metrics, "verdict": "pass" if passed else "fail"}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2) + "\n"


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="TOML run configuration ('-' for standard input)")
    common.add_argument("--out", metavar="PATH", help="output file (default: config output.path or stdout)")
    common.add_argument("--threads", type=int, default=1, metavar="N", help="worker threads for grid evaluation")
    common.add_argument("--seed", type=int, metavar="K", help="seed for verification sample points")

    parser = _Parser(prog="relgouy", description="Relativistic Hermite-Gaussian matter-wave beams.")
    parser.add_argument("--backend", action="store_true", help="print the active kernel backend and exit")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    ev = sub.add_parser("eval", parents=[common], help="evaluate the field on a grid")
    ev.add_argument("--format", choices=("csv", "json"))
    ver = sub.add_parser("verify", parents=[common], help="run a verification scenario")
    ver.add_argument("scenario", choices=sorted(SCENARIOS))
    sub.add_parser("report", parents=[common], help="print the convention adjudication ledger")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.backend:
        print(backend_name())
        return EXIT_OK
    if args.command is None:
        _fail("usage", "a subcommand is required: eval, verify or report")
    if args.threads < 1:
        _fail("usage", "--threads must be at least 1")
    try:
        cfg = _apply_overrides(_read_config(args.config), args)
        if args.command == "eval":
            table = evaluate(cfg, threads=args.threads)
            _emit(render(table, cfg.output_format), cfg.output_path)
            return EXIT_OK
        if args.command == "verify":
            metrics, passed = SCENARIOS[args.scenario](cfg)
            _emit(_report_json(args.scenario, cfg, metrics, passed), args.out)
            return EXIT_OK if passed else EXIT_FAIL
        metrics, passed, ledger = adjudication_report(cfg)
        _emit(_report_json("report", cfg, metrics, passed, {"ledger": ledger}), args.out)
        return EXIT_OK if passed else EXIT_FAIL
    except ConfigError as exc:
        _fail("config", exc)
    except ValueError as exc:
        _fail("domain", exc)
    except BrokenPipeError:
        # Downstream reader closed early (e.g. piped into head).
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
