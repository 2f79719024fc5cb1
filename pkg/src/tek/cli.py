"""``tek``: brackets, module actions and verification suites from the command line.

Exit codes: 0 pass, 1 violation, 2 parse error, 3 semantic error, 4 bound exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from . import checks
from .linalg import fmt, frac
from .modules import (Failure, OutsideDomain, functional_from_json, nilpotence_index, spec_from_json,
                      vector_from_json, weight_table)
from .toroidal import element_from_json, element_to_json, invariant_form, make_config

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_SEMANTIC, EXIT_BOUND = 0, 1, 2, 3, 4


class ParseError(Exception):
    pass


class SemanticError(Exception):
    pass


@dataclass
class RunConfig:
    rank: int = 1
    mu: Optional[Fraction] = None
    exponent_box: Optional[int] = None
    samples: int = 10000
    seed: int = 1
    blocks: Dict[str, Any] = field(default_factory=dict)

    @property
    def mu_or_zero(self) -> Fraction:
        return Fraction(0) if self.mu is None else self.mu

    def box(self, default: int) -> int:
        return default if self.exponent_box is None else self.exponent_box


def load_json_arg(text: str) -> Any:
    """Inline JSON, or ``@path`` to read it from a file."""
    try:
        if text.startswith("@"):
            with open(text[1:], encoding="utf-8") as fh:
                return json.load(fh)
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(str(exc)) from exc


def load_config(path: Optional[str], seed: Optional[int], box: Optional[int]) -> RunConfig:
    raw: Dict[str, Any] = {}
    if path:
        raw = load_json_arg("@" + path)
        if not isinstance(raw, dict):
            raise ParseError("config must be a JSON object")
    try:
        alg = raw.get("algebra", {})
        sweep = raw.get("sweep", {})
        cfg = RunConfig(
            rank=int(alg.get("rank", 1)),
            mu=frac(alg["mu"]) if "mu" in alg else None,
            exponent_box=int(sweep["exponent_box"]) if "exponent_box" in sweep else None,
            samples=int(sweep.get("samples", 10000)),
            seed=int(sweep.get("seed", 1)),
            blocks={k: v for k, v in raw.items() if k not in ("algebra", "sweep")},
        )
    except (TypeError, ValueError, AttributeError, ZeroDivisionError) as exc:
        raise SemanticError(f"bad config: {exc}") from exc
    if seed is not None:
        cfg.seed = seed
    if box is not None:
        cfg.exponent_box = box
    if cfg.exponent_box is not None and cfg.exponent_box < 1:
        raise SemanticError("exponent_box must be at least 1")
    if cfg.rank < 1:
        raise SemanticError("rank must be at least 1")
    if cfg.samples < 0:
        raise SemanticError("samples must be non-negative")
    return cfg


def dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- commands ------------------------------------------------------------------------


def cmd_bracket(cfg: RunConfig, x_text: str, y_text: str):
    alg = make_config(cfg.rank, cfg.mu_or_zero)
    x = element_from_json(load_json_arg(x_text), alg.base.dim)
    y = element_from_json(load_json_arg(y_text), alg.base.dim)
    from .toroidal import bracket

    return EXIT_OK, element_to_json(bracket(alg, x, y))


def cmd_form(cfg: RunConfig, x_text: str, y_text: str):
    alg = make_config(cfg.rank, cfg.mu_or_zero)
    x = element_from_json(load_json_arg(x_text), alg.base.dim)
    y = element_from_json(load_json_arg(y_text), alg.base.dim)
    return EXIT_OK, {"form": fmt(invariant_form(alg, x, y))}


def run_suite(name: str, cfg: RunConfig) -> checks.SuiteReport:
    block = cfg.blocks.get(name, {})
    if not isinstance(block, dict):
        raise SemanticError(f"'{name}' block must be an object")
    if name == "jacobi":
        ranks = block.get("ranks", [cfg.rank])
        mus = block.get("mus", [cfg.mu] if cfg.mu is not None else [0, 1, "-3/2"])
        return checks.jacobi_suite([int(r) for r in ranks], [frac(m) for m in mus], cfg.box(2))
    if name == "invariance":
        return checks.invariance_suite(cfg.rank, cfg.mu_or_zero, cfg.box(2), cfg.samples, cfg.seed)
    if name == "kwelldef":
        return checks.kwelldef_suite(cfg.rank, cfg.mu_or_zero, cfg.box(3))
    if name == "module":
        spec = None
        if "spec" in block:
            spec = spec_from_json(block["spec"])
        return checks.module_suite(cfg.mu_or_zero, cfg.box(2), int(block.get("vector_box", 2)), spec,
                                   block.get("label", "custom"), rank=cfg.rank)
    if name == "automorphism":
        mus = block.get("mus", [cfg.mu] if cfg.mu is not None else [0, 1])
        return checks.automorphism_suite([frac(m) for m in mus], cfg.box(2))
    if name == "lambda":
        return checks.lambda_suite(cfg.seed)
    if name == "heisenberg":
        psi = functional_from_json(block["psi"]) if "psi" in block else None
        expected = block.get("expected_r")
        probe = block.get("probe_range")
        return checks.heisenberg_suite(block.get("fixture"), psi, None if expected is None else int(expected),
                                       None if probe is None else int(probe))
    if name == "exppoly":
        return checks.exppoly_suite(cfg.seed, int(block.get("count", 100)))
    raise SemanticError(f"unknown suite {name!r}")


def cmd_check(cfg: RunConfig, suite: str):
    report = run_suite(suite, cfg)
    return (EXIT_OK if report.passed else EXIT_VIOLATION), report


def _module_spec(cfg: RunConfig, text: Optional[str]):
    if text is not None:
        obj = load_json_arg(text)
    elif "spec" in cfg.blocks.get("module", {}):
        obj = cfg.blocks["module"]["spec"]
    else:
        raise SemanticError("no module spec given (use --spec or a 'module.spec' config block)")
    return spec_from_json(obj)


def cmd_module(cfg: RunConfig, args):
    spec = _module_spec(cfg, args.spec)
    if args.sub == "weights":
        table = weight_table(spec, cfg.box(2)) if hasattr(spec, "weight") else None
        if table is None:
            raise SemanticError("this module has no weight table")
        rows = [{"weight": [fmt(frac(c)) for c in beta], "n0": fmt(frac(n0)), "n1": fmt(frac(n1)), "dim": dim}
                for (beta, n0, n1), dim in table]
        return EXIT_OK, {"variant": spec.tag, "box": cfg.box(2), "slots": rows}
    if args.element is None or args.vector is None:
        raise SemanticError("--element and --vector are required")
    x = element_from_json(load_json_arg(args.element), make_config(cfg.rank).base.dim)
    w = vector_from_json(load_json_arg(args.vector), spec)
    if args.sub == "act":
        return EXIT_OK, spec.act(x, w).to_json()
    got = nilpotence_index(spec, x, w, args.bound)
    if isinstance(got, Failure):
        return EXIT_BOUND, {"nilpotence": None, "failure": {"bound": got.bound}}
    return EXIT_OK, {"nilpotence": got}


# -- entry point -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="RunConfig JSON file")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--seed", type=int, help="seed for sampled sweeps")
    common.add_argument("--box", type=int, help="exponent box half-width")
    common.add_argument("--out", help="write the report to this file")

    parser = argparse.ArgumentParser(prog="tek", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("bracket", parents=[common], help="bracket of two elements")
    p.add_argument("x")
    p.add_argument("y")
    p = sub.add_parser("form", parents=[common], help="invariant form of two elements")
    p.add_argument("x")
    p.add_argument("y")
    p = sub.add_parser("check", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=checks.SUITES)
    p = sub.add_parser("module", parents=[common], help="module actions, weights, nilpotence")
    p.add_argument("sub", choices=("act", "weights", "nilpotence"))
    p.add_argument("--spec", help="module spec JSON (or @file)")
    p.add_argument("--element", help="algebra element JSON (or @file)")
    p.add_argument("--vector", help="module vector JSON (or @file)")
    p.add_argument("--bound", type=int, default=16, help="nilpotence search bound")
    return parser


def _render(result, as_json: bool) -> str:
    if isinstance(result, checks.SuiteReport):
        return dump(result.to_json()) if as_json else result.to_text()
    return dump(result)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        cfg = load_config(args.config, args.seed, args.box)
        if args.command == "bracket":
            code, result = cmd_bracket(cfg, args.x, args.y)
        elif args.command == "form":
            code, result = cmd_form(cfg, args.x, args.y)
        elif args.command == "check":
            code, result = cmd_check(cfg, args.suite)
        else:
            code, result = cmd_module(cfg, args)
    except ParseError as exc:
        print(f"tek: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SemanticError, OutsideDomain, ValueError, KeyError, IndexError, TypeError, ZeroDivisionError) as exc:
        print(f"tek: invalid input: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    text = _render(result, args.json)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
