"""Command-line entry point: ``qmapwc <subcommand> ...``.

Exit codes: 0 ok, 2 bad flags, 3 depth/domain errors, 4 integrality or
identity-check failures. Errors are reported as JSON on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .cache import SeriesCache, resolve_cache_dir
from .cohring import CompleteIntersection, euler_char
from .errors import DomainError, QmapError
from .genus0 import genus0_data
from .gwcalc import InvariantTable
from .ifun import Stability, homogeneity_failures, i_degree_piece, j0_j1, j_classes, mirror_map, mu, zj_plus
from .rational import fmt
from .series import ZPolyClass
from .wallcross import (
    CheckReport,
    bcov_identity_check,
    fano_independence_check,
    semipositive_identity_check,
    transform,
    random_table,
)

EXIT_FLAGS = 2
EXIT_CHECK = 4

DEFAULT_HOMOGENEITY_TARGETS = ("3:1", "4:2", "3:3", "4:4", "4:5", "5:3,3", "3:5", "4:6", "3:6", "6:2,3")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _emit_error("UsageError", message)
        sys.exit(EXIT_FLAGS)


def _emit_error(kind: str, message: str):
    sys.stderr.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")


@dataclass
class JobConfig:
    command: str
    target: CompleteIntersection | None
    stability: Stability
    genus: int | None
    depth: int | None
    degree: int | None
    input: Path | None
    output: Path | None
    cache: SeriesCache | None
    source: Stability | None = None

    @classmethod
    def from_args(cls, args) -> "JobConfig":
        def target_or_none(text):
            return CompleteIntersection.parse(text) if text else None

        cache_dir = resolve_cache_dir(getattr(args, "cache_dir", None))
        return cls(
            command=args.command,
            target=target_or_none(args.target),
            stability=Stability.parse(getattr(args, "to", None) or args.epsilon),
            genus=args.genus,
            depth=args.depth,
            degree=getattr(args, "degree", None),
            input=Path(args.input) if args.input else None,
            output=Path(args.output) if args.output else None,
            cache=SeriesCache(cache_dir) if cache_dir else None,
            source=Stability.parse(args.source) if getattr(args, "source", None) else None,
        )

    def need_target(self) -> CompleteIntersection:
        if self.target is None:
            raise DomainError(f"{self.command} needs --target")
        return self.target


def _z_keyed(z: ZPolyClass) -> dict:
    """z-exponent keyed H-coefficient arrays, trimmed to a common significant length."""
    rows = {f"z{e}": c.to_json() for e, c in z.items()}
    width = max((max(i for i, a in enumerate(r) if a != "0") + 1 for r in rows.values()), default=1)
    return {k: r[:width] for k, r in rows.items()}


def _cached(cfg: JobConfig, quantity: str, order: int, compute):
    if cfg.cache is None:
        return compute(order)
    return cfg.cache.fetch(cfg.need_target(), quantity, order, compute)


def cmd_euler(cfg: JobConfig) -> tuple[dict, int]:
    return {"chi": fmt(euler_char(cfg.need_target()))}, 0


def cmd_ifun(cfg: JobConfig):
    if cfg.degree is None:
        raise DomainError("ifun needs --degree")
    return _z_keyed(i_degree_piece(cfg.need_target(), cfg.degree)), 0


def cmd_mu(cfg: JobConfig):
    if cfg.degree is None:
        raise DomainError("mu needs --degree")
    return _z_keyed(mu(cfg.need_target(), cfg.degree).value), 0


def cmd_jfun(cfg: JobConfig):
    target = cfg.need_target()
    depth = cfg.depth if cfg.depth is not None else 3
    j0, j1 = j_classes(target, cfg.stability, depth)
    out = {
        "epsilon": str(cfg.stability),
        "J0": j0.to_json(),
        "J1": j1.to_json(),
        "plus": {str(m.degree): _z_keyed(m.value) for m in zj_plus(target, cfg.stability, depth)},
    }
    if target.is_calabi_yau:
        _, j1h = j0_j1(target, cfg.stability, depth, method="closed")
        out["J1_over_H"] = j1h.to_json()
    return out, 0


def cmd_mirror_map(cfg: JobConfig):
    depth = cfg.depth if cfg.depth is not None else 3
    series = _cached(cfg, "mirror_map", depth, lambda d: mirror_map(cfg.need_target(), d))
    return {"mirror_map": series.to_json()}, 0


def cmd_genus0(cfg: JobConfig):
    target = cfg.need_target()
    depth = cfg.depth if cfg.depth is not None else 3
    data = genus0_data(target, depth)
    if cfg.cache is not None:
        cfg.cache.put(target, "yukawa", data.yukawa)
    return {
        "yukawa": data.yukawa.to_json(),
        "three_point": [fmt(x) for x in data.three_point],
        "instantons": [str(x) for x in data.instantons],
        "table": data.table().to_json(),
    }, 0


def cmd_wallcross(cfg: JobConfig):
    if cfg.input is None:
        raise DomainError("wallcross needs --input")
    table = InvariantTable.from_json(json.loads(cfg.input.read_text(encoding="utf-8")))
    if cfg.target is not None and table.target != cfg.target:
        raise DomainError(f"input table is for {table.target}, not {cfg.target}")
    if cfg.genus is not None and table.genus != cfg.genus:
        raise DomainError(f"input table has genus {table.genus}, not {cfg.genus}")
    if cfg.source is not None and table.stability != cfg.source:
        raise DomainError(f"input table is at stability {table.stability}, not {cfg.source}")
    return transform(table, cfg.stability, cfg.depth).to_json(), 0


def _suite(cfg: JobConfig) -> list[CheckReport]:
    depth = cfg.depth if cfg.depth is not None else 3
    targets = [cfg.target] if cfg.target else [CompleteIntersection.parse(t) for t in DEFAULT_HOMOGENEITY_TARGETS]
    genera = [cfg.genus] if cfg.genus is not None else [1, 2, 5]
    reports = []
    for target in targets:
        bad = homogeneity_failures(target, max(depth, 5))
        reports.append(CheckReport("homogeneity", not bad, bad[0] if bad else None, {"target": target.spec()}))
    for target in targets:
        if target.is_semipositive:
            for g in genera:
                for eps in (Stability.zero_plus(), Stability.finite("1/2"), cfg.stability):
                    r = semipositive_identity_check(target, g, eps, depth)
                    r.details["target"] = target.spec()
                    reports.append(r)
        if target.is_cy3:
            for g in genera:
                if g >= 1:
                    r = bcov_identity_check(random_table(target, g, depth, seed=g), depth)
                    r.details["target"] = target.spec()
                    reports.append(r)
        if target.index >= 1:
            for g in genera:
                r = fano_independence_check(target, g, depth)
                r.details["target"] = target.spec()
                reports.append(r)
    return reports


def cmd_check(cfg: JobConfig):
    reports = _suite(cfg)
    failed = [r for r in reports if not r.passed]
    out = {"passed": not failed, "reports": [r.to_json() for r in reports]}
    return out, (EXIT_CHECK if failed else 0)


COMMANDS = {
    "euler": cmd_euler,
    "ifun": cmd_ifun,
    "mu": cmd_mu,
    "jfun": cmd_jfun,
    "mirror-map": cmd_mirror_map,
    "genus0": cmd_genus0,
    "wallcross": cmd_wallcross,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--target", help="complete intersection as n:l1,l2,... (e.g. 4:5)")
    common.add_argument("--degree", type=int)
    common.add_argument("--depth", type=int, help="truncation order / number of degrees")
    common.add_argument("--epsilon", default="0+", help="stability: inf, 0+ or p/q")
    common.add_argument("--genus", type=int)
    common.add_argument("--input")
    common.add_argument("--output")
    common.add_argument("--cache-dir", help="series cache directory (default: $QMAPWC_CACHE_DIR)")
    common.add_argument("--format", choices=["json"], default="json")

    parser = _Parser(prog="qmapwc", description="Quasimap wall-crossing for complete intersections.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "wallcross":
            p.add_argument("--from", dest="source", default="inf")
            p.add_argument("--to", default=None)
    return parser


def run(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    for flag in ("depth", "degree", "genus"):
        value = getattr(args, flag, None)
        if value is not None and value < 0:
            _emit_error("UsageError", f"--{flag} must be nonnegative")
            return EXIT_FLAGS
    try:
        cfg = JobConfig.from_args(args)
        payload, code = COMMANDS[args.command](cfg)
    except QmapError as exc:
        _emit_error(type(exc).__name__, str(exc))
        return exc.exit_code
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if cfg.output is not None:
        cfg.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
