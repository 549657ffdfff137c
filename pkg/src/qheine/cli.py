"""Command-line harness: catalog verification sweeps, block compositions,
and catalog metadata export.

Exit codes: 0 all checks passed, 1 verification failures, 2 configuration
errors, 3 homogeneity (composition precondition) failures.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import random
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone

from mpmath import mp, mpf

from . import __version__, catalog, heine_engine, report
from .catalog.core import argument, exponent, sample_bases
from .errors import (
    InvalidConfig,
    PropertyHViolation,
    QHeineError,
    UnknownIdentity,
)
from .multisum import TruncationPolicy, evaluate_in_context, make_context

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_PROPERTY_H_FAILED = 3

_REL_FLOOR = mpf(10) ** -300


@dataclass
class RunConfig:
    """Fully serialisable description of one CLI run; embedded in reports."""

    mode: str = "verify"
    identities: list = field(default_factory=lambda: ["all"])
    dims: list | None = None
    samples: int = 5
    seed: int = 1
    precision: int = 128
    max_shell: int | None = None
    tail_tol: float = 1e-24
    min_shells: int = 6
    tolerance: float = 1e-20
    report: str = "json-lines"
    out: str | None = None
    blocks: list = field(default_factory=list)
    base: str = "q_bin"

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def parse_dims_spec(spec: str) -> dict:
    out = {}
    for piece in spec.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise InvalidConfig(f"bad dimension assignment {spec!r}; use name=value")
        name, _, value = piece.partition("=")
        try:
            out[name.strip()] = int(value)
        except ValueError:
            raise InvalidConfig(f"dimension {name!r} needs an integer, got {value!r}")
    if not out:
        raise InvalidConfig(f"empty dimension assignment {spec!r}")
    return out


def parse_block_spec(spec: str) -> tuple[str, tuple[int, ...]]:
    name, _, dims = spec.partition(":")
    name = name.strip()
    if not dims:
        return name, (1,)
    try:
        parts = tuple(int(v) for v in dims.replace("x", ",").split(",") if v)
    except ValueError:
        raise InvalidConfig(f"bad block dimensions in {spec!r}")
    return name, parts or (1,)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qheine",
        description="evaluate and verify basic hypergeometric transformation "
        "identities over root systems of type A",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--samples", type=int, default=5)
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--precision", type=int, default=128, help="binary digits")
        p.add_argument("--max-shell", type=int, default=None)
        p.add_argument("--tail-tol", type=float, default=1e-24)
        p.add_argument("--min-shells", type=int, default=6)
        p.add_argument("--tol", type=float, default=1e-20)
        p.add_argument(
            "--report",
            choices=("json-lines", "csv", "text"),
            default="json-lines",
        )
        p.add_argument("--out", default=None)
        p.add_argument("--config", default=None, help="JSON file; overrides flags")

    p_verify = sub.add_parser("verify", help="verify catalog identities")
    p_verify.add_argument("--identity", action="append", default=[])
    p_verify.add_argument("--all", action="store_true")
    p_verify.add_argument(
        "--dims",
        action="append",
        default=[],
        help='dimension assignment like "n=2,m=1"; repeatable',
    )
    add_common(p_verify)

    p_compose = sub.add_parser("compose", help="compose blocks and verify the result")
    p_compose.add_argument(
        "--blocks",
        default="q_bin",
        help='comma-separated block specs like "milne_lilly:2,gk:2"',
    )
    p_compose.add_argument("--base", default="q_bin", help='base block spec')
    add_common(p_compose)

    p_export = sub.add_parser("export-catalog", help="write catalog metadata")
    p_export.add_argument("--out", default=None)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(mode=args.command)
    if args.command == "verify":
        if args.all or not args.identity:
            config.identities = ["all"]
        else:
            config.identities = list(args.identity)
        config.dims = [parse_dims_spec(s) for s in args.dims] or None
    elif args.command == "compose":
        config.blocks = [s.strip() for s in args.blocks.split(",") if s.strip()]
        config.base = args.base
    for name in (
        "samples",
        "seed",
        "precision",
        "tail_tol",
        "min_shells",
    ):
        setattr(config, name, getattr(args, name))
    config.max_shell = args.max_shell
    config.tolerance = args.tol
    config.report = args.report
    config.out = args.out
    if args.config:
        config = apply_config_file(config, args.config)
    validate_config(config)
    return config


def apply_config_file(config: RunConfig, path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidConfig(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidConfig("config file must hold a JSON object")
    known = {f.name for f in dataclasses.fields(RunConfig)}
    for key, value in data.items():
        if key not in known:
            raise InvalidConfig(f"unknown config key {key!r}")
        setattr(config, key, value)
    return config


def validate_config(config: RunConfig) -> None:
    if config.samples < 1:
        raise InvalidConfig("samples must be >= 1")
    if config.precision < 64:
        raise InvalidConfig("precision must be >= 64 bits")
    if config.report not in ("json-lines", "csv", "text"):
        raise InvalidConfig(f"unknown report format {config.report!r}")
    if config.mode == "verify":
        if config.identities != ["all"]:
            for identity_id in config.identities:
                catalog.lookup(identity_id)
    elif config.mode == "compose":
        if not config.blocks:
            raise InvalidConfig("compose needs at least one block")
        for spec in list(config.blocks) + [config.base]:
            name, _ = parse_block_spec(spec)
            if name not in heine_engine.BLOCK_NAMES:
                raise InvalidConfig(f"unknown block {name!r}")


def _policy_for(identity, config: RunConfig) -> TruncationPolicy:
    base = identity.policy
    return TruncationPolicy(
        max_shell_weight=config.max_shell
        if config.max_shell is not None
        else base.max_shell_weight,
        tail_ratio_tol=config.tail_tol,
        min_shells=config.min_shells,
    )


def _assignments_for(family, config: RunConfig) -> list[dict]:
    if config.dims is None:
        return [dict(d) for d in family.default_dims]
    seen = []
    for spec in config.dims:
        filtered = {k: v for k, v in spec.items() if k in family.dim_names}
        for name in family.dim_names:
            filtered.setdefault(name, 1)
        if filtered not in seen:
            seen.append(filtered)
    return seen or [{}]


def run_verify(config: RunConfig) -> tuple[list[dict], int]:
    """Verification sweep over the requested identities; returns the report
    records and the exit code."""
    if config.identities == ["all"]:
        ids = [family.id for family in catalog.register_all()]
    else:
        ids = list(config.identities)
    ids = sorted(set(ids))

    records: list[dict] = [_header(config)]
    total_cases = 0
    total_passed = 0
    for identity_id in ids:
        family = catalog.lookup(identity_id)
        started = time.perf_counter()
        id_cases = 0
        id_passed = 0
        worst = mpf(0)
        for assignment in _assignments_for(family, config):
            identity = family.instantiate(assignment)
            policy = _policy_for(identity, config)
            points = catalog.sample_domain(
                identity, seed=config.seed, count=config.samples, prec=config.precision
            )
            for index, (params, bases) in enumerate(points):
                result = catalog.verify(
                    identity, params, bases, policy, tolerance=config.tolerance
                )
                records.append(report.case_row(result, assignment, index))
                id_cases += 1
                id_passed += int(result.passed)
                worst = max(worst, result.rel_error)
        records.append(
            {
                "kind": "summary",
                "identity": identity_id,
                "cases": id_cases,
                "passed": id_passed,
                "failed": id_cases - id_passed,
                "worst_rel_error": report.value_str(worst),
                "wall_ms": round((time.perf_counter() - started) * 1000, 3),
            }
        )
        total_cases += id_cases
        total_passed += id_passed
    exit_code = EXIT_OK if total_passed == total_cases else EXIT_VERIFICATION_FAILED
    records.append(_total(total_cases, total_passed, exit_code))
    return records, exit_code


def _compose_sample(config: RunConfig, rng: random.Random):
    """Draw one composition: bases, one slot per requested block, the base
    slot, and the composed identity."""
    bases = sample_bases(rng, config.precision)
    slots = []
    has_transformation = False
    for spec in config.blocks:
        name, dims = parse_block_spec(spec)
        h_r = exponent(rng)
        block = heine_engine.sample_block(name, rng, dims, bases.power(h_r))
        if isinstance(block, heine_engine.TransformationBlock):
            has_transformation = True
        with mp.workprec(config.precision):
            z_r = argument(rng) * min(1, block.arg_bound)
        slots.append(heine_engine.BlockSlot(block, h_r, z_r))
    base_name, base_dims = parse_block_spec(config.base)
    base_block = heine_engine.sample_block(base_name, rng, base_dims, bases.qt)
    if isinstance(base_block, heine_engine.TransformationBlock):
        has_transformation = True
    with mp.workprec(config.precision):
        w = argument(rng) * min(1, base_block.arg_bound)
    base_slot = heine_engine.BlockSlot(base_block, bases.t, w)

    if has_transformation:
        if len(slots) != 1:
            raise InvalidConfig(
                "transformation blocks compose pairwise; give exactly one block"
            )
        composed = heine_engine.compose_with_transformation(slots[0], base_slot, bases)
    else:
        composed = heine_engine.compose(
            heine_engine.BlockAssignment(tuple(slots), base_slot, bases)
        )
    return bases, composed


def run_compose(config: RunConfig) -> tuple[list[dict], int]:
    """Sample block assignments, compose them, and verify each composition."""
    records: list[dict] = [_header(config)]
    rng = random.Random(config.seed)
    label = "+".join(config.blocks) + "/" + config.base
    started = time.perf_counter()
    cases = 0
    passed = 0
    h_failures = 0
    worst = mpf(0)
    tolerance = mpf(config.tolerance)
    for index in range(config.samples):
        try:
            bases, composed = _compose_sample(config, rng)
        except PropertyHViolation as exc:
            h_failures += 1
            cases += 1
            records.append(
                {
                    "kind": "case",
                    "identity": f"composed:{label}",
                    "dims": {},
                    "sample_index": index,
                    "passed": False,
                    "status": "property-H-failed",
                    "detail": str(exc),
                }
            )
            continue
        policy = _policy_for(composed, config)
        ctx = make_context({}, bases)
        lhs_value, lhs_diag = evaluate_in_context(composed.lhs, ctx, policy)
        rhs_value, rhs_diag = evaluate_in_context(composed.rhs, ctx, policy)
        with mp.workprec(bases.prec):
            abs_error = abs(lhs_value - rhs_value)
            rel_error = abs_error / max(abs(lhs_value), abs(rhs_value), _REL_FLOOR)
        ok = bool(rel_error <= tolerance)
        cases += 1
        passed += int(ok)
        worst = max(worst, rel_error)
        records.append(
            {
                "kind": "case",
                "identity": composed.id,
                "dims": {},
                "sample_index": index,
                "passed": ok,
                "status": "ok",
                "rel_error": report.value_str(rel_error),
                "abs_error": report.value_str(abs_error),
                "tolerance": report.value_str(tolerance),
                "lhs": report.complex_dict(lhs_value),
                "rhs": report.complex_dict(rhs_value),
                "lhs_shells": lhs_diag.shells,
                "rhs_shells": rhs_diag.shells,
                "lhs_converged": lhs_diag.converged,
                "rhs_converged": rhs_diag.converged,
                "bases": {
                    "q": report.value_str(bases.q),
                    "h": report.value_str(bases.h),
                    "t": report.value_str(bases.t),
                    "precision": bases.prec,
                },
            }
        )
    records.append(
        {
            "kind": "summary",
            "identity": f"composed:{label}",
            "cases": cases,
            "passed": passed,
            "failed": cases - passed,
            "worst_rel_error": report.value_str(worst),
            "wall_ms": round((time.perf_counter() - started) * 1000, 3),
        }
    )
    if h_failures:
        exit_code = EXIT_PROPERTY_H_FAILED
    elif passed != cases:
        exit_code = EXIT_VERIFICATION_FAILED
    else:
        exit_code = EXIT_OK
    records.append(_total(cases, passed, exit_code))
    return records, exit_code


def _header(config: RunConfig) -> dict:
    return {
        "kind": "header",
        "schema_version": report.SCHEMA_VERSION,
        "tool": "qheine",
        "version": __version__,
        "mode": config.mode,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "config": config.to_dict(),
    }


def _total(cases: int, passed: int, exit_code: int) -> dict:
    return {
        "kind": "total",
        "cases": cases,
        "passed": passed,
        "failed": cases - passed,
        "exit_code": exit_code,
    }


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "export-catalog":
        text = json.dumps(catalog.catalog_document(), indent=2, sort_keys=True) + "\n"
        _write(text, args.out)
        return EXIT_OK
    try:
        config = config_from_args(args)
    except (UnknownIdentity, InvalidConfig) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    mp.prec = config.precision
    try:
        if config.mode == "verify":
            records, exit_code = run_verify(config)
        else:
            records, exit_code = run_compose(config)
    except (UnknownIdentity, InvalidConfig) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except QHeineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    _write(report.render(records, config.report), config.out)
    return exit_code


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
