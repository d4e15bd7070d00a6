"""Command-line front end for the del Pezzo mirror toolkit.

One subcommand per pipeline: singular-fiber tables, period mirror checks,
critical values, vanishing-cycle data, mutation verification, junction
lattice decompositions, torus-model cycle sequences, interpolation sweeps,
and direct word application.  Exit codes follow a CI-friendly contract:
0 when every requested check passes, 2 when a verification fails, and 1
for usage or numeric errors.  All rational inputs cross the boundary as
exact "num/den" strings; identical configurations produce byte-identical
JSON, CSV, and SVG artifacts.  The ``DPMIRROR_THREADS`` environment
variable caps worker counts for any parallel reduction; every pipeline is
deterministic regardless of its value.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .homology import (
    extended_vanishing_classes,
    reference_vanishing_classes,
    seifert_gram,
)
from .interfam import FamilySpec, render_svg, sweep, transposition_word
from .pathnum import NumericsError
from .periods import mirror_check
from .pseudolattice import (
    MutationWord,
    PseudolatticeError,
    from_boundaries,
    ghs_sequences,
    ghs_target,
    mutate,
    standard_word_identity,
    verify_mutation_equivalence,
    word_identity,
)
from .rootlattice import (
    IntLattice,
    fundamental_weights,
    hyperbolic_model,
    kernel_decomposition,
    kuznetsov_basis,
)
from .vancycles import critical_values_ordered, render_delta_svg, vanishing_classes
from .weierstrass import catalog, fiber_configuration

__all__ = ["RunConfig", "main", "parse_args", "run"]

EXIT_PASS = 0
EXIT_USAGE = 1
EXIT_FAIL = 2

THREAD_ENV = "DPMIRROR_THREADS"

COMMANDS = (
    "fibers",
    "mirror",
    "critvals",
    "cycles",
    "verify",
    "junction",
    "ghs",
    "interpolate",
    "mutate",
)


class UsageError(ValueError):
    """A malformed invocation: bad flag, bad value, bad combination."""


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures routed through UsageError."""

    def error(self, message: str) -> None:  # noqa: D401 - argparse hook
        raise UsageError(message)


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational written as ``num`` or ``num/den``.

    Decimal points are rejected on purpose: configuration values never
    pass through floating point.
    """
    body = text.strip()
    sign = 1
    if body.startswith(("+", "-")):
        sign = -1 if body[0] == "-" else 1
        body = body[1:]
    num, slash, den = body.partition("/")
    if not num.isdigit() or (slash and not den.isdigit()):
        raise UsageError(f"not an exact rational: {text!r}")
    if slash and int(den) == 0:
        raise UsageError(f"zero denominator: {text!r}")
    return Fraction(sign * int(num), int(den) if slash else 1)


@dataclass(frozen=True)
class RunConfig:
    """One fully parsed invocation."""

    command: str
    d: int  # surface degree (the source degree for interpolations)
    epsilon: Fraction  # perturbation parameter for perturbed models
    order: int  # power-series truncation order
    tol: Fraction  # reporting tolerance carried into artifacts
    out: Optional[str]  # output path; None prints to stdout
    fmt: str  # json, csv, or svg
    word: Optional[str]  # mutation word for the mutate subcommand
    variant: Optional[str]  # exact or perturbed model selection
    seed: int  # reserved for search tie-breaks; pipelines are deterministic
    threads: int  # worker cap from the environment

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.d not in (1, 2, 3):
            raise UsageError("--d must be 1, 2, or 3")
        if self.epsilon <= 0:
            raise UsageError("--epsilon must be positive")
        if self.order < 1:
            raise UsageError("--order must be at least 1")
        if self.tol <= 0:
            raise UsageError("--tol must be positive")
        if self.fmt not in ("json", "csv", "svg"):
            raise UsageError(f"unknown format {self.fmt!r}")
        if self.variant not in (None, "exact", "perturbed"):
            raise UsageError(f"unknown variant {self.variant!r}")
        if self.threads < 1:
            raise UsageError(f"{THREAD_ENV} must be a positive integer")


def _thread_count() -> int:
    raw = os.environ.get(THREAD_ENV, "1")
    if not raw.isdigit() or int(raw) < 1:
        raise UsageError(f"{THREAD_ENV} must be a positive integer, got {raw!r}")
    return int(raw)


def parse_args(argv: Sequence[str]) -> RunConfig:
    """Parse an argument vector into an exact configuration."""
    parser = _Parser(prog="dpmirror", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name, add_help=True)
        cmd.add_argument("--d", type=int, required=True,
                         help="surface degree (interpolate: source degree)")
        cmd.add_argument("--epsilon", default="1/100",
                         help='perturbation as an exact rational "num/den"')
        cmd.add_argument("--order", type=int, default=12,
                         help="series truncation order")
        cmd.add_argument("--tol", default="1/1000000",
                         help='reporting tolerance as an exact rational')
        cmd.add_argument("--out", default=None, help="output path")
        cmd.add_argument("--format", dest="fmt", default="json",
                         choices=("json", "csv", "svg"))
        cmd.add_argument("--word", default=None,
                         help='mutation word such as "L1 R3"')
        cmd.add_argument("--variant", default=None,
                         choices=("exact", "perturbed"),
                         help="model selection where applicable")
        cmd.add_argument("--seed", type=int, default=0,
                         help="tie-break seed for searches")
    space = parser.parse_args(argv)
    return RunConfig(
        command=space.command,
        d=space.d,
        epsilon=parse_rational(space.epsilon),
        order=space.order,
        tol=parse_rational(space.tol),
        out=space.out,
        fmt=space.fmt,
        word=space.word,
        variant=space.variant,
        seed=space.seed,
        threads=_thread_count(),
    )


# ---------------------------------------------------------------------------
# serialization helpers


def _json_text(payload: Dict[str, object]) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _fraction_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _pair(z: complex) -> List[float]:
    return [z.real, z.imag]


def _require_format(config: RunConfig, *allowed: str) -> None:
    if config.fmt not in allowed:
        raise UsageError(
            f"{config.command} supports formats {', '.join(allowed)}; "
            f"got {config.fmt}"
        )


def _model_for(config: RunConfig, default_variant: str):
    variant = config.variant or default_variant
    if variant == "exact":
        return catalog(config.d), variant
    return catalog(config.d, config.epsilon), variant


# ---------------------------------------------------------------------------
# subcommands


def _cmd_fibers(config: RunConfig) -> Tuple[int, str]:
    _require_format(config, "json", "csv")
    model, variant = _model_for(config, "exact")
    table = fiber_configuration(model)
    if config.fmt == "csv":
        lines = ["place,type,count"]
        for p in table.placements:
            lines.append(f"{p.place_string()},{p.fiber.label},{p.count}")
        return EXIT_PASS, "\n".join(lines) + "\n"
    payload = {"d": config.d, "variant": variant, **table.to_json()}
    return EXIT_PASS, _json_text(payload)


def _cmd_mirror(config: RunConfig) -> Tuple[int, str]:
    _require_format(config, "json")
    report = mirror_check(config.d, config.order)
    payload = {
        "d": report.d,
        "order": report.order,
        "alpha": _fraction_text(report.alpha),
        "passed": report.passed,
        "first_mismatch": report.first_mismatch,
        "regularized_quantum": report.regularized.to_json(),
        "classical": report.classical.to_json(),
    }
    return (EXIT_PASS if report.passed else EXIT_FAIL), _json_text(payload)


def _cmd_critvals(config: RunConfig) -> Tuple[int, str]:
    _require_format(config, "json", "csv")
    model, variant = _model_for(config, "perturbed")
    values = critical_values_ordered(model)
    if config.fmt == "csv":
        lines = ["index,re,im"]
        for index, z in enumerate(values):
            lines.append(f"{index},{z.real:.16e},{z.imag:.16e}")
        return EXIT_PASS, "\n".join(lines) + "\n"
    payload = {
        "d": config.d,
        "variant": variant,
        "count": len(values),
        "values": [_pair(z) for z in values],
    }
    return EXIT_PASS, _json_text(payload)


def _cmd_cycles(config: RunConfig) -> Tuple[int, str]:
    _require_format(config, "json", "csv", "svg")
    data = vanishing_classes(config.d, config.epsilon)
    if config.fmt == "svg":
        return EXIT_PASS, render_delta_svg(data)
    if config.fmt == "csv":
        lines = ["index,m,n"]
        for index, cls in enumerate(data.classes):
            lines.append(f"{index},{cls.m},{cls.n}")
        return EXIT_PASS, "\n".join(lines) + "\n"
    payload = dict(data.to_json())
    payload["seifert_gram"] = seifert_gram(data.classes)
    return EXIT_PASS, _json_text(payload)


def _cmd_verify(config: RunConfig) -> Tuple[int, str]:
    _require_format(config, "json")
    report = verify_mutation_equivalence(config.d)
    code = EXIT_PASS if report.passed else EXIT_FAIL
    return code, _json_text(dict(report.to_json()))


def _cmd_junction(config: RunConfig) -> Tuple[int, str]:
    _require_format(config, "json")
    lattice, _, charge = from_boundaries(reference_vanishing_classes(config.d))
    decomposition = kernel_decomposition(lattice, charge)
    surface = kuznetsov_basis(config.d)
    ell = 9 - config.d
    ambient = hyperbolic_model(ell)
    weights = fundamental_weights(
        IntLattice(ambient.gram), ambient.ambient_simple_roots
    )
    passed = decomposition.passed and surface.passed and ambient.passed
    payload = {
        "d": config.d,
        "ell": ell,
        "kernel_decomposition": decomposition.to_json(),
        "surface_basis": surface.to_json(),
        "hyperbolic_model": ambient.to_json(),
        "fundamental_weights": [list(w) for w in weights],
        "passed": passed,
    }
    return (EXIT_PASS if passed else EXIT_FAIL), _json_text(payload)


def _cmd_ghs(config: RunConfig) -> Tuple[int, str]:
    _require_format(config, "json")
    ell = 9 - config.d
    sequence = ghs_sequences(ell)
    target = ghs_target(ell)
    matches = len(sequence) == len(target) and all(
        s == t or s == -t for s, t in zip(sequence, target)
    )
    payload = {
        "d": config.d,
        "ell": ell,
        "sequence": [[c.m, c.n] for c in sequence],
        "target": [[c.m, c.n] for c in target],
        "matches_up_to_sign": matches,
    }
    return (EXIT_PASS if matches else EXIT_FAIL), _json_text(payload)


def _cmd_interpolate(config: RunConfig) -> Tuple[int, str]:
    _require_format(config, "json", "csv", "svg")
    if config.d not in (2, 3):
        raise UsageError("interpolate runs between degrees d and d-1; --d "
                         "must be 2 or 3")
    target = config.d - 1
    family = FamilySpec.between_degrees(config.d, target, config.epsilon)
    trajectories = sweep(family)
    if config.fmt == "svg":
        return EXIT_PASS, render_svg(trajectories)
    if config.fmt == "csv":
        return EXIT_PASS, trajectories.to_csv()
    warning: Optional[str] = None
    word_text: Optional[str] = None
    validated = False
    try:
        word = transposition_word(trajectories)
        word_text = str(word)
        lattice, basis, _ = from_boundaries(extended_vanishing_classes(target))
        validated = word_identity(
            lattice, basis, word, standard_word_identity(target)[0]
        )
        if not validated:
            warning = (
                "heuristic word does not reduce to the reference word under "
                "the exact mutation identities"
            )
    except NumericsError as exc:
        warning = f"braid reading failed: {exc}"
    if warning is not None:
        print(f"warning: {warning}", file=sys.stderr)
    last = len(trajectories.parameters) - 1
    payload = {
        "from_degree": config.d,
        "to_degree": target,
        "epsilon": _fraction_text(config.epsilon),
        "track_count": trajectories.track_count,
        "finite_start": trajectories.finite_count(0),
        "finite_end": trajectories.finite_count(last),
        "chart_switches": [[t, s] for t, s in trajectories.chart_switches],
        "word": word_text,
        "validated": validated,
        "warning": warning,
    }
    return EXIT_PASS, _json_text(payload)


def _cmd_mutate(config: RunConfig) -> Tuple[int, str]:
    _require_format(config, "json")
    if not config.word:
        raise UsageError("mutate requires --word")
    try:
        word = MutationWord.parse(config.word)
    except (PseudolatticeError, ValueError) as exc:
        raise UsageError(f"unparseable word {config.word!r}: {exc}") from exc
    lattice, basis, charge = from_boundaries(
        extended_vanishing_classes(config.d)
    )
    initial = [[c.m, c.n] for c in charge.charges(basis)]
    try:
        final = mutate(lattice, basis, word)
    except PseudolatticeError as exc:
        payload = {
            "d": config.d,
            "word": str(word),
            "applied": False,
            "error": str(exc),
        }
        return EXIT_FAIL, _json_text(payload)
    payload = {
        "d": config.d,
        "word": str(word),
        "applied": True,
        "boundaries_initial": initial,
        "boundaries_final": [[c.m, c.n] for c in charge.charges(final)],
        "basis_final": [list(v) for v in final.vectors],
    }
    return EXIT_PASS, _json_text(payload)


_DISPATCH = {
    "fibers": _cmd_fibers,
    "mirror": _cmd_mirror,
    "critvals": _cmd_critvals,
    "cycles": _cmd_cycles,
    "verify": _cmd_verify,
    "junction": _cmd_junction,
    "ghs": _cmd_ghs,
    "interpolate": _cmd_interpolate,
    "mutate": _cmd_mutate,
}


def run(config: RunConfig) -> int:
    """Execute one configuration and emit its artifact; returns exit code."""
    code, artifact = _DISPATCH[config.command](config)
    if config.out is None:
        sys.stdout.write(artifact)
    else:
        with open(config.out, "w", encoding="utf-8") as handle:
            handle.write(artifact)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Console entry point; maps errors onto the exit-code contract."""
    try:
        config = parse_args(list(sys.argv[1:] if argv is None else argv))
        return run(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericsError, PseudolatticeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
