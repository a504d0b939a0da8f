"""
Loewner-BT CLI
==============

Command-line interface for non-intrusive balanced truncation.

Commands
--------
sample
    Sample a state-space model at conjugate-paired points.
reduce
    Build a reduced model from a sample file.
hsv
    Print and write the Hankel-like values of a sample file.
compare
    Relative errors of intrusive, sampled and QuadBT models per order.
synth
    Write a random stable (optionally passive) model.

Example
-------
Command-line usage::

    # RHP samples at 1e-5 + j omega and their conjugates
    $ loewner-bt sample --model m.json --right log:1e-3:1e3:150 \\
          --left log:1e-3:1e3:150 --offset 1e-5 -o samples.json

    # ADI-mode PR reduction to order 10
    $ loewner-bt reduce --samples samples.json --variant pr --order 10

    # The printed illustration model, all variants at order 3
    $ loewner-bt compare --example --orders 3

Exit codes: 0 on success, 2 for input and validation errors, 3 for
numerical failures.

See Also
--------
Click : Python composable command line interface toolkit.
Rich : Python library for rich text and formatting.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import click
import numpy as np
from rich.console import Console

from src import __version__
from src.core.base_variant import Mode, Route, Variant, VariantConfig
from src.core.config import AppConfig, load_config
from src.core.exceptions import (
    ConfigError,
    GammaOutOfRange,
    LoewnerBTError,
    ModePointMismatch,
    ReductionError,
    SamplingError,
)
from src.core.logging import level_from_flags, setup_logging
from src.interpolation.epsilon import EpsilonContext
from src.interpolation.pork import read_zeta_file
from src.reduction.compare import compare_variants
from src.reduction.pipeline import infer_mode, prepare_reduction, reduce_samples
from src.reporters import CLIReporter, CSVReporter, JSONReporter
from src.sampling.models import printed_example, synth_model
from src.sampling.samples import (
    SampleSet,
    conjugate_points,
    generate_samples,
    mirror_points,
    parse_grid,
    read_samples,
)
from src.sampling.statespace import StateSpace, read_model

# Global console instance
console = Console()

EXIT_INPUT = 2
EXIT_NUMERICAL = 3
INPUT_ERRORS = (SamplingError, ConfigError, ReductionError, GammaOutOfRange, ModePointMismatch)

VARIANT_CHOICES = [v.value for v in Variant]
MODE_CHOICES = [m.value for m in Mode]
EPS_CONTEXTS = [c.value for c in EpsilonContext]
MIRROR = "mirror"


# =============================================================================
# CLI Utilities
# =============================================================================


def parse_order(
    ctx: click.Context,
    param: click.Parameter,
    value: Optional[str],
) -> Optional[Union[int, float]]:
    """
    Parse ``--order``: an integer order or an energy threshold in (0, 1).

    Range checks are left to :class:`VariantConfig` so that ``--order 0``
    fails with ``OrderOutOfRange``.
    """
    if value is None:
        return None
    text = value.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError as e:
        raise click.BadParameter(f"'{value}' is neither an order nor a threshold") from e


def parse_orders(
    ctx: click.Context,
    param: click.Parameter,
    value: str,
) -> List[int]:
    """Parse ``--orders`` as ``3``, ``1,2,5`` or ``1-20``."""
    orders: List[int] = []
    try:
        for part in value.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part:
                lo, hi = (int(x) for x in part.split("-", 1))
                orders.extend(range(lo, hi + 1))
            else:
                orders.append(int(part))
    except ValueError as e:
        raise click.BadParameter(f"Invalid order list '{value}'") from e
    if not orders:
        raise click.BadParameter("No orders specified")
    return sorted(set(orders))


def parse_variants(
    ctx: click.Context,
    param: click.Parameter,
    value: str,
) -> List[str]:
    """Parse a comma-separated variant list; ``all`` selects every variant."""
    names = [v.strip().lower() for v in value.split(",") if v.strip()]
    if names == ["all"]:
        return list(VARIANT_CHOICES)
    unknown = [n for n in names if n not in VARIANT_CHOICES]
    if unknown or not names:
        raise click.BadParameter(
            f"Unknown variants {unknown}; choose from {', '.join(VARIANT_CHOICES)} or 'all'"
        )
    return names


def read_grid(spec: str) -> np.ndarray:
    """Grid spec, or a file of frequencies separated by whitespace or commas."""
    path = Path(spec)
    if path.is_file():
        text = path.read_text(encoding="utf-8")
        return parse_grid(",".join(text.replace(",", " ").split()))
    return parse_grid(spec)


def sample_points(spec: str, model: StateSpace, offset: float) -> np.ndarray:
    """Points of a grid spec; 'mirror' mirrors the model's poles and ignores the offset."""
    if spec.strip().lower() == MIRROR:
        return mirror_points(model)
    return conjugate_points(read_grid(spec), offset)


def handle_error(error: Exception) -> None:
    """
    Display error message and exit.

    Input and validation errors exit with 2, numerical failures with 3.
    """
    if isinstance(error, click.ClickException):
        raise error
    if isinstance(error, KeyboardInterrupt):
        console.print("\n[yellow]Operation cancelled by user.[/yellow]")
        sys.exit(130)
    if isinstance(error, INPUT_ERRORS):
        exit_code = EXIT_INPUT
    elif isinstance(error, LoewnerBTError):
        exit_code = EXIT_NUMERICAL
    else:
        exit_code = 1
    console.print(f"\n[red bold]Error:[/red bold] {error}")
    hint = getattr(error, "details", {}).get("hint")
    if hint:
        console.print(f"[yellow]Hint:[/yellow] {hint}")
    sys.exit(exit_code)


def variant_options(func: Any) -> Any:
    """Options shared by the commands that run a variant."""
    options = [
        click.option(
            "--variant",
            type=click.Choice(VARIANT_CHOICES),
            default="bt",
            show_default=True,
            help="Balanced-truncation variant",
        ),
        click.option(
            "--mode",
            type=click.Choice(MODE_CHOICES),
            default=None,
            help="adi (right-half-plane points) or ddp (imaginary axis); inferred from the points",
        ),
        click.option("--eps", type=float, default=None, help="Shift offset epsilon for imaginary-axis points"),
        click.option(
            "--eps-auto",
            type=click.Choice(EPS_CONTEXTS),
            default=None,
            help="Choose epsilon from the sampled frequencies for this approximation",
        ),
        click.option("--gamma", type=float, default=None, help="H-infinity level (> 1) for hinf"),
        click.option("--fast-path", is_flag=True, help="Use the block-diagonal closed forms"),
        click.option(
            "--route",
            type=click.Choice([r.value for r in Route]),
            default=Route.AUTO.value,
            show_default=True,
            help="direct: feed the projected realizations to the model Gramian equations",
        ),
        click.option(
            "--zeta-rule",
            type=click.Choice(["pole", "modal"]),
            default="pole",
            show_default=True,
            help="Free parameter for imaginary-axis points",
        ),
        click.option(
            "--zeta-file",
            type=click.Path(dir_okay=False),
            default=None,
            help="JSON file with the free parameters (zeta_right, optional zeta_left)",
        ),
        click.option("--example-zeta", is_flag=True, help="Use the printed free parameter of the example"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def build_config(
    samples: SampleSet,
    variant: str,
    mode: Optional[str],
    eps: Optional[float],
    eps_auto: Optional[str],
    gamma: Optional[float],
    fast_path: bool,
    route: str,
    zeta_rule: str,
    zeta_file: Optional[str],
    example_zeta: bool,
    order: Optional[Union[int, float]] = None,
) -> VariantConfig:
    """Assemble a :class:`VariantConfig` from command-line values."""
    if eps is not None and eps_auto is not None:
        raise click.UsageError("--eps and --eps-auto are mutually exclusive")
    if zeta_file is not None and example_zeta:
        raise click.UsageError("--zeta-file and --example-zeta are mutually exclusive")
    zeta_right = zeta_left = None
    if zeta_file is not None:
        zeta_right, zeta_left = read_zeta_file(zeta_file)
    elif example_zeta:
        setup = printed_example()
        zeta_right, zeta_left = setup.zeta_right, setup.zeta_left
    return VariantConfig(
        variant=variant,
        mode=mode or infer_mode(samples),
        eps=eps,
        gamma=gamma,
        fast_path=fast_path,
        order=order,
        route=route,
        zeta_rule=zeta_rule,
        zeta_right=zeta_right,
        zeta_left=zeta_left,
    )


def _example_samples(app: AppConfig) -> Tuple[StateSpace, SampleSet]:
    setup = printed_example()
    samples = generate_samples(
        setup.model, setup.right_points, setup.left_points, app.performance.max_workers
    )
    samples.metadata["source"] = "printed example"
    return setup.model, samples


def _output_path(app: AppConfig, output: Optional[str], default_name: str) -> str:
    if output is not None:
        return output
    return str(Path(app.output.directory) / default_name)


# =============================================================================
# Main CLI Group
# =============================================================================


@click.group()
@click.version_option(version=__version__, prog_name="loewner-bt")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging")
@click.option("--quiet", "-q", is_flag=True, help="Warnings and errors only")
@click.option("--log-file", default=None, help="Also write the log to this file")
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="YAML configuration (default: ./config.yml, then ~/.loewner-bt/config.yml)",
)
@click.pass_context
def cli(
    ctx: click.Context,
    verbose: bool,
    quiet: bool,
    log_file: Optional[str],
    config_path: Optional[str],
) -> None:
    """
    Loewner-BT: Non-Intrusive Balanced Truncation

    Builds reduced-order models from transfer-function samples with seven
    balanced-truncation variants: bt, lqg, hinf, pr, br, sw and bst.

    \b
    QUICK START:
        loewner-bt synth --n 20 --passive -o m.json
        loewner-bt sample --model m.json --right log:1e-2:1e2:20 --left log:1.1e-2:1.1e2:20 --offset 1e-3
        loewner-bt reduce --samples samples.json --variant pr --order 6
        loewner-bt compare --example --orders 3
    """
    setup_logging(level_from_flags(verbose, quiet), log_file)
    try:
        ctx.obj = load_config(config_path)
    except ConfigError as e:
        handle_error(e)


# =============================================================================
# Commands
# =============================================================================


@cli.command("sample")
@click.option("--model", "model_path", type=click.Path(dir_okay=False), default=None, help="State-space model JSON")
@click.option("--example", is_flag=True, help="Sample the printed example at its printed points")
@click.option("--right", default=None, help="Right frequencies: log:a:b:n, lin:a:b:n, a list, a file, or 'mirror'")
@click.option("--left", default=None, help="Left frequencies (same forms)")
@click.option("--offset", default=0.0, type=float, show_default=True, help="Real part of every point")
@click.option("--output", "-o", default=None, help="Sample file (default: samples.json)")
@click.pass_obj
def sample_cmd(
    app: AppConfig,
    model_path: Optional[str],
    example: bool,
    right: Optional[str],
    left: Optional[str],
    offset: float,
    output: Optional[str],
) -> None:
    """
    Sample a model at conjugate-paired points.

    Each frequency omega gives the points offset + j omega and
    offset - j omega; coincident right and left points get derivative
    samples.

    \b
    EXAMPLES:
        # Right-half-plane samples for ADI mode
        loewner-bt sample --model m.json --right log:1e-3:1e3:150 --left log:1e-3:1e3:150 --offset 1e-5

        # Imaginary-axis samples for DDP mode
        loewner-bt sample --model m.json --right log:1e-3:1e3:150 --left log:1.1e-3:1.1e3:150

        # Shifts at the mirror images of the model's poles
        loewner-bt sample --model m.json --right mirror --left mirror

        # The printed example
        loewner-bt sample --example -o example.json
    """
    cli_reporter = CLIReporter(console)
    if example == (model_path is not None):
        raise click.UsageError("Give exactly one of --model and --example")
    if not example and (right is None or left is None):
        raise click.UsageError("--right and --left are required with --model")
    if offset < 0:
        raise click.BadParameter("offset must be nonnegative", param_hint="--offset")

    try:
        run_config: Dict[str, Any] = {"command": "sample"}
        if example:
            _, samples = _example_samples(app)
            run_config["example"] = True
        else:
            assert model_path is not None and right is not None and left is not None
            model = read_model(model_path)
            samples = generate_samples(
                model,
                sample_points(right, model, offset),
                sample_points(left, model, offset),
                app.performance.max_workers,
            )
            run_config.update({"model": model_path, "right": right, "left": left, "offset": offset})

        path = JSONReporter(_output_path(app, output, "samples.json")).report_samples(samples, run_config)
        cli_reporter.print_message(f"Sampled {samples.v} right and {samples.w} left points")
        cli_reporter.print_written([path])

    except Exception as e:
        handle_error(e)


@cli.command("reduce")
@click.option("--samples", "samples_path", required=True, type=click.Path(dir_okay=False), help="Sample file")
@variant_options
@click.option("--order", callback=parse_order, default=None, help="Reduced order, or energy threshold in (0, 1)")
@click.option("--output", "-o", default=None, help="ROM file (default: rom.json)")
@click.option("--hsv-output", default=None, help="Hankel-value CSV (default: hsv.csv)")
@click.pass_obj
def reduce_cmd(
    app: AppConfig,
    samples_path: str,
    variant: str,
    mode: Optional[str],
    eps: Optional[float],
    eps_auto: Optional[str],
    gamma: Optional[float],
    fast_path: bool,
    route: str,
    zeta_rule: str,
    zeta_file: Optional[str],
    example_zeta: bool,
    order: Optional[Union[int, float]],
    output: Optional[str],
    hsv_output: Optional[str],
) -> None:
    """
    Build a reduced model from a sample file.

    Writes the ROM as JSON and its Hankel-like values as CSV; both embed
    the resolved run configuration.

    In ADI mode the reduced model is stable, and keeps the structure of
    pr, br, sw or bst, only when the shifts capture the model's spectrum;
    poorly placed shifts can give unstable reduced models. Sampling with
    --right mirror --left mirror places them at the mirrored poles.

    \b
    EXAMPLES:
        # ADI mode, PR variant
        loewner-bt reduce --samples samples.json --variant pr --order 10

        # Imaginary-axis data with automatic epsilon
        loewner-bt reduce --samples axis.json --variant bst --eps-auto gramian --order 1e-6

        # The printed example with its printed free parameter
        loewner-bt reduce --samples example.json --example-zeta --order 3
    """
    cli_reporter = CLIReporter(console)

    try:
        samples = read_samples(samples_path)
        config = build_config(
            samples, variant, mode, eps, eps_auto, gamma, fast_path, route, zeta_rule,
            zeta_file, example_zeta, order,
        )
        result = reduce_samples(samples, config, eps_context=eps_auto, app=app)

        run_config = {"command": "reduce", "samples": samples_path, **result.run_config()}
        rom_path = JSONReporter(_output_path(app, output, "rom.json")).report_rom(result.rom, run_config)
        csv_reporter = CSVReporter(_output_path(app, hsv_output, "hsv.csv"), app.output.float_digits)
        hsv_path = csv_reporter.report_hankel_values(result.hankel_values, run_config)
        cli_reporter.report_reduction(result, [rom_path, hsv_path])

    except Exception as e:
        handle_error(e)


@cli.command("hsv")
@click.option("--samples", "samples_path", required=True, type=click.Path(dir_okay=False), help="Sample file")
@variant_options
@click.option("--output", "-o", default=None, help="Hankel-value CSV (default: hsv.csv)")
@click.pass_obj
def hsv_cmd(
    app: AppConfig,
    samples_path: str,
    variant: str,
    mode: Optional[str],
    eps: Optional[float],
    eps_auto: Optional[str],
    gamma: Optional[float],
    fast_path: bool,
    route: str,
    zeta_rule: str,
    zeta_file: Optional[str],
    example_zeta: bool,
    output: Optional[str],
) -> None:
    """
    Print and write the Hankel-like values of a sample file.

    \b
    EXAMPLES:
        loewner-bt hsv --samples samples.json --variant lqg
    """
    cli_reporter = CLIReporter(console)

    try:
        samples = read_samples(samples_path)
        config = build_config(
            samples, variant, mode, eps, eps_auto, gamma, fast_path, route, zeta_rule,
            zeta_file, example_zeta,
        )
        prepared = prepare_reduction(samples, config, eps_context=eps_auto, app=app)
        values = prepared.hankel_values()

        run_config = {"command": "hsv", "samples": samples_path, **prepared.config.to_dict()}
        if prepared.epsilon_plan is not None:
            run_config["epsilon_plan"] = prepared.epsilon_plan.to_dict()
        csv_reporter = CSVReporter(_output_path(app, output, "hsv.csv"), app.output.float_digits)
        path = csv_reporter.report_hankel_values(values, run_config)
        cli_reporter.print_hankel_values(values)
        cli_reporter.print_written([path])

    except Exception as e:
        handle_error(e)


@cli.command("compare")
@click.option("--model", "model_path", type=click.Path(dir_okay=False), default=None, help="State-space model JSON")
@click.option("--example", is_flag=True, help="Use the printed example, its points, gamma and free parameter")
@click.option("--samples", "samples_path", type=click.Path(dir_okay=False), default=None, help="Sample file of the model")
@click.option(
    "--variants",
    callback=parse_variants,
    default="all",
    show_default=True,
    help="Comma-separated variants or 'all'",
)
@click.option("--orders", callback=parse_orders, default="1-5", show_default=True, help="Orders: 3, 1,2,5 or 1-20")
@variant_options
@click.option(
    "--quadrature",
    type=click.Choice(["linear", "exponential"]),
    default="exponential",
    show_default=True,
    help="Trapezoidal rule of the QuadBT weights",
)
@click.option("--output", "-o", default=None, help="Comparison CSV (default: compare.csv)")
@click.pass_obj
def compare_cmd(
    app: AppConfig,
    model_path: Optional[str],
    example: bool,
    samples_path: Optional[str],
    variants: List[str],
    orders: List[int],
    variant: str,
    mode: Optional[str],
    eps: Optional[float],
    eps_auto: Optional[str],
    gamma: Optional[float],
    fast_path: bool,
    route: str,
    zeta_rule: str,
    zeta_file: Optional[str],
    example_zeta: bool,
    quadrature: str,
    output: Optional[str],
) -> None:
    """
    Compare intrusive, sampled and QuadBT reductions of a model.

    Writes one row per variant and order with the relative H-infinity
    errors and the relative difference of the leading Hankel-like values.
    QuadBT applies to BT on imaginary-axis samples. The --variant option
    is ignored here; use --variants.

    \b
    EXAMPLES:
        # The printed example at order 3 (14 errors)
        loewner-bt compare --example --orders 3

        # A synthetic model and its samples
        loewner-bt compare --model m.json --samples samples.json --variants bt,pr --orders 1-10
    """
    cli_reporter = CLIReporter(console)
    if example == (model_path is not None):
        raise click.UsageError("Give exactly one of --model and --example")
    if model_path is not None and samples_path is None:
        raise click.UsageError("--samples is required with --model")

    try:
        run_config: Dict[str, Any] = {"command": "compare", "orders": orders}
        if example:
            setup = printed_example()
            model, samples = _example_samples(app)
            if samples_path is not None:
                samples = read_samples(samples_path)
            gamma = setup.gamma if gamma is None else gamma
            example_zeta = zeta_file is None
            run_config["example"] = True
        else:
            assert model_path is not None and samples_path is not None
            model = read_model(model_path)
            samples = read_samples(samples_path)
            run_config.update({"model": model_path, "samples": samples_path})

        if "hinf" in variants and gamma is None:
            cli_reporter.print_warnings(["hinf skipped: pass --gamma to include it"])
            variants = [v for v in variants if v != "hinf"]
        if not variants:
            raise click.UsageError("No variants left to compare")

        base = build_config(
            samples, variants[0], mode, eps, eps_auto, gamma, fast_path, route, zeta_rule,
            zeta_file, example_zeta,
        )
        with cli_reporter.create_progress() as progress:
            progress.add_task("Comparing pipelines...", total=None)
            rows = compare_variants(model, samples, variants, orders, base, eps_auto, app, quadrature)

        run_config.update(base.to_dict())
        run_config.pop("variant")
        run_config.update({"variants": variants, "quadrature": quadrature})
        csv_reporter = CSVReporter(_output_path(app, output, "compare.csv"), app.output.float_digits)
        path = csv_reporter.report_comparison(rows, run_config)
        cli_reporter.report_comparison(rows, [path])

    except Exception as e:
        handle_error(e)


@cli.command("synth")
@click.option("--n", "n", type=int, default=None, help="State dimension")
@click.option("--m", "m", type=int, default=1, show_default=True, help="Inputs")
@click.option("--p", "p", type=int, default=1, show_default=True, help="Outputs")
@click.option("--seed", type=int, default=0, show_default=True, help="Random seed")
@click.option("--passive", is_flag=True, help="Square, passive, contractive and minimum phase")
@click.option("--example", is_flag=True, help="Write the printed 8th-order example instead")
@click.option("--output", "-o", default=None, help="Model file (default: model.json)")
@click.pass_obj
def synth_cmd(
    app: AppConfig,
    n: Optional[int],
    m: int,
    p: int,
    seed: int,
    passive: bool,
    example: bool,
    output: Optional[str],
) -> None:
    """
    Write a random stable model.

    \b
    EXAMPLES:
        loewner-bt synth --n 8 --seed 1 --passive -o m.json
        loewner-bt synth --n 40 --m 2 --p 2 --seed 3
    """
    cli_reporter = CLIReporter(console)
    if example == (n is not None):
        raise click.UsageError("Give exactly one of --n and --example")
    if n is not None and (n < 1 or m < 1 or p < 1):
        raise click.BadParameter("n, m and p must be positive")

    try:
        if example:
            model = printed_example().model
            run_config: Dict[str, Any] = {"command": "synth", "example": True}
        else:
            assert n is not None
            model = synth_model(n, m, p, seed=seed, passive=passive)
            run_config = {"command": "synth", "n": n, "m": m, "p": p, "seed": seed, "passive": passive}

        path = JSONReporter(_output_path(app, output, "model.json")).report_model(model, run_config)
        cli_reporter.print_message(f"Model with n={model.n}, m={model.m}, p={model.p}")
        cli_reporter.print_written([path])

    except Exception as e:
        handle_error(e)


# =============================================================================
# Entry Point
# =============================================================================


def main() -> None:
    """Main entry point for the CLI."""
    cli()


if __name__ == "__main__":
    main()
