"""
Command-line interface for the spectral-lab library.

Usage:
    # Show help
    spectral-lab --help

    # Densities and moments (CSV by default)
    spectral-lab density --N 2 --measure c+p --points 5
    spectral-lab moments --N 2 --max-order 10
    spectral-lab paths --N 2 --n 10

    # Single quantities
    spectral-lab resistance --N 2 --x 12 --y 11
    spectral-lab eigvec --lambda golden- --len 50
    spectral-lab jacobi --N 2 --size 20
    spectral-lab lattice --d 2 --L 8

    # Verification suites (JSON report by default)
    spectral-lab verify all --seed 7
    spectral-lab verify walks --N 2 --trials 1000000 --seed 7

    # Version, spectrum intervals and suites
    spectral-lab info
"""

from __future__ import annotations

import logging
import math
import sys
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
import typer

from . import __version__
from .core import (
    VerifyConfig,
    format_word,
    jacobi_D,
    jacobi_D_omega,
    jacobi_perturbed_shift,
    jacobi_re_shift,
    parse_word,
    threads_from_env,
    tree_path_length,
)
from .core.config import (
    DEFAULT_QUADRATURE_NODES,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    MAX_BRANCHING,
)
from .core.graph import LatticeTorus
from .spectral.cyclic import DiscreteMeasure
from .spectral.lattice import dft_verify, frequencies, symbol
from .spectral.measures import (
    mu_c_density,
    mu_c_moment,
    mu_cp_density,
    perturbed_measure,
    semicircle_measure,
    spectrum_interval,
)
from .spectral.periodic import (
    MIN_PERIOD_LENGTH,
    detect_period,
    eigen_residual,
    eigvec_generate,
    energy_partial_sums,
    parse_eigenvalue,
)
from .spectral.resistance import covariance, resistance_dist
from .spectral.walks import WalkCounter, moment_chain
from .validation import ALL_SUITES, SUITES, run_suite

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.15g"
JSON_PRECISION = 15
INT64_LIMIT = 2**63

app = typer.Typer(
    name="spectral-lab",
    help="Spectral theory of graph Laplacians on N-ary trees and lattices.",
    add_completion=False,
)


class OutputFormat(str, Enum):
    csv = "csv"
    json = "json"


class ReportFormat(str, Enum):
    json = "json"
    text = "text"


class MeasureLabel(str, Enum):
    c = "c"
    cp = "c+p"


class JacobiKind(str, Enum):
    d_omega = "D_omega"
    d = "D"
    re_shift = "re_shift"
    perturbed = "perturbed"


SUITE_NAMES = [*SUITES, ALL_SUITES]
Suite = Enum("Suite", {name: name for name in SUITE_NAMES}, type=str)  # type: ignore[misc]


# --- Shared options and output ---
def _branching_option() -> Any:
    return typer.Option(..., "--N", min=1, help="Tree branching number N (children per vertex).")


def _format_option() -> Any:
    return typer.Option(OutputFormat.csv, "--format", "-f", help="Table format: csv or json.")


def _out_option() -> Any:
    return typer.Option(None, "--out", "-o", help="Write to this file instead of stdout.")


def _write(text: str, out: Path | None) -> None:
    if out is None:
        typer.echo(text, nl=not text.endswith("\n"))
    else:
        out.write_text(text, encoding="utf-8")
        logger.info("wrote %s", out)


def _emit_table(frame: pd.DataFrame, fmt: OutputFormat, out: Path | None) -> None:
    """CSV with a header row, or a JSON array of records; floats at 15 digits."""
    if fmt is OutputFormat.csv:
        text = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    else:
        text = frame.to_json(orient="records", double_precision=JSON_PRECISION, force_ascii=False)
    _write(text, out)


def _bad_parameter(exc: ValueError) -> typer.BadParameter:
    return typer.BadParameter(str(exc))


# --- Root callback ---
@app.callback()
def main(
    verbose: int = typer.Option(
        0,
        "--verbose",
        "-v",
        count=True,
        help="Log progress to stderr (-v info, -vv debug).",
    ),
) -> None:
    """Spectral theory of graph Laplacians on N-ary trees and lattices."""
    if verbose:
        logging.basicConfig(
            level=logging.DEBUG if verbose > 1 else logging.INFO,
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )


# --- Tables ---
@app.command("density")
def density(
    branching: int = _branching_option(),
    measure: MeasureLabel = typer.Option(
        MeasureLabel.cp, "--measure", "-m", help="Measure: c (semicircle) or c+p (perturbed)."
    ),
    points: int = typer.Option(101, "--points", "-n", min=2, help="Grid points on [-1, 1]."),
    fmt: OutputFormat = _format_option(),
    out: Path | None = _out_option(),
) -> None:
    """
    Density of μ_c or μ_{c+p} on an even grid of [-1, 1].

    Example:
        spectral-lab density --N 2 --measure c+p --points 5
    """
    x = np.linspace(-1.0, 1.0, points)
    values = mu_c_density(x) if measure is MeasureLabel.c else mu_cp_density(x, branching)
    _emit_table(pd.DataFrame({"x": x, "density": values}), fmt, out)


@app.command("moments")
def moments(
    branching: int = _branching_option(),
    max_order: int = typer.Option(16, "--max-order", "-n", min=0, help="Largest moment order."),
    measure: MeasureLabel = typer.Option(MeasureLabel.cp, "--measure", "-m", help="c or c+p."),
    nodes: int = typer.Option(
        DEFAULT_QUADRATURE_NODES, "--nodes", min=2, help="Gauss–Chebyshev nodes."
    ),
    fmt: OutputFormat = _format_option(),
    out: Path | None = _out_option(),
) -> None:
    """
    Moments computed independently, side by side.

    For μ_c: the Catalan value and quadrature. For μ_{c+p}: quadrature, the
    scaled path count N_T̃(n)/(2√N)ⁿ, the Jacobi moment of D_Ω and its
    reconstruction from path counts.
    """
    orders = range(max_order + 1)
    if measure is MeasureLabel.c:
        rule = semicircle_measure(nodes)
        frame = pd.DataFrame(
            {
                "n": list(orders),
                "exact": [float(mu_c_moment(n)) for n in orders],
                "quadrature": [rule.moment(n) for n in orders],
            }
        )
    else:
        rule = perturbed_measure(branching, nodes)
        counter = WalkCounter(branching, max_order)
        scale = 2.0 * math.sqrt(branching)
        chains = [moment_chain(branching, n) for n in orders]
        frame = pd.DataFrame(
            {
                "n": list(orders),
                "quadrature": [rule.moment(n) for n in orders],
                "paths_scaled": [counter.closed_walks(n) / scale**n for n in orders],
                "jacobi_d_omega": [c.jacobi for c in chains],
                "binomial_from_paths": [c.from_paths for c in chains],
            }
        )
    _emit_table(frame, fmt, out)


@app.command("paths")
def paths(
    branching: int = _branching_option(),
    steps: int = typer.Option(..., "--n", min=0, help="Largest walk length."),
    fmt: OutputFormat = _format_option(),
    out: Path | None = _out_option(),
) -> None:
    """
    Exact closed-walk counts N_T̃(0..n) and return probabilities N_T̃(k)/(N+1)^k.

    Example:
        spectral-lab paths --N 2 --n 10
    """
    try:
        counter = WalkCounter(branching, steps)
    except (ValueError, OverflowError) as exc:
        raise typer.BadParameter(str(exc)) from exc
    rows = range(steps + 1)
    exact = [counter.closed_walks(k) for k in rows]
    counts: list[int] | list[str] = (
        exact if max(exact) < INT64_LIMIT else [str(c) for c in exact]
    )
    frame = pd.DataFrame(
        {
            "n": list(rows),
            "closed_walks": counts,
            "return_probability": [c / (branching + 1) ** k for k, c in enumerate(exact)],
        }
    )
    _emit_table(frame, fmt, out)


@app.command("jacobi")
def jacobi(
    branching: int = _branching_option(),
    size: int = typer.Option(50, "--size", "-M", min=1, help="Truncation size M."),
    kind: JacobiKind = typer.Option(JacobiKind.d_omega, "--matrix", help="Which Jacobi matrix."),
    fmt: OutputFormat = _format_option(),
    out: Path | None = _out_option(),
) -> None:
    """
    Eigenvalues of a truncated Jacobi matrix with their δ_0 weights.

    The weights are the atoms of the truncated spectral measure at the first
    basis vector.
    """
    matrix = {
        JacobiKind.d_omega: lambda: jacobi_D_omega(branching, size),
        JacobiKind.d: lambda: jacobi_D(branching, size),
        JacobiKind.re_shift: lambda: jacobi_re_shift(size),
        JacobiKind.perturbed: lambda: jacobi_perturbed_shift(branching, size),
    }[kind]()
    eigenvalues, vectors = matrix.eigh()
    discrete = DiscreteMeasure(np.asarray(eigenvalues), vectors[0, :] ** 2)
    frame = pd.DataFrame({"eigenvalue": discrete.eigenvalues, "weight": discrete.weights})
    logger.info("%s M=%d: total mass %.15g", matrix.label, size, discrete.total_mass)
    _emit_table(frame, fmt, out)


@app.command("lattice")
def lattice(
    dimension: int = typer.Option(..., "--d", min=1, help="Lattice dimension d."),
    side: int = typer.Option(..., "--L", min=2, help="Torus side length L."),
    seed: int = typer.Option(DEFAULT_SEED, "--seed", min=0, help="Seed for the FFT probes."),
    fmt: OutputFormat = _format_option(),
    out: Path | None = _out_option(),
) -> None:
    """
    Symbol 4Σ sin²(x_k/2) at every frequency of the torus, after checking that
    the plane waves diagonalise the Laplacian.
    """
    t = LatticeTorus(dimension, side)
    spectrum = dft_verify(t, seed)
    typer.echo(
        f"max plane-wave residual {spectrum.max_residual:.3e} ({spectrum.method})", err=True
    )
    freqs = frequencies(t)
    frame = pd.DataFrame({f"m{k + 1}": freqs[:, k] for k in range(dimension)})
    frame["symbol"] = symbol(dimension, 2.0 * np.pi * freqs / side)
    _emit_table(frame, fmt, out)


# --- Single quantities ---
@app.command("resistance")
def resistance(
    branching: int = _branching_option(),
    x: str = typer.Option(..., "--x", help="First word, e.g. 12 (or 1.2 for N > 9)."),
    y: str = typer.Option(..., "--y", help="Second word; empty or 'root' for ∅."),
    fmt: OutputFormat = _format_option(),
    out: Path | None = _out_option(),
) -> None:
    """
    Resistance distance √(2 l(x, y)) and the potential covariance ⟨v_x, v_y⟩_ℰ.

    Example:
        spectral-lab resistance --N 2 --x 12 --y 11
    """
    try:
        wx, wy = parse_word(x, branching), parse_word(y, branching)
    except ValueError as exc:
        raise _bad_parameter(exc) from exc
    frame = pd.DataFrame(
        [
            {
                "x": format_word(wx),
                "y": format_word(wy),
                "path_length": tree_path_length(wx, wy),
                "dist": resistance_dist(wx, wy),
                "covariance": covariance(wx, wy),
            }
        ]
    )
    _emit_table(frame, fmt, out)


@app.command("eigvec")
def eigvec(
    eigenvalue: str = typer.Option(
        ..., "--lambda", help="Eigenvalue: a number, golden- or golden+."
    ),
    length: int = typer.Option(50, "--len", min=2, help="Number of steps L."),
    fmt: OutputFormat = _format_option(),
    out: Path | None = _out_option(),
) -> None:
    """
    Bounded eigen-sequence of the half-line Laplacian (N = 1) and its period.

    The CSV lists k, v_k and the partial energies; the detected period goes
    to stderr. JSON carries everything in one object.

    Example:
        spectral-lab eigvec --lambda golden- --len 50
    """
    try:
        lam = parse_eigenvalue(eigenvalue)
    except ValueError as exc:
        raise _bad_parameter(exc) from exc
    seq = eigvec_generate(lam, length)
    period = detect_period(seq) if seq.length >= MIN_PERIOD_LENGTH else None
    if fmt is OutputFormat.json:
        report = pd.Series(
            {
                "eigenvalue": lam,
                "period": period,
                "residual": eigen_residual(seq),
                "values": seq.values.tolist(),
            }
        )
        _write(report.to_json(double_precision=JSON_PRECISION), out)
        return
    frame = pd.DataFrame(
        {
            "k": np.arange(seq.length + 1),
            "value": seq.values,
            "energy": energy_partial_sums(seq),
        }
    )
    typer.echo(f"period: {period if period is not None else 'none'}", err=True)
    _emit_table(frame, fmt, out)


# --- Verification ---
@app.command("verify")
def verify(
    suite: Suite = typer.Argument(..., help="Suite to run, or 'all'."),
    branching: int | None = typer.Option(
        None,
        "--N",
        min=1,
        max=MAX_BRANCHING,
        help=(
            f"Restrict the tree suites to this branching (at most {MAX_BRANCHING}). "
            "measures, eigen and lattice ignore it."
        ),
    ),
    trials: int = typer.Option(
        DEFAULT_TRIALS, "--trials", min=1, help="Monte Carlo trials per (N, n)."
    ),
    seed: int = typer.Option(DEFAULT_SEED, "--seed", min=0, help="Root seed."),
    nodes: int = typer.Option(
        DEFAULT_QUADRATURE_NODES, "--nodes", min=2, help="Gauss–Chebyshev nodes."
    ),
    fmt: ReportFormat = typer.Option(
        ReportFormat.json, "--format", "-f", help="Report format: json or text."
    ),
    out: Path | None = _out_option(),
) -> None:
    """
    Run a verification suite and report every check with its residual.

    Exits 1 when any check fails; the failing checks are named on stderr.

    Example:
        spectral-lab verify all --seed 7
    """
    try:
        threads = threads_from_env()
    except ValueError as exc:
        raise _bad_parameter(exc) from exc
    config = VerifyConfig(
        seed=seed,
        trials=trials,
        quadrature_nodes=nodes,
        threads=threads,
        branchings=(branching,) if branching else (),
    )
    report = run_suite(suite.value, config)
    _write(report.to_json() + "\n" if fmt is ReportFormat.json else report.summary(), out)

    if not report.all_passed:
        for check in report.failed:
            typer.echo(f"FAILED {check.name}: {check.actual} (expected {check.expected})", err=True)
        raise typer.Exit(code=1)


@app.command("info")
def info() -> None:
    """
    Show version, spectrum intervals and the available suites.
    """
    typer.echo(f"spectral-lab {__version__}")
    typer.echo("=" * 40)
    typer.echo("Spectrum of the tree Laplacian on T̃, [N+1-2√N, N+1+2√N]:")
    for n in range(1, 5):
        lo, hi = spectrum_interval(n)
        typer.echo(f"  - N={n}: [{lo:.15g}, {hi:.15g}]")
    typer.echo("")
    typer.echo("Verification suites (`spectral-lab verify <suite>`):")
    for name in SUITES:
        typer.echo(f"  - {name}")
    typer.echo(f"  - {ALL_SUITES} (every suite in order)")
    typer.echo("")
    typer.echo("Environment: SPECTRAL_LAB_THREADS caps Monte Carlo workers.")


if __name__ == "__main__":
    app()
