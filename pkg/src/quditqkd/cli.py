"""
Command-line interface.

Usage:
    quditqkd table1                          # reproduce the threshold table
    quditqkd thresholds --d 4 --bound ind2   # one threshold
    quditqkd scan --d 2 --protocol two-bases --f-min 0.85 --f-max 0.86
    quditqkd simulate --d 3 --protocol all-bases --disturbance 0.1 --seed 42
    quditqkd verify --d-max 4                # oracle vs. closed forms

Exit codes: 0 success, 1 verification or acceptance failure, 2 usage error.
Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from datetime import datetime, timezone

import click

from . import bounds as bd
from .errors import DomainError, SolverError
from .infotheory import Protocol, sifting_yield
from .oracle import MAX_ORACLE_DIM, RNG_DESCRIPTION, SimConfig, run_protocol
from .verify import EIGEN_TOL, EXACT_TOL, run_verification

__all__ = ["cli", "SCHEMA_VERSION", "make_record"]

SCHEMA_VERSION = "1"
TABLE_TOL_PP = 0.01

BOUND_LABELS = {
    bd.BoundKind.IND_TWO_BASES: "D_ind_2",
    bd.BoundKind.IND_ALL_BASES: "D_ind_d+1",
    bd.BoundKind.COHERENT: "D_coh",
}


def make_record(command: str, parameters: dict, results, tolerances: dict | None = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": parameters,
        "results": results,
        "metadata": {
            "rng_description": RNG_DESCRIPTION,
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "tolerances": tolerances or {},
        },
    }


def _csv_text(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    return buf.getvalue()


def _emit(record: dict, fmt: str, out: str | None, rows: list[dict] | None = None) -> None:
    if fmt == "json":
        text = json.dumps(record, indent=2) + "\n"
    else:
        if rows is None:
            res = record["results"]
            rows = res if isinstance(res, list) else [res]
        text = _csv_text(rows)
    click.echo(text, nl=False)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True
)
out_option = click.option("--out", type=click.Path(dir_okay=False), help="Also write output here.")


@click.group()
def cli():
    """Security thresholds of qudit QKD under cloning and coherent attacks."""


@cli.command("table1")
@format_option
@out_option
def cmd_table1(fmt, out):
    """Recompute the 15 disturbance thresholds and compare with the reference table."""
    rows, mismatches = [], []
    for d in bd.TABLE1_DIMS:
        for kind in bd.BoundKind:
            res = bd.threshold(d, kind)
            ref = bd.TABLE1[(d, kind)]
            diff = res.percent - ref
            ok = abs(diff) <= TABLE_TOL_PP
            row = {
                "d": d,
                "bound": kind.value,
                "label": BOUND_LABELS[kind],
                "D": res.D_star,
                "percent": res.percent,
                "display": bd.percent_display(res.D_star),
                "reference": ref,
                "diff_pp": diff,
                "match": ok,
            }
            rows.append(row)
            if not ok:
                mismatches.append(row)
    record = make_record("table1", {}, rows, {"table_pp": TABLE_TOL_PP})
    _emit(record, fmt, out)
    if mismatches:
        for row in mismatches:
            click.echo(
                f"mismatch: d={row['d']} {row['label']}: {row['display']} vs {row['reference']}",
                err=True,
            )
        sys.exit(1)


@cli.command("thresholds")
@click.option("--d", "d", type=click.IntRange(min=2), required=True)
@click.option("--bound", type=click.Choice([k.value for k in bd.BoundKind]), required=True)
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=bd.DEFAULT_XTOL,
              show_default=True, help="Bisection tolerance on F.")
@format_option
@out_option
def cmd_thresholds(d, bound, tol, fmt, out):
    """Solve for a single disturbance threshold."""
    try:
        res = bd.threshold(d, bound, xtol=tol)
    except SolverError as exc:
        click.echo(f"solver failure: {exc}", err=True)
        sys.exit(1)
    payload = res.to_dict()
    payload["display"] = bd.percent_display(res.D_star)
    record = make_record("thresholds", {"d": d, "bound": bound, "tol": tol}, payload,
                         {"xtol": tol, "residual": bd.RESIDUAL_TOL})
    _emit(record, fmt, out)


@cli.command("scan")
@click.option("--d", "d", type=click.IntRange(min=2), required=True)
@click.option("--protocol", type=click.Choice([p.value for p in Protocol]), required=True)
@click.option("--f-min", type=float, required=True)
@click.option("--f-max", type=float, default=1.0, show_default=True)
@click.option("--steps", type=click.IntRange(min=2), default=51, show_default=True)
@click.option("--raw-rate", is_flag=True, help="Add R_lower times the sifting yield.")
@format_option
@out_option
def cmd_scan(d, protocol, f_min, f_max, steps, raw_rate, fmt, out):
    """Tabulate I_AB, I_AE and the key-rate bound over a fidelity grid."""
    try:
        points = bd.scan_curves(d, protocol, f_min, f_max, steps)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    yld = sifting_yield(d, protocol)
    rows = []
    for pt in points:
        row = {"F": pt.F, "D": pt.D, "I_AB": pt.I_AB, "I_AE": pt.I_AE, "R_lower": pt.R_lower}
        if raw_rate:
            row["raw_rate"] = pt.R_lower * yld
        rows.append(row)
    params = {"d": d, "protocol": protocol, "f_min": f_min, "f_max": f_max,
              "steps": steps, "raw_rate": raw_rate, "sifting_yield": yld}
    _emit(make_record("scan", params, rows), fmt, out)


@cli.command("simulate")
@click.option("--d", "d", type=click.IntRange(min=2), required=True)
@click.option("--protocol", type=click.Choice([p.value for p in Protocol]), required=True)
@click.option("--disturbance", type=float, required=True)
@click.option("--rounds", type=click.IntRange(min=1), default=10**6, show_default=True)
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@format_option
@out_option
def cmd_simulate(d, protocol, disturbance, rounds, seed, workers, fmt, out):
    """Monte Carlo run of the protocol over the cloner's error channel."""
    try:
        cfg = SimConfig(d, protocol, disturbance, rounds, seed)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    report = run_protocol(cfg, workers=workers)
    params = {"d": d, "protocol": protocol, "disturbance": disturbance,
              "rounds": rounds, "seed": seed, "workers": workers}
    _emit(make_record("simulate", params, report.to_dict(), {"sigma_gate": 3}), fmt, out)


@cli.command("verify")
@click.option("--d-max", type=click.IntRange(2, MAX_ORACLE_DIM), default=5, show_default=True)
@format_option
@out_option
def cmd_verify(d_max, fmt, out):
    """Run the state-vector oracle against every closed form up to --d-max."""
    checks = run_verification(d_max)
    rows = [c.to_dict() for c in checks]
    record = make_record("verify", {"d_max": d_max}, rows,
                         {"exact": EXACT_TOL, "eigen": EIGEN_TOL})
    _emit(record, fmt, out)
    failed = [c for c in checks if not c.passed]
    for c in failed:
        click.echo(f"FAILED {c.name}: worst residual {c.worst:.3e} > {c.tolerance:.0e}", err=True)
    if failed:
        sys.exit(1)


def main():
    cli()


if __name__ == "__main__":
    main()
