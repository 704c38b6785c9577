"""Command line: transform files through mutation paths, run verification
suites, serve the session API.

Exit codes: 0 success, 1 failed checks/server error, 2 unusable input,
3 mathematical precondition failure.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import io as gio
from .gca import SeedError, explore, mutate_seed
from .pathalg import DegeneratePotential, mutate_qp
from .quiver import TwoCycleError
from .verify import SUITES, run_suite


@click.group()
def main():
    """Exact mutation engine for generalized cluster structures."""


def _parse_path(text: str):
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise click.ClickException("path must be a list of vertex numbers")


@main.command()
@click.argument("input_file", type=click.Path(path_type=Path))
@click.argument("output_file", type=click.Path(path_type=Path))
@click.option("--path", "path_text", default="", help="mutation vertices, e.g. '1,2,1'")
@click.option("--trunc-degree", default=12, show_default=True,
              help="truncation degree for potentials")
def mutate(input_file: Path, output_file: Path, path_text: str, trunc_degree: int):
    """Apply a mutation path to a seed or QP file and write canonical JSON."""
    try:
        data = json.loads(input_file.read_text())
        kind = gio.detect_kind(data)
    except (OSError, ValueError) as exc:
        click.echo(f"cannot read input: {exc}", err=True)
        sys.exit(2)
    path = _parse_path(path_text)
    try:
        if kind == "seed":
            obj = gio.seed_from_dict(data)
            for k in path:
                obj = mutate_seed(obj, k)
            out = gio.seed_to_dict(obj)
        elif kind == "qp":
            obj = gio.qp_from_dict(data)
            if trunc_degree != obj.ctx.trunc:
                obj.ctx.trunc = trunc_degree
            for k in path:
                obj = mutate_qp(obj, k)
            out = gio.qp_to_dict(obj)
        else:
            click.echo(f"cannot mutate payloads of kind {kind}", err=True)
            sys.exit(2)
    except (SeedError, TwoCycleError, DegeneratePotential, ValueError) as exc:
        click.echo(f"mutation failed: {exc}", err=True)
        sys.exit(3)
    output_file.write_text(gio.dumps_canonical(out))


@main.command()
@click.argument("suite", type=str)
@click.option("--seed", default=0, show_default=True, help="random seed")
def verify(suite: str, seed: int):
    """Run a property suite; prints a JSON report, exit 1 on failure."""
    if suite not in SUITES:
        click.echo(f"unknown suite {suite}; choose from {sorted(SUITES)}", err=True)
        sys.exit(2)
    results = run_suite(suite, seed)
    report = {
        "suite": suite,
        "seed": seed,
        "passed": all(r.passed for r in results),
        "checks": [r.to_dict() for r in results],
    }
    click.echo(json.dumps(report, indent=2, sort_keys=True))
    if not report["passed"]:
        sys.exit(1)


@main.command()
@click.argument("input_file", type=click.Path(path_type=Path))
@click.argument("output_file", type=click.Path(path_type=Path))
@click.option("--depth", default=4, show_default=True)
@click.option("--mode", default="unlabeled", show_default=True,
              type=click.Choice(["labeled", "unlabeled"]))
@click.option("--format", "fmt", default="json", show_default=True,
              type=click.Choice(["json", "dot"]))
def graph(input_file: Path, output_file: Path, depth: int, mode: str, fmt: str):
    """Explore the exchange graph of a seed file."""
    try:
        data = json.loads(input_file.read_text())
        seed_obj = gio.seed_from_dict(data)
    except (OSError, ValueError, KeyError) as exc:
        click.echo(f"cannot read input: {exc}", err=True)
        sys.exit(2)
    try:
        result = explore(seed_obj, depth, mode)
    except SeedError as exc:
        click.echo(f"exploration failed: {exc}", err=True)
        sys.exit(3)
    if fmt == "dot":
        output_file.write_text(gio.graph_to_dot(result) + "\n")
    else:
        output_file.write_text(gio.dumps_canonical(gio.graph_to_dict(result)))


@main.command()
@click.argument("input_file", type=click.Path(path_type=Path))
@click.argument("output_file", type=click.Path(path_type=Path))
@click.option("--path", "path_text", default="", help="mutation vertices")
@click.option("--f-sign-convention", default="default", show_default=True,
              type=click.Choice(["default", "printed"]),
              help="exponent signs inside the exchange-sum of the F recursion")
@click.option("--semifield", default="principal", show_default=True,
              type=click.Choice(["principal", "tropz"]),
              help="coefficient semifield when promoting a bare quiver")
def records(input_file: Path, output_file: Path, path_text: str,
            f_sign_convention: str, semifield: str):
    """Write the g/c/F/h tables along a mutation path of a seed."""
    from .gca import Seed, gf_recursion, h_vector

    try:
        data = json.loads(input_file.read_text())
        kind = gio.detect_kind(data)
        if kind == "seed":
            seed_obj = gio.seed_from_dict(data)
        elif kind == "quiver":
            quiver = gio.quiver_from_dict(data)
            seed_obj = Seed.initial(
                quiver.b_matrix(), quiver.datum.d,
                {i: list(row) for i, row in enumerate(quiver.datum.z, 1)},
                principal=(semifield == "principal"),
            )
        else:
            click.echo(f"records need a seed or quiver, got {kind}", err=True)
            sys.exit(2)
    except (OSError, ValueError, KeyError) as exc:
        click.echo(f"cannot read input: {exc}", err=True)
        sys.exit(2)
    path = _parse_path(path_text)
    try:
        recs = gf_recursion(seed_obj, path,
                            printed_convention=(f_sign_convention == "printed"))
    except SeedError as exc:
        click.echo(f"recursion failed: {exc}", err=True)
        sys.exit(3)
    final = recs[-1]
    payload = {
        "path": path,
        "f_sign_convention": f_sign_convention,
        "b": [list(r) for r in final.b],
        "c": [list(r) for r in final.c],
        "g": [list(r) for r in final.g],
        "f": [p.canonical() for p in final.f],
    }
    try:
        payload["h"] = [list(h_vector(seed_obj, f)) for f in final.f]
    except SeedError:
        payload["h"] = None
    output_file.write_text(gio.dumps_canonical(payload))


@main.command()
@click.option("--port", default=8787, show_default=True)
@click.option("--bind", default="127.0.0.1", show_default=True,
              help="listen address; widen deliberately")
@click.option("--state-dir", default=None, type=click.Path(path_type=Path),
              help="directory for session persistence")
def serve(port: int, bind: str, state_dir):
    """Run the session service (used by the browser explorer)."""
    import uvicorn

    from .service import create_app

    app = create_app(str(state_dir) if state_dir else None)
    try:
        uvicorn.run(app, host=bind, port=port, log_level="info")
    except OSError as exc:
        click.echo(f"cannot bind {bind}:{port}: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
