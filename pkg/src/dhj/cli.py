"""Command-line surface. Every command is a thin adapter over the
library: it parses inputs, runs one operation, and prints a canonical
JSON envelope (sorted keys) on stdout. Exit codes: 0 success, 1 domain
error, 2 usage error."""

from __future__ import annotations

import hashlib
import io
import json
import sys

import click

from . import ops
from .errors import DhjError
from .graph import DEFAULT_TOL, Graph, parse_graph

CSV_COMMANDS = {"distances", "viscosity", "stationary"}


def _digest(*blobs: bytes) -> str:
    h = hashlib.sha256()
    for b in blobs:
        h.update(b)
    return h.hexdigest()


def _emit(command: str, digest: str, payload: dict, fmt: str, diagnostics=()):
    if fmt == "csv" and command in CSV_COMMANDS:
        click.echo(_to_csv(command, payload), nl=False)
        return
    envelope = {
        "command": command,
        "input_digest": digest,
        "payload": payload,
        "diagnostics": list(diagnostics),
    }
    click.echo(json.dumps(envelope, sort_keys=True))


def _to_csv(command: str, payload: dict) -> str:
    out = io.StringIO()
    if command == "distances":
        matrix = payload["distances"]
        vertices = list(matrix)
        out.write("from," + ",".join(vertices) + "\n")
        for x in vertices:
            out.write(x + "," + ",".join(repr(matrix[x][y]) for y in vertices) + "\n")
    elif command == "viscosity":
        out.write("N,error,envelope,method\n")
        for row in payload["rows"]:
            env = "" if row["envelope"] is None else repr(row["envelope"])
            out.write(f"{row['N']!r},{row['error']!r},{env},{row['method']}\n")
    elif command == "stationary":
        out.write("vertex,pi\n")
        for v, p in payload["pi"].items():
            out.write(f"{v},{p!r}\n")
    return out.getvalue()


def _fail(command: str, digest: str, exc: DhjError):
    envelope = {
        "command": command,
        "input_digest": digest,
        "error": exc.name,
        "detail": str(exc),
    }
    click.echo(json.dumps(envelope, sort_keys=True))
    sys.exit(1)


def _load_graph(command: str, path: str) -> tuple[Graph, bytes]:
    """Read and parse a graph file; parse failures become the standard
    exit-1 error envelope."""
    with open(path, "rb") as fh:
        blob = fh.read()
    try:
        return parse_graph(blob), blob
    except DhjError as exc:
        _fail(command, _digest(blob), exc)
        raise AssertionError("unreachable")


def _load_json(path: str) -> tuple[dict, bytes]:
    with open(path, "rb") as fh:
        blob = fh.read()
    return json.loads(blob), blob


@click.group()
@click.option(
    "--tolerance",
    type=float,
    default=DEFAULT_TOL,
    envvar="DHJ_TOLERANCE",
    show_default=True,
    help="absolute tolerance for zero/equality detection",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "csv"]),
    default="json",
    show_default=True,
    help="csv is available for distances, viscosity, stationary",
)
@click.option("--max-size", type=int, default=None, help="enumeration size cap override")
@click.pass_context
def main(ctx, tolerance, fmt, max_size):
    """Discrete Hamilton-Jacobi toolkit."""
    ctx.obj = {"tol": tolerance, "fmt": fmt, "max_size": max_size}


def _graph_command(name: str):
    """Boilerplate for commands taking a single graph file argument."""

    def decorate(fn):
        @main.command(name=name)
        @click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
        @click.pass_context
        def wrapper(ctx, graph_file, **kwargs):
            g, blob = _load_graph(name, graph_file)
            digest = _digest(blob)
            try:
                payload = fn(ctx.obj, g, **kwargs)
            except DhjError as exc:
                _fail(name, digest, exc)
                return
            _emit(name, digest, payload, ctx.obj["fmt"])

        wrapper.__name__ = name.replace("-", "_")
        for param in getattr(fn, "__click_params__", []):
            wrapper.params.insert(0, param)
        return wrapper

    return decorate


@_graph_command("validate")
def _validate(cfg, g):
    return ops.validate_op(g, cfg["tol"], strict=True)


@_graph_command("distances")
def _distances(cfg, g):
    return ops.distances_op(g)


@_graph_command("zero-map")
def _zero_map(cfg, g):
    return ops.zero_map_op(g, cfg["tol"])


@_graph_command("fw")
def _fw(cfg, g):
    return ops.fw_op(g)


@_graph_command("meta-fw")
def _meta_fw(cfg, g):
    return ops.meta_fw_op(g, cfg["tol"])


@_graph_command("minimal")
def _minimal(cfg, g):
    return ops.minimal_op(g, cfg["tol"])


@main.command("arborescences")
@click.option("--root", required=True)
@click.option("--enumerate", "enumerate_all", is_flag=True, default=False)
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def _arborescences(ctx, root, enumerate_all, graph_file):
    g, blob = _load_graph(ctx.command.name, graph_file)
    digest = _digest(blob)
    try:
        payload = ops.arborescences_op(g, root, enumerate_all, ctx.obj["max_size"])
    except DhjError as exc:
        _fail("arborescences", digest, exc)
        return
    _emit("arborescences", digest, payload, ctx.obj["fmt"])


@main.command("quasipotential")
@click.option("--cycle", type=int, required=True)
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def _quasipotential(ctx, cycle, graph_file):
    g, blob = _load_graph(ctx.command.name, graph_file)
    digest = _digest(blob)
    try:
        payload = ops.quasipotential_op(g, cycle, ctx.obj["tol"])
    except DhjError as exc:
        _fail("quasipotential", digest, exc)
        return
    _emit("quasipotential", digest, payload, ctx.obj["fmt"])


@main.command("solve")
@click.option("--lambda", "lam_json", required=True, help="JSON array of cycle levels")
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def _solve(ctx, lam_json, graph_file):
    g, blob = _load_graph(ctx.command.name, graph_file)
    digest = _digest(blob)
    try:
        lam = [float(v) for v in json.loads(lam_json)]
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise click.UsageError(f"--lambda must be a JSON array of reals: {exc}")
    try:
        payload = ops.solve_op(g, lam, ctx.obj["tol"])
    except DhjError as exc:
        _fail("solve", digest, exc)
        return
    _emit("solve", digest, payload, ctx.obj["fmt"])


@main.command("check")
@click.option(
    "--potential",
    "potential_file",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
)
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def _check(ctx, potential_file, graph_file):
    g, gblob = _load_graph(ctx.command.name, graph_file)
    pot, pblob = _load_json(potential_file)
    digest = _digest(gblob, pblob)
    try:
        payload = ops.check_op(g, pot, ctx.obj["tol"])
    except DhjError as exc:
        _fail("check", digest, exc)
        return
    _emit("check", digest, payload, ctx.obj["fmt"])


@main.command("lax-oleinik")
@click.option("--v0", "v0_spec", default="zero", help="potential file or 'zero'")
@click.option("--max-steps", type=int, default=1000, show_default=True)
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def _lax_oleinik(ctx, v0_spec, max_steps, graph_file):
    g, gblob = _load_graph(ctx.command.name, graph_file)
    blobs = [gblob]
    v0 = None
    if v0_spec != "zero":
        v0, pblob = _load_json(v0_spec)
        blobs.append(pblob)
    digest = _digest(*blobs)
    try:
        payload = ops.lax_oleinik_op(g, v0, max_steps, ctx.obj["tol"])
    except DhjError as exc:
        _fail("lax-oleinik", digest, exc)
        return
    _emit("lax-oleinik", digest, payload, ctx.obj["fmt"])


@main.command("stationary")
@click.option("--N", "n_value", type=float, required=True)
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def _stationary(ctx, n_value, graph_file):
    g, blob = _load_graph(ctx.command.name, graph_file)
    digest = _digest(blob)
    try:
        payload = ops.stationary_op(g, n_value)
    except DhjError as exc:
        _fail("stationary", digest, exc)
        return
    _emit("stationary", digest, payload, ctx.obj["fmt"])


@main.command("viscosity")
@click.option("--N-list", "n_list", required=True, help="comma-separated N values")
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def _viscosity(ctx, n_list, graph_file):
    g, blob = _load_graph(ctx.command.name, graph_file)
    digest = _digest(blob)
    try:
        ns = [float(v) for v in n_list.split(",") if v.strip()]
    except ValueError as exc:
        raise click.UsageError(f"--N-list must be comma-separated reals: {exc}")
    try:
        payload = ops.viscosity_op(g, ns, ctx.obj["max_size"])
    except DhjError as exc:
        _fail("viscosity", digest, exc)
        return
    _emit("viscosity", digest, payload, ctx.obj["fmt"])


@main.command("lift")
@click.option("--N", "n_value", type=float, required=True)
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def _lift(ctx, n_value, graph_file):
    g, blob = _load_graph(ctx.command.name, graph_file)
    digest = _digest(blob)
    try:
        payload = ops.lift_op(g, n_value, ctx.obj["max_size"])
    except DhjError as exc:
        _fail("lift", digest, exc)
        return
    _emit("lift", digest, payload, ctx.obj["fmt"])


@_graph_command("reversible")
def _reversible(cfg, g):
    return ops.reversible_op(g, cfg["tol"])


@main.command("ring")
@click.option(
    "--spec",
    "spec_file",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help='ring JSON: {"k": 4, "forward": [...], "backward": [...]}',
)
@click.pass_context
def _ring(ctx, spec_file):
    spec, blob = _load_json(spec_file)
    digest = _digest(blob)
    try:
        payload = ops.ring_op(spec, ctx.obj["tol"])
    except DhjError as exc:
        _fail("ring", digest, exc)
        return
    _emit("ring", digest, payload, ctx.obj["fmt"])


if __name__ == "__main__":
    main()
