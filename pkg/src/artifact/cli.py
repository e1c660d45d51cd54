"""Command-line entry point: one executable over all the library modules.

Every data product goes to stdout in the selected format (tsv, json, or
text); the version banner goes to stderr so stdout stays byte-identical
for identical inputs. Exit codes: 0 success, 1 failed computation or
failed verification, 2 usage error, 3 resource-limit abort.

Default resource limits come from environment variables, all positive
integers: ARTIFACT_MAX_STEPS (frise/ray/window lengths, default 512),
ARTIFACT_MAX_REGION (tile region cell count, default 65536), and
ARTIFACT_MAX_ORDER (recurrence order bound, default 32).
"""

from __future__ import annotations

import json
import os
import sys

import click

from . import __version__
from .acceptance import run_suite
from .cluster import CrossSeed, cross_construct, enumerate_cluster_vars, frieze_period
from .correspondence import probe_conjecture
from .diagrams import (
    classify,
    check_subadditive,
    find_additive_function,
    parse_shorthand,
    quiver_from_json,
    validate_cartan,
)
from .frises import WindowTooShort, frise_extend, frise_extend_vars
from .recurrences import find_min_recurrence
from .tilings import Embedding, brute_fill, parse_frontier, ray_values, tile_grid

_LIMIT_DEFAULTS = {
    "ARTIFACT_MAX_STEPS": 512,
    "ARTIFACT_MAX_REGION": 65536,
    "ARTIFACT_MAX_ORDER": 32,
}

# json consumers read numbers as doubles; anything wider ships as a string
_JSON_SAFE = 1 << 53


class ResourceLimit(click.ClickException):
    exit_code = 3


def _limit(name: str) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return _LIMIT_DEFAULTS[name]
    try:
        value = int(raw)
    except ValueError:
        raise click.UsageError("%s must be a positive integer, got %r" % (name, raw))
    if value <= 0:
        raise click.UsageError("%s must be positive, got %d" % (name, value))
    return value


def _check_limit(what: str, value: int, env: str) -> None:
    cap = _limit(env)
    if value > cap:
        raise ResourceLimit("%s %d exceeds %s=%d" % (what, value, env, cap))


def _data(fn, *args, **kwargs):
    """Run a library call, turning its validation errors into exit code 1."""
    try:
        return fn(*args, **kwargs)
    except click.ClickException:
        raise
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        raise click.ClickException(str(exc) or exc.__class__.__name__)


def _json_int(v):
    if isinstance(v, bool) or not isinstance(v, int):
        return v
    return v if -_JSON_SAFE < v < _JSON_SAFE else str(v)


def _pair(text: str, what: str) -> tuple[int, int]:
    parts = text.split(",")
    try:
        a, b = (int(p.strip()) for p in parts)
    except ValueError:
        raise click.UsageError("%s must be two integers 'a,b', got %r" % (what, text))
    return a, b


def _echo_rows(rows: list[list[str]], fmt: str) -> None:
    if fmt == "tsv":
        for row in rows:
            click.echo("\t".join(row))
        return
    widths = [max((len(r[i]) for r in rows if i < len(r)), default=0)
              for i in range(max(len(r) for r in rows))]
    for row in rows:
        click.echo("  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip())


def _quiver_from_options(name: str | None, cartan: str | None, quiver_json: str | None):
    given = [o for o in (name, cartan, quiver_json) if o is not None]
    if len(given) != 1:
        raise click.UsageError("give exactly one of --quiver, --cartan, --quiver-json")
    if name is not None:
        return _data(parse_shorthand, name)
    if cartan is not None:
        try:
            rows = json.loads(cartan)
        except json.JSONDecodeError as exc:
            raise click.UsageError("--cartan is not valid JSON: %s" % exc)
        c = _data(validate_cartan, rows)
        # default orientation: every edge from the lower vertex id up
        from .diagrams import Quiver

        return _data(Quiver, c, list(c.edges()))
    try:
        obj = json.loads(quiver_json)
    except json.JSONDecodeError as exc:
        raise click.UsageError("--quiver-json is not valid JSON: %s" % exc)
    return _data(quiver_from_json, obj)


format_option = click.option(
    "--format", "fmt", type=click.Choice(("tsv", "json", "text")),
    default="text", show_default=True, help="Output encoding.")


@click.group()
def cli() -> None:
    """Frises, SL2-tilings, recurrences, and the verification suite."""
    click.echo("artifact %s" % __version__, err=True)


@cli.command("classify")
@click.option("--name", help="Catalog shorthand, e.g. A4, Atilde3, Dtilde6, kronecker.")
@click.option("--cartan", help="Cartan matrix as a JSON list of rows.")
@format_option
def classify_cmd(name: str | None, cartan: str | None, fmt: str) -> None:
    """Classify a valued diagram and print its additive certificate."""
    if name is not None:
        c = _quiver_from_options(name, None, None).cartan
    elif cartan is not None:
        c = _quiver_from_options(None, cartan, None).cartan
    else:
        raise click.UsageError("give one of --name or --cartan")
    diagram = _data(classify, c)
    f = _data(find_additive_function, c)
    cert = None if f is None else [str(f[i]) for i in range(c.d)]
    status = None if f is None else _data(check_subadditive, c, f)
    if fmt == "json":
        click.echo(json.dumps({
            "classification": str(diagram),
            "tag": diagram.tag,
            "kind": diagram.kind,
            "m": diagram.m,
            "additive": cert,
            "certificate": status,
        }))
        return
    if fmt == "tsv":
        rows = [[str(diagram)]]
        if cert is not None:
            rows.append(["additive"] + cert)
        _echo_rows(rows, "tsv")
        return
    click.echo(str(diagram))
    if cert is not None:
        click.echo("additive: %s" % " ".join(cert))


@cli.command("frise")
@click.option("--quiver", "name", help="Catalog shorthand, e.g. A4, Atilde3, kronecker.")
@click.option("--cartan", help="Cartan matrix as a JSON list of rows.")
@click.option("--quiver-json", help='{"vertices": d, "edges": [{"from": i, "to": j, "val": [a, b]}]}.')
@click.option("--steps", type=int, default=8, show_default=True, help="Last step index.")
@click.option("--vars", "symbolic", is_flag=True, help="Laurent values over initial variables.")
@format_option
def frise_cmd(name, cartan, quiver_json, steps, symbolic, fmt) -> None:
    """Frise table: one row per vertex, one column per step."""
    if steps < 0:
        raise click.UsageError("--steps must be nonnegative")
    _check_limit("steps", steps, "ARTIFACT_MAX_STEPS")
    q = _quiver_from_options(name, cartan, quiver_json)
    fr = _data(frise_extend_vars if symbolic else frise_extend, q, steps)
    table = [fr.row(v) for v in range(q.cartan.d)]
    if fmt == "json":
        rows = [[str(x) if symbolic else _json_int(x) for x in row] for row in table]
        click.echo(json.dumps({"vertices": q.cartan.d, "steps": steps, "rows": rows}))
        return
    _echo_rows([[str(x) for x in row] for row in table], fmt)


@cli.command("tile")
@click.option("--frontier", required=True, help="Frontier text '[LEFT]* CENTER [RIGHT]*'.")
@click.option("--region", nargs=4, type=int, required=True, metavar="U0 V0 U1 V1",
              help="Inclusive rectangle corners.")
@click.option("--oracle", is_flag=True, help="Fill by 2x2 completions instead of the word formula.")
@format_option
def tile_cmd(frontier, region, oracle, fmt) -> None:
    """Tiling values on a rectangle, top row = largest v."""
    u0, v0, u1, v1 = region
    if u0 > u1 or v0 > v1:
        raise click.UsageError("empty region: need U0<=U1 and V0<=V1")
    _check_limit("region cells", (u1 - u0 + 1) * (v1 - v0 + 1), "ARTIFACT_MAX_REGION")
    e = Embedding(_data(parse_frontier, frontier))
    grid = _data(brute_fill if oracle else tile_grid, e, region)
    rows = [[grid[(u, v)] for u in range(u0, u1 + 1)] for v in range(v1, v0 - 1, -1)]
    if fmt == "json":
        click.echo(json.dumps({"region": list(region),
                               "rows": [[_json_int(x) for x in row] for row in rows]}))
        return
    _echo_rows([[str(x) for x in row] for row in rows], fmt)


@cli.command("rays")
@click.option("--frontier", required=True, help="Frontier text '[LEFT]* CENTER [RIGHT]*'.")
@click.option("--origin", required=True, help="Start point 'u,v'.")
@click.option("--dir", "direction", required=True, help="Step 'a,b' with a*b <= 0.")
@click.option("--n", "count", type=int, default=16, show_default=True, help="Number of values.")
@format_option
def rays_cmd(frontier, origin, direction, count, fmt) -> None:
    """Tiling values along origin + n*dir."""
    if count < 1:
        raise click.UsageError("--n must be positive")
    _check_limit("ray length", count, "ARTIFACT_MAX_STEPS")
    e = Embedding(_data(parse_frontier, frontier))
    o = _pair(origin, "--origin")
    d = _pair(direction, "--dir")
    ray = _data(ray_values, e, o, d, count)
    if fmt == "json":
        click.echo(json.dumps({"origin": list(o), "direction": list(d),
                               "values": [_json_int(x) for x in ray.values]}))
    elif fmt == "tsv":
        click.echo("\t".join(str(x) for x in ray.values))
    else:
        for x in ray.values:
            click.echo(str(x))


def _human_recurrence(order: int, coeffs) -> str:
    lhs = "u[n+%d]" % order
    parts = []
    for j, c in enumerate(coeffs):
        shift = order - 1 - j
        term = "u[n+%d]" % shift if shift else "u[n]"
        mag = abs(c)
        body = term if mag == 1 else "%s %s" % (mag, term)
        parts.append(("- " if c < 0 else "+ ") + body)
    rhs = " ".join(parts)
    return "%s = %s" % (lhs, rhs.lstrip("+ ") if rhs.startswith("+ ") else rhs)


@cli.command("recur")
@click.option("--seq", help="Comma-separated integers.")
@click.option("--file", "source", type=click.File("r"),
              help="File of integers, '-' for stdin (also the default).")
@click.option("--max-order", type=int, default=8, show_default=True)
@format_option
def recur_cmd(seq, source, max_order, fmt) -> None:
    """Fit the minimal linear recurrence a window certifies."""
    if max_order < 1:
        raise click.UsageError("--max-order must be positive")
    _check_limit("order", max_order, "ARTIFACT_MAX_ORDER")
    if seq is None:
        text = (source or click.get_text_stream("stdin")).read()
    else:
        text = seq
    try:
        values = [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise click.UsageError("sequence entries must be integers")
    if not values:
        raise click.UsageError("empty sequence")
    rec = _data(find_min_recurrence, values, max_order)
    window = len(values)
    if fmt == "json":
        out = {"window": window, "max_order": max_order}
        if rec is None:
            out.update({"order": None, "coeffs": None})
        else:
            out.update({"order": rec.order,
                        "coeffs": [[_json_int(c.numerator), _json_int(c.denominator)]
                                   for c in rec.coeffs]})
        click.echo(json.dumps(out))
        return
    if rec is None:
        rows = [["order", "none"], ["window", str(window)]]
    else:
        rows = [["order", str(rec.order)],
                ["coeffs"] + [str(c) for c in rec.coeffs],
                ["window", str(window)]]
    if fmt == "tsv":
        _echo_rows(rows, "tsv")
        return
    if rec is None:
        click.echo("no linear recurrence of order <= %d certified on %d terms"
                   % (max_order, window))
    else:
        click.echo(_human_recurrence(rec.order, rec.coeffs))
        click.echo("window: %d terms" % window)


@cli.command("frieze")
@click.option("--letters", help="All-ones cross seed, e.g. yyxxxxyyy.")
@click.option("--seed", "seed_word", help="Symbolic seed, letters interleaved with names.")
@click.option("--stages", type=int, default=4, show_default=True,
              help="Figures stitched when measuring the translation period.")
@format_option
def frieze_cmd(letters, seed_word, stages, fmt) -> None:
    """Cross-construction frieze: the grid, plus its period in text/json."""
    if (letters is None) == (seed_word is None):
        raise click.UsageError("give exactly one of --letters or --seed")
    if stages < 3:
        raise click.UsageError("--stages must be at least 3")
    _check_limit("stages", stages, "ARTIFACT_MAX_STEPS")
    seed = _data(CrossSeed.ones, letters) if letters else _data(CrossSeed.parse, seed_word)
    pattern = _data(cross_construct, seed)

    def cell_str(v):
        try:
            return str(v.as_int())
        except ValueError:
            return str(v)

    rs = sorted({r for r, _ in pattern.cells})
    cs = sorted({c for _, c in pattern.cells})
    rows = [[cell_str(pattern.cells[(r, c)]) if (r, c) in pattern.cells else ""
             for c in range(cs[0], cs[-1] + 1)] for r in range(rs[0], rs[-1] + 1)]
    try:
        period = _data(frieze_period, seed, stages)
    except click.ClickException:
        raise
    except WindowTooShort as exc:
        period = {"period": None, "note": str(exc)}
    if fmt == "json":
        click.echo(json.dumps({"rows": rows, "minors_checked": pattern.minor_check(),
                               "period": period}))
        return
    _echo_rows(rows, fmt)
    if fmt == "text":
        click.echo("period: %s" % period.get("period"))
        if "candidate_letters_plus_3" in period:
            click.echo("candidates: letters+3=%d variables+2=%d"
                       % (period["candidate_letters_plus_3"],
                          period["candidate_variables_plus_2"]))


@cli.command("cluster-vars")
@click.option("--kind", required=True, help="A<n>, Atilde<m>, or kronecker.")
@click.option("--bound", type=int, default=8, show_default=True,
              help="Window length for the infinite families.")
@format_option
def cluster_vars_cmd(kind, bound, fmt) -> None:
    """Enumerate distinct cluster variables as Laurent polynomials."""
    if bound < 1:
        raise click.UsageError("--bound must be positive")
    _check_limit("bound", bound, "ARTIFACT_MAX_STEPS")
    vals = _data(enumerate_cluster_vars, kind, bound)
    if fmt == "json":
        click.echo(json.dumps({"kind": kind, "bound": bound, "count": len(vals),
                               "variables": [str(v) for v in vals]}))
        return
    for v in vals:
        click.echo(str(v))


@cli.command("probe")
@click.option("--quiver", "name", help="Catalog shorthand, e.g. A4, Atilde3, kronecker.")
@click.option("--cartan", help="Cartan matrix as a JSON list of rows.")
@click.option("--quiver-json", help="Quiver as JSON (see frise --help).")
@click.option("--steps", type=int, default=64, show_default=True,
              help="Window; 64 certifies every catalog diagram of rank <= 8.")
@click.option("--max-order", type=int, default=16, show_default=True)
@format_option
def probe_cmd(name, cartan, quiver_json, steps, max_order, fmt) -> None:
    """Boundedness/recurrence probe against the classification."""
    if steps < 1 or max_order < 1:
        raise click.UsageError("--steps and --max-order must be positive")
    _check_limit("steps", steps, "ARTIFACT_MAX_STEPS")
    _check_limit("order", max_order, "ARTIFACT_MAX_ORDER")
    q = _quiver_from_options(name, cartan, quiver_json)
    report = _data(probe_conjecture, q, steps=steps, max_order=max_order)
    if fmt == "json":
        out = dict(report)
        if out["period"] is not None:
            out["period"] = list(out["period"])
        click.echo(json.dumps(out))
        return
    keys = ("diagram", "bounded", "period", "recurrence_orders",
            "recurrence_found", "expected", "consistent")
    if fmt == "tsv":
        _echo_rows([[k, str(report[k])] for k in keys], "tsv")
        return
    for k in keys:
        click.echo("%s: %s" % (k, report[k]))


@cli.command("verify")
@click.option("--suite", "suites", multiple=True, default=("all",), show_default=True,
              help="Check names, or 'all'. Repeatable.")
@format_option
@click.pass_context
def verify_cmd(ctx, suites, fmt) -> None:
    """Run the reproducibility suite; exit 0 iff every check passes."""
    try:
        reports = run_suite(suites)
    except KeyError as exc:
        raise click.UsageError("unknown suite %s" % exc)
    if fmt == "json":
        click.echo(json.dumps(reports))
    else:
        rows = [[r["name"], "PASS" if r["ok"] else "FAIL", r["detail"]] for r in reports]
        _echo_rows(rows, fmt)
    if not all(r["ok"] for r in reports):
        ctx.exit(1)


def main() -> None:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(2000000)
    cli(prog_name="artifact")


if __name__ == "__main__":
    main()
