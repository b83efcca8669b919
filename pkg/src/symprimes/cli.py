"""Thin command-line client for the symprimes service.

Every subcommand (except ``serve``) talks HTTP to the service.  With
``--server`` (or $SYMPRIMES_SERVER) it targets a running instance;
otherwise it hosts the ASGI app in-process, so one-shot batch use needs
no daemon.  All computation happens service-side; this module only
formats output.

Exit codes: 0 success, 1 negative check result or internal failure,
2 usage / invalid argument, 3 bound or resource error.
"""

from __future__ import annotations

import json
import os
import sys
from typing import Optional

import click
import httpx

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

_ERROR_EXIT_CODES = {
    "invalid-argument": EXIT_USAGE,
    "out-of-range": EXIT_RESOURCE,
    "resource": EXIT_RESOURCE,
}


def _client(server: Optional[str]) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=None)
    # In-process mode: host the service app behind the same HTTP interface.
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DeprecationWarning)
        from fastapi.testclient import TestClient

    from .service.app import create_app

    return TestClient(create_app(), raise_server_exceptions=False)


def _call(ctx: click.Context, method: str, path: str, payload: dict | None = None) -> dict:
    client: httpx.Client = ctx.obj["client"]
    if method == "GET":
        resp = client.get(path)
    else:
        resp = client.post(path, json=payload)
    if resp.status_code == 200:
        return resp.json()
    try:
        body = resp.json()
    except ValueError:
        body = {}
    kind = body.get("error", "")
    detail = body.get("detail", resp.text or f"HTTP {resp.status_code}")
    click.echo(f"error: {detail}", err=True)
    sys.exit(_ERROR_EXIT_CODES.get(kind, EXIT_USAGE if resp.status_code == 422 else EXIT_FAILURE))


def _echo_json(doc, out: Optional[str]) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _fmt4(x: float) -> str:
    return f"{x:.4f}"  # round-half-even, four decimals


def _convention_flag(include_two: bool) -> str:
    return f"include_two={'true' if include_two else 'false'}"


@click.group()
@click.option(
    "--server",
    envvar="SYMPRIMES_SERVER",
    default=None,
    help="Base URL of a running service; default runs the service in-process.",
)
@click.pass_context
def cli(ctx: click.Context, server: Optional[str]):
    """Symmetric prime pairs: counts, tables, graphs, sets, diagnostics."""
    ctx.ensure_object(dict)
    ctx.obj["client"] = _client(server)


def main() -> None:
    cli(obj={})


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8757, show_default=True)
def serve(host: str, port: int):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("symprimes.service.app:app", host=host, port=port)


include_two_option = click.option(
    "--include-two/--odd-only",
    "include_two",
    default=True,
    show_default=True,
    help="Count the prime 2 (pair {2,3}) or restrict to odd primes.",
)
format_option = click.option(
    "--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True
)
threads_option = click.option(
    "--threads", default=os.cpu_count() or 1, show_default="available cores",
    help="Scan parallelism; results are identical for any value.",
)
out_option = click.option("--out", default=None, help="Write to a file instead of stdout.")


@cli.command()
@click.option("--max-n", required=True, type=int, help="Last survey row (usually a power of ten).")
@include_two_option
@format_option
@threads_option
@out_option
@click.pass_context
def tabulate(ctx, max_n: int, include_two: bool, fmt: str, threads: int, out: Optional[str]):
    """Survey rows n, p_n, S(p_n), S(p_n)/n, 1/(log p_n)^eta at powers of ten."""
    doc = _call(
        ctx,
        "POST",
        "/symmetry/tabulate",
        {"max_n": max_n, "include_two": include_two, "threads": threads},
    )
    rows = doc["rows"]
    if fmt == "csv":
        lines = [f"# convention: {_convention_flag(include_two)}", "n,p_n,S,ratio,model"]
        for r in rows:
            lines.append(
                f"{r['n']},{r['p_n']},{r['s']},{_fmt4(r['ratio'])},{_fmt4(r['model'])}"
            )
        _write("\n".join(lines) + "\n", out)
    else:
        _echo_json(
            {
                "convention": _convention_flag(include_two),
                "rows": [
                    {
                        "n": r["n"],
                        "p_n": r["p_n"],
                        "S": r["s"],
                        "ratio": float(_fmt4(r["ratio"])),
                        "model": float(_fmt4(r["model"])),
                    }
                    for r in rows
                ],
            },
            out,
        )


@cli.command()
@click.option("--x", "x", required=True, type=int)
@include_two_option
@click.option("--partner-cap", default=None, type=int, help="Only accept partners q <= cap.")
@threads_option
@click.pass_context
def count(ctx, x: int, include_two: bool, partner_cap: Optional[int], threads: int):
    """S(x): the number of symmetric primes up to x."""
    doc = _call(
        ctx,
        "POST",
        "/symmetry/count",
        {"x": x, "include_two": include_two, "partner_cap": partner_cap, "threads": threads},
    )
    click.echo(f"convention: {_convention_flag(include_two)}", err=True)
    click.echo(str(doc["count"]))


@cli.command()
@click.option("--p", "p", required=True, type=int)
@include_two_option
@format_option
@click.pass_context
def partners(ctx, p: int, include_two: bool, fmt: str):
    """All partner certificates (d, q, direction) for a prime."""
    doc = _call(ctx, "POST", "/symmetry/partners", {"p": p, "include_two": include_two})
    if fmt == "csv":
        lines = ["p,d,q,direction"]
        lines.extend(
            f"{c['p']},{c['d']},{c['q']},{c['direction']}" for c in doc["certificates"]
        )
        click.echo("\n".join(lines))
    else:
        _echo_json(doc, None)


@cli.command()
@click.option("--p", "p", required=True, type=int)
@click.option("--q", "q", required=True, type=int)
@include_two_option
@click.pass_context
def pair(ctx, p: int, q: int, include_two: bool):
    """Test gcd(p-1, q-1) == |p-q| for two primes."""
    doc = _call(
        ctx, "POST", "/symmetry/pair", {"p": p, "q": q, "include_two": include_two}
    )
    click.echo("true" if doc["symmetric"] else "false")
    sys.exit(0 if doc["symmetric"] else EXIT_FAILURE)


@cli.command()
@click.option("--limit", required=True, type=int, help="Vertices are primes up to this limit.")
@include_two_option
@click.option("--edges-out", default=None, help="Write the edge list CSV here.")
@click.option("--components-out", default=None, help="Write the component summary JSON here.")
@click.pass_context
def graph(ctx, limit: int, include_two: bool, edges_out, components_out):
    """Symmetric-pair graph: component summary (and optional edge CSV)."""
    comp = _call(
        ctx, "POST", "/graph/components", {"limit": limit, "include_two": include_two}
    )
    if edges_out:
        edges = _call(
            ctx, "POST", "/graph/edges", {"limit": limit, "include_two": include_two}
        )["edges"]
        _write("p,q\n" + "".join(f"{p},{q}\n" for p, q in edges), edges_out)
    _echo_json(comp, components_out)


@cli.command()
@click.option("--m", "m", required=True, type=int, help="Clique size.")
@click.option("--limit", required=True, type=int)
@include_two_option
@click.option("--maximal", is_flag=True, help="Only maximal cliques (of size >= m).")
@format_option
@click.pass_context
def cliques(ctx, m: int, limit: int, include_two: bool, maximal: bool, fmt: str):
    """All K_m's in the graph of primes up to the limit."""
    doc = _call(
        ctx,
        "POST",
        "/graph/cliques",
        {"m": m, "limit": limit, "include_two": include_two, "maximal_only": maximal},
    )
    if fmt == "csv":
        for members in doc["cliques"]:
            click.echo(",".join(str(v) for v in members))
    else:
        _echo_json(doc, None)


@cli.command("m-symmetric")
@click.option("--m", "m", required=True, type=int)
@click.option("--x", "x", required=True, type=int)
@include_two_option
@click.pass_context
def m_symmetric(ctx, m: int, x: int, include_two: bool):
    """Count primes up to x that belong to some K_m."""
    doc = _call(
        ctx,
        "POST",
        "/graph/m-symmetric-count",
        {"m": m, "x": x, "include_two": include_two},
    )
    click.echo(str(doc["count"]))


@cli.command()
@click.option("--k", "k", required=True, type=int, help="Set size.")
@click.option("--bound", required=True, type=int, help="Largest allowed element.")
@click.pass_context
def sets(ctx, k: int, bound: int):
    """Smallest k-element gcd-difference set within the bound."""
    doc = _call(ctx, "POST", "/sets/search", {"k": k, "max_element": bound})
    if doc["elements"] is None:
        click.echo(f"no {k}-element set with elements <= {bound}", err=True)
        sys.exit(EXIT_FAILURE)
    click.echo(",".join(str(v) for v in doc["elements"]))


@cli.command("prime-sets")
@click.option("--k", "k", required=True, type=int)
@click.option("--min", "min_element", default=2, show_default=True, type=int,
              help="Every member must exceed this.")
@click.option("--bound", default=None, type=int, help="Prime search ceiling.")
@click.pass_context
def prime_sets(ctx, k: int, min_element: int, bound: Optional[int]):
    """Smallest prime set with pairwise gcd(p-1, q-1) == |p-q|."""
    doc = _call(
        ctx,
        "POST",
        "/sets/search-prime",
        {"k": k, "min_element": min_element, "prime_bound": bound},
    )
    if doc["elements"] is None:
        click.echo(f"no {k}-element prime set found within the bound", err=True)
        sys.exit(EXIT_FAILURE)
    click.echo(",".join(str(v) for v in doc["elements"]))


@cli.command()
@click.argument("elements", nargs=-1, required=True, type=int)
@click.pass_context
def verify(ctx, elements: tuple[int, ...]):
    """Check gcd(a, b) == |a - b| for every pair of the given elements."""
    doc = _call(ctx, "POST", "/sets/verify", {"elements": list(elements)})
    click.echo("true" if doc["valid"] else "false")
    sys.exit(0 if doc["valid"] else EXIT_FAILURE)


def _parse_forms(forms: tuple[str, ...]) -> list[dict]:
    parsed = []
    for raw in forms:
        try:
            g, h = raw.split(",")
            parsed.append({"g": int(g), "h": int(h)})
        except ValueError:
            raise click.UsageError(f"form {raw!r} must look like 'g,h' (e.g. '6,1')")
    return parsed


@cli.command()
@click.argument("forms", nargs=-1, required=True)
@click.pass_context
def admissible(ctx, forms: tuple[str, ...]):
    """Admissibility of linear forms g*t+h, each given as 'g,h'."""
    doc = _call(ctx, "POST", "/sets/admissible", {"forms": _parse_forms(forms)})
    _echo_json(doc, None)
    sys.exit(0 if doc["admissible"] else EXIT_FAILURE)


@cli.command("maynard-tao")
@click.argument("forms", nargs=-1, required=True)
@click.pass_context
def maynard_tao(ctx, forms: tuple[str, ...]):
    """Hypothesis check (positivity, determinants, admissibility)."""
    doc = _call(ctx, "POST", "/sets/maynard-tao", {"forms": _parse_forms(forms)})
    _echo_json(doc, None)
    sys.exit(0 if doc["passed"] else EXIT_FAILURE)


@cli.command()
@click.option("--g", "g", required=True, type=int)
@click.argument("offsets", nargs=-1, required=True, type=int)
@click.pass_context
def bftb(ctx, g: int, offsets: tuple[int, ...]):
    """Input check: distinct offsets, admissible {t+b}, gcd(g, prod b) == 1."""
    doc = _call(ctx, "POST", "/sets/bftb", {"b": list(offsets), "g": g})
    _echo_json(doc, None)
    sys.exit(0 if doc["passed"] else EXIT_FAILURE)


@cli.command()
@click.argument("primes", nargs=-1, required=True, type=int)
@click.pass_context
def coprimality(ctx, primes: tuple[int, ...]):
    """Is prod(b_i - 1) coprime to prod(b_j) for a prime gcd-diff set?"""
    doc = _call(ctx, "POST", "/sets/coprimality", {"b": list(primes)})
    click.echo("true" if doc["coprime"] else "false")
    sys.exit(0 if doc["coprime"] else EXIT_FAILURE)


@cli.command()
@click.option("--x", "x", required=True, type=int)
@click.option("--exceptions", is_flag=True, help="Include the non-smooth primes.")
@out_option
@click.pass_context
def diag(ctx, x: int, exceptions: bool, out: Optional[str]):
    """Proof-profile statistics of p-1 for primes p <= x, as JSON."""
    doc = _call(
        ctx,
        "POST",
        "/diagnostics/profile",
        {"x": x, "include_smooth_exceptions": exceptions},
    )
    _echo_json(doc, out)


@cli.command()
@click.option("--p", "p", required=True, type=int)
@click.pass_context
def decompose(ctx, p: int):
    """Write p = a*r + 1 with r the largest prime factor of p - 1."""
    doc = _call(ctx, "POST", "/diagnostics/decompose", {"p": p})
    click.echo(f"{doc['a']},{doc['r']}")


@cli.command("boundary-report")
@click.option("--n", "n", required=True, type=int)
@include_two_option
@click.pass_context
def boundary_report(ctx, n: int, include_two: bool):
    """How many primes <= p_n are certified only by partners above p_n."""
    doc = _call(
        ctx, "POST", "/symmetry/boundary-report", {"n": n, "include_two": include_two}
    )
    _echo_json(doc, None)


@cli.command()
@click.pass_context
def eta(ctx):
    """The model-column exponent 1 - (1 + log log 2)/log 2."""
    doc = _call(ctx, "GET", "/eta")
    click.echo(repr(doc["eta"]))


if __name__ == "__main__":
    main()
