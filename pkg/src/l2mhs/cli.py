"""Command line: a thin client over the HTTP service.

By default the commands talk to an in-process instance of the app (no
network); --server URL targets a running instance instead.  Exit codes:
0 = pass, 1 = computational mismatch, 2 = input error.
"""

from __future__ import annotations

import json
import sys

import click
import httpx

from .reports import render_tsv

EXIT_PASS = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2


def _client(server: str | None):
    if server:
        return httpx.Client(base_url=server.rstrip("/"), timeout=600.0)
    from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _read_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        click.echo(f"error: no such file: {path}", err=True)
        sys.exit(EXIT_INPUT)
    except json.JSONDecodeError as exc:
        click.echo(f"error: {path} is not valid JSON: {exc}", err=True)
        sys.exit(EXIT_INPUT)


def _run(server: str | None, endpoint: str, payload: dict | None,
         fmt: str, params: dict | None = None):
    with _client(server) as client:
        response = client.post(f"/v1/{endpoint}", json=payload, params=params or {})
    if response.status_code in (400, 422):
        detail = response.json().get("detail", response.text)
        click.echo(f"input error: {detail}", err=True)
        sys.exit(EXIT_INPUT)
    if response.status_code != 200:
        click.echo(f"service error ({response.status_code}): {response.text}", err=True)
        sys.exit(EXIT_INPUT)
    report = response.json()
    if fmt == "structured":
        click.echo(json.dumps(report, indent=2, sort_keys=True))
    else:
        click.echo(render_tsv(report), nl=False)
    sys.exit(EXIT_PASS if report.get("pass") in (True, None) else EXIT_MISMATCH)


def _format_option(f):
    return click.option("--format", "fmt", type=click.Choice(["tsv", "structured"]),
                        default="tsv", show_default=True, help="output format")(f)


def _server_option(f):
    return click.option("--server", default=None, metavar="URL",
                        help="send the request to a running service instead of in-process")(f)


@click.group()
def main():
    """Exact weight/Hodge spectral sequences for divisor complements."""


@main.command()
@click.argument("file", type=click.Path())
@_format_option
@_server_option
def weights(file, fmt, server):
    """Weight-graded dimensions of the complement cohomology."""
    _run(server, "weights", _read_document(file), fmt)


@main.command()
@click.argument("file", type=click.Path())
@_format_option
@_server_option
def hodge(file, fmt, server):
    """Mixed Hodge numbers per degree and weight."""
    _run(server, "hodge", _read_document(file), fmt)


@main.command()
@click.argument("file", type=click.Path())
@_format_option
@_server_option
def euler(file, fmt, server):
    """Euler characteristic of the complement (and its l2 value under a cover)."""
    _run(server, "euler", _read_document(file), fmt)


@main.command()
@click.argument("file", type=click.Path())
@_format_option
@_server_option
def graph(file, fmt, server):
    """Dual graph homology and intersection-form certificate."""
    _run(server, "graph", _read_document(file), fmt)


@main.command()
@click.argument("file", type=click.Path())
@click.option("--pages", type=click.IntRange(1, 16), default=None,
              help="compute pages E_1..E_r (default: filtration length + 1)")
@_format_option
@_server_option
def ss(file, pages, fmt, server):
    """Spectral sequence of a raw filtered complex file."""
    params = {"pages": pages} if pages else {}
    _run(server, "ss", _read_document(file), fmt, params)


@main.command()
@click.argument("file", type=click.Path())
@_format_option
@_server_option
def froelicher(file, fmt, server):
    """First-page totals vs totalization cohomology of a double complex."""
    _run(server, "froelicher", _read_document(file), fmt)


@main.command()
@click.argument("file", type=click.Path())
@click.option("--subdivide", type=click.IntRange(1, 2), default=1, show_default=True,
              help="number of barycentric subdivisions for the complement retract")
@_format_option
@_server_option
def oracle(file, subdivide, fmt, server):
    """Simplicial complement cohomology (and cover cohomology, two ways)."""
    _run(server, "oracle", _read_document(file), fmt, {"subdivide": subdivide})


@main.command()
@click.argument("file", type=click.Path())
@_format_option
@_server_option
def check(file, fmt, server):
    """Run every cross-validation the input supports."""
    _run(server, "check", _read_document(file), fmt)


@main.command()
@click.option("--seed", type=int, default=0, show_default=True,
              help="seed for the deterministic randomized suites")
@click.option("--rounds", type=click.IntRange(1, 500), default=25, show_default=True)
@_format_option
@_server_option
def selftest(seed, rounds, fmt, server):
    """Seeded randomized self-tests (the seed is printed in the report)."""
    _run(server, "selftest", None, fmt, {"seed": seed, "rounds": rounds})


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("l2mhs.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
