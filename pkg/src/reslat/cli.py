"""Command-line surface.

Exit codes: 0 success / property true; 1 property false, non-containment,
or unsatisfied search; 2 invalid input (parse or validation failure).
All output is deterministic; artifacts carry no timestamps unless
--stamp is given.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import (
    builders,
    classops,
    congruence,
    decomposition,
    enumeration,
    finalg,
    properties,
    reporting,
    terms,
)

EXIT_FALSE = 1
EXIT_INVALID = 2


def _fail(message: str, code: int) -> None:
    click.echo(message, err=True)
    sys.exit(code)


def _load(path: str) -> finalg.FinAlg:
    try:
        alg = finalg.load(path)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        _fail(f"{path}: {exc}", EXIT_INVALID)
    bad = finalg.validate(alg)
    if bad:
        _fail(f"{path}: {bad[0].message}", EXIT_INVALID)
    return alg


def _emit_algebra(alg: finalg.FinAlg, out: str | None) -> None:
    text = finalg.dumps(alg)
    if out:
        Path(out).write_text(text)
        click.echo(out)
    else:
        click.echo(text, nl=False)


_jobs_option = click.option(
    "--jobs",
    type=int,
    default=lambda: int(os.environ.get("RESLAT_JOBS", "1")),
    help="worker processes (default: RESLAT_JOBS or 1)",
)


@click.group()
def main() -> None:
    """Finite residuated lattices: build, check, decompose, compare."""


# ---------------------------------------------------------------------------


@main.command()
@click.argument("file", type=click.Path(exists=True))
def validate(file: str) -> None:
    """Check a JSON algebra against all axioms."""
    try:
        alg = finalg.load(file)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        _fail(f"{file}: {exc}", EXIT_INVALID)
    bad = finalg.validate(alg)
    if bad:
        for v in bad:
            click.echo(f"{v.axiom}: {v.message}", err=True)
        sys.exit(EXIT_INVALID)
    click.echo(f"ok: {alg.name or file} (size {alg.size})")


@main.group()
def build() -> None:
    """Construct standard algebras and write them as JSON."""


@build.command()
@click.argument("n", type=int)
@click.option("--out", "-o", type=click.Path(), default=None)
def lukasiewicz(n: int, out: str | None) -> None:
    _emit_algebra(builders.lukasiewicz(n), out)


@build.command()
@click.argument("n", type=int)
@click.option("--out", "-o", type=click.Path(), default=None)
def godel(n: int, out: str | None) -> None:
    _emit_algebra(builders.godel(n), out)


@build.command("sum")
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True))
@click.option("--out", "-o", type=click.Path(), default=None)
def build_sum(files: tuple[str, ...], out: str | None) -> None:
    comps = [_load(f) for f in files]
    try:
        alg = builders.ordinal_sum(comps)
    except finalg.InvalidAlgebra as exc:
        _fail(str(exc), EXIT_INVALID)
    _emit_algebra(alg, out)


@build.command("rotate")
@click.argument("file", type=click.Path(exists=True))
@click.option("--n", "n", type=int, required=True)
@click.option("--delta", type=click.Choice(list(builders.DELTAS)), required=True)
@click.option("--out", "-o", type=click.Path(), default=None)
def build_rotate(file: str, n: int, delta: str, out: str | None) -> None:
    base = _load(file)
    try:
        alg = builders.rotate(base, n, delta)
    except (finalg.InvalidAlgebra, ValueError) as exc:
        _fail(str(exc), EXIT_INVALID)
    _emit_algebra(alg, out)


# ---------------------------------------------------------------------------


@main.command()
@click.argument("file", type=click.Path(exists=True))
@click.option("--builtin", "builtin_name", default=None,
              help="named property (see --list)")
@click.option("--param", type=int, default=None, help="parameter for normal/lambda/finite-chain")
@click.option("--statement", default=None, help="statement text to check instead")
@click.option("--list", "list_names", is_flag=True, help="list builtin names")
@click.option("--json", "as_json", is_flag=True)
def check(file: str, builtin_name: str | None, param: int | None,
          statement: str | None, list_names: bool, as_json: bool) -> None:
    """Check one builtin (or an ad-hoc statement) on an algebra."""
    if list_names:
        for name in terms.builtin_names():
            click.echo(name)
        return
    alg = _load(file)
    if statement is not None:
        try:
            stmts = [terms.parse_statement(statement)]
        except terms.ParseError as exc:
            _fail(f"statement: {exc}", EXIT_INVALID)
    elif builtin_name is not None:
        try:
            stmts = terms.builtin(builtin_name, param)
        except (KeyError, ValueError) as exc:
            _fail(str(exc), EXIT_INVALID)
    else:
        _fail("need --builtin NAME or --statement TEXT", EXIT_INVALID)
    verdict = terms.satisfies_all(alg, stmts)
    if as_json:
        click.echo(json.dumps(
            {"holds": verdict.holds, "witness": verdict.witness},
            sort_keys=True))
    elif verdict.holds:
        click.echo("holds")
    else:
        pairs = " ".join(f"{k}={v}" for k, v in sorted(verdict.witness.items()))
        click.echo(f"fails at {pairs}")
    sys.exit(0 if verdict.holds else EXIT_FALSE)


@main.command()
@click.argument("file", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
def props(file: str, as_json: bool) -> None:
    """Report the standard property battery."""
    alg = _load(file)
    report = properties.basic_properties(alg)
    if as_json:
        click.echo(json.dumps(report.as_dict(), sort_keys=True))
        return
    d = report.as_dict()
    for flag in properties.PropertyReport.FLAGS:
        line = f"{flag}: {str(d['flags'][flag]).lower()}"
        wit = d["witnesses"].get(flag)
        if wit:
            line += "  (witness " + " ".join(
                f"{k}={v}" for k, v in sorted(wit.items())) + ")"
        click.echo(line)


@main.command()
@click.argument("file", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
def congruences(file: str, as_json: bool) -> None:
    """Print the congruence-filter lattice and SI/simple verdicts."""
    alg = _load(file)
    lat = congruence.congruence_filters(alg)
    filters = list(lat)
    covers = [
        (i, j)
        for i, f in enumerate(filters)
        for j, g in enumerate(filters)
        if f < g and not any(f < h < g for h in filters)
    ]
    si = congruence.is_subdirectly_irreducible(alg)
    simple = congruence.is_simple(alg)
    if as_json:
        click.echo(json.dumps({
            "filters": [sorted(f) for f in filters],
            "covers": covers,
            "subdirectly_irreducible": si,
            "simple": simple,
        }, sort_keys=True))
        return
    for i, f in enumerate(filters):
        click.echo(f"F{i} = {{{', '.join(map(str, sorted(f)))}}}")
    for i, j in covers:
        click.echo(f"F{i} -< F{j}")
    click.echo(f"subdirectly irreducible: {str(si).lower()}")
    click.echo(f"simple: {str(simple).lower()}")


@main.command()
@click.argument("file", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
def decompose(file: str, as_json: bool) -> None:
    """Ordinal-sum decomposition of a finite integral chain."""
    alg = _load(file)
    try:
        dec = decomposition.sum_decompose(alg)
    except finalg.InvalidAlgebra as exc:
        _fail(str(exc), EXIT_INVALID)
    wajs = [decomposition.is_wajsberg(c) for c in dec.components]
    rank = div = None
    if alg.zero is not None and decomposition.is_wajsberg(alg) and alg.is_chain():
        rank = decomposition.rank(alg)
        div = decomposition.divisibility_index(alg)
    if as_json:
        click.echo(json.dumps({
            "sizes": [c.size for c in dec.components],
            "index": dec.index,
            "wajsberg": wajs,
            "rank": rank,
            "divisibility_index": div,
        }, sort_keys=True))
        return
    click.echo("component sizes: " + " ".join(str(c.size) for c in dec.components))
    click.echo(f"index: {dec.index}")
    for i, (c, w) in enumerate(zip(dec.components, wajs)):
        click.echo(f"component {i}: size {c.size}, wajsberg {str(w).lower()}")
    if rank is not None:
        click.echo(f"rank: {rank}")
        click.echo(f"divisibility index: {div}")


# ---------------------------------------------------------------------------


@main.command()
@click.argument("file_a", type=click.Path(exists=True))
@click.argument("file_b", type=click.Path(exists=True))
def varleq(file_a: str, file_b: str) -> None:
    """Exit 0 when V(A) <= V(B), else 1."""
    a = _load(file_a)
    b = _load(file_b)
    try:
        ok = classops.var_leq(a, b)
    except finalg.InvalidAlgebra as exc:
        _fail(str(exc), EXIT_INVALID)
    click.echo("true" if ok else "false")
    sys.exit(0 if ok else EXIT_FALSE)


@main.command()
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True))
@click.option("--dot", type=click.Path(), default=None, help="write a DOT digraph here")
def poset(files: tuple[str, ...], dot: str | None) -> None:
    """Variety poset of the given algebras."""
    algs = [_load(f) for f in files]
    p = classops.variety_poset(algs)
    for c in range(len(p.classes)):
        click.echo(f"class {c}: {p.class_label(c)}")
    for lo, hi in p.covers:
        click.echo(f"{p.class_label(lo)} < {p.class_label(hi)}")
    if dot:
        Path(dot).write_text(classops.poset_dot(p))
        click.echo(dot)


# ---------------------------------------------------------------------------


@main.command("enumerate")
@click.option("--size", type=int, required=True)
@click.option("--commutative", is_flag=True)
@click.option("--integral", is_flag=True)
@click.option("--chain", is_flag=True)
@click.option("--count-only", is_flag=True)
@click.option("--out", type=click.Path(), default=None, help="directory for one JSON per algebra")
@click.option("--cap", type=int, default=enumeration.SIZE_CAP, show_default=True)
@_jobs_option
def enumerate_cmd(size: int, commutative: bool, integral: bool, chain: bool,
                  count_only: bool, out: str | None, cap: int, jobs: int) -> None:
    """All residuated lattices of a size, up to isomorphism."""
    try:
        cat = enumeration.enumerate_rl(
            enumeration.SearchConstraints(
                size=size, commutative=commutative, integral=integral, chain=chain),
            cap=cap, jobs=jobs)
    except ValueError as exc:
        _fail(str(exc), EXIT_INVALID)
    click.echo(f"count: {len(cat)}")
    if count_only:
        return
    if out:
        out_dir = Path(out)
        out_dir.mkdir(parents=True, exist_ok=True)
        for alg in cat:
            path = out_dir / f"{alg.name}.json"
            path.write_text(finalg.dumps(alg))
            click.echo(str(path))
    else:
        for alg in cat:
            click.echo(alg.name)


@main.command()
@click.option("--size-max", type=int, required=True)
@click.option("--pred", required=True, help="expression over named properties with & | ! ()")
@click.option("--commutative", is_flag=True)
@click.option("--integral", is_flag=True)
@click.option("--chain", is_flag=True)
@click.option("--out", type=click.Path(), default=None)
@_jobs_option
def find(size_max: int, pred: str, commutative: bool, integral: bool,
         chain: bool, out: str | None, jobs: int) -> None:
    """Smallest algebra satisfying a predicate, or exit 1."""
    try:
        constraints = enumeration.SearchConstraints(
            size=size_max, commutative=commutative, integral=integral,
            chain=chain, predicate=pred)
        witness = enumeration.find_example(constraints, cap=size_max, jobs=jobs)
    except ValueError as exc:
        _fail(str(exc), EXIT_INVALID)
    if witness is None:
        click.echo("none")
        sys.exit(EXIT_FALSE)
    _emit_algebra(witness, out)


# ---------------------------------------------------------------------------


@main.group()
def report() -> None:
    """Generated artifacts: delimited data plus rendered figures."""


@report.command("lambda")
@click.option("--out", type=click.Path(), required=True, help="output directory")
@click.option("--stamp", is_flag=True, help="include a generation timestamp")
def report_lambda(out: str, stamp: bool) -> None:
    """Probe the lambda equations against the ordinal-sum index."""
    stamp_text = None
    if stamp:
        import datetime

        stamp_text = datetime.datetime.now(datetime.timezone.utc).isoformat()
    csv_path, png_path, rows = reporting.lambda_report(out, stamp=stamp_text)
    click.echo(str(csv_path))
    click.echo(str(png_path))
    mismatched = sum(1 for r in rows if r.mismatches)
    click.echo(f"chains: {len(rows)}, with index/lambda mismatch: {mismatched}")


if __name__ == "__main__":
    main()
