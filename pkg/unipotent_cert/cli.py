"""Command-line interface for unipotent-cert."""

import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from pathlib import Path
from typing import Any

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from . import __version__
from .config import Settings
from .errors import (
    DichotomyViolation,
    TrivialGroup,
    UnipotentCertError,
)

logger = logging.getLogger(__name__)

console = Console(stderr=True)

VERDICT_STYLE = {
    "SPLIT_SPECIAL": "green",
    "NOT_SPLIT_NOT_SPECIAL": "magenta",
    "UNDECIDED": "yellow",
}


class InputError(click.ClickException):
    """Malformed or unsupported input; exit code 2."""

    exit_code = 2


class Undecided(click.ClickException):
    exit_code = 1


class CertificationFailure(click.ClickException):
    """The computation itself failed on valid input; exit code 1."""

    exit_code = 1


def as_click_error(
    exc: UnipotentCertError, where: Path | None = None
) -> click.ClickException:
    """Map library errors onto exit codes: bad input is 2, everything else 1."""
    message = f"{where}: {exc}" if where is not None else str(exc)
    if isinstance(exc, DichotomyViolation):
        return CertificationFailure(f"dichotomy violated: {message}")
    if isinstance(exc, ValueError | ZeroDivisionError):
        return InputError(message)
    return CertificationFailure(message)


def setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


def emit(ctx: click.Context, data: Any) -> None:
    """JSON to stdout, or to the --output file."""
    from .data.storage import write_json

    output: Path | None = ctx.obj["output"]
    text = write_json(data, output)
    if output is None:
        click.echo(text)
    else:
        console.print(f"wrote {output}")


def load_input(path: Path) -> Any:
    from .data.storage import load_presentation

    try:
        return load_presentation(path)
    except UnipotentCertError as exc:
        raise as_click_error(exc, path) from exc


def _classify_document(
    doc: dict[str, Any], settings_doc: dict[str, Any]
) -> dict[str, Any]:
    """Worker for batch mode: classify, verify and serialize one presentation."""
    from .analysis.pipeline import classify
    from .analysis.verify import verify
    from .data.storage import certificate_to_dict, presentation_from_dict

    P = presentation_from_dict(doc)
    cert = classify(P, Settings.from_dict(settings_doc))
    result = verify(cert, P)
    out = certificate_to_dict(cert)
    out["verification"] = {
        "ok": result.ok,
        "reasons": result.reasons,
        "notes": result.notes,
    }
    return out


def render_certificate(name: str, cert: dict[str, Any]) -> Panel:
    verdict = cert["verdict"]
    lines = [f"Verdict: [{VERDICT_STYLE[verdict]}]{verdict}[/]"]
    evidence = cert.get("evidence")
    if evidence and evidence["kind"] == "split":
        lines.append(f"Substitutions: {len(evidence['chain'])}")
        lines.append(f"Eliminate: {', '.join(evidence['elimination'])}")
    elif evidence and evidence["kind"] == "exclusion":
        lines.append(f"Excluded target: {evidence['target']['expr']}")
        lines.append(f"Anisotropy: {evidence['method']}")
        lines.append(f"m <= {evidence['m_bound']}")
    for key in ("principal_part", "reduced_principal_part"):
        summary = cert["diagnostics"].get(key)
        if summary:
            lines.append(f"{key.replace('_', ' ')}: {summary['kind']}")
    check = cert.get("verification", {})
    if check:
        status = "yes" if check["ok"] else "NO " + "; ".join(check["reasons"])
        lines.append(f"Verified: {status}")
    return Panel("\n".join(lines), title=name)


@click.group()
@click.option(
    "--precision",
    type=click.IntRange(min=1),
    default=16,
    show_default=True,
    help="Laurent window size N",
)
@click.option(
    "--budget",
    type=click.IntRange(min=0),
    default=8,
    show_default=True,
    help="Substitution steps for split certification",
)
@click.option(
    "--seed",
    type=int,
    default=0,
    show_default=True,
    help="Seed for sampled targets",
)
@click.option(
    "--search-degree",
    type=click.IntRange(min=0),
    default=2,
    show_default=True,
    help="s-degree bound for isotropy witness scans",
)
@click.option(
    "--samples",
    type=click.IntRange(min=0),
    default=4,
    show_default=True,
    help="Torsor targets solved when spot-checking a split verdict",
)
@click.option(
    "--oracle-cap",
    type=click.IntRange(min=1),
    default=200_000,
    show_default=True,
    help="Maximum enumerated half-candidates in the oracle",
)
@click.option(
    "--jobs",
    "-j",
    type=click.IntRange(min=1),
    default=1,
    show_default=True,
    help="Parallel workers for batch classification",
)
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write JSON here instead of stdout",
)
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose output")
@click.version_option(__version__)
@click.pass_context
def cli(
    ctx: click.Context,
    precision: int,
    budget: int,
    seed: int,
    search_degree: int,
    samples: int,
    oracle_cap: int,
    jobs: int,
    output: Path | None,
    verbose: bool,
) -> None:
    """Certify whether G = ker P is split/special or not split/not special.

    P is a separable p-polynomial over k = F_q(s), read from JSON.

    Examples:
        unipotent-cert classify wound.json             # verdict + certificate
        unipotent-cert -j 4 classify samples/*.json    # batch, in parallel
        unipotent-cert h1 --target "1/t + 1" wound.json
        unipotent-cert oracle --vmin -2 --vmax 2 --deg 2 --target "t^-1" wound.json
        unipotent-cert frattini d4.json
        unipotent-cert verify cert.json wound.json
    """
    setup_logging(verbose)
    ctx.ensure_object(dict)
    ctx.obj["settings"] = Settings(
        precision=precision,
        budget=budget,
        seed=seed,
        search_degree=search_degree,
        samples=samples,
        oracle_cap=oracle_cap,
        jobs=jobs,
    )
    ctx.obj["output"] = output


@cli.command()
@click.argument(
    "files",
    nargs=-1,
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@click.pass_context
def classify(ctx: click.Context, files: tuple[Path, ...]) -> None:
    """Classify one or more presentations and emit verified certificates."""
    from .data.storage import presentation_to_dict

    settings: Settings = ctx.obj["settings"]
    documents = [presentation_to_dict(load_input(path)) for path in files]
    settings_doc = settings.to_dict()
    try:
        if settings.jobs > 1 and len(documents) > 1:
            with ProcessPoolExecutor(max_workers=settings.jobs) as pool:
                results = list(
                    pool.map(_classify_document, documents, repeat(settings_doc))
                )
        else:
            results = [_classify_document(doc, settings_doc) for doc in documents]
    except UnipotentCertError as exc:
        raise as_click_error(exc) from exc

    for path, cert in zip(files, results):
        console.print(render_certificate(str(path), cert))
    emit(ctx, results[0] if len(results) == 1 else results)

    if any(
        c["verdict"] == "UNDECIDED" or not c["verification"]["ok"] for c in results
    ):
        ctx.exit(1)


@cli.command()
@click.option("--target", required=True, help="Laurent literal in t, e.g. '1/t + s*t'")
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.pass_context
def h1(ctx: click.Context, target: str, file: Path) -> None:
    """Decide whether the class of TARGET in H^1(k((t)), ker P) is trivial."""
    from .algebra.isotropy import attempt_split
    from .cohomology.h1 import H1Class
    from .data.storage import exclusion_to_dict, series_to_dict
    from .fields.literal import parse_laurent

    settings: Settings = ctx.obj["settings"]
    P = load_input(file)
    try:
        a = parse_laurent(target, P.field, settings.precision)
        split = attempt_split(P, settings.budget).certificate
    except UnipotentCertError as exc:
        raise as_click_error(exc) from exc
    cls = H1Class(a, P, split)
    out: dict[str, Any] = {"target": series_to_dict(a), "valuation": a.valuation()}
    preimage = cls.preimage()
    if preimage is not None:
        out["class"] = "trivial"
        out["preimage"] = {
            name: series_to_dict(x) for name, x in zip(P.variables, preimage)
        }
    else:
        exclusion = cls.exclusion()
        if exclusion is not None:
            out["class"] = "nontrivial"
            out["certificate"] = exclusion_to_dict(exclusion)
        else:
            out["class"] = "unknown"
    console.print(Panel(f"Class of {target}: {out['class']}", title=str(file)))
    emit(ctx, out)
    if out["class"] == "unknown":
        ctx.exit(1)


@cli.command()
@click.option("--vmin", type=int, required=True)
@click.option("--vmax", type=int, required=True)
@click.option(
    "--deg", type=click.IntRange(min=0), required=True, help="s-degree bound D"
)
@click.option("--target", required=True, help="Laurent literal in t")
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.pass_context
def oracle(
    ctx: click.Context, vmin: int, vmax: int, deg: int, target: str, file: Path
) -> None:
    """Exhaustive bounded search for a preimage of TARGET under P."""
    from .cohomology.oracle import brute_force_image
    from .data.storage import series_to_dict
    from .fields.literal import parse_laurent

    settings: Settings = ctx.obj["settings"]
    P = load_input(file)
    try:
        a = parse_laurent(target, P.field, settings.precision)
        result = brute_force_image(P, a, vmin, vmax, deg, settings.oracle_cap)
    except UnipotentCertError as exc:
        raise as_click_error(exc) from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    out: dict[str, Any] = {
        "result": "InImage" if result.in_image else "NotInWindow",
        "window": [vmin, vmax],
        "degree": deg,
        "searched": result.searched,
        "space": result.space,
    }
    if result.preimage is not None:
        out["preimage"] = {
            name: series_to_dict(x) for name, x in zip(P.variables, result.preimage)
        }
    summary = f"{out['result']} ({result.space:,} candidates)"
    console.print(Panel(summary, title=str(file)))
    emit(ctx, out)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.pass_context
def frattini(ctx: click.Context, file: Path) -> None:
    """Frattini subgroup, rank of G/Phi(G) and the non-specialness certificate."""
    from .cohomology.h1 import replay_exclusion
    from .data.storage import exclusion_to_dict, load_group
    from .fields.finite import get_field
    from .groups.frattini import (
        artin_schreier,
        elementary_quotient,
        etale_not_special,
        frattini_subgroup,
        prime_of_order,
    )

    settings: Settings = ctx.obj["settings"]
    try:
        G = load_group(file)
        p = prime_of_order(G)
        phi = frattini_subgroup(G)
    except UnipotentCertError as exc:
        raise as_click_error(exc, file) from exc
    out: dict[str, Any] = {"order": G.order, "p": p, "frattini": phi.sorted()}
    table = Table(title=f"{G.name} ({file})")
    table.add_column("Quantity")
    table.add_column("Value")
    table.add_row("|G|", str(G.order))
    table.add_row("Phi(G)", str(phi.sorted()))
    try:
        rank = elementary_quotient(G)
    except TrivialGroup as exc:
        console.print(table)
        emit(ctx, out)
        raise Undecided(str(exc)) from exc
    assert p is not None
    fld = get_field(p)
    cert = etale_not_special(rank, fld, settings.precision)
    problems = replay_exclusion(cert, artin_schreier(fld))
    out["rank"] = rank
    out["certificate"] = exclusion_to_dict(cert)
    out["verified"] = not problems
    table.add_row("rank of G/Phi(G)", str(rank))
    table.add_row("t^-1 excluded", "yes" if not problems else "; ".join(problems))
    console.print(table)
    emit(ctx, out)
    if problems:
        ctx.exit(1)


@cli.command()
@click.argument(
    "cert_file", type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.pass_context
def verify(ctx: click.Context, cert_file: Path, file: Path) -> None:
    """Re-check CERT_FILE against the presentation in FILE."""
    from .analysis.verify import verify as verify_certificate
    from .data.storage import load_certificate

    P = load_input(file)
    try:
        cert = load_certificate(cert_file)
    except UnipotentCertError as exc:
        raise as_click_error(exc, cert_file) from exc
    result = verify_certificate(cert, P)
    style = "green" if result.ok else "red"
    lines = [f"Verdict: {cert.verdict.value}", f"Valid: [{style}]{result.ok}[/]"]
    lines += [f"- {reason}" for reason in result.reasons]
    lines += [f"note: {note}" for note in result.notes]
    console.print(Panel("\n".join(lines), title=str(cert_file)))
    emit(ctx, {"ok": result.ok, "reasons": result.reasons, "notes": result.notes})
    if not result.ok or not cert.decided:
        ctx.exit(1)


@cli.command()
@click.option(
    "--kind",
    type=click.Choice(["anisotropy", "dichotomy", "all"]),
    default="all",
    show_default=True,
)
@click.option("--max-height", type=click.IntRange(min=0), default=2, show_default=True)
@click.option(
    "--coeff-degree", type=click.IntRange(min=0), default=1, show_default=True
)
@click.option(
    "--variables", type=click.IntRange(min=1, max=4), default=2, show_default=True
)
@click.pass_context
def census(
    ctx: click.Context, kind: str, max_height: int, coeff_degree: int, variables: int
) -> None:
    """Exhaustive agreement and dichotomy-coherence sweeps over F_2(s)."""
    from .analysis.census import anisotropy_census, dichotomy_census

    settings: Settings = ctx.obj["settings"]
    reports = []
    if kind in ("anisotropy", "all"):
        reports.append(anisotropy_census())
    if kind in ("dichotomy", "all"):
        reports.append(
            dichotomy_census(
                settings,
                max_height=max_height,
                coeff_degree=coeff_degree,
                variables=variables,
            )
        )
    table = Table(title="Census")
    table.add_column("Sweep")
    table.add_column("Inputs", justify="right")
    table.add_column("Counts")
    table.add_column("Mismatches", justify="right")
    for report in reports:
        counts = ", ".join(f"{k}: {v}" for k, v in sorted(report.counts.items()))
        table.add_row(
            report.name, str(report.total), counts, str(len(report.mismatches))
        )
    console.print(table)
    emit(
        ctx,
        [
            {
                "name": r.name,
                "total": r.total,
                "counts": dict(r.counts),
                "mismatches": r.mismatches,
            }
            for r in reports
        ],
    )
    if any(not r.ok for r in reports):
        ctx.exit(1)


def main() -> None:
    cli(auto_envvar_prefix="UNIPOTENT_CERT")


if __name__ == "__main__":
    main()
