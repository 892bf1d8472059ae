"""JSON reading and writing for presentations, group tables and certificates."""

import json
from pathlib import Path
from typing import Any

from ..algebra.isotropy import AnisotropyVerdict, SplitCertificate
from ..algebra.ppoly import (
    DiagonalForm,
    ElementaryStep,
    FormEntry,
    PPolynomial,
    Substitution,
)
from ..analysis.pipeline import Certificate, Verdict
from ..cohomology.h1 import ExclusionCertificate
from ..config import Settings
from ..errors import InvalidInput, UnipotentCertError
from ..fields.finite import FiniteField, first_irreducible, get_field
from ..fields.laurent import LaurentSeries
from ..fields.literal import parse_laurent
from ..fields.ratfn import RatFn
from ..groups.table import FiniteGroupTable


def read_json(filepath: Path) -> Any:
    """Load a JSON document.

    Args:
        filepath: Path to the document

    Returns:
        The decoded JSON value

    Raises:
        InvalidInput: If the file is not valid JSON
    """
    try:
        with open(filepath) as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{filepath}: not valid JSON ({exc})") from exc


def write_json(data: Any, filepath: Path | None = None) -> str:
    """Serialize with stable key order.

    Args:
        data: JSON-compatible value
        filepath: Also write the text here when given

    Returns:
        The serialized text
    """
    text = json.dumps(data, indent=2, sort_keys=True)
    if filepath is not None:
        with open(filepath, "w") as f:
            f.write(text + "\n")
    return text


def _require(
    doc: dict[str, Any], key: str, kind: type | tuple[type, ...], where: str
) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise InvalidInput(f"{where}: missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise InvalidInput(f"{where}: field {key!r} has the wrong type")
    return value


# Presentations.


def field_from_dict(doc: dict[str, Any]) -> FiniteField:
    p = _require(doc, "p", int, "presentation")
    q = doc.get("q", p)
    modulus = doc.get("modulus")
    try:
        if modulus is None and q != p:
            e = 1
            while p**e < q:
                e += 1
            if p**e != q:
                raise InvalidInput(f"q = {q} is not a power of p = {p}")
            modulus = first_irreducible(p, e)
        fld = get_field(p, modulus)
    except UnipotentCertError as exc:
        raise InvalidInput(f"presentation field: {exc}") from exc
    if fld.q != q:
        raise InvalidInput(
            f"q = {q} does not match the modulus (field has {fld.q} elements)"
        )
    return fld


def field_to_dict(fld: FiniteField) -> dict[str, Any]:
    out: dict[str, Any] = {"p": fld.p, "q": fld.q}
    if fld.modulus is not None:
        out["modulus"] = list(fld.modulus)
    return out


def parse_coefficient(text: Any, fld: FiniteField, where: str) -> RatFn:
    if isinstance(text, int) and not isinstance(text, bool):
        text = str(text)
    if not isinstance(text, str):
        raise InvalidInput(f"{where}: coefficient must be a string literal")
    try:
        return RatFn.parse(text, fld)
    except UnipotentCertError as exc:
        raise InvalidInput(f"{where}: {exc}") from exc


def presentation_from_dict(doc: dict[str, Any]) -> PPolynomial:
    """Build P from a document with p, q, variables and terms.

    Each term is ``{"var", "height", "coeff"}``; coeff defaults to "1".
    """
    fld = field_from_dict(doc)
    variables = _require(doc, "variables", list, "presentation")
    if not variables or not all(isinstance(v, str) for v in variables):
        raise InvalidInput("presentation: variables must be a nonempty list of names")
    if len(set(variables)) != len(variables):
        raise InvalidInput(f"presentation: duplicate variable names {variables}")
    index = {name: i for i, name in enumerate(variables)}
    terms: list[tuple[int, int, RatFn]] = []
    for n, term in enumerate(_require(doc, "terms", list, "presentation")):
        where = f"term {n}"
        name = _require(term, "var", str, where)
        if name not in index:
            raise InvalidInput(f"{where}: unknown variable {name!r}")
        height = _require(term, "height", int, where)
        if height < 0:
            raise InvalidInput(f"{where}: negative height {height}")
        coeff = parse_coefficient(term.get("coeff", "1"), fld, where)
        terms.append((index[name], height, coeff))
    return PPolynomial(fld, variables, terms)


def presentation_to_dict(P: PPolynomial) -> dict[str, Any]:
    out = field_to_dict(P.field)
    out["variables"] = list(P.variables)
    out["terms"] = [
        {"var": P.variables[i], "height": j, "coeff": str(c)}
        for (i, j), c in P.terms.items()
    ]
    return out


def load_presentation(filepath: Path) -> PPolynomial:
    """Read a presentation file.

    Args:
        filepath: JSON document with p, q, variables and terms

    Returns:
        The p-polynomial P it describes
    """
    return presentation_from_dict(read_json(filepath))


# Groups.


def group_from_dict(doc: dict[str, Any]) -> FiniteGroupTable:
    order = _require(doc, "order", int, "group")
    table = _require(doc, "table", list, "group")
    if len(table) != order or any(
        not isinstance(row, list) or len(row) != order for row in table
    ):
        raise InvalidInput(f"group: table must be {order} x {order}")
    if any(not isinstance(x, int) for row in table for x in row):
        raise InvalidInput("group: table entries must be integers")
    return FiniteGroupTable(table, doc.get("name"))


def group_to_dict(G: FiniteGroupTable) -> dict[str, Any]:
    return {"name": G.name, **G.to_dict()}


def load_group(filepath: Path) -> FiniteGroupTable:
    """Read a group table file.

    Args:
        filepath: JSON document with order, table and an optional name

    Returns:
        The validated group
    """
    return group_from_dict(read_json(filepath))


# Laurent series and the pieces of certificates.


def series_to_text(a: LaurentSeries) -> str:
    """Literal for the known terms of a series (the window is stored separately)."""
    parts = []
    for j, c in sorted(a.terms().items()):
        mono = "1" if j == 0 else ("t" if j == 1 else f"t^{j}")
        parts.append(mono if c.is_one() else f"({c})*{mono}")
    return " + ".join(parts) or "0"


def series_to_dict(a: LaurentSeries) -> dict[str, Any]:
    return {"expr": series_to_text(a), "anchor": a.anchor, "precision": a.precision}


def series_from_dict(doc: dict[str, Any], fld: FiniteField) -> LaurentSeries:
    expr = _require(doc, "expr", str, "series")
    return parse_laurent(
        expr,
        fld,
        _require(doc, "precision", int, "series"),
        _require(doc, "anchor", int, "series"),
    )


def substitution_to_dict(
    sigma: Substitution, names: tuple[str, ...]
) -> list[dict[str, Any]]:
    if sigma.steps is None:
        raise ValueError("only substitutions with recorded steps can be serialized")
    return [
        {
            "kind": step.kind,
            "target": names[step.target],
            "source": None if step.source is None else names[step.source],
            "coeff": None if step.coeff is None else str(step.coeff),
            "height": step.height,
        }
        for step in sigma.steps
    ]


def substitution_from_dict(steps: list[dict[str, Any]], P: PPolynomial) -> Substitution:
    index = {name: i for i, name in enumerate(P.variables)}
    parsed = []
    for n, doc in enumerate(steps):
        where = f"substitution step {n}"
        try:
            parsed.append(
                ElementaryStep(
                    kind=_require(doc, "kind", str, where),
                    target=index[_require(doc, "target", str, where)],
                    source=None if doc.get("source") is None else index[doc["source"]],
                    coeff=(
                        None
                        if doc.get("coeff") is None
                        else parse_coefficient(doc["coeff"], P.field, where)
                    ),
                    height=int(doc.get("height", 0)),
                )
            )
        except (KeyError, ValueError) as exc:
            raise InvalidInput(f"{where}: {exc}") from exc
    return Substitution.from_steps(P.field, P.r, parsed)


def _form_to_list(form: DiagonalForm, names: tuple[str, ...]) -> list[dict[str, Any]]:
    return [
        {"var": names[e.var], "coeff": str(e.coeff), "height": e.height}
        for e in form.entries
    ]


def _form_from_list(entries: list[dict[str, Any]], P: PPolynomial) -> DiagonalForm:
    index = {name: i for i, name in enumerate(P.variables)}
    out = []
    for n, doc in enumerate(entries):
        where = f"form entry {n}"
        name = _require(doc, "var", str, where)
        if name not in index:
            raise InvalidInput(f"{where}: unknown variable {name!r}")
        out.append(
            FormEntry(
                index[name],
                parse_coefficient(doc.get("coeff"), P.field, where),
                _require(doc, "height", int, where),
            )
        )
    return DiagonalForm(P.field, tuple(out))


def split_to_dict(split: SplitCertificate, P: PPolynomial) -> dict[str, Any]:
    names = P.variables
    return {
        "kind": "split",
        "chain": [substitution_to_dict(sigma, names) for sigma in split.chain],
        "elimination": [names[i] for i in split.elimination],
        "free": [names[i] for i in split.free],
    }


def split_from_dict(doc: dict[str, Any], P: PPolynomial) -> SplitCertificate:
    index = {name: i for i, name in enumerate(P.variables)}
    try:
        elimination = tuple(index[name] for name in doc.get("elimination", []))
        free = tuple(index[name] for name in doc.get("free", []))
    except KeyError as exc:
        raise InvalidInput(f"split evidence names unknown variable {exc}") from exc
    chain = tuple(substitution_from_dict(steps, P) for steps in doc.get("chain", []))
    return SplitCertificate(chain, elimination, free)


def exclusion_to_dict(cert: ExclusionCertificate) -> dict[str, Any]:
    Q = cert.presentation
    return {
        "kind": "exclusion",
        "target": series_to_dict(cert.target),
        "target_valuation": cert.target_valuation,
        "presentation": presentation_to_dict(Q),
        "form": _form_to_list(cert.form, Q.variables),
        "method": cert.evidence.method,
        "m_bound": cert.m_bound,
        "residue_form": cert.residue_form,
        "argument": list(cert.argument),
        "chain": [substitution_to_dict(sigma, Q.variables) for sigma in cert.chain],
        "coordinate": cert.coordinate,
        "rank": cert.rank,
    }


def exclusion_from_dict(doc: dict[str, Any], P: PPolynomial) -> ExclusionCertificate:
    """Rebuild an exclusion certificate over the field and variables of P.

    The anisotropy verdict is taken as recorded; ``replay_exclusion``
    decides it again.
    """
    Q = presentation_from_dict(_require(doc, "presentation", dict, "exclusion"))
    if Q.field is not P.field or Q.variables != P.variables:
        raise InvalidInput(
            "exclusion presentation does not match the input's field and variables"
        )
    form = _form_from_list(_require(doc, "form", list, "exclusion"), P)
    return ExclusionCertificate(
        target=series_from_dict(_require(doc, "target", dict, "exclusion"), P.field),
        presentation=Q,
        evidence=AnisotropyVerdict("anisotropic", form, method=doc.get("method")),
        m_bound=_require(doc, "m_bound", int, "exclusion"),
        target_valuation=_require(doc, "target_valuation", int, "exclusion"),
        argument=tuple(doc.get("argument", [])),
        chain=tuple(substitution_from_dict(steps, P) for steps in doc.get("chain", [])),
        coordinate=doc.get("coordinate"),
        rank=doc.get("rank"),
    )


def certificate_to_dict(cert: Certificate) -> dict[str, Any]:
    """Serializable form of a certificate.

    Args:
        cert: Result of ``classify``

    Returns:
        Document with verdict, evidence, diagnostics, input echo and budgets
    """
    P = cert.presentation
    evidence: dict[str, Any] | None = None
    if cert.split is not None:
        evidence = split_to_dict(cert.split, P)
    elif cert.exclusion is not None:
        evidence = exclusion_to_dict(cert.exclusion)
    return {
        "verdict": cert.verdict.value,
        "evidence": evidence,
        "diagnostics": cert.diagnostics,
        "input": presentation_to_dict(P),
        "budgets": cert.settings.to_dict(),
        "seed": cert.seed,
        "version": cert.version,
    }


def certificate_from_dict(doc: dict[str, Any]) -> Certificate:
    """Parse a certificate; the input echo defines field and variables."""
    try:
        verdict = Verdict(_require(doc, "verdict", str, "certificate"))
    except ValueError as exc:
        raise InvalidInput(f"certificate: {exc}") from exc
    P = presentation_from_dict(_require(doc, "input", dict, "certificate"))
    try:
        settings = Settings.from_dict(doc.get("budgets", {}))
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"certificate budgets: {exc}") from exc
    if "seed" in doc and doc["seed"] != settings.seed:
        settings = settings.replace(seed=doc["seed"])
    evidence = doc.get("evidence")
    split = exclusion = None
    if evidence is not None:
        kind = _require(evidence, "kind", str, "evidence")
        if kind == "split":
            split = split_from_dict(evidence, P)
        elif kind == "exclusion":
            exclusion = exclusion_from_dict(evidence, P)
        else:
            raise InvalidInput(f"evidence: unknown kind {kind!r}")
    return Certificate(
        verdict=verdict,
        presentation=P,
        settings=settings,
        split=split,
        exclusion=exclusion,
        diagnostics=dict(doc.get("diagnostics") or {}),
        version=doc.get("version", ""),
    )


def load_certificate(filepath: Path) -> Certificate:
    """Read a certificate written by ``classify``.

    Args:
        filepath: Certificate document, including its input echo

    Returns:
        The parsed certificate, not yet verified
    """
    return certificate_from_dict(read_json(filepath))
