"""Algebra files and report serialization.

Algebra file (JSON)::

    {"field": "Q" | "Fp:<p>", "dim": d, "basis": [names],
     "brackets": [{"i": i, "j": j, "terms": [[k, "coeff"], ...]}, ...],   # i < j only
     "module": "trivial" | "adjoint" | {"dim": m, "action": [matrix per generator]},
     "cartan": [indices]}

Scalars are strings: "a/b" or "a" over Q, a residue "r" over F_p.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .driver import CohomologyReport
from .errors import FieldError, ParseError, ValidationError
from .fields import Field
from .lie import CartanTag, GModule, LieAlgebra, check_cartan_tag, make_algebra, make_module

BASIS_CONVENTION = ("C^n basis: (S, v) with S an increasing n-subset of algebra indices in "
                    "lexicographic order, module index v varying fastest; index = rank(S) * dim M + v")


def _need(doc: dict, key: str, kind, where: str = ""):
    if key not in doc:
        raise ParseError(f"{where}{key}: missing")
    val = doc[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise ParseError(f"{where}{key}: expected {getattr(kind, '__name__', kind)}, "
                         f"got {type(val).__name__}")
    return val


def _scalar(field: Field, text, where: str):
    if not isinstance(text, str):
        raise ParseError(f"{where}: scalars must be strings, got {text!r}")
    try:
        return field.parse_scalar(text)
    except FieldError as exc:
        raise ParseError(f"{where}: {exc}") from None


def algebra_from_document(doc: dict) -> tuple[LieAlgebra, GModule, CartanTag]:
    if not isinstance(doc, dict):
        raise ParseError("top level: expected a JSON object")
    try:
        field = Field.parse(_need(doc, "field", str))
    except FieldError as exc:
        raise ParseError(f"field: {exc}") from None
    dim = _need(doc, "dim", int)
    names = doc.get("basis", [f"x{i}" for i in range(dim)])
    if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
        raise ParseError("basis: expected a list of strings")
    brackets = {}
    for n, entry in enumerate(_need(doc, "brackets", list)):
        where = f"brackets[{n}]."
        if not isinstance(entry, dict):
            raise ParseError(f"brackets[{n}]: expected an object")
        i, j = _need(entry, "i", int, where), _need(entry, "j", int, where)
        if i >= j:
            raise ParseError(f"brackets[{n}]: upper-triangular bracket list required (i < j), got ({i}, {j})")
        if (i, j) in brackets:
            raise ParseError(f"brackets[{n}]: duplicate pair ({i}, {j})")
        terms = {}
        for t, term in enumerate(_need(entry, "terms", list, where)):
            if not (isinstance(term, list) and len(term) == 2 and isinstance(term[0], int)):
                raise ParseError(f"{where}terms[{t}]: expected [index, \"coeff\"]")
            k = term[0]
            terms[k] = terms.get(k, 0) + _scalar(field, term[1], f"{where}terms[{t}]")
        brackets[(i, j)] = terms
    algebra = make_algebra(field, dim, brackets, names, name=doc.get("name", "custom"))
    mod_doc = doc.get("module", "trivial")
    if mod_doc in ("trivial", "adjoint"):
        module = make_module(mod_doc, algebra)
    elif isinstance(mod_doc, dict):
        m = _need(mod_doc, "dim", int, "module.")
        action = _need(mod_doc, "action", list, "module.")
        if len(action) != dim:
            raise ParseError(f"module.action: expected {dim} matrices, got {len(action)}")
        mats = []
        for a, A in enumerate(action):
            if not isinstance(A, list) or len(A) != m or any(not isinstance(r, list) or len(r) != m for r in A):
                raise ParseError(f"module.action[{a}]: expected a {m}x{m} matrix")
            mats.append([[_scalar(field, x, f"module.action[{a}][{r}][{c}]") for c, x in enumerate(row)]
                         for r, row in enumerate(A)])
        module = make_module("explicit", algebra, mats)
    else:
        raise ParseError("module: expected \"trivial\", \"adjoint\" or an object")
    cartan = doc.get("cartan", [])
    if not isinstance(cartan, list) or not all(isinstance(c, int) and 0 <= c < dim for c in cartan):
        raise ParseError("cartan: expected a list of basis indices")
    tag = CartanTag(tuple(cartan))
    check_cartan_tag(algebra, tag)
    return algebra, module, tag


def parse_algebra_file(path) -> tuple[LieAlgebra, GModule, CartanTag]:
    """Read and validate an algebra file.

    Raises ParseError for malformed input and ValidationError when the data
    parse but violate Jacobi or the representation law.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return algebra_from_document(doc)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from None


def algebra_to_document(algebra: LieAlgebra, module: GModule | str = "trivial",
                        tag: CartanTag | None = None) -> dict:
    F = algebra.field
    brackets = []
    for i, j, terms in algebra.structure_pairs():
        brackets.append({"i": i, "j": j, "terms": [[k, F.format(c)] for k, c in sorted(terms.items())]})
    if isinstance(module, GModule):
        if module.kind in ("trivial", "adjoint"):
            mod = module.kind
        else:
            mod = {"dim": module.dim,
                   "action": [[[F.format(x) for x in row] for row in A] for A in module.action]}
    else:
        mod = module
    doc = {"field": str(F), "dim": algebra.dim, "basis": list(algebra.basis_names),
           "brackets": brackets, "module": mod, "cartan": list(tag.indices) if tag else []}
    if algebra.name != "custom":
        doc["name"] = algebra.name
    return doc


def write_algebra_file(path, algebra, module="trivial", tag=None) -> None:
    Path(path).write_text(json.dumps(algebra_to_document(algebra, module, tag), indent=2) + "\n")


# -- reports -------------------------------------------------------------------


def report_document(report: CohomologyReport, config: dict | None = None,
                    verdicts: list | None = None) -> dict:
    body = report.to_dict()
    doc = {"config": config or {},
           "basis_order": {"algebra": report.algebra["basis"], "module_dim": report.module["dim"],
                           "convention": BASIS_CONVENTION}}
    doc.update(body)
    if verdicts is not None:
        doc["verdicts"] = verdicts
    doc["timings_ms"] = doc.pop("timings_ms", {})
    return doc


def dumps_report(report: CohomologyReport, config: dict | None = None, verdicts=None) -> str:
    return json.dumps(report_document(report, config, verdicts), indent=2, sort_keys=False) + "\n"


def loads_report(text: str) -> CohomologyReport:
    doc = json.loads(text)
    return CohomologyReport.from_dict(doc)


CSV_COLUMNS = ("n", "dimC_full", "dimC_reduced", "dimZ", "dimB", "betti")


def report_csv(report: CohomologyReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in report.per_n:
        w.writerow([r.n, r.dim_C_full, "" if r.dim_C_reduced is None else r.dim_C_reduced,
                    r.dim_Z, r.dim_B, r.betti])
    return buf.getvalue()


def report_text(report: CohomologyReport) -> str:
    head = (f"H^*({report.algebra['name']}, {report.module['kind']}) over {report.field}, "
            f"mode={report.mode}")
    lines = [head, f"{'n':>3} {'dimC':>8} {'dimC_red':>8} {'dimZ':>8} {'dimB':>8} {'betti':>6}"]
    for r in report.per_n:
        red = "-" if r.dim_C_reduced is None else r.dim_C_reduced
        lines.append(f"{r.n:>3} {r.dim_C_full:>8} {red:>8} {r.dim_Z:>8} {r.dim_B:>8} {r.betti:>6}")
    lines.append("betti: " + " ".join(str(b) for b in report.betti))
    return "\n".join(lines) + "\n"
