"""Dataset, scenario and scheme files, plus exact/decimal rendering of rationals."""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any

from .core import ClassScheme, Dataset, Paper
from .evolution import ADD_CITATION, ADD_PAPER, Delta, Scenario

DATASET_FIELDS = ("id", "owner", "citations")
HALF_EVEN = "half-even"
HALF_UP = "half-up"


class ParseError(ValueError):
    """Malformed input file; the message names the offending field or step."""


# -- rendering ----------------------------------------------------------------

def render_decimal(value: Fraction | int, places: int = 4, rounding: str = HALF_EVEN) -> str:
    """Fixed-point rendering of an exact rational, rounded exactly."""
    value = Fraction(value)
    scaled = abs(value) * 10**places
    whole = math.floor(scaled)
    rest = scaled - whole
    if rest > Fraction(1, 2) or (
        rest == Fraction(1, 2) and (rounding == HALF_UP or whole % 2 == 1)
    ):
        whole += 1
    digits = str(whole).rjust(places + 1, "0")
    body = digits if places == 0 else f"{digits[:-places]}.{digits[-places:]}"
    return f"-{body}" if value < 0 and whole else body


def rational_json(value: Fraction | int, places: int = 4) -> dict[str, Any]:
    value = Fraction(value)
    return {
        "num": value.numerator,
        "den": value.denominator,
        "decimal": render_decimal(value, places),
    }


def parse_rational(text: Any, where: str) -> Fraction:
    if isinstance(text, bool):
        raise ParseError(f"{where}: expected a number, got {text!r}")
    try:
        if isinstance(text, float):
            return Fraction(repr(text))
        return Fraction(text)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: expected a number, got {text!r}") from None


# -- datasets -----------------------------------------------------------------

def _paper_from_record(rec: Any, where: str) -> Paper:
    if not isinstance(rec, dict):
        raise ParseError(f"{where}: expected an object with fields {', '.join(DATASET_FIELDS)}")
    unknown = set(rec) - set(DATASET_FIELDS)
    if unknown:
        raise ParseError(f"{where}: unknown field(s) {', '.join(sorted(unknown))}")
    missing = [f for f in DATASET_FIELDS if f not in rec]
    if missing:
        raise ParseError(f"{where}: missing field(s) {', '.join(missing)}")
    pid, owner, cites = rec["id"], rec["owner"], rec["citations"]
    if isinstance(pid, bool) or not isinstance(pid, int):
        raise ParseError(f"{where}: field 'id' must be an integer")
    if not isinstance(owner, str) or not owner:
        raise ParseError(f"{where}: field 'owner' must be a non-empty string")
    if isinstance(cites, bool) or not isinstance(cites, int) or cites < 0:
        raise ParseError(f"{where}: field 'citations' must be a non-negative integer")
    return Paper(pid, owner, cites)


def dataset_from_obj(obj: Any, default_label: str = "dataset") -> Dataset:
    if not isinstance(obj, dict):
        raise ParseError("dataset: expected an object with 'papers'")
    unknown = set(obj) - {"label", "papers"}
    if unknown:
        raise ParseError(f"dataset: unknown field(s) {', '.join(sorted(unknown))}")
    if "papers" not in obj or not isinstance(obj["papers"], list):
        raise ParseError("dataset: field 'papers' must be a list")
    label = obj.get("label", default_label)
    if not isinstance(label, str) or not label:
        raise ParseError("dataset: field 'label' must be a non-empty string")
    papers = [_paper_from_record(r, f"papers[{i}]") for i, r in enumerate(obj["papers"])]
    return _checked_dataset(label, papers)


def _checked_dataset(label: str, papers: list[Paper]) -> Dataset:
    if not papers:
        raise ParseError(f"dataset {label!r}: no papers (empty reference set)")
    seen: set[int] = set()
    for p in papers:
        if p.id in seen:
            raise ParseError(f"dataset {label!r}: duplicate id {p.id}")
        seen.add(p.id)
    return Dataset(label, tuple(papers))


def dataset_from_csv(text: str, label: str = "dataset") -> Dataset:
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError("csv: empty file, expected header id,owner,citations")
    header = [h.strip() for h in rows[0]]
    if tuple(header) != DATASET_FIELDS:
        raise ParseError(f"csv: header must be id,owner,citations, got {','.join(header)}")
    papers = []
    for line, row in enumerate(rows[1:], start=2):
        if len(row) != 3:
            raise ParseError(f"csv line {line}: expected 3 fields, got {len(row)}")
        pid, owner, cites = (cell.strip() for cell in row)
        try:
            rec = {"id": int(pid), "owner": owner, "citations": int(cites)}
        except ValueError:
            raise ParseError(f"csv line {line}: id and citations must be integers") from None
        papers.append(_paper_from_record(rec, f"csv line {line}"))
    return _checked_dataset(label, papers)


def dataset_to_obj(dataset: Dataset) -> dict[str, Any]:
    return {
        "label": dataset.label,
        "papers": [{"id": p.id, "owner": p.owner, "citations": p.citations} for p in dataset.papers],
    }


def dataset_to_csv(dataset: Dataset) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(DATASET_FIELDS)
    for p in dataset.papers:
        writer.writerow((p.id, p.owner, p.citations))
    return out.getvalue()


def load_json(text: str, where: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def read_dataset(text: str, name: str = "dataset") -> Dataset:
    """Parse a dataset given as JSON or CSV; the format is sniffed from the content."""
    label = Path(name).stem or "dataset"
    stripped = text.lstrip()
    if not stripped:
        raise ParseError(f"{name}: empty input")
    if stripped[0] in "{[":
        return dataset_from_obj(load_json(text, name), default_label=label)
    return dataset_from_csv(text, label=label)


# -- scenarios ----------------------------------------------------------------

STEP_FIELDS = {"case", "op", "owner", "from_count"}


def _delta_from_record(rec: Any, index: int) -> tuple[str, Delta]:
    where = f"steps[{index}]"
    if not isinstance(rec, dict):
        raise ParseError(f"{where}: expected an object")
    unknown = set(rec) - STEP_FIELDS
    if unknown:
        raise ParseError(f"{where}: unknown field(s) {', '.join(sorted(unknown))}")
    case = rec.get("case")
    if not isinstance(case, str) or not case:
        raise ParseError(f"{where}: field 'case' must be a non-empty string")
    where = f"step {case!r}"
    op, owner = rec.get("op"), rec.get("owner")
    if not isinstance(owner, str) or not owner:
        raise ParseError(f"{where}: field 'owner' must be a non-empty string")
    if op == ADD_PAPER:
        if "from_count" in rec:
            raise ParseError(f"{where}: 'from_count' is only allowed for add_citation")
        return case, Delta.add_paper(owner)
    if op == ADD_CITATION:
        fc = rec.get("from_count")
        if isinstance(fc, bool) or not isinstance(fc, int) or fc < 0:
            raise ParseError(f"{where}: add_citation needs a non-negative integer 'from_count'")
        return case, Delta.add_citation(owner, fc)
    raise ParseError(f"{where}: field 'op' must be add_paper or add_citation, got {op!r}")


def scenario_from_obj(obj: Any, base_dir: Path | None = None) -> Scenario:
    if not isinstance(obj, dict):
        raise ParseError("scenario: expected an object")
    unknown = set(obj) - {"name", "initial", "steps"}
    if unknown:
        raise ParseError(f"scenario: unknown field(s) {', '.join(sorted(unknown))}")
    name = obj.get("name", "scenario")
    if not isinstance(name, str):
        raise ParseError("scenario: field 'name' must be a string")
    initial = obj.get("initial")
    if isinstance(initial, str):
        path = Path(initial)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        try:
            text = path.read_text()
        except OSError as exc:
            raise ParseError(f"scenario: cannot read initial dataset {initial!r}: {exc.strerror}") from None
        dataset = read_dataset(text, str(path))
    elif isinstance(initial, dict):
        dataset = dataset_from_obj(initial, default_label="initial")
    else:
        raise ParseError("scenario: field 'initial' must be a dataset object or a path")
    steps_raw = obj.get("steps", [])
    if not isinstance(steps_raw, list):
        raise ParseError("scenario: field 'steps' must be a list")
    steps = [_delta_from_record(rec, i) for i, rec in enumerate(steps_raw)]
    labels = [dataset.label] + [case for case, _ in steps]
    dupes = sorted({x for x in labels if labels.count(x) > 1})
    if dupes:
        raise ParseError(f"scenario: duplicate case label(s) {', '.join(dupes)}")
    return Scenario(name, dataset, tuple(steps))


def read_scenario(text: str, name: str = "scenario", base_dir: Path | None = None) -> Scenario:
    if not text.strip():
        raise ParseError(f"{name}: empty input")
    return scenario_from_obj(load_json(text, name), base_dir)


def scenario_to_obj(scenario: Scenario) -> dict[str, Any]:
    steps = []
    for case, d in scenario.steps:
        rec: dict[str, Any] = {"case": case, "op": d.op, "owner": d.owner}
        if d.op == ADD_CITATION:
            rec["from_count"] = d.from_count
        steps.append(rec)
    return {"name": scenario.name, "initial": dataset_to_obj(scenario.initial), "steps": steps}


# -- schemes ------------------------------------------------------------------

def scheme_from_obj(obj: Any) -> ClassScheme:
    if not isinstance(obj, dict) or set(obj) - {"name", "boundaries", "weights"}:
        raise ParseError("scheme: expected an object with 'boundaries' and 'weights' only")
    bounds, weights = obj.get("boundaries"), obj.get("weights")
    if not isinstance(bounds, list) or not isinstance(weights, list):
        raise ParseError("scheme: 'boundaries' and 'weights' must be lists")
    try:
        return ClassScheme(
            tuple(parse_rational(b, f"boundaries[{i}]") for i, b in enumerate(bounds)),
            tuple(parse_rational(w, f"weights[{i}]") for i, w in enumerate(weights)),
            name=str(obj.get("name", "custom")),
        )
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(f"scheme: {exc}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"
