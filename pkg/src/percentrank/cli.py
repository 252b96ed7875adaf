"""Command-line front end.

    percentrank compute  DATASET  [policy flags] [--by-owner] [--format table|csv|json]
    percentrank scenario SCENARIO [policy flags] [--emit per-case-csv|json]
    percentrank audit    SCENARIO --check strict-independence|same-improvement [...]
    percentrank example  --name A|B1|B73|b-like|tied-crossing [-o FILE]

Exit codes: 0 ok, 2 parse error, 3 policy error, 4 violations found with
``--fail-on-violation``.  ``-`` reads the input from stdin.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import warnings
from pathlib import Path
from typing import Sequence

from . import audit as audit_mod
from .core import SIX_PR, UNATTRIBUTED, ClassScheme, Dataset, ReferenceSetError
from .evolution import (
    ReplayError,
    Scenario,
    example_a,
    example_b_endpoints,
    example_b_like,
    example_tied_crossing,
    replay,
)
from .io import (
    ParseError,
    load_json,
    dataset_to_csv,
    dataset_to_obj,
    dumps,
    rational_json,
    read_dataset,
    read_scenario,
    render_decimal,
    scenario_to_obj,
    scheme_from_obj,
)
from .scoring import (
    CountingRule,
    RankBasis,
    ScoringPolicy,
    TiePolicy,
    group_weights,
    per_owner_report,
)

EXIT_PARSE = 2
EXIT_POLICY = 3
EXIT_VIOLATION = 4

RULES = {"strict-less", "inclusive", "plus-0.9", "fractional"}
EXAMPLES = ("A", "B1", "B73", "b-like", "tied-crossing")


class PolicyError(ValueError):
    pass


class UsageError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_input(path: str) -> tuple[str, str, Path | None]:
    if path == "-":
        return sys.stdin.read(), "stdin", None
    p = Path(path)
    try:
        return p.read_text(), p.name, p.parent
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def _scheme(arg: str) -> ClassScheme:
    if arg.lower() == "6pr":
        return SIX_PR
    text, name, _ = _read_input(arg)
    return scheme_from_obj(load_json(text, name))


def _policy(args: argparse.Namespace) -> ScoringPolicy:
    if args.rule == "fractional":
        if args.ties is not None:
            raise PolicyError("--rule fractional does not take --ties")
        return ScoringPolicy(fractional=True)
    ties = TiePolicy(args.ties or TiePolicy.LOWEST_RANK.value)
    return ScoringPolicy(CountingRule(args.rule), ties)


def _add_policy_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scheme", default="6pr", help="'6pr' or a JSON file with boundaries and weights")
    p.add_argument("--rule", default="strict-less", choices=sorted(RULES))
    p.add_argument("--ties", default=None, choices=[t.value for t in TiePolicy],
                   help="tie policy (default: lowest)")
    p.add_argument("--rank-basis", default="contribution", choices=[b.value for b in RankBasis],
                   help="rank owners by their share of total R or by their own mean R")
    p.add_argument("--precision", type=int, default=4, help="decimal places in rendered output")


def _setup(args: argparse.Namespace) -> tuple[ClassScheme, ScoringPolicy, RankBasis]:
    return _scheme(args.scheme), _policy(args), RankBasis(args.rank_basis)


def _dec(x, args) -> str:
    return render_decimal(x, args.precision)


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join(
        "  ".join(cell.rjust(w) if i else cell.ljust(w) for i, (cell, w) in enumerate(zip(r, widths)))
        for r in rows
    ) + "\n"


def _ranked_owners(report) -> list[str]:
    return sorted(o for o in report.per_owner if o != UNATTRIBUTED) + (
        [UNATTRIBUTED] if UNATTRIBUTED in report.per_owner else []
    )


# -- compute ------------------------------------------------------------------

def cmd_compute(args: argparse.Namespace) -> str:
    text, name, _ = _read_input(args.input)
    dataset = read_dataset(text, name)
    scheme, policy, basis = _setup(args)
    report = per_owner_report(dataset, scheme, policy, basis)
    groups = group_weights(dataset, scheme, policy)
    counts: dict[int, int] = {}
    for p in dataset.papers:
        counts[p.citations] = counts.get(p.citations, 0) + 1
    owners = _ranked_owners(report) if args.by_owner else []

    if args.format == "json":
        obj = {
            "label": report.label,
            "policy": str(policy),
            "scheme": scheme.name,
            "rank_basis": basis.value,
            "n_papers": report.n_papers,
            "n_citations": report.n_citations,
            "i3": rational_json(report.total_i3, args.precision),
            "r": rational_json(report.total_r, args.precision),
            "bins": [
                {
                    "citations": c,
                    "papers": counts[c],
                    "percentage": rational_json(pct, args.precision),
                    "class": k,
                    "weight": rational_json(w, args.precision),
                }
                for c, (pct, k, w) in groups.items()
            ],
        }
        if args.by_owner:
            obj["owners"] = {
                o: {
                    "papers": rec.papers,
                    "citations": rec.citations,
                    "i3": rational_json(rec.i3, args.precision),
                    "r": rational_json(rec.r, args.precision),
                    "share": rational_json(rec.share, args.precision),
                    "rank": None if rec.rank is None else rational_json(rec.rank, args.precision),
                }
                for o in owners
                for rec in [report.per_owner[o]]
            }
        return dumps(obj)

    if args.format == "csv":
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["scope", "papers", "citations", "i3", "r", "share", "rank"])
        w.writerow(["total", report.n_papers, report.n_citations,
                    _dec(report.total_i3, args), _dec(report.total_r, args), _dec(report.total_r, args), ""])
        for o in owners:
            rec = report.per_owner[o]
            w.writerow([o, rec.papers, rec.citations, _dec(rec.i3, args), _dec(rec.r, args),
                        _dec(rec.share, args), "" if rec.rank is None else _dec(rec.rank, args)])
        return out.getvalue()

    # table: one column per citation count, laid out like the worked tables
    cols = list(groups)
    rows = [
        [f"case {report.label}", *(str(c) for c in cols), "total"],
        ["papers n(c)", *(str(counts[c]) for c in cols), str(report.n_papers)],
        ["citations c*n(c)", *(str(c * counts[c]) for c in cols), str(report.n_citations)],
        ["percentage", *(_dec(groups[c][0], args) for c in cols), ""],
        ["class", *("-" if groups[c][1] is None else str(groups[c][1]) for c in cols), ""],
        ["weight w", *(_dec(groups[c][2], args) for c in cols), ""],
        ["w*n(c)", *(_dec(groups[c][2] * counts[c], args) for c in cols), _dec(report.total_i3, args)],
    ]
    text = f"policy {policy}, scheme {scheme.name}\n" + _table(rows)
    text += f"I3 = {_dec(report.total_i3, args)}  R = {_dec(report.total_r, args)}\n"
    if owners:
        orows = [["owner", "papers", "citations", "i3", "r", "share", "rank"]]
        for o in owners:
            rec = report.per_owner[o]
            orows.append([o, str(rec.papers), str(rec.citations), _dec(rec.i3, args), _dec(rec.r, args),
                          _dec(rec.share, args), "" if rec.rank is None else _dec(rec.rank, args)])
        text += "\n" + _table(orows)
    return text


# -- scenario -----------------------------------------------------------------

def _load_scenario(path: str) -> Scenario:
    text, name, base = _read_input(path)
    return read_scenario(text, name, base)


def cmd_scenario(args: argparse.Namespace) -> str:
    scenario = _load_scenario(args.input)
    scheme, policy, basis = _setup(args)
    snapshots = replay(scenario)
    reports = [per_owner_report(s, scheme, policy, basis) for s in snapshots]
    owners = sorted({o for r in reports for o in r.per_owner if o != UNATTRIBUTED})

    if args.emit == "json":
        cases = []
        for r in reports:
            cases.append({
                "case": r.label,
                "n_papers": r.n_papers,
                "n_citations": r.n_citations,
                "i3": rational_json(r.total_i3, args.precision),
                "r": rational_json(r.total_r, args.precision),
                "owners": {
                    o: {
                        "i3": rational_json(rec.i3, args.precision),
                        "r": rational_json(rec.r, args.precision),
                        "rank": rational_json(rec.rank, args.precision),
                    }
                    for o in owners if o in r.per_owner
                    for rec in [r.per_owner[o]]
                },
            })
        return dumps({"scenario": scenario.name, "policy": str(policy), "rank_basis": basis.value,
                      "cases": cases})

    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    header = ["case", "n_papers", "n_citations", "i3", "r"]
    for o in owners:
        header += [f"{o}_i3", f"{o}_r", f"{o}_rank"]
    w.writerow(header)
    for r in reports:
        row = [r.label, r.n_papers, r.n_citations, _dec(r.total_i3, args), _dec(r.total_r, args)]
        for o in owners:
            rec = r.per_owner.get(o)
            row += ["", "", ""] if rec is None else [_dec(rec.i3, args), _dec(rec.r, args), _dec(rec.rank, args)]
        w.writerow(row)
    return out.getvalue()


# -- audit --------------------------------------------------------------------

def cmd_audit(args: argparse.Namespace) -> tuple[str, int]:
    scenario = _load_scenario(args.input)
    scheme, policy, basis = _setup(args)
    check = {
        audit_mod.STRICT_INDEPENDENCE: audit_mod.strict_independence_violations,
        audit_mod.SAME_IMPROVEMENT: audit_mod.same_improvement_violations,
    }[args.check]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        found = check(scenario, scheme, policy, basis)
    for wmsg in caught:
        print(f"warning: {wmsg.message}", file=sys.stderr)

    if args.format == "json":
        text = dumps({
            "scenario": scenario.name,
            "check": args.check,
            "policy": str(policy),
            "rank_basis": basis.value,
            "warnings": [str(wm.message) for wm in caught],
            "count": len(found),
            "violations": [
                {
                    "kind": v.kind,
                    "from_case": v.from_case,
                    "to_case": v.to_case,
                    "pair": list(v.pair),
                    "changed_by": list(v.changed_by),
                    "score_before": [rational_json(x, args.precision) for x in v.score_before],
                    "score_after": [rational_json(x, args.precision) for x in v.score_after],
                    "rank_before": [rational_json(x, args.precision) for x in v.rank_before],
                    "rank_after": [rational_json(x, args.precision) for x in v.rank_after],
                }
                for v in found
            ],
        })
    else:
        rows = [["from", "to", "pair", "changed", "score before", "score after", "rank before", "rank after"]]
        for v in found:
            rows.append([
                v.from_case, v.to_case, "/".join(v.pair), ",".join(v.changed_by),
                " ".join(_dec(x, args) for x in v.score_before),
                " ".join(_dec(x, args) for x in v.score_after),
                " ".join(_dec(x, args) for x in v.rank_before),
                " ".join(_dec(x, args) for x in v.rank_after),
            ])
        text = f"{args.check} audit of {scenario.name} under {policy}: {len(found)} violation(s)\n"
        if found:
            text += _table(rows)
    code = EXIT_VIOLATION if found and args.fail_on_violation else 0
    return text, code


# -- example ------------------------------------------------------------------

def builtin_example(name: str) -> Dataset | Scenario:
    if name == "A":
        return example_a()
    if name == "B1":
        return example_b_endpoints()[0]
    if name == "B73":
        return example_b_endpoints()[1]
    if name == "b-like":
        return example_b_like()
    if name == "tied-crossing":
        return example_tied_crossing()
    raise UsageError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}", EXIT_PARSE)


def cmd_example(args: argparse.Namespace) -> str:
    obj = builtin_example(args.name)
    if isinstance(obj, Dataset):
        return dataset_to_csv(obj) if args.format == "csv" else dumps(dataset_to_obj(obj))
    if args.format == "csv":
        raise UsageError(f"example {args.name!r} is a scenario; only json output is available", EXIT_PARSE)
    return dumps(scenario_to_obj(obj))


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="percentrank",
        description="Percentile-rank-class citation indicators, scenario replay and ranking audits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="indicators for one dataset")
    p.add_argument("input", help="dataset file (JSON or CSV), or - for stdin")
    _add_policy_flags(p)
    p.add_argument("--by-owner", action="store_true", help="add per-owner rows")
    p.add_argument("--format", default="table", choices=["table", "csv", "json"])

    p = sub.add_parser("scenario", help="replay a scenario and emit one row per case")
    p.add_argument("input", help="scenario JSON file, or - for stdin")
    _add_policy_flags(p)
    p.add_argument("--emit", default="per-case-csv", choices=["per-case-csv", "json"])

    p = sub.add_parser("audit", help="check ranking consistency along a scenario")
    p.add_argument("input", help="scenario JSON file, or - for stdin")
    p.add_argument("--check", required=True,
                   choices=[audit_mod.STRICT_INDEPENDENCE, audit_mod.SAME_IMPROVEMENT])
    _add_policy_flags(p)
    p.add_argument("--format", default="table", choices=["table", "json"])
    p.add_argument("--fail-on-violation", action="store_true", help="exit 4 when violations are found")

    p = sub.add_parser("example", help="write a builtin dataset or scenario")
    p.add_argument("--name", required=True, help=f"one of {', '.join(EXAMPLES)}")
    p.add_argument("--format", default="json", choices=["json", "csv"],
                   help="csv is available for datasets only")
    p.add_argument("-o", "--output", default="-", help="output file (default stdout)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    code = 0
    try:
        if args.command == "compute":
            text = cmd_compute(args)
        elif args.command == "scenario":
            text = cmd_scenario(args)
        elif args.command == "audit":
            text, code = cmd_audit(args)
        else:
            text = cmd_example(args)
    except (ParseError, ReferenceSetError, ReplayError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PolicyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POLICY
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code

    if getattr(args, "output", "-") != "-":
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
