"""Verification records and their serialization (json-lines, csv, summary text)."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path

FORMATS = ("json-lines", "csv", "summary-text")
VERDICTS = ("pass", "exact_equality", "fail", "exempt")
COMPLETENESS_NOTE = (
    "subgroup classes are enumerated exhaustively for degree <= 6; "
    "degrees 7-12 use a named-family primitive roster with no completeness claim; "
    "the p=2, q=3, w=1 extraspecial configuration is not constructed"
)


class ReportError(OSError):
    pass


@dataclass
class Check:
    """One comparison inside a record.

    ``bound`` is the serialized bound for inequality checks and None for
    identities; non-gating checks are informational and never make a record fail.
    """

    kind: str
    value: str
    verdict: str
    bound: dict | None = None
    margin: str | None = None
    gating: bool = True
    detail: str = ""


@dataclass
class VerificationRecord:
    campaign: str
    group: str
    degree: int
    order: str
    index_nilpotent: str | None = None
    index_solvable: str | None = None
    checks: list[Check] = field(default_factory=list)
    verdict: str = ""
    note: str = ""
    wall_time: float | None = None

    def __post_init__(self):
        if not self.verdict:
            self.verdict = overall_verdict(self.checks)

    def sort_key(self) -> tuple:
        return (self.campaign, self.degree, int(self.order), self.group)

    def as_dict(self, timing: bool = False) -> dict:
        d = asdict(self)
        d["checks"] = [{k: v for k, v in c.items() if v is not None} for c in d["checks"]]
        if not timing:
            d.pop("wall_time")
        return d


def overall_verdict(checks: list[Check]) -> str:
    gating = [c.verdict for c in checks if c.gating]
    if not gating:
        return "exempt"
    if "fail" in gating:
        return "fail"
    if "exact_equality" in gating:
        return "exact_equality"
    return "pass" if all(v in ("pass", "exempt") for v in gating) else "fail"


def totals(records: list[VerificationRecord]) -> dict[str, int]:
    counts = Counter(r.verdict for r in records)
    return {"records": len(records), **{v: counts.get(v, 0) for v in VERDICTS}}


def header(records: list[VerificationRecord], meta: dict | None = None) -> dict:
    h = {"type": "header", "campaigns": sorted({r.campaign for r in records}),
         "totals": totals(records), "completeness": COMPLETENESS_NOTE}
    if meta:
        h.update(meta)
    return h


def render(records: list[VerificationRecord], fmt: str, meta: dict | None = None,
           timing: bool = False) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown report format {fmt!r}; expected one of {', '.join(FORMATS)}")
    records = sorted(records, key=VerificationRecord.sort_key)
    head = header(records, meta)
    if fmt == "json-lines":
        lines = [json.dumps(head, sort_keys=True)]
        lines += [json.dumps(r.as_dict(timing), sort_keys=True) for r in records]
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        for key in sorted(head):
            if key != "type":
                buf.write(f"# {key}: {json.dumps(head[key], sort_keys=True)}\n")
        cols = ["campaign", "group", "degree", "order", "index_nilpotent", "index_solvable",
                "verdict", "note", "checks"] + (["wall_time"] if timing else [])
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for r in records:
            row = r.as_dict(timing)
            row["checks"] = json.dumps(row["checks"], sort_keys=True)
            writer.writerow(row)
        return buf.getvalue()
    return _summary(records, head)


def _summary(records: list[VerificationRecord], head: dict) -> str:
    out = [f"records: {len(records)}", f"completeness: {head['completeness']}"]
    for key in sorted(k for k in head if k not in ("type", "campaigns", "totals", "completeness")):
        out.append(f"{key}: {head[key]}")
    out.append("")
    out.append(f"{'campaign':<22}" + "".join(f"{v:>16}" for v in VERDICTS))
    by_campaign: dict[str, Counter] = {}
    for r in records:
        by_campaign.setdefault(r.campaign, Counter())[r.verdict] += 1
    for name in sorted(by_campaign):
        out.append(f"{name:<22}" + "".join(f"{by_campaign[name].get(v, 0):>16}" for v in VERDICTS))
    failures = [r for r in records if r.verdict == "fail"]
    if failures:
        out.append("")
        out.append("failures:")
        for r in failures:
            bad = [c for c in r.checks if c.gating and c.verdict == "fail"]
            what = "; ".join(f"{c.kind} value {c.value}" + (f" bound {c.bound['expr']}" if c.bound else "")
                             for c in bad)
            out.append(f"  {r.campaign} {r.group} (degree {r.degree}): {what}")
    return "\n".join(out) + "\n"


def emit_report(records: list[VerificationRecord], fmt: str = "json-lines",
                path: str | Path | None = None, meta: dict | None = None,
                timing: bool = False) -> str:
    """Render the report and, when ``path`` is given, write it there."""
    text = render(records, fmt, meta, timing)
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise ReportError(f"cannot write report to {path}: {exc.strerror or exc}") from exc
    return text
