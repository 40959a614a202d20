"""Corpus report model and its three serializations.

The JSON form is the source of truth (schema in docs/report-schema.md and
versioned via schema_version); CSV and Markdown are fixed-layout views with
one row per language plus an overall row.  All renderings are byte-stable
for equal report values.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from . import languages
from .metrics import METRIC_NAMES

SCHEMA_VERSION = 1

# markdown/csv column header per metric, mirroring the usual results-table
# layout; the Top-k column is named from the report's k
_METRIC_HEADERS = {
    "graph": "G",
    "graph_node": "G-N",
    "graph_node_edge": "G-N-E",
    "entity": "Entity",
    "relations": "R&T",
    "source": "Source",
    "statement": "Statement",
}


@dataclass(frozen=True)
class MetricCell:
    tp: float
    fp: float
    fn: float
    f1: float


@dataclass(frozen=True)
class LanguageBlock:
    code: str
    name: str
    instances: int
    valid_at_1: float
    valid_at_k: float
    metrics: dict[str, MetricCell]
    metrics_valid_only: dict[str, MetricCell]


@dataclass(frozen=True)
class CorpusReport:
    toolkit_version: str
    scorer: str
    k: int
    config: dict
    overall: LanguageBlock
    languages: tuple[LanguageBlock, ...]
    schema_version: int = SCHEMA_VERSION


def _cell_dict(cell: MetricCell) -> dict:
    return {"tp": cell.tp, "fp": cell.fp, "fn": cell.fn, "f1": cell.f1}


def _block_dict(block: LanguageBlock) -> dict:
    return {
        "code": block.code,
        "name": block.name,
        "instances": block.instances,
        "valid_at_1": block.valid_at_1,
        "valid_at_k": block.valid_at_k,
        "metrics": {name: _cell_dict(block.metrics[name]) for name in METRIC_NAMES},
        "metrics_valid_only": {
            name: _cell_dict(block.metrics_valid_only[name]) for name in METRIC_NAMES
        },
    }


def to_json_dict(report: CorpusReport) -> dict:
    return {
        "schema_version": report.schema_version,
        "toolkit": {"name": "dotscore", "version": report.toolkit_version},
        "scorer": report.scorer,
        "k": report.k,
        "config": dict(report.config),
        "overall": _block_dict(report.overall),
        "languages": [_block_dict(b) for b in report.languages],
    }


def render_json(report: CorpusReport) -> str:
    return json.dumps(to_json_dict(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _parse_cell(d: dict) -> MetricCell:
    return MetricCell(tp=d["tp"], fp=d["fp"], fn=d["fn"], f1=d["f1"])


def _parse_block(d: dict) -> LanguageBlock:
    return LanguageBlock(
        code=d["code"],
        name=d["name"],
        instances=d["instances"],
        valid_at_1=d["valid_at_1"],
        valid_at_k=d["valid_at_k"],
        metrics={name: _parse_cell(d["metrics"][name]) for name in METRIC_NAMES},
        metrics_valid_only={
            name: _parse_cell(d["metrics_valid_only"][name]) for name in METRIC_NAMES
        },
    )


def parse_report(text: str) -> CorpusReport:
    """Inverse of render_json; parse(render(r)) == r."""
    d = json.loads(text)
    return CorpusReport(
        schema_version=d["schema_version"],
        toolkit_version=d["toolkit"]["version"],
        scorer=d["scorer"],
        k=d["k"],
        config=d["config"],
        overall=_parse_block(d["overall"]),
        languages=tuple(_parse_block(b) for b in d["languages"]),
    )


def _row_values(report: CorpusReport, block: LanguageBlock) -> list[str]:
    cells = []
    for name in METRIC_NAMES[:3]:
        cells.append(f"{block.metrics[name].f1:.4f}")
    cells.append(f"{block.valid_at_1:.4f}")
    cells.append(f"{block.valid_at_k:.4f}")
    for name in METRIC_NAMES[3:]:
        cells.append(f"{block.metrics[name].f1:.4f}")
    return cells


def _metric_headers(report: CorpusReport) -> list[str]:
    headers = [_METRIC_HEADERS[n] for n in METRIC_NAMES[:3]]
    headers += ["Top1", f"Top{report.k}"]
    headers += [_METRIC_HEADERS[n] for n in METRIC_NAMES[3:]]
    return headers


def render_csv(report: CorpusReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["code", "name", "instances"] + _metric_headers(report))
    for block in report.languages:
        writer.writerow([block.code, block.name, block.instances] + _row_values(report, block))
    o = report.overall
    writer.writerow([o.code, o.name, o.instances] + _row_values(report, o))
    return buf.getvalue()


def render_markdown(report: CorpusReport) -> str:
    headers = ["Language", "Instances"] + _metric_headers(report)
    lines = [
        "| " + " | ".join(headers) + " |",
        "| " + " | ".join("---" for _ in headers) + " |",
    ]
    for block in report.languages:
        row = [f"{block.name} ({block.code})", str(block.instances)] + _row_values(report, block)
        lines.append("| " + " | ".join(row) + " |")
    o = report.overall
    row = [f"**{o.name}**", str(o.instances)] + _row_values(report, o)
    lines.append("| " + " | ".join(row) + " |")
    footer = (
        f"\nscorer: {report.scorer} | toolkit: dotscore {report.toolkit_version}"
        f" | k={report.k}\n"
    )
    return "\n".join(lines) + "\n" + footer


RENDERERS = {"json": render_json, "csv": render_csv, "markdown": render_markdown}


def render(report: CorpusReport, format: str) -> str:
    try:
        return RENDERERS[format](report)
    except KeyError:
        raise ValueError(f"unknown report format {format!r}") from None


def write_report(report: CorpusReport, format: str, path: str | None) -> None:
    """Render to a file, or stdout when path is None."""
    text = render(report, format)
    if path is None:
        import sys

        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def sort_language_blocks(blocks: list[LanguageBlock]) -> list[LanguageBlock]:
    return sorted(blocks, key=lambda b: languages.sort_key(b.code))
