"""
Rendering of enumeration results and comparison with the published tables.
"""
import csv
import io
import json
import logging
import math
import resource
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

from django.core.serializers.json import DjangoJSONEncoder

from . import conf
from .enumerator import IsoClass, TypeSummary
from .exceptions import GoldenFileError
from .perm import format_cycles

logger = logging.getLogger(__name__)

FORMATS = ("text", "csv", "json")
CELL_FIELDS = ("T", "a-c", "BC", "G-i")
TOTAL_FIELDS = ("HG", "a-c", "BC", "BC not a-c", "G-iso", "G-iso Galois")


# Golden tables

@dataclass
class GoldenTable:
    degree: int
    transitive_total: int = 0
    count_max: int = 0
    type_count: int = 0
    type_labels: dict = field(default_factory=dict)
    rows: dict = field(default_factory=dict)
    group_summaries: dict = field(default_factory=dict)
    degree_totals: tuple = ()
    partitions: dict = field(default_factory=dict)

    def problems(self):
        """Internal consistency: cells sum to groups, groups sum to the totals."""
        out = []
        for k, expected in self.group_summaries.items():
            summed = [0, 0, 0, 0]
            for (row_k, _), values in self.rows.items():
                if row_k == k:
                    summed = [a + b for a, b in zip(summed, values)]
            if tuple(summed) != expected:
                out.append(f"group {k}: cells sum to {tuple(summed)}, listed {expected}")
        if self.degree_totals:
            t, ac, bc, gi = (sum(v[n] for v in self.group_summaries.values()) for n in range(4))
            if (t, ac, bc, bc - ac, gi) != tuple(self.degree_totals[:5]):
                out.append(f"groups sum to {(t, ac, bc, bc - ac, gi)}, totals {self.degree_totals}")
        for key, sizes in self.partitions.items():
            row = self.rows.get(key)
            if row is None or sum(sizes) != row[0] or len(sizes) != row[3]:
                out.append(f"partition {key} does not match its cell")
        return out


def _parse_partition(text, lineno):
    sizes = []
    for term in text.split("+"):
        try:
            count, size = (int(x) for x in term.split("x"))
        except ValueError:
            raise GoldenFileError(f"bad partition term {term!r}", lineno) from None
        sizes.extend([size] * count)
    return sorted(sizes)


def load_golden(stream, degree):
    table = GoldenTable(degree)
    text = stream.read()
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GoldenFileError(f"golden table is not valid UTF-8: {exc}") from exc
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        kind, rest = fields[0], fields[1:]
        try:
            if kind == "meta":
                table.transitive_total, table.count_max, table.type_count = map(int, rest)
            elif kind == "type":
                table.type_labels[int(rest[0])] = rest[1]
            elif kind == "cell":
                k, i, *values = map(int, rest)
                table.rows[(k, i)] = tuple(values)
            elif kind == "group":
                k, *values = map(int, rest)
                table.group_summaries[k] = tuple(values)
            elif kind == "totals":
                table.degree_totals = tuple(map(int, rest))
            elif kind == "partition":
                table.partitions[(int(rest[0]), int(rest[1]))] = _parse_partition(rest[2], lineno)
            else:
                raise GoldenFileError(f"unknown record {kind!r}", lineno)
        except (ValueError, IndexError):
            raise GoldenFileError(f"malformed {kind} record", lineno) from None
    problems = table.problems()
    if problems:
        raise GoldenFileError(f"degree {degree}: {problems[0]}")
    return table


def golden_path(degree):
    return Path(conf.get("HGE_GOLDEN_DIR")) / f"degree_{degree}.txt"


def load_golden_for(degree):
    path = golden_path(degree)
    if not path.exists():
        raise GoldenFileError(f"no golden table for degree {degree} at {path}")
    with open(path, "rb") as fh:
        return load_golden(fh, degree)


@dataclass
class GoldenMismatch:
    group_index: object
    type_label: str
    field: str
    expected: object
    actual: object

    def __str__(self):
        where = "degree" if self.group_index is None else f"k={self.group_index}"
        return f"{where} {self.type_label} {self.field}: expected {self.expected}, got {self.actual}"


def compare_golden(report, golden):
    """Exact cell-by-cell comparison; an empty list means the report matches."""
    diff = []
    g = report.degree
    for name, expected, actual in (
        ("transitive total", golden.transitive_total, report.transitive_total),
        ("Max", golden.count_max, report.count_max),
        ("types", golden.type_count, report.triv),
    ):
        if expected and expected != actual:
            diff.append(GoldenMismatch(None, "-", name, expected, actual))

    actual_rows = {
        (s.group_index, s.type_index): s.as_tuple() for s in report.summaries if s.T
    }
    for key in sorted(set(golden.rows) | set(actual_rows)):
        expected = golden.rows.get(key, (0, 0, 0, 0))
        actual = actual_rows.get(key, (0, 0, 0, 0))
        label = report.type_labels.get(key[1], golden.type_labels.get(key[1], str(key[1])))
        for name, e, a in zip(CELL_FIELDS, expected, actual):
            if e != a:
                diff.append(GoldenMismatch(key[0], label, name, e, a))

    actual_groups = {k: v for k, v in report.group_totals.items() if v[0]}
    for k in sorted(set(golden.group_summaries) | set(actual_groups)):
        expected = golden.group_summaries.get(k, (0, 0, 0, 0))
        actual = actual_groups.get(k, (0, 0, 0, 0))
        for name, e, a in zip(CELL_FIELDS, expected, actual):
            if e != a:
                diff.append(GoldenMismatch(k, "Summary", name, e, a))

    if golden.degree_totals:
        for name, e, a in zip(TOTAL_FIELDS, golden.degree_totals, report.degree_totals):
            if e != a:
                diff.append(GoldenMismatch(None, "Totals", name, e, a))

    for (k, i), sizes in sorted(golden.partitions.items()):
        actual = report.class_sizes(k, i)
        if actual != sizes:
            label = report.type_labels.get(i, str(i))
            diff.append(GoldenMismatch(k, label, "classes", sizes, actual))
    logger.info("degree %d golden comparison: %d mismatches", g, len(diff))
    return diff


# Rendering

def _group_label(report, k):
    name = report.group_names.get(k, "")
    return f"{report.degree}T{k} {name}".strip()


def render_text(report):
    types = sorted(report.type_labels)
    headers = ["Galois group"]
    headers += [f"Type {report.type_labels[i]}" for i in types] + ["Summary", "IF"]
    rows = []
    for k in report.useful:
        row = [_group_label(report, k)]
        for i in types:
            row.append(" ".join(str(v) for v in report.summary(k, i).as_tuple()))
        row.append(" ".join(str(v) for v in report.group_totals[k]))
        row.append(str(report.intermediate_field_counts.get(k, "")))
        rows.append(row)
    widths = [max(len(r[c]) for r in [headers] + rows) for c in range(len(headers))]
    sub = ["", *(["T a-c BC G-i"] * (len(types) + 1)), ""]
    widths = [max(w, len(s)) for w, s in zip(widths, sub)]

    def line(cells):
        return " | ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()

    out = [f"Degree {report.degree} Hopf Galois structures", line(headers), line(sub)]
    out.append("-+-".join("-" * w for w in widths))
    out.extend(line(r) for r in rows)
    out.append("")
    out.append("  ".join(f"{name} {value}" for name, value in zip(TOTAL_FIELDS, report.degree_totals)))
    out.append(
        f"Transitive groups {report.transitive_total}  Max {report.count_max}  "
        f"Types {report.triv}  Holomorph bound {report.holomorph_bound}"
    )
    return "\n".join(out) + "\n"


def render_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["degree", "group", "label", "type", "type_label", *CELL_FIELDS])
    for s in report.summaries:
        if s.T:
            writer.writerow([
                report.degree, s.group_index, report.group_names.get(s.group_index, ""),
                s.type_index, report.type_labels[s.type_index], *s.as_tuple(),
            ])
    for k in report.useful:
        writer.writerow([
            report.degree, k, report.group_names.get(k, ""), "", "Summary", *report.group_totals[k],
        ])
    return buf.getvalue()


def report_to_dict(report):
    return {
        "degree": report.degree,
        "transitive_total": report.transitive_total,
        "count_max": report.count_max,
        "types": report.triv,
        "holomorph_bound": report.holomorph_bound,
        "type_labels": {str(i): label for i, label in report.type_labels.items()},
        "group_names": {str(k): name for k, name in report.group_names.items()},
        "records": [
            {
                "id": r.id,
                "group_index": r.group_index,
                "type_index": r.type_index,
                "generators": [format_cycles(n) for n in r.N.generators],
                "almost_classical": r.almost_classical,
                "bijective": r.bijective,
                "contained_in_G": r.contained_in_G,
                "sub_g_stable_count": r.sub_g_stable_count,
            }
            for r in report.records
        ],
        "summaries": [
            {"group_index": s.group_index, "type_index": s.type_index,
             "T": s.T, "ac": s.ac, "bc": s.bc, "gi": s.gi}
            for s in report.summaries
        ],
        "classes": [
            {"group_index": c.group_index, "type_index": c.type_index, "member_ids": list(c.member_ids)}
            for c in report.classes
        ],
        "group_totals": {str(k): list(v) for k, v in report.group_totals.items()},
        "degree_totals": dict(zip(TOTAL_FIELDS, report.degree_totals)),
        "useful": report.useful,
        "intermediate_field_counts": {str(k): v for k, v in report.intermediate_field_counts.items()},
    }


def render_json(report):
    return json.dumps(report_to_dict(report), cls=DjangoJSONEncoder, indent=2) + "\n"


def summaries_from_json(data):
    """Rebuild the TypeSummary and IsoClass lists from rendered json."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    summaries = [
        TypeSummary(s["group_index"], s["type_index"], s["T"], s["ac"], s["bc"], s["gi"])
        for s in data["summaries"]
    ]
    classes = [
        IsoClass(c["group_index"], c["type_index"], tuple(c["member_ids"]))
        for c in data["classes"]
    ]
    return summaries, classes


def render(report, fmt="text"):
    """The report as UTF-8 bytes."""
    renderers = {"text": render_text, "csv": render_csv, "json": render_json}
    if fmt not in renderers:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    return renderers[fmt](report).encode("utf-8")


# Run metrics

@dataclass
class RunMetrics:
    degree: int
    wall_time_seconds: float = 0.0
    peak_memory_bytes: int = 0


def _peak_rss_bytes():
    own = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    children = resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss
    # ru_maxrss is reported in kilobytes on Linux
    return max(own, children) * 1024


@contextmanager
def measure(degree):
    metrics = RunMetrics(degree)
    started = time.perf_counter()
    try:
        yield metrics
    finally:
        metrics.wall_time_seconds = time.perf_counter() - started
        metrics.peak_memory_bytes = _peak_rss_bytes()


@dataclass
class SummaryRow:
    degree: int
    totals: tuple
    transitive_total: int
    count_max: int
    types: int
    metrics: RunMetrics

    @property
    def symmetric_order(self):
        return math.factorial(self.degree)


def render_summary(rows):
    headers = ["Degree", "Order", "Total", "Max", "Types", *TOTAL_FIELDS, "Time (s)", "Memory (MB)"]
    body = [
        [
            str(r.degree), f"{r.symmetric_order:,}", str(r.transitive_total), str(r.count_max),
            str(r.types), *(str(v) for v in r.totals),
            f"{r.metrics.wall_time_seconds:.1f}", f"{r.metrics.peak_memory_bytes / 2 ** 20:.0f}",
        ]
        for r in rows
    ]
    widths = [max(len(x[c]) for x in [headers] + body) for c in range(len(headers))]
    lines = [" | ".join(h.rjust(w) for h, w in zip(headers, widths))]
    lines.append("-+-".join("-" * w for w in widths))
    lines.extend(" | ".join(c.rjust(w) for c, w in zip(row, widths)) for row in body)
    return "\n".join(lines) + "\n"
