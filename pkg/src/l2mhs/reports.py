"""Comparison reports and rendering of structured results.

Every command produces one structured report: a dict with the command name,
an optional pass flag, the convention block, and a list of sections (title,
columns, rows).  The TSV rendering is a deterministic flattening; dims are
printed as exact integers or fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


CONVENTIONS = {
    "coefficients": "exact rationals; no floating point anywhere",
    "divisor_order": "index tuples are normalized to the listed divisor order; "
                     "a transposition contributes -1",
    "gysin_sign": "the row differential carries the uniform extra sign (-1)^(q-2p)",
    "weight_labels": "weight = q (so H^n carries weights n..2n); pole_order = weight - degree "
                     "is the increasing filtration index, converted internally by p -> -p",
    "l2": "Q[G] stands in for l2(G): for a finite deck group reduced and unreduced agree, "
          "and vn-dim = dim_Q / |G|",
    "orientation": "dual cells are oriented by the global divisor order; reported dimensions "
                   "do not depend on this choice",
}


def fmt(value) -> str:
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    return str(value)


@dataclass
class ComparisonEntry:
    label: str
    expected: object
    computed: object

    @property
    def matches(self) -> bool:
        return self.expected == self.computed


@dataclass
class ComparisonReport:
    entries: list[ComparisonEntry]

    @property
    def passed(self) -> bool:
        return all(e.matches for e in self.entries)

    @property
    def first_mismatch(self) -> str | None:
        for e in self.entries:
            if not e.matches:
                return e.label
        return None


def compare(expected: dict, computed: dict) -> ComparisonReport:
    """Exact equality of two labeled dimension tables.

    The label sets must agree (labels present on one side only count as
    mismatches against an absent value).
    """
    labels = sorted(set(expected) | set(computed), key=str)
    return ComparisonReport(
        [ComparisonEntry(str(l), expected.get(l), computed.get(l)) for l in labels])


def section(title: str, columns: list[str], rows: list[list]) -> dict:
    return {"title": title, "columns": columns, "rows": [[fmt(v) for v in row] for row in rows]}


def report(command: str, sections: list[dict], passed: bool | None = None,
           seed: int | None = None, notes: list[str] | None = None) -> dict:
    out = {
        "command": command,
        "pass": passed,
        "convention": dict(CONVENTIONS),
        "sections": sections,
    }
    if seed is not None:
        out["seed"] = seed
    if notes:
        out["notes"] = list(notes)
    return out


def render_tsv(rep: dict) -> str:
    lines = [f"# command\t{rep['command']}"]
    if rep.get("seed") is not None:
        lines.append(f"# seed\t{rep['seed']}")
    if rep.get("pass") is not None:
        lines.append(f"# pass\t{fmt(rep['pass'])}")
    for key, value in sorted(rep.get("convention", {}).items()):
        lines.append(f"# convention.{key}\t{value}")
    for note in rep.get("notes", []):
        lines.append(f"# note\t{note}")
    for sec in rep.get("sections", []):
        lines.append(f"## {sec['title']}")
        lines.append("\t".join(sec["columns"]))
        for row in sec["rows"]:
            lines.append("\t".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def comparison_section(title: str, cmp: ComparisonReport) -> dict:
    rows = [[e.label, fmt(e.expected), fmt(e.computed), fmt(e.matches)] for e in cmp.entries]
    return section(title, ["label", "expected", "computed", "match"], rows)
