"""Reproductions of the published semiring count tables.

``PUBLISHED`` holds the printed values; ``"?"`` marks a cell left unknown
and ``"-"`` a cell that was not computed.  Reproduced cells are tagged:

* ``verified``   computed and equal to the printed number
* ``mismatch``   computed and different from the printed number
* ``new``        computed where nothing was printed
* ``unavailable`` outside what this engine can compute (rendered ``-``)
"""

import csv
import io
import json
from dataclasses import dataclass

from .census import CensusQuery, Filter, enumerate_semirings
from .errors import CapabilityError, UsageError
from .tables import Mode

COLUMNS = ("no additional constraints", "with 0", "with 1", "with 0 + 1")
MODE_TITLES = {Mode.ISO: "up to isomorphism",
               Mode.ISO_OR_ANTI: "up to isomorphism or anti-isomorphism"}

_COLUMN_FLAGS = {
    "no additional constraints": {},
    "with 0": {"with_zero": True},
    "with 1": {"with_one": True},
    "with 0 + 1": {"with_zero": True, "with_one": True},
}


@dataclass(frozen=True)
class TableSpec:
    number: int
    caption: str
    base: dict
    modes: tuple
    rows: dict


def _rows(text):
    rows = {}
    for line in text.strip().splitlines():
        n, *cells = line.split()
        rows[int(n)] = tuple(c if c in "?-" else int(c.replace(",", "")) for c in cells)
    return rows


PUBLISHED = {
    1: TableSpec(1, "Numbers of semirings", {}, (Mode.ISO, Mode.ISO_OR_ANTI), _rows("""
        1 1 ? 1 1 1 ? 1 1
        2 10 ? 4 2 9 ? 4 2
        3 132 ? 22 6 106 ? 21 6
        4 2,341 ? 169 40 1,713 ? 155 38
        5 57,427 ? 1,819 295 38,247 ? 1,561 262
        6 7,571,579 ? 41,104 3,246 4,102,358 ? 30,112 2,681
        7 - - ? 59,314 - - ? 43,331
    """)),
    2: TableSpec(2, "Numbers of commutative semirings", {"commutative_mul": True},
                 (Mode.ISO,), _rows("""
        1 1 1 1 1
        2 8 4 4 4
        3 80 18 20 18
        4 1,067 169 141 169
        5 18,188 1,990 1,276 1,990
        6 543,458 32,212 17,621 2,075
        7 ? ? ? 25,640
    """)),
    3: TableSpec(3, "Numbers of ai-semirings", {"ai": True}, (Mode.ISO, Mode.ISO_OR_ANTI), _rows("""
        1 1 1 1 1 1 1 1 1
        2 6 2 2 1 5 2 2 1
        3 61 12 11 3 45 10 10 3
        4 866 129 73 20 581 93 64 18
        5 15,751 1,852 703 149 9,750 1,207 574 125
        6 354,409 33,391 9,195 1,488 205,744 20,142 6,835 1,150
        7 9,908,909 ? ? 18,554 5,470,437 ? ? 13,171
        8 - ? ? 295,292 ? ? ? 116,274
    """)),
    4: TableSpec(4, "Numbers of commutative ai-semirings", {"ai": True, "commutative_mul": True},
                 (Mode.ISO,), _rows("""
        1 1 1 1 1
        2 4 2 2 1
        3 29 8 9 3
        4 289 57 55 16
        5 3,589 580 437 100
        6 53,661 6,639 4,296 794
        7 949,843 96,264 52,043 7,493
        8 ? ? ? ?
    """)),
}


@dataclass(frozen=True)
class Cell:
    mode: Mode
    column: str
    value: int
    published: object
    status: str

    def render(self):
        if self.value is None:
            return "-"
        mark = {"new": "*", "mismatch": "†"}.get(self.status, "")
        return f"{self.value}{mark}"


def column_titles(spec):
    if len(spec.modes) == 1:
        return list(COLUMNS)
    return [f"{MODE_TITLES[m]}: {c}" for m in spec.modes for c in COLUMNS]


def reproduce(number, max_order, threads=1, cache_dir=None, long_run=False, min_order=1):
    """Rows ``(n, [Cell, ...])`` for n = min_order .. max_order."""
    if number not in PUBLISHED:
        raise UsageError(f"no table {number}; choose 1-4")
    if max_order < 1:
        raise UsageError("max order must be at least 1")
    spec = PUBLISHED[number]
    out = []
    for n in range(min_order, max_order + 1):
        printed = spec.rows.get(n, ("-",) * (4 * len(spec.modes)))
        cells = []
        for i, (mode, column) in enumerate((m, c) for m in spec.modes for c in COLUMNS):
            published = printed[i]
            flags = dict(spec.base, **_COLUMN_FLAGS[column])
            q = CensusQuery(n, mode, Filter(**flags))
            try:
                value = enumerate_semirings(q, threads=threads, cache_dir=cache_dir,
                                            long_run=long_run).count
            except CapabilityError:
                cells.append(Cell(mode, column, None, published, "unavailable"))
                continue
            if isinstance(published, int):
                status = "verified" if published == value else "mismatch"
            else:
                status = "new"
            cells.append(Cell(mode, column, value, published, status))
        out.append((n, cells))
    return out


def _published(number, n, mode, column):
    spec = PUBLISHED[number]
    if mode not in spec.modes or n not in spec.rows:
        return None
    value = spec.rows[n][spec.modes.index(mode) * 4 + COLUMNS.index(column)]
    return value if isinstance(value, int) else None


def published_inconsistencies(number):
    """Printed cells that contradict other printed cells.

    Checks that adding a constraint never raises a count, that counting up
    to anti-isomorphism gives between half and all of the isomorphism
    count, and that commutative tables never exceed their general ones.
    """
    spec = PUBLISHED[number]
    found = []

    def need(cond, n, text):
        if not cond:
            found.append(f"n={n}: {text}")

    for n in sorted(spec.rows):
        for mode in spec.modes:
            v = {c: _published(number, n, mode, c) for c in COLUMNS}
            title = MODE_TITLES[mode]
            for small, big in (("with 0 + 1", "with 0"), ("with 0 + 1", "with 1"),
                               ("with 0", "no additional constraints"),
                               ("with 1", "no additional constraints")):
                if v[small] is not None and v[big] is not None:
                    need(v[small] <= v[big], n,
                         f"{title}, '{small}' = {v[small]} exceeds '{big}' = {v[big]}")
        if len(spec.modes) == 2:
            for c in COLUMNS:
                a = _published(number, n, Mode.ISO, c)
                b = _published(number, n, Mode.ISO_OR_ANTI, c)
                if a is not None and b is not None:
                    need(b <= a <= 2 * b, n, f"'{c}': iso {a} vs iso-or-anti {b}")
        parents = {2: (1,), 4: (2, 3)}.get(number, ())
        for parent in parents:
            for c in COLUMNS:
                a = _published(number, n, Mode.ISO, c)
                b = _published(parent, n, Mode.ISO, c)
                if a is not None and b is not None:
                    need(a <= b, n, f"'{c}' = {a} exceeds {b} in table {parent}")
    return found


FOOTNOTES = {
    "new": "* not given in the published table; computed here",
    "mismatch": "† differs from the published value",
}


def render(number, rows, fmt):
    spec = PUBLISHED[number]
    titles = column_titles(spec)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n"] + titles)
        for n, cells in rows:
            writer.writerow([n] + [c.render() for c in cells])
        return buf.getvalue()
    if fmt == "markdown":
        lines = [f"Table {number}. {spec.caption}.", ""]
        lines.append("| n | " + " | ".join(titles) + " |")
        lines.append("|---|" + "---:|" * len(titles))
        for n, cells in rows:
            lines.append(f"| {n} | " + " | ".join(c.render() for c in cells) + " |")
        seen = {c.status for _, cells in rows for c in cells}
        notes = [FOOTNOTES[s] for s in ("new", "mismatch") if s in seen]
        if notes:
            lines.append("")
            lines.extend(notes)
        clashes = published_inconsistencies(number)
        if clashes:
            lines.append("")
            lines.append("Published values that contradict each other:")
            lines.extend(f"- {c}" for c in clashes)
        return "\n".join(lines) + "\n"
    if fmt == "jsonl":
        lines = []
        for n, cells in rows:
            record = {"table": number, "n": n, "cells": [
                {"column": t, "value": c.value, "published": c.published, "status": c.status}
                for t, c in zip(titles, cells)
            ]}
            lines.append(json.dumps(record, ensure_ascii=False, separators=(",", ":")))
        return "\n".join(lines) + "\n"
    raise UsageError(f"unknown format {fmt!r}")
