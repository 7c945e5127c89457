"""Binary relation data model and file formats.

A dataset is an m x n grid over {ONE, ZERO, MISSING} relating two classes
of objects (rows and columns), with unique labels per class and optional
per-object metadata. Cells are stored internally as an int8 array with
``-1`` marking missing entries; the array is frozen after construction so
datasets can be shared freely across threads.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError

_MISSING = -1


class CellValue(enum.Enum):
    ONE = 1
    ZERO = 0
    MISSING = -1


class ObjectClass(str, enum.Enum):
    ROW = "ROW"
    COLUMN = "COLUMN"


@dataclass(frozen=True)
class ObjectMeta:
    obj_class: ObjectClass
    index: int
    category: str | None = None
    display_color: str | None = None


@dataclass(frozen=True)
class BinaryRelationMatrix:
    """m x n grid of cells with row and column labels.

    ``cells`` holds int8 values 1/0/-1 (-1 = missing) and is read-only.
    """

    cells: np.ndarray
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]

    def __post_init__(self):
        cells = np.asarray(self.cells, dtype=np.int8)
        if cells.ndim != 2:
            raise DataError("cells must be a 2-D grid", code="BAD_SHAPE")
        m, n = cells.shape
        if m < 2:
            raise DataError(f"need at least 2 row objects, got {m}", code="TOO_FEW_ROWS")
        if n < 2:
            raise DataError(f"need at least 2 column objects, got {n}", code="TOO_FEW_COLUMNS")
        if not np.isin(cells, (1, 0, _MISSING)).all():
            raise DataError("cells may only contain 1, 0 or missing", code="BAD_CELL")
        if len(self.row_labels) != m or len(self.col_labels) != n:
            raise DataError("label count does not match grid shape", code="DIMENSION_MISMATCH")
        for labels, which in ((self.row_labels, "row"), (self.col_labels, "column")):
            if len(set(labels)) != len(labels):
                raise DataError(f"duplicate {which} labels", code="DUPLICATE_LABEL")
        cells = cells.copy()
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))

    @property
    def m(self) -> int:
        return self.cells.shape[0]

    @property
    def n(self) -> int:
        return self.cells.shape[1]

    def cell(self, i: int, j: int) -> CellValue:
        return CellValue(int(self.cells[i, j]))

    @property
    def observed(self) -> np.ndarray:
        """Boolean mask of non-missing cells."""
        return self.cells != _MISSING

    def __eq__(self, other):
        if not isinstance(other, BinaryRelationMatrix):
            return NotImplemented
        return (
            self.row_labels == other.row_labels
            and self.col_labels == other.col_labels
            and np.array_equal(self.cells, other.cells)
        )

    def __hash__(self):
        return hash((self.row_labels, self.col_labels, self.cells.tobytes()))


def default_meta(m: int, n: int) -> tuple[ObjectMeta, ...]:
    return tuple(
        [ObjectMeta(ObjectClass.ROW, i) for i in range(m)]
        + [ObjectMeta(ObjectClass.COLUMN, j) for j in range(n)]
    )


@dataclass(frozen=True)
class Dataset:
    matrix: BinaryRelationMatrix
    meta: tuple[ObjectMeta, ...] = ()
    name: str = ""

    def __post_init__(self):
        m, n = self.matrix.m, self.matrix.n
        meta = tuple(self.meta) if self.meta else default_meta(m, n)
        seen = set()
        for entry in meta:
            limit = m if entry.obj_class is ObjectClass.ROW else n
            if not 0 <= entry.index < limit:
                raise DataError(
                    f"meta index {entry.index} out of range for {entry.obj_class.value}",
                    code="META_INDEX",
                )
            key = (entry.obj_class, entry.index)
            if key in seen:
                raise DataError(f"duplicate meta entry for {key}", code="META_DUPLICATE")
            seen.add(key)
        if len(seen) != m + n:
            raise DataError("meta must cover every object exactly once", code="META_COVERAGE")
        # canonical order: rows by index, then columns by index
        meta = tuple(sorted(meta, key=lambda e: (e.obj_class is ObjectClass.COLUMN, e.index)))
        object.__setattr__(self, "meta", meta)

    @property
    def m(self) -> int:
        return self.matrix.m

    @property
    def n(self) -> int:
        return self.matrix.n

    def labels(self) -> tuple[str, ...]:
        """All m+n object labels, rows first."""
        return self.matrix.row_labels + self.matrix.col_labels


def from_arrays(cells, row_labels=None, col_labels=None, name: str = "") -> Dataset:
    """Build a dataset programmatically; labels default to r0.., c0..

    ``cells`` accepts 1/0/-1 or None for missing entries.
    """
    grid = np.array(
        [[_MISSING if v is None else int(v) for v in row] for row in cells], dtype=np.int8
    )
    m, n = grid.shape
    if row_labels is None:
        row_labels = [f"r{i}" for i in range(m)]
    if col_labels is None:
        col_labels = [f"c{j}" for j in range(n)]
    return Dataset(BinaryRelationMatrix(grid, tuple(row_labels), tuple(col_labels)), name=name)


_CSV_TOKENS = {"1": 1, "0": 0, "": _MISSING, "NA": _MISSING}


def parse_csv(text: str) -> Dataset:
    """Parse the CSV format: header row of column labels, label column.

    Cell (0,0) carries the dataset name (may be empty). Cell tokens are
    "1", "0", "" or "NA".
    """
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r]  # drop trailing blank lines
    if len(rows) < 3:
        raise DataError("need a header row and at least 2 data rows", code="TOO_FEW_ROWS")
    header = rows[0]
    name = header[0]
    col_labels = tuple(header[1:])
    width = len(header)
    row_labels = []
    grid = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != width:
            raise DataError(f"line {lineno}: expected {width} fields, got {len(row)}", code="RAGGED_ROWS")
        row_labels.append(row[0])
        values = []
        for tok in row[1:]:
            tok = tok.strip()
            if tok not in _CSV_TOKENS:
                raise DataError(f"line {lineno}: bad cell token {tok!r}", code="BAD_CELL")
            values.append(_CSV_TOKENS[tok])
        grid.append(values)
    matrix = BinaryRelationMatrix(np.array(grid, dtype=np.int8), tuple(row_labels), col_labels)
    return Dataset(matrix, name=name)


def serialize_csv(d: Dataset) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([d.name, *d.matrix.col_labels])
    tokens = {1: "1", 0: "0", _MISSING: ""}
    for i, label in enumerate(d.matrix.row_labels):
        writer.writerow([label, *(tokens[int(v)] for v in d.matrix.cells[i])])
    return out.getvalue()


def parse_json(text: str) -> Dataset:
    """Parse the JSON format: {name, row_labels, col_labels, cells, meta?}.

    Cells are 1/0/null; meta entries are {"class": "ROW"|"COLUMN",
    "index": int, "category"?, "display_color"?} and may cover a subset of
    objects (the rest get defaults).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DataError(f"invalid JSON: {e}", code="BAD_JSON") from e
    if not isinstance(doc, dict):
        raise DataError("top-level JSON value must be an object", code="SCHEMA")
    for key in ("name", "row_labels", "col_labels", "cells"):
        if key not in doc:
            raise DataError(f"missing required field {key!r}", code="SCHEMA")
    cells = doc["cells"]
    if not isinstance(cells, list) or not all(isinstance(r, list) for r in cells):
        raise DataError("cells must be an array of arrays", code="SCHEMA")
    widths = {len(r) for r in cells}
    if len(widths) > 1:
        raise DataError("cells rows have inconsistent lengths", code="RAGGED_ROWS")
    grid = []
    for row in cells:
        values = []
        for v in row:
            if v is None:
                values.append(_MISSING)
            elif v in (0, 1) and not isinstance(v, bool):
                values.append(int(v))
            else:
                raise DataError(f"bad cell value {v!r}", code="BAD_CELL")
        grid.append(values)
    matrix = BinaryRelationMatrix(
        np.array(grid, dtype=np.int8),
        tuple(str(s) for s in doc["row_labels"]),
        tuple(str(s) for s in doc["col_labels"]),
    )
    meta = dict()
    for entry in doc.get("meta") or []:
        try:
            cls = ObjectClass(entry["class"])
        except (KeyError, ValueError, TypeError) as e:
            raise DataError(f"bad meta class in {entry!r}", code="UNKNOWN_CLASS") from e
        idx = entry.get("index")
        if not isinstance(idx, int):
            raise DataError(f"meta entry missing integer index: {entry!r}", code="SCHEMA")
        meta[(cls, idx)] = ObjectMeta(
            cls, idx, entry.get("category"), entry.get("display_color")
        )
    full = [meta.get((e.obj_class, e.index), e) for e in default_meta(matrix.m, matrix.n)]
    return Dataset(matrix, tuple(full), name=str(doc["name"]))


def serialize_json(d: Dataset) -> str:
    cells = [[None if v == _MISSING else int(v) for v in row] for row in d.matrix.cells]
    doc = {
        "name": d.name,
        "row_labels": list(d.matrix.row_labels),
        "col_labels": list(d.matrix.col_labels),
        "cells": cells,
        "meta": [
            {
                "class": e.obj_class.value,
                "index": e.index,
                "category": e.category,
                "display_color": e.display_color,
            }
            for e in d.meta
        ],
    }
    return json.dumps(doc, indent=2)


def transpose(d: Dataset) -> Dataset:
    """Swap the two object classes; an involution."""
    matrix = BinaryRelationMatrix(
        d.matrix.cells.T.copy(), d.matrix.col_labels, d.matrix.row_labels
    )
    flipped = {ObjectClass.ROW: ObjectClass.COLUMN, ObjectClass.COLUMN: ObjectClass.ROW}
    meta = tuple(
        ObjectMeta(flipped[e.obj_class], e.index, e.category, e.display_color) for e in d.meta
    )
    return Dataset(matrix, meta, name=d.name)


def load(path, fmt: str = "auto") -> Dataset:
    """Load a dataset file; format inferred from the extension by default."""
    from pathlib import Path

    p = Path(path)
    text = p.read_text(encoding="utf-8")
    if fmt == "auto":
        fmt = "json" if p.suffix.lower() == ".json" else "csv"
    if fmt == "json":
        return parse_json(text)
    if fmt == "csv":
        return parse_csv(text)
    raise DataError(f"unknown format {fmt!r}", code="BAD_FORMAT")
