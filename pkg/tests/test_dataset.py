import numpy as np
import pytest
from hypothesis import given, strategies as st

import bifold
from bifold import CellValue, DataError, ObjectClass
from bifold.dataset import from_arrays, parse_csv, parse_json, serialize_csv, serialize_json, transpose


DIAG_CSV = "tiny,c1,c2\nr1,1,0\nr2,0,1\n"


def test_parse_csv_identity_pattern():
    d = parse_csv(DIAG_CSV)
    assert (d.m, d.n) == (2, 2)
    assert d.name == "tiny"
    assert d.matrix.cell(0, 0) is CellValue.ONE
    assert d.matrix.cell(0, 1) is CellValue.ZERO
    assert d.matrix.cell(1, 1) is CellValue.ONE


def test_parse_csv_na_and_empty_are_missing():
    d = parse_csv("x,c1,c2\nr1,NA,1\nr2,,0\n")
    assert d.matrix.cell(0, 0) is CellValue.MISSING
    assert d.matrix.cell(1, 0) is CellValue.MISSING


def test_parse_csv_southern_women(sw_dataset):
    d = sw_dataset
    assert (d.m, d.n) == (18, 14)
    attendance = [8, 7, 8, 7, 4, 4, 4, 3, 4, 4, 4, 6, 7, 8, 5, 2, 2, 2]
    assert list((d.matrix.cells == 1).sum(axis=1)) == attendance
    assert int((d.matrix.cells == 1).sum()) == 89


@pytest.mark.parametrize(
    "text,code",
    [
        ("x,c1,c2\nr1,1\nr2,0,1\n", "RAGGED_ROWS"),
        ("x,c1,c1\nr1,1,0\nr2,0,1\n", "DUPLICATE_LABEL"),
        ("x,c1,c2\nr1,1,0\nr1,0,1\n", "DUPLICATE_LABEL"),
        ("x,c1,c2\nr1,1,2\nr2,0,1\n", "BAD_CELL"),
        ("x,c1,c2\nr1,1,0\n", "TOO_FEW_ROWS"),
        ("x,c1\nr1,1\nr2,0\n", "TOO_FEW_COLUMNS"),
    ],
)
def test_parse_csv_errors(text, code):
    with pytest.raises(DataError) as exc:
        parse_csv(text)
    assert exc.value.code == code


def test_parse_json_basic():
    d = parse_json(
        '{"name": "t", "row_labels": ["a","b"], "col_labels": ["c","d"],'
        ' "cells": [[1,0],[0,1]]}'
    )
    assert (d.m, d.n) == (2, 2)


def test_parse_json_single_row_rejected():
    with pytest.raises(DataError):
        parse_json(
            '{"name": "t", "row_labels": ["a"], "col_labels": ["c","d"],'
            ' "cells": [[1,null]]}'
        )


def test_parse_json_null_is_missing_and_meta_passthrough():
    d = parse_json(
        '{"name": "t", "row_labels": ["a","b"], "col_labels": ["c","d"],'
        ' "cells": [[1,null],[0,1]],'
        ' "meta": [{"class": "ROW", "index": 0, "category": "Republican"}]}'
    )
    assert d.matrix.cell(0, 1) is CellValue.MISSING
    row0 = [e for e in d.meta if e.obj_class is ObjectClass.ROW and e.index == 0][0]
    assert row0.category == "Republican"
    assert '"Republican"' in serialize_json(d)


def test_parse_json_unknown_class():
    with pytest.raises(DataError) as exc:
        parse_json(
            '{"name": "t", "row_labels": ["a","b"], "col_labels": ["c","d"],'
            ' "cells": [[1,0],[0,1]], "meta": [{"class": "EDGE", "index": 0}]}'
        )
    assert exc.value.code == "UNKNOWN_CLASS"


def test_transpose_involution_and_shape(sw_dataset):
    t = transpose(sw_dataset)
    assert (t.m, t.n) == (14, 18)
    assert transpose(t) == sw_dataset


def test_transpose_preserves_missing():
    d = from_arrays([[1, None], [0, 1]])
    t = transpose(d)
    assert t.matrix.cell(1, 0) is CellValue.MISSING
    assert np.array_equal(t.matrix.cells, d.matrix.cells.T)


def test_csv_round_trip(sw_dataset):
    assert parse_csv(serialize_csv(sw_dataset)) == sw_dataset


def test_json_round_trip(sw_dataset):
    assert parse_json(serialize_json(sw_dataset)) == sw_dataset


@st.composite
def datasets(draw):
    m = draw(st.integers(2, 5))
    n = draw(st.integers(2, 5))
    cells = draw(
        st.lists(
            st.lists(st.sampled_from([1, 0, None]), min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
    return from_arrays(cells, name=draw(st.text(st.characters(categories=["L", "N"]), max_size=8)))


@given(datasets())
def test_round_trips_bit_exact(d):
    assert parse_csv(serialize_csv(d)) == d
    assert parse_json(serialize_json(d)) == d
    assert transpose(transpose(d)) == d


def test_cells_are_immutable(sw_dataset):
    with pytest.raises(ValueError):
        sw_dataset.matrix.cells[0, 0] = 0
