import math

import numpy as np
import pytest
from django import forms

from apps.core.csvio import format_cell, read_columns, write_rows
from apps.core.exceptions import RecordingParseError
from apps.core.forms import parse_float_range, parse_int_range


def test_format_cell_values():
    assert format_cell(None) == ""
    assert format_cell(math.nan) == ""
    assert format_cell(True) == "1"
    assert format_cell(np.int64(7)) == "7"
    assert format_cell(0.1) == "0.1"
    assert float(format_cell(np.float64(1 / 3))) == 1 / 3


def test_write_then_read_columns(tmp_path):
    path = write_rows(tmp_path / "out" / "t.csv", ["a", "b"], [[1, 0.5], [2, None]], comments=["hello"])
    text = path.read_text(encoding="utf-8")
    assert text.splitlines() == ["# hello", "a,b", "1,0.5", "2,"]


def test_read_columns_reports_line_and_column(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b\n1,2\n3,x\n", encoding="utf-8")
    with pytest.raises(RecordingParseError) as exc:
        read_columns(path, ["b"])
    assert exc.value.line == 3
    assert exc.value.column == "b"


def test_read_columns_accepts_byte_order_mark(tmp_path):
    path = tmp_path / "export.csv"
    path.write_bytes(b"\xef\xbb\xbfacc_x,acc_y\n1.5,2\n-0.5,3\n")
    table = read_columns(path, ["acc_x", "acc_y"])
    np.testing.assert_array_equal(table["acc_x"], [1.5, -0.5])


def test_read_columns_rejects_ragged_rows(tmp_path):
    path = tmp_path / "ragged.csv"
    path.write_text("a,b\n1,2\n3\n", encoding="utf-8")
    with pytest.raises(RecordingParseError) as exc:
        read_columns(path, ["a"])
    assert exc.value.line == 3


@pytest.mark.parametrize("content", ["", "a,b\n"])
def test_read_columns_needs_data(tmp_path, content):
    path = tmp_path / "empty.csv"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(RecordingParseError):
        read_columns(path, ["a"])


def test_read_columns_missing_file(tmp_path):
    with pytest.raises(RecordingParseError):
        read_columns(tmp_path / "nope.csv", ["a"])


def test_int_range():
    assert parse_int_range("1:10") == list(range(1, 11))
    assert parse_int_range("6") == [6]
    assert parse_int_range("2:8:3") == [2, 5, 8]
    with pytest.raises(forms.ValidationError):
        parse_int_range("5:1")
    with pytest.raises(forms.ValidationError):
        parse_int_range("a:b")


def test_float_range_default_thresholds():
    values = parse_float_range("0.2:3.0:0.1")
    assert len(values) == 29
    assert values[0] == 0.2
    assert values[-1] == 3.0
    assert values[8] == 1.0
    assert parse_float_range("1.5") == [1.5]
    with pytest.raises(forms.ValidationError):
        parse_float_range("0.2:3.0")
