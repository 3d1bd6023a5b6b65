from __future__ import annotations

from django import forms


def parse_int_range(raw: str) -> list[int]:
    """``"1:10"`` -> [1..10] inclusive; a bare ``"6"`` is a single value."""
    parts = [part.strip() for part in str(raw).split(":")]
    try:
        numbers = [int(part) for part in parts]
    except ValueError:
        raise forms.ValidationError(f"Invalid integer range {raw!r}.") from None
    if len(numbers) == 1:
        start = stop = numbers[0]
        step = 1
    elif len(numbers) == 2:
        start, stop = numbers
        step = 1
    elif len(numbers) == 3:
        start, stop, step = numbers
    else:
        raise forms.ValidationError(f"Invalid integer range {raw!r}.")
    if step <= 0 or stop < start:
        raise forms.ValidationError(f"Range {raw!r} is empty.")
    return list(range(start, stop + 1, step))


def parse_float_range(raw: str) -> list[float]:
    """``"0.2:3.0:0.1"`` -> 29 thresholds, rounded to kill accumulated drift."""
    parts = [part.strip() for part in str(raw).split(":")]
    try:
        numbers = [float(part) for part in parts]
    except ValueError:
        raise forms.ValidationError(f"Invalid number range {raw!r}.") from None
    if len(numbers) == 1:
        return [numbers[0]]
    if len(numbers) != 3:
        raise forms.ValidationError(f"Number ranges take start:stop:step, got {raw!r}.")
    start, stop, step = numbers
    if step <= 0 or stop < start:
        raise forms.ValidationError(f"Range {raw!r} is empty.")
    count = int(round((stop - start) / step)) + 1
    return [round(start + k * step, 10) for k in range(count)]


class IntRangeField(forms.CharField):
    def to_python(self, value):
        value = super().to_python(value)
        if value in self.empty_values:
            return []
        return parse_int_range(value)


class FloatRangeField(forms.CharField):
    def to_python(self, value):
        value = super().to_python(value)
        if value in self.empty_values:
            return []
        return parse_float_range(value)
