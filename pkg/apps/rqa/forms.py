from __future__ import annotations

from django import forms

from apps.core.forms import FloatRangeField, IntRangeField

from .models import Norm


class SweepForm(forms.Form):
    m = IntRangeField()
    tau = IntRangeField()
    eps = FloatRangeField()
    norm = forms.ChoiceField(choices=[(norm.value, norm.value) for norm in Norm])
    dmin = forms.IntegerField(min_value=1)
    workers = forms.IntegerField(min_value=1)

    def clean_eps(self) -> list[float]:
        eps = self.cleaned_data["eps"]
        if any(value <= 0 for value in eps):
            raise forms.ValidationError("Recurrence thresholds must be positive.")
        return eps

    def clean_m(self) -> list[int]:
        return self._positive(self.cleaned_data["m"], "embedding dimensions")

    def clean_tau(self) -> list[int]:
        return self._positive(self.cleaned_data["tau"], "embedding delays")

    @staticmethod
    def _positive(values: list[int], what: str) -> list[int]:
        if any(value < 1 for value in values):
            raise forms.ValidationError(f"All {what} must be at least 1.")
        return values
