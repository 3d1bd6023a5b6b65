from __future__ import annotations

from django import forms

from .models import LorenzParams
from .services import GENERATORS


class GenerateForm(forms.Form):
    system = forms.ChoiceField(choices=[(name, name) for name in GENERATORS])
    n = forms.IntegerField(min_value=1)
    seed = forms.IntegerField(min_value=0, required=False)
    x0 = forms.FloatField(required=False)
    dt = forms.FloatField(required=False)
    transient = forms.IntegerField(min_value=0, required=False)
    states = forms.BooleanField(required=False)

    def clean_x0(self) -> float:
        x0 = self.cleaned_data.get("x0")
        if x0 is None:
            return 0.4
        if not 0.0 < x0 < 1.0:
            raise forms.ValidationError("x0 must lie strictly between 0 and 1.")
        return x0

    def clean_dt(self) -> float:
        dt = self.cleaned_data.get("dt")
        if dt is None:
            return LorenzParams.dt
        if dt <= 0:
            raise forms.ValidationError("dt must be positive.")
        return dt

    def clean(self):
        cleaned = super().clean()
        if cleaned.get("states") and cleaned.get("system") != "lorenz":
            raise forms.ValidationError("--states is only available for the lorenz system.")
        return cleaned

    def lorenz_params(self) -> LorenzParams:
        transient = self.cleaned_data.get("transient")
        return LorenzParams(
            dt=self.cleaned_data["dt"],
            transient_steps=LorenzParams.transient_steps if transient is None else transient,
        )
