from __future__ import annotations

from django import forms
from django.core.validators import RegexValidator

from apps.rqa.models import Norm

from .models import Activity, Channel, Mode, Smoothness, default_axis

_token = RegexValidator(r"^[A-Za-z0-9_.-]+$", "Use letters, digits, '_', '.' or '-'.")


class AnalysisConfigForm(forms.Form):
    m = forms.IntegerField(min_value=1)
    tau = forms.IntegerField(min_value=1)
    eps = forms.FloatField()
    norm = forms.ChoiceField(choices=[(norm.value, norm.value) for norm in Norm])
    dmin = forms.IntegerField(min_value=1)
    bins = forms.IntegerField(min_value=2)
    plateau = forms.FloatField()
    mode = forms.ChoiceField(choices=Mode.choices)
    m_max = forms.IntegerField(min_value=1)
    tau_max = forms.IntegerField(min_value=2)
    workers = forms.IntegerField(min_value=1)

    def clean_eps(self) -> float:
        eps = self.cleaned_data["eps"]
        if eps <= 0:
            raise forms.ValidationError("The recurrence threshold must be positive.")
        return eps

    def clean_plateau(self) -> float:
        plateau = self.cleaned_data["plateau"]
        if plateau <= 0:
            raise forms.ValidationError("The plateau band must be positive.")
        return plateau


class ManifestEntryForm(forms.Form):
    path = forms.CharField()
    participant = forms.CharField(validators=[_token])
    sensor = forms.CharField(validators=[_token])
    activity = forms.ChoiceField(choices=Activity.choices)
    axis = forms.ChoiceField(choices=Channel.choices, required=False)
    smoothness = forms.ChoiceField(choices=Smoothness.choices)
    window_offset = forms.IntegerField(min_value=0, required=False)
    window_length = forms.IntegerField(min_value=1, required=False)

    def clean_window_offset(self) -> int:
        return self.cleaned_data.get("window_offset") or 0

    def clean(self):
        cleaned = super().clean()
        if not cleaned.get("axis") and cleaned.get("activity"):
            cleaned["axis"] = default_axis(cleaned["activity"])
        return cleaned
