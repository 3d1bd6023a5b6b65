from __future__ import annotations

from contextlib import contextmanager

from django import forms
from django.core.management.base import BaseCommand, CommandError

from .exceptions import AnalysisError

INVALID_INVOCATION = 2


class AnalysisCommand(BaseCommand):
    """Base for analysis commands: bad input becomes ``CommandError`` with exit status 2."""

    requires_system_checks: list[str] = []

    @contextmanager
    def reporting_errors(self):
        try:
            yield
        except (AnalysisError, forms.ValidationError) as exc:
            message = "; ".join(exc.messages) if isinstance(exc, forms.ValidationError) else str(exc)
            raise CommandError(message, returncode=INVALID_INVOCATION) from exc

    def validated(self, form: forms.Form) -> dict:
        if not form.is_valid():
            errors = "; ".join(
                f"{field}: {' '.join(messages)}" for field, messages in form.errors.items()
            )
            raise CommandError(errors, returncode=INVALID_INVOCATION)
        return form.cleaned_data
