from django.apps import AppConfig


class RqaConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.rqa"
