from django.apps import AppConfig


class ProjectionConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.projection"
