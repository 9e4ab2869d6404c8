"""
modext Django application initialization.
"""

from django.apps import AppConfig


class ModextConfig(AppConfig):
    """
    Configuration for the modext Django application.

    The app carries no models. It exists so the management commands and the
    cap settings are discoverable by any Django project that installs it.
    """

    name = "modext"
    verbose_name = "Extensions of finite abelian groups"

    plugin_app = {
        "settings_config": {
            "standalone": {
                "test": {"relative_path": "settings.test"},
                "common": {"relative_path": "settings.common"},
                "production": {"relative_path": "settings.production"},
            },
        },
    }
