"""
Settings used when modext runs on its own through ``manage.py``.
"""

import sys

from modext.settings import common

INSTALLED_APPS = ("modext.apps.ModextConfig",)

SECRET_KEY = "modext-standalone"

USE_TZ = True

common.plugin_settings(sys.modules[__name__])

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(asctime)s %(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "stderr": {"class": "logging.StreamHandler", "formatter": "plain", "stream": "ext://sys.stderr"},
    },
    "loggers": {
        "modext": {"handlers": ["stderr"], "level": MODEXT_LOG_LEVEL, "propagate": False},  # noqa: F821
    },
}
