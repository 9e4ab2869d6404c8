"""
Test settings for the modext app.
"""

from modext.settings.common import CAP_DEFAULTS


def plugin_settings(settings):  # pylint: disable=unused-argument
    """
    Configure test overrides for modext.

    Args:
        settings: The Django settings object
    """


INSTALLED_APPS = ("modext.apps.ModextConfig",)

SECRET_KEY = "test-secret-key"

USE_TZ = True

DATABASES = {}

# Tests always run with the documented defaults, whatever the environment says.
MODEXT_MAX_GROUP_ORDER = CAP_DEFAULTS["MODEXT_MAX_GROUP_ORDER"]
MODEXT_MAX_HOM_COUNT = CAP_DEFAULTS["MODEXT_MAX_HOM_COUNT"]
MODEXT_ORACLE_MAX_ORDER = CAP_DEFAULTS["MODEXT_ORACLE_MAX_ORDER"]
MODEXT_ORACLE_MAX_NODES = CAP_DEFAULTS["MODEXT_ORACLE_MAX_NODES"]
MODEXT_DIGRAPH_BRUTE_FORCE_MAX_VERTICES = CAP_DEFAULTS["MODEXT_DIGRAPH_BRUTE_FORCE_MAX_VERTICES"]
MODEXT_MAX_PAIR_CHECKS = CAP_DEFAULTS["MODEXT_MAX_PAIR_CHECKS"]
MODEXT_LOG_LEVEL = "WARNING"
