"""
Production settings for the modext app.
"""


def plugin_settings(settings):  # pylint: disable=unused-argument
    """
    Configure production overrides for modext.

    Production uses the common defaults and environment overrides as they are.

    Args:
        settings: The Django settings object
    """
