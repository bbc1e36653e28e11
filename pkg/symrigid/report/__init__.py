"""!
@file report/__init__.py
@brief Text and JSON renderers.
"""

from symrigid.report.renderer import BaseRenderer, JsonRenderer, TextRenderer, get_renderer

__all__ = ["BaseRenderer", "TextRenderer", "JsonRenderer", "get_renderer"]
