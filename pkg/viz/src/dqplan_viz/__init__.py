"""Offline 3D renderer for dqplan path export files."""

from .reader import PathDocument, Sample, SchemaError, Zone, load_path_document
from .render import RenderOptions, path_arrows, render, render_compare, rotate_axis

__version__ = "0.1.0"
