"""Command line interface"""

from .catalog import Catalog, parse_chi
from .main import build_parser, main

__all__ = ["Catalog", "build_parser", "main", "parse_chi"]
