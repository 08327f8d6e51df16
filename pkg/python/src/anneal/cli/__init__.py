"""
Command line of the anneal package and its instance documents.
"""

# IMPORTs local
from .instances import InstanceDocument, parse_instance, load_instance
from .main import build_parser, main

# API public
__all__ = ["InstanceDocument", "parse_instance", "load_instance", "build_parser", "main"]
