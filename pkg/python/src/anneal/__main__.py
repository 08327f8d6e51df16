"""
Entry point of 'python -m anneal'.
"""

# IMPORTs
import sys

# IMPORTs local
from .cli import main

sys.exit(main())
