"""
fsscoex - coexistence engine for 5G base stations and C-band FSS earth stations
"""

__version__ = "0.1.0"
__author__ = "fsscoex Team"
