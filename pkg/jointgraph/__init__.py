"""Joint inference on a pair of graphs sharing a vertex set."""

from .__about__ import __version__

__all__ = ["__version__"]
