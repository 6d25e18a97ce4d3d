"""Locally s-arc-transitive graphs from product-action amalgams."""

from arclab.perm import GroupError, Permutation, PermGroup, ThresholdError

__version__ = "0.1.0"

__all__ = ["GroupError", "Permutation", "PermGroup", "ThresholdError", "__version__"]
