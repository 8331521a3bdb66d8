"""Cluster seeds attached to reduced words, their weight gradings, and the
exact-rational SL_n realization of generalized minors and the twist."""

from .cartan import CartanData, RootVector, Weight, build_cartan, pos_neg_parts

__all__ = [
    "CartanData",
    "RootVector",
    "Weight",
    "build_cartan",
    "pos_neg_parts",
]
