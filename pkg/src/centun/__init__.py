"""Exact construction of elements of S(n)^n from matrix coefficients of highest-weight modules."""

from .rootsys import CartanDatum, RootSystem, Weight, build_root_system

__all__ = ["CartanDatum", "RootSystem", "Weight", "build_root_system"]
