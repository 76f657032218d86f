"""Preproj: generalized preprojective algebras and their τ-tilting theory."""

__version__ = "0.4.0"
