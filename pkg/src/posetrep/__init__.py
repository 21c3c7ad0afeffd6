"""Representation type, tau-tilting finiteness and g-tameness of poset incidence algebras."""

__version__ = "0.1.0"
