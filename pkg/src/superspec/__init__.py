"""Spectra of equality and conjugacy supercommuting graphs on finite groups."""

__version__ = "0.1.0"
