"""Exact verification engine for Weyl algebras in characteristic p, Azumaya algebras and Brauer/derived Picard group arithmetic."""

__version__ = "0.1.0"
