"""Surfaces in P^3 with prescribed A2 singular points over finite fields,
and the ternary linear codes attached to those singular sets."""

__version__ = "0.1.0"

from .ffield import field_make  # noqa: F401
