"""Parametric timed automata: classification, decision procedures and synthesis."""

from ._core import Model, ParatauError, compile_2cm, simulate_2cm

__all__ = ["Model", "ParatauError", "compile_2cm", "simulate_2cm"]
