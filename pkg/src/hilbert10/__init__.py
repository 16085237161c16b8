"""Computability workbench: fuel-bounded Turing machines, machine enumeration,
halting-set dovetailing, primitive recursion, Diophantine search and pi digits."""

__version__ = "0.1.0"
