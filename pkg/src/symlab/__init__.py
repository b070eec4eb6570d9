"""Desk-scale workbench for Boolean-group finite-sums combinatorics,
Ramsey/Schur search, and permutation-model support/orbit experiments."""

__version__ = "0.1.0"
