"""
Reduction
=========

The square-root step and everything around it.

Modules
-------
model
    ``ReducedModel`` and ROM files.
bsa
    Balanced square-root reduction and order selection.
realify
    Real realizations of conjugate-closed data, factors and models.
gramians
    Variant Gramians of state-space models.
intrusive
    Model-based reference reduction.
quadbt
    Quadrature-based balanced truncation.
pipeline
    Samples to reduced model.
compare
    Intrusive, sampled and QuadBT errors side by side.
diagnostics
    Passivity, contractivity and minimum-phase checks.
error
    H-infinity error estimates.

Submodules are imported directly (``from src.reduction.bsa import
bsa_reduce``); the variants and this package import each other's modules.
"""
