"""Exact computations in the nullity-2 toroidal algebra and its modules.

Submodules: :mod:`tek.simple_lie` (type A algebras, finite modules),
:mod:`tek.toroidal` (the algebra, its form and twists), :mod:`tek.modules`
(module families), :mod:`tek.lambda_ops` (Lambda series),
:mod:`tek.exp_poly` (exp-polynomials) and :mod:`tek.checks` / :mod:`tek.cli`
(verification suites and the ``tek`` command).
"""
from .exp_poly import ExpPolynomial
from .simple_lie import DominantWeight, build_type_a
from .toroidal import AlgebraConfig, AlgebraElement, bracket, invariant_form, make_config

__all__ = ["AlgebraConfig", "AlgebraElement", "DominantWeight", "ExpPolynomial", "bracket",
           "build_type_a", "invariant_form", "make_config"]
__version__ = "0.1.0"
