"""Exact computation of the divisor class of the genus-3 hyperelliptic locus.

The public surface: a graded-algebra kernel with rewrite rules
(`graded_algebra`), truncated Chern series and the degeneracy-locus
determinant (`chern_calculus`), the specific one-parameter family of stable
genus-3 curves and the final assembly (`family_model`), local multiplicities
of degeneracy germs (`local_multiplicity`), explicit jet ranks on
hyperelliptic curves (`jet_evaluator`), and a small expression language and
CLI on top (`exprlang`, `config`, `cli`).
"""

from .family_model import assemble_theorem, proposition_4  # noqa: F401

__version__ = "0.1.0"
