"""Exact verification toolkit for Galois groups with restricted ramification.

Subpackages cover: finite permutation-group computation (`groups`), the fixture
catalog of non-solvable groups of small order (`catalog`), exact rational
root-discriminant bounds (`bounds`), imaginary-quadratic class/ray-class
arithmetic (`quadfields`), generator-count inequality evaluators (`genbounds`),
and the exclusion rule engine with machine-checkable proof traces (`engine`).
"""

__version__ = "0.1.0"
