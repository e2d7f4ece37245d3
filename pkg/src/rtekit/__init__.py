"""Regular transducer expressions and deterministic two-way transducers.

Finite-word and infinite-word (lasso-represented) semantics, effective
translations between expressions and machines, transition monoids, and
unambiguous factorization forests.
"""

__version__ = "0.1.0"
