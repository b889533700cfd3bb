"""Numerical toolkit for quantum correlations beyond entanglement.

Dense-matrix implementation of discord-type measures, geometric and
measurement-induced quantifiers, unitary response measures, coherence and
asymmetry based measures, plus the entanglement primitives and verification
harness they are checked against.
"""

__version__ = "0.1.0"
