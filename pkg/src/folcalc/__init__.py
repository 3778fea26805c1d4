"""Exact computations with foliated affine and projective structures on
singular holomorphic foliations by curves."""

__version__ = "0.1.0"
