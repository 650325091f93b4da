"""Exact verification of a braid-equivariant bijection between the projective
space of a 10-dimensional symplectic F_3-space and the conjugation classes of
degree-3 cover monodromy data, together with the supporting lattice algebra."""

__version__ = "0.1.0"
