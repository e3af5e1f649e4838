"""Exact computations in the extended Khovanov arc algebra K_{m,n} and the
basic Hecke-category algebra H_{m,n}, together with the isomorphism between
them, Dyck path combinatorics and standard module lattices."""

__version__ = "0.1.0"
