"""casimir-forge: polynomial algebras from intermediate Casimir invariants.

Exact symbolic machinery over the rationals: Lie algebras by structure
constants, PBW-ordered enveloping-algebra arithmetic over n commuting copies,
Casimir invariants via the coadjoint PDE system, intermediate Casimirs,
virtual copies of Levi factors, and the nested-commutator closure search.
"""

__version__ = "0.1.0"
