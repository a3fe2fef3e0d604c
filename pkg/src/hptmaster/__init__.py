"""Exact homotopy transfer for dg Lie and BV algebras over the rationals.

Everything runs in fractions.Fraction arithmetic: contractions onto
homology, the twisting-cochain recursion producing the transferred
higher structure, the basic perturbation lemma, the Gerstenhaber/BV
formality pipelines, and the Maurer-Cartan deformation layer.
"""

__version__ = "0.1.0"
