"""Symbolic lattice of types and the rational cotorsion theories it cogenerates."""
