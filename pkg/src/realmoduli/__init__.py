"""Strata, first Stiefel-Whitney cycle and orientation double cover of real moduli spaces of pointed rational curves."""
from .real_structure import LabelInvolution, sigma_normal
from .tree_core import Tree, canonical_form, enumerate_stable_trees

__all__ = ["LabelInvolution", "Tree", "canonical_form", "enumerate_stable_trees", "sigma_normal"]
__version__ = "0.1.0"
