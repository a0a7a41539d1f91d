"""Norm derivatives and orthogonality constants in finite-dimensional spaces."""

from .kernels import BACKEND
from .spaces import (Lp, OrthantMixed2D, Polyhedral2D, RegularPolygon, dual_norm,
                     ext_supporting_functionals, norm, regular_polygon_vertices,
                     sphere_point_2d)
from .derivatives import (DerivativeTriple, alpha_left, alpha_right, derivative,
                          is_birkhoff, is_rho_orthogonal, is_smooth_point,
                          rho_cone_membership)

__version__ = "0.1.0"
