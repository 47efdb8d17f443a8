"""Exact verification tools for covering the Boolean cube minus its low-weight vertices."""
from .cover_matrix import SubsetMatrix, build, solve_homogeneous, verify_high_regime, verify_involution
from .cover_oracle import CoverInstance, DegreeCertificate, min_cover_degree, verify_degree_bound
from .cube_poly import MultilinearPoly, WeightProfile, alpha_of, construct_extremal, evaluate
from .lattice import LatticeTable, RankOrder, enumerate_up_to_rank, mobius_transform, zeta_transform
from .report import Report
from .scalar import FieldKind, Fp, binomial, field_inverse

__version__ = "0.1.0"
