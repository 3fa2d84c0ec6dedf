"""Exact Shnirel'man density and addition theorems on N and on lattice cones."""

__version__ = "0.1.0"

from .order_core import (Box, ConeContext, DEFAULT_IDEAL_CAP, IdealCapExceeded, LinearExtension,
                         OrderIdeal, atoms, count_ideals, downward_closure, enumerate_ideals,
                         is_downward_closed, leq_lex, leq_rect, open_interval_below,
                         szpilrajn_extension, topological_extension)
from .pointset import PointSet, counting_function, hfold, sumset
from .density import DensityReport, h0_for_half, sigma_1d, sigma_ideal_family
from .theorems import (HypothesisNotMet, PartitionCertificate, basis_order, cover_check,
                       mann_check, partition_j_star, pigeonhole_decompose,
                       pigeonhole_decompose_1d, verify_product_bound, verify_shnirelman)
from .setgen import ParseError, parse_and_build
