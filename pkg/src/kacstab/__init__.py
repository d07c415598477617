"""Exact computations for stability conditions on derived categories of acyclic quivers."""

from .cone import build_A_sigma, heart_simples, imaginary_cone, phase_gap
from .errors import KacstabError
from .exceptional import extract_sigma_exceptional, verify_exceptional
from .gaussian import GQ, PhaseKey
from .pipeline import analyze, run_gap_stage
from .quiver import Quiver, classify_type, forms, parse_quiver
from .roots import RootData, imaginary_roots_up_to, real_roots_up_to, root_kind
from .stability import (GenericHomTable, hn_classes, is_semistable_class, parse_charge,
                        semistable_classes_up_to, support_constant)
from .tilts import HeartSMC, bgp_reflect, gldim_estimate, is_totally_semistable, tilt_heart

__version__ = "0.1.0"
