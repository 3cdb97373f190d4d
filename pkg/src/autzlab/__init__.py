"""Central automorphisms of finite p-groups given by power-commutator presentations."""

from .catalog import Catalog, CatalogEntry, load_catalog
from .central_aut import (
    adney_yen_order,
    autz_enumerate,
    autz_equals_zinn,
    count_homomorphisms,
    hom_order,
    z_inn_order,
)
from .errors import *  # noqa: F401,F403
from .groups import RealizedGroup, Subgroup, center, commutator_subgroup, quotient, subgroup_closure
from .invariants import (
    abelian_type,
    frattini,
    is_purely_nonabelian,
    is_regular,
    lower_central_series,
    nilpotency_class,
    rank,
    upper_central_series,
)
from .pcp import PcPresentation, collect, load_presentation, parse_presentation, realize
from .report import InvariantReport, analyze_group
from .theorems import CHECKS, TheoremVerdict, run_check

__version__ = "0.1.0"
