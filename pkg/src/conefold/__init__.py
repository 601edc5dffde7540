"""Flat cone surfaces around cosmic strings, their Gauss-Bonnet constraints,
observational tension bounds and the spatial-topology case analysis."""

from .cone_geometry import (
    ConeGeometryError,
    ConicalPoint,
    FlatConeSurface,
    StringTension,
    admissible_genus,
    chi_from_tensions,
    cone_point_from_tension,
    deficit_from_tension,
    gauss_bonnet_residual,
    parse_surface,
    tension_from_deficit,
)
from .flat_structure import (
    LocalModel,
    PlanarLoop,
    cone_metric_length,
    half_plane_count,
    holonomy_around_point,
    natural_coordinate_closed_form,
    natural_coordinate_quadrature,
    order_from_tension,
    phi_circumference,
    pole_admissibility,
)
from .foliation import (
    FoliationScenario,
    TopologyVerdict,
    classify,
    enumerate_scenarios,
    reeb_stability_propagates,
    theorem_compact_leaf_exists,
)
from .observational import (
    BUILTIN_CATALOG,
    GenusVerdictReport,
    NetworkSample,
    ObservationalBound,
    euler_bound_report,
    gut_scale_estimate,
    load_bound_catalog,
    sample_network,
)

__version__ = "0.1.0"
