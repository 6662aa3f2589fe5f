"""Discrete Hodge theory, Lefschetz numbers on simplicial complexes, and a
constraint ledger for fixed-point sets of circle actions."""
from .complex import (
    Graph,
    PointCloud,
    SimplicialComplex,
    epsilon_graph,
    euler_characteristic,
    fixed_subcomplex,
    from_facets,
    whitney_complex,
)
from .curvature import (
    check_configuration,
    configuration,
    enumerate_configurations,
    grove_searle_classify,
    hopf_gap_report,
)
from .hodge import betti, boundary_matrix, dirac, heat_supertrace, hodge_laplacian, spectrum, supersymmetry_check
from .kernels import BACKEND, exact_rank
from .lefschetz import (
    Automorphism,
    automorphism_from_vertex_map,
    automorphism_group,
    fixed_point_indices,
    heat_interpolation,
    induced_form_matrix,
    lefschetz_number,
    verify_lefschetz,
)

__version__ = "0.1.0"
