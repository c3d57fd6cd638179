"""Exact ECH capacities and loop certificates for 4-dimensional convex toric domains."""
__version__ = "0.1.0"

from .domains import (
    ConvexToricDomain,
    DomainKind,
    InvalidParameter,
    InvalidProfile,
    RadiusInterval,
    ToricError,
    ToricProfile,
    as_rational,
    ball_inradius,
    ball_outradius,
    check_ball_sandwich,
    contains,
    make_ball,
    make_ellipsoid,
    make_polydisk,
    make_polygon,
    polygonalize,
    reflect,
    scale,
    support,
)
from .orbits import (
    OrbitFamily,
    OrbitFamilyLabel,
    OrbitKind,
    OrbitSet,
    e,
    enumerate_orbit_families,
    enumerate_orbit_sets,
    h,
    orbit_action,
)
from .ech import (
    CapacitySequence,
    ConvexGenerator,
    Edge,
    capacities,
    capacity,
    capacity_minimizers,
    classify_low_index,
    ech_index,
    enumerate_generators,
    enumerate_scored_generators,
    generator_action,
    generator_from_orbit_set,
    lattice_count,
)
from .obstructions import (
    BreakingReport,
    CertificateReport,
    InvalidEllipsoid,
    InvalidInput,
    Verdict,
    breaking_analysis,
    ellipsoid_certificate,
    embedding_obstruction,
    noncontractibility_certificate,
)
from .curves import (
    CurveHomologyData,
    EndSpec,
    Range,
    UniquenessVerdict,
    adjunction_delta,
    automatic_transversality,
    braid_union_writhe,
    fredholm_index,
    negative_end_bounds,
    positive_end_bounds,
    two_cylinder_uniqueness,
)
