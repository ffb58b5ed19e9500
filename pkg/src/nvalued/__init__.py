"""Multivalued products on quotients of the unit quaternions and the
rotation group by their finite subgroups, with randomized axiom
verification and topological classification evidence."""

from .coset import (
    Base,
    CosetSpace,
    Orbit,
    OrbitMultiset,
    SizeMismatch,
    TieWarning,
    identity_orbit,
    match_multisets,
    multiset_equal,
    orbit_distance,
    orbit_inverse,
    orbit_product,
    orbit_product_left,
    orbit_product_right,
    project,
    random_point,
)
from .axioms import (
    AxiomReport,
    check_associativity,
    check_identity,
    check_inverse,
    check_well_defined,
    corrupted_copy,
    run_all,
)
from .quaternion import (
    ONE,
    QI,
    QJ,
    QK,
    Quaternion,
    Vec3,
    canonical_sign,
    conj_action,
    qdist,
    qmul,
    random_unit,
    rotation_of,
)
from .rotgroups import (
    ClosureFailure,
    GroupSpec,
    NotInGroup,
    RotationGroup,
    binary_cover,
    build_group,
    catalog,
    element_order,
    has_half_turn,
)
from .topology import (
    AntipodalSolutions,
    ClassificationReport,
    ConsistencyFailure,
    IdentityViolation,
    SingularOrbitData,
    SuspensionReport,
    check_suspension,
    classify,
    riemann_hurwitz_check,
    singular_orbits,
    solve_antipodal,
    tau_has_fixed_points,
)

__version__ = "0.1.0"

__all__ = [
    "AntipodalSolutions",
    "AxiomReport",
    "Base",
    "ClassificationReport",
    "ClosureFailure",
    "ConsistencyFailure",
    "CosetSpace",
    "GroupSpec",
    "IdentityViolation",
    "NotInGroup",
    "ONE",
    "Orbit",
    "OrbitMultiset",
    "QI",
    "QJ",
    "QK",
    "Quaternion",
    "RotationGroup",
    "SingularOrbitData",
    "SizeMismatch",
    "SuspensionReport",
    "TieWarning",
    "Vec3",
    "binary_cover",
    "build_group",
    "canonical_sign",
    "catalog",
    "check_associativity",
    "check_identity",
    "check_inverse",
    "check_suspension",
    "check_well_defined",
    "classify",
    "conj_action",
    "corrupted_copy",
    "element_order",
    "has_half_turn",
    "identity_orbit",
    "match_multisets",
    "multiset_equal",
    "orbit_distance",
    "orbit_inverse",
    "orbit_product",
    "orbit_product_left",
    "orbit_product_right",
    "project",
    "qdist",
    "qmul",
    "random_point",
    "random_unit",
    "riemann_hurwitz_check",
    "rotation_of",
    "run_all",
    "singular_orbits",
    "solve_antipodal",
    "tau_has_fixed_points",
    "__version__",
]
