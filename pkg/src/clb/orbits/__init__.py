from clb.orbits.groups import GroupEnumeration, classical_order, descent_census, enumerate_group
from clb.orbits.orbits import (
    HEADER,
    SPACES,
    OrbitRecord,
    OrbitReport,
    check_pair_sigma,
    check_twisted_stability,
    orbits,
    preserves_orbit,
)

__all__ = [
    "HEADER",
    "SPACES",
    "GroupEnumeration",
    "OrbitRecord",
    "OrbitReport",
    "check_pair_sigma",
    "check_twisted_stability",
    "classical_order",
    "descent_census",
    "enumerate_group",
    "orbits",
    "preserves_orbit",
]
