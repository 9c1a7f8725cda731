from clb.identities.automorphisms import mu, nu, rho
from clb.identities.cayley import cayley, cayley_inv
from clb.identities.perturbation import PerturbationVerdict, perturbation_verdict
from clb.identities.support import (
    SupportSets,
    block_support,
    coefficient_identities,
    in_Q,
    in_R,
    polarization_check,
)

__all__ = [
    "PerturbationVerdict",
    "SupportSets",
    "block_support",
    "cayley",
    "cayley_inv",
    "coefficient_identities",
    "in_Q",
    "in_R",
    "mu",
    "nu",
    "perturbation_verdict",
    "polarization_check",
    "rho",
]
