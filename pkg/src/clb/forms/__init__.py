from clb.forms.isometry import form_isometry
from clb.forms.space import (
    FormSpace,
    first_nonisotropic,
    nonisotropic_vector,
    orthogonal_basis,
    phi,
    phi2,
    standard_space,
    symplectic_basis,
)
from clb.forms.twisted import TwistedElement, in_twisted, sigma_builder, twisted

__all__ = [
    "FormSpace",
    "TwistedElement",
    "first_nonisotropic",
    "form_isometry",
    "in_twisted",
    "nonisotropic_vector",
    "orthogonal_basis",
    "phi",
    "phi2",
    "sigma_builder",
    "standard_space",
    "symplectic_basis",
    "twisted",
]
