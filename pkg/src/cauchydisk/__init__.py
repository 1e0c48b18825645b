"""Green potentials, Cauchy transforms and integral constants on the unit disk.

The main entry points are re-exported here; see the submodules for details.
"""

from .constants import c_q, i_beta, j_beta, thm1_norm_bound
from .fields import ScalarField, get as get_field
from .geometry import DiskPoint, cauchy_kernel, green_kernel, pseudo_hyperbolic
from .operators import OperatorTag, cauchy_transform, conj_cauchy_transform, green_potential

__version__ = "0.1.0"

__all__ = [
    "DiskPoint",
    "OperatorTag",
    "ScalarField",
    "c_q",
    "cauchy_kernel",
    "cauchy_transform",
    "conj_cauchy_transform",
    "get_field",
    "green_kernel",
    "green_potential",
    "i_beta",
    "j_beta",
    "pseudo_hyperbolic",
    "thm1_norm_bound",
]
