"""qfock: exact verification kernel for q-oscillator operator algebras.

Realizes q-deformed oscillator algebras, a q-deformation of su(1,1), the
nonstandard q-deformed orthogonal algebras, their commutant generators, and
an Askey-Wilson algebra embedding as sparse operators on truncated
multi-mode Fock spaces, and certifies their defining identities as exact
zero residuals in the field of rational functions of t (with q = t**4).
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .scalar import GaussianRational, LaurentPoly, Scalar

__all__ = ["BACKEND", "GaussianRational", "LaurentPoly", "Scalar", "__version__"]
