"""Exact rational coefficient backend.

Every coefficient in the package is an exact rational number.  Two
interchangeable backends provide that type:

* ``gmpy2`` -- GMP-backed ``mpq`` (default, roughly 10x faster), and
* ``fractions`` -- the pure-stdlib ``fractions.Fraction``.

Select with the ``QFOCK_BACKEND`` environment variable (``gmpy2`` or
``fractions``).  If gmpy2 is requested but not installed, the stdlib
backend is used silently.  ``benchmarks/backend_bench.py`` compares the
two on a real verification workload.
"""

from __future__ import annotations

import os
from fractions import Fraction

_requested = os.environ.get("QFOCK_BACKEND", "gmpy2").strip().lower()
if _requested not in ("gmpy2", "fractions"):
    raise ValueError(
        f"QFOCK_BACKEND must be 'gmpy2' or 'fractions', got {_requested!r}"
    )

if _requested == "gmpy2":
    try:
        from gmpy2 import mpq as rational

        BACKEND = "gmpy2"
    except ImportError:  # pragma: no cover - exercised via env flag only
        rational = Fraction
        BACKEND = "fractions"
else:
    rational = Fraction
    BACKEND = "fractions"

#: The concrete rational type of the active backend.
RAT = type(rational(0))

RZERO = rational(0)
RONE = rational(1)


def to_rational(x) -> "RAT":
    """Coerce an int, Fraction, backend rational, or 'a/b' string."""
    if isinstance(x, RAT):
        return x
    if isinstance(x, (int, Fraction, str)):
        return rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")
