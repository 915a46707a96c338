"""Rational arithmetic backend selection.

The whole pipeline runs on exact rationals.  When gmpy2 is available its
C-implemented ``mpq`` type is used for the hot polynomial kernels; otherwise
we fall back to the pure-Python ``fractions.Fraction``.  Both types share the
operator surface we rely on (arithmetic, comparisons, ``numerator`` /
``denominator``, ``str`` printing as ``p/q``), so the choice is made once at
import time.  ``benchmarks/bench_backend.py`` compares the two.
"""

try:
    from gmpy2 import mpq as Rat

    BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rat

    BACKEND = "fractions"

RAT_ZERO = Rat(0)
RAT_ONE = Rat(1)


def rat(num, den=1):
    """Build a backend rational from integers (or parse a 'p/q' string)."""
    if isinstance(num, str):
        return Rat(num)
    return Rat(num, den)


def rat_str(r) -> str:
    """Canonical text form: 'p' when the denominator is 1, else 'p/q'."""
    return str(r)
