"""Rational arithmetic backend.

All exact computations run over arbitrary-precision rationals.  Two
interchangeable backends are supported:

* ``gmpy2.mpq`` -- compiled GMP rationals, the default when gmpy2 is
  importable.  The fraction-free elimination and Casoratian kernels are
  dominated by bignum arithmetic, so GMP gives a large constant-factor
  speedup.
* ``fractions.Fraction`` -- pure-Python fallback, always available.

Set ``DUALRACAH_BACKEND=fraction`` (or ``gmpy2``) to force a choice; see
``benchmarks/bench_backend.py`` for a head-to-head comparison.
"""

from __future__ import annotations

import os
from fractions import Fraction

_FORCED = os.environ.get("DUALRACAH_BACKEND", "").strip().lower()

if _FORCED in ("", "gmpy2"):
    try:
        from gmpy2 import mpq as _mpq  # type: ignore

        BACKEND = "gmpy2"
    except ImportError:
        if _FORCED == "gmpy2":
            raise
        _mpq = None
        BACKEND = "fraction"
elif _FORCED == "fraction":
    _mpq = None
    BACKEND = "fraction"
else:
    raise ValueError(f"unknown DUALRACAH_BACKEND: {_FORCED!r}")


if BACKEND == "gmpy2":

    def rat(num, den=1):
        """Exact rational from integers (or another rational)."""
        return _mpq(num, den)

else:

    def rat(num, den=1):
        """Exact rational from integers (or another rational)."""
        return Fraction(num, den)


ZERO = rat(0)
ONE = rat(1)


def is_rational(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return True
    return BACKEND == "gmpy2" and isinstance(x, type(ZERO))


def rat_from_str(s: str):
    """Parse the canonical "p/q" (or plain "p") serialization."""
    s = s.strip()
    if "/" in s:
        p_str, q_str = s.split("/", 1)
        p, q = int(p_str), int(q_str)
        if q == 0:
            raise ZeroDivisionError(f"zero denominator in {s!r}")
        return rat(p, q)
    return rat(int(s))


def rat_to_str(x) -> str:
    """Canonical "p/q" serialization with the sign on the numerator."""
    x = rat(x)
    return f"{x.numerator}/{x.denominator}"
