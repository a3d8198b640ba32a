"""Real-valued special functions used by every analytical expression.

The heavy lifting lives in a kernel module that exists in two
interchangeable flavors: a compiled extension (``gfaber._kernels``, built
from Cython) and a pure-Python fallback (``gfaber._kernels_py``).  The
compiled module is preferred when present; setting the environment
variable ``GFABER_PURE_PY`` to a non-empty value forces the pure-Python
kernels.  :func:`backend` reports which one is active.

All operations are pure functions of their arguments and are safe to call
concurrently.  Domains are validated here, so the kernels can assume
well-formed inputs.
"""

from __future__ import annotations

import math
import os

from gfaber.errors import OverflowLogValue

if os.environ.get("GFABER_PURE_PY"):
    from gfaber import _kernels_py as _k

    _BACKEND = "python"
else:
    try:
        from gfaber import _kernels as _k  # type: ignore[no-redef]

        _BACKEND = "compiled"
    except ImportError:
        from gfaber import _kernels_py as _k  # type: ignore[no-redef]

        _BACKEND = "python"

_LOG_DBL_MAX = 709.0


def backend():
    """Name of the active kernel backend: ``"compiled"`` or ``"python"``."""
    return _BACKEND


def ln_gamma(x):
    """Natural log of the gamma function for ``x > 0``."""
    if x <= 0.0:
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def upper_incomplete_gamma(s, x):
    """Upper incomplete gamma function ``Gamma(s, x)``.

    Series evaluation for ``x < s + 1``, continued fraction otherwise;
    relative error <= 1e-10 for ``s`` in [0.1, 50].
    """
    if s <= 0.0:
        raise ValueError(f"upper_incomplete_gamma requires s > 0, got {s}")
    if x < 0.0:
        raise ValueError(f"upper_incomplete_gamma requires x >= 0, got {x}")
    return _k.upper_gamma(s, x)


def log_bessel_i(v, x):
    """``ln I_v(x)`` — log-scale modified Bessel function, first kind.

    Exposed alongside :func:`bessel_i` because the fading PDFs need the
    log value directly to avoid overflow inside their own log-space
    assembly.
    """
    if v < -0.5:
        raise ValueError(f"bessel_i requires order v >= -0.5, got {v}")
    if x < 0.0:
        raise ValueError(f"bessel_i requires x >= 0, got {x}")
    return _k.log_bessel_i(v, x)


def bessel_i(v, x):
    """Modified Bessel function of the first kind, ``I_v(x)``.

    Raises :class:`~gfaber.errors.OverflowLogValue` (carrying the log of
    the result) when the value exceeds the double range.
    """
    lv = log_bessel_i(v, x)
    if lv > _LOG_DBL_MAX:
        raise OverflowLogValue("bessel_i", lv)
    return math.exp(lv)


def log_kummer_1f1(a, b, z):
    """``ln 1F1(a; b; z)`` for ``a > 0``, ``b > 0``, ``z >= 0``.

    Log-scale variant for positive parameters (every series term is
    positive); used by the shadowed-fading PDF where the linear value
    overflows long before the densities stop mattering.
    """
    if a <= 0.0 or b <= 0.0:
        raise ValueError(
            f"log_kummer_1f1 requires a > 0 and b > 0, got a={a}, b={b}"
        )
    if z < 0.0:
        raise ValueError(f"log_kummer_1f1 requires z >= 0, got {z}")
    return _k.log_hyp1f1(a, b, z)


def kummer_1f1(a, b, z):
    """Kummer's confluent hypergeometric function ``1F1(a; b; z)``.

    ``b`` must be positive (and in particular not a non-positive integer);
    ``z`` must be non-negative.  For positive ``a`` the evaluation runs in
    log space; otherwise the direct compensated series is used (for
    ``z >= 0`` its terms change sign only finitely many times, so no
    Kummer transformation is needed to keep it conditioned).
    """
    if b <= 0.0:
        raise ValueError(f"kummer_1f1 requires b > 0, got {b}")
    if z < 0.0:
        raise ValueError(f"kummer_1f1 requires z >= 0, got {z}")
    if a > 0.0:
        lv = _k.log_hyp1f1(a, b, z)
        if lv > _LOG_DBL_MAX:
            raise OverflowLogValue("kummer_1f1", lv)
        return math.exp(lv)
    return _k.hyp1f1_kahan(a, b, z)


def gauss_2f1(a, b, c, z):
    """Gauss hypergeometric function ``2F1(a, b; c; z)`` on ``0 <= z < 1``.

    Direct series for ``z <= 0.5``; linear transformation to argument
    ``1 - z`` for ``z > 0.5``, falling back to the compensated direct
    series when ``c - a - b`` is within 0.05 of an integer.  Relative
    error <= 1e-10 on the supported domain.
    """
    if c <= 0.0:
        raise ValueError(f"gauss_2f1 requires c > 0, got {c}")
    if not 0.0 <= z < 1.0:
        raise ValueError(f"gauss_2f1 requires 0 <= z < 1, got {z}")
    return _k.hyp2f1(a, b, c, z)
