# cython: language_level=3, boundscheck=False, cdivision=True
"""Compiled numerical kernels.

Cython twin of :mod:`gfaber._kernels_py` — same function names, same
arguments, same semantics, same exceptions.  ``gfaber.specfun`` picks
this module when the extension was built and ``GFABER_PURE_PY`` is not
set.  Keep the two implementations in lockstep.
"""

from libc.math cimport INFINITY, M_PI, exp, fabs, floor, lgamma, log, log1p
from libc.math cimport round as c_round
from libc.math cimport sin

from gfaber.errors import OverflowLogValue, SeriesError

cdef double _TOL = 1e-16
cdef int _CAP = 10000
# Rescaling threshold for log-scaled series: keeps partial sums inside the
# double range while the scale is carried separately.
cdef double _RESCALE = 1e280
cdef double _LOG_RESCALE = 280.0 * log(10.0)
# Above this argument the ascending series of I_v / 1F1 needs too many
# terms; the standard large-argument asymptotic expansions take over.
cdef double _ASYMPTOTIC_CUTOFF = 4000.0

SERIES_TOL = _TOL
SERIES_CAP = _CAP


def lgamma_signed(double x):
    """Return ``(log |Gamma(x)|, sign(Gamma(x)))`` for real ``x``.

    Poles (``x`` a non-positive integer) report ``(inf, 1.0)``, which makes
    reciprocal-gamma factors vanish naturally when exponentiated.
    """
    cdef double s
    if x > 0.0:
        return lgamma(x), 1.0
    if x == floor(x):
        return INFINITY, 1.0
    # Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x), and Gamma(1-x) > 0
    # for x < 0, so the sign of Gamma(x) is the sign of sin(pi x).
    s = sin(M_PI * x)
    return lgamma(x), (1.0 if s > 0.0 else -1.0)


def upper_gamma(double s, double x):
    """Upper incomplete gamma function ``Gamma(s, x)`` for s > 0, x >= 0.

    Lower series for ``x < s + 1``, Lentz's continued fraction otherwise;
    the prefactor ``x^s e^-x`` is formed in log space so very large ``x``
    underflows cleanly to zero instead of tripping intermediate overflow.
    """
    cdef double lg, ap, term, total, p_reg
    cdef double tiny, b, c, d, h, an, delta, log_val
    cdef int i
    cdef bint converged
    if x == 0.0:
        lg = lgamma(s)
        if lg > 709.0:
            raise OverflowLogValue("upper_gamma", lg)
        return exp(lg)
    lg = lgamma(s)
    if x < s + 1.0:
        # Lower regularized series P(s, x); return Gamma(s) (1 - P).
        ap = s
        term = 1.0 / s
        total = term
        converged = False
        for i in range(_CAP):
            ap += 1.0
            term *= x / ap
            total += term
            if term < total * _TOL:
                converged = True
                break
        if not converged:
            raise SeriesError("upper_gamma", (s, x))
        p_reg = exp(s * log(x) - x - lg + log(total))
        if lg > 709.0:
            raise OverflowLogValue("upper_gamma", lg + log1p(-p_reg))
        return exp(lg) * (1.0 - p_reg)
    # Lentz continued fraction for Gamma(s, x) / (x^s e^-x).
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    converged = False
    for i in range(1, _CAP):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if fabs(d) < tiny:
            d = tiny
        c = b + an / c
        if fabs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if fabs(delta - 1.0) < 1e-16:
            converged = True
            break
    if not converged:
        raise SeriesError("upper_gamma", (s, x))
    log_val = s * log(x) - x + log(h)
    if log_val > 709.0:
        raise OverflowLogValue("upper_gamma", log_val)
    return exp(log_val)


def log_bessel_i(double v, double x):
    """``ln I_v(x)`` for order ``v >= -0.5`` and argument ``x >= 0``.

    Ascending power series with periodic rescaling; for large ``x`` (where
    the series would exceed the term cap) the standard large-argument
    asymptotic expansion ``I_v(x) ~ e^x / sqrt(2 pi x) * sum`` takes over.
    Limits at ``x == 0``: 0.0 for v == 0, -inf for v > 0 (I_v(0) = 0) and
    +inf for v < 0 (the function diverges like ``(x/2)^v``).
    """
    cdef double t, s, offset, x24, mu4, term, prev, odd
    cdef int k
    cdef bint converged
    if x == 0.0:
        if v == 0.0:
            return 0.0
        return -INFINITY if v > 0.0 else INFINITY
    if x < _ASYMPTOTIC_CUTOFF or 2.0 * v * v > x:
        t = 1.0
        s = 1.0
        offset = 0.0
        x24 = 0.25 * x * x
        converged = False
        for k in range(_CAP):
            t *= x24 / ((k + 1.0) * (v + k + 1.0))
            s += t
            if t < s * _TOL:
                converged = True
                break
            if s > _RESCALE:
                s /= _RESCALE
                t /= _RESCALE
                offset += _LOG_RESCALE
        if not converged:
            raise SeriesError("log_bessel_i", (v, x))
        return v * log(0.5 * x) - lgamma(v + 1.0) + log(s) + offset
    # I_v(x) ~ e^x / sqrt(2 pi x) * sum_k (-1)^k a_k(v) / x^k, truncated at
    # the smallest term (the expansion is asymptotic, not convergent).
    mu4 = 4.0 * v * v
    term = 1.0
    s = 1.0
    prev = 1.0
    for k in range(1, 40):
        odd = 2.0 * k - 1.0
        term *= -(mu4 - odd * odd) / (8.0 * k * x)
        if fabs(term) > prev:
            break
        prev = fabs(term)
        s += term
        if fabs(term) < 1e-18 * fabs(s):
            break
    return x - 0.5 * log(2.0 * M_PI * x) + log(s)


def log_hyp1f1(double a, double b, double z):
    """``ln 1F1(a; b; z)`` for ``a > 0``, ``b > 0``, ``z >= 0``.

    All series terms are positive, so the log-scaled ascending series is
    perfectly conditioned; for large ``z`` relative to the parameters the
    large-argument asymptotic ``1F1 ~ Gamma(b)/Gamma(a) e^z z^(a-b)`` is
    used with optimal truncation.
    """
    cdef double t, s, offset, term, prev
    cdef int k
    cdef bint converged
    if z == 0.0:
        return 0.0
    if z < _ASYMPTOTIC_CUTOFF or 50.0 * (fabs(a) + fabs(b) + 1.0) > z:
        t = 1.0
        s = 1.0
        offset = 0.0
        converged = False
        for k in range(_CAP):
            t *= (a + k) * z / ((b + k) * (k + 1.0))
            s += t
            if t < s * _TOL:
                converged = True
                break
            if s > _RESCALE:
                s /= _RESCALE
                t /= _RESCALE
                offset += _LOG_RESCALE
        if not converged:
            raise SeriesError("log_hyp1f1", (a, b, z))
        return log(s) + offset
    # 1F1(a;b;z) ~ Gamma(b)/Gamma(a) e^z z^(a-b)
    #              * sum_k (b-a)_k (1-a)_k / (k! z^k)
    term = 1.0
    s = 1.0
    prev = 1.0
    for k in range(200):
        term *= (b - a + k) * (1.0 - a + k) / ((k + 1.0) * z)
        if fabs(term) > prev:
            break
        prev = fabs(term)
        s += term
        if fabs(term) < 1e-18 * fabs(s):
            break
    return z + (a - b) * log(z) + lgamma(b) - lgamma(a) + log(s)


def hyp1f1_kahan(double a, double b, double z):
    """``1F1(a; b; z)`` by direct compensated summation.

    Handles any real ``a`` (for negative non-integer ``a`` the Pochhammer
    factor changes sign only finitely many times, so the direct series
    stays well conditioned for ``z >= 0``); terminates exactly when ``a``
    is a non-positive integer.  Intended for moderate ``z``.
    """
    cdef double t = 1.0
    cdef double s = 1.0
    cdef double comp = 0.0
    cdef double y, tt
    cdef int small_streak = 0
    cdef int k
    for k in range(_CAP):
        t *= (a + k) * z / ((b + k) * (k + 1.0))
        y = t - comp
        tt = s + y
        comp = (tt - s) - y
        s = tt
        if fabs(t) <= fabs(s) * _TOL:
            small_streak += 1
            if small_streak >= 2 or t == 0.0:
                return s
        else:
            small_streak = 0
    raise SeriesError("hyp1f1_kahan", (a, b, z))


def _hyp2f1_direct(double a, double b, double c, double z):
    """Gauss series with Kahan compensation; |z| must be < 1."""
    cdef double t = 1.0
    cdef double s = 1.0
    cdef double comp = 0.0
    cdef double y, tt
    cdef int small_streak = 0
    cdef int k
    for k in range(_CAP):
        t *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        y = t - comp
        tt = s + y
        comp = (tt - s) - y
        s = tt
        if fabs(t) <= fabs(s) * _TOL:
            small_streak += 1
            if small_streak >= 2 or t == 0.0:
                return s
        else:
            small_streak = 0
    raise SeriesError("hyp2f1", (a, b, c, z))


def hyp2f1(double a, double b, double c, double z):
    """``2F1(a, b; c; z)`` for ``0 <= z < 1`` (callers validate the domain).

    Direct series for ``z <= 0.5``.  For ``z > 0.5`` the linear
    transformation to argument ``1 - z`` converges quickly, except when
    ``c - a - b`` is close to an integer (its gamma prefactors then sit on
    or near poles); that case falls back to the compensated direct series,
    which remains accurate because all our use sites keep ``z`` bounded
    away from 1.
    """
    cdef double t, w, term1, term2, e1, e2
    cdef double lg_c, sg_c, lg_t, sg_t, lg_ca, sg_ca, lg_cb, sg_cb
    cdef double lg_mt, sg_mt, lg_a, sg_a, lg_b, sg_b
    if z == 0.0:
        return 1.0
    if z <= 0.5:
        return _hyp2f1_direct(a, b, c, z)
    t = c - a - b
    if fabs(t - c_round(t)) < 0.05:
        return _hyp2f1_direct(a, b, c, z)
    w = 1.0 - z
    lg_c, sg_c = lgamma_signed(c)
    lg_t, sg_t = lgamma_signed(t)
    lg_ca, sg_ca = lgamma_signed(c - a)
    lg_cb, sg_cb = lgamma_signed(c - b)
    lg_mt, sg_mt = lgamma_signed(-t)
    lg_a, sg_a = lgamma_signed(a)
    lg_b, sg_b = lgamma_signed(b)
    term1 = 0.0
    e1 = lg_c + lg_t - lg_ca - lg_cb
    if e1 != -INFINITY:
        term1 = (sg_c * sg_t * sg_ca * sg_cb) * exp(e1) * _hyp2f1_direct(
            a, b, 1.0 - t, w
        )
    term2 = 0.0
    e2 = lg_c + lg_mt - lg_a - lg_b + t * log(w)
    if e2 != -INFINITY:
        term2 = (sg_c * sg_mt * sg_a * sg_b) * exp(e2) * _hyp2f1_direct(
            c - a, c - b, 1.0 + t, w
        )
    return term1 + term2
