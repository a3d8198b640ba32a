"""Coherent modulation schemes and their (A, B) error-rate constants.

Each supported scheme maps to a pair ``(A, B)`` such that the conditional
error rate at instantaneous SNR ``gamma`` is ``A * Q_a(sqrt(B gamma))``.
These are the standard nearest-neighbor union-bound coefficients; no
bits-per-symbol divisor or Gray-coding correction is applied, so the
averaged value is exposed exactly as the underlying expressions define it.

Pure functions over an immutable spec type; thread-safe.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

SCHEME_BFSK = "bfsk"
SCHEME_BPSK = "bpsk"
SCHEME_QPSK = "qpsk"
SCHEME_PAM = "pam"
SCHEME_PSK = "psk"
SCHEME_QAM_RECT = "qam-rect"
SCHEME_QAM_NONRECT = "qam-nonrect"

#: Schemes that take no order argument.
_FIXED = {SCHEME_BFSK, SCHEME_BPSK, SCHEME_QPSK}
#: Schemes parameterized by a constellation order M.
_M_ARY = {SCHEME_PAM, SCHEME_PSK, SCHEME_QAM_RECT, SCHEME_QAM_NONRECT}


def _is_power_of_two(n):
    return n >= 1 and (n & (n - 1)) == 0


def _is_perfect_square(n):
    r = math.isqrt(n)
    return r * r == n


@dataclass(frozen=True)
class ModulationSpec:
    """A modulation scheme plus its constellation order where applicable.

    ``order`` must be None for BFSK/BPSK/QPSK and an integer >= 2 for the
    M-ary families; rectangular QAM additionally requires a perfect-square
    order and PSK a power-of-two order (the conventional constellations).
    """

    scheme: str
    order: int | None = None

    def __post_init__(self):
        if self.scheme in _FIXED:
            if self.order is not None:
                raise ValueError(
                    f"{self.scheme} takes no constellation order"
                )
            return
        if self.scheme not in _M_ARY:
            raise ValueError(
                f"unknown scheme {self.scheme!r}; expected one of "
                f"{sorted(_FIXED | _M_ARY)}"
            )
        if self.order is None or int(self.order) != self.order:
            raise ValueError(f"{self.scheme} requires an integer order M")
        if self.order < 2:
            raise ValueError(f"order M must be >= 2, got {self.order}")
        if self.scheme == SCHEME_PSK and not _is_power_of_two(self.order):
            raise ValueError(
                f"M-PSK expects a power-of-two order, got {self.order}"
            )
        if self.scheme == SCHEME_QAM_RECT and not _is_perfect_square(
            self.order
        ):
            raise ValueError(
                f"rectangular M-QAM requires a perfect-square order, "
                f"got {self.order}"
            )

    def label(self):
        """Short human-readable name, e.g. ``"16qam-rect"``."""
        if self.scheme in _FIXED:
            return self.scheme
        base = self.scheme.split("-")[0]
        suffix = (
            "-" + self.scheme.split("-", 1)[1] if "-" in self.scheme else ""
        )
        return f"{self.order}{base}{suffix}"


def mod_constants(spec):
    """The ``(A, B)`` constants of a modulation spec.

    BFSK (1, 1); BPSK (1, 2); QPSK (2, 1); M-PAM (2(M-1)/M, 6/(M^2-1));
    M-PSK (2, 2 sin^2(pi/M)); rectangular M-QAM (4(sqrt(M)-1)/sqrt(M),
    3/(M-1)); non-rectangular M-QAM (4, 3/(M-1)).
    """
    s, m_order = spec.scheme, spec.order
    if s == SCHEME_BFSK:
        return 1.0, 1.0
    if s == SCHEME_BPSK:
        return 1.0, 2.0
    if s == SCHEME_QPSK:
        return 2.0, 1.0
    if s == SCHEME_PAM:
        return 2.0 * (m_order - 1.0) / m_order, 6.0 / (m_order**2 - 1.0)
    if s == SCHEME_PSK:
        return 2.0, 2.0 * math.sin(math.pi / m_order) ** 2
    if s == SCHEME_QAM_RECT:
        root = math.sqrt(m_order)
        return 4.0 * (root - 1.0) / root, 3.0 / (m_order - 1.0)
    if s == SCHEME_QAM_NONRECT:
        return 4.0, 3.0 / (m_order - 1.0)
    raise ValueError(f"unknown scheme {s!r}")


_PARSE_RE = re.compile(
    r"^(?:(\d+)-?)?(bfsk|bpsk|qpsk|pam|psk|qam)(-rect|-nonrect)?$"
)


def parse_modulation(text):
    """Parse a scheme string such as ``"bpsk"``, ``"16qam"``, ``"8psk"``,
    ``"4pam"`` or ``"32qam-nonrect"``.

    QAM defaults to the rectangular constellation when the order is a
    perfect square and to the non-rectangular one otherwise; an explicit
    ``-rect``/``-nonrect`` suffix overrides (subject to validity).
    """
    cleaned = text.strip().lower()
    match = _PARSE_RE.match(cleaned)
    if not match:
        raise ValueError(f"cannot parse modulation {text!r}")
    order_text, base, qualifier = match.groups()
    order = int(order_text) if order_text else None
    if base in _FIXED:
        if order is not None or qualifier:
            raise ValueError(
                f"{base} takes neither an order nor a qualifier: {text!r}"
            )
        return ModulationSpec(scheme=base)
    if order is None:
        raise ValueError(f"{base} needs a constellation order, e.g. 16{base}")
    if qualifier and base != "qam":
        raise ValueError(f"{qualifier} applies only to QAM: {text!r}")
    if base == "qam":
        if qualifier == "-nonrect":
            scheme = SCHEME_QAM_NONRECT
        elif qualifier == "-rect":
            scheme = SCHEME_QAM_RECT
        else:
            scheme = (
                SCHEME_QAM_RECT
                if _is_perfect_square(order)
                else SCHEME_QAM_NONRECT
            )
    else:
        scheme = base
    return ModulationSpec(scheme=scheme, order=order)
