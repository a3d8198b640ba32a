"""Shared helpers for the test suite.

Scenario generation is deterministic (seeded ``random.Random``) so every
run exercises the identical parameter sets.  The helpers return plain
tuples rather than fixtures where that keeps call sites explicit.
"""

from __future__ import annotations

import random

from gfaber import aber, fading, modulation, noise

# Round-robin coverage: every scheme family and every tabulated noise
# shape appears several times across a 35-scenario batch.
SCHEMES = ("bpsk", "qpsk", "bfsk", "8psk", "16qam", "4pam", "64qam")
NOISE_SHAPES = (0.5, 1.0, 1.5, 2.0, 2.5)
MIMO_CHOICES = ((1, 1), (2, 1), (2, 2))


def make_scenario(family, scheme, a, rng):
    """One random-but-reproducible scenario for ``family``.

    Returns ``(params, mimo, fit, a_const, b_const)`` with the fading mean
    power already set from a uniform draw over 0..30 dB.
    """
    mean_power = 10.0 ** (rng.uniform(0.0, 30.0) / 10.0)
    if family == "eta-mu":
        params = fading.EtaMuParams(
            shape=rng.uniform(0.05, 0.95),
            mu=rng.uniform(0.5, 4.0),
            mean_power=mean_power,
        )
    elif family == "kappa-mu-shadowed":
        # Include kappa == 0 occasionally: it is a supported boundary.
        kappa = 0.0 if rng.random() < 0.15 else rng.uniform(0.1, 10.0)
        params = fading.KappaMuShadowedParams(
            kappa=kappa,
            mu=rng.uniform(0.5, 4.0),
            m=rng.uniform(0.5, 10.0),
            mean_power=mean_power,
        )
    else:
        raise ValueError(f"unknown family {family!r}")
    nt, nr = MIMO_CHOICES[rng.randrange(len(MIMO_CHOICES))]
    mimo = fading.MimoConfig(nt=nt, nr=nr)
    fit = noise.builtin_fit(a)
    a_const, b_const = modulation.mod_constants(modulation.parse_modulation(scheme))
    return params, mimo, fit, a_const, b_const


def scenario_batch(family, count, seed):
    """``count`` scenarios cycling through schemes and noise shapes."""
    rng = random.Random(seed)
    batch = []
    for i in range(count):
        scheme = SCHEMES[i % len(SCHEMES)]
        a = NOISE_SHAPES[i % len(NOISE_SHAPES)]
        batch.append(make_scenario(family, scheme, a, rng))
    return batch


def density_for(params, mimo):
    """The family-appropriate PDF as a single-argument callable."""
    if isinstance(params, fading.EtaMuParams):
        return lambda g: fading.pdf_eta_mu(params, mimo, g)
    return lambda g: fading.pdf_kms(params, mimo, g)


def closed_aber(params, mimo, fit, a_const, b_const, reduced=False):
    return aber.aber_closed(params, mimo, fit, a_const, b_const, reduced=reduced)
