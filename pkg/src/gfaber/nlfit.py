"""Levenberg-Marquardt nonlinear least squares and the Q-model refitter.

:func:`levenberg_marquardt` is a classic damped Gauss-Newton minimizer of
``0.5 * ||r(theta)||^2`` with forward finite-difference Jacobians.  It
exists so that the 4-exponential noise model can be refit for shape
parameters without embedded constants (:func:`fit_q_approx`), reproducing
the procedure behind the built-in rows.

Exponential-sum fitting is multimodal, so the refitter is multi-start:
the nearest embedded row (origin-rescaled) seeds the first run and seven
jittered copies seed the rest; the best sum of squared residuals wins,
with ties broken by the lexicographically smallest sorted decay vector.
Results are canonicalized by sorting the (p, q) pairs by ascending q, and
the whole procedure is deterministic (fixed jitter seed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from gfaber import noise
from gfaber.errors import FitConvergenceError, NonFiniteResidualError

STATUS_GRADIENT = "gradient"
STATUS_STEP = "step"
STATUS_MAX_ITER = "max-iter"

_JITTER_SEED = 20240917
_DAMPING_MAX = 1e14


@dataclass
class LmProblem:
    """A nonlinear least-squares problem for :func:`levenberg_marquardt`.

    ``residual`` maps a parameter vector (1-D array of length n) to a
    residual vector of length m >= n.
    """

    residual: Callable[[np.ndarray], np.ndarray]
    x0: np.ndarray
    max_iter: int = 200
    grad_tol: float = 1e-10
    step_tol: float = 1e-12
    damping_init: float = 1e-3
    damping_scale: float = 10.0

    def __post_init__(self):
        self.x0 = np.asarray(self.x0, dtype=float)
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        for name in ("grad_tol", "step_tol", "damping_init", "damping_scale"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class LmResult:
    """Outcome of one Levenberg-Marquardt run."""

    params: np.ndarray
    ssr: float
    iterations: int
    status: str = field(default=STATUS_MAX_ITER)


def _residual_checked(fun, params):
    r = np.asarray(fun(params), dtype=float)
    if not np.all(np.isfinite(r)):
        raise NonFiniteResidualError(params)
    return r


def _jacobian_fd(fun, params, r0):
    """Forward finite-difference Jacobian, step 1e-7 * max(1, |theta_j|)."""
    n = params.size
    jac = np.empty((r0.size, n))
    for j in range(n):
        step = 1e-7 * max(1.0, abs(params[j]))
        bumped = params.copy()
        bumped[j] += step
        jac[:, j] = (_residual_checked(fun, bumped) - r0) / step
    return jac


def levenberg_marquardt(problem):
    """Minimize ``0.5 * ||r(theta)||^2`` from ``problem.x0``.

    The damping factor starts at ``damping_init``, is multiplied by
    ``damping_scale`` on every rejected step and divided by it on every
    accepted one (Marquardt diagonal scaling keeps the step well
    conditioned across parameter magnitudes).  Terminates when the
    gradient's max norm drops below ``grad_tol`` (status ``gradient``),
    when the relative step drops below ``step_tol`` or damping saturates
    (status ``step``), or after ``max_iter`` iterations (``max-iter``).
    Accepted steps never increase the objective.

    Raises :class:`~gfaber.errors.NonFiniteResidualError` if the residual
    becomes non-finite at any evaluated point, including the initial one.
    """
    fun = problem.residual
    params = problem.x0.astype(float).copy()
    r = _residual_checked(fun, params)
    if r.size < params.size:
        raise ValueError(
            f"residual dimension {r.size} is smaller than parameter "
            f"dimension {params.size}"
        )
    ssr = float(r @ r)
    lam = problem.damping_init
    status = STATUS_MAX_ITER
    iterations = 0
    for _ in range(problem.max_iter):
        iterations += 1
        jac = _jacobian_fd(fun, params, r)
        grad = jac.T @ r
        if np.max(np.abs(grad)) < problem.grad_tol:
            status = STATUS_GRADIENT
            break
        jtj = jac.T @ jac
        diag = np.maximum(np.diag(jtj), 1e-12)
        accepted = False
        while lam <= _DAMPING_MAX:
            try:
                delta = np.linalg.solve(jtj + lam * np.diag(diag), -grad)
            except np.linalg.LinAlgError:
                delta = np.linalg.lstsq(
                    jtj + lam * np.diag(diag), -grad, rcond=None
                )[0]
            trial = params + delta
            r_trial = _residual_checked(fun, trial)
            ssr_trial = float(r_trial @ r_trial)
            if ssr_trial < ssr:
                params = trial
                r = r_trial
                ssr = ssr_trial
                lam = max(lam / problem.damping_scale, 1e-14)
                accepted = True
                break
            lam *= problem.damping_scale
        if not accepted:
            status = STATUS_STEP
            break
        rel_step = np.linalg.norm(delta) / max(np.linalg.norm(params), 1.0)
        if rel_step < problem.step_tol:
            status = STATUS_STEP
            break
    return LmResult(params=params, ssr=ssr, iterations=iterations, status=status)


def default_fit_grid():
    """Default fitting grid: {0} + {0.0625 k^2 : k = 1..32}.

    The grid lives in the squared-argument variable of the 4-exponential
    model; quadratic spacing concentrates points at small arguments where
    the target curves fastest, while still reaching 64.
    """
    return np.array([0.0] + [0.0625 * k * k for k in range(1, 33)])


def max_abs_deviation(fit, grid=None):
    """Max absolute deviation of a fit from the exact Q over a grid.

    The grid is in the squared-argument variable (the fit's ``x``); each
    point compares ``sum p_i e^(-q_i x)`` with ``Q_a(sqrt(x))``.
    """
    if grid is None:
        grid = default_fit_grid()
    model = noise.make_noise_model(fit.a)
    worst = 0.0
    for x in np.asarray(grid, dtype=float):
        dev = abs(noise.q_approx(fit, x) - noise.q_exact(model, np.sqrt(x)))
        worst = max(worst, dev)
    return worst


def _nearest_builtin(a):
    """Embedded row closest to ``a`` in shape parameter."""
    best = min(noise.TABULATED_A, key=lambda t: (abs(t - a), t))
    return noise.BUILTIN_FITS[best]


def fit_q_approx(a, grid=None, n_restarts=8):
    """Refit the 4-exponential model for an arbitrary supported shape.

    Minimizes ``sum_x (sum_i p_i e^(-q_i x) - Q_a(sqrt(x)))^2`` over the
    eight parameters, with positivity of the decay rates enforced by
    optimizing ``log q_i``.  ``grid`` (default :func:`default_fit_grid`)
    must contain at least 16 distinct non-negative points.

    Returns a canonicalized :class:`~gfaber.noise.QApprox` (pairs sorted
    by ascending q, source ``"refit"``).  Raises
    :class:`~gfaber.errors.FitConvergenceError` if no restart produces a
    usable minimizer; the error carries the best candidate seen, if any.
    """
    model = noise.make_noise_model(a)
    if grid is None:
        grid = default_fit_grid()
    grid = np.asarray(grid, dtype=float)
    if np.unique(grid).size < 16:
        raise ValueError("fitting grid needs at least 16 distinct points")
    if np.any(grid < 0.0):
        raise ValueError("fitting grid points must be non-negative")
    target = np.array([noise.q_exact(model, np.sqrt(x)) for x in grid])

    def residual(theta):
        # Wild trial steps can overflow exp; the solver rejects the
        # resulting non-finite residuals, so keep numpy quiet here.
        with np.errstate(over="ignore", invalid="ignore"):
            p = theta[:4]
            q = np.exp(theta[4:])
            return (p * np.exp(-np.outer(grid, q))).sum(axis=1) - target

    p_seed, q_seed = _nearest_builtin(a)
    p_seed = np.asarray(p_seed, dtype=float)
    q_seed = np.asarray(q_seed, dtype=float)
    # Rescale the seed weights so the model starts origin-consistent with
    # the requested shape (sum p = Q_a(0)).
    p_seed = p_seed * (noise.q_exact(model, 0.0) / p_seed.sum())

    rng = np.random.default_rng(_JITTER_SEED)
    candidates = []
    for restart in range(n_restarts):
        p0, q0 = p_seed, q_seed
        if restart > 0:
            factors = np.clip(np.exp(rng.normal(0.0, 0.25, size=8)), 0.5, 2.0)
            p0 = p_seed * factors[:4]
            q0 = q_seed * factors[4:]
        theta0 = np.concatenate([p0, np.log(q0)])
        try:
            result = levenberg_marquardt(
                LmProblem(residual=residual, x0=theta0)
            )
        except NonFiniteResidualError:
            continue
        if not np.isfinite(result.ssr):
            continue
        p = result.params[:4]
        q = np.exp(result.params[4:])
        order = np.argsort(q)
        candidates.append(
            (result.ssr, tuple(q[order]), tuple(p[order]))
        )
    if not candidates:
        raise FitConvergenceError(
            f"no restart converged while refitting a={a}"
        )
    ssr, q_best, p_best = min(candidates)
    fit = noise.QApprox(a=float(a), p=p_best, q=q_best, source=noise.SOURCE_REFIT)
    if not np.isfinite(ssr):
        raise FitConvergenceError(
            f"refit for a={a} produced a non-finite objective",
            best_fit=fit,
            max_abs_dev=max_abs_deviation(fit, grid),
        )
    return fit
