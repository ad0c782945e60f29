"""Max-min power-allocation game between the link and a worst-case interferer.

The link maximizes the jointly-diagonalized rate by water-filling; the
interferer minimizes it with a closed-form KKT allocation whose multiplier is
found by bisection. The rate is concave in the link powers and convex in the
interferer powers, so alternating damped best responses converge to the
saddle point.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, InvalidInputError
from .rates import NoiseProfile, PowerAllocation, waterfill, worst_case_rate

MU_TOL = 1e-10
RATE_TOL = 1e-10
MAX_ITER = 10_000


@dataclass(frozen=True)
class SaddleSolution:
    """Saddle allocations with the achieved rate and convergence metadata."""

    p_star: PowerAllocation
    pb_star: PowerAllocation
    rate: float
    iterations: int
    residual: float


def p2p_best_response(lambda2, lambda2_bs, p_bs, noise, total_power):
    """Water-filling response of the link against a fixed interferer allocation."""
    lam2 = np.asarray(lambda2, dtype=float)
    lam2_bs = np.asarray(lambda2_bs, dtype=float)
    p_bs = p_bs.p if isinstance(p_bs, PowerAllocation) else np.asarray(p_bs, dtype=float)
    usable = lam2 > 0
    denom = lam2_bs * p_bs + noise.beta
    inv_gains = np.where(usable, denom / np.where(usable, lam2, 1.0), np.inf)
    alloc, _ = waterfill(inv_gains, total_power)
    return alloc


def bs_best_response(alpha, beta, lambda2_bs, pb_budget):
    """Rate-minimizing interferer allocation for fixed link mode powers.

    Solves the KKT stationarity condition per mode: with x = lambda2_bs * p_b,
    (x + beta)(x + beta + alpha) = alpha * lambda2_bs / mu, taking the positive
    root; mu > 0 is bisected so the budget binds. Modes that cannot affect the
    rate (alpha = 0 or zero interference gain) receive nothing; if no mode can
    be hurt the all-zero allocation is returned.
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    lam2_bs = np.asarray(lambda2_bs, dtype=float)
    if np.any(beta <= 0) or np.any(lam2_bs < 0) or pb_budget < 0:
        raise InvalidInputError("bs_best_response requires beta > 0, gains >= 0, budget >= 0")
    pb = np.zeros_like(alpha)
    harmful = (alpha > 0) & (lam2_bs > 0)
    if pb_budget == 0 or not harmful.any():
        return PowerAllocation(pb, pb_budget)

    a = alpha[harmful]
    b = beta[harmful]
    g = lam2_bs[harmful]

    def allocation(mu):
        # positive root of the stationarity quadratic in x = g * p_b
        x = -(b + a / 2) + np.sqrt(a * a / 4 + a * g / mu)
        return np.maximum(0.0, x) / g

    mu_hi = float(np.max(a * g / (b * (b + a))))  # above this every mode is off
    mu_lo = mu_hi
    while allocation(mu_lo).sum() < pb_budget:
        mu_lo *= 0.5
        if mu_lo < 1e-300:
            break
    # keep the answer on the feasible (undershooting) side of the bracket
    tol = min(MU_TOL * pb_budget, 5e-10)
    for _ in range(400):
        mu = 0.5 * (mu_lo + mu_hi)
        total = allocation(mu).sum()
        if total > pb_budget:
            mu_lo = mu
        else:
            mu_hi = mu
            if pb_budget - total <= tol:
                break
    pb[harmful] = allocation(mu_hi)
    return PowerAllocation(pb, pb_budget)


def solve_saddle(lambda2, lambda2_bs, noise, total_power, pb_budget,
                 damping=0.5, rate_tol=RATE_TOL, max_iter=MAX_ITER):
    """Damped alternating best responses until the rate stabilizes.

    The interferer update is damped (pb <- (1-gamma) pb + gamma BR) because
    undamped alternation limit-cycles; when the rate residual stalls, the
    damping factor is halved so the iteration contracts onto the saddle.
    """
    lam2 = np.asarray(lambda2, dtype=float)
    lam2_bs = np.asarray(lambda2_bs, dtype=float)
    k = len(lam2)

    if pb_budget == 0 or not np.any((lam2 > 0) & (lam2_bs > 0)):
        # no interference mode can affect the rate; any feasible split works
        pb = PowerAllocation(
            np.zeros(k) if pb_budget == 0 else np.full(k, pb_budget / k), pb_budget)
        p = p2p_best_response(lam2, lam2_bs, pb, noise, total_power)
        rate = worst_case_rate(lam2, lam2_bs, p, pb, noise)
        return SaddleSolution(p, pb, rate, 1, 0.0)

    pb = np.full(k, pb_budget / k)
    gamma = damping
    rate_prev = None
    residual = np.inf
    best_residual = np.inf
    stall = 0
    for iteration in range(1, max_iter + 1):
        p = p2p_best_response(lam2, lam2_bs, pb, noise, total_power)
        rate = worst_case_rate(lam2, lam2_bs, p, pb, noise)
        if rate_prev is not None:
            residual = abs(rate - rate_prev)
            if residual < rate_tol:
                return SaddleSolution(
                    p, PowerAllocation(pb, pb_budget), rate, iteration, residual)
            if residual < 0.9 * best_residual:
                best_residual = residual
                stall = 0
            else:
                stall += 1
                if stall >= 50:
                    gamma = max(gamma * 0.5, 1e-4)
                    best_residual = residual
                    stall = 0
        rate_prev = rate
        response = bs_best_response(lam2 * p.p, noise.beta, lam2_bs, pb_budget)
        pb = (1.0 - gamma) * pb + gamma * response.p

    raise ConvergenceError(
        f"saddle iteration did not converge within {max_iter} steps "
        f"(last residual {residual:.3e})",
        p=p.p, p_bs=pb, rate=rate, residual=residual, iterations=max_iter)


def saddle_noise(psi, k, sigma2_w=1.0, sigma2_n=1.0):
    """Noise profile for a uniform split, convenience for sweep drivers."""
    return NoiseProfile(sigma2_w, sigma2_n, np.full(k, float(psi)))
