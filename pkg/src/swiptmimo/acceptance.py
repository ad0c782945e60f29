"""Acceptance checks: pinned reference values, oracle equivalences, orderings.

Each criterion returns a CheckResult; `run_all` drives the full battery.
Reference curve values are regression anchors for the baseline setup
(K = M = 3, N = 5, unit noise variances, P = 5, seed 42).
"""

from dataclasses import dataclass

import numpy as np

from . import montecarlo, rates, saddle, scenario, transfer
from .harvesting import build_rf_covariance, optimal_steering
from .rates import LN2, NoiseProfile, waterfill
from .scenario import PowerSplit, reference_scenario

RATIO_GRID = tuple(range(15))
RATE_PSIS = (0.3, 0.6, 0.9)
ENERGY_PSIS = (0.3, 0.6)

# Pinned reference anchors (rate in bits/cu, energy in dB).
WC_ENDPOINTS = {0.3: 1.016649, 0.6: 1.509088, 0.9: 1.816096}
WC_CURVE_03 = {1: 0.660668, 5: 0.262106, 14: 0.114810}
S2_RATE_ENDPOINTS = {0.3: 0.952047, 0.6: 1.332708, 0.9: 1.545188}
S2_ENERGY_ENDPOINTS = {0.3: 5.483894, 0.6: 3.053514}
S1_ENERGY_ENDPOINTS = {0.3: 4.015909, 0.6: 1.027521}
AVG_CURVE_03 = {1: 0.943662, 7: 0.754587, 14: 0.658612}
SWIPT_CURVE_03 = {1: 6.156, 5: 11.168, 14: 15.218}


@dataclass(frozen=True)
class CheckResult:
    criterion: int
    name: str
    passed: bool
    detail: str


def _spectra(psi):
    cfg = reference_scenario(psi)
    lam2 = psi * np.asarray(cfg.sigma_p2p) ** 2
    lam2_bs = psi * np.asarray(cfg.sigma_bs) ** 2
    noise = NoiseProfile(cfg.sigma2_w, cfg.sigma2_n, cfg.psi_vector)
    return cfg, lam2, lam2_bs, noise


def _wc_rate(psi, ratio):
    cfg, lam2, lam2_bs, noise = _spectra(psi)
    sol = saddle.solve_saddle(lam2, lam2_bs, noise, cfg.P, ratio * cfg.P)
    return sol


def _mc(psi, metric, ratio, trials, seed):
    cfg = reference_scenario(psi, trials=trials, seed=seed)
    return cfg, montecarlo.average_metric(cfg, metric, ratio * cfg.P)


def _db(x):
    return 10.0 * np.log10(x)


def _db_stderr(result):
    """Delta-method standard error of 10*log10(mean) in dB."""
    if result.mean <= 0:
        return np.inf
    return (10.0 / np.log(10.0)) * result.stderr / result.mean


def criterion_1(trials=2000, seed=42):
    """Deterministic worst-case rate endpoints at zero interferer power."""
    tol = 1e-3
    lines, ok = [], True
    for psi, expected in WC_ENDPOINTS.items():
        got = _wc_rate(psi, 0).rate
        good = abs(got - expected) <= tol
        ok &= good
        lines.append(f"psi={psi}: {got:.6f} vs {expected:.6f} (tol {tol})")
    return CheckResult(1, "worst-case rate endpoints", ok, "; ".join(lines))


def criterion_2(trials=2000, seed=42):
    """Saddle curve anchors plus the unilateral-deviation certificate."""
    tol = 5e-3
    lines, values_ok = [], True
    cert_ok = True
    rng = np.random.default_rng(seed)
    cfg, lam2, lam2_bs, noise = _spectra(0.3)
    for ratio, expected in WC_CURVE_03.items():
        sol = _wc_rate(0.3, ratio)
        good = abs(sol.rate - expected) <= tol
        values_ok &= good
        lines.append(f"ratio={ratio}: {sol.rate:.6f} vs {expected:.6f}")
        cert_ok &= saddle_certificate(
            lam2, lam2_bs, noise, cfg.P, ratio * cfg.P, sol, rng)
    lines.append(f"certificate: {'pass' if cert_ok else 'fail'}")
    return CheckResult(2, "saddle-point curve anchors + certificate",
                       values_ok and cert_ok, "; ".join(lines))


def saddle_certificate(lam2, lam2_bs, noise, p_budget, pb_budget, sol, rng,
                       deviations=200, margin=1e-6):
    """No unilateral deviation improves either player's objective."""
    base = sol.rate
    for _ in range(deviations):
        p_dev = p_budget * rng.dirichlet(np.ones(len(lam2)))
        if rates.worst_case_rate(lam2, lam2_bs, p_dev, sol.pb_star, noise) \
                > base + margin:
            return False
    if pb_budget > 0:
        for _ in range(deviations):
            pb_dev = pb_budget * rng.dirichlet(np.ones(len(lam2)))
            if rates.worst_case_rate(lam2, lam2_bs, sol.p_star, pb_dev, noise) \
                    < base - margin:
                return False
    return True


def criterion_3(trials=2000, seed=42):
    """Combine-then-split baseline rate endpoints."""
    tol = 1e-3
    lines, ok = [], True
    rng = np.random.default_rng(seed)
    for psi, expected in S2_RATE_ENDPOINTS.items():
        cfg = reference_scenario(psi)
        h = scenario.synthesize_channel(cfg.sigma_p2p, cfg.K, cfg.M, rng)
        h_bs = scenario.synthesize_channel(cfg.sigma_bs, cfg.K, cfg.N, rng)
        noise = NoiseProfile(1.0, 1.0, cfg.psi_vector)
        got = transfer.structure2_rate(
            h, h_bs, np.zeros((cfg.N, cfg.N)), psi, noise, cfg.P)
        good = abs(got - expected) <= tol
        ok &= good
        lines.append(f"psi={psi}: {got:.6f} vs {expected:.6f}")
    return CheckResult(3, "structure-2 rate endpoints", ok, "; ".join(lines))


def criterion_4(trials=2000, seed=42):
    """Combine-then-split baseline harvested-energy endpoints."""
    tol = 0.01
    lines, ok = [], True
    rng = np.random.default_rng(seed)
    for psi, expected in S2_ENERGY_ENDPOINTS.items():
        cfg = reference_scenario(psi)
        h = scenario.synthesize_channel(cfg.sigma_p2p, cfg.K, cfg.M, rng)
        h_bs = scenario.synthesize_channel(cfg.sigma_bs, cfg.K, cfg.N, rng)
        noise = NoiseProfile(1.0, 1.0, cfg.psi_vector)
        got = transfer.structure2_energy(
            h, h_bs, np.zeros((cfg.N, cfg.N)), psi, noise, cfg.P).dB
        good = abs(got - expected) <= tol
        ok &= good
        lines.append(f"psi={psi}: {got:.4f} dB vs {expected:.4f} dB")
    return CheckResult(4, "structure-2 energy endpoints", ok, "; ".join(lines))


def criterion_5(trials=2000, seed=42):
    """Per-antenna-split receiver classical harvested-energy endpoints."""
    tol = 0.05
    lines, ok = [], True
    rng = np.random.default_rng(seed)
    for psi, expected in S1_ENERGY_ENDPOINTS.items():
        cfg = reference_scenario(psi)
        split = PowerSplit(cfg.psi_vector)
        h = scenario.synthesize_channel(cfg.sigma_p2p, cfg.K, cfg.M, rng)
        hhat = scenario.EquivalentChannel.from_matrix(np.sqrt(psi) * h)
        noise = NoiseProfile(1.0, 1.0, cfg.psi_vector)
        alloc = saddle.p2p_best_response(
            hhat.lambda2, np.zeros(cfg.K), np.zeros(cfg.K), noise, cfg.P)
        # information beams ride the right singular basis of the split channel
        v = hhat.right[:, :cfg.K]
        cov = build_rf_covariance(
            h, v, alloc.p, np.zeros((cfg.K, cfg.N)), np.zeros((cfg.N, 1)),
            np.zeros(1), split, cfg.sigma2_w)
        got = optimal_steering(cov).dB
        good = abs(got - expected) <= tol
        ok &= good
        lines.append(f"psi={psi}: {got:.4f} dB vs {expected:.4f} dB")
    return CheckResult(5, "structure-1 classical energy endpoints", ok, "; ".join(lines))


def criterion_6(trials=2000, seed=42):
    """Monte-Carlo average-rate anchors for psi = 0.3."""
    lines, ok = [], True
    for ratio, expected in AVG_CURVE_03.items():
        _, res = _mc(0.3, "rate-struct1", ratio, trials, seed)
        band = max(3 * res.stderr, 0.03)
        good = abs(res.mean - expected) <= band
        ok &= good
        lines.append(f"ratio={ratio}: {res.mean:.6f} vs {expected:.6f} "
                     f"(band {band:.4f})")
    return CheckResult(6, "average rate curve anchors", ok, "; ".join(lines))


def criterion_7(trials=2000, seed=42):
    """Joint-transfer harvested-energy anchors and grid monotonicity."""
    lines, ok = [], True
    for ratio, expected in SWIPT_CURVE_03.items():
        _, res = _mc(0.3, "energy-swipt", ratio, trials, seed)
        got = _db(res.mean)
        band = max(3 * _db_stderr(res), 0.3)
        good = abs(got - expected) <= band
        ok &= good
        lines.append(f"ratio={ratio}: {got:.3f} dB vs {expected:.3f} dB "
                     f"(band {band:.3f})")
    curve = [_mc(0.3, "energy-swipt", r, trials, seed)[1].mean for r in RATIO_GRID]
    monotone = bool(np.all(np.diff(curve) >= -1e-12))
    ok &= monotone
    lines.append(f"monotone over grid: {monotone}")
    return CheckResult(7, "joint-transfer energy anchors + monotonicity", ok,
                       "; ".join(lines))


def criterion_8(trials=2000, seed=42):
    """Ordering properties across the full sweep."""
    ok = True
    lines = []

    worst = True
    for psi in RATE_PSIS:
        for ratio in RATIO_GRID:
            wc = _wc_rate(psi, ratio).rate
            _, avg = _mc(psi, "rate-struct1", ratio, trials, seed)
            if wc > avg.mean + max(3 * avg.stderr, 1e-9):
                worst = False
    lines.append(f"worst-case <= average: {worst}")
    ok &= worst

    dominance = True
    for psi in RATE_PSIS:
        cfg = reference_scenario(psi, trials=trials, seed=seed)
        for ratio in RATIO_GRID:
            r1 = montecarlo.metric_samples(cfg, "rate-struct1", ratio * cfg.P)
            r2 = montecarlo.metric_samples(cfg, "rate-struct2", ratio * cfg.P)
            diff = r1 - r2
            se = diff.std(ddof=1) / np.sqrt(len(diff)) if len(diff) > 1 else 0.0
            if diff.mean() < -max(3 * se, 1e-9):
                dominance = False
    lines.append(f"structure-2 <= structure-1 rate: {dominance}")
    ok &= dominance

    harvest = True
    for psi in ENERGY_PSIS:
        cfg = reference_scenario(psi, trials=trials, seed=seed)
        for ratio in RATIO_GRID:
            if ratio < 1:
                continue
            sw = montecarlo.metric_samples(cfg, "energy-swipt", ratio * cfg.P)
            cl = montecarlo.metric_samples(cfg, "energy-struct1", ratio * cfg.P)
            diff = sw - cl
            se = diff.std(ddof=1) / np.sqrt(len(diff)) if len(diff) > 1 else 0.0
            if diff.mean() < -max(3 * se, 1e-9):
                harvest = False
    lines.append(f"joint-transfer >= classical energy (ratio >= 1): {harvest}")
    ok &= harvest

    return CheckResult(8, "sweep ordering properties", ok, "; ".join(lines))


def _grid_search_objective(inv_gains, total_power, step=1e-3):
    """Brute-force maximum of sum log2(1 + p/c) on the budget simplex."""
    c = np.asarray(inv_gains, dtype=float)
    grid = np.arange(0.0, total_power + step / 2, step)
    p1, p2 = np.meshgrid(grid, grid, indexing="ij", sparse=True)
    p3 = total_power - p1 - p2
    feasible = p3 >= -1e-12
    obj = (np.log2(1.0 + p1 / c[0]) + np.log2(1.0 + p2 / c[1])
           + np.log2(1.0 + np.maximum(p3, 0.0) / c[2]))
    return float(np.max(np.where(feasible, obj, -np.inf)))


def _project_simplex(v, total):
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - total
    idx = np.arange(1, len(v) + 1)
    rho = np.nonzero(u - css / idx > 0)[0][-1]
    tau = css[rho] / (rho + 1.0)
    return np.maximum(v - tau, 0.0)


def projected_gradient_worst_allocation(alpha, beta, lam2_bs, pb_budget,
                                        iters=20000):
    """Independent convex minimizer of the interferer objective on the simplex.

    Projected gradient descent with Armijo backtracking; terminates when the
    gradient mapping is at float resolution.
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    lam2_bs = np.asarray(lam2_bs, dtype=float)

    def f(x):
        return float(np.sum(np.log2(1.0 + alpha / (lam2_bs * x + beta))))

    def grad(x):
        den = lam2_bs * x + beta
        return -(alpha * lam2_bs) / (LN2 * den * (den + alpha))

    x = np.full(len(alpha), pb_budget / len(alpha))
    fx = f(x)
    step = 1.0
    for _ in range(iters):
        g = grad(x)
        while step > 1e-18:
            xn = _project_simplex(x - step * g, pb_budget)
            move = xn - x
            fn = f(xn)
            if fn <= fx - 1e-4 / step * float(move @ move):
                break
            step *= 0.5
        if np.max(np.abs(xn - x)) < 1e-14 * max(1.0, pb_budget):
            x, fx = xn, fn
            break
        x, fx = xn, fn
        step = min(step * 2.0, 1e9)
    return x


def criterion_9(trials=2000, seed=42):
    """Oracle equivalences for the three optimizing primitives."""
    rng = np.random.default_rng(seed)
    lines, ok = [], True

    worst_gap = 0.0
    for _ in range(50):
        c = rng.uniform(0.3, 4.0, size=3)
        p_total = rng.uniform(0.5, 2.0)
        alloc, _ = waterfill(c, p_total)
        ours = float(np.sum(np.log2(1.0 + alloc.p / c)))
        grid = _grid_search_objective(c, p_total)
        worst_gap = max(worst_gap, abs(ours - grid))
    wf_ok = worst_gap <= 1e-3
    ok &= wf_ok
    lines.append(f"waterfill vs grid search: max gap {worst_gap:.2e}")

    worst_dev = 0.0
    for _ in range(50):
        k = int(rng.integers(2, 4))
        alpha = rng.uniform(0.1, 2.0, size=k)
        beta = rng.uniform(0.5, 2.0, size=k)
        lam2_bs = rng.uniform(0.05, 1.0, size=k)
        pb = float(rng.uniform(0.5, 8.0))
        closed = saddle.bs_best_response(alpha, beta, lam2_bs, pb).p
        numeric = projected_gradient_worst_allocation(alpha, beta, lam2_bs, pb)
        worst_dev = max(worst_dev, float(np.max(np.abs(closed - numeric))))
    bs_ok = worst_dev <= 1e-6
    ok &= bs_ok
    lines.append(f"closed-form vs projected-gradient minimizer: "
                 f"max component gap {worst_dev:.2e}")

    cfg = reference_scenario(0.3)
    split = PowerSplit(cfg.psi_vector)
    h = scenario.synthesize_channel(cfg.sigma_p2p, cfg.K, cfg.M, rng)
    h_bs = scenario.synthesize_channel(cfg.sigma_bs, cfg.K, cfg.N, rng)
    hhat, hhat_bs = scenario.equivalent_channels(h, h_bs, split)
    noise = NoiseProfile(1.0, 1.0, cfg.psi_vector)
    q_bs = montecarlo.random_bs_covariance(cfg.N, cfg.P, rng)
    s = hhat_bs.matrix @ q_bs @ hhat_bs.matrix.conj().T + rates.self_noise(noise, cfg.K)
    q_star = rates.optimal_q_global(hhat, s, cfg.P)
    best = rates.tin_rate_global(hhat, hhat_bs, q_star, q_bs, noise)
    margin = 0.0
    for _ in range(1000):
        a = rng.standard_normal((cfg.M, cfg.M)) + 1j * rng.standard_normal((cfg.M, cfg.M))
        q_alt = a @ a.conj().T
        q_alt *= cfg.P / np.real(np.trace(q_alt))
        alt = rates.tin_rate_global(hhat, hhat_bs, q_alt, q_bs, noise)
        margin = min(margin, best - alt)
    opt_ok = margin >= -1e-9
    ok &= opt_ok
    lines.append(f"optimal covariance vs 1000 random deviations: "
                 f"min margin {margin:.2e}")

    return CheckResult(9, "oracle equivalences", ok, "; ".join(lines))


def criterion_10(trials=2000, seed=42):
    """Byte-identical reruns of a sweep with a fixed seed."""
    from . import cli

    sweep_cfg = cli.SweepConfig(
        psis=(0.3,), ratio_grid=(0.0, 3.0, 7.0),
        scenarios=("worst-case", "average", "swipt", "structure2"),
        trials=50, seed=seed)
    first = cli.run_sweep(sweep_cfg)
    montecarlo._ensemble.cache_clear()
    second = cli.run_sweep(sweep_cfg)
    same = first == second
    return CheckResult(10, "deterministic reruns", same,
                       f"CSV byte-identical: {same}")


ALL_CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                criterion_6, criterion_7, criterion_8, criterion_9, criterion_10)


def run_all(trials=2000, seed=42):
    return [check(trials=trials, seed=seed) for check in ALL_CRITERIA]
