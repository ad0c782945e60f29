"""Monte-Carlo averaging over random channel factors and BS user beams.

Each trial t owns a generator seeded from the pair (seed, t), so trials are
independent and order-free; identical (seed, trials) always reproduce
bit-identical results regardless of how the work is scheduled. The random
draws happen per trial in a fixed order, while the linear algebra runs
batched over the stacked trial arrays.

Energy metrics are reported in linear power units here; dB conversion happens
at the presentation layer (CSV / acceptance report).
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidInputError, UnsupportedConfigError
from .linalg import complex_gaussian, haar_from_gaussian, pad_diag
from .rates import waterfill_batch

METRICS = ("rate-struct1", "rate-struct2", "energy-struct1",
           "energy-struct2", "energy-swipt")

RATE_METRICS = ("rate-struct1", "rate-struct2")
ENERGY_METRICS = ("energy-struct1", "energy-struct2", "energy-swipt")


@dataclass(frozen=True)
class McResult:
    """Sample mean with its standard error over the trials."""

    mean: float
    stderr: float
    trials: int


def trial_rng(seed, trial):
    """The generator owned by one trial; mixing the pair avoids the
    permuted-trial-set collisions a plain XOR of small integers produces."""
    return np.random.default_rng(np.random.SeedSequence((seed, trial)))


def random_bs_covariance(n, pb_budget, rng):
    """BS covariance from n independent unit-sphere user beams at power Pb/n."""
    if n < 1:
        raise InvalidInputError("user count must be at least 1")
    z = complex_gaussian((n, n), rng)
    beams = z / np.linalg.norm(z, axis=0, keepdims=True)
    return (pb_budget / n) * (beams @ beams.conj().T)


@dataclass(frozen=True)
class TrialEnsemble:
    """Stacked per-trial channels and BS user beam directions."""

    h: np.ndarray        # (T, K, M)
    h_bs: np.ndarray     # (T, K, N)
    user_dirs: np.ndarray  # (T, N, N), unit columns

    @property
    def trials(self):
        return self.h.shape[0]


@lru_cache(maxsize=8)
def _ensemble(seed, trials, k, m, n, sigma_p2p, sigma_bs):
    """Draw all per-trial randomness, then batch the factor construction.

    The per-trial draw order matches synthesize_channel followed by
    random_bs_covariance, so scalar replays of a single trial agree exactly.
    """
    z_left = np.empty((trials, k, k), dtype=complex)
    z_right = np.empty((trials, m, m), dtype=complex)
    z_bs_left = np.empty((trials, k, k), dtype=complex)
    z_bs_right = np.empty((trials, n, n), dtype=complex)
    z_users = np.empty((trials, n, n), dtype=complex)
    for t in range(trials):
        rng = trial_rng(seed, t)
        z_left[t] = complex_gaussian((k, k), rng)
        z_right[t] = complex_gaussian((m, m), rng)
        z_bs_left[t] = complex_gaussian((k, k), rng)
        z_bs_right[t] = complex_gaussian((n, n), rng)
        z_users[t] = complex_gaussian((n, n), rng)

    sig = pad_diag(np.asarray(sigma_p2p), k, m)
    sig_bs = pad_diag(np.asarray(sigma_bs), k, n)
    h = haar_from_gaussian(z_left) @ sig @ _ch(haar_from_gaussian(z_right))
    h_bs = haar_from_gaussian(z_bs_left) @ sig_bs @ _ch(haar_from_gaussian(z_bs_right))
    user_dirs = z_users / np.linalg.norm(z_users, axis=1, keepdims=True)
    for arr in (h, h_bs, user_dirs):
        arr.flags.writeable = False
    return TrialEnsemble(h, h_bs, user_dirs)


def _ch(a):
    """Batched conjugate transpose."""
    return a.conj().swapaxes(-2, -1)


def ensemble_for(cfg):
    return _ensemble(cfg.seed, cfg.trials, cfg.K, cfg.M, cfg.N,
                     cfg.sigma_p2p, cfg.sigma_bs)


def _top_eigpair(mats):
    """Largest eigenvalue and eigenvector of stacked Hermitian matrices."""
    w, v = np.linalg.eigh(0.5 * (mats + _ch(mats)))
    return w[..., -1], v[..., :, -1]


def _waterfilled_covariance(t_mats, total_power):
    """Batched optimal covariances over the eigenmodes of stacked PSD matrices.

    Returns (Q, modes, powers) with modes/powers descending per trial.
    """
    w, g = np.linalg.eigh(0.5 * (t_mats + _ch(t_mats)))
    w = w[..., ::-1]
    g = g[..., :, ::-1]
    top = np.maximum(w[..., :1], 0.0)
    usable = w > np.maximum(top, 1.0) * 1e-14
    inv_gains = np.where(usable, 1.0 / np.where(usable, w, 1.0), np.inf)
    powers, _ = waterfill_batch(inv_gains, total_power)
    q = (g * powers[..., None, :]) @ _ch(g)
    return q, w, powers


def _scenario_parts(cfg, pb_budget, metric):
    ens = ensemble_for(cfg)
    psi = cfg.psi_vector
    root_psi = np.sqrt(psi)[:, None]
    hhat = root_psi * ens.h
    hhat_bs = root_psi * ens.h_bs
    if metric == "energy-swipt":
        # rank-one energy beam on the strongest delivery direction of Theta H_bs
        theta2 = (1.0 - psi)[:, None]
        gram = _ch(ens.h_bs) @ (theta2 * ens.h_bs)
        _, e_bs = _top_eigpair(gram)
        q_bs = pb_budget * (e_bs[..., :, None] @ _ch(e_bs[..., :, None]))
    else:
        q_bs = (pb_budget / cfg.N) * (ens.user_dirs @ _ch(ens.user_dirs))
    return ens, hhat, hhat_bs, q_bs


def _require_uniform(cfg, metric):
    psi = cfg.psi_vector
    if not np.all(psi == psi[0]):
        raise UnsupportedConfigError(f"{metric} requires a uniform split ratio")
    return float(psi[0])


@lru_cache(maxsize=1024)
def _metric_samples_cached(cfg, metric, pb_budget):
    values = _metric_samples(cfg, metric, pb_budget)
    values.flags.writeable = False
    return values


def metric_samples(cfg, metric, pb_budget):
    """Per-trial metric values (rates in bits/cu, energies in linear power).

    Trials are matched across metrics at the same budget: every metric
    consumes the same per-trial channel and beam draws. Results are cached
    (read-only arrays) since they are pure functions of the arguments.
    """
    return _metric_samples_cached(cfg, metric, float(pb_budget))


def _metric_samples(cfg, metric, pb_budget):
    if metric not in METRICS:
        raise InvalidInputError(f"unknown metric '{metric}' (choose from {METRICS})")
    if pb_budget < 0:
        raise InvalidInputError("BS power budget must be nonnegative")
    ens, hhat, hhat_bs, q_bs = _scenario_parts(cfg, pb_budget, metric)
    psi = cfg.psi_vector
    k = cfg.K
    eye_k = np.eye(k)
    noise_diag = psi * cfg.sigma2_w + cfg.sigma2_n

    if metric in ("rate-struct1", "energy-struct1"):
        s = hhat_bs @ q_bs @ _ch(hhat_bs) + np.diag(noise_diag)
        t_mats = _ch(hhat) @ np.linalg.solve(s, hhat)
        q, modes, powers = _waterfilled_covariance(t_mats, cfg.P)
        if metric == "rate-struct1":
            return np.sum(np.log2(1.0 + np.maximum(modes, 0.0) * powers), axis=-1)
        return _steered_energy(cfg, ens, q, q_bs)

    if metric == "energy-swipt":
        t_mats = _ch(hhat) @ (hhat / noise_diag[:, None])
        q, _, _ = _waterfilled_covariance(t_mats, cfg.P)
        return _steered_energy(cfg, ens, q, q_bs)

    # combine-then-split baseline metrics
    psi_scalar = _require_uniform(cfg, metric)
    lam1sq, u1 = _top_eigpair(ens.h @ _ch(ens.h))
    rx = ens.h_bs @ q_bs @ _ch(ens.h_bs)
    interference = np.real(np.einsum("ti,tij,tj->t", u1.conj(), rx, u1))
    if metric == "rate-struct2":
        denom = psi_scalar * (interference + cfg.sigma2_w) + cfg.sigma2_n
        return np.log2(1.0 + psi_scalar * lam1sq * cfg.P / denom)
    return (1.0 - psi_scalar) * (lam1sq * cfg.P + interference + cfg.sigma2_w)


def _steered_energy(cfg, ens, q, q_bs):
    theta2 = (1.0 - cfg.psi_vector)
    scale = np.sqrt(theta2)[:, None]
    c_sig = (scale * ens.h) @ q @ _ch(scale * ens.h)
    c_bs = (scale * ens.h_bs) @ q_bs @ _ch(scale * ens.h_bs)
    total = c_sig + c_bs + np.diag(cfg.sigma2_w * theta2)
    top, _ = _top_eigpair(total)
    return np.maximum(top, 0.0)


def average_metric(cfg, metric, pb_budget):
    """Seeded Monte-Carlo mean of a metric, reduced in trial order."""
    values = metric_samples(cfg, metric, pb_budget)
    trials = len(values)
    stderr = float(values.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return McResult(float(values.mean()), stderr, trials)
