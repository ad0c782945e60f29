"""Joint information and power transfer: interference that only feeds you.

When the receiver knows the base station's energy symbols it cancels them
before decoding, so the information rate reverts to the interference-free
water-filling value no matter how hard the BS transmits. The BS then pours
its whole budget into a rank-one beam aimed at the strongest energy-delivery
direction of the split channel, and the harvested power climbs with budget
while the rate stays put.
"""

import numpy as np

from swiptmimo import (NoiseProfile, PowerSplit, average_metric,
                       equivalent_channels, reference_scenario, swipt_design,
                       swipt_rate, synthesize_channel, weak_majorization)

TRIALS = 800


def main():
    psi = 0.3
    print(f"psi = {psi}, {TRIALS} trials")
    print("ratio  rate(bits/cu)  swipt energy(dB)  classical energy(dB)")
    for ratio in (0, 1, 2, 5, 8, 11, 14):
        cfg = reference_scenario(psi, trials=TRIALS)
        sw = average_metric(cfg, "energy-swipt", ratio * cfg.P)
        cl = average_metric(cfg, "energy-struct1", ratio * cfg.P)
        # the rate is deterministic: interference cancelled, noise-only design
        rng = np.random.default_rng(0)
        h = synthesize_channel(cfg.sigma_p2p, cfg.K, cfg.M, rng)
        h_bs = synthesize_channel(cfg.sigma_bs, cfg.K, cfg.N, rng)
        split = PowerSplit(cfg.psi_vector)
        hhat, _ = equivalent_channels(h, h_bs, split)
        design = swipt_design(cfg.with_bs_power(ratio * cfg.P), hhat, h_bs, split)
        rate = swipt_rate(design, hhat, NoiseProfile(1.0, 1.0, cfg.psi_vector))
        print(f"{ratio:5d}  {rate:13.6f}  {10*np.log10(sw.mean):16.3f}  "
              f"{10*np.log10(cl.mean):19.3f}")

    # the premise behind sending energy only: the interferer's eigenvalue
    # profile weakly majorizes the link's, so its beam carries more power
    cfg = reference_scenario(psi)
    rng = np.random.default_rng(1)
    h = synthesize_channel(cfg.sigma_p2p, cfg.K, cfg.M, rng)
    h_bs = synthesize_channel(cfg.sigma_bs, cfg.K, cfg.N, rng)
    split = PowerSplit(cfg.psi_vector)
    hhat, _ = equivalent_channels(h, h_bs, split)
    theta = np.sqrt(split.theta2)[:, None]
    print("\nweak-majorization check of the delivered eigenvalue profiles "
          "(interferer at full budget vs link):")
    design = swipt_design(cfg.with_bs_power(25.0), hhat, h_bs, split)
    c_sig = (theta * h) @ design.Q @ (theta * h).conj().T
    c_bs = (theta * h_bs) @ design.Q_bs @ (theta * h_bs).conj().T
    eig_sig = np.sort(np.linalg.eigvalsh(c_sig))[::-1]
    eig_bs = np.sort(np.linalg.eigvalsh(c_bs))[::-1]
    print(f"  interferer {np.round(eig_bs, 3)}  vs  link {np.round(eig_sig, 3)}"
          f"  ->  {weak_majorization(eig_bs, eig_sig)}")


if __name__ == "__main__":
    main()
