#!/usr/bin/env python3
"""Agnostic regression under planted label noise: how the selected tube
radius and holdout error move with the noise rate.

Usage: python scripts/noise_sweep.py [--trials N] [--seed S]
"""

import argparse

from robustreg import agnostic_regression
from robustreg.errors import RobustRegError
from robustreg.harness import (
    ExperimentConfig,
    InstanceSpec,
    PerturbationSpec,
    TargetSpec,
    gen_instance,
)
from robustreg.oracles import FiniteClassOracle


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7000)
    args = ap.parse_args()

    print("q,trial,selected_theta,holdout_err,status")
    for q in (0.0, 0.05, 0.1, 0.2):
        for trial in range(args.trials):
            seed = args.seed + trial
            config = ExperimentConfig(
                instance=InstanceSpec(kind="smooth", n_hypotheses=20,
                                      domain_size=50, smooth_step=0.001),
                perturbation=PerturbationSpec(kind="grid_ball", radius=1),
                target=TargetSpec(noise_rate=q),
                eta=0.25, m_grid=(200,), holdout_size=500, seed=seed,
                realizable_margin=0.001)
            cls, U, sample, holdout = gen_instance(config, seed, m=200)
            try:
                rep = agnostic_regression(FiniteClassOracle(cls), sample,
                                          holdout, U, epsilon=0.15, delta=0.1,
                                          p=1.0, seed=trial)
                print(f"{q},{trial},{rep.selected_theta},"
                      f"{rep.holdout_eta_err},ok")
            except RobustRegError as exc:
                print(f"{q},{trial},,,{type(exc).__name__}")


if __name__ == "__main__":
    main()
