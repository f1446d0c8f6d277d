#!/usr/bin/env python3
"""Produce the parameter-sweep data families as CSV files.

Each family re-solves the full three-stage market at every sweep point and
writes one CSV per curve; plotting is left to whatever tool reads them.

Usage:
    python scripts/run_experiments.py                 # write into results/
    python scripts/run_experiments.py --outdir /tmp/x --config configs/defaults.toml
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from edgemarket import SweepSpec, load_config, rows_to_csv, run_sweep

FAMILIES = [
    # (filename, sweep spec): the price-cap family at two delivery costs,
    ("price_cap_w1.csv", SweepSpec("p_bar", 50.0, 100.0, 11)),
    ("price_cap_w2.csv", SweepSpec("p_bar", 50.0, 100.0, 11, overrides={"w": 2.0})),
    # the user-utility family at two caching costs and a shorter ad load,
    ("utility_coeff_C120.csv", SweepSpec("sigma_e", 30.0, 60.0, 16)),
    ("utility_coeff_C150.csv", SweepSpec("sigma_e", 30.0, 60.0, 16, overrides={"C_cache": 150.0})),
    ("utility_coeff_la05.csv", SweepSpec("sigma_e", 30.0, 60.0, 16, overrides={"l_a": 0.5})),
    # and the ad-revenue family at two handover costs.
    ("ad_coeff_c80.csv", SweepSpec("sigma_c", 100.0, 140.0, 9)),
    ("ad_coeff_c70.csv", SweepSpec("sigma_c", 100.0, 140.0, 9, overrides={"c_handover": 70.0})),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.split("\n", 1)[0])
    parser.add_argument("--config", default="configs/defaults.toml")
    parser.add_argument("--outdir", default="results")
    args = parser.parse_args()

    params, settings = load_config(args.config)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    for filename, spec in FAMILIES:
        start = time.perf_counter()
        rows = run_sweep(params, spec, settings)
        path = outdir / filename
        path.write_bytes(rows_to_csv(rows).encode("utf-8"))
        print(
            f"{path}  ({spec.param} in [{spec.start}, {spec.stop}], "
            f"{spec.steps} points, {time.perf_counter() - start:.1f}s)"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
