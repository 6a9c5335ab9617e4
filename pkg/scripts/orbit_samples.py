"""Orbit data for plotting: iterate a cylinder automorphism from seed points.

Writes one JSON record per seed point with the orbit as float pairs
(theta, t), ready for a scatter plot.  The automorphism comes from a JSON
file in the CLI format.

    python scripts/orbit_samples.py scripts/inputs/kinked_rotation.json --steps 200
"""

import argparse
import json
from dataclasses import dataclass

from causal2d.cli import load_auto
from causal2d.cylinder import CylPoint, canonical_rep
from causal2d.exactmaps import Rational


@dataclass
class OrbitConfig:
    steps: int = 100
    seeds_per_axis: int = 4
    t_span: int = 2


def orbits(g, cfg: OrbitConfig) -> list[dict]:
    out = []
    k = cfg.seeds_per_axis
    for i in range(k):
        for j in range(k):
            p = CylPoint(Rational(i, k), Rational((2 * j - k + 1) * cfg.t_span, 2 * k))
            start = p
            path = [(float(p.theta), float(p.t))]
            for _ in range(cfg.steps):
                p = g(p)
                path.append((float(p.theta), float(p.t)))
            out.append({"start": [str(start.theta), str(start.t)], "orbit": path})
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("automorphism")
    ap.add_argument("--steps", type=int, default=100)
    ap.add_argument("-o", "--output", default="orbits.json")
    args = ap.parse_args()
    with open(args.automorphism) as fh:
        g = canonical_rep(load_auto(json.load(fh), args.automorphism))
    data = orbits(g, OrbitConfig(steps=args.steps))
    with open(args.output, "w") as fh:
        json.dump(data, fh)
    print(f"wrote {len(data)} orbits of {args.steps} steps to {args.output}")


if __name__ == "__main__":
    main()
