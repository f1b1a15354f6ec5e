#!/usr/bin/env python3
"""Generate a small corpus and measure empirical approximation ratios.

Writes the corpus under --outdir, runs the pipeline with family
verification on, compares against the exact branch-and-bound optimum where
it finishes, and dumps a JSON report.
"""

import argparse
from pathlib import Path

from vcsndp.errors import GenerationError
from vcsndp.generate import generate_instance
from vcsndp.instance import write_instance
from vcsndp.pipeline import PipelineConfig
from vcsndp.report import BenchmarkOptions, benchmark, dumps


def build_corpus(outdir: Path, count: int, seed0: int):
    outdir.mkdir(parents=True, exist_ok=True)
    corpus = []
    seed = seed0
    while len(corpus) < count:
        seed += 1
        try:
            inst = generate_instance("erdos-renyi", 6 + seed % 5, 0.45, 2, 2,
                                     (1, 9), seed=seed)
        except GenerationError:
            continue
        name = f"er_{seed}.txt"
        (outdir / name).write_text(write_instance(inst))
        corpus.append((name, inst))
    return corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=Path, default=Path("bench_corpus"))
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--report", type=Path, default=Path("bench_report.json"))
    args = ap.parse_args()

    corpus = build_corpus(args.outdir, args.count, args.seed)
    cfg = PipelineConfig(seed=args.seed, verify_family=True,
                         verify_solution=True)
    rep = benchmark(corpus, cfg, BenchmarkOptions())
    args.report.write_text(dumps(rep))
    agg = rep["aggregate"]
    print(f"{agg['count']} instances; mean ratio {agg['mean_ratio']:.3f}, "
          f"max ratio {agg['max_ratio']:.3f}")
    print(f"report: {args.report}")


if __name__ == "__main__":
    main()
