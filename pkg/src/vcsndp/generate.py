"""Random benchmark instances: Erdos-Renyi, grid, and wheel graphs.

Every emitted requirement is clamped to the pair's vertex connectivity in
the generated graph, so instances are feasible by construction.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .connectivity import vertex_connectivity_pair
from .errors import GenerationError
from .instance import Instance, pair

MODELS = ("erdos-renyi", "grid", "wheel")


def _model_edges(model: str, n: int, edge_param: float | None,
                 rng: random.Random) -> list[tuple[int, int]]:
    if model == "erdos-renyi":
        p = 0.5 if edge_param is None else float(edge_param)
        if not (0 <= p <= 1):
            raise ValueError(f"edge probability {p} outside [0,1]")
        return [(u, v) for u in range(n) for v in range(u + 1, n)
                if rng.random() < p]
    if model == "grid":
        width = int(edge_param) if edge_param else max(2, math.isqrt(n))
        out = []
        for w in range(n):
            r, c = divmod(w, width)
            if c + 1 < width and w + 1 < n:
                out.append((w, w + 1))
            if w + width < n:
                out.append((w, w + width))
        return out
    if model == "wheel":
        # hub 0, rim cycle 1..n-1
        if n < 4:
            raise ValueError("wheel needs n >= 4")
        rim = list(range(1, n))
        out = [(0, w) for w in rim]
        out += [(rim[i], rim[(i + 1) % len(rim)]) for i in range(len(rim))]
        return out
    raise ValueError(f"unknown model '{model}', expected one of {MODELS}")


def generate_instance(
    model: str, n: int, edge_param: float | None, k: int,
    num_pairs: int, cost_range: tuple[int, int], seed: int,
) -> Instance:
    """Deterministic instance from (model, n, edge_param, k, num_pairs,
    cost_range, seed); requirements are clamped to actual connectivity."""
    if n < 2:
        raise ValueError("need n >= 2")
    if k < 1:
        raise ValueError("need k >= 1")
    lo, hi = cost_range
    if not (0 <= lo <= hi):
        raise ValueError("bad cost range")
    rng = random.Random(seed)
    raw = _model_edges(model, n, edge_param, rng)
    edges = tuple((u, v, Fraction(rng.randint(lo, hi))) for u, v in raw)
    graph = Instance(n=n, edges=edges)

    all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = rng.sample(all_pairs, min(num_pairs, len(all_pairs)))
    wanted = [(u, v, rng.randint(1, k)) for u, v in chosen]

    requirements = {}
    for u, v, r in wanted:
        kappa = int(vertex_connectivity_pair(graph, u, v).value)
        if kappa >= 1:
            requirements[pair(u, v)] = min(r, kappa)
    if not requirements:
        raise GenerationError(
            f"no connected requirement pair found (model={model}, n={n}, "
            f"seed={seed}); regenerate with another seed or denser graph")
    return Instance(n=n, edges=edges, requirements=requirements)
