"""End-to-end VC-SNDP solving via the element-connectivity reduction.

General mode: sample a family of terminal subsets, induce one element
instance per subset, solve each with the chosen backend, return the union
of the purchased edge sets. Single-source mode does the same with the
per-terminal family and source-rooted pairs. Identical induced instances
(same active-pair set) are solved once; the representative is solved with
the minimal terminal set (the active-pair endpoints, plus the source in
single-source mode), which is at least as constrained as any subset in
its class, so reuse preserves feasibility.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from . import family as fam
from .connectivity import (
    VerificationReport,
    verify_vc_solution,
    vertex_connectivity_pair,
)
from .element import (
    DEFAULT_NODE_BUDGET,
    ElementInstance,
    SolveCertificate,
    solve_exact,
    solve_iterative_rounding,
)
from .errors import FamilyNotGoodError, InfeasibleError
from .instance import EdgeSolution, Instance, derive_terminals, pair

BACKENDS = ("iterative", "exact")


@dataclass(frozen=True)
class PipelineConfig:
    mode: str = fam.GENERAL            # general | single-source
    seed: int = 0
    backend: str = "iterative"
    params_override: tuple[int, int] | None = None  # (p, q)
    unsafe_params: bool = False
    log_basis: str = "tau"             # tau (default, Remark-1 rate) or n
    verify_family: bool = True
    max_resamples: int = 16
    verify_solution: bool = True
    exact_budget: int = DEFAULT_NODE_BUDGET
    jobs: int = 1

    def __post_init__(self):
        if self.mode not in fam.MODES:
            raise ValueError(f"mode must be one of {fam.MODES}")
        if self.backend not in BACKENDS:
            raise ValueError(f"backend must be one of {BACKENDS}")
        if self.log_basis not in ("tau", "n"):
            raise ValueError("log_basis must be 'tau' or 'n'")
        if self.max_resamples < 1:
            raise ValueError("max_resamples >= 1")
        if self.jobs < 1:
            raise ValueError("jobs >= 1")


@dataclass(frozen=True)
class InstanceRecord:
    """One distinct induced element instance and its solution."""

    first_index: int                   # smallest subset index in the class
    multiplicity: int                  # how many subsets induced it
    terminals: frozenset[int]
    active_pairs: tuple[tuple[int, int, int], ...]  # (u, v, r)
    edge_ids: frozenset[int]
    cost: Fraction
    certificate: SolveCertificate | None  # None for the exact backend


@dataclass(frozen=True)
class PipelineResult:
    solution: EdgeSolution
    family: fam.TerminalFamily
    records: tuple[InstanceRecord, ...]
    subset_classes: dict[int, int]     # subset index -> record position, -1 skip
    verification: VerificationReport | None
    cost_bound: Fraction | None        # 2 * p * (best OPT lower bound)
    resamples_used: int
    source: int | None = None          # single-source mode only


def check_instance_feasible(inst: Instance) -> None:
    """r(u,v) must not exceed the full graph's vertex connectivity."""
    for pr in sorted(inst.requirements, key=sorted):
        u, v = sorted(pr)
        r = inst.requirements[pr]
        got = vertex_connectivity_pair(inst, u, v).value
        if got < r:
            raise InfeasibleError(
                f"pair ({u},{v}) requires {r} vertex-disjoint paths but the "
                f"full graph only provides {got}")


def _resolve_params(inst: Instance, cfg: PipelineConfig,
                    tau: int) -> fam.FamilyParams:
    k = inst.k
    basis = max(2, tau if cfg.log_basis == "tau" else inst.n)
    if cfg.params_override is not None:
        p, q = cfg.params_override
        return fam.override_params(k, basis, cfg.mode, p, q,
                                   unsafe=cfg.unsafe_params)
    return fam.default_params(k, basis, cfg.mode)


def _sample_good_family(terminals, params, cfg, pairs, k):
    """Sample; when verification is on, resample with seed+1 until good."""
    last_witness = None
    for attempt in range(cfg.max_resamples):
        f = fam.sample_family(terminals, params, cfg.seed + attempt)
        if not cfg.verify_family:
            return f, attempt
        if cfg.mode == fam.GENERAL:
            report = fam.is_good_family_general(f, pairs, terminals, k)
        else:
            report = fam.is_good_family_single_source(f, terminals, k)
        if report.good:
            return f, attempt
        last_witness = report.witness
    raise FamilyNotGoodError(
        f"no good family within {cfg.max_resamples} resamples "
        f"(p={params.p}, q={params.q}); last witness: {last_witness}",
        witness=last_witness)


def _solve_backend(ei: ElementInstance, cfg: PipelineConfig):
    if cfg.backend == "exact":
        sol = solve_exact(ei, budget=cfg.exact_budget)
        return sol, None
    return solve_iterative_rounding(ei)


def _run_pipeline(inst: Instance, cfg: PipelineConfig, terminals, pairs,
                  active_pairs_of, extra_terminals, source) -> PipelineResult:
    if not inst.requirements:
        raise InfeasibleError("instance has no requirements")
    check_instance_feasible(inst)
    k = inst.k
    params = _resolve_params(inst, cfg, tau=len(terminals | extra_terminals))
    family, resamples = _sample_good_family(terminals, params, cfg, pairs, k)

    subsets = family.subsets
    # group subset indices by induced active-pair set
    class_of: dict[frozenset, list[int]] = {}
    for i in range(1, params.p + 1):
        active = active_pairs_of(subsets[i])
        if active:
            class_of.setdefault(frozenset(active), []).append(i)

    keys = sorted(class_of, key=lambda key: min(class_of[key]))

    def solve_key(key):
        endpoints = frozenset().union(*key) | extra_terminals
        ei = ElementInstance(
            inst=inst, terminals=endpoints,
            active_pairs={pr: inst.requirements[pr] for pr in key})
        return _solve_backend(ei, cfg)

    if cfg.jobs > 1 and len(keys) > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            solved = list(pool.map(solve_key, keys))
    else:
        solved = [solve_key(key) for key in keys]

    records = []
    subset_classes = {i: -1 for i in range(1, params.p + 1)}
    union: set[int] = set()
    for slot, (key, (sol, cert)) in enumerate(zip(keys, solved)):
        indices = class_of[key]
        for i in indices:
            subset_classes[i] = slot
        union |= sol.edge_ids
        endpoints = frozenset().union(*key) | extra_terminals
        records.append(InstanceRecord(
            first_index=min(indices), multiplicity=len(indices),
            terminals=endpoints,
            active_pairs=tuple(sorted(
                (*sorted(pr), inst.requirements[pr]) for pr in key)),
            edge_ids=sol.edge_ids, cost=sol.cost, certificate=cert))

    solution = EdgeSolution.of(inst, union)
    verification = verify_vc_solution(inst, solution) if cfg.verify_solution else None

    # each induced optimum is <= OPT, so any per-instance lower bound
    # lower-bounds OPT; the paper's per-run guarantee is 2p * OPT
    lb = Fraction(0)
    for rec in records:
        if rec.certificate is not None:
            bound = Fraction(rec.certificate.lp_lower_bound).limit_denominator(10**9)
        else:
            bound = rec.cost
        lb = max(lb, bound)
    cost_bound = 2 * params.p * lb if records else None

    return PipelineResult(
        solution=solution, family=family, records=tuple(records),
        subset_classes=subset_classes, verification=verification,
        cost_bound=cost_bound, resamples_used=resamples, source=source)


def solve_vcsndp(inst: Instance, cfg: PipelineConfig) -> PipelineResult:
    """General VC-SNDP: good-family reduction to element instances."""
    if cfg.mode != fam.GENERAL:
        raise ValueError("config mode must be 'general'")
    terminals = derive_terminals(inst)
    pairs = frozenset(inst.requirements)

    def active_pairs_of(subset):
        return [pr for pr in pairs if pr <= subset]

    return _run_pipeline(inst, cfg, terminals, pairs, active_pairs_of,
                         extra_terminals=frozenset(), source=None)


def find_common_source(inst: Instance) -> int:
    """The vertex shared by all requirement pairs; smallest id on ties."""
    if not inst.requirements:
        raise InfeasibleError("instance has no requirements")
    common = None
    for pr in inst.requirements:
        common = set(pr) if common is None else common & pr
    if not common:
        raise InfeasibleError("requirement pairs share no common source")
    return min(common)


def solve_single_source(inst: Instance, cfg: PipelineConfig) -> PipelineResult:
    """Single-source VC-SNDP: family over sinks, source joins every subset."""
    if cfg.mode != fam.SINGLE_SOURCE:
        raise ValueError("config mode must be 'single-source'")
    s = find_common_source(inst)
    sinks = derive_terminals(inst) - {s}
    pairs = frozenset(inst.requirements)

    def active_pairs_of(subset):
        return [pair(s, t) for t in sorted(subset) if pair(s, t) in pairs]

    return _run_pipeline(inst, cfg, sinks, pairs, active_pairs_of,
                         extra_terminals=frozenset({s}), source=s)


def solve_pipeline(inst: Instance, cfg: PipelineConfig) -> PipelineResult:
    return (solve_single_source(inst, cfg)
            if cfg.mode == fam.SINGLE_SOURCE else solve_vcsndp(inst, cfg))


def solve_exact_vcsndp(inst: Instance,
                       budget: int = DEFAULT_NODE_BUDGET) -> EdgeSolution:
    """Exact minimum-cost VC-SNDP by branch and bound (desk-scale oracle)."""
    from .element import _branch_and_bound

    if not inst.requirements:
        return EdgeSolution.of(inst, ())
    check_instance_feasible(inst)
    return _branch_and_bound(
        inst,
        lambda ids: verify_vc_solution(
            inst, EdgeSolution.of(inst, ids)).feasible,
        trivially_feasible=False,
        budget=budget)
