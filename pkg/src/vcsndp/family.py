"""Random covering families of terminal subsets.

Each terminal draws q indices from {1..p} with replacement; subset T_i
collects the terminals that drew index i. A family is "good" when every
source-sink pair (general mode) or every terminal (single-source mode)
has, for each blocking set X of fewer than k terminals, some subset
containing it and disjoint from X. Parameters follow q = ceil(64 k^2 ln b)
(general) or q = ceil(2 k ln b) (single-source) with p = 2kq, the natural-
log reading that keeps the Chernoff failure bounds at b^(-2k).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, TextIO

from .errors import ParseError
from .instance import Pair

GENERAL = "general"
SINGLE_SOURCE = "single-source"
MODES = (GENERAL, SINGLE_SOURCE)


@dataclass(frozen=True)
class FamilyParams:
    k: int
    basis: int          # n or tau, whichever the caller selected
    mode: str
    p: int              # number of subsets
    q: int              # index draws per terminal
    paper_relation: bool = True  # p == 2*k*q; False only for overrides

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.q < 1 or self.p < 1 or self.k < 1:
            raise ValueError("need k, p, q >= 1")
        if self.paper_relation and self.p != 2 * self.k * self.q:
            raise ValueError(f"p={self.p} != 2kq={2 * self.k * self.q}")


def default_params(k: int, basis: int, mode: str = GENERAL) -> FamilyParams:
    """Paper-rate parameters for a given max requirement and log basis."""
    if k < 1:
        raise ValueError("need k >= 1")
    if basis < 2:
        raise ValueError("need basis >= 2")
    if mode == GENERAL:
        q = math.ceil(64 * k * k * math.log(basis))
    elif mode == SINGLE_SOURCE:
        q = math.ceil(2 * k * math.log(basis))
    else:
        raise ValueError(f"mode must be one of {MODES}")
    return FamilyParams(k=k, basis=basis, mode=mode, p=2 * k * q, q=q)


def override_params(k: int, basis: int, mode: str, p: int, q: int,
                    unsafe: bool = False) -> FamilyParams:
    """Explicit (p, q); rejects p != 2kq unless unsafe is set."""
    relation = p == 2 * k * q
    if not relation and not unsafe:
        raise ValueError(
            f"override p={p}, q={q} violates p = 2kq; pass unsafe to allow")
    return FamilyParams(k=k, basis=basis, mode=mode, p=p, q=q,
                        paper_relation=relation)


@dataclass(frozen=True)
class TerminalFamily:
    params: FamilyParams
    seed: int
    phi: dict[int, frozenset[int]]  # terminal -> drawn indices (deduplicated)

    @property
    def subsets(self) -> dict[int, frozenset[int]]:
        """T_i = {t | i in phi(t)} for i = 1..p."""
        out: dict[int, set[int]] = {i: set() for i in range(1, self.params.p + 1)}
        for t, idx in self.phi.items():
            for i in idx:
                out[i].add(t)
        return {i: frozenset(s) for i, s in out.items()}

    def phi_of(self, group: Iterable[int]) -> frozenset[int]:
        """Union of phi over a set of terminals."""
        out: set[int] = set()
        for t in group:
            out |= self.phi.get(t, frozenset())
        return frozenset(out)


def sample_family(terminals: Iterable[int], params: FamilyParams,
                  seed: int) -> TerminalFamily:
    """Each terminal draws q indices uniformly from {1..p} with replacement."""
    rng = random.Random(seed)
    phi = {}
    for t in sorted(set(terminals)):
        draws = [rng.randrange(1, params.p + 1) for _ in range(params.q)]
        phi[t] = frozenset(draws)
    return TerminalFamily(params=params, seed=seed, phi=phi)


@dataclass(frozen=True)
class GoodnessReport:
    good: bool
    # on failure: (subject, blocking set, note); subject is a pair (s, t)
    # in general mode or a single terminal in single-source mode
    witness: tuple[object, frozenset[int], str] | None = None


_DEFAULT_CHECK_BUDGET = 50_000_000


def _check_budget(n_subjects: int, tau: int, k: int, p: int, budget: int):
    combos = sum(math.comb(max(tau - 2, 0), j) for j in range(k))
    if n_subjects * combos * p > budget:
        raise ValueError(
            f"goodness check needs ~{n_subjects * combos * p} steps, "
            f"over budget {budget}")


def is_good_family_general(
    family: TerminalFamily, pairs: Iterable[Pair],
    terminals: Iterable[int], k: int,
    budget: int = _DEFAULT_CHECK_BUDGET,
) -> GoodnessReport:
    """Exhaustive check of the covering condition for every pair and every
    blocking set X of at most k-1 terminals: some index must lie in
    phi(s) & phi(t) but outside phi(X)."""
    terms = sorted(set(terminals))
    prs = sorted(pairs, key=sorted)
    _check_budget(len(prs), len(terms), k, family.params.p, budget)
    for pr in prs:
        s, t = sorted(pr)
        shared = family.phi.get(s, frozenset()) & family.phi.get(t, frozenset())
        others = [x for x in terms if x not in pr]
        for size in range(k):
            for xs in combinations(others, size):
                if shared <= family.phi_of(xs):
                    return GoodnessReport(False, (
                        (s, t), frozenset(xs),
                        "phi(s) & phi(t) is covered by phi(X)"))
    return GoodnessReport(True)


def is_good_family_single_source(
    family: TerminalFamily, terminals: Iterable[int], k: int,
    budget: int = _DEFAULT_CHECK_BUDGET,
) -> GoodnessReport:
    """Per-terminal covering condition: some index in phi(t) \\ phi(X)."""
    terms = sorted(set(terminals))
    _check_budget(len(terms), len(terms) + 1, k, family.params.p, budget)
    for t in terms:
        mine = family.phi.get(t, frozenset())
        others = [x for x in terms if x != t]
        for size in range(k):
            for xs in combinations(others, size):
                if mine <= family.phi_of(xs):
                    return GoodnessReport(False, (
                        t, frozenset(xs), "phi(t) is covered by phi(X)"))
    return GoodnessReport(True)


def is_good_family_general_subset_check(
    family: TerminalFamily, pairs: Iterable[Pair],
    terminals: Iterable[int], k: int,
) -> GoodnessReport:
    """Same condition phrased over the derived subsets T_i; used to
    cross-check the index-set criterion in tests."""
    subsets = family.subsets
    terms = sorted(set(terminals))
    for pr in sorted(pairs, key=sorted):
        s, t = sorted(pr)
        others = [x for x in terms if x not in pr]
        for size in range(k):
            for xs in combinations(others, size):
                if not any(s in ti and t in ti and not (ti & set(xs))
                           for ti in subsets.values()):
                    return GoodnessReport(False, (
                        (s, t), frozenset(xs), "no subset covers the pair"))
    return GoodnessReport(True)


def replay_witness(family: TerminalFamily, witness, mode: str) -> bool:
    """True iff the witness really breaks the covering condition."""
    subject, xs, _ = witness
    phix = family.phi_of(xs)
    if mode == GENERAL:
        s, t = subject
        return (family.phi.get(s, frozenset())
                & family.phi.get(t, frozenset())) <= phix
    return family.phi.get(subject, frozenset()) <= phix


def estimate_bad_events(
    terminals: Iterable[int], params: FamilyParams, seed: int, trials: int,
) -> tuple[float, float]:
    """Monte Carlo rates of the two sampling bad events over fresh draws.

    General mode: e1 = overlap event |phi(s) & phi(X)| >= 3q/4, e2 =
    covering event phi(s) & phi(t) <= phi(X), with (s, t, X) uniform and
    |X| = k-1. Single-source mode: the covering event is phi(t) <= phi(X).
    """
    if trials < 1:
        raise ValueError("need trials >= 1")
    terms = sorted(set(terminals))
    needed = 2 + (params.k - 1)
    if len(terms) < needed:
        raise ValueError(f"need at least {needed} terminals, got {len(terms)}")
    rng = random.Random(seed)
    hits1 = hits2 = 0
    threshold = 3 * params.q / 4
    for _ in range(trials):
        fam = sample_family(terms, params, rng.getrandbits(63))
        if params.mode == GENERAL:
            s, t = rng.sample(terms, 2)
            rest = [x for x in terms if x not in (s, t)]
            xs = rng.sample(rest, params.k - 1)
            phix = fam.phi_of(xs)
            if len(fam.phi[s] & phix) >= threshold:
                hits1 += 1
            if (fam.phi[s] & fam.phi[t]) <= phix:
                hits2 += 1
        else:
            t = rng.choice(terms)
            rest = [x for x in terms if x != t]
            xs = rng.sample(rest, params.k - 1)
            phix = fam.phi_of(xs)
            if len(fam.phi[t] & phix) >= threshold:
                hits1 += 1
            if fam.phi[t] <= phix:
                hits2 += 1
    return hits1 / trials, hits2 / trials


def write_family(family: TerminalFamily) -> str:
    """Dump format: header `family <p> <q> <seed>`, then phi lines."""
    out = [f"family {family.params.p} {family.params.q} {family.seed}"]
    for t in sorted(family.phi):
        idx = " ".join(str(i) for i in sorted(family.phi[t]))
        out.append(f"phi {t} {idx}".rstrip())
    return "\n".join(out) + "\n"


def parse_family(stream: TextIO | str, params: FamilyParams) -> TerminalFamily:
    text = stream if isinstance(stream, str) else stream.read()
    lines = [(ln, raw.split()) for ln, raw in
             enumerate(text.splitlines(), start=1) if raw.strip()]
    if not lines or lines[0][1][:1] != ["family"]:
        raise ParseError("expected 'family <p> <q> <seed>' header")
    ln, head = lines[0]
    if len(head) != 4:
        raise ParseError("expected 'family <p> <q> <seed>'", ln)
    p, q, seed = int(head[1]), int(head[2]), int(head[3])
    if (p, q) != (params.p, params.q):
        raise ParseError(f"header (p={p}, q={q}) does not match params", ln)
    phi = {}
    for ln, toks in lines[1:]:
        if toks[0] != "phi":
            raise ParseError(f"unknown directive '{toks[0]}'", ln)
        t = int(toks[1])
        idx = frozenset(int(x) for x in toks[2:])
        if any(i < 1 or i > p for i in idx):
            raise ParseError("index outside 1..p", ln)
        if len(idx) > q:
            raise ParseError(f"more than q={q} distinct indices", ln)
        phi[t] = idx
    return TerminalFamily(params=params, seed=seed, phi=phi)
