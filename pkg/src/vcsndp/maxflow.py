"""Exact max-flow / min-cut on capacitated directed networks.

Dinic's algorithm over exact arithmetic (int or Fraction capacities), so
connectivity values and LP separation never suffer float drift. Arcs may
carry a (kind, ref) tag so min cuts can be mapped back to graph objects.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Hashable

Num = int | Fraction


class CapacitatedNetwork:
    """Directed network with tagged arcs and a single source/sink query."""

    def __init__(self):
        self._n = 0
        self.heads: list[int] = []
        self.caps: list[Num] = []  # residual capacity, mutated by max_flow
        self.orig: list[Num] = []
        self.tags: list[tuple[str, Hashable] | None] = []
        self.adj: list[list[int]] = []

    def add_node(self) -> int:
        self.adj.append([])
        self._n += 1
        return self._n - 1

    def add_arc(self, tail: int, head: int, cap: Num,
                tag: tuple[str, Hashable] | None = None) -> int:
        """Add arc tail->head; a zero-capacity reverse arc is paired with it."""
        if cap < 0:
            raise ValueError("negative capacity")
        if tail == head:
            raise ValueError("self-arc")
        aid = len(self.heads)
        self.heads.extend((head, tail))
        self.caps.extend((cap, 0))
        self.orig.extend((cap, 0))
        self.tags.extend((tag, None))
        self.adj[tail].append(aid)
        self.adj[head].append(aid + 1)
        return aid

    def _bfs_levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self._n
        level[s] = 0
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for aid in self.adj[u]:
                v = self.heads[aid]
                if self.caps[aid] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    dq.append(v)
        return level if level[t] >= 0 else None

    def _dfs_push(self, u: int, t: int, limit: Num, level, it) -> Num:
        if u == t:
            return limit
        while it[u] < len(self.adj[u]):
            aid = self.adj[u][it[u]]
            v = self.heads[aid]
            if self.caps[aid] > 0 and level[v] == level[u] + 1:
                pushed = self._dfs_push(
                    v, t, min(limit, self.caps[aid]), level, it)
                if pushed > 0:
                    self.caps[aid] -= pushed
                    self.caps[aid ^ 1] += pushed
                    return pushed
            it[u] += 1
        return 0

    def max_flow(self, s: int, t: int) -> tuple[Num, list[int]]:
        """Run Dinic from scratch; returns (value, min-cut arc ids).

        Cut arcs are forward arcs from the residual-reachable side of s to
        the unreachable side, i.e. a certified minimum s-t cut.
        """
        if s == t:
            raise ValueError("source equals sink")
        value: Num = 0
        while (level := self._bfs_levels(s, t)) is not None:
            it = [0] * self._n
            while True:
                pushed = self._dfs_push(s, t, _INF, level, it)
                if pushed <= 0:
                    break
                value += pushed
        # residual reachability gives the cut
        seen = [False] * self._n
        seen[s] = True
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for aid in self.adj[u]:
                v = self.heads[aid]
                if self.caps[aid] > 0 and not seen[v]:
                    seen[v] = True
                    dq.append(v)
        cut = []
        for aid in range(0, len(self.heads), 2):
            tail = self.heads[aid + 1]
            head = self.heads[aid]
            if seen[tail] and not seen[head]:
                cut.append(aid)
        return value, cut


_INF = Fraction(1) * 10**18
