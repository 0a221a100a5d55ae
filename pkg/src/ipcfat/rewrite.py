"""Reduction traces and bounded reachability, for either calculus."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Any

from . import fat, ipc
from .rules import FAT_BETAETA, RuleId

# Work bounds for a single reachability query.  They only limit how long
# we look; running out yields NotFound, which is inconclusive.
BFS_NODE_CAP = 20_000
DIRECTED_EXPANSION_CAP = 40_000


def calculus_of(t):
    if isinstance(t, ipc.Term):
        return ipc
    if isinstance(t, fat.Term):
        return fat
    raise TypeError(f"not a term: {t!r}")


@dataclass(frozen=True)
class ReductionStep:
    rule: RuleId
    position: tuple
    before: Any
    after: Any

    def to_json(self):
        return {"rule": str(self.rule), "position": list(self.position),
                "before": str(self.before), "after": str(self.after)}


class TraceError(ValueError):
    pass


@dataclass
class Trace:
    start: Any
    steps: list = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    @property
    def end(self):
        return self.steps[-1].after if self.steps else self.start

    @property
    def rules(self):
        return [s.rule for s in self.steps]

    def validate(self):
        """Replay every step; raise TraceError on the first mismatch."""
        cur = self.start
        for k, s in enumerate(self.steps):
            mod = calculus_of(cur)
            if s.before is not cur and not mod.alpha_eq(s.before, cur):
                raise TraceError(f"step {k} does not start where step {k - 1} ended")
            redone = mod.step_at(cur, s.position, s.rule)
            if not mod.alpha_eq(redone, s.after):
                raise TraceError(f"step {k} ({s.rule} at {list(s.position)}) does not replay")
            cur = s.after
        return True

    @classmethod
    def replay(cls, start, moves):
        """Build a trace from (position, rule) moves applied to start."""
        mod = calculus_of(start)
        steps, cur = [], start
        for pos, rule in moves:
            nxt = mod.step_at(cur, pos, rule)
            steps.append(ReductionStep(rule, tuple(pos), cur, nxt))
            cur = nxt
        return cls(start, steps)

    def to_json(self):
        return {"start": str(self.start), "steps": [s.to_json() for s in self.steps]}


class NotFound(Exception):
    """No trace within the bounds; says nothing about whether one exists."""


def successors(t, rules):
    mod = calculus_of(t)
    for pos, r in mod.iter_redexes(t, rules):
        yield pos, r, mod.step_at(t, pos, r)


def reachable(frm, to, rules, max_steps=12, strategy="bfs"):
    """A trace from frm to a term α-equal to to, using only the given rules.

    ``bfs`` explores the α-quotiented reduction graph breadth first and
    returns a shortest trace.  ``directed`` decomposes the problem along
    matching constructors and searches best first, which is much cheaper
    on large terms but not guaranteed to be shortest.  ``auto`` tries
    ``directed`` and then ``bfs``.
    """
    mod = calculus_of(frm)
    if calculus_of(to) is not mod:
        raise TypeError("terms belong to different calculi")
    rules = frozenset(rules)
    if mod.alpha_eq(frm, to):
        return Trace(frm, [])
    if strategy == "bfs":
        moves = _bfs(frm, to, rules, max_steps)
    elif strategy == "directed":
        moves = _Directed(rules).run(frm, to, max_steps)
    elif strategy == "auto":
        moves = _Directed(rules).run(frm, to, max_steps)
        if moves is None:
            moves = _bfs(frm, to, rules, max_steps)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if moves is None:
        raise NotFound(f"no trace within {max_steps} steps")
    trace = Trace.replay(frm, moves)
    if not mod.alpha_eq(trace.end, to):
        raise AssertionError("search returned a trace that misses its target")
    return trace


def _bfs(frm, to, rules, max_steps, node_cap=BFS_NODE_CAP):
    mod = calculus_of(frm)
    goal = mod.alpha_key(to)
    start = mod.alpha_key(frm)
    parent = {start: None}
    frontier = deque([(frm, start, 0)])
    while frontier:
        t, key, depth = frontier.popleft()
        if depth == max_steps:
            continue
        for pos, r, nxt in successors(t, rules):
            k = mod.alpha_key(nxt)
            if k in parent:
                continue
            parent[k] = (key, pos, r)
            if k == goal:
                moves = []
                while parent[k] is not None:
                    k, pos, r = parent[k]
                    moves.append((pos, r))
                return moves[::-1]
            if len(parent) > node_cap:
                return None
            frontier.append((nxt, k, depth + 1))
    return None


# Children of each alpha_key node, by tag (positions within the key tuple).
_KEY_KIDS = {"app": (1, 2), "pair": (1, 2), "lam": (2,), "tlam": (1,), "tapp": (1,),
             "proj": (2,), "inj": (2,), "abort": (1,), "case": (1, 3, 5)}


def _key_size(k):
    return 1 + sum(_key_size(k[i]) for i in _KEY_KIDS.get(k[0], ()))


def _same_head(k1, k2):
    if k1[0] != k2[0] or k1[0] not in _KEY_KIDS:
        return False
    kids = _KEY_KIDS[k1[0]]
    return all(k1[i] == k2[i] for i in range(1, len(k1)) if i not in kids)


def key_distance(k1, k2):
    """Size of the parts of two α-keys that differ, matching shared constructors."""
    if k1 == k2:
        return 0
    if _same_head(k1, k2):
        return sum(key_distance(k1[i], k2[i]) for i in _KEY_KIDS[k1[0]])
    return _key_size(k1) + _key_size(k2)


class _Directed:
    """Search guided by the target.

    Subproblems are split along constructors both terms share; each piece
    that cannot be split is searched best first, preferring states whose
    α-key differs least from the target and, among those, smaller terms.
    """

    def __init__(self, rules, cap=DIRECTED_EXPANSION_CAP):
        self.rules = rules
        self.cap = cap
        self.expansions = 0

    def run(self, a, b, max_steps):
        return self.solve(a, b, max_steps)

    def solve(self, a, b, budget):
        mod = calculus_of(a)
        if mod.alpha_eq(a, b):
            return []
        pairs = mod.align(a, b)
        if pairs is not None:
            moves = []
            for i, (ca, cb) in enumerate(pairs):
                sub = self.solve(ca, cb, budget - len(moves))
                if sub is None:
                    break
                moves += [((i,) + pos, r) for pos, r in sub]
            else:
                return moves
        return self.best_first(a, b, budget)

    def best_first(self, a, b, budget):
        mod = calculus_of(a)
        goal = mod.alpha_key(b)
        k0 = mod.alpha_key(a)
        parent = {k0: None}
        depth = {k0: 0}
        tick = 0
        heap = [(key_distance(k0, goal), _key_size(k0), tick, a, k0)]
        while heap:
            _, _, _, t, k = heapq.heappop(heap)
            d = depth[k]
            if d >= budget:
                continue
            self.expansions += 1
            if self.expansions > self.cap:
                return None
            for pos, r, nxt in successors(t, self.rules):
                kn = mod.alpha_key(nxt)
                if kn in depth and depth[kn] <= d + 1:
                    continue
                depth[kn] = d + 1
                parent[kn] = (k, pos, r)
                if kn == goal:
                    moves = []
                    while parent[kn] is not None:
                        kn, pos, r = parent[kn]
                        moves.append((pos, r))
                    return moves[::-1]
                tick += 1
                heapq.heappush(heap, (key_distance(kn, goal), _key_size(kn), tick, nxt, kn))
        return None


def join_at_normal_form(a, b, rules=FAT_BETAETA, fuel=None):
    """Whether a and b have α-equal normal forms (raises FuelExhausted)."""
    return fat.alpha_eq(fat.normalize_fat(a, rules, fuel), fat.normalize_fat(b, rules, fuel))


def exhaustive_reachable_set(frm, rules, max_steps):
    """α-keys of every term reachable in at most max_steps steps."""
    mod = calculus_of(frm)
    seen = {mod.alpha_key(frm): 0}
    layer = [frm]
    for d in range(1, max_steps + 1):
        nxt_layer = []
        for t in layer:
            for _, _, n in successors(t, rules):
                k = mod.alpha_key(n)
                if k not in seen:
                    seen[k] = d
                    nxt_layer.append(n)
        layer = nxt_layer
    return seen
