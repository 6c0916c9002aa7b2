"""Coinductive subtyping oracle based on type simulations.

Explores pairs of types, unfolding rec heads before matching; pairs seen
before are assumed consistent (greatest-fixed-point reading).  The visited
pair set lives inside the product of the two top-down subterm sets, so the
check is polynomial and can referee the two inductive algorithms.
"""

from __future__ import annotations

import time
from typing import List, Set, Tuple

from .syntax import Branch, End, Input, Output, Select, SessionType, alpha_canonical, validate
from .subterms import unfold
from .inductive import CheckReport

Pair = Tuple[SessionType, SessionType]


def _explore(t: SessionType, u: SessionType) -> Tuple[bool, int, int]:
    """Returns (simulated, pairs visited, max stack depth)."""
    visited: Set[Pair] = set()
    stack: List[Tuple[Pair, int]] = [((alpha_canonical(t), alpha_canonical(u)), 1)]
    max_depth = 0
    while stack:
        pair, depth = stack.pop()
        if pair in visited:
            continue
        visited.add(pair)
        max_depth = max(max_depth, depth)
        a = unfold(pair[0])
        b = unfold(pair[1])
        succs: List[Pair] = []
        if isinstance(a, End) and isinstance(b, End):
            pass
        elif isinstance(a, Input) and isinstance(b, Input) and len(a.payloads) == len(b.payloads):
            succs = list(zip(a.payloads, b.payloads))
            succs.append((a.cont, b.cont))
        elif isinstance(a, Output) and isinstance(b, Output) and len(a.payloads) == len(b.payloads):
            succs = [(y, x) for x, y in zip(a.payloads, b.payloads)]
            succs.append((a.cont, b.cont))
        elif isinstance(a, Branch) and isinstance(b, Branch) and set(a.labels()) <= set(b.labels()):
            succs = [(v, b.get(l)) for l, v in a.alts]
        elif isinstance(a, Select) and isinstance(b, Select) and set(b.labels()) <= set(a.labels()):
            succs = [(a.get(l), v) for l, v in b.alts]
        else:
            return False, len(visited), max_depth
        stack.extend(
            (((alpha_canonical(x), alpha_canonical(y)), depth + 1)) for x, y in reversed(succs)
        )
    return True, len(visited), max_depth


def simulates(t: SessionType, u: SessionType) -> bool:
    """True iff some type simulation contains (t, u)."""
    validate(t, require_closed=True)
    validate(u, require_closed=True)
    ok, _, _ = _explore(t, u)
    return ok


def coinductive_equal(t: SessionType, u: SessionType) -> bool:
    """Mutual simulation."""
    return simulates(t, u) and simulates(u, t)


def check_simulation(t: SessionType, u: SessionType) -> CheckReport:
    """CheckReport wrapper; nodes_expanded counts visited pairs."""
    validate(t, require_closed=True)
    validate(u, require_closed=True)
    start = time.perf_counter()
    ok, pairs, max_depth = _explore(t, u)
    return CheckReport(
        subtype=ok,
        nodes_expanded=pairs,
        max_context=0,
        max_depth=max_depth,
        elapsed=time.perf_counter() - start,
        algorithm="oracle",
    )
