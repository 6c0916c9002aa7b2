"""Memoized subtyping: depth-first search over the proof DAG.

The visited set stores whole judgements (context included), so a goal
re-reached under a different context is still re-explored; this is the
algorithm being measured by the benchmark, not an optimized variant.

The search is written with an explicit task stack rather than recursion:
tasks are executed in exactly the order the recursive formulation would
make its calls, and the state threads through them unchanged, so the
observable behavior (visited set, hit counts, failure point) matches the
recursive version while surviving deep derivations.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import List, Set, Tuple

from .syntax import Branch, End, Input, Output, Rec, Select, SessionType, validate
from .subterms import unfold_step
from .inductive import (
    Claim,
    CheckReport,
    Context,
    DEFAULT_STEP_LIMIT,
    EMPTY_CONTEXT,
    Judgement,
    StepLimitExceeded,
)


@dataclass
class MemoState:
    visited: Set[Judgement] = field(default_factory=set)
    failed: bool = False
    memo_hits: int = 0
    max_context: int = 0
    max_depth: int = 0
    step_limit: int = DEFAULT_STEP_LIMIT
    # Test knob: with memo_enabled False the visited-set early return is
    # skipped and the search degenerates to the unmemoized one (termination
    # then rests on the assumption rule alone).
    memo_enabled: bool = True
    expansions: int = 0


def subtype_memo(delta: MemoState, sigma: Context, t: SessionType, u: SessionType) -> MemoState:
    """One top-level Subtype(delta, sigma, t, u) call; returns the successor
    state (the same object, updated in place)."""
    if delta.failed:
        return delta
    tasks: List[Tuple[Context, Claim, int]] = [(sigma, Claim.make(t, u), 1)]
    while tasks:
        sig, claim, depth = tasks.pop()
        j = Judgement(sig, claim)
        if delta.memo_enabled and j in delta.visited:
            delta.memo_hits += 1
            continue
        delta.visited.add(j)
        delta.expansions += 1
        if delta.expansions > delta.step_limit:
            raise StepLimitExceeded(delta.step_limit)
        delta.max_context = max(delta.max_context, len(sig))
        delta.max_depth = max(delta.max_depth, depth)
        a, b = claim.lhs, claim.rhs
        if claim in sig:
            continue
        if isinstance(a, End) and isinstance(b, End):
            continue
        if isinstance(a, Rec):
            tasks.append((sig | {claim}, Claim.make(unfold_step(a), b), depth + 1))
            continue
        if isinstance(b, Rec):
            tasks.append((sig | {claim}, Claim.make(a, unfold_step(b)), depth + 1))
            continue
        if isinstance(a, Input) and isinstance(b, Input) and len(a.payloads) == len(b.payloads):
            sub = [Claim.make(x, y) for x, y in zip(a.payloads, b.payloads)]
            sub.append(Claim.make(a.cont, b.cont))
        elif isinstance(a, Output) and isinstance(b, Output) and len(a.payloads) == len(b.payloads):
            sub = [Claim.make(y, x) for x, y in zip(a.payloads, b.payloads)]
            sub.append(Claim.make(a.cont, b.cont))
        elif isinstance(a, Branch) and isinstance(b, Branch) and set(a.labels()) <= set(b.labels()):
            sub = [Claim.make(v, b.get(l)) for l, v in a.alts]
        elif isinstance(a, Select) and isinstance(b, Select) and set(b.labels()) <= set(a.labels()):
            sub = [Claim.make(a.get(l), v) for l, v in b.alts]
        else:
            delta.failed = True
            return delta
        tasks.extend((sig, c, depth + 1) for c in reversed(sub))
    return delta


def check_memo(
    t: SessionType, u: SessionType, step_limit: int = DEFAULT_STEP_LIMIT
) -> CheckReport:
    validate(t, require_closed=True)
    validate(u, require_closed=True)
    start = time.perf_counter()
    delta = MemoState(step_limit=step_limit)
    delta = subtype_memo(delta, EMPTY_CONTEXT, t, u)
    return CheckReport(
        subtype=not delta.failed,
        nodes_expanded=len(delta.visited),
        max_context=delta.max_context,
        max_depth=delta.max_depth,
        elapsed=time.perf_counter() - start,
        algorithm="memo",
        memo_hits=delta.memo_hits,
    )
