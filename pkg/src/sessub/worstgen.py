"""Worst-case input family and the blowup benchmark.

T_k is a rec-bound tower of k input constructors whose payloads are ever
deeper towers of their own; every member is coinductively equal to
rec X. ?[X].X, yet checking T_k <= T_{k+1} inductively forces factorially
many distinct judgements.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .syntax import Input, Rec, SessionType, Var, size, validate
from .inductive import DEFAULT_STEP_LIMIT, StepLimitExceeded, derive
from .memo import check_memo
from .oracle import check_simulation

ALGORITHMS = ("inductive", "memo", "oracle")


class BenchVerdictError(RuntimeError):
    """A checker refuted T_k <= T_{k+1}; that is an implementation bug."""


@dataclass
class BenchRow:
    k: int
    size_sum: int
    inductive_nodes: Optional[int] = None
    memo_nodes: Optional[int] = None
    oracle_pairs: Optional[int] = None
    truncated: Tuple[str, ...] = ()
    elapsed: Dict[str, float] = field(default_factory=dict)

    def to_record(self) -> Dict:
        return {
            "k": self.k,
            "size_sum": self.size_sum,
            "inductive_nodes": self.inductive_nodes,
            "memo_nodes": self.memo_nodes,
            "oracle_pairs": self.oracle_pairs,
            "truncated": list(self.truncated),
            "elapsed": self.elapsed,
        }

    @staticmethod
    def from_record(rec: Dict) -> "BenchRow":
        return BenchRow(
            k=rec["k"],
            size_sum=rec["size_sum"],
            inductive_nodes=rec["inductive_nodes"],
            memo_nodes=rec["memo_nodes"],
            oracle_pairs=rec["oracle_pairs"],
            truncated=tuple(rec["truncated"]),
            elapsed=dict(rec["elapsed"]),
        )


def gen_V(l: int) -> SessionType:
    """l nested inputs over payload rec Z. ?[Z].Z, ending in the free
    variable X; gen_V(0) is X itself."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    t: SessionType = Var("X")
    for j in range(l):
        z = f"Z{j}"
        payload = Rec(z, Input((Var(z),), Var(z)))
        t = Input((payload,), t)
    return t


def gen_Tk(k: int) -> SessionType:
    """rec X. ?[rec Y_{k-1}. V_{k-1}]. ... ?[rec Y_0. V_0]. X"""
    if k < 1:
        raise ValueError("k must be positive")
    body: SessionType = Var("X")
    for i in range(k):
        body = Input((Rec(f"Y{i}", gen_V(i)),), body)
    t = Rec("X", body)
    validate(t, require_closed=True)
    return t


def size_sum_closed_form(k: int) -> int:
    """|T_k| + |T_{k+1}| predicted from the closed form
    |T_k| = 2 + 3k + 5k(k-1)/2 (validated against size in the tests)."""

    def one(k: int) -> int:
        return 2 + 3 * k + 5 * k * (k - 1) // 2

    return one(k) + one(k + 1)


def bench(
    k_max: int,
    algorithms: Iterable[str] = ALGORITHMS,
    step_limit: int = DEFAULT_STEP_LIMIT,
) -> List[BenchRow]:
    """Run the selected checkers on (T_k, T_{k+1}) for k = 1..k_max.

    Any not-subtype verdict raises; a checker blowing the step limit gets a
    truncation marker instead of a count.
    """
    if k_max < 1:
        raise ValueError("k_max must be positive")
    algorithms = tuple(algorithms)
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}")
    rows: List[BenchRow] = []
    for k in range(1, k_max + 1):
        t, u = gen_Tk(k), gen_Tk(k + 1)
        row = BenchRow(k=k, size_sum=size(t) + size(u), elapsed={})
        truncated = []
        for alg in algorithms:
            start = time.perf_counter()
            try:
                if alg == "inductive":
                    report = derive(t, u, step_limit=step_limit)
                    row.inductive_nodes = report.nodes_expanded
                elif alg == "memo":
                    report = check_memo(t, u, step_limit=step_limit)
                    row.memo_nodes = report.nodes_expanded
                else:
                    report = check_simulation(t, u)
                    row.oracle_pairs = report.nodes_expanded
            except StepLimitExceeded:
                truncated.append(alg)
                row.elapsed[alg] = time.perf_counter() - start
                continue
            row.elapsed[alg] = report.elapsed
            if not report.subtype:
                raise BenchVerdictError(f"{alg} refuted T_{k} <= T_{k + 1}")
        row.truncated = tuple(truncated)
        rows.append(row)
    return rows
