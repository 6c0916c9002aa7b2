"""Inductive subtyping: bottom-up proof-tree construction.

Rule selection priority: assumption, then rec-left, then rec-right, then
the unique constructor rule matching the goal heads.  After the priority
scheme at most one rule applies, so a failed premise refutes the goal with
no backtracking.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple

from .syntax import (
    Branch,
    End,
    Input,
    Output,
    Rec,
    Select,
    SessionType,
    alpha_canonical,
    nesting_depth,
    validate,
)
from .subterms import unfold_step
from .textio import print_type

AS_ASSUMP = "AS-Assump"
AS_END = "AS-End"
AS_RECL = "AS-RecL"
AS_RECR = "AS-RecR"
AS_IN = "AS-In"
AS_OUT = "AS-Out"
AS_BRA = "AS-Bra"
AS_SEL = "AS-Sel"

RULES = (AS_ASSUMP, AS_END, AS_RECL, AS_RECR, AS_IN, AS_OUT, AS_BRA, AS_SEL)

DEFAULT_STEP_LIMIT = 10**8


class StepLimitExceeded(RuntimeError):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"step limit of {limit} expansions exceeded")


@dataclass(frozen=True)
class Claim:
    lhs: SessionType
    rhs: SessionType

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.lhs, self.rhs)))

    def __hash__(self):
        return self._hash

    @staticmethod
    def make(lhs: SessionType, rhs: SessionType) -> "Claim":
        return Claim(alpha_canonical(lhs), alpha_canonical(rhs))

    def __repr__(self):
        return f"{print_type(self.lhs)} <= {print_type(self.rhs)}"


Context = FrozenSet[Claim]

EMPTY_CONTEXT: Context = frozenset()


@dataclass(frozen=True)
class Judgement:
    sigma: Context
    goal: Claim

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.sigma, self.goal)))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        sigma = ", ".join(sorted(map(repr, self.sigma)))
        return f"{{{sigma}}} |- {self.goal!r}"


@dataclass
class DerivationNode:
    judgement: Judgement
    rule: Optional[str]
    children: List["DerivationNode"] = field(default_factory=list)


@dataclass
class CheckReport:
    subtype: bool
    nodes_expanded: int
    max_context: int
    max_depth: int
    elapsed: float
    algorithm: str = "inductive"
    memo_hits: int = 0
    derivation: Optional[DerivationNode] = None
    edges: Optional[List[Tuple[Judgement, Judgement]]] = None

    @property
    def verdict(self) -> str:
        return "subtype" if self.subtype else "not-subtype"


def select_rule(j: Judgement, prefer_rec_left: bool = True) -> Optional[str]:
    """The rule to apply at j, or None when the goal is refuted here."""
    if j.goal in j.sigma:
        return AS_ASSUMP
    t, u = j.goal.lhs, j.goal.rhs
    if isinstance(t, Rec) and isinstance(u, Rec):
        return AS_RECL if prefer_rec_left else AS_RECR
    if isinstance(t, Rec):
        return AS_RECL
    if isinstance(u, Rec):
        return AS_RECR
    if isinstance(t, End) and isinstance(u, End):
        return AS_END
    if isinstance(t, Input) and isinstance(u, Input):
        return AS_IN
    if isinstance(t, Output) and isinstance(u, Output):
        return AS_OUT
    if isinstance(t, Branch) and isinstance(u, Branch):
        if set(t.labels()) <= set(u.labels()):
            return AS_BRA
        return None
    if isinstance(t, Select) and isinstance(u, Select):
        if set(u.labels()) <= set(t.labels()):
            return AS_SEL
        return None
    return None


def premises(j: Judgement, rule: str) -> Optional[List[Judgement]]:
    """Premise judgements for applying `rule` at `j`, in left-to-right
    order; None means not applicable (payload arity mismatch), which the
    caller treats as refutation."""
    sigma, goal = j.sigma, j.goal
    t, u = goal.lhs, goal.rhs
    if rule in (AS_ASSUMP, AS_END):
        return []
    if rule == AS_RECL:
        assert isinstance(t, Rec)
        wider = sigma | {goal}
        return [Judgement(wider, Claim.make(unfold_step(t), u))]
    if rule == AS_RECR:
        assert isinstance(u, Rec)
        wider = sigma | {goal}
        return [Judgement(wider, Claim.make(t, unfold_step(u)))]
    if rule == AS_IN:
        assert isinstance(t, Input) and isinstance(u, Input)
        if len(t.payloads) != len(u.payloads):
            return None
        out = [Judgement(sigma, Claim.make(a, b)) for a, b in zip(t.payloads, u.payloads)]
        out.append(Judgement(sigma, Claim.make(t.cont, u.cont)))
        return out
    if rule == AS_OUT:
        assert isinstance(t, Output) and isinstance(u, Output)
        if len(t.payloads) != len(u.payloads):
            return None
        out = [Judgement(sigma, Claim.make(b, a)) for a, b in zip(t.payloads, u.payloads)]
        out.append(Judgement(sigma, Claim.make(t.cont, u.cont)))
        return out
    if rule == AS_BRA:
        assert isinstance(t, Branch) and isinstance(u, Branch)
        return [Judgement(sigma, Claim.make(v, u.get(l))) for l, v in t.alts]
    if rule == AS_SEL:
        assert isinstance(t, Select) and isinstance(u, Select)
        return [Judgement(sigma, Claim.make(t.get(l), v)) for l, v in u.alts]
    raise ValueError(f"unknown rule {rule!r}")


def derive(
    t: SessionType,
    u: SessionType,
    capture_tree: bool = False,
    step_limit: int = DEFAULT_STEP_LIMIT,
    record_edges: bool = False,
    prefer_rec_left: bool = True,
) -> CheckReport:
    """Depth-first expansion of the proof tree rooted at (empty, t <= u).

    No memoization: repeated judgements are re-expanded and re-counted.
    """
    validate(t, require_closed=True)
    validate(u, require_closed=True)
    start = time.perf_counter()

    root_j = Judgement(EMPTY_CONTEXT, Claim.make(t, u))
    root = DerivationNode(root_j, None) if capture_tree else None
    edges: Optional[List[Tuple[Judgement, Judgement]]] = [] if record_edges else None

    nodes = 0
    max_ctx = 0
    max_depth = 0
    ok = True
    # Frames carry the tree node only when the caller asked for the tree;
    # otherwise the judgement alone is kept so finished subtrees can be
    # garbage collected.
    stack: List[Tuple[Judgement, Optional[DerivationNode], int]] = [(root_j, root, 1)]
    while stack:
        judgement, node, depth = stack.pop()
        nodes += 1
        if nodes > step_limit:
            raise StepLimitExceeded(step_limit)
        max_depth = max(max_depth, depth)
        max_ctx = max(max_ctx, len(judgement.sigma))
        rule = select_rule(judgement, prefer_rec_left)
        if rule is None:
            ok = False
            break
        if node is not None:
            node.rule = rule
        prems = premises(judgement, rule)
        if prems is None:
            ok = False
            break
        frames = []
        for p in prems:
            child = None
            if node is not None:
                child = DerivationNode(p, None)
                node.children.append(child)
            if edges is not None:
                edges.append((judgement, p))
            frames.append((p, child, depth + 1))
        stack.extend(reversed(frames))

    return CheckReport(
        subtype=ok,
        nodes_expanded=nodes,
        max_context=max_ctx,
        max_depth=max_depth,
        elapsed=time.perf_counter() - start,
        algorithm="inductive",
        derivation=root if ok else None,
        edges=edges,
    )


def path_measures(d: DerivationNode) -> List[List[Tuple[int, int]]]:
    """For every root-to-leaf path, the sequence of pairs
    (|sigma|, nesting_depth(goal.lhs)) along it."""
    paths: List[List[Tuple[int, int]]] = []

    def walk(node: DerivationNode, prefix: List[Tuple[int, int]]) -> None:
        prefix = prefix + [(len(node.judgement.sigma), nesting_depth(node.judgement.goal.lhs))]
        if not node.children:
            paths.append(prefix)
            return
        for c in node.children:
            walk(c, prefix)

    walk(d, [])
    return paths
