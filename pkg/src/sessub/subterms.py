"""Subterm sets and unfolding.

Two notions of subterm are computed:

* ``sub_bottom_up`` follows the structure of the term; the rec case
  substitutes the whole rec type into every subterm of its body.
* ``sub_top_down`` unfolds rec types first and then descends; it is the set
  the checkers actually range over, computed as a worklist fixed point.

Membership everywhere is up to alpha: all stored elements are canonical.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, List, Set

from .syntax import (
    Branch,
    End,
    Input,
    Output,
    Rec,
    Select,
    SessionType,
    Var,
    alpha_canonical,
    nesting_depth,
    size,
    substitute,
)
from .textio import print_type


class SubtermLimitError(RuntimeError):
    """Internal-error diagnostic: a fixed point failed to close within its
    cardinality bound (signals a bug, not a property of the input)."""


class TypeSet:
    """Finite set of types up to alpha, iterated in printed order."""

    def __init__(self, items: Iterable[SessionType] = ()):
        self._items: Set[SessionType] = set()
        for t in items:
            self.add(t)

    def add(self, t: SessionType) -> bool:
        t = alpha_canonical(t)
        if t in self._items:
            return False
        self._items.add(t)
        return True

    def __contains__(self, t: SessionType) -> bool:
        return alpha_canonical(t) in self._items

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[SessionType]:
        return iter(sorted(self._items, key=print_type))

    def __or__(self, other: "TypeSet") -> "TypeSet":
        out = TypeSet()
        out._items = self._items | other._items
        return out

    def issubset(self, other: "TypeSet") -> bool:
        return self._items <= other._items

    def __repr__(self) -> str:
        return "{" + ", ".join(print_type(t) for t in self) + "}"


@lru_cache(maxsize=None)
def unfold_step(t: Rec) -> SessionType:
    return alpha_canonical(substitute(t.body, t.binder, t))


def unfold(t: SessionType) -> SessionType:
    """Rewrite rec heads away until a message constructor (or end) surfaces.

    Contractivity bounds the number of steps by the count of leading rec
    binders; the guard converts a validation bug into a loud failure.
    """
    t = alpha_canonical(t)
    guard = nesting_depth(t) + 1
    steps = 0
    while isinstance(t, Rec):
        steps += 1
        if steps > guard:
            raise SubtermLimitError(f"unfold did not terminate on {print_type(t)}")
        t = unfold_step(t)
    return t


def sub_bottom_up(t: SessionType) -> TypeSet:
    t = alpha_canonical(t)
    out = TypeSet()
    out.add(t)
    if isinstance(t, (End, Var)):
        return out
    if isinstance(t, Rec):
        for s in sub_bottom_up(t.body):
            out.add(substitute(s, t.binder, t))
        return out
    if isinstance(t, (Input, Output)):
        children: List[SessionType] = [*t.payloads, t.cont]
    else:
        children = [v for _, v in t.alts]
    for c in children:
        for s in sub_bottom_up(c):
            out.add(s)
    return out


def sub_top_down(t: SessionType) -> TypeSet:
    t = alpha_canonical(t)
    out = TypeSet()
    cap = 4 * size(t)
    insertions = 0
    work = [t]
    out.add(t)
    while work:
        u = work.pop()
        if isinstance(u, Rec):
            succs: List[SessionType] = [unfold_step(u)]
        elif isinstance(u, (Input, Output)):
            succs = [*u.payloads, u.cont]
        elif isinstance(u, (Select, Branch)):
            succs = [v for _, v in u.alts]
        else:
            succs = []
        for s in succs:
            if out.add(s):
                insertions += 1
                if insertions > cap:
                    raise SubtermLimitError(
                        f"sub_top_down exceeded {cap} insertions on {print_type(t)}"
                    )
                work.append(alpha_canonical(s))
    return out


def sub_pair(t: SessionType, u: SessionType) -> TypeSet:
    return sub_top_down(t) | sub_top_down(u)
