"""Seeded random generation of contractive session types.

Used by the property and acceptance tests; deterministic for a given
random.Random instance and never exceeds the requested size.
"""

from __future__ import annotations

import random
from typing import FrozenSet, List, Tuple

from .syntax import Branch, End, Input, Output, Rec, Select, SessionType, Var

LABEL_POOL = ("a", "b", "c", "d", "e")
BINDER_POOL = ("X", "Y", "Z", "W", "V")


def _split(rng: random.Random, budget: int, n: int) -> List[int]:
    """Split budget into exactly n parts, each >= 1 (requires budget >= n)."""
    parts = []
    remaining = budget
    for i in range(n - 1):
        hi = remaining - (n - 1 - i)
        p = rng.randint(1, hi)
        parts.append(p)
        remaining -= p
    parts.append(remaining)
    return parts


def random_type(
    rng: random.Random,
    max_size: int,
    free: Tuple[str, ...] = (),
) -> SessionType:
    """A contractive type of size <= max_size; closed unless free names are
    supplied (those occur only at guarded positions, like rec binders)."""

    def go(budget: int, guarded: FrozenSet[str], unguarded: FrozenSet[str]) -> SessionType:
        opts = [("end", 1.0)]
        if guarded:
            opts.append(("var", 1.0))
        if budget >= 2:
            opts.append(("rec", 1.5))
        if budget >= 3:
            opts.append(("io", 5.0))
            opts.append(("choice", 3.0))
        kinds = [k for k, _ in opts]
        weights = [w for _, w in opts]
        kind = rng.choices(kinds, weights=weights)[0]
        if kind == "end":
            return End()
        if kind == "var":
            return Var(rng.choice(sorted(guarded)))
        if kind == "rec":
            binder = rng.choice(BINDER_POOL) + str(rng.randrange(3))
            return Rec(binder, go(budget - 1, guarded - {binder}, unguarded | {binder}))
        now_guarded = guarded | unguarded
        if kind == "io":
            n = rng.randint(1, min(3, budget - 2))
            parts = _split(rng, budget - 1, n + 1)
            payloads = tuple(go(b, now_guarded, frozenset()) for b in parts[:-1])
            cont = go(parts[-1], now_guarded, frozenset())
            cls = Input if rng.random() < 0.5 else Output
            return cls(payloads, cont)
        n = rng.randint(1, min(len(LABEL_POOL), budget - 1))
        labels = sorted(rng.sample(LABEL_POOL, n))
        parts = _split(rng, budget - 1, n)
        alts = tuple((l, go(b, now_guarded, frozenset())) for l, b in zip(labels, parts))
        cls = Select if rng.random() < 0.5 else Branch
        return cls(alts)

    return go(max(1, max_size), frozenset(free), frozenset())
