"""Session-type AST with metrics, alpha-conversion and substitution.

Types are immutable; every operation here is a pure function.  Structural
equality is plain dataclass equality, so alpha-insensitive comparisons must
go through :func:`alpha_canonical` / :func:`alpha_equal`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Tuple

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# Prefix used for canonical binder names; skipped over when it would
# collide with a free variable of the term being canonicalized.
CANON_PREFIX = "_r"


class SessionType:
    """Base class for session-type nodes."""


@dataclass(frozen=True)
class End(SessionType):
    def __post_init__(self):
        object.__setattr__(self, "_hash", hash("end"))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Var(SessionType):
    name: str

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("var", self.name)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Rec(SessionType):
    binder: str
    body: SessionType

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("rec", self.binder, self.body)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Input(SessionType):
    payloads: Tuple[SessionType, ...]
    cont: SessionType

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("in", self.payloads, self.cont)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Output(SessionType):
    payloads: Tuple[SessionType, ...]
    cont: SessionType

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("out", self.payloads, self.cont)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Select(SessionType):
    alts: Tuple[Tuple[str, SessionType], ...]

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("sel", self.alts)))

    def __hash__(self):
        return self._hash

    def labels(self) -> Tuple[str, ...]:
        return tuple(l for l, _ in self.alts)

    def get(self, label: str) -> SessionType:
        for l, t in self.alts:
            if l == label:
                return t
        raise KeyError(label)


@dataclass(frozen=True)
class Branch(SessionType):
    alts: Tuple[Tuple[str, SessionType], ...]

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("bra", self.alts)))

    def __hash__(self):
        return self._hash

    def labels(self) -> Tuple[str, ...]:
        return tuple(l for l, _ in self.alts)

    def get(self, label: str) -> SessionType:
        for l, t in self.alts:
            if l == label:
                return t
        raise KeyError(label)


END = End()


class InvalidSessionType(ValueError):
    """A session type violating a structural invariant."""

    def __init__(self, reason: str, path: Tuple[str, ...] = ()):
        self.reason = reason
        self.path = path
        loc = ".".join(path) if path else "<root>"
        super().__init__(f"{reason} at {loc}")


@lru_cache(maxsize=None)
def size(t: SessionType) -> int:
    """Node count: leaves weigh 1, every constructor adds 1 to its children."""
    if isinstance(t, (End, Var)):
        return 1
    if isinstance(t, Rec):
        return 1 + size(t.body)
    if isinstance(t, (Input, Output)):
        return 1 + sum(size(p) for p in t.payloads) + size(t.cont)
    if isinstance(t, (Select, Branch)):
        return 1 + sum(size(v) for _, v in t.alts)
    raise TypeError(f"not a session type: {t!r}")


@lru_cache(maxsize=None)
def nesting_depth(t: SessionType) -> int:
    if isinstance(t, (End, Var)):
        return 1
    if isinstance(t, Rec):
        return 1 + nesting_depth(t.body)
    if isinstance(t, (Input, Output)):
        return 1 + max(max(nesting_depth(p) for p in t.payloads), nesting_depth(t.cont))
    if isinstance(t, (Select, Branch)):
        return 1 + max(nesting_depth(v) for _, v in t.alts)
    raise TypeError(f"not a session type: {t!r}")


@lru_cache(maxsize=None)
def free_vars(t: SessionType) -> FrozenSet[str]:
    if isinstance(t, End):
        return frozenset()
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Rec):
        return free_vars(t.body) - {t.binder}
    if isinstance(t, (Input, Output)):
        out = free_vars(t.cont)
        for p in t.payloads:
            out |= free_vars(p)
        return out
    if isinstance(t, (Select, Branch)):
        out = frozenset()
        for _, v in t.alts:
            out |= free_vars(v)
        return out
    raise TypeError(f"not a session type: {t!r}")


def _fresh(base: str, avoid: FrozenSet[str]) -> str:
    i = 1
    while True:
        name = f"{base}_{i}"
        if name not in avoid:
            return name
        i += 1


def substitute(t: SessionType, x: str, q: SessionType) -> SessionType:
    """Capture-avoiding t[q/x]; clashing binders get deterministic fresh names."""
    fvq = free_vars(q)

    def go(t: SessionType) -> SessionType:
        if isinstance(t, Var):
            return q if t.name == x else t
        if isinstance(t, End):
            return t
        if isinstance(t, Rec):
            if t.binder == x:
                return t
            if x not in free_vars(t.body):
                return t
            if t.binder in fvq:
                new = _fresh(t.binder, fvq | free_vars(t.body) | {x})
                renamed = substitute(t.body, t.binder, Var(new))
                return Rec(new, go(renamed))
            return Rec(t.binder, go(t.body))
        if isinstance(t, Input):
            return Input(tuple(go(p) for p in t.payloads), go(t.cont))
        if isinstance(t, Output):
            return Output(tuple(go(p) for p in t.payloads), go(t.cont))
        if isinstance(t, Select):
            return Select(tuple((l, go(v)) for l, v in t.alts))
        if isinstance(t, Branch):
            return Branch(tuple((l, go(v)) for l, v in t.alts))
        raise TypeError(f"not a session type: {t!r}")

    return go(t)


# Canonical forms are interned so that alpha-equal terms compare (and hash)
# at pointer speed inside sets of claims and judgements.
_INTERN: Dict[SessionType, SessionType] = {}


def _mk(t: SessionType) -> SessionType:
    return _INTERN.setdefault(t, t)


@lru_cache(maxsize=None)
def alpha_canonical(t: SessionType) -> SessionType:
    """Canonical representative of t's alpha class.

    Binders are renamed to CANON_PREFIX + counter in leftmost-outermost
    order (select/branch alternatives visited in label order, which is how
    they are stored in the canonical form).  Idempotent; preserves size and
    nesting depth.
    """
    avoid = free_vars(t)
    counter = [0]

    def fresh() -> str:
        while True:
            name = f"{CANON_PREFIX}{counter[0]}"
            counter[0] += 1
            if name not in avoid:
                return name

    def go(t: SessionType, env: Dict[str, str]) -> SessionType:
        if isinstance(t, End):
            return _mk(t)
        if isinstance(t, Var):
            return _mk(Var(env.get(t.name, t.name)))
        if isinstance(t, Rec):
            new = fresh()
            return _mk(Rec(new, go(t.body, {**env, t.binder: new})))
        if isinstance(t, Input):
            return _mk(Input(tuple(go(p, env) for p in t.payloads), go(t.cont, env)))
        if isinstance(t, Output):
            return _mk(Output(tuple(go(p, env) for p in t.payloads), go(t.cont, env)))
        if isinstance(t, (Select, Branch)):
            alts = tuple((l, go(v, env)) for l, v in sorted(t.alts, key=lambda lv: lv[0]))
            return _mk(Select(alts) if isinstance(t, Select) else Branch(alts))
        raise TypeError(f"not a session type: {t!r}")

    return go(t, {})


def alpha_equal(t: SessionType, u: SessionType) -> bool:
    return alpha_canonical(t) is alpha_canonical(u) or alpha_canonical(t) == alpha_canonical(u)


def validate(t: SessionType, require_closed: bool = False) -> None:
    """Raise InvalidSessionType on the first violated invariant.

    `unguarded` tracks enclosing rec binders not yet separated from this
    position by a message constructor; meeting one as a Var means the term
    is non-contractive.
    """

    def go(t: SessionType, path: Tuple[str, ...], unguarded: FrozenSet[str]) -> None:
        if isinstance(t, End):
            return
        if isinstance(t, Var):
            if not IDENT_RE.match(t.name):
                raise InvalidSessionType(f"bad identifier {t.name!r}", path)
            if t.name in unguarded:
                raise InvalidSessionType(f"non-contractive occurrence of {t.name}", path)
            return
        if isinstance(t, Rec):
            if not IDENT_RE.match(t.binder):
                raise InvalidSessionType(f"bad identifier {t.binder!r}", path)
            go(t.body, path + ("body",), unguarded | {t.binder})
            return
        if isinstance(t, (Input, Output)):
            if not t.payloads:
                raise InvalidSessionType("empty payload list", path)
            for i, p in enumerate(t.payloads):
                go(p, path + (f"payload[{i}]",), frozenset())
            go(t.cont, path + ("cont",), frozenset())
            return
        if isinstance(t, (Select, Branch)):
            if not t.alts:
                raise InvalidSessionType("empty alternatives", path)
            seen = set()
            for l, v in t.alts:
                if not IDENT_RE.match(l):
                    raise InvalidSessionType(f"bad label {l!r}", path)
                if l in seen:
                    raise InvalidSessionType(f"duplicate label {l!r}", path)
                seen.add(l)
                go(v, path + (f"alt[{l}]",), frozenset())
            return
        raise InvalidSessionType(f"not a session type: {t!r}", path)

    go(t, (), frozenset())
    if require_closed:
        fv = free_vars(t)
        if fv:
            names = ", ".join(sorted(fv))
            raise InvalidSessionType(f"free variables: {names}", ())
