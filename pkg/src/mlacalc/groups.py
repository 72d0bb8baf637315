"""Finite groups as dense Cayley tables.

Elements are indices 0..order-1; labels are for presentation only.  Tables
are numpy int64 arrays frozen after validation.  Everything here is sized
for desk-scale instances (orders in the hundreds, hard cap ORDER_CAP).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    InputError,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotClosed,
    NotNormal,
    ResourceError,
)

ORDER_CAP = 10_000


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    labels: tuple[str, ...]
    table: np.ndarray
    identity: int
    inverses: np.ndarray

    @property
    def order(self) -> int:
        return len(self.labels)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def conjugate(self, z: int, x: int) -> int:
        """z x z^-1."""
        return int(self.conj_table[z, x])

    def commutator(self, x: int, y: int) -> int:
        """x y x^-1 y^-1."""
        return int(self.comm_table[x, y])

    def label(self, a: int) -> str:
        return self.labels[a]

    @cached_property
    def conj_table(self) -> np.ndarray:
        # [z, x] = (z·x)·z^-1
        return _freeze(self.table[self.table, self.inverses[:, None]])

    @cached_property
    def comm_table(self) -> np.ndarray:
        # [x, y] = (x y x^-1)·y^-1
        return _freeze(self.table[self.conj_table, self.inverses[None, :]])

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def same_table(self, other: "FiniteGroup") -> bool:
        return self.labels == other.labels and bool((self.table == other.table).all())


def validate_cayley(labels: Sequence[str], table) -> FiniteGroup:
    """Check the group axioms exhaustively and return a frozen FiniteGroup.

    Raises NotClosed / NoIdentity / NoInverse / NotAssociative with the least
    witness, InputError on shape problems, ResourceError above ORDER_CAP.
    """
    labels = tuple(str(s) for s in labels)
    n = len(labels)
    if n == 0:
        raise InputError("element list is empty")
    if len(set(labels)) != n:
        raise InputError("element labels are not distinct")
    if n > ORDER_CAP:
        raise ResourceError(f"order {n} exceeds cap {ORDER_CAP}", order=n, cap=ORDER_CAP)
    try:
        arr = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise InputError(f"table is not an integer matrix: {exc}") from exc
    if arr.shape != (n, n):
        raise InputError(
            f"table shape {arr.shape} does not match {n} labels", shape=list(arr.shape)
        )

    bad = (arr < 0) | (arr >= n)
    if bad.any():
        i, j = (int(v) for v in np.argwhere(bad)[0])
        raise NotClosed(
            f"entry at ({labels[i]},{labels[j]}) is outside the element range",
            witness=[i, j],
            value=int(arr[i, j]),
        )

    idx = np.arange(n)
    is_identity = (arr == idx[None, :]).all(axis=1) & (arr.T == idx[None, :]).all(axis=1)
    candidates = np.flatnonzero(is_identity)
    if candidates.size == 0:
        raise NoIdentity("no two-sided identity element")
    e = int(candidates[0])

    inv = np.full(n, -1, dtype=np.int64)
    for i in range(n):
        js = np.flatnonzero((arr[i] == e) & (arr[:, i] == e))
        if js.size == 0:
            raise NoInverse(f"{labels[i]} has no two-sided inverse", witness=i)
        inv[i] = int(js[0])

    for i in range(n):
        left = arr[arr[i], :]  # (i·j)·k
        right = arr[i][arr]  # i·(j·k)
        neq = left != right
        if neq.any():
            j, k = (int(v) for v in np.argwhere(neq)[0])
            raise NotAssociative(
                f"associativity fails at ({labels[i]},{labels[j]},{labels[k]})",
                witness=[i, j, k],
            )

    return FiniteGroup(labels, _freeze(arr.copy()), e, _freeze(inv))


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: frozenset[int]

    @cached_property
    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    @property
    def order(self) -> int:
        return len(self.members)

    def contains(self, x: int) -> bool:
        return x in self.members

    @property
    def is_trivial(self) -> bool:
        return len(self.members) == 1

    @property
    def is_whole(self) -> bool:
        return len(self.members) == self.parent.order


def make_subgroup(G: FiniteGroup, members: Iterable[int]) -> Subgroup:
    """Validate closure/identity/inverses of a member set and wrap it."""
    ms = {int(x) for x in members}
    if any(x < 0 or x >= G.order for x in ms):
        raise InputError("subgroup members out of range")
    if G.identity not in ms:
        raise InputError("subgroup does not contain the identity")
    arr = np.fromiter(sorted(ms), dtype=np.int64)
    if not np.isin(G.table[np.ix_(arr, arr)], arr).all():
        raise InputError("member set is not closed under the product")
    if not np.isin(G.inverses[arr], arr).all():
        raise InputError("member set is not closed under inverses")
    return Subgroup(G, frozenset(ms))


def _closure(G: FiniteGroup, seed: Iterable[int], conjugate: bool) -> frozenset[int]:
    T, inv = G.table, G.inverses
    members = {G.identity}
    pending = []
    for s in sorted({int(x) for x in seed}):
        if s < 0 or s >= G.order:
            raise InputError("seed element out of range", value=s)
        if s not in members:
            members.add(s)
            pending.append(s)
    i = 0
    while i < len(pending):
        a = pending[i]
        i += 1
        mem = np.fromiter(members, dtype=np.int64)
        fresh = {int(inv[a])}
        fresh.update(int(v) for v in T[a, mem])
        fresh.update(int(v) for v in T[mem, a])
        if conjugate:
            fresh.update(int(v) for v in G.conj_table[:, a])
        for v in fresh - members:
            members.add(v)
            pending.append(v)
    return frozenset(members)


def subgroup_closure(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    return Subgroup(G, _closure(G, seed, conjugate=False))


def normal_closure(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    return Subgroup(G, _closure(G, seed, conjugate=True))


def is_normal(G: FiniteGroup, S: Subgroup) -> bool:
    mem = np.fromiter(S.sorted_members, dtype=np.int64)
    return bool(np.isin(G.conj_table[:, mem], mem).all())


@dataclass(frozen=True, eq=False)
class GroupMap:
    source: FiniteGroup
    target: FiniteGroup
    image: np.ndarray

    def apply(self, x: int) -> int:
        return int(self.image[x])


def make_group_map(source: FiniteGroup, target: FiniteGroup, image) -> GroupMap:
    img = np.asarray(image, dtype=np.int64)
    if img.shape != (source.order,):
        raise InputError("image vector has wrong length")
    if ((img < 0) | (img >= target.order)).any():
        raise InputError("image vector out of range")
    lhs = img[source.table]
    rhs = target.table[img[:, None], img[None, :]]
    if (lhs != rhs).any():
        s, t = (int(v) for v in np.argwhere(lhs != rhs)[0])
        raise InputError("map is not a homomorphism", witness=[s, t])
    return GroupMap(source, target, _freeze(img.copy()))


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupMap]:
    """Quotient by a normal subgroup; coset labels come from least-index reps."""
    if N.parent is not G:
        raise InputError("subgroup does not belong to this group")
    mem = np.fromiter(N.sorted_members, dtype=np.int64)
    outside = ~np.isin(G.conj_table[:, mem], mem)
    if outside.any():
        z, k = (int(v) for v in np.argwhere(outside)[0])
        raise NotNormal(
            f"conjugating {G.labels[int(mem[k])]} by {G.labels[z]} leaves the subgroup",
            witness=[z, int(mem[k])],
        )

    n = G.order
    coset_of = np.full(n, -1, dtype=np.int64)
    reps: list[int] = []
    for i in range(n):
        if coset_of[i] < 0:
            coset_of[G.table[i, mem]] = len(reps)
            reps.append(i)
    reps_arr = np.asarray(reps, dtype=np.int64)
    qtable = coset_of[G.table[np.ix_(reps_arr, reps_arr)]]
    Q = validate_cayley([G.labels[r] for r in reps], qtable)
    return Q, make_group_map(G, Q, coset_of)
