"""Groups carrying a second binary operation subject to five axioms.

The star table S is an order x order matrix over element indices.  Axioms
(numbered 1-5 throughout, also in reports):

  1  x*x = 1
  2  x*(y z)   = (x*y) · ^y(x*z)
  3  (x y)*z   = ^x(y*z) · (x*z)
  4  ((x*y) * ^y z) · ((y*z) * ^z x) · ((z*x) * ^x y) = 1
  5  ^z(x*y)   = ^z x * ^z y

with ^z x = z x z^-1.  The defect operator L[a,b] = (a*b)^-1 [a,b]
measures how far * sits from the commutator and drives the two series.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable

import numpy as np

from .errors import (
    AxiomViolation,
    IdealityFailure,
    IdentityViolation,
    InputError,
    QuotientStarIllDefined,
)
from .groups import FiniteGroup, GroupMap, Subgroup, _freeze, make_subgroup, quotient
from .util import Deadline

AXIOM_NAMES = {
    1: "alternating (x*x = 1)",
    2: "right expansion over products",
    3: "left expansion over products",
    4: "twisted Jacobi product",
    5: "conjugation distributes over *",
}


@dataclass(frozen=True, eq=False)
class MultLieAlg:
    group: FiniteGroup
    star: np.ndarray

    @property
    def order(self) -> int:
        return self.group.order

    def op(self, a: int, b: int) -> int:
        return int(self.star[a, b])

    @cached_property
    def lie_defect_table(self) -> np.ndarray:
        # L[a,b] = (a*b)^-1 · [a,b]
        G = self.group
        return _freeze(G.table[G.inverses[self.star], G.comm_table])

    def lie_defect(self, a: int, b: int) -> int:
        return int(self.lie_defect_table[a, b])

    @cached_property
    def star_is_trivial(self) -> bool:
        return bool((self.star == self.group.identity).all())

    @cached_property
    def star_is_commutator(self) -> bool:
        return bool((self.star == self.group.comm_table).all())


def make_star_table(G: FiniteGroup, star) -> np.ndarray:
    arr = np.asarray(star, dtype=np.int64)
    n = G.order
    if arr.shape != (n, n):
        raise InputError(f"star table shape {arr.shape} does not match order {n}")
    if ((arr < 0) | (arr >= n)).any():
        i, j = (int(v) for v in np.argwhere((arr < 0) | (arr >= n))[0])
        raise InputError("star table entry out of range", witness=[i, j])
    return _freeze(arr.copy())


def make_trivial_star(G: FiniteGroup) -> MultLieAlg:
    return MultLieAlg(G, make_star_table(G, np.full((G.order, G.order), G.identity)))


def make_improper_star(G: FiniteGroup) -> MultLieAlg:
    return MultLieAlg(G, make_star_table(G, G.comm_table))


def _least_witness(mask_rows: Iterable[tuple[int, np.ndarray]]) -> list[int] | None:
    for x, bad in mask_rows:
        if bad.any():
            rest = np.argwhere(bad)[0]
            return [x, *(int(v) for v in rest)]
    return None


def _axiom_failures(
    M: MultLieAlg, deadline: Deadline | None = None
) -> list[tuple[int, list[int]]]:
    """All axiom numbers that fail, each with its least witness tuple."""
    G, S = M.group, M.star
    T, C, inv, e = G.table, G.conj_table, G.inverses, G.identity
    n = G.order
    out: list[tuple[int, list[int]]] = []

    d = np.diagonal(S)
    if (d != e).any():
        out.append((1, [int(np.flatnonzero(d != e)[0])]))

    def rows2():
        for x in range(n):
            if deadline:
                deadline.check("axiom scan")
            L = S[x][T]  # x*(y·z)
            R = T[S[x][:, None], C[:, S[x]]]  # (x*y) · ^y(x*z)
            yield x, L != R

    w = _least_witness(rows2())
    if w:
        out.append((2, w))

    def rows3():
        for x in range(n):
            if deadline:
                deadline.check("axiom scan")
            L = S[T[x]]  # (x·y)*z
            R = T[C[x][S], S[x][None, :]]  # ^x(y*z) · (x*z)
            yield x, L != R

    w = _least_witness(rows3())
    if w:
        out.append((3, w))

    def rows4():
        for x in range(n):
            if deadline:
                deadline.check("axiom scan")
            P1 = S[S[x][:, None], C]  # (x*y) * ^y z
            P2 = S[S, C[:, x][None, :]]  # (y*z) * ^z x
            P3 = S[S[:, x][None, :], C[x][:, None]]  # (z*x) * ^x y
            yield x, T[T[P1, P2], P3] != e

    w = _least_witness(rows4())
    if w:
        out.append((4, w))

    def rows5():
        for x in range(n):
            if deadline:
                deadline.check("axiom scan")
            L = C[:, S[x]].T  # rows indexed by y: ^z(x*y)
            R = S[C[:, x][None, :], C.T]
            yield x, (L != R).T  # witness order (x, y, z)

    w = _least_witness(rows5())
    if w:
        out.append((5, w))
    return out


def check_axioms(M: MultLieAlg, deadline: Deadline | None = None) -> None:
    """Raise AxiomViolation on the first failing axiom (least witness)."""
    fails = _axiom_failures(M, deadline)
    if fails:
        num, witness = fails[0]
        labels = [M.group.labels[i] for i in witness]
        raise AxiomViolation(
            f"axiom {num} ({AXIOM_NAMES[num]}) fails at ({', '.join(labels)})",
            axiom=num,
            witness=witness,
        )


def make_algebra(G: FiniteGroup, star, deadline: Deadline | None = None) -> MultLieAlg:
    M = MultLieAlg(G, make_star_table(G, star))
    check_axioms(M, deadline)
    return M


IDENTITY_NAMES = {
    1: "L[a,a] = 1",
    2: "L[a,b]·L[b,a] = 1",
    3: "L[ab,c] = L[a,c] · ^(^c a) L[b,c]",
    4: "L[a,bc] = ^b L[a,c] · ^[^b c, ^b a] L[a,b]",
    5: "^a L[b,c] = L[^a b, ^a c]",
    6: "L[a^-1,b] = ^(a^-1) L[b,a] and L[a,b^-1] = ^(b^-1) L[b,a]",
    7: "L[a,b] commutes with every x*y",
}


def check_lie_identities(
    M: MultLieAlg,
    only: Iterable[int] | None = None,
    deadline: Deadline | None = None,
) -> dict[int, list[int] | None]:
    """Exhaustively test the seven defect-operator identities.

    Returns {identity number: least witness or None}; raises nothing.  The
    harness turns non-None entries into failures.
    """
    G, S = M.group, M.star
    T, C, inv, e = G.table, G.conj_table, G.inverses, G.identity
    L = M.lie_defect_table
    n = G.order
    wanted = set(only) if only is not None else set(IDENTITY_NAMES)
    results: dict[int, list[int] | None] = {}

    if 1 in wanted:
        d = np.diagonal(L)
        bad = np.flatnonzero(d != e)
        results[1] = [int(bad[0])] if bad.size else None

    if 2 in wanted:
        P = T[L, L.T]
        full = np.argwhere(P != e)
        results[2] = [int(v) for v in full[0]] if full.size else None

    if 3 in wanted:
        def rows3():
            for a in range(n):
                if deadline:
                    deadline.check("identity scan")
                lhs = L[T[a]]  # entry [b, c] = L[a·b, c]
                # ^(^c a) L[b, c]: conjugate L[b, c] by C[c, a]
                conj = T[T[C[:, a][None, :], L], inv[C[:, a]][None, :]]
                rhs = T[L[a][None, :], conj]
                yield a, lhs != rhs

        results[3] = _least_witness(rows3())

    if 4 in wanted:
        def rows4():
            for a in range(n):
                if deadline:
                    deadline.check("identity scan")
                lhs = L[a][T]  # L[a, b·c] at [b, c]
                left = C[:, L[a]]  # ^b L[a, c] at [b, c]
                tw = G.comm_table[C, C[:, a][:, None]]  # [^b c, ^b a] at [b, c]
                lab = np.broadcast_to(L[a][:, None], (n, n))  # L[a, b] at [b, c]
                right = T[T[tw, lab], inv[tw]]
                yield a, lhs != T[left, right]

        results[4] = _least_witness(rows4())

    if 5 in wanted:
        def rows5():
            for a in range(n):
                if deadline:
                    deadline.check("identity scan")
                lhs = C[a][L]  # ^a L[b, c]
                rhs = L[C[a][:, None], C[a][None, :]]  # L[^a b, ^a c]
                yield a, lhs != rhs

        results[5] = _least_witness(rows5())

    if 6 in wanted:
        bad6 = None
        m1 = L[inv, :] != C[inv[:, None], L.T]  # L[a^-1, b] vs ^(a^-1) L[b, a]
        m2 = L[:, inv] != C[inv[None, :], L.T]  # L[a, b^-1] vs ^(b^-1) L[b, a]
        m = m1 | m2
        if m.any():
            a, b = (int(v) for v in np.argwhere(m)[0])
            bad6 = [a, b]
        results[6] = bad6

    if 7 in wanted:
        # distinct values suffice; recover a least witness pair afterwards
        stars = np.unique(S)
        ls = np.unique(L)
        bad7: list[int] | None = None
        for li in ls:
            if deadline:
                deadline.check("identity scan")
            wrong = G.comm_table[li, stars] != e
            if wrong.any():
                si = int(stars[np.flatnonzero(wrong)[0]])
                ai, bi = (int(v) for v in np.argwhere(L == li)[0])
                xi, yi = (int(v) for v in np.argwhere(S == si)[0])
                bad7 = [ai, bi, xi, yi]
                break
        results[7] = bad7

    return {k: results[k] for k in sorted(results)}


def assert_lie_identities(M: MultLieAlg, deadline: Deadline | None = None) -> None:
    res = check_lie_identities(M, deadline=deadline)
    for num, witness in res.items():
        if witness is not None:
            labels = [M.group.labels[i] for i in witness]
            raise IdentityViolation(
                f"defect identity {num} ({IDENTITY_NAMES[num]}) fails at ({', '.join(labels)})",
                identity=num,
                witness=witness,
            )


# ---------------------------------------------------------------------------
# ideals and series


@dataclass(frozen=True, eq=False)
class Ideal:
    algebra: MultLieAlg
    subgroup: Subgroup

    @property
    def members(self) -> frozenset[int]:
        return self.subgroup.members


def validate_ideal(M: MultLieAlg, S: Subgroup) -> Ideal:
    """Normal subgroup absorbing * from both sides."""
    G = M.group
    mem = np.fromiter(S.sorted_members, dtype=np.int64)
    out = ~np.isin(G.conj_table[:, mem], mem)
    if out.any():
        z, k = (int(v) for v in np.argwhere(out)[0])
        raise IdealityFailure(
            f"not normal: ^{G.labels[z]} {G.labels[int(mem[k])]} escapes",
            kind="normality",
            witness=[z, int(mem[k])],
        )
    out = ~np.isin(M.star[:, mem], mem)
    if out.any():
        g, k = (int(v) for v in np.argwhere(out)[0])
        raise IdealityFailure(
            f"not absorbed: {G.labels[g]} * {G.labels[int(mem[k])]} escapes",
            kind="star-right",
            witness=[g, int(mem[k])],
        )
    out = ~np.isin(M.star[mem, :], mem)
    if out.any():
        k, g = (int(v) for v in np.argwhere(out)[0])
        raise IdealityFailure(
            f"not absorbed: {G.labels[int(mem[k])]} * {G.labels[g]} escapes",
            kind="star-left",
            witness=[int(mem[k]), g],
        )
    return Ideal(M, S)


def ideal_closure(M: MultLieAlg, seed: Iterable[int]) -> Ideal:
    """Smallest subset containing the seed that passes validate_ideal."""
    G = M.group
    T, inv, C, S = G.table, G.inverses, G.conj_table, M.star
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
        fresh.update(int(v) for v in C[:, a])
        fresh.update(int(v) for v in S[:, a])
        fresh.update(int(v) for v in S[a, :])
        for v in fresh - members:
            members.add(v)
            pending.append(v)
    return Ideal(M, Subgroup(G, frozenset(members)))


def lie_commutator_ideal(M: MultLieAlg, A: Iterable[int], B: Iterable[int]) -> Ideal:
    """Ideal closure of { L[a,b] : a in A, b in B }."""
    L = M.lie_defect_table
    arrA = np.fromiter(sorted(set(A)), dtype=np.int64)
    arrB = np.fromiter(sorted(set(B)), dtype=np.int64)
    seed = np.unique(L[np.ix_(arrA, arrB)])
    return ideal_closure(M, (int(v) for v in seed))


@dataclass(frozen=True)
class SeriesReport:
    kind: str  # "derived" or "lower-central"
    terms: tuple[tuple[int, ...], ...]
    verdict: str  # "terminated-at-trivial" or "stabilized-nontrivial"
    at: int  # index of the final distinct term
    class_or_length: int | None  # None when the series stabilizes above 1

    @property
    def reached_trivial(self) -> bool:
        return self.verdict == "terminated-at-trivial"


def _run_series(
    M: MultLieAlg,
    step: Callable[[tuple[int, ...]], Ideal],
    kind: str,
    deadline: Deadline | None,
) -> SeriesReport:
    G = M.group
    terms: list[tuple[int, ...]] = [tuple(range(G.order))]
    while True:
        if deadline:
            deadline.check(f"{kind} series")
        nxt = step(terms[-1])
        ms = tuple(sorted(nxt.members))
        if ms == terms[-1]:
            if len(ms) == 1:
                # whole algebra was already trivial
                return SeriesReport(kind, tuple(terms), "terminated-at-trivial", len(terms) - 1, 0)
            return SeriesReport(kind, tuple(terms), "stabilized-nontrivial", len(terms) - 1, None)
        terms.append(ms)
        if len(ms) == 1:
            return SeriesReport(kind, tuple(terms), "terminated-at-trivial", len(terms) - 1, len(terms) - 1)


def derived_series(M: MultLieAlg, deadline: Deadline | None = None) -> SeriesReport:
    return _run_series(
        M, lambda cur: lie_commutator_ideal(M, cur, cur), "derived", deadline
    )


def lower_central_series(M: MultLieAlg, deadline: Deadline | None = None) -> SeriesReport:
    full = tuple(range(M.order))
    return _run_series(
        M, lambda cur: lie_commutator_ideal(M, full, cur), "lower-central", deadline
    )


def nilpotency_class(M: MultLieAlg, deadline: Deadline | None = None) -> int | None:
    return lower_central_series(M, deadline).class_or_length


def solvable_length(M: MultLieAlg, deadline: Deadline | None = None) -> int | None:
    return derived_series(M, deadline).class_or_length


# ---------------------------------------------------------------------------
# substructures and quotients


def sub_algebra(M: MultLieAlg, S: Subgroup) -> MultLieAlg:
    """Restrict to a subgroup closed under *; reindexes elements."""
    G = M.group
    mem = np.fromiter(S.sorted_members, dtype=np.int64)
    if not np.isin(M.star[np.ix_(mem, mem)], mem).all():
        raise InputError("subgroup is not closed under *")
    pos = {int(v): i for i, v in enumerate(mem)}
    remap = np.vectorize(pos.__getitem__, otypes=[np.int64])
    from .groups import validate_cayley

    H = validate_cayley([G.labels[int(v)] for v in mem], remap(G.table[np.ix_(mem, mem)]))
    return make_algebra(H, remap(M.star[np.ix_(mem, mem)]))


def quotient_algebra(M: MultLieAlg, I: Ideal) -> tuple[MultLieAlg, GroupMap]:
    """Quotient group with the star pushed forward; rejects ill-defined stars."""
    if I.algebra is not M:
        validate_ideal(M, I.subgroup)  # accept foreign but equivalent ideals
    Q, pi = quotient(M.group, I.subgroup)
    img = pi.image
    Sq = np.full((Q.order, Q.order), -1, dtype=np.int64)
    src = M.star
    # fill by first occurrence, then verify every occurrence agrees
    for a in range(M.order):
        qa = img[a]
        row = Sq[qa]
        vals = img[src[a]]
        cols = img
        cur = row[cols]
        fresh = cur < 0
        row[cols[fresh]] = vals[fresh]
        clash = (~fresh) & (cur != vals)
        if clash.any():
            b = int(np.flatnonzero(clash)[0])
            raise QuotientStarIllDefined(
                "star does not descend: representatives disagree",
                witness=[a, b],
            )
    # second pass: all pairs must agree with the filled table
    if (img[src] != Sq[img[:, None], img[None, :]]).any():
        a, b = (int(v) for v in np.argwhere(img[src] != Sq[img[:, None], img[None, :]])[0])
        raise QuotientStarIllDefined(
            "star does not descend: representatives disagree", witness=[a, b]
        )
    return make_algebra(Q, Sq), pi
