"""Mutual actions between two multiplicative Lie algebras.

An action of G on H is a table phi (star-preserving automorphisms of H,
multiplicative in g) plus a bracket table <g,h> into H.  Two of the four
bracket laws and several pair laws mention the reverse action, so a lone
action defers those until a companion is available; check_compatibility
re-checks everything with both actions in hand.

The mixed defect ^L[g,h] = <g,h>^-1 (^g h · h^-1) generates an ideal of H
whose elements carry witness words; the partner machinery maps those words
to elements of the mirrored ideal of G that act identically on both groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    ActionViolation,
    BoundViolation,
    CompatibilityViolation,
    IdealityFailure,
    IdentityViolation,
    InputError,
    NotAutomorphism,
    NotInIdeal,
    NotInTerm,
    WitnessRequired,
)
from .groups import FiniteGroup, Subgroup, subgroup_closure
from .mla import Ideal, MultLieAlg, nilpotency_class, solvable_length, sub_algebra, validate_ideal
from .util import CheckReport, Deadline

SIDES = ("g-on-h", "h-on-g")

BRACKET_CONDITION_NAMES = {
    1: "<x, y y'> expansion",
    2: "<x x', y> expansion",
    3: "star/bracket exchange in the first slot",
    4: "star/bracket exchange in the second slot",
}

PAIR_CONDITION_NAMES = {
    1: "group actions compose compatibly",
    2: "inverse bracket equals star against the opposite bracket",
    3: "the two brackets act inversely to each other",
    4: "actions distribute over the opposite bracket",
    5: "mixed commutator bracket equals derived-element star",
}


@dataclass(frozen=True, eq=False)
class MlaAction:
    actor: MultLieAlg
    acted: MultLieAlg
    phi: np.ndarray  # (|actor|, |acted|), phi[g] a permutation of acted
    bracket: np.ndarray  # (|actor|, |acted|) -> acted element
    deferred: tuple[int, ...] = ()  # bracket conditions awaiting a companion

    def act(self, g: int, h: int) -> int:
        return int(self.phi[g, h])

    def brk(self, g: int, h: int) -> int:
        return int(self.bracket[g, h])

    @cached_property
    def mixed_comm_table(self) -> np.ndarray:
        # [g, h] = ^g h · h^-1, an element of the acted group
        H = self.acted.group
        arr = H.table[self.phi, H.inverses[None, :]]
        arr.flags.writeable = False
        return arr

    @cached_property
    def mixed_defect_table(self) -> np.ndarray:
        # ^L[g, h] = <g,h>^-1 · (^g h · h^-1)
        H = self.acted.group
        arr = H.table[H.inverses[self.bracket], self.mixed_comm_table]
        arr.flags.writeable = False
        return arr

    @property
    def is_trivial_phi(self) -> bool:
        return bool((self.phi == np.arange(self.acted.order)[None, :]).all())

    @property
    def is_trivial_bracket(self) -> bool:
        return bool((self.bracket == self.acted.group.identity).all())


def conjugation_self_action(M: MultLieAlg, bracket) -> MlaAction:
    """Self-action by conjugation with an explicit bracket table."""
    return validate_action(M, M, M.group.conj_table, bracket)


def trivial_action(actor: MultLieAlg, acted: MultLieAlg) -> MlaAction:
    phi = np.broadcast_to(np.arange(acted.order), (actor.order, acted.order))
    bracket = np.full((actor.order, acted.order), acted.group.identity)
    return validate_action(actor, acted, phi, bracket)


def validate_action(
    actor: MultLieAlg,
    acted: MultLieAlg,
    phi,
    bracket,
    companion: MlaAction | None = None,
    deadline: Deadline | None = None,
) -> MlaAction:
    """Check the action laws; defer companion-dependent ones if alone.

    With no companion, only the bracket law whose symbols stay on one side
    (condition 2) is checkable; conditions 1, 3, 4 are recorded as deferred.
    """
    G, H = actor.group, acted.group
    phi = np.asarray(phi, dtype=np.int64)
    bracket = np.asarray(bracket, dtype=np.int64)
    shape = (G.order, H.order)
    if phi.shape != shape:
        raise InputError(f"phi table shape {phi.shape} does not match {shape}")
    if bracket.shape != shape:
        raise InputError(f"bracket table shape {bracket.shape} does not match {shape}")
    if ((phi < 0) | (phi >= H.order)).any() or ((bracket < 0) | (bracket >= H.order)).any():
        raise InputError("action table entry out of range")
    phi = phi.copy()
    bracket = bracket.copy()
    phi.flags.writeable = False
    bracket.flags.writeable = False

    idx = np.arange(H.order)
    for g in range(G.order):
        if deadline:
            deadline.check("action validation")
        p = phi[g]
        if not (np.sort(p) == idx).all():
            raise NotAutomorphism(
                f"phi[{G.labels[g]}] is not a permutation", g=g, reason="not-bijective"
            )
        if (p[H.table] != H.table[p[:, None], p[None, :]]).any():
            a, b = (int(v) for v in np.argwhere(p[H.table] != H.table[p[:, None], p[None, :]])[0])
            raise NotAutomorphism(
                f"phi[{G.labels[g]}] does not preserve the product",
                g=g,
                reason="product",
                witness=[a, b],
            )
        if (p[acted.star] != acted.star[p[:, None], p[None, :]]).any():
            a, b = (
                int(v)
                for v in np.argwhere(p[acted.star] != acted.star[p[:, None], p[None, :]])[0]
            )
            raise NotAutomorphism(
                f"phi[{G.labels[g]}] does not preserve the star",
                g=g,
                reason="star",
                witness=[a, b],
            )

    for g in range(G.order):
        lhs = phi[G.table[g]]  # phi(g·g')
        rhs = phi[g][phi]  # phi(g) after phi(g')
        if (lhs != rhs).any():
            gp, y = (int(v) for v in np.argwhere(lhs != rhs)[0])
            raise ActionViolation(
                "phi is not multiplicative in the actor",
                condition="phi-homomorphism",
                witness=[g, gp, y],
            )

    action = MlaAction(actor, acted, phi, bracket)
    hit = _bracket_condition_witness(action, None, which=(2,), deadline=deadline)
    if hit:
        cond, witness = hit
        raise ActionViolation(
            f"bracket law {cond} ({BRACKET_CONDITION_NAMES[cond]}) fails",
            condition=cond,
            witness=witness,
        )
    if companion is None:
        return MlaAction(actor, acted, phi, bracket, deferred=(1, 3, 4))
    hit = _bracket_condition_witness(action, companion, which=(1, 3, 4), deadline=deadline)
    if hit:
        cond, witness = hit
        raise ActionViolation(
            f"bracket law {cond} ({BRACKET_CONDITION_NAMES[cond]}) fails",
            condition=cond,
            witness=witness,
        )
    return action


def _bracket_condition_witness(
    act: MlaAction,
    co: MlaAction | None,
    which: Iterable[int],
    deadline: Deadline | None = None,
) -> tuple[int, list[int]] | None:
    """Least witness (x-major) of a failing bracket law, or None."""
    G, H = act.actor.group, act.acted.group
    B, P = act.bracket, act.phi
    Gs, Hs = act.actor.star, act.acted.star
    wanted = set(which)

    for x in range(G.order):
        if deadline:
            deadline.check("bracket laws")
        if 2 in wanted:
            lhs = B[G.table[x]]  # <x·x', y> at [x', y]
            rhs = H.table[B[np.ix_(G.conj_table[x], P[x])], B[x][None, :]]
            if (lhs != rhs).any():
                xp, y = (int(v) for v in np.argwhere(lhs != rhs)[0])
                return 2, [x, xp, y]
        if 1 in wanted:
            assert co is not None
            lhs = B[x][H.table]  # <x, y·y'> at [y, y']
            t = B[co.phi[:, x][:, None], H.conj_table]  # <^y x, ^y y'>
            rhs = H.table[B[x][:, None], t]
            if (lhs != rhs).any():
                y, yp = (int(v) for v in np.argwhere(lhs != rhs)[0])
                return 1, [x, y, yp]
        if 3 in wanted:
            assert co is not None
            t1 = B[Gs[x][:, None], P]  # <x*x', ^{x'}y> at [x', y]
            t2 = B[co.phi[:, x][None, :], B]  # <^y x, <x', y>>
            t3 = B[G.conj_table[x][:, None], H.inverses[B[x]][None, :]]
            prod = H.table[H.table[t1, H.inverses[t2]], H.inverses[t3]]
            if (prod != H.identity).any():
                xp, y = (int(v) for v in np.argwhere(prod != H.identity)[0])
                return 3, [x, xp, y]
        if 4 in wanted:
            assert co is not None
            u1 = B[co.phi[:, x][None, :], Hs]  # <^{y'}x, y*y'> at [y, y']
            u2 = B[G.inverses[co.bracket[:, x]][:, None], H.conj_table]
            u3 = B[co.bracket[:, x][None, :], P[x][:, None]]
            prod = H.table[H.table[u1, H.inverses[u2]], H.inverses[u3]]
            if (prod != H.identity).any():
                y, yp = (int(v) for v in np.argwhere(prod != H.identity)[0])
                return 4, [x, y, yp]
    return None


@dataclass(frozen=True, eq=False)
class CompatiblePair:
    g_on_h: MlaAction
    h_on_g: MlaAction
    flags: tuple[str, ...]  # names of the pair conditions that were verified

    @property
    def G(self) -> MultLieAlg:
        return self.g_on_h.actor

    @property
    def H(self) -> MultLieAlg:
        return self.g_on_h.acted

    def action(self, side: str) -> MlaAction:
        if side == "g-on-h":
            return self.g_on_h
        if side == "h-on-g":
            return self.h_on_g
        raise InputError(f"unknown side {side!r}; expected one of {SIDES}")

    def companion(self, side: str) -> MlaAction:
        return self.action("h-on-g" if side == "g-on-h" else "g-on-h")

    def swapped(self) -> "CompatiblePair":
        return check_compatibility(self.h_on_g, self.g_on_h)


def check_compatibility(
    g_on_h: MlaAction, h_on_g: MlaAction, deadline: Deadline | None = None
) -> CompatiblePair:
    """Verify the five pair conditions plus any deferred action laws."""
    if g_on_h.actor is not h_on_g.acted or g_on_h.acted is not h_on_g.actor:
        raise InputError("actions are not over the same pair of algebras")
    flags: list[str] = []

    for side, act, co in (("g-on-h", g_on_h, h_on_g), ("h-on-g", h_on_g, g_on_h)):
        hit = _bracket_condition_witness(act, co, which=(1, 2, 3, 4), deadline=deadline)
        if hit:
            cond, witness = hit
            raise ActionViolation(
                f"bracket law {cond} ({BRACKET_CONDITION_NAMES[cond]}) fails on {side}",
                condition=cond,
                side=side,
                witness=witness,
            )
        flags.append(f"action-laws:{side}")

    for cond in (1, 2, 3, 4, 5):
        hit = _pair_condition_witness(g_on_h, h_on_g, cond, deadline)
        if hit:
            side, witness = hit
            raise CompatibilityViolation(
                f"pair condition {cond} ({PAIR_CONDITION_NAMES[cond]}) fails on the {side} display",
                condition=cond,
                side=side,
                witness=witness,
            )
        flags.append(f"pair-condition:{cond}")

    return CompatiblePair(g_on_h, h_on_g, tuple(flags))


def check_action_laws(pair: CompatiblePair, deadline: Deadline | None = None) -> CheckReport:
    """Re-verify both actions from their raw tables: phi structure plus all
    four bracket laws, with nothing deferred."""
    tuples = 0
    for side in SIDES:
        act, co = pair.action(side), pair.companion(side)
        validate_action(act.actor, act.acted, act.phi, act.bracket, companion=co, deadline=deadline)
        na, nb = act.actor.group.order, act.acted.group.order
        tuples += na * nb + 3 * na * nb * nb + 3 * na * na * nb
    return CheckReport("action-laws", True, tuples)


def check_pair_conditions(pair: CompatiblePair, deadline: Deadline | None = None) -> CheckReport:
    """Re-verify the five mutual-compatibility laws on both displays."""
    ng, nh = pair.G.group.order, pair.H.group.order
    tuples = 0
    for cond in (1, 2, 3, 4, 5):
        hit = _pair_condition_witness(pair.g_on_h, pair.h_on_g, cond, deadline)
        if hit:
            side, witness = hit
            raise CompatibilityViolation(
                f"pair condition {cond} ({PAIR_CONDITION_NAMES[cond]}) fails on the {side} display",
                condition=cond,
                side=side,
                witness=witness,
            )
        tuples += ng * ng * nh + ng * nh * nh
    return CheckReport("pair-conditions", True, tuples)


def _pair_condition_witness(
    gh: MlaAction, hg: MlaAction, cond: int, deadline: Deadline | None
) -> tuple[str, list[int]] | None:
    """Check one pair condition, both displays; witness is (g, h, primed)."""
    G, H = gh.actor.group, gh.acted.group
    Gs, Hs = gh.actor.star, gh.acted.star

    def scan(n_a: int, n_b: int, fail_row) -> list[int] | None:
        for a in range(n_a):
            if deadline:
                deadline.check("pair conditions")
            for b in range(n_b):
                bad = fail_row(a, b)
                if bad.any():
                    return [a, b, int(np.flatnonzero(bad)[0])]
        return None

    if cond == 1:
        # ^(^g h) g' must equal acting with the word g·h·g^-1
        def on_g(g, h):
            lhs = hg.phi[gh.phi[g, h]]
            rhs = G.conj_table[g][hg.phi[h][G.conj_table[G.inv(g)]]]
            return lhs != rhs

        w = scan(G.order, H.order, on_g)
        if w:
            return "G", w

        def on_h(h, g):
            lhs = gh.phi[hg.phi[h, g]]
            rhs = H.conj_table[h][gh.phi[g][H.conj_table[H.inv(h)]]]
            return lhs != rhs

        w = scan(H.order, G.order, on_h)
        if w:
            return "H", w

    elif cond == 2:
        # <<h,g>^-1, h'> = <g,h> * h'
        def on_h(g, h):
            return gh.bracket[G.inv(hg.brk(h, g))] != Hs[gh.brk(g, h)]

        w = scan(G.order, H.order, on_h)
        if w:
            return "H", w

        def on_g(h, g):
            return hg.bracket[H.inv(gh.brk(g, h))] != Gs[hg.brk(h, g)]

        w = scan(H.order, G.order, on_g)
        if w:
            return "G", w

    elif cond == 3:
        # acting by <g,h> then <h,g> fixes everything
        def on_h(g, h):
            inner = gh.phi[hg.brk(h, g)]
            return H.conj_table[gh.brk(g, h)][inner] != np.arange(H.order)

        w = scan(G.order, H.order, on_h)
        if w:
            return "H", w

        def on_g(g, h):
            inner = G.conj_table[hg.brk(h, g)]
            return hg.phi[gh.brk(g, h)][inner] != np.arange(G.order)

        w = scan(G.order, H.order, on_g)
        if w:
            return "G", w

    elif cond == 4:
        # ^g <h,g'> = <^g h, ^g g'>
        def on_g(g, h):
            lhs = G.conj_table[g][hg.bracket[h]]
            rhs = hg.bracket[gh.phi[g, h]][G.conj_table[g]]
            return lhs != rhs

        w = scan(G.order, H.order, on_g)
        if w:
            return "G", w

        def on_h(h, g):
            lhs = H.conj_table[h][gh.bracket[g]]
            rhs = gh.bracket[hg.phi[h, g]][H.conj_table[h]]
            return lhs != rhs

        w = scan(H.order, G.order, on_h)
        if w:
            return "H", w

    elif cond == 5:
        # <g·^h g^-1, h'> = (^g h·h^-1) * h'
        def on_h(g, h):
            lhs = gh.bracket[G.mul(g, hg.phi[h, G.inv(g)])]
            rhs = Hs[gh.mixed_comm_table[g, h]]
            return lhs != rhs

        w = scan(G.order, H.order, on_h)
        if w:
            return "H", w

        def on_g(h, g):
            lhs = hg.bracket[H.mul(h, gh.phi[g, H.inv(h)])]
            rhs = Gs[hg.mixed_comm_table[h, g]]
            return lhs != rhs

        w = scan(H.order, G.order, on_g)
        if w:
            return "G", w

    else:
        raise InputError(f"no pair condition {cond}")
    return None


# ---------------------------------------------------------------------------
# the three mixed ideals


def _ideal_from_generators(M: MultLieAlg, gens: Iterable[int], what: str) -> Ideal:
    """Subgroup closure of gens, then the full ideal check; raising means the
    closure needed more than products, which the theory rules out."""
    S = subgroup_closure(M.group, gens)
    try:
        return validate_ideal(M, S)
    except IdealityFailure as exc:
        raise IdealityFailure(
            f"{what} is not an ideal before closure: {exc}", source=what, **exc.payload
        ) from exc


def derived_action_ideal(pair: CompatiblePair, side: str = "g-on-h") -> Ideal:
    """Ideal of the acted algebra generated by all ^g h · h^-1."""
    act = pair.action(side)
    gens = (int(v) for v in np.unique(act.mixed_comm_table))
    return _ideal_from_generators(act.acted, gens, f"derived-action ideal ({side})")


def bracket_ideal(pair: CompatiblePair, side: str = "g-on-h") -> Ideal:
    """Ideal of the acted algebra generated by all <g, h>."""
    act = pair.action(side)
    gens = (int(v) for v in np.unique(act.bracket))
    return _ideal_from_generators(act.acted, gens, f"bracket ideal ({side})")


# witness words: letters are ("gen", g, h, sgn) at level 0 and
# ("lie", word_u, word_v, sgn) at level k >= 1, sgn in {1, -1}

Letter = tuple
Word = tuple


@dataclass(frozen=True, eq=False)
class WitnessedIdeal:
    pair: CompatiblePair
    side: str
    level: int
    ideal: Ideal
    words: Mapping[int, Word]  # carrier element -> word over the level's letters

    @property
    def carrier(self) -> Subgroup:
        return self.ideal.subgroup

    def word_of(self, x: int) -> Word:
        try:
            return self.words[x]
        except KeyError:
            raise NotInIdeal(
                f"element {self.ideal.algebra.group.labels[x]} has no witness word",
                element=x,
                side=self.side,
                level=self.level,
            )


def _eval_letter(pair: CompatiblePair, side: str, letter: Letter, partner: bool) -> int:
    act = pair.action(side)
    co = pair.companion(side)
    K = act.actor.group if partner else act.acted.group
    kind = letter[0]
    if kind == "gen":
        _, g, h, sgn = letter
        if partner:
            # <h,g> · (g · ^h g^-1)
            val = K.mul(co.brk(h, g), K.mul(g, co.act(h, K.inv(g))))
        else:
            val = int(act.mixed_defect_table[g, h])
    elif kind == "lie":
        _, wu, wv, sgn = letter
        u = _eval_word(pair, side, wu, partner)
        v = _eval_word(pair, side, wv, partner)
        alg = act.actor if partner else act.acted
        val = alg.lie_defect(u, v)
    else:
        raise InputError(f"unknown witness letter kind {kind!r}")
    return K.inv(val) if sgn < 0 else val


def _eval_word(pair: CompatiblePair, side: str, word: Word, partner: bool) -> int:
    act = pair.action(side)
    K = act.actor.group if partner else act.acted.group
    x = K.identity
    for letter in word:
        x = K.mul(x, _eval_letter(pair, side, letter, partner))
    return x


def _bfs_words(K: FiniteGroup, letters: list[Letter], values: list[int]) -> dict[int, Word]:
    words: dict[int, Word] = {K.identity: ()}
    queue = [K.identity]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        for letter, val in zip(letters, values):
            nx = K.mul(x, val)
            if nx not in words:
                words[nx] = words[x] + (letter,)
                queue.append(nx)
    return words


def mixed_lie_ideal(pair: CompatiblePair, side: str = "g-on-h") -> WitnessedIdeal:
    """Ideal of the acted algebra generated by the defects ^L[g,h], with a
    shortest witness word stored for every carrier element."""
    act = pair.action(side)
    G, H = act.actor.group, act.acted.group
    letters: list[Letter] = []
    values: list[int] = []
    for g in range(G.order):
        for h in range(H.order):
            for sgn in (1, -1):
                letters.append(("gen", g, h, sgn))
                values.append(
                    int(act.mixed_defect_table[g, h])
                    if sgn > 0
                    else H.inv(int(act.mixed_defect_table[g, h]))
                )
    words = _bfs_words(H, letters, values)
    ideal = _ideal_from_generators(act.acted, words.keys(), f"mixed defect ideal ({side})")
    if ideal.subgroup.members != frozenset(words):
        # ideal saturation added elements beyond products of generators
        extra = sorted(ideal.subgroup.members - set(words))
        raise IdealityFailure(
            "defect generators do not span their ideal closure",
            side=side,
            unwitnessed=extra,
        )
    return WitnessedIdeal(pair, side, 0, ideal, words)


def witnessed_derived_terms(
    pair: CompatiblePair, side: str, depth: int, deadline: Deadline | None = None
) -> list[WitnessedIdeal]:
    """Terms 0..depth of the derived series of the mixed defect ideal, each
    carried with witness words over that level's defect letters."""
    terms = [mixed_lie_ideal(pair, side)]
    act = pair.action(side)
    alg = act.acted
    H = alg.group
    for level in range(1, depth + 1):
        if deadline:
            deadline.check("derived terms")
        prev = terms[-1]
        members = sorted(prev.carrier.members)
        letters: list[Letter] = []
        values: list[int] = []
        for u in members:
            for v in members:
                for sgn in (1, -1):
                    val = alg.lie_defect(u, v)
                    letters.append(("lie", prev.words[u], prev.words[v], sgn))
                    values.append(val if sgn > 0 else H.inv(val))
        words = _bfs_words(H, letters, values)
        sub = subgroup_closure(H, words.keys())
        terms.append(WitnessedIdeal(pair, side, level, Ideal(alg, sub), words))
    return terms


def partner_element(pair: CompatiblePair, side: str, word: Word) -> tuple[int, int]:
    """Evaluate a witness word and its partner: (element, partner element)."""
    return _eval_word(pair, side, word, False), _eval_word(pair, side, word, True)


def _agreement_witness(
    pair: CompatiblePair, side: str, x: int, y: int
) -> tuple[str, int] | None:
    """x (acted group) and y (actor group) must act identically on both
    groups: x via the reverse action / conjugation, y via conjugation / the
    forward action."""
    act = pair.action(side)
    co = pair.companion(side)
    G, H = act.actor.group, act.acted.group
    on_actor = co.phi[x] != G.conj_table[y]
    if on_actor.any():
        return "actor", int(np.flatnonzero(on_actor)[0])
    on_acted = H.conj_table[x] != act.phi[y]
    if on_acted.any():
        return "acted", int(np.flatnonzero(on_acted)[0])
    return None


def action_partner(pair: CompatiblePair, word: Word, side: str = "g-on-h") -> tuple[int, int, Word]:
    """Partner of a defect-ideal word: the element of the mirrored ideal
    acting identically on both groups, plus its own witness word there."""
    x, y = partner_element(pair, side, word)
    mirror_side = "h-on-g" if side == "g-on-h" else "g-on-h"
    mirror = mixed_lie_ideal(pair, mirror_side)
    if y not in mirror.words:
        raise NotInIdeal(
            "partner element falls outside the mirrored defect ideal",
            element=y,
            side=mirror_side,
        )
    bad = _agreement_witness(pair, side, x, y)
    if bad:
        where, idx = bad
        raise IdentityViolation(
            "partner does not act identically",
            side=side,
            witness=[x, y, idx],
            on=where,
        )
    return x, y, mirror.words[y]


def check_partner_generators(pair: CompatiblePair, deadline: Deadline | None = None) -> CheckReport:
    """Single-defect partners act identically on both groups (both sides)."""
    checked = 0
    for side in SIDES:
        act = pair.action(side)
        G, H = act.actor.group, act.acted.group
        for g in range(G.order):
            if deadline:
                deadline.check("partner generators")
            for h in range(H.order):
                x, y = partner_element(pair, side, (("gen", g, h, 1),))
                bad = _agreement_witness(pair, side, x, y)
                checked += G.order + H.order
                if bad:
                    where, idx = bad
                    raise IdentityViolation(
                        "generator partner does not act identically",
                        side=side,
                        witness=[g, h, idx],
                        on=where,
                    )
    return CheckReport("partner-generators", True, checked)


def check_partner_words(pair: CompatiblePair, deadline: Deadline | None = None) -> CheckReport:
    """Every witnessed element of each defect ideal has an identically
    acting partner built letter-by-letter from its word."""
    checked = 0
    for side in SIDES:
        term = mixed_lie_ideal(pair, side)
        for x in sorted(term.carrier.members):
            if deadline:
                deadline.check("partner words")
            xe, y = partner_element(pair, side, term.words[x])
            if xe != x:
                raise IdentityViolation(
                    "witness word does not evaluate to its element",
                    side=side,
                    witness=[x, xe],
                )
            bad = _agreement_witness(pair, side, x, y)
            checked += pair.G.order + pair.H.order
            if bad:
                where, idx = bad
                raise IdentityViolation(
                    "word partner does not act identically",
                    side=side,
                    witness=[x, y, idx],
                    on=where,
                )
    return CheckReport("partner-words", True, checked)


def check_partner_closure_ops(pair: CompatiblePair, deadline: Deadline | None = None) -> CheckReport:
    """Agreement survives inverses and commutators of agreeing pairs."""
    checked = 0
    for side in SIDES:
        act = pair.action(side)
        G, H = act.actor.group, act.acted.group
        term = mixed_lie_ideal(pair, side)
        pairs = [partner_element(pair, side, term.words[x]) for x in sorted(term.carrier.members)]
        for x, y in pairs:
            if deadline:
                deadline.check("partner closure")
            bad = _agreement_witness(pair, side, H.inv(x), G.inv(y))
            checked += G.order + H.order
            if bad:
                where, idx = bad
                raise IdentityViolation(
                    "inverse pair does not act identically",
                    side=side,
                    witness=[x, y, idx],
                    on=where,
                )
        for x1, y1 in pairs:
            for x2, y2 in pairs:
                if deadline:
                    deadline.check("partner closure")
                bad = _agreement_witness(pair, side, H.commutator(x1, x2), G.commutator(y1, y2))
                checked += G.order + H.order
                if bad:
                    where, idx = bad
                    raise IdentityViolation(
                        "commutator pair does not act identically",
                        side=side,
                        witness=[x1, x2, y1, y2, idx],
                        on=where,
                    )
    return CheckReport("partner-closure-ops", True, checked)


def star_to_bracket(
    pair: CompatiblePair,
    x1_word: Word | None,
    x2: int,
    level: int = 0,
    side: str = "g-on-h",
) -> int:
    """Rewrite x1 * x2 (both in the level-k defect term of the acted algebra)
    as a bracket <z, x2> with z in the mirrored level-k term; returns z."""
    if x1_word is None:
        raise WitnessRequired("star_to_bracket needs a witness word for x1")
    act = pair.action(side)
    term = witnessed_derived_terms(pair, side, level)[level]
    x1 = _eval_word(pair, side, x1_word, False)
    if x1 not in term.words:
        raise NotInIdeal(
            "x1 is not a witnessed member of the term", element=x1, level=level, side=side
        )
    if x2 not in term.carrier.members:
        raise NotInTerm("x2 is outside the term", element=x2, level=level, side=side)
    z = _eval_word(pair, side, x1_word, True)
    lhs = act.acted.op(x1, x2)
    rhs = act.brk(z, x2)  # z sits in the actor group, so the forward bracket applies
    if lhs != rhs:
        raise IdentityViolation(
            "star does not rewrite to the partner bracket",
            side=side,
            level=level,
            witness=[x1, x2, z, lhs, rhs],
        )
    return z


def check_star_to_bracket_level(
    pair: CompatiblePair, level: int, deadline: Deadline | None = None
) -> CheckReport:
    """x1 * x2 = <partner(x1), x2> over all witnessed pairs at one level."""
    checked = 0
    for side in SIDES:
        act = pair.action(side)
        terms = witnessed_derived_terms(pair, side, level, deadline)
        term = terms[level]
        members = sorted(term.carrier.members)
        for x1 in members:
            if deadline:
                deadline.check("star-to-bracket")
            z = _eval_word(pair, side, term.words[x1], True)
            for x2 in members:
                lhs = act.acted.op(x1, x2)
                rhs = act.brk(z, x2)
                checked += 1
                if lhs != rhs:
                    raise IdentityViolation(
                        "star does not rewrite to the partner bracket",
                        side=side,
                        level=level,
                        witness=[x1, x2, z, lhs, rhs],
                    )
    return CheckReport(f"star-to-bracket-level-{level}", True, checked)


def check_lie_conjugation_transfer(
    pair: CompatiblePair, deadline: Deadline | None = None
) -> CheckReport:
    """Defects of agreeing pairs act identically: ^L[x1,x2] vs ^L[y1,y2]."""
    checked = 0
    for side in SIDES:
        act = pair.action(side)
        term = mixed_lie_ideal(pair, side)
        members = sorted(term.carrier.members)
        partners = {x: _eval_word(pair, side, term.words[x], True) for x in members}
        for x1 in members:
            if deadline:
                deadline.check("conjugation transfer")
            for x2 in members:
                dx = act.acted.lie_defect(x1, x2)
                dy = act.actor.lie_defect(partners[x1], partners[x2])
                bad = _agreement_witness(pair, side, dx, dy)
                checked += pair.G.order + pair.H.order
                if bad:
                    where, idx = bad
                    raise IdentityViolation(
                        "defect pair does not act identically",
                        side=side,
                        witness=[x1, x2, idx],
                        on=where,
                    )
    return CheckReport("lie-conjugation-transfer", True, checked)


def check_bracket_conjugation(pair: CompatiblePair, deadline: Deadline | None = None) -> CheckReport:
    """Conjugating one bracket value by another equals bracketing the
    mixed-commutator conjugates, on both sides."""
    gh, hg = pair.g_on_h, pair.h_on_g
    G, H = pair.G.group, pair.H.group
    checked = 0
    for x in range(G.order):
        if deadline:
            deadline.check("bracket conjugation")
        for y in range(H.order):
            c = int(gh.mixed_comm_table[x, y])  # ^x y · y^-1 in H
            lhs = H.conj_table[gh.brk(x, y)][gh.bracket]  # over (g, h)
            rhs = gh.bracket[np.ix_(hg.phi[c], H.conj_table[c])]
            checked += lhs.size
            if (lhs != rhs).any():
                g, h = (int(v) for v in np.argwhere(lhs != rhs)[0])
                raise IdentityViolation(
                    "bracket conjugation fails on the H display",
                    side="g-on-h",
                    witness=[x, y, g, h],
                )
    for y in range(H.order):
        if deadline:
            deadline.check("bracket conjugation")
        for x in range(G.order):
            d = int(hg.mixed_comm_table[y, x])  # ^y x · x^-1 in G
            lhs = G.conj_table[hg.brk(y, x)][hg.bracket]  # over (h, g)
            rhs = hg.bracket[np.ix_(gh.phi[d], G.conj_table[d])]
            checked += lhs.size
            if (lhs != rhs).any():
                h, g = (int(v) for v in np.argwhere(lhs != rhs)[0])
                raise IdentityViolation(
                    "bracket conjugation fails on the G display",
                    side="h-on-g",
                    witness=[y, x, h, g],
                )
    return CheckReport("bracket-conjugation", True, checked)


def check_lemma_commutator_bracket(
    pair: CompatiblePair, deadline: Deadline | None = None
) -> CheckReport:
    """[<g,h>, h'] = <g·^h g^-1, h'> = (^g h·h^-1) * h', and mirrored."""
    checked = 0
    for side in SIDES:
        act = pair.action(side)
        co = pair.companion(side)
        G, H = act.actor.group, act.acted.group
        for g in range(G.order):
            if deadline:
                deadline.check("commutator bracket")
            for h in range(H.order):
                left = H.comm_table[act.brk(g, h)]  # [<g,h>, h'] over h'
                mid = act.bracket[G.mul(g, co.act(h, G.inv(g)))]
                right = act.acted.star[int(act.mixed_comm_table[g, h])]
                checked += H.order
                neq = (left != mid) | (mid != right)
                if neq.any():
                    hp = int(np.flatnonzero(neq)[0])
                    raise IdentityViolation(
                        "commutator/bracket/star chain breaks",
                        side=side,
                        witness=[g, h, hp],
                    )
    return CheckReport("commutator-bracket-chain", True, checked)


def check_defect_centralizes_bracket_ideal(
    pair: CompatiblePair, deadline: Deadline | None = None
) -> CheckReport:
    """Every defect-ideal element group-commutes with the bracket ideal."""
    checked = 0
    for side in SIDES:
        act = pair.action(side)
        H = act.acted.group
        defects = sorted(mixed_lie_ideal(pair, side).carrier.members)
        brk = np.fromiter(sorted(bracket_ideal(pair, side).subgroup.members), dtype=np.int64)
        for a in defects:
            if deadline:
                deadline.check("defect centralizer")
            bad = H.comm_table[a, brk] != H.identity
            checked += brk.size
            if bad.any():
                b = int(brk[np.flatnonzero(bad)[0]])
                raise IdentityViolation(
                    "defect element fails to commute with a bracket element",
                    side=side,
                    witness=[a, b],
                )
    return CheckReport("defect-centralizes-bracket-ideal", True, checked)


def check_defect_fixes_opposite_bracket_ideal(
    pair: CompatiblePair, deadline: Deadline | None = None
) -> CheckReport:
    """Defect-ideal elements act trivially on the opposite bracket ideal."""
    checked = 0
    for side in SIDES:
        act = pair.action(side)
        co = pair.companion(side)
        defects = sorted(mixed_lie_ideal(pair, side).carrier.members)
        mirror_side = "h-on-g" if side == "g-on-h" else "g-on-h"
        opp = np.fromiter(
            sorted(bracket_ideal(pair, mirror_side).subgroup.members), dtype=np.int64
        )
        for a in defects:
            if deadline:
                deadline.check("defect fixes opposite")
            bad = co.phi[a, opp] != opp
            checked += opp.size
            if bad.any():
                b = int(opp[np.flatnonzero(bad)[0]])
                raise IdentityViolation(
                    "defect element moves an opposite bracket element",
                    side=side,
                    witness=[a, b],
                )
    return CheckReport("defect-fixes-opposite-bracket-ideal", True, checked)


@dataclass(frozen=True)
class TransferBounds:
    cl_gh: int | None
    cl_hg: int | None
    l_gh: int | None
    l_hg: int | None


def check_transfer_bounds(pair: CompatiblePair, deadline: Deadline | None = None) -> CheckReport:
    """Nilpotency class / solvable length transfer between the two defect
    ideals with slack one, in both directions."""
    subs = {}
    for side in SIDES:
        act = pair.action(side)
        subs[side] = sub_algebra(act.acted, mixed_lie_ideal(pair, side).carrier)
    cl = {side: nilpotency_class(subs[side], deadline) for side in SIDES}
    ln = {side: solvable_length(subs[side], deadline) for side in SIDES}
    bounds = TransferBounds(cl["g-on-h"], cl["h-on-g"], ln["g-on-h"], ln["h-on-g"])

    def demand(kind: str, a_side: str, b_side: str, vals: dict) -> None:
        a, b = vals[a_side], vals[b_side]
        if a is None:
            return
        if b is None or b > a + 1:
            raise BoundViolation(
                f"{kind} transfer bound fails: {b_side} vs {a_side}+1",
                kind=kind,
                from_side=a_side,
                to_side=b_side,
                values=[a, b],
            )

    for a_side, b_side in (("g-on-h", "h-on-g"), ("h-on-g", "g-on-h")):
        demand("class", a_side, b_side, cl)
        demand("length", a_side, b_side, ln)
    detail = (
        f"cl(defect g-on-h)={bounds.cl_gh} cl(defect h-on-g)={bounds.cl_hg} "
        f"l(defect g-on-h)={bounds.l_gh} l(defect h-on-g)={bounds.l_hg}"
    )
    return CheckReport("transfer-bounds", True, 4, detail=detail)
