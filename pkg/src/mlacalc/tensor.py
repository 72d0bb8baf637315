"""Tensor product of a compatible pair, realized as a concrete algebra.

Pipeline: instantiate the defining relations of the pairing over all element
tuples, enumerate the presented group, extend the star from its generator
seed along normal-form words, then validate the algebra axioms.  Axiom or
seed failures are converted into new group relators and the construction
reruns, a fixpoint loop with a round cap.  Induced actions of both factors,
the identity suites, and the quotient bounds live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .actions import CompatiblePair, bracket_ideal, mixed_lie_ideal
from .coset import (
    DEFAULT_MAX_COSETS,
    EnumerationResult,
    EnumerationStats,
    Presentation,
    coset_enumerate,
    make_presentation,
)
from .errors import (
    BoundViolation,
    IdentityViolation,
    Inapplicable,
    InducedActionIllDefined,
    InputError,
    PreconditionFailed,
    StarInconsistent,
)
from .groups import FiniteGroup, Subgroup, make_subgroup, subgroup_closure, validate_cayley
from .mla import (
    Ideal,
    MultLieAlg,
    lie_commutator_ideal,
    make_algebra,
    make_trivial_star,
    nilpotency_class,
    quotient_algebra,
    solvable_length,
    validate_ideal,
)
from .util import CheckReport, Deadline

DEFAULT_MAX_ROUNDS = 8
SEED_ORDERS = ("default", "alt")

# new relators admitted per fixpoint round; keeps presentations readable
RELATOR_BATCH = 256

TENSOR_IDENTITY_NAMES = {
    1: "identity slots vanish",
    2: "inverse transport",
    3: "conjugation by a generator",
    4: "right twist difference",
    5: "left twist difference",
    6: "commutator of generators",
}


@dataclass(frozen=True, eq=False)
class TensorAlgebra:
    algebra: MultLieAlg
    pair: CompatiblePair
    tensor_map: np.ndarray  # (|G|, |H|) -> element of algebra
    result: EnumerationResult
    seed_order: str
    rounds: int
    extra_relators: tuple[tuple[int, ...], ...]
    act_g: np.ndarray | None = None  # (|G|, |K|) permutation rows
    act_h: np.ndarray | None = None

    @property
    def group(self) -> FiniteGroup:
        return self.algebra.group

    @property
    def order(self) -> int:
        return self.algebra.order

    def sym(self, g: int, h: int) -> int:
        return int(self.tensor_map[g, h])

    def _require_actions(self) -> tuple[np.ndarray, np.ndarray]:
        if self.act_g is None or self.act_h is None:
            raise InputError("induced actions have not been installed yet")
        return self.act_g, self.act_h


def _pair_labels(pair: CompatiblePair) -> list[str]:
    G, H = pair.G.group, pair.H.group
    return [f"({G.label(g)}⊗{H.label(h)})" for g in range(G.order) for h in range(H.order)]


def build_tensor_presentation(pair: CompatiblePair) -> Presentation:
    """Relator instantiations of the four defining relations over all tuples."""
    act, co = pair.g_on_h, pair.h_on_g
    G, H = pair.G.group, pair.H.group
    ng, nh = G.order, H.order
    TG, TH = G.table, H.table
    CG, CH = G.conj_table, H.conj_table
    SG, SH = pair.G.star, pair.H.star
    aphi, abrk = act.phi, act.bracket
    cphi, cbrk = co.phi, co.bracket

    def idx(a, b):
        return a * nh + b

    rows = []

    # x ⊗ (y y') = (x ⊗ y) · (^y x ⊗ ^y y')   over (x, y, y')
    a = idx(np.arange(ng)[:, None, None], TH[None, :, :])
    b = np.broadcast_to(idx(np.arange(ng)[:, None, None], np.arange(nh)[None, :, None]), a.shape)
    c = idx(cphi.T[:, :, None], CH[None, :, :])
    rows.append(np.stack([-(a + 1), b + 1, c + 1], axis=-1).reshape(-1, 3))

    # (x x') ⊗ y = (^x x' ⊗ ^x y) · (x ⊗ y)   over (x, x', y)
    a = idx(TG[:, :, None], np.arange(nh)[None, None, :])
    b = idx(CG[:, :, None], aphi[:, None, :])
    c = np.broadcast_to(idx(np.arange(ng)[:, None, None], np.arange(nh)[None, None, :]), a.shape)
    rows.append(np.stack([-(a + 1), b + 1, c + 1], axis=-1).reshape(-1, 3))

    # ((x⋆x') ⊗ ^{x'}y) · (^y x ⊗ ⟨x',y⟩)⁻¹ · (^x x' ⊗ ⟨x,y⟩⁻¹)⁻¹ = 1   over (x, x', y)
    a = idx(SG[:, :, None], aphi[None, :, :])
    b = idx(cphi.T[:, None, :], abrk[None, :, :])
    c = idx(CG[:, :, None], H.inverses[abrk][:, None, :])
    rows.append(np.stack([a + 1, -(b + 1), -(c + 1)], axis=-1).reshape(-1, 3))

    # (^{y'}x ⊗ (y⋆y')) · (⟨y,x⟩⁻¹ ⊗ ^y y')⁻¹ · (⟨y',x⟩ ⊗ ^x y)⁻¹ = 1   over (x, y, y')
    a = idx(cphi.T[:, None, :], SH[None, :, :])
    b = idx(G.inverses[cbrk].T[:, :, None], CH[None, :, :])
    c = idx(cbrk.T[:, None, :], aphi[:, :, None])
    rows.append(np.stack([a + 1, -(b + 1), -(c + 1)], axis=-1).reshape(-1, 3))

    relators = [tuple(int(e) for e in row) for row in np.concatenate(rows)]
    return make_presentation(_pair_labels(pair), relators)


def star_seed_indices(pair: CompatiblePair) -> np.ndarray:
    """Generator-pair star values (x⊗y)⋆(x'⊗y') = ⟨y,x⟩⁻¹ ⊗ ⟨x',y'⟩, as generator indices."""
    G, H = pair.G.group, pair.H.group
    nh = H.order
    first = G.inverses[pair.h_on_g.bracket].T.reshape(-1)
    second = pair.g_on_h.bracket.reshape(-1)
    return first[:, None] * nh + second[None, :]


def _letter_order(ngen: int, seed_order: str) -> range:
    if seed_order == "default":
        return range(ngen)
    if seed_order == "alt":
        return range(ngen - 1, -1, -1)
    raise InputError(f"unknown seed order {seed_order!r}; expected one of {SEED_ORDERS}")


def _normal_forms(K: FiniteGroup, images: np.ndarray, seed_order: str):
    """Right-append BFS words over generator images.

    Returns (parent, letter, order): element i != identity satisfies
    i = parent[i] · images[letter[i]], and `order` lists elements with every
    parent before its children.
    """
    n = K.order
    parent = np.full(n, -1, dtype=np.int64)
    letter = np.full(n, -1, dtype=np.int64)
    order = [int(K.identity)]
    parent[K.identity] = K.identity
    qi = 0
    letters = list(_letter_order(len(images), seed_order))
    while qi < len(order):
        cur = order[qi]
        qi += 1
        for a in letters:
            nx = int(K.table[cur, images[a]])
            if parent[nx] < 0:
                parent[nx] = cur
                letter[nx] = a
                order.append(nx)
    if len(order) != n:
        raise InputError("generator images do not generate the enumerated group")
    return parent, letter, order


def _extend_star(
    K: FiniteGroup,
    images: np.ndarray,
    seed_elem: np.ndarray,
    seed_order: str,
) -> np.ndarray:
    """Star on all of K from the generator seed, by peeling normal-form words."""
    parent, letter, order = _normal_forms(K, images, seed_order)
    T, C = K.table, K.conj_table
    e = K.identity
    ngen = len(images)
    n = K.order

    # a ⋆ v for each generator symbol a, peeling the last letter of v:
    # a ⋆ (q·w) = (a ⋆ q) · ^q(a ⋆ w)
    genrows = np.empty((ngen, n), dtype=np.int64)
    genrows[:, e] = e
    for v in order[1:]:
        q, b = parent[v], letter[v]
        genrows[:, v] = T[genrows[:, q], C[q, seed_elem[:, b]]]

    # u ⋆ v peeling the last letter of u: (q·w) ⋆ v = ^q(w ⋆ v) · (q ⋆ v)
    star = np.empty((n, n), dtype=np.int64)
    star[e, :] = e
    for u in order[1:]:
        q, b = parent[u], letter[u]
        star[u, :] = T[C[q, genrows[b]], star[q, :]]
    return star


def _collect(out: list[np.ndarray], lhs: np.ndarray, rhs: np.ndarray, K: FiniteGroup) -> None:
    mask = lhs != rhs
    if mask.any():
        out.append(K.table[lhs[mask], K.inverses[rhs[mask]]])


def _violation_elements(
    K: FiniteGroup,
    S: np.ndarray,
    images: np.ndarray,
    seed_elem: np.ndarray,
    deadline: Deadline | None,
) -> np.ndarray:
    """Elements that the axioms or the generator seed force to be trivial."""
    T, C, inv, e = K.table, K.conj_table, K.inverses, K.identity
    n = K.order
    out: list[np.ndarray] = []

    _collect(out, S[images[:, None], images[None, :]], seed_elem, K)

    diag = S[np.arange(n), np.arange(n)]
    if (diag != e).any():
        out.append(diag[diag != e])

    for x in range(n):
        if deadline:
            deadline.check("tensor star validation")
        _collect(out, S[x][T], T[S[x][:, None], C[:, S[x]]], K)
        _collect(out, S[T[x]], T[C[x][S], S[x][None, :]], K)
        p1 = S[S[x][:, None], C]
        p2 = S[S, C[:, x][None, :]]
        p3 = S[S[:, x][None, :], C[x][:, None]]
        prod = T[T[p1, p2], p3]
        if (prod != e).any():
            out.append(prod[prod != e])
        _collect(out, C[x][S], S[C[x][:, None], C[x][None, :]], K)

    if not out:
        return np.empty(0, dtype=np.int64)
    bad = np.unique(np.concatenate(out))
    return bad[bad != e][:RELATOR_BATCH]


def _word_of(parent: np.ndarray, letter: np.ndarray, identity: int, v: int) -> tuple[int, ...]:
    rev = []
    while v != identity:
        rev.append(int(letter[v]))
        v = int(parent[v])
    return tuple(reversed(rev))


def induce_star(
    result: EnumerationResult,
    pair: CompatiblePair,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    max_cosets: int = DEFAULT_MAX_COSETS,
    seed_order: str = "default",
    deadline: Deadline | None = None,
) -> TensorAlgebra:
    """Extend the generator star seed to the whole group, rerunning enumeration
    with any relators the axioms force, until the construction stabilizes."""
    if max_rounds < 1:
        raise InputError("max_rounds must be at least 1")
    _letter_order(1, seed_order)  # validates the flag
    seed_idx = star_seed_indices(pair)
    ng, nh = pair.G.order, pair.H.order
    base_count = len(result.presentation.relators)
    res = result
    for round_no in range(1, max_rounds + 1):
        if deadline:
            deadline.check("tensor star fixpoint")
        K = res.group
        images = res.gen_image
        seed_elem = images[seed_idx]
        star = _extend_star(K, images, seed_elem, seed_order)
        bad = _violation_elements(K, star, images, seed_elem, deadline)
        if bad.size == 0:
            alg = make_algebra(K, star, deadline)
            extra = res.presentation.relators[base_count:]
            return TensorAlgebra(
                alg, pair, images.reshape(ng, nh).copy(), res, seed_order, round_no, extra
            )
        if round_no == max_rounds:
            raise StarInconsistent(
                f"star extension did not stabilize within {max_rounds} rounds",
                rounds=max_rounds,
                pending=int(bad.size),
                order=int(K.order),
            )
        parent, letter, _ = _normal_forms(K, images, seed_order)
        new_rels = [
            tuple(b + 1 for b in _word_of(parent, letter, int(K.identity), int(v)))
            for v in bad
        ]
        pres = make_presentation(
            res.presentation.generator_labels, res.presentation.relators + tuple(new_rels)
        )
        res = coset_enumerate(pres, max_cosets, deadline)
    raise AssertionError("unreachable")


def _extend_hom(
    K: FiniteGroup,
    gen_targets: np.ndarray,
    parent: np.ndarray,
    letter: np.ndarray,
    order: list[int],
) -> np.ndarray:
    row = np.empty(K.order, dtype=np.int64)
    row[K.identity] = K.identity
    for v in order[1:]:
        row[v] = K.table[row[parent[v]], gen_targets[letter[v]]]
    return row


def induce_actions(t: TensorAlgebra, deadline: Deadline | None = None) -> TensorAlgebra:
    """Install the factor actions ^g(x⊗y) = (^g x ⊗ ^g y), ^h(x⊗y) = (^h x ⊗ ^h y)."""
    pair = t.pair
    act, co = pair.g_on_h, pair.h_on_g
    G, H = pair.G.group, pair.H.group
    K = t.group
    S = t.algebra.star
    parent, letter, order = _normal_forms(K, t.result.gen_image, t.seed_order)
    tmap = t.tensor_map

    def build(side: str, m: int, targets_of) -> np.ndarray:
        rows = np.empty((m, K.order), dtype=np.int64)
        for a in range(m):
            if deadline:
                deadline.check("induced actions")
            row = _extend_hom(K, targets_of(a), parent, letter, order)
            if (np.sort(row) != np.arange(K.order)).any():
                raise InducedActionIllDefined(
                    f"induced map of {side} element {a} is not a bijection", side=side, element=a
                )
            if (row[K.table] != K.table[row[:, None], row[None, :]]).any():
                bad = np.argwhere(row[K.table] != K.table[row[:, None], row[None, :]])[0]
                raise InducedActionIllDefined(
                    f"induced map of {side} element {a} breaks multiplication",
                    side=side,
                    element=a,
                    witness=tuple(int(w) for w in bad),
                )
            if (row[S] != S[row[:, None], row[None, :]]).any():
                bad = np.argwhere(row[S] != S[row[:, None], row[None, :]])[0]
                raise InducedActionIllDefined(
                    f"induced map of {side} element {a} breaks the star",
                    side=side,
                    element=a,
                    witness=tuple(int(w) for w in bad),
                )
            rows[a] = row
        return rows

    act_g = build("left-factor", G.order, lambda g: tmap[G.conj_table[g]][
        np.arange(G.order)[:, None], act.phi[g][None, :]
    ].reshape(-1))
    act_h = build("right-factor", H.order, lambda h: tmap[co.phi[h]][
        np.arange(G.order)[:, None], H.conj_table[h][None, :]
    ].reshape(-1))

    for side, group, rows in (("left-factor", G, act_g), ("right-factor", H, act_h)):
        # the maps must compose as a group action: rows[a·b] == rows[a] ∘ rows[b]
        lhs = rows[group.table]
        rhs = rows[:, rows]
        if (lhs != rhs).any():
            bad = np.argwhere((lhs != rhs).any(axis=2))[0]
            raise InducedActionIllDefined(
                f"{side} images do not compose as a group action",
                side=side,
                witness=tuple(int(w) for w in bad),
            )

    return replace(t, act_g=act_g, act_h=act_h)


def check_defining_relations(t: TensorAlgebra, deadline: Deadline | None = None) -> CheckReport:
    """All four defining relations, re-evaluated directly on the symbol table."""
    pair = t.pair
    act, co = pair.g_on_h, pair.h_on_g
    G, H = pair.G.group, pair.H.group
    K = t.group
    T = K.table
    tm = t.tensor_map
    checked = 0

    lhs = tm[:, H.table]
    rhs = T[tm[:, :, None], tm[co.phi.T[:, :, None], H.conj_table[None, :, :]]]
    checked += lhs.size
    if (lhs != rhs).any():
        w = np.argwhere(lhs != rhs)[0]
        return CheckReport("tensor-defining-relations", False, checked, tuple(int(v) for v in w), "product in the right slot")

    lhs = tm[G.table]
    rhs = T[
        tm[G.conj_table[:, :, None], act.phi[:, None, :]],
        np.broadcast_to(tm[:, None, :], (G.order, G.order, H.order)),
    ]
    checked += lhs.size
    if (lhs != rhs).any():
        w = np.argwhere(lhs != rhs)[0]
        return CheckReport("tensor-defining-relations", False, checked, tuple(int(v) for v in w), "product in the left slot")

    SG, SH = pair.G.star, pair.H.star
    a = tm[SG[:, :, None], act.phi[None, :, :]]
    b = tm[co.phi.T[:, None, :], act.bracket[None, :, :]]
    c = tm[G.conj_table[:, :, None], H.inverses[act.bracket][:, None, :]]
    prod = T[T[a, K.inverses[b]], K.inverses[c]]
    checked += prod.size
    if (prod != K.identity).any():
        w = np.argwhere(prod != K.identity)[0]
        return CheckReport("tensor-defining-relations", False, checked, tuple(int(v) for v in w), "left star relation")

    a = tm[co.phi.T[:, None, :], SH[None, :, :]]
    b = tm[G.inverses[co.bracket].T[:, :, None], H.conj_table[None, :, :]]
    c = tm[co.bracket.T[:, None, :], act.phi[:, :, None]]
    prod = T[T[a, K.inverses[b]], K.inverses[c]]
    checked += prod.size
    if (prod != K.identity).any():
        w = np.argwhere(prod != K.identity)[0]
        return CheckReport("tensor-defining-relations", False, checked, tuple(int(v) for v in w), "right star relation")

    seed = t.result.gen_image[star_seed_indices(pair)]
    img = t.result.gen_image
    lhs = t.algebra.star[img[:, None], img[None, :]]
    checked += lhs.size
    if (lhs != seed).any():
        w = np.argwhere(lhs != seed)[0]
        return CheckReport("tensor-defining-relations", False, checked, tuple(int(v) for v in w), "star seed")

    return CheckReport("tensor-defining-relations", True, checked)


def check_induced_action_formulas(t: TensorAlgebra, deadline: Deadline | None = None) -> CheckReport:
    """Induced actions restricted to symbols match the coordinatewise formulas."""
    act_g, act_h = t._require_actions()
    pair = t.pair
    G, H = pair.G.group, pair.H.group
    tm = t.tensor_map
    checked = 0
    lhs = act_g[:, tm]  # (g, x, y)
    rhs = tm[G.conj_table[:, :, None], pair.g_on_h.phi[:, None, :]]
    checked += lhs.size
    if (lhs != rhs).any():
        w = np.argwhere(lhs != rhs)[0]
        return CheckReport("induced-action-formulas", False, checked, tuple(int(v) for v in w), "left factor")
    lhs = act_h[:, tm]  # (h, x, y)
    rhs = tm[pair.h_on_g.phi[:, :, None], H.conj_table[:, None, :]]
    checked += lhs.size
    if (lhs != rhs).any():
        w = np.argwhere(lhs != rhs)[0]
        return CheckReport("induced-action-formulas", False, checked, tuple(int(v) for v in w), "right factor")
    return CheckReport("induced-action-formulas", True, checked)


def check_tensor_identities(
    t: TensorAlgebra,
    only: int | None = None,
    deadline: Deadline | None = None,
) -> dict[int, CheckReport]:
    """The six symbol identities; conjugation superscripts act through the
    induced actions, mixed commutators read [x,y] = ^x y·y⁻¹."""
    act_g, act_h = t._require_actions()
    pair = t.pair
    act, co = pair.g_on_h, pair.h_on_g
    G, H = pair.G.group, pair.H.group
    K = t.group
    T, inv = K.table, K.inverses
    tm = t.tensor_map
    ng, nh = G.order, H.order
    gslot = G.table[np.arange(ng)[:, None], G.inverses[co.phi.T]]  # g·(^h g)⁻¹
    hslot = act.mixed_comm_table  # ^g h·h⁻¹
    which = [only] if only is not None else sorted(TENSOR_IDENTITY_NAMES)
    out: dict[int, CheckReport] = {}

    for k in which:
        if k not in TENSOR_IDENTITY_NAMES:
            raise InputError(f"unknown tensor identity {k}")
        name = f"tensor-identity-{k}"
        witness: tuple[int, ...] | None = None
        checked = 0
        if k == 1:
            checked = ng + nh
            bad_h = np.nonzero(tm[G.identity, :] != K.identity)[0]
            bad_g = np.nonzero(tm[:, H.identity] != K.identity)[0]
            if bad_h.size:
                witness = (int(G.identity), int(bad_h[0]))
            elif bad_g.size:
                witness = (int(bad_g[0]), int(H.identity))
        elif k == 2:
            lhs = inv[tm]
            r1 = act_g[np.arange(ng)[:, None], tm[G.inverses, :]]
            r2 = act_h[np.arange(nh)[None, :], tm[:, H.inverses]]
            checked = 2 * tm.size
            mask = (lhs != r1) | (lhs != r2)
            if mask.any():
                witness = tuple(int(v) for v in np.argwhere(mask)[0])
        elif k == 3:
            checked = ng * nh * K.order
            for g in range(ng):
                if deadline:
                    deadline.check(name)
                lhs = K.conj_table[tm[g]]
                rhs = act_h[hslot[g]]
                if (lhs != rhs).any():
                    h, x = np.argwhere(lhs != rhs)[0]
                    witness = (g, int(h), int(x))
                    break
        elif k == 4:
            checked = ng * nh * nh
            for g in range(ng):
                if deadline:
                    deadline.check(name)
                tt = tm[g]
                lhs = tm[gslot[g]]  # (h, h') via broadcast below
                rhs = T[tt[:, None], act_h[:, inv[tt]].T]
                if (lhs != rhs).any():
                    h, hp = np.argwhere(lhs != rhs)[0]
                    witness = (g, int(h), int(hp))
                    break
        elif k == 5:
            checked = ng * nh * ng
            for g in range(ng):
                if deadline:
                    deadline.check(name)
                tt = tm[g]
                lhs = tm[:, hslot[g]]  # (g', h)
                rhs = T[act_g[:, tt], inv[tt][None, :]]
                if (lhs != rhs).any():
                    gp, h = np.argwhere(lhs != rhs)[0]
                    witness = (g, int(h), int(gp))
                    break
        elif k == 6:
            checked = (ng * nh) ** 2
            for g in range(ng):
                if deadline:
                    deadline.check(name)
                for h in range(nh):
                    lhs = K.comm_table[tm[g, h]][tm]
                    rhs = tm[gslot[g, h]][hslot]
                    if (lhs != rhs).any():
                        gp, hp = np.argwhere(lhs != rhs)[0]
                        witness = (g, h, int(gp), int(hp))
                        break
                if witness:
                    break
        out[k] = CheckReport(name, witness is None, checked, witness, TENSOR_IDENTITY_NAMES[k])
    return out


def assert_tensor_identities(t: TensorAlgebra, deadline: Deadline | None = None) -> None:
    for k, rep in check_tensor_identities(t, deadline=deadline).items():
        if not rep.passed:
            raise IdentityViolation(
                f"tensor identity {k} ({TENSOR_IDENTITY_NAMES[k]}) fails",
                which=k,
                witness=rep.witness,
            )


def check_tensor_lie_commutator(t: TensorAlgebra, deadline: Deadline | None = None) -> CheckReport:
    """Closed form of the star defect between two symbols: a conjugated
    bracket-defect symbol times two defect-slot symbols."""
    act_g, act_h = t._require_actions()
    pair = t.pair
    act, co = pair.g_on_h, pair.h_on_g
    G, H = pair.G.group, pair.H.group
    K = t.group
    T = K.table
    D = t.algebra.lie_defect_table
    tm = t.tensor_map
    ng, nh = G.order, H.order
    dh = act.mixed_defect_table  # ^L[g', h'] over (g', h')
    bh = act.bracket
    checked = 0
    for g in range(ng):
        if deadline:
            deadline.check("tensor-lie-commutator")
        for h in range(nh):
            dg = int(co.mixed_defect_table[h, g])  # ^L[h, g]
            bg = int(co.bracket[h, g])
            f1 = tm[G.inverses[bg]][dh]
            f2 = tm[G.inverses[dg]][bh]
            f3 = tm[G.inverses[dg]][dh]
            pref = act_g[G.inverses[dg]][act_h[bh, f1]]
            rhs = T[T[pref, f2], f3]
            lhs = D[tm[g, h]][tm]
            checked += lhs.size
            if (lhs != rhs).any():
                gp, hp = np.argwhere(lhs != rhs)[0]
                return CheckReport(
                    "tensor-lie-commutator", False, checked, (g, h, int(gp), int(hp))
                )
    return CheckReport("tensor-lie-commutator", True, checked)


def tensor_ideal(
    t: TensorAlgebra,
    I: Subgroup,
    J: Subgroup,
    deadline: Deadline | None = None,
) -> Ideal:
    """Ideal generated by the symbols over I×J; the factor subgroups must be
    ideals, each invariant under the other factor's group action."""
    pair = t.pair
    G, H = pair.G.group, pair.H.group
    if I.parent is not G or J.parent is not H:
        raise InputError("factor subgroups must live in the pair's groups")
    for name, alg, sub in (("left", pair.G, I), ("right", pair.H, J)):
        try:
            validate_ideal(alg, sub)
        except Exception as ex:  # noqa: BLE001 - rewrapped with context
            raise PreconditionFailed(
                f"{name} subgroup is not an ideal of its factor", which=f"{name}-ideal"
            ) from ex
    mem_i = np.fromiter(I.sorted_members, dtype=np.int64)
    mem_j = np.fromiter(J.sorted_members, dtype=np.int64)
    hit = pair.h_on_g.phi[:, mem_i]
    ok = np.isin(hit, mem_i)
    if not ok.all():
        h, a = np.argwhere(~ok)[0]
        raise PreconditionFailed(
            "left ideal is not invariant under the right factor's action",
            which="left-invariance",
            witness=(int(h), int(mem_i[a])),
        )
    hit = pair.g_on_h.phi[:, mem_j]
    ok = np.isin(hit, mem_j)
    if not ok.all():
        g, b = np.argwhere(~ok)[0]
        raise PreconditionFailed(
            "right ideal is not invariant under the left factor's action",
            which="right-invariance",
            witness=(int(g), int(mem_j[b])),
        )
    gens = np.unique(t.tensor_map[np.ix_(mem_i, mem_j)])
    S = subgroup_closure(t.group, (int(x) for x in gens))
    return validate_ideal(t.algebra, S)


def _is_self_star_pair(pair: CompatiblePair) -> bool:
    act, co = pair.g_on_h, pair.h_on_g
    if act.actor is not act.acted:
        return False
    M = act.actor
    for a in (act, co):
        if (a.phi != M.group.conj_table).any() or (a.bracket != M.star).any():
            return False
    return True


def _nilpotency_quotient(t: TensorAlgebra, deadline: Deadline | None) -> tuple[MultLieAlg, Ideal]:
    I = mixed_lie_ideal(t.pair, side="h-on-g").carrier
    J = bracket_ideal(t.pair, side="g-on-h").subgroup
    ideal = tensor_ideal(t, I, J, deadline)
    Q, _ = quotient_algebra(t.algebra, ideal)
    return Q, ideal


def quotient_nilpotency_bound(t: TensorAlgebra, deadline: Deadline | None = None) -> CheckReport:
    """Quotient by (defect ideal of the right-on-left action) ⊗ (bracket ideal):
    its class exceeds the right factor's class by at most one."""
    n = nilpotency_class(t.pair.H, deadline)
    if n is None:
        raise Inapplicable("the right factor is not Lie nilpotent")
    Q, ideal = _nilpotency_quotient(t, deadline)
    q = nilpotency_class(Q, deadline)
    if q is None or q > n + 1:
        raise BoundViolation(
            "tensor quotient exceeds the nilpotency bound",
            claimed=n + 1,
            computed=q,
            ideal_order=len(ideal.members),
        )
    return CheckReport(
        "tensor-quotient-nilpotency", True, Q.order, None, f"class {q} <= {n}+1"
    )


def quotient_solvability_bound(t: TensorAlgebra, deadline: Deadline | None = None) -> CheckReport:
    n = solvable_length(t.pair.H, deadline)
    if n is None:
        raise Inapplicable("the right factor is not Lie solvable")
    Q, ideal = _nilpotency_quotient(t, deadline)
    q = solvable_length(Q, deadline)
    if q is None or q > n + 1:
        raise BoundViolation(
            "tensor quotient exceeds the solvability bound",
            claimed=n + 1,
            computed=q,
            ideal_order=len(ideal.members),
        )
    return CheckReport(
        "tensor-quotient-solvability", True, Q.order, None, f"length {q} <= {n}+1"
    )


def self_pair_quotient_check(t: TensorAlgebra, deadline: Deadline | None = None) -> CheckReport:
    """Square of a self-paired algebra whose bracket is its star: the standard
    quotient inherits nilpotency and solvability outright."""
    if not _is_self_star_pair(t.pair):
        raise Inapplicable("requires a self pair whose bracket is the star")
    n_cl = nilpotency_class(t.pair.G, deadline)
    n_sl = solvable_length(t.pair.G, deadline)
    if n_cl is None and n_sl is None:
        raise Inapplicable("the factor is neither Lie nilpotent nor Lie solvable")
    Q, _ = _nilpotency_quotient(t, deadline)
    notes = []
    if n_cl is not None:
        q = nilpotency_class(Q, deadline)
        if q is None:
            raise BoundViolation(
                "square quotient lost nilpotency", claimed="nilpotent", computed=None
            )
        notes.append(f"class {q}")
    if n_sl is not None:
        q = solvable_length(Q, deadline)
        if q is None:
            raise BoundViolation(
                "square quotient lost solvability", claimed="solvable", computed=None
            )
        notes.append(f"length {q}")
    return CheckReport("tensor-square-closure", True, Q.order, None, ", ".join(notes))


def defect_square_bound(t: TensorAlgebra, deadline: Deadline | None = None) -> CheckReport:
    """Square of a self-paired algebra, quotient by (defect ideal ⊗ defect ideal):
    the class does not grow at all."""
    if not _is_self_star_pair(t.pair):
        raise Inapplicable("requires a self pair whose bracket is the star")
    M = t.pair.G
    n_cl = nilpotency_class(M, deadline)
    n_sl = solvable_length(M, deadline)
    if n_cl is None and n_sl is None:
        raise Inapplicable("the factor is neither Lie nilpotent nor Lie solvable")
    everything = range(M.order)
    D = lie_commutator_ideal(M, everything, everything).subgroup
    ideal = tensor_ideal(t, D, D, deadline)
    Q, _ = quotient_algebra(t.algebra, ideal)
    notes = []
    if n_cl is not None:
        q = nilpotency_class(Q, deadline)
        if q is None or q > n_cl:
            raise BoundViolation(
                "defect-square quotient exceeds the class of the factor",
                claimed=n_cl,
                computed=q,
            )
        notes.append(f"class {q} <= {n_cl}")
    if n_sl is not None:
        q = solvable_length(Q, deadline)
        if q is None:
            raise BoundViolation(
                "defect-square quotient lost solvability", claimed="solvable", computed=None
            )
        notes.append(f"length {q}")
    return CheckReport("tensor-defect-square", True, Q.order, None, ", ".join(notes))


MAIN_THEOREM_CHECKS = (
    ("nilpotency-bound", quotient_nilpotency_bound),
    ("solvability-bound", quotient_solvability_bound),
    ("self-pair-closure", self_pair_quotient_check),
    ("defect-square-bound", defect_square_bound),
)


def main_theorem_check(t: TensorAlgebra, deadline: Deadline | None = None) -> dict[str, CheckReport]:
    out: dict[str, CheckReport] = {}
    for name, fn in MAIN_THEOREM_CHECKS:
        try:
            out[name] = fn(t, deadline)
        except Inapplicable as ex:
            out[name] = CheckReport(name, True, 0, None, f"inapplicable: {ex}")
    return out


def _trivial_tensor(pair: CompatiblePair, seed_order: str) -> TensorAlgebra:
    ng, nh = pair.G.order, pair.H.order
    labels = _pair_labels(pair)
    pres = make_presentation(labels, [(i + 1,) for i in range(len(labels))])
    K = validate_cayley(["1"], [[0]])
    res = EnumerationResult(
        pres, K, np.zeros(len(labels), dtype=np.int64), EnumerationStats(1, 0, 1)
    )
    alg = make_trivial_star(K)
    return TensorAlgebra(
        alg,
        pair,
        np.zeros((ng, nh), dtype=np.int64),
        res,
        seed_order,
        0,
        (),
        act_g=np.zeros((ng, 1), dtype=np.int64),
        act_h=np.zeros((nh, 1), dtype=np.int64),
    )


def build_tensor_algebra(
    pair: CompatiblePair,
    max_cosets: int = DEFAULT_MAX_COSETS,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    seed_order: str = "default",
    deadline: Deadline | None = None,
) -> TensorAlgebra:
    """Full pipeline: presentation, enumeration, star fixpoint, induced actions."""
    if pair.G.order == 1 or pair.H.order == 1:
        return _trivial_tensor(pair, seed_order)
    pres = build_tensor_presentation(pair)
    res = coset_enumerate(pres, max_cosets, deadline)
    t = induce_star(res, pair, max_rounds, max_cosets, seed_order, deadline)
    return induce_actions(t, deadline)


def compare_seed_orders(
    pair: CompatiblePair,
    max_cosets: int = DEFAULT_MAX_COSETS,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    deadline: Deadline | None = None,
) -> CheckReport:
    """The star table must not depend on the normal-form letter order: the
    generator-word identification of the two runs is a star isomorphism."""
    td = build_tensor_algebra(pair, max_cosets, max_rounds, "default", deadline)
    ta = build_tensor_algebra(pair, max_cosets, max_rounds, "alt", deadline)
    if td.order != ta.order:
        return CheckReport(
            "seed-order-independence", False, 0, (td.order, ta.order), "orders differ"
        )
    Kd, Ka = td.group, ta.group
    if td.order == 1:
        return CheckReport("seed-order-independence", True, 1)
    parent, letter, order = _normal_forms(Kd, td.result.gen_image, "default")
    psi = np.empty(Kd.order, dtype=np.int64)
    psi[Kd.identity] = Ka.identity
    img_a = ta.result.gen_image
    for v in order[1:]:
        psi[v] = Ka.table[psi[parent[v]], img_a[letter[v]]]
    checked = 0
    if (np.sort(psi) != np.arange(Kd.order)).any():
        return CheckReport("seed-order-independence", False, checked, None, "not a bijection")
    checked += Kd.order ** 2
    if (psi[Kd.table] != Ka.table[psi[:, None], psi[None, :]]).any():
        w = np.argwhere(psi[Kd.table] != Ka.table[psi[:, None], psi[None, :]])[0]
        return CheckReport(
            "seed-order-independence", False, checked, tuple(int(v) for v in w), "not multiplicative"
        )
    checked += Kd.order ** 2
    if (psi[td.algebra.star] != ta.algebra.star[psi[:, None], psi[None, :]]).any():
        w = np.argwhere(psi[td.algebra.star] != ta.algebra.star[psi[:, None], psi[None, :]])[0]
        return CheckReport(
            "seed-order-independence", False, checked, tuple(int(v) for v in w), "star differs"
        )
    checked += td.tensor_map.size
    if (psi[td.tensor_map] != ta.tensor_map).any():
        w = np.argwhere(psi[td.tensor_map] != ta.tensor_map)[0]
        return CheckReport(
            "seed-order-independence", False, checked, tuple(int(v) for v in w), "symbols differ"
        )
    return CheckReport("seed-order-independence", True, checked)
