"""Approximable mappings and the completion/compacts functors.

A morphism between join-semilattices with least element is a relation whose
images are ideals, varying monotonically.  Relational composition and the
greater-or-equal identities make these a category; the ideal-completion and
compacts constructions extend to an equivalence with lattices and monotone
suprema-preserving functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import kernels
from .canon import pair_set_id, set_id
from .errors import SizeGuardExceeded, ValidationError
from .order import (
    FiniteLattice,
    JoinSemilattice,
    SUBSET_SCAN_GUARD,
    compacts,
    down_set,
    ideal_completion,
    ideals,
    is_order_iso,
    k_semilattice,
    principal_ideal,
)

# The exhaustive directed-suprema check runs on carriers up to this size;
# beyond it monotonicity (equivalent on finite orders) is the certificate.
SCOTT_CHECK_CAP = 16
ENUMERATION_GUARD = 512


@dataclass(frozen=True)
class ApproximableMapping:
    """Relation between join-semilattices satisfying the three mapping axioms."""

    source: JoinSemilattice
    target: JoinSemilattice
    pairs: frozenset[tuple[str, str]]

    def __post_init__(self):
        src, tgt = self.source, self.target
        smembers, tmembers = set(src.elements), set(tgt.elements)
        for a, b in sorted(self.pairs):
            if a not in smembers or b not in tmembers:
                raise ValidationError(
                    f"pair ({a!r}, {b!r}) references unknown elements",
                    law="unknown-element",
                    witness={"pair": [a, b]},
                )
        for a in src.elements:
            if (a, tgt.bottom) not in self.pairs:
                raise ValidationError(
                    f"{a!r} does not reach the target bottom",
                    law="am1",
                    witness={"element": a},
                )
        by_src: dict[str, list[str]] = {a: [] for a in src.elements}
        for a, b in self.pairs:
            by_src[a].append(b)
        for a, bs in by_src.items():
            bset = set(bs)
            for b in bs:
                for b2 in bs:
                    if tgt.join(b, b2) not in bset:
                        raise ValidationError(
                            f"images of {a!r} miss the join of {b!r} and {b2!r}",
                            law="am2",
                            witness={"element": a, "pair": [b, b2]},
                        )
        for a, b in sorted(self.pairs):
            for a2 in sorted(up_elements(src, a)):
                for b2 in sorted(down_elements(tgt, b)):
                    if (a2, b2) not in self.pairs:
                        raise ValidationError(
                            f"({a2!r}, {b2!r}) missing although {a!r} <= {a2!r} and {b2!r} <= {b!r}",
                            law="am3",
                            witness={"from": [a, b], "missing": [a2, b2]},
                        )

    def image_ideal(self, a: str) -> frozenset[str]:
        return frozenset(b for x, b in self.pairs if x == a)

    def canonical_id(self) -> str:
        return pair_set_id(self.pairs)


def up_elements(S: JoinSemilattice, a: str) -> frozenset[str]:
    return frozenset(x for x in S.elements if S.le(a, x))


def down_elements(S: JoinSemilattice, b: str) -> frozenset[str]:
    return frozenset(x for x in S.elements if S.le(x, b))


def validate_am(
    source: JoinSemilattice, target: JoinSemilattice, pairs: Iterable[tuple[str, str]]
) -> ApproximableMapping:
    return ApproximableMapping(source, target, frozenset(tuple(p) for p in pairs))


def identity_mapping(S: JoinSemilattice) -> ApproximableMapping:
    pairs = frozenset((a, b) for a in S.elements for b in S.elements if S.le(b, a))
    return ApproximableMapping(S, S, pairs)


def compose(m1: ApproximableMapping, m2: ApproximableMapping) -> ApproximableMapping:
    """Relational composite of ``m1 : S -> R`` and ``m2 : R -> T``."""
    if m1.target != m2.source:
        raise ValidationError(
            "composition mismatch: target of the first is not source of the second",
            law="compose:interface",
        )
    mid: dict[str, set[str]] = {}
    for r, t in m2.pairs:
        mid.setdefault(r, set()).add(t)
    pairs = set()
    for s, r in m1.pairs:
        for t in mid.get(r, ()):
            pairs.add((s, t))
    return ApproximableMapping(m1.source, m2.target, frozenset(pairs))


@dataclass(frozen=True)
class ScottFunction:
    """Monotone function between finite lattices.

    Monotonicity and preservation of directed suprema coincide on finite
    carriers (a finite directed set contains its supremum); the definitional
    preservation check still runs exhaustively up to ``SCOTT_CHECK_CAP``
    elements and must agree.
    """

    source: FiniteLattice
    target: FiniteLattice
    values: tuple[str, ...]

    def __post_init__(self):
        src, tgt = self.source, self.target
        if len(self.values) != len(src.elements):
            raise ValidationError("value table has wrong length", law="scott:table")
        tgt.poset.check_members(self.values)
        for a in src.elements:
            for b in src.elements:
                if src.le(a, b) and not tgt.le(self.apply(a), self.apply(b)):
                    raise ValidationError(
                        f"not monotone on ({a!r}, {b!r})",
                        law="scott:monotone",
                        witness={"pair": [a, b]},
                    )
        if src.poset.n <= SCOTT_CHECK_CAP:
            P = src.poset
            for mask in kernels.directed_masks(P.up_masks):
                members = [P.elements[i] for i in range(P.n) if mask >> i & 1]
                sup = src.join_all(members)
                img_sup = tgt.join_all(self.apply(x) for x in members)
                if self.apply(sup) != img_sup:
                    raise ValidationError(
                        "directed supremum not preserved",
                        law="scott:directed-sups",
                        witness={"directed": members},
                    )

    def apply(self, x: str) -> str:
        return self.values[self.source.poset.index[x]]


def identity_function(L: FiniteLattice) -> ScottFunction:
    return ScottFunction(L, L, L.elements)


def compose_functions(f1: ScottFunction, f2: ScottFunction) -> ScottFunction:
    """``f1`` then ``f2``."""
    if f1.target != f2.source:
        raise ValidationError("function composition mismatch", law="compose:interface")
    return ScottFunction(f1.source, f2.target, tuple(f2.apply(v) for v in f1.values))


# ---------------------------------------------------------------------------
# the two functors on morphisms


def idl_on_morphism(m: ApproximableMapping) -> ScottFunction:
    """Send an ideal to everything reachable from its members."""
    src_l = ideal_completion(m.source)
    tgt_l = ideal_completion(m.target)
    src_members = {set_id(i.members): i.members for i in ideals(m.source)}
    values = []
    for e in src_l.elements:
        img = frozenset(b for a, b in m.pairs if a in src_members[e])
        values.append(set_id(img))
    return ScottFunction(src_l, tgt_l, tuple(values))


def k_on_morphism(f: ScottFunction, guard: int = SUBSET_SCAN_GUARD) -> ApproximableMapping:
    """Relate compacts to the compacts below their image."""
    src_s = k_semilattice(f.source, guard)
    tgt_s = k_semilattice(f.target, guard)
    pairs = frozenset(
        (a, b)
        for a in src_s.elements
        for b in tgt_s.elements
        if f.target.le(b, f.apply(a))
    )
    return ApproximableMapping(src_s, tgt_s, pairs)


def eta(L: FiniteLattice, guard: int = SUBSET_SCAN_GUARD) -> ScottFunction:
    """The iso sending a lattice element to the ideal of compacts below it."""
    K = compacts(L, guard)
    idl_k = ideal_completion(k_semilattice(L, guard))
    kset = set(K.elements)
    values = tuple(set_id(down_set(L.poset, [x]) & kset) for x in L.elements)
    fn = ScottFunction(L, idl_k, values)
    vmap = dict(zip(L.elements, values))
    if not is_order_iso(L.poset, idl_k.poset, vmap):
        raise ValidationError("completion unit is not an order-isomorphism", law="thm4.4:eta")
    return fn


def epsilon(S: JoinSemilattice) -> ApproximableMapping:
    """The iso relating an element to every compact ideal inside its cone."""
    eps = _epsilon_raw(S)
    inv = epsilon_inverse(S)
    if compose(eps, inv) != identity_mapping(S) or compose(inv, eps) != identity_mapping(
        eps.target
    ):
        raise ValidationError("counit compositions are not identities", law="thm4.4:epsilon")
    return eps


def _epsilon_raw(S: JoinSemilattice) -> ApproximableMapping:
    kidl = k_semilattice(ideal_completion(S))
    members = {set_id(i.members): i.members for i in ideals(S)}
    pairs = frozenset(
        (a, e)
        for a in S.elements
        for e in kidl.elements
        if members[e] <= principal_ideal(S.poset, a)
    )
    return ApproximableMapping(S, kidl, pairs)


def epsilon_inverse(S: JoinSemilattice) -> ApproximableMapping:
    kidl = k_semilattice(ideal_completion(S))
    pairs = frozenset(
        (set_id(principal_ideal(S.poset, b)), a)
        for b in S.elements
        for a in S.elements
        if S.le(a, b)
    )
    return ApproximableMapping(kidl, S, pairs)


# ---------------------------------------------------------------------------
# exhaustive enumeration


def ideal_assignment(m: ApproximableMapping) -> dict[str, frozenset[str]]:
    """The monotone map into the target's ideals encoded by a mapping."""
    return {a: m.image_ideal(a) for a in m.source.elements}


def enumerate_mappings(
    S: JoinSemilattice, T: JoinSemilattice, guard: int = ENUMERATION_GUARD
) -> list[ApproximableMapping]:
    """All approximable mappings, via monotone assignments into the ideals of
    the target; ordered by canonical pair-set encoding."""
    tgt_ideals = [i.members for i in ideals(T)]
    if len(S.elements) * len(tgt_ideals) > guard:
        raise SizeGuardExceeded(
            "enumerate_mappings", len(S.elements) * len(tgt_ideals), guard
        )
    # target: ideals under inclusion
    tgt_up = [
        sum(1 << j for j, J in enumerate(tgt_ideals) if I <= J)
        for I in tgt_ideals
    ]
    # source in a linear extension (by cone size, ties by canonical order)
    P = S.poset
    order = sorted(range(P.n), key=lambda i: (P.down_masks[i].bit_count(), i))
    preds = [
        [j for j in range(pos) if P.le(P.elements[order[j]], P.elements[order[pos]])]
        for pos in range(P.n)
    ]
    out = []
    for pick in kernels.monotone_maps(P.n, preds, tgt_up):
        pairs = frozenset(
            (P.elements[order[pos]], b)
            for pos, t in enumerate(pick)
            for b in tgt_ideals[t]
        )
        out.append(ApproximableMapping(S, T, pairs))
    out.sort(key=lambda m: m.canonical_id())
    return out
