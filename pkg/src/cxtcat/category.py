"""Cartesian closed structure on formal contexts.

Terminal object, binary products (disjoint-union contexts), the full-row /
full-column tensor alternative, function-space contexts built from pairs of
concept-semilattice elements, and the currying bijection.  Morphisms between
contexts are approximable mappings between their concept semilattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .canon import fresh_id, pair_id, set_id
from .context import FormalContext, SemLattice, make_context, sem_lattice
from .errors import SizeGuardExceeded, ValidationError
from .mappings import ApproximableMapping
from .order import FiniteLattice, FinitePoset, JoinSemilattice, lattice_from_sets

LEFT_TAG = "l:"
RIGHT_TAG = "r:"
LITERAL_OBJECT_GUARD = 12


def tag_left(x: str) -> str:
    return LEFT_TAG + x


def tag_right(x: str) -> str:
    return RIGHT_TAG + x


def untag(x: str) -> tuple[str, str]:
    if x.startswith(LEFT_TAG):
        return "left", x[len(LEFT_TAG):]
    if x.startswith(RIGHT_TAG):
        return "right", x[len(RIGHT_TAG):]
    raise ValidationError(f"{x!r} carries no side tag", law="product:tags")


def terminal() -> FormalContext:
    return make_context([], [], [])


def bang(P: FormalContext) -> ApproximableMapping:
    """The unique mapping into the terminal context's singleton semilattice."""
    src = sem_lattice(P).semilattice
    tgt = sem_lattice(terminal()).semilattice
    pairs = frozenset((x, tgt.bottom) for x in src.elements)
    return ApproximableMapping(src, tgt, pairs)


@dataclass(frozen=True)
class ProductContext:
    """Disjoint union of two contexts with the cross incidences filled in.

    Every left object bears every right attribute and vice versa, so concept
    closure works sidewise and concepts are tagged unions of one concept from
    each factor.
    """

    context: FormalContext
    left: FormalContext
    right: FormalContext

    @cached_property
    def sem(self) -> SemLattice:
        return sem_lattice(self.context)

    @cached_property
    def left_sem(self) -> SemLattice:
        return sem_lattice(self.left)

    @cached_property
    def right_sem(self) -> SemLattice:
        return sem_lattice(self.right)

    @cached_property
    def _split(self) -> dict[str, tuple[str, str]]:
        out = {}
        for name, members in self.sem.intents.items():
            ls, rs = set(), set()
            for x in members:
                side, orig = untag(x)
                (ls if side == "left" else rs).add(orig)
            out[name] = (set_id(ls), set_id(rs))
        return out

    def decompose(self, name: str) -> tuple[str, str]:
        """Split a product concept into its left and right factor concepts."""
        return self._split[name]

    def combine(self, left_name: str, right_name: str) -> str:
        ls = self.left_sem.intents[left_name]
        rs = self.right_sem.intents[right_name]
        return set_id({tag_left(x) for x in ls} | {tag_right(x) for x in rs})

    def attr_sides(self) -> dict[str, tuple[str, str]]:
        return {a: untag(a) for a in self.context.attributes}

    def object_sides(self) -> dict[str, tuple[str, str]]:
        return {o: untag(o) for o in self.context.objects}

    def proj_left(self) -> ApproximableMapping:
        pairs = frozenset(
            (z, x)
            for z in self.sem.elements
            for x in self.left_sem.elements
            if self.left_sem.intents[x] <= self.left_sem.intents[self.decompose(z)[0]]
        )
        return ApproximableMapping(self.sem.semilattice, self.left_sem.semilattice, pairs)

    def proj_right(self) -> ApproximableMapping:
        pairs = frozenset(
            (z, y)
            for z in self.sem.elements
            for y in self.right_sem.elements
            if self.right_sem.intents[y] <= self.right_sem.intents[self.decompose(z)[1]]
        )
        return ApproximableMapping(self.sem.semilattice, self.right_sem.semilattice, pairs)

    def pair(self, m_left: ApproximableMapping, m_right: ApproximableMapping) -> ApproximableMapping:
        """The mediating mapping of the product cone."""
        if m_left.source != m_right.source:
            raise ValidationError("cone legs have different sources", law="product:cone")
        if (
            m_left.target != self.left_sem.semilattice
            or m_right.target != self.right_sem.semilattice
        ):
            raise ValidationError("cone legs do not land in the factors", law="product:cone")
        mls = {(a, b) for a, b in m_left.pairs}
        mrs = {(a, b) for a, b in m_right.pairs}
        pairs = set()
        for z in m_left.source.elements:
            for w in self.sem.elements:
                x, y = self.decompose(w)
                if (z, x) in mls and (z, y) in mrs:
                    pairs.add((z, w))
        return ApproximableMapping(m_left.source, self.sem.semilattice, frozenset(pairs))


def product(P: FormalContext, Q: FormalContext) -> ProductContext:
    objects = tuple(tag_left(o) for o in P.objects) + tuple(tag_right(o) for o in Q.objects)
    attributes = tuple(tag_left(a) for a in P.attributes) + tuple(
        tag_right(a) for a in Q.attributes
    )
    incidence = set()
    for o, a in P.incidence:
        incidence.add((tag_left(o), tag_left(a)))
    for o, a in Q.incidence:
        incidence.add((tag_right(o), tag_right(a)))
    for o in P.objects:
        for a in Q.attributes:
            incidence.add((tag_left(o), tag_right(a)))
    for o in Q.objects:
        for a in P.attributes:
            incidence.add((tag_right(o), tag_left(a)))
    return ProductContext(make_context(objects, attributes, incidence), P, Q)


def plus(P: FormalContext) -> FormalContext:
    """Adjoin a full row and a full column; no concept is empty afterwards."""
    g = fresh_id("g", P.objects)
    m = fresh_id("m", P.attributes)
    objects = P.objects + (g,)
    attributes = P.attributes + (m,)
    incidence = set(P.incidence)
    for a in attributes:
        incidence.add((g, a))
    for o in objects:
        incidence.add((o, m))
    return make_context(objects, attributes, incidence)


@dataclass(frozen=True)
class TensorContext:
    """Pairwise product of the row/column-extended factors."""

    context: FormalContext
    left: FormalContext
    right: FormalContext
    left_plus: FormalContext
    right_plus: FormalContext

    @cached_property
    def sem(self) -> SemLattice:
        return sem_lattice(self.context)

    @cached_property
    def attr_pairs(self) -> dict[str, tuple[str, str]]:
        out = {}
        for a1 in self.left_plus.attributes:
            for a2 in self.right_plus.attributes:
                out[pair_id(a1, a2)] = (a1, a2)
        return out

    def _projections(self, name: str) -> tuple[frozenset[str], frozenset[str]]:
        members = self.sem.intents[name]
        p1 = frozenset(self.attr_pairs[a][0] for a in members)
        p2 = frozenset(self.attr_pairs[a][1] for a in members)
        return p1, p2

    def iso_plus(self) -> ApproximableMapping:
        """From the disjoint-union product's semilattice into this one."""
        prod = product(self.left, self.right)
        ap, aq = set(self.left.attributes), set(self.right.attributes)
        pairs = set()
        for x in prod.sem.elements:
            lx, rx = prod.decompose(x)
            lset = prod.left_sem.intents[lx]
            rset = prod.right_sem.intents[rx]
            for y in self.sem.elements:
                p1, p2 = self._projections(y)
                if p1 & ap <= lset and p2 & aq <= rset:
                    pairs.add((x, y))
        return ApproximableMapping(prod.sem.semilattice, self.sem.semilattice, frozenset(pairs))

    def iso_minus(self) -> ApproximableMapping:
        prod = product(self.left, self.right)
        ap, aq = set(self.left.attributes), set(self.right.attributes)
        pairs = set()
        for y in self.sem.elements:
            p1, p2 = self._projections(y)
            for x in prod.sem.elements:
                lx, rx = prod.decompose(x)
                if prod.left_sem.intents[lx] <= p1 and prod.right_sem.intents[rx] <= p2:
                    pairs.add((y, x))
        return ApproximableMapping(self.sem.semilattice, prod.sem.semilattice, frozenset(pairs))


def tensor(P: FormalContext, Q: FormalContext) -> TensorContext:
    Pp, Qp = plus(P), plus(Q)
    objects = tuple(pair_id(o1, o2) for o1 in Pp.objects for o2 in Qp.objects)
    attributes = tuple(pair_id(a1, a2) for a1 in Pp.attributes for a2 in Qp.attributes)
    incidence = set()
    for o1 in Pp.objects:
        for o2 in Qp.objects:
            for a1 in Pp.attributes:
                if (o1, a1) not in Pp.incidence:
                    continue
                for a2 in Qp.attributes:
                    if (o2, a2) in Qp.incidence:
                        incidence.add((pair_id(o1, o2), pair_id(a1, a2)))
    return TensorContext(make_context(objects, attributes, incidence), P, Q, Pp, Qp)


# ---------------------------------------------------------------------------
# function space


@dataclass(frozen=True)
class FunctionSpaceContext:
    """Context whose attributes are step-function pairs of factor concepts.

    Objects are finite sets of such pairs; a set models a pair ``(a, b)``
    when ``b`` is below the join of the second components whose first
    component is below ``a``.  Concept closure is computed by saturating a
    pair set under the mapping axioms (the default engine); the literal
    context over all finite attribute sets is materialized on demand for
    cross-validation.
    """

    left: FormalContext
    right: FormalContext

    @cached_property
    def left_sem(self) -> SemLattice:
        return sem_lattice(self.left)

    @cached_property
    def right_sem(self) -> SemLattice:
        return sem_lattice(self.right)

    @cached_property
    def attributes(self) -> tuple[str, ...]:
        return tuple(
            pair_id(x, y)
            for x in self.left_sem.elements
            for y in self.right_sem.elements
        )

    @cached_property
    def attr_pairs(self) -> dict[str, tuple[str, str]]:
        return {
            pair_id(x, y): (x, y)
            for x in self.left_sem.elements
            for y in self.right_sem.elements
        }

    def closure(self, attrs: Iterable[str]) -> frozenset[str]:
        """Least mapping-axiom-closed attribute set containing ``attrs``."""
        sp, sq = self.left_sem.semilattice, self.right_sem.semilattice
        have: set[tuple[str, str]] = {self.attr_pairs[a] for a in attrs}
        for x in sp.elements:
            have.add((x, sq.bottom))
        changed = True
        while changed:
            changed = False
            by_src: dict[str, set[str]] = {}
            for x, y in have:
                by_src.setdefault(x, set()).add(y)
            for x, ys in list(by_src.items()):
                ys = sorted(ys)
                for y1 in ys:
                    for y2 in ys:
                        j = sq.join(y1, y2)
                        if (x, j) not in have:
                            have.add((x, j))
                            changed = True
            for x, y in list(have):
                for x2 in sp.elements:
                    if not sp.le(x, x2):
                        continue
                    for y2 in sq.elements:
                        if sq.le(y2, y) and (x2, y2) not in have:
                            have.add((x2, y2))
                            changed = True
        return frozenset(pair_id(x, y) for x, y in have)

    @cached_property
    def closed_sets(self) -> list[frozenset[str]]:
        """All mapping-axiom-closed attribute sets, saturated from singletons."""
        seen = {self.closure([])}
        for a in self.attributes:
            seen.add(self.closure([a]))
        frontier = list(seen)
        while frontier:
            fresh = []
            for s in frontier:
                for t in list(seen):
                    u = self.closure(s | t)
                    if u not in seen:
                        seen.add(u)
                        fresh.append(u)
            frontier = fresh
        return sorted(seen, key=set_id)

    @cached_property
    def sem(self) -> tuple[JoinSemilattice, dict[str, frozenset[str]]]:
        """Concept semilattice over the closed pair sets, plus decoding."""
        fam = self.closed_sets
        names = {set_id(s): s for s in fam}
        elements = tuple(sorted(names))
        leq = frozenset((a, b) for a in elements for b in elements if names[a] <= names[b])
        bottom = set_id(self.closure([]))
        table = tuple(
            tuple(set_id(self.closure(names[a] | names[b])) for b in elements)
            for a in elements
        )
        return JoinSemilattice(FinitePoset(elements, leq), bottom, table), names

    def concepts(self) -> tuple[FiniteLattice, dict[str, frozenset[str]]]:
        """The full concept lattice of the function space."""
        return lattice_from_sets(
            self.closed_sets,
            lambda a, b: self.closure(a | b),
            lambda a, b: a & b,
        )

    def decode(self, name: str) -> frozenset[tuple[str, str]]:
        return frozenset(self.attr_pairs[a] for a in self.sem[1][name])

    def literal_context(self, guard: int = LITERAL_OBJECT_GUARD) -> FormalContext:
        """The context with one object per finite attribute set."""
        attrs = self.attributes
        if len(attrs) > guard:
            raise SizeGuardExceeded("funcspace literal objects", len(attrs), guard)
        sp, sq = self.left_sem, self.right_sem
        spo, sqo = sp.semilattice, sq.semilattice
        objects = []
        obj_members = []
        for m in range(1 << len(attrs)):
            members = frozenset(a for i, a in enumerate(attrs) if m >> i & 1)
            objects.append(set_id(members))
            obj_members.append(members)
        incidence = set()
        for oname, members in zip(objects, obj_members):
            pairs = [self.attr_pairs[a] for a in members]
            for aname, (a, b) in self.attr_pairs.items():
                hit = sqo.join_all(bi for ai, bi in pairs if spo.le(ai, a))
                if sqo.le(b, hit):
                    incidence.add((oname, aname))
        return make_context(objects, attrs, incidence)


def funcspace(P: FormalContext, Q: FormalContext, guard: int = 64) -> FunctionSpaceContext:
    fs = FunctionSpaceContext(P, Q)
    if len(fs.attributes) > guard:
        raise SizeGuardExceeded("funcspace", len(fs.attributes), guard)
    return fs


# ---------------------------------------------------------------------------
# currying


def _check_curry_interfaces(
    m_source: JoinSemilattice | None,
    prod: ProductContext,
    fs: FunctionSpaceContext,
) -> None:
    if fs.left != prod.right:
        raise ValidationError(
            "function space is not over the product's right factor", law="curry:interface"
        )
    if m_source is not None and m_source != prod.sem.semilattice:
        raise ValidationError("mapping is not over the expected product", law="curry:interface")


def curry(
    m: ApproximableMapping, prod: ProductContext, fs: FunctionSpaceContext
) -> ApproximableMapping:
    """Transpose a mapping out of a product into the function space."""
    _check_curry_interfaces(m.source, prod, fs)
    if m.target != sem_lattice(fs.right).semilattice:
        raise ValidationError("mapping target is not the function space codomain", law="curry:interface")
    fs_sem, fs_names = fs.sem
    src = prod.left_sem
    pairs = set()
    for x in src.elements:
        for w in fs_sem.elements:
            if all(
                (prod.combine(x, y), z) in m.pairs
                for (y, z) in (fs.attr_pairs[a] for a in fs_names[w])
            ):
                pairs.add((x, w))
    return ApproximableMapping(src.semilattice, fs_sem, frozenset(pairs))


def uncurry(
    m: ApproximableMapping, prod: ProductContext, fs: FunctionSpaceContext
) -> ApproximableMapping:
    """Inverse transpose, back onto the product."""
    _check_curry_interfaces(None, prod, fs)
    fs_sem, fs_names = fs.sem
    if m.source != prod.left_sem.semilattice or m.target != fs_sem:
        raise ValidationError("mapping is not over the expected transpose", law="curry:interface")
    tgt = sem_lattice(fs.right).semilattice
    decoded = {w: {fs.attr_pairs[a] for a in fs_names[w]} for w in fs_sem.elements}
    pairs = set()
    for xy in prod.sem.elements:
        x, y = prod.decompose(xy)
        for w in fs_sem.elements:
            if (x, w) not in m.pairs:
                continue
            for (y2, z) in decoded[w]:
                if y2 == y:
                    pairs.add((xy, z))
    return ApproximableMapping(prod.sem.semilattice, tgt, frozenset(pairs))
