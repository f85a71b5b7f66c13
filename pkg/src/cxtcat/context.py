"""Formal contexts, derivation operators, and their concept structures.

A context is an object/attribute incidence table.  Deriving twice gives the
intent closure; the join-semilattice of closures of finite attribute sets and
the lattice of all finitarily-closed sets are the two faces used everywhere
else.  On finite carriers the finitary closure degenerates to the plain
intent closure; both code paths exist and are tested against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from . import kernels
from .canon import set_id
from .errors import SizeGuardExceeded, ValidationError
from .order import (
    ClosureOperator,
    FiniteLattice,
    FinitePoset,
    JoinSemilattice,
    lattice_from_sets,
    powerset_lattice,
    powerset_members,
)

# Full powerset enumeration of attribute subsets is used up to this width;
# wider attribute sets fall back to saturation from singleton closures.
POWERSET_CLOSURE_GUARD = 16
# Cap for the literal union-over-finite-subsets closure.
APPROX_CLOSURE_GUARD = 16
# Concept structures build quadratic tables over the closed sets.
CLOSED_SET_GUARD = 512


@dataclass(frozen=True)
class FormalContext:
    """Objects, attributes, and which object bears which attribute."""

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    incidence: frozenset[tuple[str, str]]

    def __post_init__(self):
        for name, seq in (("object", self.objects), ("attribute", self.attributes)):
            seen = set()
            for x in seq:
                if x in seen:
                    raise ValidationError(
                        f"duplicate {name} {x!r}", law="context:duplicates", witness={"element": x}
                    )
                seen.add(x)
        objs, attrs = set(self.objects), set(self.attributes)
        for o, a in sorted(self.incidence):
            if o not in objs or a not in attrs:
                raise ValidationError(
                    f"incidence pair ({o!r}, {a!r}) references undeclared names",
                    law="unknown-element",
                    witness={"pair": [o, a]},
                )

    @cached_property
    def obj_index(self) -> dict[str, int]:
        return {o: i for i, o in enumerate(self.objects)}

    @cached_property
    def attr_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.attributes)}

    @cached_property
    def rows(self) -> list[int]:
        """Attribute mask of each object, aligned with ``objects``."""
        masks = [0] * len(self.objects)
        ai = self.attr_index
        for o, a in self.incidence:
            masks[self.obj_index[o]] |= 1 << ai[a]
        return masks

    @property
    def full_attr_mask(self) -> int:
        return (1 << len(self.attributes)) - 1

    def has(self, o: str, a: str) -> bool:
        return (o, a) in self.incidence

    def attr_mask(self, ys: Iterable[str]) -> int:
        ai = self.attr_index
        m = 0
        for y in ys:
            if y not in ai:
                raise ValidationError(
                    f"unknown attribute {y!r}", law="unknown-element", witness={"element": y}
                )
            m |= 1 << ai[y]
        return m

    def attrs_of_mask(self, mask: int) -> frozenset[str]:
        return frozenset(a for i, a in enumerate(self.attributes) if mask >> i & 1)


def make_context(
    objects: Iterable[str], attributes: Iterable[str], incidence: Iterable[tuple[str, str]]
) -> FormalContext:
    return FormalContext(tuple(objects), tuple(attributes), frozenset(tuple(p) for p in incidence))


def alpha(P: FormalContext, xs: Iterable[str]) -> frozenset[str]:
    """Attributes common to all objects in ``xs`` (all attributes for the empty set)."""
    xs = frozenset(xs)
    for o in xs:
        if o not in P.obj_index:
            raise ValidationError(f"unknown object {o!r}", law="unknown-element", witness={"element": o})
    m = P.full_attr_mask
    for o in xs:
        m &= P.rows[P.obj_index[o]]
    return P.attrs_of_mask(m)


def omega(P: FormalContext, ys: Iterable[str]) -> frozenset[str]:
    """Objects bearing every attribute in ``ys``."""
    ym = P.attr_mask(ys)
    return frozenset(o for o, r in zip(P.objects, P.rows) if r & ym == ym)


def attr_closure(P: FormalContext, ys: Iterable[str]) -> frozenset[str]:
    """The intent closure: attributes shared by every object bearing ``ys``."""
    ym = P.attr_mask(ys)
    n = len(P.attributes)
    return P.attrs_of_mask(kernels.closure_mask(P.rows, P.full_attr_mask, ym, n))


def approx_closure(
    P: FormalContext, ys: Iterable[str], guard: int = APPROX_CLOSURE_GUARD
) -> frozenset[str]:
    """Finitary closure: union of intent closures of all finite subsets.

    Implemented literally; on a finite context it coincides with
    :func:`attr_closure` because the whole set is one of its finite subsets.
    """
    ys = sorted(frozenset(ys))
    P.attr_mask(ys)
    if len(ys) > guard:
        raise SizeGuardExceeded("approx_closure", len(ys), guard)
    out: frozenset[str] = frozenset()
    for m in range(1 << len(ys)):
        sub = [y for i, y in enumerate(ys) if m >> i & 1]
        out |= attr_closure(P, sub)
    return out


def is_closed(P: FormalContext, ys: Iterable[str]) -> bool:
    ys = frozenset(ys)
    return attr_closure(P, ys) == ys


def _closed_attr_sets(
    P: FormalContext, powerset_guard: int, max_closed: int
) -> list[frozenset[str]]:
    n = len(P.attributes)
    if n <= powerset_guard:
        masks = kernels.closed_masks_powerset(P.rows, n)
    else:
        masks = kernels.closed_masks_saturate(P.rows, n)
    if len(masks) > max_closed:
        raise SizeGuardExceeded("closed attribute sets", len(masks), max_closed)
    return sorted((P.attrs_of_mask(m) for m in masks), key=set_id)


@dataclass(frozen=True)
class SemLattice:
    """Closures of finite attribute sets: join is closure of union, bottom is
    the closure of the empty set."""

    context: FormalContext
    semilattice: JoinSemilattice
    intents: dict[str, frozenset[str]]

    def __post_init__(self):
        for name, members in self.intents.items():
            if attr_closure(self.context, members) != members:
                raise ValidationError(
                    f"element {name} is not closed", law="sem:closed", witness={"element": name}
                )

    @property
    def elements(self) -> tuple[str, ...]:
        return self.semilattice.elements

    def name_of(self, ys: Iterable[str]) -> str:
        return set_id(attr_closure(self.context, ys))

    def __eq__(self, other):
        if not isinstance(other, SemLattice):
            return NotImplemented
        return self.context == other.context and self.semilattice == other.semilattice

    def __hash__(self):
        return hash((self.context, self.semilattice))


@dataclass(frozen=True)
class ConceptLattice:
    """All finitarily-closed attribute sets under inclusion."""

    context: FormalContext
    lattice: FiniteLattice
    intents: dict[str, frozenset[str]]

    def __post_init__(self):
        for name, members in self.intents.items():
            if attr_closure(self.context, members) != members:
                raise ValidationError(
                    f"concept {name} is not closed", law="alg:closed", witness={"element": name}
                )

    @property
    def elements(self) -> tuple[str, ...]:
        return self.lattice.elements

    def __eq__(self, other):
        if not isinstance(other, ConceptLattice):
            return NotImplemented
        return self.context == other.context and self.lattice == other.lattice

    def __hash__(self):
        return hash((self.context, self.lattice))


def sem_lattice(
    P: FormalContext,
    powerset_guard: int = POWERSET_CLOSURE_GUARD,
    max_closed: int = CLOSED_SET_GUARD,
) -> SemLattice:
    """Join-semilattice of closures of finite attribute subsets."""
    closed = _closed_attr_sets(P, powerset_guard, max_closed)
    names = {set_id(c): c for c in closed}
    elements = tuple(sorted(names))
    leq = frozenset(
        (a, b) for a in elements for b in elements if names[a] <= names[b]
    )
    poset = FinitePoset(elements, leq)
    bottom = set_id(attr_closure(P, ()))
    table = []
    for a in elements:
        row = []
        for b in elements:
            row.append(set_id(attr_closure(P, names[a] | names[b])))
        table.append(tuple(row))
    sl = JoinSemilattice(poset, bottom, tuple(table))
    return SemLattice(P, sl, names)


def alg_lattice(
    P: FormalContext,
    powerset_guard: int = POWERSET_CLOSURE_GUARD,
    max_closed: int = CLOSED_SET_GUARD,
) -> ConceptLattice:
    """Lattice of all finitarily-closed attribute sets."""
    closed = _closed_attr_sets(P, powerset_guard, max_closed)

    def join_of(a: frozenset, b: frozenset) -> frozenset:
        return attr_closure(P, a | b)

    def meet_of(a: frozenset, b: frozenset) -> frozenset:
        return a & b

    lat, members = lattice_from_sets(closed, join_of, meet_of)
    return ConceptLattice(P, lat, members)


def context_of_semilattice(S: JoinSemilattice) -> FormalContext:
    """The context whose objects and attributes are the elements of ``S`` and
    whose incidence is the greater-or-equal relation."""
    elems = S.elements
    incidence = frozenset((o, a) for o in elems for a in elems if S.le(a, o))
    return FormalContext(elems, elems, incidence)


def attr_closure_operator(P: FormalContext, guard: int = 10) -> ClosureOperator:
    """The intent closure as a table on the powerset lattice of attributes."""
    base = P.attributes
    if len(base) > guard:
        raise SizeGuardExceeded("attr_closure_operator", len(base), guard)
    lat = powerset_lattice(base, guard)
    members = powerset_members(base)
    values = tuple(set_id(attr_closure(P, members[x])) for x in lat.elements)
    return ClosureOperator(lat.poset, values)
