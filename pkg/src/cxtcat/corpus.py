"""Seeded generation of small random structures for the law suites.

Everything is driven by an explicit ``random.Random`` so a fixed seed
reproduces the exact corpus; suites enumerate instances from small to large
so the first failure reported is a minimal one.
"""

from __future__ import annotations

import random
from typing import Callable

from .canon import set_id
from .context import FormalContext, context_of_semilattice, make_context, sem_lattice
from .logic import InformationSystem, close_entailment
from .order import (
    FiniteLattice,
    FinitePoset,
    JoinSemilattice,
    MeetSemilattice,
    ideal_completion,
    validate_poset,
)

DEFAULT_SEED = 0xCAFED00D


def rng_for(seed: int | None) -> random.Random:
    return random.Random(DEFAULT_SEED if seed is None else seed)


# ---------------------------------------------------------------------------
# fixed named structures


def chain_poset(n: int, prefix: str = "c") -> FinitePoset:
    els = tuple(f"{prefix}{i}" for i in range(n))
    return validate_poset(els, {(els[i], els[j]) for i in range(n) for j in range(i, n)})


def diamond_poset() -> FinitePoset:
    els = ("bot", "a", "b", "top")
    leq = {(x, x) for x in els} | {
        ("bot", "a"),
        ("bot", "b"),
        ("bot", "top"),
        ("a", "top"),
        ("b", "top"),
    }
    return validate_poset(els, leq)


def m3_poset() -> FinitePoset:
    els = ("0", "x", "y", "z", "1")
    leq = {(e, e) for e in els} | {("0", e) for e in els} | {(e, "1") for e in els}
    return validate_poset(els, leq)


def chain_context(n: int) -> FormalContext:
    """Context whose concept semilattice is an ``n``-chain."""
    objects = tuple(f"o{i}" for i in range(n))
    attributes = tuple(f"a{i}" for i in range(1, n))
    incidence = {
        (f"o{i}", f"a{j}") for i in range(n) for j in range(1, n) if j <= i
    }
    return make_context(objects, attributes, incidence)


def k2_context() -> FormalContext:
    return make_context(["o1", "o2"], ["a", "b"], [("o1", "a"), ("o2", "b")])


# ---------------------------------------------------------------------------
# random structures


def random_poset(rng: random.Random, n: int, prefix: str = "e") -> FinitePoset:
    els = [f"{prefix}{i}" for i in range(n)]
    rank = list(range(n))
    rng.shuffle(rank)
    p = rng.uniform(0.25, 0.75)
    above: dict[int, set[int]] = {i: {i} for i in range(n)}
    order = sorted(range(n), key=lambda i: rank[i])
    for ai, i in enumerate(order):
        for j in order[ai + 1:]:
            if rng.random() < p:
                above[i].add(j)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in list(above[i]):
                if not above[j] <= above[i]:
                    above[i] |= above[j]
                    changed = True
    leq = {(els[i], els[j]) for i in range(n) for j in above[i]}
    return validate_poset(els, leq)


def _rejection(rng: random.Random, build: Callable, tries: int = 200):
    for _ in range(tries):
        out = build()
        if out is not None:
            return out
    raise RuntimeError("corpus generation failed to converge")


def random_join_semilattice(rng: random.Random, max_n: int) -> JoinSemilattice:
    def build():
        if rng.random() < 0.5:
            # union-closed family of subsets of a small base
            base = rng.randint(2, 3)
            k = rng.randint(1, 3)
            fam = {frozenset()}
            for _ in range(k):
                fam.add(frozenset(b for b in range(base) if rng.random() < 0.6))
            changed = True
            while changed:
                changed = False
                for a in list(fam):
                    for b in list(fam):
                        if a | b not in fam:
                            fam.add(a | b)
                            changed = True
            if len(fam) > max_n:
                return None
            names = {s: set_id(str(x) for x in s) for s in fam}
            els = tuple(sorted(names.values()))
            leq = {(names[a], names[b]) for a in fam for b in fam if a <= b}
            return JoinSemilattice.from_poset(validate_poset(els, leq))
        P = random_poset(rng, rng.randint(1, max_n))
        try:
            return JoinSemilattice.from_poset(P)
        except Exception:
            return None

    return _rejection(rng, build)


def random_meet_semilattice(rng: random.Random, max_n: int) -> MeetSemilattice:
    return random_join_semilattice(rng, max_n).dual()


def random_lattice(rng: random.Random, max_n: int) -> FiniteLattice:
    def build():
        if rng.random() < 0.4:
            S = random_join_semilattice(rng, max(2, max_n - 1))
            L = ideal_completion(S)
            return L if len(L.elements) <= max_n else None
        P = random_poset(rng, rng.randint(1, max_n))
        try:
            return FiniteLattice.from_poset(P)
        except Exception:
            return None

    return _rejection(rng, build)


def random_context(
    rng: random.Random, max_objects: int, max_attributes: int
) -> FormalContext:
    n_o = rng.randint(1, max_objects)
    n_a = rng.randint(1, max_attributes)
    objects = [f"o{i}" for i in range(n_o)]
    attributes = [f"a{i}" for i in range(n_a)]
    p = rng.uniform(0.2, 0.8)
    incidence = {
        (o, a) for o in objects for a in attributes if rng.random() < p
    }
    return make_context(objects, attributes, incidence)


def random_context_with_sem_at_most(
    rng: random.Random, max_sem: int, max_objects: int = 3, max_attributes: int = 3
) -> FormalContext:
    def build():
        P = random_context(rng, max_objects, max_attributes)
        return P if len(sem_lattice(P).elements) <= max_sem else None

    return _rejection(rng, build)


def random_information_system(rng: random.Random, max_props: int) -> InformationSystem:
    n = rng.randint(1, max_props)
    props = [f"p{i}" for i in range(n)]
    raw = []
    for _ in range(rng.randint(0, 2 * n)):
        body = frozenset(p for p in props if rng.random() < 0.4)
        raw.append((body, rng.choice(props)))
    return close_entailment(props, raw)


def semilattice_contexts(max_size: int) -> list[FormalContext]:
    """The greater-or-equal contexts of chains and the diamond, small first."""
    out = []
    for n in range(1, max_size + 1):
        out.append(context_of_semilattice(JoinSemilattice.from_poset(chain_poset(n))))
    if max_size >= 4:
        out.append(context_of_semilattice(JoinSemilattice.from_poset(diamond_poset())))
    return out


def corpus(
    count: int, make: Callable[[random.Random], object], seed: int | None = None
) -> list:
    """``count`` structures from one seeded stream, sorted small to large."""
    rng = rng_for(seed)
    out = [make(rng) for _ in range(count)]
    out.sort(key=_size_key)
    return out


def _size_key(x) -> tuple:
    for attr in ("elements", "propositions", "objects"):
        v = getattr(x, attr, None)
        if v is not None:
            return (len(v), len(getattr(x, "attributes", ())))
    return (0, 0)
