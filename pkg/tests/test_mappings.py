import random
from itertools import product as iproduct

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cxtcat.corpus import chain_poset, diamond_poset, random_join_semilattice
from cxtcat.errors import ValidationError
from cxtcat.mappings import (
    ScottFunction,
    compose,
    compose_functions,
    enumerate_mappings,
    epsilon,
    epsilon_inverse,
    eta,
    ideal_assignment,
    identity_function,
    identity_mapping,
    idl_on_morphism,
    k_on_morphism,
    validate_am,
)
from cxtcat.order import (
    FiniteLattice,
    Ideal,
    JoinSemilattice,
    ideals,
)


def chain_s(n, pfx="c"):
    return JoinSemilattice.from_poset(chain_poset(n, pfx))


def diamond_s():
    return JoinSemilattice.from_poset(diamond_poset())


def count_monotone_maps_oracle(S, T):
    """Brute force over all functions into the ideals of the target."""
    tgt = [i.members for i in ideals(T)]
    count = 0
    for assign in iproduct(range(len(tgt)), repeat=len(S.elements)):
        ok = True
        for i, a in enumerate(S.elements):
            for j, b in enumerate(S.elements):
                if S.le(a, b) and not tgt[assign[i]] <= tgt[assign[j]]:
                    ok = False
        if ok:
            count += 1
    return count


# ---------------------------------------------------------------------------
# validation


def test_identity_relation_is_valid():
    S = diamond_s()
    m = identity_mapping(S)
    assert ("top", "bot") in m.pairs and ("bot", "top") not in m.pairs


def test_empty_relation_violates_am1():
    S = chain_s(2)
    with pytest.raises(ValidationError) as exc:
        validate_am(S, S, [])
    assert exc.value.law == "am1"


def test_full_relation_is_valid():
    S, T = chain_s(2), diamond_s()
    validate_am(S, T, {(a, b) for a in S.elements for b in T.elements})


def test_am2_witness():
    S, T = chain_s(1), diamond_s()
    pairs = {("c0", "bot"), ("c0", "a"), ("c0", "b")}  # misses a v b = top
    with pytest.raises(ValidationError) as exc:
        validate_am(S, T, pairs)
    assert exc.value.law == "am2"


def test_am3_witness():
    S, T = chain_s(2), chain_s(2, "d")
    pairs = {("c0", "d0"), ("c1", "d0"), ("c0", "d1")}  # c1 must reach d1
    with pytest.raises(ValidationError) as exc:
        validate_am(S, T, pairs)
    assert exc.value.law == "am3"


def test_images_are_ideals_and_assignment_monotone():
    S, T = chain_s(2), diamond_s()
    for m in enumerate_mappings(S, T):
        assign = ideal_assignment(m)
        for a in S.elements:
            Ideal(T.poset, assign[a])
            for b in S.elements:
                if S.le(a, b):
                    assert assign[a] <= assign[b]


# ---------------------------------------------------------------------------
# composition


def test_identity_laws():
    S, T = chain_s(2), diamond_s()
    for m in enumerate_mappings(S, T):
        assert compose(identity_mapping(S), m) == m
        assert compose(m, identity_mapping(T)) == m


def test_step_up_composes_to_itself():
    S = chain_s(2)
    step = validate_am(S, S, {("c0", "c0"), ("c1", "c0"), ("c1", "c1")})
    assert compose(step, step) == step


def test_constant_bottom_absorbs():
    S, T = diamond_s(), chain_s(2)
    const = validate_am(T, T, {(a, "c0") for a in T.elements})
    for m in enumerate_mappings(S, T):
        assert compose(m, const) == validate_am(S, T, {(a, "c0") for a in S.elements})


def test_compose_mismatch():
    S, T = chain_s(2), diamond_s()
    m = enumerate_mappings(S, T)[0]
    with pytest.raises(ValidationError):
        compose(m, m)


@given(st.integers(0, 10**6))
@settings(max_examples=20, deadline=None)
def test_compose_is_associative(seed):
    rng = random.Random(seed)
    S, R, T, U = (random_join_semilattice(rng, 3) for _ in range(4))
    m1 = rng.choice(enumerate_mappings(S, R))
    m2 = rng.choice(enumerate_mappings(R, T))
    m3 = rng.choice(enumerate_mappings(T, U))
    assert compose(compose(m1, m2), m3) == compose(m1, compose(m2, m3))


# ---------------------------------------------------------------------------
# the functors


def test_idl_on_identity_is_identity():
    S = diamond_s()
    f = idl_on_morphism(identity_mapping(S))
    assert f.values == f.source.elements


def test_idl_on_constant_bottom():
    S = chain_s(2)
    const = validate_am(S, S, {(a, "c0") for a in S.elements})
    f = idl_on_morphism(const)
    assert set(f.values) == {"{c0}"}


def test_idl_on_step_up_two_chain():
    S = chain_s(2)
    step = validate_am(S, S, {("c0", "c0"), ("c1", "c0"), ("c1", "c1")})
    f = idl_on_morphism(step)
    assert f.values == f.source.elements


def test_k_on_identity_is_geq():
    L = FiniteLattice.from_poset(diamond_poset())
    m = k_on_morphism(identity_function(L))
    assert m == identity_mapping(m.source)


def test_k_on_constant_bottom():
    L = FiniteLattice.from_poset(diamond_poset())
    f = ScottFunction(L, L, tuple("bot" for _ in L.elements))
    m = k_on_morphism(f)
    assert m.pairs == frozenset((a, "bot") for a in L.elements)


def test_scott_function_rejects_non_monotone():
    L = FiniteLattice.from_poset(chain_poset(2))
    with pytest.raises(ValidationError):
        ScottFunction(L, L, ("c1", "c0"))


# ---------------------------------------------------------------------------
# unit and counit


def test_eta_singleton_and_two_chain():
    L1 = FiniteLattice.from_poset(chain_poset(1))
    assert eta(L1).values == ("{c0}",)
    L2 = FiniteLattice.from_poset(chain_poset(2))
    assert eta(L2).values == ("{c0}", "{c0,c1}")


def test_epsilon_diamond_relates_cones():
    S = diamond_s()
    eps = epsilon(S)
    assert ("a", "{a,bot}") in eps.pairs
    assert ("a", "{bot}") in eps.pairs
    assert ("a", "{b,bot}") not in eps.pairs


def test_epsilon_inverse_composes_to_identities():
    S = diamond_s()
    eps, inv = epsilon(S), epsilon_inverse(S)
    assert compose(eps, inv) == identity_mapping(S)
    assert compose(inv, eps) == identity_mapping(eps.target)


# ---------------------------------------------------------------------------
# enumeration


def test_enumeration_counts():
    assert len(enumerate_mappings(chain_s(1), chain_s(1, "d"))) == 1
    assert len(enumerate_mappings(chain_s(2), chain_s(2, "d"))) == 3
    assert len(enumerate_mappings(chain_s(2), diamond_s())) == 9


@given(st.integers(0, 10**6))
@settings(max_examples=20, deadline=None)
def test_enumeration_matches_monotone_oracle(seed):
    rng = random.Random(seed)
    S = random_join_semilattice(rng, 3)
    T = random_join_semilattice(rng, 3)
    assert len(enumerate_mappings(S, T)) == count_monotone_maps_oracle(S, T)


def test_enumeration_is_sorted_and_unique():
    ms = enumerate_mappings(chain_s(2), diamond_s())
    ids = [m.canonical_id() for m in ms]
    assert ids == sorted(ids) and len(set(ids)) == len(ids)


# ---------------------------------------------------------------------------
# functor laws and naturality over random instances


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_functor_laws_and_naturality(seed):
    rng = random.Random(seed)
    S = random_join_semilattice(rng, 3)
    R = random_join_semilattice(rng, 3)
    T = random_join_semilattice(rng, 3)
    m1 = rng.choice(enumerate_mappings(S, R))
    m2 = rng.choice(enumerate_mappings(R, T))
    f1, f2 = idl_on_morphism(m1), idl_on_morphism(m2)
    assert idl_on_morphism(compose(m1, m2)).values == compose_functions(f1, f2).values
    assert k_on_morphism(compose_functions(f1, f2)) == compose(
        k_on_morphism(f1), k_on_morphism(f2)
    )
    # unit square for f1
    lhs = compose_functions(eta(f1.source), idl_on_morphism(k_on_morphism(f1)))
    rhs = compose_functions(f1, eta(f1.target))
    assert lhs.values == rhs.values
    # counit square for m1
    assert compose(epsilon(S), k_on_morphism(idl_on_morphism(m1))) == compose(
        m1, epsilon(R)
    )
