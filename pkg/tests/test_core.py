import itertools
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sctheory import (CycNumber, GroupError, NotATheory, SetPartition, build_abelian,
                      canned, direct_product, enumerate_sup, galois_orbit_theory, join,
                      join_theories, k_from_x, leq, matrix_condition, mm_and_MM,
                      normal_subgroups, orbit_theory, refines, superclass_admissible,
                      theory_from_classes, theory_from_json, verify_definition, x_from_k)
from sctheory.chartab import bundled_group
from sctheory.core import superclass_admissible_unpruned, transport
from sctheory.groups import subgroup_closure
from sctheory.partitions import rgs_iter

from helpers import S6_K, S6_L, s6_partition, sup

SMALL = [[2], [3], [4], [6], [2, 2], [2, 4], [8], [3, 3], [10]]
NONABELIAN = ["S3", "D4", "Q8"]


def groups():
    return [build_abelian(o) for o in SMALL] + [bundled_group(n) for n in NONABELIAN]


def P(*blocks):
    return SetPartition.from_blocks(blocks)


# ---------------------------------------------------------------------------
# verify_definition
# ---------------------------------------------------------------------------


def test_minimal_and_maximal_accept():
    for G in groups() + [bundled_group("S6")]:
        T = G.character_table
        m = verify_definition(G, T, SetPartition.singletons(T.num_chars), G.classes)
        M = verify_definition(G, T, SetPartition([0] + [1] * (T.num_chars - 1)),
                              SetPartition([0] + [1] * (G.order - 1)))
        assert m == canned(G, "minimal") and M == canned(G, "maximal")


def test_rejections_carry_witnesses():
    G = build_abelian([4])
    T = G.character_table
    with pytest.raises(NotATheory) as exc:
        verify_definition(G, T, SetPartition.singletons(4), P([0], [1, 3], [2]))
    assert exc.value.reason == "size" and exc.value.witness == (4, 3)
    with pytest.raises(NotATheory) as exc:
        # chi_1 takes i and -i on the block {1, 3}
        verify_definition(G, T, P([0, 2], [1], [3]), P([0], [1, 3], [2]))
    assert exc.value.reason == "non_constant"
    assert exc.value.witness is not None
    S3 = bundled_group("S3")
    with pytest.raises(NotATheory) as exc:
        verify_definition(S3, S3.character_table, SetPartition.singletons(3),
                          SetPartition([0, 1, 2, 2, 2, 2]))
    assert exc.value.reason == "class_split"
    data = exc.value.to_json()
    assert data["reason"] == "class_split" and isinstance(data["witness"], list)


def test_value_table():
    for G in groups():
        for C in sup(G):
            V = C.values
            ident = C.class_part.labels[0]
            for i, X in enumerate(C.char_part.blocks):
                assert V[i][ident] == CycNumber.rational(
                    C.table.conductor, sum(C.table.degrees[p] ** 2 for p in X))


# ---------------------------------------------------------------------------
# the integer test and recovering the other side
# ---------------------------------------------------------------------------


def test_superclass_admissible_examples():
    for G in groups():
        assert superclass_admissible(G, G.classes)
    S6 = bundled_group("S6")
    K, L = s6_partition(S6, S6_K), s6_partition(S6, S6_L)
    assert superclass_admissible(S6, K) and superclass_admissible(S6, L)
    assert not superclass_admissible(S6, SetPartition(
        (K.labels[g], L.labels[g]) for g in range(S6.order)))
    with pytest.raises(NotATheory) as exc:
        superclass_admissible(build_abelian([3]), P([0, 1], [2]))
    assert exc.value.reason == "identity_block"


def test_x_from_k_examples():
    for G in groups():
        T = G.character_table
        assert x_from_k(G, T, G.classes).char_part == SetPartition.singletons(T.num_chars)
        top = x_from_k(G, T, SetPartition([0] + [1] * (G.order - 1)))
        assert top.char_part == SetPartition([0] + [1] * (T.num_chars - 1))
    S6 = bundled_group("S6")
    E = x_from_k(S6, S6.character_table, s6_partition(S6, S6_K))
    assert len(E.char_part) == 7
    with pytest.raises(NotATheory) as exc:
        x_from_k(build_abelian([4]), None, P([0], [1], [2, 3]))
    assert exc.value.reason == "inadmissible"


def test_k_from_x_examples():
    for G in groups():
        T = G.character_table
        assert k_from_x(G, T, SetPartition.singletons(T.num_chars)).class_part == G.classes
        top = k_from_x(G, T, SetPartition([0] + [1] * (T.num_chars - 1)))
        assert top.class_part == SetPartition([0] + [1] * (G.order - 1))


def test_round_trip_on_z6():
    G = build_abelian([6])
    T = G.character_table
    tested = 0
    for lab in rgs_iter(5):
        K = SetPartition([0] + [x + 1 for x in lab])
        tested += 1
        if superclass_admissible(G, K):
            C = x_from_k(G, T, K)
            assert k_from_x(G, T, C.char_part).class_part == K
    assert tested == 52


def test_matrix_condition_examples():
    for n in (1, 2, 3, 5, 6):
        G = build_abelian([n])
        T = G.character_table
        assert matrix_condition(G, T, SetPartition.singletons(n), G.classes)
    Z3 = build_abelian([3])
    assert matrix_condition(Z3, None, P([0], [1, 2]), P([0], [1, 2]))
    Z4 = build_abelian([4])
    assert not matrix_condition(Z4, None, SetPartition.singletons(4), P([0], [1, 3], [2]))
    with pytest.raises(GroupError):
        matrix_condition(bundled_group("S3"), None, SetPartition.singletons(3),
                         bundled_group("S3").classes)


# ---------------------------------------------------------------------------
# canned theories
# ---------------------------------------------------------------------------


def test_canned_examples():
    Z4 = build_abelian([4])
    N = Z4.subgroup([0, 2])
    assert mm_and_MM(Z4, N, "M").class_part == P([0], [1, 3], [2])
    Z2 = build_abelian([2])
    assert canned(Z2, "minimal") == canned(Z2, "maximal")
    with pytest.raises(ValueError):
        canned(Z2, "median")


def test_mm_character_side_and_shapes():
    for G in groups():
        T = G.character_table
        for N in normal_subgroups(G):
            over = T.chars_over_quotient(N)
            m = mm_and_MM(G, N, "m")
            assert all(m.char_part.block_of(chi) == (chi,) for chi in over)
            M = mm_and_MM(G, N, "M")
            parts = {frozenset(b) for b in M.class_part.blocks}
            expect = {frozenset([0]), frozenset(N.elements) - {0},
                      frozenset(range(G.order)) - frozenset(N.elements)}
            assert parts == {p for p in expect if p}
            assert leq(m, M)
    Z4 = build_abelian([4])
    assert mm_and_MM(Z4, Z4.trivial(), "M") == canned(Z4, "maximal")
    assert mm_and_MM(Z4, Z4.whole(), "M") == canned(Z4, "maximal")
    assert mm_and_MM(Z4, Z4.trivial(), "m") == canned(Z4, "minimal")
    assert mm_and_MM(Z4, Z4.whole(), "m") == canned(Z4, "minimal")
    S3 = bundled_group("S3")
    with pytest.raises(GroupError):
        mm_and_MM(S3, subgroup_closure(S3, [1]), "M")


# ---------------------------------------------------------------------------
# orbit theories
# ---------------------------------------------------------------------------


def test_orbit_examples():
    Z5 = build_abelian([5])
    assert orbit_theory(Z5, None, [list(range(5))]) == canned(Z5, "minimal")
    inv = orbit_theory(Z5, None, [[(-g) % 5 for g in range(5)]])
    assert inv.class_part == P([0], [1, 4], [2, 3])
    assert galois_orbit_theory(Z5, None, [1, 2, 3, 4]) == canned(Z5, "maximal")
    with pytest.raises(GroupError):
        orbit_theory(Z5, None, [[0, 2, 1, 3, 4]])
    Z8 = build_abelian([8])
    with pytest.raises(ValueError):
        galois_orbit_theory(Z8, None, [3, 5])  # 3 * 5 = 7 is missing
    with pytest.raises(ValueError):
        galois_orbit_theory(Z8, None, [2])


def test_orbit_theories_on_nonabelian_groups():
    S3 = bundled_group("S3")
    # inner automorphisms only: classes already fused, so the result is m(S3)
    conj = [[S3.conjugate(g, h) for g in range(6)] for h in range(6)]
    assert orbit_theory(S3, None, conj) == canned(S3, "minimal")
    D4 = bundled_group("D4")
    assert galois_orbit_theory(D4, None, [1, 3]) == canned(D4, "minimal")


def test_galois_orbits_are_theories_everywhere():
    for G in groups():
        m = G.exponent
        units = [k for k in range(1, max(m, 2)) if math.gcd(k, m) == 1]
        C = galois_orbit_theory(G, None, units)
        assert C in sup(G)


# ---------------------------------------------------------------------------
# joins, order, direct products
# ---------------------------------------------------------------------------


def test_join_examples():
    for G in groups():
        top = canned(G, "maximal")
        for C in sup(G):
            assert join_theories(C, C) == C
            assert join_theories(C, top) == top
    S6 = bundled_group("S6")
    T = S6.character_table
    A = x_from_k(S6, T, s6_partition(S6, S6_K))
    B = x_from_k(S6, T, s6_partition(S6, S6_L))
    J = join_theories(A, B)
    assert J.class_part == join(A.class_part, B.class_part)
    with pytest.raises(GroupError):
        join_theories(canned(build_abelian([2]), "minimal"), canned(build_abelian([3]), "minimal"))


def test_join_closure_and_order_equivalence():
    for G in groups():
        theories = sup(G)
        assert canned(G, "minimal") in theories and canned(G, "maximal") in theories
        for C, D in itertools.product(theories, repeat=2):
            assert join_theories(C, D) in theories
            assert refines(C.char_part, D.char_part) == refines(C.class_part, D.class_part)
            assert leq(C, D) == refines(C.class_part, D.class_part)
            assert leq(canned(G, "minimal"), C) and leq(C, canned(G, "maximal"))


def test_direct_product_examples():
    Z2 = build_abelian([2])
    MM = direct_product(canned(Z2, "maximal"), canned(Z2, "maximal"))
    assert MM.group.order == 4
    assert MM.class_part == SetPartition.singletons(4)
    assert verify_definition(MM.group, MM.table, MM.char_part, MM.class_part) == MM
    A, B = build_abelian([2]), build_abelian([3])
    mm = direct_product(canned(A, "minimal"), canned(B, "minimal"))
    assert mm == canned(mm.group, "minimal")


def test_direct_products_of_nonabelian_theories():
    S3 = bundled_group("S3")
    Z2 = build_abelian([2])
    for C in sup(S3):
        for D in sup(Z2):
            E = direct_product(C, D)
            assert E.group.order == 12 and len(E) == len(C) * len(D)
    assert direct_product(canned(S3, "minimal"), canned(Z2, "minimal")).class_part == \
        direct_product(canned(S3, "minimal"), canned(Z2, "minimal")).group.classes


def test_theory_json_roundtrip():
    for G in groups():
        for C in sup(G):
            text = json.dumps(C.to_json(), sort_keys=True)
            back = theory_from_json(json.loads(text))
            assert back == C
            assert json.dumps(back.to_json(), sort_keys=True) == text


def test_transport_along_automorphism():
    Z5 = build_abelian([5])
    double = [(2 * g) % 5 for g in range(5)]
    for C in sup(Z5):
        assert transport(C, Z5, double) == C
    with pytest.raises(GroupError):
        transport(canned(Z5, "minimal"), Z5, [0, 2, 1, 3, 4])


def test_class_only_theories():
    G = build_abelian([2, 2])
    C = theory_from_classes(G, G.classes, None)
    assert C.char_part is not None  # abelian groups always have a table
    from sctheory import build_from_permutations
    A4 = build_from_permutations([[1, 2, 0, 3], [1, 0, 3, 2]])
    assert A4.character_table is None
    E = theory_from_classes(A4, A4.classes)
    assert E.char_part is None and len(E) == 4
    with pytest.raises(Exception):
        E.values


# ---------------------------------------------------------------------------
# property tests
# ---------------------------------------------------------------------------


group_choice = st.sampled_from(SMALL + NONABELIAN)


def _group(key):
    return bundled_group(key) if isinstance(key, str) else build_abelian(key)


@given(group_choice, st.data())
@settings(max_examples=150, deadline=None)
def test_pruned_and_unpruned_tests_agree(key, data):
    G = _group(key)
    c = G.num_classes
    lab = [0] + data.draw(st.lists(st.integers(1, c - 1), min_size=c - 1, max_size=c - 1)) \
        if c > 1 else [0]
    K = SetPartition(lab[G.class_of[g]] for g in range(G.order))
    a = superclass_admissible(G, K)
    assert a == superclass_admissible_unpruned(G, K)
    if a:
        C = x_from_k(G, G.character_table, K)
        assert verify_definition(G, C.table, C.char_part, C.class_part) == C
    else:
        with pytest.raises(NotATheory):
            x_from_k(G, G.character_table, K)


@given(group_choice, st.data())
@settings(max_examples=100, deadline=None)
def test_k_from_x_agrees_with_existence(key, data):
    G = _group(key)
    T = G.character_table
    r = T.num_chars
    lab = [0] + data.draw(st.lists(st.integers(1, r - 1), min_size=r - 1, max_size=r - 1)) \
        if r > 1 else [0]
    X = SetPartition(lab)
    theories = {C.char_part: C for C in sup(G)}
    if X in theories:
        assert k_from_x(G, T, X) == theories[X]
    else:
        with pytest.raises(NotATheory):
            k_from_x(G, T, X)
