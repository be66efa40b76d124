import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sctheory import CycMatrix, CycNumber, build_abelian, root_of_unity, rowspace_equal
from sctheory.cyclotomic import RowSpace, cyclotomic_poly, euler_phi

CONDUCTORS = [1, 2, 3, 4, 5, 6, 8, 12]


def one(m):
    return CycNumber.rational(m, 1)


@st.composite
def cyc(draw, m=None):
    if m is None:
        m = draw(st.sampled_from(CONDUCTORS))
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                           min_size=euler_phi(m), max_size=euler_phi(m)))
    return CycNumber(m, coeffs)


@st.composite
def cyc_pair(draw):
    m = draw(st.sampled_from(CONDUCTORS))
    return draw(cyc(m)), draw(cyc(m))


def test_root_of_unity_examples():
    assert root_of_unity(1, 0) == one(1)
    assert root_of_unity(4, 2) == -one(4)
    assert root_of_unity(3, 1) + root_of_unity(3, 2) == -one(3)
    with pytest.raises(ValueError):
        root_of_unity(0, 1)


@pytest.mark.parametrize("m", [1, 2, 3, 5, 6, 8, 9, 10, 12])
def test_root_of_unity_order(m):
    for k in range(2 * m):
        z = root_of_unity(m, k)
        order = m // math.gcd(m, k)
        assert z ** order == one(m)
        assert all(z ** j != one(m) for j in range(1, order))


def test_field_op_examples():
    z5 = root_of_unity(5, 1)
    assert z5.conj() == root_of_unity(5, 4)
    z8 = root_of_unity(8, 1)
    assert z8 * z8 == root_of_unity(8, 2)
    assert root_of_unity(4, 1).lift(8) == root_of_unity(8, 2)
    s = sum((root_of_unity(5, k) for k in range(1, 5)), CycNumber(5))
    assert s == -one(5)


def test_errors():
    with pytest.raises(ValueError):
        root_of_unity(3, 1) + root_of_unity(4, 1)
    with pytest.raises(ZeroDivisionError):
        root_of_unity(3, 1) / 0
    with pytest.raises(ZeroDivisionError):
        CycNumber(5).inverse()


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    for m in range(1, 40):
        assert len(cyclotomic_poly(m)) - 1 == euler_phi(m)


def test_float_oracle_geometric_sums():
    # evaluate the exact results at high precision independently
    for m in range(2, 16):
        s = sum((root_of_unity(m, k) for k in range(1, m)), CycNumber(m))
        assert s == -one(m)
        for k in range(m):
            z = root_of_unity(m, k)
            assert abs(z.to_complex() - cmath.exp(2j * cmath.pi * k / m)) < 1e-12


def test_json_roundtrip():
    z = root_of_unity(12, 5) * Fraction(3, 7) + one(12)
    data = z.to_json()
    assert data["conductor"] == 12 and all(isinstance(c, str) for c in data["coeffs"])
    assert CycNumber.from_json(data) == z


@given(cyc())
def test_additive_and_multiplicative_identities(a):
    m = a.conductor
    assert a + (-a) == CycNumber(m)
    assert a * one(m) == a
    assert CycNumber(m, a.coeffs) == a  # reduction is idempotent


@given(cyc_pair())
def test_conjugation_properties(pair):
    a, b = pair
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()
    assert a.abs2().conj() == a.abs2()


@given(cyc_pair())
def test_ring_axioms(pair):
    a, b = pair
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * a == a * a + b * a
    assert hash(a * b) == hash(b * a)


@given(cyc())
@settings(max_examples=40)
def test_inverse(a):
    if a.is_zero():
        return
    assert a * a.inverse() == one(a.conductor)


@given(cyc(), cyc())
@settings(max_examples=30)
def test_float_evaluation_is_a_homomorphism(a, b):
    if a.conductor != b.conductor:
        b = CycNumber(a.conductor)
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-9
    assert abs((a + b).to_complex() - (a.to_complex() + b.to_complex())) < 1e-9


# ---------------------------------------------------------------------------
# matrices and row spaces
# ---------------------------------------------------------------------------


def ident(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def test_rowspace_examples():
    I3 = CycMatrix(ident(3))
    assert rowspace_equal(I3, CycMatrix(ident(3)))
    scaled = [[0, 0, 2], [2, 0, 0], [0, 2, 0]]
    assert rowspace_equal(I3, CycMatrix(scaled))
    assert not rowspace_equal(I3, CycMatrix(ident(3)[:2]))
    with pytest.raises(ValueError):
        rowspace_equal(I3, CycMatrix([[1, 0]]))


def test_rowspace_canonical_agrees_with_bareiss():
    z = root_of_unity(8, 1)
    rows = [[one(8), z, z * z], [z, z * z, z ** 3], [one(8), one(8), CycNumber(8)]]
    A = CycMatrix(rows, 8)
    B = CycMatrix([rows[2], [a + b for a, b in zip(rows[0], rows[2])]], 8)
    ra, rb = RowSpace(A), RowSpace(B)
    assert ra.rank == 2
    assert (ra == rb) == (ra.canonical() == rb.canonical())
    assert ra == rb


unimodular_ops = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2),
                                    st.integers(-3, 3)), max_size=8)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=3),
       unimodular_ops, st.sampled_from([1, 3, 4, 5]), st.integers(0, 4))
@settings(max_examples=60, deadline=None)
def test_rowspace_invariant_under_unimodular_row_ops(int_rows, ops, m, k):
    z = root_of_unity(m, k)
    rows = [[z * x + (i + j) % 2 for j, x in enumerate(r)] for i, r in enumerate(int_rows)]
    n = len(rows)
    moved = [list(r) for r in rows]
    for i, j, c in ops:
        i, j = i % n, j % n
        if i != j:
            moved[i] = [a + b * c for a, b in zip(moved[i], moved[j])]
    moved.reverse()
    A, B = CycMatrix(rows, m), CycMatrix(moved, m)
    assert rowspace_equal(A, B)
    assert rowspace_equal(B, A)
    assert RowSpace(A).canonical() == RowSpace(B).canonical()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 8])
def test_orthogonality_of_cyclic_table(n):
    G = build_abelian([n])
    T = G.character_table
    C = CycMatrix([list(r) for r in T.values], T.conductor)
    P = C @ C.conj().transpose()
    for i in range(n):
        for j in range(n):
            assert P[i, j] / n == (one(T.conductor) if i == j else CycNumber(T.conductor))
