import random
from fractions import Fraction

import pytest

from qsclasses.lattice import (
    FiniteAbelianGroup,
    IntMatrix,
    NotContained,
    NotFinite,
    BadCharacteristic,
    QLattice,
    Sublattice,
    det_unimodular_sign,
    image_lattice,
    kernel_lattice,
    membership,
    pprime_part,
    quotient_group,
    saturation,
    smith_normal_form,
)


def M(rows, cols=None):
    return IntMatrix.from_rows(rows, cols)


def check_decomposition(m):
    dec = smith_normal_form(m)
    prod = dec.U @ m @ dec.V
    assert prod.entries == dec.S.entries
    assert abs(det_unimodular_sign(dec.U)) == 1
    assert abs(det_unimodular_sign(dec.V)) == 1
    d = dec.invariant_factors
    assert all(x > 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert b % a == 0
    # S diagonal
    for i in range(dec.S.rows):
        for j in range(dec.S.cols):
            if i != j:
                assert dec.S.entries[i][j] == 0
    return dec


def test_snf_diag_2_3():
    # hand row/column reduction: gcd(2,3)=1 then lcm 6
    dec = check_decomposition(M([[2, 0], [0, 3]]))
    assert dec.invariant_factors == (1, 6)


def test_snf_identity():
    dec = check_decomposition(M([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert dec.invariant_factors == (1, 1, 1)


def test_snf_zero():
    dec = check_decomposition(M([[0, 0], [0, 0]]))
    assert dec.invariant_factors == ()
    assert dec.rank == 0


def test_snf_random_matrices():
    rng = random.Random(7)
    for _ in range(40):
        nr = rng.randint(1, 5)
        nc = rng.randint(1, 5)
        m = M([[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)])
        check_decomposition(m)


def test_kernel_simple():
    k = kernel_lattice(M([[1, 1]]))
    assert k.basis == ((1, -1),)


def test_kernel_one_plus_swap():
    # 1 + sigma for the coordinate swap on Z^2
    k = kernel_lattice(M([[1, 1], [1, 1]]))
    assert k.basis == ((1, -1),)


def test_kernel_invertible():
    k = kernel_lattice(M([[2, 1], [1, 1]]))
    assert k.basis == ()


def test_kernel_is_saturated():
    rng = random.Random(3)
    for _ in range(20):
        m = M([[rng.randint(-4, 4) for _ in range(4)] for _ in range(rng.randint(1, 3))])
        k = kernel_lattice(m)
        assert saturation(k) == k


def test_image_sigma_minus_one_swap():
    # sigma - 1 for the swap on Z^2
    im = image_lattice(M([[-1, 1], [1, -1]]))
    assert im.basis == ((1, -1),)


def test_image_identity_and_doubling():
    assert image_lattice(M([[1, 0], [0, 1]])) == Sublattice.full(2)
    im = image_lattice(M([[2, 0], [0, 2]]))
    assert quotient_group(im, Sublattice.full(2)).order == 4


def test_saturation_examples():
    s = saturation(Sublattice.from_vectors(2, [(2, 0)]))
    assert s.basis == ((1, 0),)
    pure = Sublattice.from_vectors(2, [(1, 1)])
    assert saturation(pure) == pure
    s = saturation(Sublattice.from_vectors(2, [(2, 2)]))
    assert s.basis == ((1, 1),)


def test_saturation_idempotent():
    rng = random.Random(11)
    for _ in range(20):
        vecs = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(rng.randint(1, 4))]
        s = saturation(Sublattice.from_vectors(4, vecs))
        assert saturation(s) == s


def test_quotient_z2_by_2_3():
    sub = Sublattice.from_vectors(2, [(2, 0), (0, 3)])
    g = quotient_group(sub, Sublattice.full(2))
    assert g.invariants == (6,)
    assert g.order == 6 and g.exponent == 6


def test_quotient_self_trivial():
    lat = Sublattice.from_vectors(3, [(1, 2, 0), (0, 4, 1)])
    assert quotient_group(lat, lat) == FiniteAbelianGroup.trivial()


def test_quotient_swap_orbit_lattice_trivial():
    # Ker(1+sigma|X)/(sigma-1)X for sigma permuting a basis: trivial (paper lemma)
    one_plus = M([[1, 1], [1, 1]])
    sig_minus = M([[-1, 1], [1, -1]])
    g = quotient_group(image_lattice(sig_minus), kernel_lattice(one_plus))
    assert g == FiniteAbelianGroup.trivial()


def test_quotient_errors():
    with pytest.raises(NotFinite):
        quotient_group(Sublattice.from_vectors(2, [(1, 0)]), Sublattice.full(2))
    with pytest.raises(NotContained):
        quotient_group(
            Sublattice.from_vectors(2, [(1, 0), (0, 1)]),
            Sublattice.from_vectors(2, [(2, 0), (0, 2)]),
        )


def test_quotient_order_equals_abs_det():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(1, 4)
        m = M([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
        d = det_unimodular_sign(m)
        if d == 0:
            continue
        g = quotient_group(image_lattice(m), Sublattice.full(n))
        assert g.order == abs(d)


def test_pprime_part():
    z6 = FiniteAbelianGroup.from_factors([6])
    assert pprime_part(z6, 2).invariants == (3,)
    assert pprime_part(z6, 0) == z6
    g = FiniteAbelianGroup.from_factors([2, 4])
    assert pprime_part(g, 2) == FiniteAbelianGroup.trivial()
    with pytest.raises(BadCharacteristic):
        pprime_part(z6, 4)


def test_membership():
    lat = Sublattice.from_vectors(2, [(1, -1)])
    assert membership((1, -1), lat) == (1,)
    assert membership((1, 0), lat) is None
    assert membership((3, 3), Sublattice.from_vectors(2, [(1, 1)])) == (3,)


def test_canonical_equality():
    a = Sublattice.from_vectors(2, [(2, 1), (0, 5)])
    b = Sublattice.from_vectors(2, [(2, 6), (4, 7)])
    assert a == b  # same lattice, different generators


def test_qlattice_basic():
    half = QLattice.from_vectors(2, [(Fraction(1, 2), Fraction(-1, 2))])
    assert half.member((Fraction(1, 2), Fraction(-1, 2))) == (1,)
    assert half.member((1, -1)) == (2,)
    assert half.member((1, 0)) is None
    assert half.denominator_of((Fraction(1, 4), Fraction(-1, 4))) == 2


def test_qlattice_intersect_and_quotient():
    a = QLattice.from_vectors(2, [(1, 0), (0, 1)])
    b = QLattice.from_vectors(2, [(Fraction(1, 2), Fraction(1, 2)), (0, 1)])
    inter = a.intersect(b)
    assert inter.member((1, 0)) is not None or inter.member((0, 1)) is not None
    assert inter.contains(QLattice.from_vectors(2, [(1, 1), (0, 2)]))
    g = b.quotient_by(QLattice.from_vectors(2, [(1, 0), (0, 1)]))
    assert g.order == 2


def test_qlattice_canonical():
    a = QLattice.from_vectors(2, [(Fraction(1, 2), 0), (0, Fraction(1, 2))])
    b = QLattice.from_vectors(2, [(Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 2), 0)])
    # b spans (1/2)Z^2 as well:  (1/2, 1/2) + (1/2, 0) generate it
    assert b.member((0, Fraction(1, 2))) is not None
    assert a == b
