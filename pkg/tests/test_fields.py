import random
from fractions import Fraction as F

import pytest

from euclidmin import (NonMonic, ReduciblePolynomial, UnsupportedDegree,
                       ZeroIdeal, elem_norm_trace, embed, ideal_from_gens,
                       ideal_invert, ideal_norm, make_field)
from euclidmin.hnf import mat_det


def test_make_field_basic(field_qi, field_q):
    assert field_qi.degree == 2
    assert field_qi.signature == (0, 1)
    assert field_qi.discriminant == -4
    assert field_q.degree == 1
    assert field_q.signature == (1, 0)
    assert field_q.discriminant == 1


def test_make_field_errors():
    with pytest.raises(ReduciblePolynomial):
        make_field([-4, 0, 1])
    with pytest.raises(ReduciblePolynomial):
        make_field([1, 2, 1])
    with pytest.raises(NonMonic):
        make_field([1, 2])
    with pytest.raises(UnsupportedDegree):
        make_field([1, 0, 0, 0, 0, 1])


def test_make_field_deterministic():
    a = make_field([1, 0, 1])
    b = make_field([1, 0, 1])
    assert a is b  # cached, hence trivially identical output


def test_maximal_order_saturation():
    # x^2 - 5: order Z[(1+sqrt5)/2], index 2, disc 5
    k5 = make_field([-5, 0, 1])
    assert k5.index == 2 and k5.discriminant == 5
    # x^2 + 3: Eisenstein order, disc -3
    k3 = make_field([3, 0, 1])
    assert k3.index == 2 and k3.discriminant == -3
    # cyclotomic quartic
    kz5 = make_field([1, 1, 1, 1, 1])
    assert kz5.discriminant == 125 and kz5.signature == (0, 2)
    # cubic x^3 - x - 1
    k3b = make_field([-1, -1, 0, 1])
    assert k3b.discriminant == -23 and k3b.signature == (1, 1)


def test_trace_gram_certifies_disc():
    for coeffs in ([-2, 0, 1], [5, 0, 1], [-5, 0, 1], [1, 1, 0, 1]):
        k = make_field(coeffs)
        assert int(mat_det([list(r) for r in k.trace_gram])) == k.discriminant


def test_norm_trace_examples(field_qi, field_q, field_sqrt2):
    i = field_qi.gen()
    assert elem_norm_trace(field_qi.one() + i) == (2, 2)
    assert elem_norm_trace(field_qi.one()) == (1, 2)
    assert elem_norm_trace(field_q.one()) == (1, 1)
    s2 = field_sqrt2.gen()
    assert elem_norm_trace(field_sqrt2.one() + s2) == (-1, 2)


def test_norm_trace_multiplicativity(field_qi, field_sqrt2):
    rng = random.Random(101)
    for field in (field_qi, field_sqrt2):
        for _ in range(50):
            x = field.element([F(rng.randint(-9, 9), rng.randint(1, 5))
                               for _ in range(2)])
            y = field.element([F(rng.randint(-9, 9), rng.randint(1, 5))
                               for _ in range(2)])
            assert (x * y).norm() == x.norm() * y.norm()
            assert (x + y).trace() == x.trace() + y.trace()


def test_embed_examples(field_qi, field_sqrt2):
    s2 = field_sqrt2.gen()
    box = embed(s2, F(1, 2**10))
    # positive root interval contains sqrt(2)
    hi_box = box.reals[1]
    assert hi_box.width <= F(1, 2**10)
    assert hi_box.lo**2 <= 2 <= hi_box.hi**2
    one = embed(field_qi.one(), F(1, 4))
    assert one.complexes[0].re.lo == one.complexes[0].re.hi == 1
    i_box = embed(field_qi.gen(), F(1, 4))
    assert i_box.complexes[0].re.contains(0)
    assert i_box.complexes[0].im.contains(1) or i_box.complexes[0].im.contains(-1)


def test_embed_nesting_and_norm_consistency(field_sqrt2, field_qi):
    rng = random.Random(7)
    for field in (field_sqrt2, field_qi):
        for _ in range(10):
            x = field.element([F(rng.randint(-6, 6), rng.randint(1, 4))
                               for _ in range(2)])
            coarse = embed(x, F(1, 2**6))
            fine = embed(x, F(1, 2**13))
            for a, b in zip(coarse.reals, fine.reals):
                assert a.lo <= b.lo and b.hi <= a.hi
            for a, b in zip(coarse.complexes, fine.complexes):
                assert a.re.lo <= b.re.lo and b.re.hi <= a.re.hi
            if not x.is_zero():
                assert fine.norm_interval().contains(abs(x.norm()))


def test_ideal_examples(field_qi, field_q):
    i = field_qi.gen()
    two = field_qi.from_rational(2)
    I = ideal_from_gens([two, field_qi.one() + i])
    assert ideal_norm(I) == 2
    assert I == ideal_from_gens([field_qi.one() + i])
    assert ideal_from_gens([field_qi.one()]) == field_qi.maximal_order()
    assert ideal_norm(ideal_from_gens([field_qi.from_rational(3)])) == 9
    half = ideal_from_gens([field_q.from_rational(F(1, 2))])
    assert half.hnf == ((1,),) and half.den == 2
    with pytest.raises(ZeroIdeal):
        ideal_from_gens([field_qi.zero()])


def test_ideal_norm_coset_oracle(field_qi):
    # |Z[i]/(1+i)| counted directly: lattice spanned by (1,1) and (-1,1)
    assert abs(1 * 1 - 1 * (-1)) == 2
    I = ideal_from_gens([field_qi.one() + field_qi.gen()])
    assert ideal_norm(I) == 2


def test_ideal_generator_order_independence(field_qi):
    rng = random.Random(13)
    for _ in range(30):
        gens = [field_qi.element([F(rng.randint(-5, 5), rng.randint(1, 3))
                                  for _ in range(2)]) for _ in range(3)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        i1 = ideal_from_gens(gens)
        rng.shuffle(gens)
        assert ideal_from_gens(gens) == i1


def test_ideal_norm_multiplicative(field_qi, field_sqrt2):
    rng = random.Random(17)
    for field in (field_qi, field_sqrt2):
        for _ in range(25):
            x = field.element([rng.randint(-9, 9) for _ in range(2)])
            y = field.element([rng.randint(-9, 9) for _ in range(2)])
            if x.is_zero() or y.is_zero():
                continue
            ix, iy = ideal_from_gens([x]), ideal_from_gens([y])
            assert ideal_norm(ix * iy) == ideal_norm(ix) * ideal_norm(iy)


def test_ideal_invert(field_qi, field_q):
    i = field_qi.gen()
    two = ideal_from_gens([field_qi.from_rational(2)])
    assert ideal_invert(two) == ideal_from_gens([field_qi.from_rational(F(1, 2))])
    opi = ideal_from_gens([field_qi.one() + i])
    inv = ideal_invert(opi)
    assert opi * inv == field_qi.maximal_order()
    assert inv == ideal_from_gens([(field_qi.one() - i) * F(1, 2)])
    O = field_qi.maximal_order()
    assert ideal_invert(O) == O


def test_ideal_invert_random_all_degrees():
    rng = random.Random(23)
    fields = [make_field([-1, 1]), make_field([1, 0, 1]),
              make_field([-1, -1, 0, 1]), make_field([1, 1, 1, 1, 1])]
    for field in fields:
        O = field.maximal_order()
        count = 0
        while count < 50:
            coords = [rng.randint(-4, 4) for _ in range(field.degree)]
            x = field.element(coords)
            if x.is_zero():
                continue
            I = ideal_from_gens([x, field.from_rational(rng.randint(1, 6))])
            assert I * ideal_invert(I) == O
            count += 1
