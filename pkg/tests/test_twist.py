import itertools

import pytest

from twistedk.cohomology import all_classes, bockstein, coboundary_witness, element, generators, reduce_mod
from twistedk.complex import builtin, sphere
from twistedk.groups import INFINITE, INTEGERS, ZMod
from twistedk.twist import (
    INFINITE_DIM,
    FiniteDim,
    Flavor,
    GammaClass,
    NotFound,
    NotTorsion,
    Twist,
    delta_from_gamma,
    is_trivial,
    realize_torsion,
    twist_add,
    twist_conjugate,
    twist_from_coords,
    twist_order,
    zero_twist,
)


def susp_moore(n):
    return builtin(f"susp:moore:{n}")


def test_flavor():
    assert str(INFINITE_DIM) == "infinite"
    assert str(FiniteDim(4)) == "PU_4"
    with pytest.raises(ValueError):
        Flavor(0)


def test_twist_must_be_degree_three_integral():
    K = susp_moore(4)
    with pytest.raises(ValueError):
        Twist(generators(K, 0)[0])
    with pytest.raises(ValueError):
        Twist(generators(K, 2, ZMod(4))[0])


def test_finite_flavor_must_kill_class():
    K = susp_moore(4)
    x = generators(K, 3)[0]
    Twist(x, FiniteDim(4))
    Twist(2 * x, FiniteDim(2))
    with pytest.raises(ValueError):
        Twist(x, FiniteDim(2))


@pytest.mark.parametrize("n", [2, 4, 6])
def test_group_laws_on_cyclic_h3(n):
    K = susp_moore(n)
    twists = [twist_from_coords(K, [c]) for c in range(n)]
    zero = zero_twist(K)
    for a, b, c in itertools.product(twists, repeat=3):
        assert twist_add(twist_add(a, b), c).cls == twist_add(a, twist_add(b, c)).cls
    for a, b in itertools.product(twists, repeat=2):
        assert twist_add(a, b).coords == ((a.coords[0] + b.coords[0]) % n,)
        assert twist_add(a, b).cls == twist_add(b, a).cls
    for a in twists:
        assert twist_add(a, zero).cls == a.cls
        assert twist_add(a, twist_conjugate(a)).cls == zero.cls


def test_conjugate_keeps_flavor():
    K = susp_moore(6)
    a = twist_from_coords(K, [2], FiniteDim(3))
    assert twist_conjugate(a).flavor == FiniteDim(3)
    assert twist_conjugate(a).coords == (4,)


def test_flavor_combination():
    K = susp_moore(6)
    a = twist_from_coords(K, [2], FiniteDim(3))
    b = twist_from_coords(K, [3], FiniteDim(2))
    s = twist_add(a, b)
    assert s.flavor == FiniteDim(6) and s.coords == (5,)
    assert twist_add(a, twist_from_coords(K, [1])).flavor == INFINITE_DIM


def test_twists_on_different_complexes():
    with pytest.raises(ValueError):
        twist_add(zero_twist(susp_moore(2)), zero_twist(susp_moore(3)))


def test_order():
    K = susp_moore(6)
    assert [twist_order(twist_from_coords(K, [c])) for c in range(6)] == [1, 6, 3, 2, 3, 6]
    assert twist_order(twist_from_coords(sphere(3), [1])) == INFINITE


def test_is_trivial_certificates():
    K = susp_moore(3)
    x = generators(K, 3)[0]
    ok, cert = is_trivial(Twist(x))
    assert not ok and cert is None
    ok, cert = is_trivial(Twist(3 * x))
    assert ok and tuple(K.coboundary(2, cert)) == (3 * x).representative
    ok, cert = is_trivial(zero_twist(sphere(3)))
    assert ok


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_delta_from_gamma_is_killed_by_n(n):
    K = susp_moore(6)
    for g in all_classes(K, 2, ZMod(n)):
        t = delta_from_gamma(GammaClass(K, n, g))
        assert t.flavor == FiniteDim(n)
        assert (n * t.cls).is_zero()
        assert t.cls == bockstein(g)


def test_delta_from_gamma_vanishes_on_reductions():
    # beta . rho = 0: reductions of integral classes give trivial twists
    K = susp_moore(6)
    for n in (2, 3, 6):
        for x in generators(K, 2):
            t = delta_from_gamma(GammaClass(K, n, reduce_mod(x, n)))
            assert is_trivial(t)[0]


def test_gamma_validation():
    K = susp_moore(4)
    with pytest.raises(ValueError):
        GammaClass(K, 2, None)
    with pytest.raises(ValueError):
        GammaClass(K, 1, generators(K, 2, ZMod(4))[0])
    with pytest.raises(ValueError):
        GammaClass(K, 3, generators(K, 2, ZMod(4))[0])
    t = delta_from_gamma(GammaClass(K, 1, None))
    assert t.cls.is_zero() and t.flavor == FiniteDim(1)


@pytest.mark.parametrize("n", range(2, 10))
def test_realize_every_torsion_class(n):
    K = susp_moore(n)
    for c in range(1, n):
        x = element(K, 3, INTEGERS, [c])
        g = realize_torsion(x)
        assert bockstein(g.cls) == x
        assert g.n % twist_order(Twist(x)) == 0


def test_realize_zero_class_is_trivial_datum():
    g = realize_torsion(element(susp_moore(4), 3, INTEGERS, [0]))
    assert g.n == 1 and g.cls is None


def test_realize_with_start():
    x = element(susp_moore(6), 3, INTEGERS, [1])
    g = realize_torsion(x, start=12)
    assert g.n == 12 and bockstein(g.cls) == x
    with pytest.raises(ValueError):
        realize_torsion(x, start=7)


def test_realize_exhausted_bound():
    x = element(susp_moore(6), 3, INTEGERS, [1])
    with pytest.raises(NotFound):
        realize_torsion(x, start=12, bound=6)


def test_realize_infinite_order():
    with pytest.raises(NotTorsion):
        realize_torsion(generators(sphere(3), 3)[0])


def test_realize_rejects_wrong_degree():
    with pytest.raises(ValueError):
        realize_torsion(generators(susp_moore(3), 0)[0])


def test_twist_json():
    doc = twist_from_coords(susp_moore(4), [2], FiniteDim(2)).to_json()
    assert doc["order"] == 2 and doc["flavor"] == "PU_2" and doc["group"] == "Z/4"
    assert twist_from_coords(sphere(3), [1]).to_json()["order"] == "infinite"


def test_coboundary_witness_for_trivial_twist():
    K = susp_moore(5)
    x = 5 * generators(K, 3)[0]
    w = coboundary_witness(x)
    assert w is not None
