import random
from fractions import Fraction as F

import pytest

from partialact.actions import PERIODIC, ActionSystem, Closure
from partialact.catalog import arc, standard
from partialact.crossed import matmul
from partialact.errors import (FreenessError, RequiresExtension,
                               UnsupportedBackend, ValidationError)
from partialact.extension import extend_group, extend_total_order
from partialact.gaussian import GQ, certainly_greater
from partialact.generators import chain_system, labeled_chain_forests
from partialact.groupoid import (GroupoidFunction, build_groupoid,
                                 check_cocycle, conv_adjoint, conv_mul,
                                 cstar_norm, i_norm, matrix_realize)
from partialact.groups import Zd
from partialact.spaces import FiniteSpace


def std(i):
    return build_groupoid(extend_total_order(standard(i)))


def counterdiagonal(gpd, n):
    return GroupoidFunction.delta(gpd, *[(str(k), str(n - 1 - k))
                                         for k in range(n)])


def random_function(gpd, rng, k=4):
    arrows = list(gpd.cocycle)
    vals = {}
    for _ in range(rng.randint(1, k)):
        vals[rng.choice(arrows)] = GQ(rng.randint(-3, 3), rng.randint(-2, 2))
    return GroupoidFunction(gpd, vals)


def small_groupoids():
    out = [std(1), std(2)]
    for n in range(1, 5):
        for chains in labeled_chain_forests(n):
            out.append(build_groupoid(extend_group(chain_system(chains))
                                      .system))
    return out


def test_standard_two_arrows():
    gpd = std(2)
    assert len(gpd) == 16
    assert gpd.orbits == [["0", "1", "2", "3"]]
    for (x, y), t in gpd.cocycle.items():
        assert t == (int(y) - int(x),)


def test_interval_backend_rejected():
    with pytest.raises(UnsupportedBackend):
        build_groupoid(extend_total_order(arc()))


def test_cone_only_rejected():
    with pytest.raises(RequiresExtension):
        build_groupoid(standard(2))


def test_fixed_point_rejected():
    X = FiniteSpace(("p",))
    sys = ActionSystem(Zd(1), X, {(2,): X.identity()}, False,
                       Closure(PERIODIC, (("lattice", ((2,),)),)))
    with pytest.raises(FreenessError) as err:
        build_groupoid(sys)
    assert err.value.witness == ((2,), "p")
    assert err.value.exit_code == 4


def test_units_and_matrix_units():
    gpd = std(2)
    f = counterdiagonal(gpd, 4)
    assert conv_mul(GroupoidFunction.units(gpd), f) == f
    assert conv_mul(f, GroupoidFunction.units(gpd)) == f
    d = GroupoidFunction.delta
    # e_{2,1} e_{1,0} = e_{2,0}; arrows are (row, column)
    assert conv_mul(d(gpd, ("2", "1")), d(gpd, ("1", "0"))) == \
        d(gpd, ("2", "0"))
    assert conv_mul(d(gpd, ("0", "1")), d(gpd, ("1", "2"))) == \
        d(gpd, ("0", "2"))
    assert conv_mul(d(gpd, ("1", "2")), d(gpd, ("0", "1"))) == \
        GroupoidFunction(gpd)
    assert conv_adjoint(d(gpd, ("0", "1"))) == d(gpd, ("1", "0"))


def test_not_an_arrow():
    gpd = build_groupoid(extend_group(chain_system([("0",), ("1",)])).system)
    with pytest.raises(ValidationError):
        GroupoidFunction.delta(gpd, ("0", "1"))


def test_i_norm_examples():
    gpd = std(2)
    f = GroupoidFunction(gpd, {("0", "0"): 5, ("1", "1"): 5, ("1", "2"): 1})
    assert i_norm(f) == 6
    assert i_norm(GroupoidFunction(gpd)) == 0
    g = GroupoidFunction(gpd, {("0", "1"): GQ(1, 1)})
    assert not isinstance(i_norm(g), F)


@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_counterdiagonal_norms(n):
    gpd = std(n.bit_length() - 1)
    f = counterdiagonal(gpd, n)
    assert i_norm(f) == 1
    assert abs(cstar_norm(f) - 1.0) < 1e-9


def test_cstar_examples():
    gpd = std(2)
    sym = GroupoidFunction.delta(gpd, ("0", "1"), ("1", "0"))
    assert abs(cstar_norm(sym) - 1.0) < 1e-12
    assert abs(cstar_norm(sym.scale(2)) - 2.0) < 1e-12


def test_cocycle_on_small_systems():
    for gpd in small_groupoids():
        check_cocycle(gpd)
        for x, y, t in gpd.arrows:
            assert gpd.system.map(t).apply(x) == y


def test_convolution_is_block_multiplication():
    rng = random.Random(1)
    for gpd in small_groupoids():
        f, g = random_function(gpd, rng), random_function(gpd, rng)
        blocks = zip(matrix_realize(f), matrix_realize(g),
                     matrix_realize(conv_mul(f, g)))
        for (_, A), (_, B), (_, AB) in blocks:
            assert AB == matmul(A, B)


def test_star_algebra_laws():
    rng = random.Random(2)
    for gpd in small_groupoids():
        f, g, h = (random_function(gpd, rng) for _ in range(3))
        assert conv_mul(conv_mul(f, g), h) == conv_mul(f, conv_mul(g, h))
        assert conv_adjoint(conv_adjoint(f)) == f
        assert conv_adjoint(conv_mul(f, g)) == \
            conv_mul(conv_adjoint(g), conv_adjoint(f))


def test_norm_chain():
    rng = random.Random(3)
    gpds = [std(i) for i in (1, 2, 3)] + small_groupoids()[::7]
    for k in range(1000):
        gpd = gpds[k % len(gpds)]
        f, g = random_function(gpd, rng), random_function(gpd, rng)
        If, Ig = i_norm(f), i_norm(g)
        assert not certainly_greater(cstar_norm(f), If + F(1, 10 ** 9))
        assert not certainly_greater(i_norm(conv_mul(f, g)), If * Ig)
        assert i_norm(conv_adjoint(f)) == If
        c = cstar_norm(f)
        assert abs(cstar_norm(conv_mul(conv_adjoint(f), f)) - c * c) \
            <= 1e-6 * max(c * c, 1e-12)
