import pytest

from conftest import newton_side, read_polytope
from cyforge.conifold import HodgeData, conifold_report, hodge_data
from cyforge.errors import NonIntegralInvariant
from cyforge.topology import euler_c3, intersection_numbers, topology_data, wall_key


def test_quintic_intersections():
    assert intersection_numbers(newton_side("quintic")) == (5, 50)


@pytest.mark.parametrize("name,expected", [("x44a", (144, 120)), ("x44b", (144, 120)),
                                           ("x48a1", (200, 140)), ("x48a2", (200, 140)), ("x48b", (200, 140))])
def test_table_rows(name, expected):
    assert intersection_numbers(newton_side(name)) == expected


def test_multiplicity_two():
    d = read_polytope("x65")
    assert intersection_numbers(d, multiplicity=2) == (8, 56)
    assert intersection_numbers(d) == (64, 112)


def test_wrong_multiplicity_is_an_error():
    with pytest.raises(NonIntegralInvariant):
        intersection_numbers(newton_side("quintic"), multiplicity=2)
    with pytest.raises(ValueError):
        intersection_numbers(newton_side("quintic"), multiplicity=0)


def test_euler():
    assert euler_c3(1, 45) == -88
    assert euler_c3(1, 25) == -48
    assert euler_c3(7, 7) == 0


def _key(name, m=1, poly=None):
    d = poly or newton_side(name)
    h = hodge_data(d, conifold_report(d))
    return wall_key(topology_data(d, h, m), h), topology_data(d, h, m)


def test_wall_keys():
    keys = {_key(n)[0] for n in ("x48a1", "x48a2", "x48b")}
    assert keys == {(1, 51, 200, 140)}
    k44, t44 = _key("x44a")
    assert k44 == (1, 45, 144, 120)
    # same intersection numbers with different h21 give a different key
    assert wall_key(t44, HodgeData(10, 30, 1, 47)) != k44
    assert _key("x44a")[0] == _key("x44a")[0]


def test_wall_key_requires_one_parameter():
    d = newton_side("cross")
    h = hodge_data(d, conifold_report(d))
    with pytest.raises(ValueError):
        wall_key(topology_data(d, h), h)


def test_c3_column():
    for name in ("x44a", "x48b"):
        _, t = _key(name)
        assert t.c3 < 0 and t.c3 % 2 == 0
    _, t = _key("x65", 2, read_polytope("x65"))
    assert (t.h_cubed, t.c2_h, t.c3) == (8, 56, -176)
