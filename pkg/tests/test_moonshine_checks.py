import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moonshine.moonshine_checks import (
    DecompositionCapExceeded,
    DimensionList,
    enumerate_decompositions,
    load_dims,
    mckay_report,
    parse_dims,
    verify_decomposition,
)

from oracles import e8_fundamental_dims


def test_bundled_monster_dims():
    assert load_dims("monster").dims == (1, 196883, 21296876, 842609326)


def test_e8_dims_match_weyl_oracle():
    fundamentals = e8_fundamental_dims()
    dims = load_dims("e8").dims
    assert dims[0] == 1
    assert list(dims[1:]) == fundamentals[:3]


def test_monster_identities():
    m = load_dims("monster")
    assert verify_decomposition(196884, m.prefix(2), [1, 1])
    assert verify_decomposition(21493760, m.prefix(3), [1, 1, 1])
    assert verify_decomposition(864299970, m, [2, 2, 1, 1])


def test_e8_identities():
    e = load_dims("e8")
    assert verify_decomposition(248, e.prefix(2), [0, 1])
    assert verify_decomposition(4124, e.prefix(3), [1, 1, 1])
    assert verify_decomposition(34752, e, [1, 2, 1, 1])


def test_report_all_pass():
    rep = mckay_report()
    assert rep.ok
    assert [c.value for c in rep.monster] == [196884, 21493760, 864299970]
    assert [c.value for c in rep.e8] == [248, 4124, 34752]
    assert rep.to_json()["ok"] is True


def test_report_detects_corrupt_dimension():
    rep = mckay_report(monster_dims=[1, 196882, 21296876, 842609326])
    assert not rep.ok
    assert not rep.monster[0].ok


def test_enumerate_small():
    assert enumerate_decompositions(5, [1, 2, 3]) == [[5, 0, 0], [3, 1, 0], [2, 0, 1], [1, 2, 0], [0, 1, 1]]


def test_enumerate_contains_monster_split():
    sols = enumerate_decompositions(196884, load_dims("monster").prefix(2))
    assert [1, 1] in sols


def test_enumerate_cap():
    with pytest.raises(DecompositionCapExceeded):
        enumerate_decompositions(1000, [1, 2, 3], cap=50)


def test_dimension_list_validation():
    with pytest.raises(ValueError):
        DimensionList((2, 3))
    with pytest.raises(ValueError):
        DimensionList((1, 5, 5))
    with pytest.raises(ValueError):
        parse_dims("1\nabc\n")
    assert parse_dims("# c\n1\n248 # adjoint\n").dims == (1, 248)


def test_mults_length_checked():
    with pytest.raises(ValueError):
        verify_decomposition(3, [1, 2], [1])


dims_strategy = st.lists(st.integers(2, 30), min_size=0, max_size=3, unique=True).map(lambda xs: [1] + sorted(xs))


@given(st.integers(0, 60), dims_strategy)
@settings(max_examples=60, deadline=None)
def test_enumeration_complete_and_sound(value, dims):
    sols = enumerate_decompositions(value, dims)
    assert all(verify_decomposition(value, dims, s) for s in sols)
    assert len({tuple(s) for s in sols}) == len(sols)
    # count by dynamic programming over coin values
    ways = [1] + [0] * value
    for d in dims:
        for v in range(d, value + 1):
            ways[v] += ways[v - d]
    assert len(sols) == ways[value]
