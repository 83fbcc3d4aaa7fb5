from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moonshine.fusion import FusionRing, validate_fusion_ring
from moonshine.modular_data import (
    ModularData,
    ModularDataFormatError,
    builtin,
    charge_conjugation,
    cyclic_data,
    parse_modular_data,
    s3_data,
    sl2z_relations_check,
    t_order,
    validate_axioms,
    verlinde,
    with_scaled_s,
)

EVEN = [2, 4, 6, 8]


@pytest.mark.parametrize("n", EVEN)
def test_cyclic_axioms(n):
    rep = validate_axioms(cyclic_data(n))
    assert rep.M1 and rep.M2 and rep.M3 and rep.M4
    assert rep.ok


def test_s3_axioms_and_t_order():
    d = s3_data()
    rep = validate_axioms(d)
    assert rep.ok
    assert rep.T_order == 6
    assert t_order(d) == 6


@pytest.mark.parametrize("n", EVEN)
def test_cyclic_t_order_divides_conductor(n):
    d = cyclic_data(n)
    order = t_order(d)
    assert order is not None
    assert all(t**order == 1 for t in d.T)


def test_scaled_s_breaks_unitarity():
    rep = validate_axioms(with_scaled_s(cyclic_data(4), 2))
    assert not rep.M1
    assert not rep.ok


@pytest.mark.parametrize("n", EVEN)
def test_cyclic_verlinde_is_group_ring(n):
    N = verlinde(cyclic_data(n))
    idx = np.arange(n)
    expected = ((idx[:, None, None] + idx[None, :, None]) % n == idx[None, None, :]).astype(int)
    assert np.array_equal(N, expected)


def test_cyclic6_entries():
    N = verlinde(cyclic_data(6))
    assert N[2, 3, 5] == 1
    assert N[2, 3, 4] == 0


def test_s3_fusion_dimensions():
    d = s3_data()
    N = verlinde(d)
    s = d.s_numeric()
    dims = (s[0] / s[0, 0]).real
    assert np.allclose(dims, [1, 1, 2, 2, 2, 2, 3, 3])
    # d_a d_b = sum_c N_ab^c d_c
    assert np.allclose(np.einsum("abc,c->ab", N, dims), np.outer(dims, dims))
    # (e,std) x (e,std) = (e,1) + (e,sgn) + (e,std)
    assert list(N[2, 2]) == [1, 1, 1, 0, 0, 0, 0, 0]


@pytest.mark.parametrize("name", ["s3", "cyclic:2", "cyclic:4", "cyclic:6", "cyclic:8"])
def test_verlinde_rings_valid(name):
    N = verlinde(builtin(name))
    rep = validate_fusion_ring(FusionRing.from_tensor(N, identity=0))
    assert rep.ok and rep.associative and rep.commutative


@pytest.mark.parametrize("n", EVEN)
def test_sl2z_relations(n):
    assert sl2z_relations_check(cyclic_data(n))


def test_sl2z_relations_s3():
    assert sl2z_relations_check(s3_data())


def test_sl2z_flipped_sign_fails():
    d = cyclic_data(4)
    flipped = with_scaled_s(d, -1)
    assert not sl2z_relations_check(flipped)


def test_charge_conjugation():
    assert charge_conjugation(cyclic_data(6)) == [0, 5, 4, 3, 2, 1]
    assert charge_conjugation(s3_data()) == list(range(8))


@given(st.sampled_from(EVEN))
@settings(max_examples=10, deadline=None)
def test_charge_conjugation_is_involution_fixing_identity(n):
    perm = charge_conjugation(cyclic_data(n))
    assert perm[0] == 0
    assert [perm[p] for p in perm] == list(range(n))


@pytest.mark.parametrize("name", ["s3", "cyclic:4", "cyclic:6"])
def test_json_round_trip(name):
    d = builtin(name)
    back = parse_modular_data(d.dumps())
    assert back == d


def test_bundled_json_matches_builtin():
    from importlib import resources

    text = resources.files("moonshine.data").joinpath("moddata", "cyclic4.json").read_text()
    assert parse_modular_data(text) == cyclic_data(4)


def test_float_variant():
    d = cyclic_data(4)
    obj = d.to_json()
    obj.pop("S")
    obj.pop("T")
    obj["S_float"] = [[[z.real, z.imag] for z in row] for row in d.s_numeric()]
    obj["T_float"] = [[z.real, z.imag] for z in d.t_numeric()]
    f = ModularData.from_json(obj)
    assert not f.exact
    rep = validate_axioms(f)
    assert rep.ok
    assert rep.T_order == t_order(d)
    assert np.array_equal(verlinde(f), verlinde(d))


def test_odd_cyclic_rejected():
    with pytest.raises(ValueError):
        cyclic_data(3)


def test_malformed_json():
    with pytest.raises(ModularDataFormatError):
        parse_modular_data('{"labels": ["a"]')
    with pytest.raises(ModularDataFormatError):
        parse_modular_data('{"labels": ["a"], "T": []}')


def test_verlinde_rejects_non_integral():
    from moonshine.modular_data import VerlindeError

    d = with_scaled_s(cyclic_data(2), Fraction(1, 2))
    with pytest.raises(VerlindeError):
        verlinde(d)
