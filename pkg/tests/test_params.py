import numpy as np
import pytest

from trikerr.params import SystemParams, validate_params


def test_pumped_ladder_layout():
    p = SystemParams.pumped_ladder(5.0, 3.0)
    assert np.allclose(p.delta, [4.0, 5.0, 6.0])
    assert np.allclose(p.gamma, [1.0, 1.0, 1.0])
    assert p.u0 == -1.0 and p.omega2 == 3.0
    # symmetric sides make the pair conversion dispersionless
    assert p.delta_d == 0.0


def test_delta_d_general():
    p = SystemParams(delta=[1.0, 4.0, 2.0], gamma=[1, 1, 1], u0=-1, omega2=0)
    assert p.delta_d == pytest.approx(4.0 - 1.5)


def test_with_omega2_and_swap():
    p = SystemParams.pumped_ladder(5.0, 3.0)
    q = p.with_omega2(0.25)
    assert q.omega2 == 0.25 and np.allclose(q.delta, p.delta)
    s = p.swapped_sides()
    assert np.allclose(s.delta, [6.0, 5.0, 4.0])
    assert s.delta_d == p.delta_d


def test_dict_round_trip():
    p = SystemParams(delta=[0.5, -1.0, 2.0], gamma=[1.0, 0.5, 2.0],
                     u0=-0.7, omega2=1.3)
    q = SystemParams.from_dict(p.to_dict())
    assert np.allclose(q.delta, p.delta) and np.allclose(q.gamma, p.gamma)
    assert q.u0 == p.u0 and q.omega2 == p.omega2


def test_from_dict_rejects_bad_keys():
    d = SystemParams.pumped_ladder(5.0, 3.0).to_dict()
    d["bogus"] = 1.0
    with pytest.raises(ValueError, match="bogus"):
        SystemParams.from_dict(d)
    del d["bogus"], d["u0"]
    with pytest.raises(KeyError):
        SystemParams.from_dict(d)


def test_shape_validation():
    with pytest.raises(ValueError):
        SystemParams(delta=[1.0, 2.0], gamma=[1, 1, 1], u0=-1, omega2=0)


def test_validate_params_flags():
    good = SystemParams.pumped_ladder(5.0, 3.0)
    rep = validate_params(good)
    assert rep.ok and not rep.violations
    # delta2 = 5 > sqrt(3), attractive: the multistability note must fire
    assert any("multistability" in n for n in rep.notes)

    bad = SystemParams(delta=[0, 0, 0], gamma=[1, -1, 1], u0=-1, omega2=-2)
    rep = validate_params(bad)
    assert not rep.ok and len(rep.violations) == 2
