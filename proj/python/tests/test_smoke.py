import math

import numpy as np
import pytest

import confgauss as cg


def test_lorentz_basics():
    assert cg.lorentz_product([1, 2, 3, 4, 5], [1, 2, 3, 4, 5]) == 5.0
    assert cg.classify_vector([0, 0, 0, 1, 1]) == "lightlike"
    assert cg.classify_vector([0, 0, 0, 0, 1]) == "timelike"
    assert cg.is_so41(cg.translation([1, 2, 3]))
    assert np.allclose(cg.inversion(), np.diag([-1, -1, -1, 1, -1]))


def test_actions():
    assert np.allclose(cg.act_on_r3(cg.inversion(), [2, 0, 0]), [0.5, 0, 0])
    assert cg.act_on_r3(cg.inversion(), [0, 0, 0]) is None
    assert np.allclose(cg.act_on_r3(cg.parse_word("dil:0.5 tra:1,0,0"), [1, 0, 0]), [1 + math.exp(0.5), 0, 0])
    assert np.allclose(cg.act_on_s3(cg.dilation(0.9), [0, 0, 0, 1]), [0, 0, 0, 1])


def test_catalog():
    names = cg.surface_names()
    assert "catenoid" in names and "hyperbolic_cylinder" in names
    assert len(names) == 11


def test_classify_cylinder():
    r = cg.classify("cylinder", {"rho": 1.0}, grid=64)
    assert r["verdict"] == "conformally CMC in ℝ³"
    assert r["kappa"] == 0
    assert r["hyperplane"]["type"] == "lightlike"
    assert list(r) == ["surface", "params", "grid", "willmore_residual", "q_holomorphy",
                       "isothermic_witness", "kappa", "hyperplane", "verdict"]


def test_classify_transformed_clifford():
    r = cg.classify("clifford_torus", word="rot:x,0.3 dil:0.2")
    assert r["verdict"] == "conformally minimal in S³"
    assert r["kappa"] == -1


def test_errors():
    with pytest.raises(cg.GeometryError, match="umbilic"):
        cg.classify("sphere", grid=32)
    with pytest.raises(cg.GeometryError):
        cg.classify("klein_bottle")
    with pytest.raises(ValueError):
        cg.parse_word("spin:1")


def test_acceptance_criterion():
    assert cg.criterion_count() == 11
    r = cg.run_criterion(2)
    assert r["pass"], r["detail"]
