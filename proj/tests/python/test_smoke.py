import cmath
import math

import pytest

import qlab


def test_catalog_and_algebra():
    assert qlab.catalog_discriminants() == [6, 10, 15, 22]
    assert qlab.ramified_primes(3, -1) == [2, 3]
    assert qlab.hilbert_symbol(3, -1, 3) == -1
    rep = qlab.verify_order(6)
    assert rep["ok"] and rep["reduced_discriminant"] == 6


def test_counts():
    assert qlab.count(6, 0.1234 + 1.1j, X=2.0) == 1
    assert qlab.count(6, 1j, X=2.0) == 2
    prof = qlab.count_profile(6, 1j, [100.0, 1000.0])
    assert prof[1] == qlab.count(6, 1j, X=1000.0)
    assert abs(prof[1] / (1.5 * 1000) - 1) < 0.1
    with pytest.raises(qlab.DomainError):
        qlab.count(6, 1j, X=1.0)


def test_spectral():
    X = 1000.0
    h = qlab.shc_transform("disc", 0.5j, X=X)
    assert abs(h.real / (math.pi * (X - 2)) - 1) < 1e-9
    assert abs(qlab.shc_transform("moll", 0.5j, delta=0.1) - 1) < 1e-9
    assert qlab.main_term(6, X) == pytest.approx(math.pi * X / qlab.shimura_volume(6))
    with pytest.raises(qlab.DomainError):
        qlab.shc_transform("disc", 0.7j, X=X)


def test_scan_and_fit():
    rows = qlab.error_scan(6, 1j, 100.0, 10000.0, 8)
    assert [r["X"] for r in rows] == sorted(r["X"] for r in rows)
    for r in rows:
        assert r["N"] - r["M"] - r["E"] == 0
    fit = qlab.fit_power_law([(r["X"], r["N"]) for r in rows])
    assert abs(fit["exponent"] - 1) < 0.05
    with pytest.raises(qlab.ConfigError):
        qlab.error_scan(6, 1j, 100.0, 100.0, 2)


def test_cm_and_hecke():
    s = qlab.cm_points(6, -24)
    assert s["h"] == qlab.eichler_class_number(6, -24) == 2
    for p in s["points"]:
        assert p["point"].imag > 0
    assert qlab.class_number(-23) == 3
    assert not qlab.embedding_criterion(6, -23)
    assert qlab.hecke_degree(6, 7) == qlab.sigma1(7) == 8
