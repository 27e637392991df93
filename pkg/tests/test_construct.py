import pytest

from centun.config import EngineConfig
from centun.construct import (CHECK_ORDER, ExponentError, NoCounterexample, counterexample_check,
                              generalized_exponents, lipsman_wolf_element, max_exponent_pairing,
                              multiplicity_inequality_battery, principal_sl2)
from centun.polyalg import GPoly
from centun.rootsys import build_root_system, freudenthal_mult, max_weight_multiplicity


def E(rs, root):
    return GPoly.letter(rs, rs.root_index[tuple(root)])


@pytest.mark.parametrize("family,rank,c", [("A", 1, [1]), ("A", 2, [2, 2]), ("B", 2, [4, 3]),
                                           ("C", 2, [3, 4]), ("G", 2, [6, 10]),
                                           ("A", 3, [3, 4, 3])])
def test_principal_sl2(family, rank, c):
    tds = principal_sl2(build_root_system(family, rank))
    assert tds.c == c
    assert tds.relations_hold()


@pytest.mark.parametrize("family,rank,coords,m", [("A", 1, [2], 2), ("A", 2, [2, 2], 8),
                                                  ("A", 2, [1, 1], 4), ("B", 2, [0, 2], 6),
                                                  ("B", 2, [0, 4], 12)])
def test_max_exponent_pairing(family, rank, coords, m):
    rs = build_root_system(family, rank)
    nu = rs.weight(coords)
    got, value = max_exponent_pairing(rs, nu)
    assert got == m == int((2 * nu).height)
    assert value != 0


def test_max_exponent_pairing_requires_self_dual(a2):
    with pytest.raises(ValueError):
        max_exponent_pairing(a2, a2.weight([1, 0]))


@pytest.mark.parametrize("family,rank,coords,coeffs", [
    ("A", 1, [2], {1: 1}), ("A", 1, [4], {2: 1}), ("A", 2, [1, 1], {1: 1, 2: 1}),
    ("A", 2, [2, 2], {2: 1, 3: 1, 4: 1}), ("A", 2, [3, 0], {3: 1}),
    ("A", 2, [4, 4], {4: 1, 5: 1, 6: 1, 7: 1, 8: 1}), ("B", 2, [0, 2], {1: 1, 3: 1}),
    ("G", 2, [0, 1], {1: 1, 5: 1})])
def test_generalized_exponents(family, rank, coords, coeffs):
    rs = build_root_system(family, rank)
    lam = rs.weight(coords)
    ex = generalized_exponents(rs, lam)
    assert ex.coeffs == coeffs
    zero = rs.weight([0] * rank)
    assert ex.ell == freudenthal_mult(rs, lam, zero)
    assert ex.max_degree == int(lam.height) and ex.coeffs[ex.max_degree] == 1
    if ex.ell > 1:
        assert ex.min_degree < ex.max_degree


def test_generalized_exponents_rejects(a2):
    with pytest.raises(ExponentError):
        generalized_exponents(a2, a2.weight([1, 0]))
    with pytest.raises(ExponentError):
        generalized_exponents(a2, a2.weight([5, 5]), max_height=8)


@pytest.mark.parametrize("family,rank,coords,root", [
    ("A", 1, [1], (1,)), ("A", 1, [2], (1,)), ("A", 1, [3], (1,)), ("A", 2, [1, 1], (1, 1)),
    ("A", 2, [1, 0], (1, 1)), ("A", 2, [0, 1], (1, 1)), ("A", 2, [2, 2], (1, 1)),
    ("B", 2, [0, 2], (1, 2))])
def test_lipsman_wolf_battery(family, rank, coords, root):
    rs = build_root_system(family, rank)
    rep = lipsman_wolf_element(rs, rs.weight(coords))
    assert list(rep.checks) == CHECK_ORDER
    assert rep.ok, rep.details
    assert set(rep.fk.terms) == {((rs.root_index[root], rep.k),)}
    assert rep.k == rep.min_exponent


def test_lipsman_wolf_rejects_zero(a2):
    with pytest.raises(ValueError):
        lipsman_wolf_element(a2, a2.weight([0, 0]))


def test_g2_harmonic_flag_needs_opt_in(g2):
    rep = lipsman_wolf_element(g2, g2.fundamental(0))
    assert rep.checks["harmonic"] is None and not rep.ok
    assert all(rep.checks[k] for k in CHECK_ORDER if k != "harmonic")


def test_counterexample_a2(a2):
    rep = counterexample_check(a2, a2.highest_root)
    assert rep.d == 2 and rep.ell == 5
    assert rep.degrees_present == [4, 6, 8]
    assert rep.max_pairing_degree == 8
    assert rep.max_pairing == 80640
    assert rep.invariance_witness == 0
    assert rep.refutes
    assert rep.exponents.coeffs == {4: 1, 5: 1, 6: 1, 7: 1, 8: 1}


def test_counterexample_b2(b2):
    rep = counterexample_check(b2, b2.highest_root)
    assert rep.d == 2 and rep.refutes
    assert rep.degrees_present == [4, 6, 8, 10, 12]
    assert rep.max_pairing == 1077753600


def test_counterexample_type_a1_rejected(a1):
    for k in range(1, 4):
        with pytest.raises(NoCounterexample):
            counterexample_check(a1, a1.weight([k]))


def test_inequality_battery(a1, a2):
    th = a2.highest_root
    assert multiplicity_inequality_battery(a2, [(th, th)]).ok
    assert freudenthal_mult(a2, 2 * th, a2.weight([0, 0])) >= max_weight_multiplicity(a2, th)
    assert multiplicity_inequality_battery(a1, [(a1.weight([1]), a1.weight([2]))]).ok
    assert freudenthal_mult(a1, a1.weight([3]), a1.weight([1])) >= 1
    with pytest.raises(ValueError):
        multiplicity_inequality_battery(a2, [(th, a2.weight([1, 0]))])


def test_engine_config_validation():
    with pytest.raises(ValueError):
        EngineConfig(size_cap=0)
