import pytest
from hypothesis import given, strategies as st

from centun.rootsys import (CartanDatum, RootSystemError, build_root_system, dual_weight,
                            freudenthal_mult, max_weight_multiplicity, weight_multiplicities,
                            weyl_dimension)
from centun.repbuild import build_irrep

TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 2), ("B", 3), ("C", 3), ("G", 2)]


@pytest.mark.parametrize("family,rank,npos,order", [
    ("A", 1, 1, 2), ("A", 2, 3, 6), ("A", 3, 6, 24), ("B", 2, 4, 8), ("C", 2, 4, 8),
    ("G", 2, 6, 12), ("B", 3, 9, 48), ("C", 3, 9, 48), ("D", 4, 12, 192), ("F", 4, 24, 1152),
])
def test_root_counts_and_weyl_orders(family, rank, npos, order):
    rs = build_root_system(family, rank)
    assert rs.n_pos == npos
    assert len(rs.weyl_group) == order


def test_small_examples(a1, a2, g2):
    assert a1.positive_roots == [(1,)] and a1.invariant_degrees == [2]
    assert sorted(a2.heights) == [1, 1, 2]
    assert max(g2.heights) == 5


def test_bad_types_rejected():
    for family, rank in [("A", 0), ("B", 1), ("D", 3), ("E", 5), ("G", 3), ("X", 2)]:
        with pytest.raises(RootSystemError):
            build_root_system(family, rank)


def test_g2_seven_dimensional_is_first_fundamental(g2):
    assert weyl_dimension(g2, g2.fundamental(0)) == 7
    assert weyl_dimension(g2, g2.highest_root) == 14


@pytest.mark.parametrize("family,rank", TYPES)
def test_jacobi_and_killing_invariance(family, rank):
    rs = build_root_system(family, rank)
    assert rs.jacobi_violations() == 0
    assert rs.killing_invariance_violations() == 0


@pytest.mark.parametrize("family,rank", TYPES)
def test_bracket_closure(family, rank):
    rs = build_root_system(family, rank)
    roots = set(rs.roots)
    for phi in rs.roots:
        for psi in rs.roots:
            s = tuple(x + y for x, y in zip(phi, psi))
            if s not in roots and any(s):
                assert rs.N(phi, psi) == 0
            a, b = rs.root_index[phi], rs.root_index[psi]
            br = rs.brackets[a][b]
            if s in roots:
                assert set(br) <= {rs.root_index[s]}


@pytest.mark.parametrize("family,rank", TYPES)
def test_highest_root_bracket_is_coroot(family, rank):
    rs = build_root_system(family, rank)
    th = rs.positive_roots[-1]
    e, f = rs.root_index[th], rs.root_index[tuple(-x for x in th)]
    h = rs.bracket({e: 1}, {f: 1})
    # h_theta expanded in simple coroots, weighted by length ratios
    want = {rs.n_pos + i: c for i, c in enumerate(rs.coroot_coords(th)) if c}
    assert h == want


def test_killing_values_a1(a1):
    e, h, f = 0, 1, 2
    assert a1.killing_value(e, f) == 4
    assert a1.killing_value(h, h) == 8
    assert a1.killing_value(e, e) == 0


@pytest.mark.parametrize("family,rank", TYPES)
def test_killing_positive_definite_on_h(family, rank):
    rs = build_root_system(family, rank)
    n = rs.rank
    G = [[rs.killing_h[i][j] for j in range(n)] for i in range(n)]
    # leading principal minors
    from centun.linalg import det_dense
    for m in range(1, n + 1):
        assert det_dense([row[:m] for row in G[:m]]) > 0


@pytest.mark.parametrize("family,rank", TYPES)
def test_weyl_group_closed_and_duplicate_free(family, rank):
    rs = build_root_system(family, rank)
    probe = rs.rho + rs.rho
    images = [rs.act_word(w, probe.fund) for w, _ in rs.weyl_group]
    assert len(set(images)) == len(images)  # 2 rho is regular
    closed = set(images)
    for i in range(rs.rank):
        for img in images:
            assert rs.reflect_fund(img, i) in closed


def test_dual_weight_examples(a1, a2):
    assert dual_weight(a2, a2.fundamental(0)) == a2.fundamental(1)
    assert dual_weight(a1, a1.weight([3])) == a1.weight([3])
    assert dual_weight(a2, a2.highest_root) == a2.highest_root
    with pytest.raises(ValueError):
        dual_weight(a2, a2.weight([1, -1]))


@given(st.sampled_from(TYPES), st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_dual_weight_is_involution(tr, coords):
    rs = build_root_system(*tr)
    lam = rs.weight(coords[:rs.rank])
    assert dual_weight(rs, dual_weight(rs, lam)) == lam


def test_freudenthal_examples(a1, a2):
    zero = a2.weight([0, 0])
    assert freudenthal_mult(a2, a2.highest_root, zero) == 2
    assert freudenthal_mult(a1, a1.weight([4]), a1.weight([4])) == 1
    assert freudenthal_mult(a2, a2.highest_root, a2.weight([1, 0])) == 0
    V = build_irrep(a2, 2 * a2.highest_root)
    assert freudenthal_mult(a2, 2 * a2.highest_root, zero) == len(V.weight_spaces[(0, 0)]) == 3


def test_weyl_dimension_examples(a1, a2):
    assert weyl_dimension(a2, a2.highest_root) == 8
    assert weyl_dimension(a2, 2 * a2.highest_root) == 27
    for k in range(6):
        assert weyl_dimension(a1, a1.weight([k])) == k + 1


@given(st.sampled_from(TYPES), st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_freudenthal_sums_to_weyl_dimension_and_is_weyl_invariant(tr, coords):
    rs = build_root_system(*tr)
    lam = rs.weight(coords[:rs.rank])
    mults = weight_multiplicities(rs, lam)
    assert sum(mults.values()) == weyl_dimension(rs, lam)
    for mu, m in list(mults.items())[:6]:
        for img in rs.orbit(mu):
            assert mults.get(tuple(int(x) for x in img), 0) == m


def test_max_weight_multiplicity(a1, a2, b2):
    for k in range(1, 5):
        assert max_weight_multiplicity(a1, a1.weight([k])) == 1
    assert max_weight_multiplicity(a2, a2.highest_root) == 2
    assert max_weight_multiplicity(b2, b2.highest_root) == 2


@pytest.mark.parametrize("family,rank", [("A", 2), ("B", 2), ("G", 2), ("A", 3)])
def test_zero_weight_iff_root_lattice(family, rank):
    rs = build_root_system(family, rank)
    zero = rs.weight([0] * rank)
    import itertools
    for coords in itertools.product(range(3), repeat=rank):
        lam = rs.weight(coords)
        assert (freudenthal_mult(rs, lam, zero) > 0) == lam.in_root_lattice()


def test_serialization_deterministic():
    a = build_root_system("G", 2).serialize()
    b = build_root_system(CartanDatum.of("G", 2)).serialize()
    assert a == b
    assert a.splitlines()[1] == "positive_roots 6"
