import pytest
from helpers import skewed_121

from tautilt import fixtures
from tautilt.errors import CapExceededError, ContractViolation
from tautilt.homology import (
    ar_sequence,
    bracket,
    dualize,
    enumerate_indecomposables,
    ext1,
    extension_class_of,
    g_vector,
    injective,
    minimal_presentation,
    projective,
    proj_dim_le1,
    realize_extension,
    tau,
    tau_minus,
    transpose,
)
from tautilt.rep import (
    decompose,
    direct_sum,
    hom_dim,
    is_isomorphic,
)


@pytest.fixture(scope="module")
def a2():
    return fixtures.load("a2")


@pytest.fixture(scope="module")
def a3():
    return fixtures.load("a3lin")


@pytest.fixture(scope="module")
def a3rel():
    return fixtures.load("a3rel")


@pytest.fixture(scope="module")
def skewed():
    return fixtures.load("skewed")


@pytest.fixture(scope="module")
def kron():
    return fixtures.load("kronecker")


# -- presentations ---------------------------------------------------------------


def test_presentation_of_projective(a3):
    pres = minimal_presentation(projective(a3, 2))
    assert pres.p1.is_zero()
    assert pres.p0.vertices == (2,)
    assert pres.eps.is_iso()


def test_presentation_of_simple_middle(a3):
    pres = minimal_presentation(a3.simple(2))
    assert pres.p0.vertices == (2,)   # p0 = 011
    assert pres.p1.vertices == (3,)   # p1 = 001
    assert pres.syzygy.dims == (0, 0, 1)


def test_presentation_of_simple_top_a3rel(a3rel):
    pres = minimal_presentation(a3rel.simple(1))
    assert pres.p0.vertices == (1,)   # 110
    assert pres.p1.vertices == (2,)   # 011
    assert pres.syzygy.dims == (0, 1, 0)  # syzygy 010 is not projective


def test_g_vectors(a3):
    assert g_vector(projective(a3, 1)) == (1, 0, 0)
    assert g_vector(projective(a3, 2)) == (0, 1, 0)
    assert g_vector(a3.simple(2)) == (0, 1, -1)


def test_bracket_identity_instance(a3):
    s2 = a3.simple(2)
    g = g_vector(s2)
    assert bracket(g, s2.dims) == 1
    t = tau(s2)
    assert bracket(g, s2.dims) == hom_dim(s2, s2) - hom_dim(s2, t)


def test_g_vector_additive_on_sums(a3, a3rel):
    for a in (a3, a3rel):
        x, y = a.simple(2), a.injective(2)
        gx, gy = g_vector(x), g_vector(y)
        gsum = g_vector(direct_sum(a, [x, y]).total)
        assert gsum == tuple(p + q for p, q in zip(gx, gy))


# -- duality and transpose ----------------------------------------------------------


def test_dual_of_projective_is_opposite_injective(a3rel):
    op = a3rel.opposite()
    for i in a3rel.quiver.vertices:
        assert is_isomorphic(dualize(projective(a3rel, i)), op.injective(i))


def test_transpose_kills_projectives(a2):
    assert transpose(projective(a2, 1)).is_zero()
    assert transpose(projective(a2, 2)).is_zero()


def test_transpose_is_involutive_off_projectives(a2):
    s1 = a2.simple(1)  # 10, non-projective
    tr = transpose(s1)
    back = transpose(tr)
    assert is_isomorphic(back, s1)


def test_d_tr_equals_tau(a3, a3rel):
    for a in (a3, a3rel):
        for m in (a.simple(1), a.simple(2), a.injective(2)):
            t1 = tau(m)
            t2 = dualize(transpose(m))
            if t1.is_zero():
                assert t2.is_zero()
            else:
                assert is_isomorphic(t1, t2)


# -- tau -----------------------------------------------------------------------------


def test_tau_of_projectives_is_zero(a3, a3rel, skewed):
    for a in (a3, a3rel, skewed):
        for i in a.quiver.vertices:
            assert tau(projective(a, i)).is_zero()


def test_tau_minus_of_injectives_is_zero(a3):
    for i in a3.quiver.vertices:
        assert tau_minus(injective(a3, i)).is_zero()


def test_tau_links_a3lin(a3):
    assert tau(a3.simple(2)).dims == (0, 0, 1)
    assert tau(a3.simple(1)).dims == (0, 1, 0)
    assert tau(a3.injective(2)).dims == (0, 1, 1)


def test_tau_tau_minus_inverse(a3rel):
    m = a3rel.simple(2)
    t = tau(m)
    back = tau_minus(t)
    assert is_isomorphic(back, m)


def test_kronecker_tau_minus_chain(kron):
    m = projective(kron, 2)  # 01
    expected = [(2, 3), (4, 5), (6, 7)]
    for dims in expected:
        m = tau_minus(m)
        assert m.dims == dims


# -- projective dimension --------------------------------------------------------------


def test_proj_dim_projectives(a3rel):
    for i in a3rel.quiver.vertices:
        assert proj_dim_le1(projective(a3rel, i))


def test_proj_dim_a3rel_simples(a3rel):
    assert proj_dim_le1(a3rel.simple(2))        # 010: syzygy 001 projective
    assert not proj_dim_le1(a3rel.simple(1))    # 100: syzygy 010 not projective


# -- Ext^1 ------------------------------------------------------------------------------


def test_ext_from_projective_vanishes(a3):
    for i in a3.quiver.vertices:
        for j in a3.quiver.vertices:
            assert ext1(projective(a3, i), projective(a3, j)).dim == 0
            assert ext1(projective(a3, i), a3.simple(j)).dim == 0


def test_ext_dim_a2(a2):
    assert ext1(a2.simple(1), a2.simple(2)).dim == 1


def test_ext_dim_a3(a3):
    assert ext1(a3.simple(2), a3.simple(3)).dim == 1


def test_realize_zero_class_splits(a3):
    s2, s1 = a3.simple(2), a3.simple(1)
    space = ext1(s1, s2)   # tau(100) = 010, stable hom = End(010)/... = 1
    assert space.dim == 1
    zero_cls = space.class_from_coords([0] * space.dim)
    e, _, _ = realize_extension(zero_cls)
    assert is_isomorphic(e, direct_sum(a3, [s2, s1]).total)


def test_realize_generator_a2(a2):
    space = ext1(a2.simple(1), a2.simple(2))
    e, incl, proj = realize_extension(space.classes[0])
    assert is_isomorphic(e, projective(a2, 1))
    cls = extension_class_of(incl, proj)
    assert space.coords_of(cls.theta) != (0,) * space.dim


def test_realize_generator_a3(a3):
    space = ext1(a3.simple(2), a3.simple(3))
    e, _, _ = realize_extension(space.classes[0])
    assert is_isomorphic(e, projective(a3, 2))  # mesh 001 -> 011 -> 010


# -- almost split sequences ------------------------------------------------------------


def test_ar_sequence_a2(a2):
    seq = ar_sequence(a2.simple(1))  # 0 -> 01 -> 11 -> 10 -> 0
    assert seq.start.dims == (0, 1)
    assert is_isomorphic(seq.middle, projective(a2, 1))


def test_ar_sequence_middle_at_110(a3):
    seq = ar_sequence(a3.injective(2))  # at 110
    assert seq.start.dims == (0, 1, 1)
    factors = decompose(seq.middle).factors
    assert sorted(f.dims for f, _ in factors) == [(0, 1, 0), (1, 1, 1)]


def test_ar_sequence_at_010_a3(a3):
    seq = ar_sequence(a3.simple(2))
    assert seq.start.dims == (0, 0, 1)
    assert is_isomorphic(seq.middle, projective(a3, 2))


def test_ar_sequence_rejects_projective(a3):
    with pytest.raises(ContractViolation):
        ar_sequence(projective(a3, 1))


# -- enumeration ------------------------------------------------------------------------


def test_enumerate_a2(a2):
    ar = enumerate_indecomposables(a2)
    assert ar.count == 3
    assert sorted(ar.labels) == ["01", "10", "11"]


def test_enumerate_a3lin(a3):
    ar = enumerate_indecomposables(a3)
    assert ar.count == 6
    links = {ar.labels[k]: ar.labels[v] for k, v in ar.tau_links.items()}
    assert links == {"010": "001", "100": "010", "110": "011"}


def test_enumerate_a3rel(a3rel):
    ar = enumerate_indecomposables(a3rel)
    assert ar.count == 5
    assert sorted(ar.labels) == ["001", "010", "011", "100", "110"]


def test_enumerate_skewed(skewed):
    ar = enumerate_indecomposables(skewed)
    assert ar.count == 9
    labels = sorted(ar.labels)
    assert labels.count("111") + labels.count("111'") == 2
    # the hand-built 121 shows up
    assert ar.index_of(skewed_121(skewed)) is not None


def test_enumerate_kronecker_cap(kron):
    with pytest.raises(CapExceededError, match="not representation-finite"):
        enumerate_indecomposables(kron, dim_cap=16)


def test_enumerate_wild4():
    a = fixtures.load("wild4")
    ar = enumerate_indecomposables(a)
    assert ar.count == 19


def test_tau_bijection_on_enumeration(a3rel):
    ar = enumerate_indecomposables(a3rel)
    nonproj = [i for i in range(ar.count) if i not in ar.projective_vertex]
    noninj = [i for i in range(ar.count) if i not in ar.injective_vertex]
    assert sorted(ar.tau_links[i] for i in nonproj) == sorted(noninj)
    for i in nonproj:
        assert ar.tau_inv_links[ar.tau_links[i]] == i


def test_ar_formula_over_fixture_pairs(a3rel):
    # dim Ext^1(X, Y) = dim stable Hom(Y, tau X) is asserted inside ext1;
    # touching the full ext table exercises every pair
    ar = enumerate_indecomposables(a3rel)
    table = ar.ext_table()
    assert table[ar.labels.index("100")][ar.labels.index("010")] == 1


def test_nakayama_sends_projective_to_injective(a3rel, skewed):
    from tautilt.homology import star_of_presentation_map

    for a in (a3rel, skewed):
        for i in a.quiver.vertices:
            pres = minimal_presentation(a.simple(i))
            # nu P(j) = D(P_op(j)) = I(j): check on the cover summands
            _, _, dstar = star_of_presentation_map(pres)
            for j, part in zip(pres.p0.vertices, [None] * len(pres.p0.vertices)):
                assert is_isomorphic(dualize(a.opposite().projective(j)), injective(a, j))


def test_middle_never_contains_endpoints(a3, skewed):
    for a in (a3, skewed):
        ar = enumerate_indecomposables(a)
        for idx, seq in ar.sequences.items():
            assert idx not in seq.middle
            assert seq.start not in seq.middle
