import pytest

import oracles as o
from permstruct import (
    CORPUS_NAMES,
    NotSoluble,
    PermGroup,
    center,
    centralizer,
    components,
    corpus_group,
    derived_length,
    derived_subgroup,
    fitting_height,
    fitting_series,
    fitting_subgroup,
    generalized_fitting,
    gf_height,
    gf_series,
    intersection,
    invariant_report,
    is_normal,
    is_semisimple,
    is_simple,
    is_soluble,
    layer,
    minimal_normal_subgroups,
    named_group,
    nonsoluble_length,
    normal_subgroups,
    simple_factor_decomposition,
    soluble_radical,
)
from permstruct.group import quotient_map
from permstruct.named import NAMED_ORDERS
from permstruct.structure import nonsoluble_length_bruteforce, p_core, prime_factors

ORACLE_SIZED = [n for n in CORPUS_NAMES if corpus_group(n).order() <= 200]


@pytest.fixture(scope="module")
def groups():
    return {n: corpus_group(n) for n in CORPUS_NAMES}


def test_named_orders():
    for name, n in NAMED_ORDERS.items():
        assert named_group(name).order() == n
    assert named_group("SL25").degree == 24
    assert named_group("PSL27").degree == 7
    assert named_group("GL23").degree == 8
    for n in range(1, 8):
        assert named_group(f"C{n}").order() == n
    assert named_group("D12").order() == 12


@pytest.mark.parametrize("name", ORACLE_SIZED)
def test_against_oracle(name, groups):
    G = groups[name]
    X = o.elements_of(G)
    assert fitting_subgroup(G).order() == len(o.fitting(X))
    assert soluble_radical(G).order() == len(o.soluble_radical(X))
    assert generalized_fitting(G).order() == len(o.gf(X))
    assert gf_height(G) == o.gf_height(X)
    assert nonsoluble_length(G)[0] == o.nonsoluble_length(X)
    if is_soluble(G):
        assert fitting_height(G) == o.fitting_height(X)
    else:
        assert o.fitting_height(X) is None
    assert len(normal_subgroups(G)) == len(o.normal_subgroups(X))
    for p in prime_factors(G.order()):
        assert p_core(G, p).order() == len(o.p_core(X, p))


@pytest.mark.parametrize("name", ORACLE_SIZED)
def test_p_core_contains_normal_p_subgroups(name, groups):
    G = groups[name]
    for N in normal_subgroups(G):
        ps = prime_factors(N.order())
        if len(ps) == 1:
            assert N.is_subgroup_of(p_core(G, ps[0]))


@pytest.mark.parametrize("name,h,d", [("S4", 3, 3), ("GL23", 3, 4), ("A4", 2, 2), ("D8", 1, 2), ("C1", 0, 0)])
def test_soluble_invariants(name, h, d):
    G = named_group(name)
    assert fitting_height(G) == h == gf_height(G)
    assert derived_length(G) == d


def test_fitting_series_of_s4():
    s = fitting_series(named_group("S4"))
    assert s.orders() == [1, 4, 12, 24]
    assert s.is_valid()


def test_nonsoluble_raises():
    with pytest.raises(NotSoluble):
        fitting_height(named_group("A5"))
    with pytest.raises(NotSoluble):
        derived_length(named_group("A5"))


@pytest.mark.parametrize("name,hs,lam", [
    ("A5", 1, 1), ("S5", 2, 1), ("SL25", 1, 1), ("PSL27", 1, 1), ("A5xA5", 1, 1),
    ("A5wrC2", 2, 1), ("A5xC2", 1, 1), ("S4", 3, 0), ("C1", 0, 0),
])
def test_gf_height_and_lambda(name, hs, lam, groups):
    G = groups[name]
    assert gf_height(G) == hs
    assert nonsoluble_length(G)[0] == lam


def test_sl25_structure():
    G = named_group("SL25")
    assert fitting_subgroup(G).order() == 2
    assert center(G).order() == 2
    assert layer(G).order() == 120
    comps = components(G)
    assert [Q.order() for Q in comps] == [120]
    lam, series = nonsoluble_length(G)
    assert series.orders() == [1, 2, 120]


def test_s5_series():
    lam, series = nonsoluble_length(named_group("S5"))
    assert lam == 1
    assert series.orders() == [1, 60, 120]
    assert gf_series(named_group("S5")).orders() == [1, 60, 120]


def test_simple_and_semisimple():
    assert is_simple(named_group("A5")) and is_simple(named_group("PSL27"))
    assert not is_simple(named_group("S5")) and not is_simple(named_group("C1"))
    assert is_simple(named_group("C5"))
    A5A5 = corpus_group("A5xA5")
    assert is_semisimple(A5A5) and not is_semisimple(corpus_group("A5wrC2"))
    assert [F.order() for F in simple_factor_decomposition(A5A5)] == [60, 60]
    assert len(minimal_normal_subgroups(A5A5)) == 2


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_f_star_properties(name, groups):
    G = groups[name]
    F = fitting_subgroup(G)
    E = layer(G)
    Fs = generalized_fitting(G)
    assert centralizer(G, Fs).is_subgroup_of(F)
    for f in F.generators:
        for e in E.generators:
            assert f * e == e * f
    assert Fs.order() == F.order() * E.order() // intersection(F, E).order()
    for Q in components(G):
        assert derived_subgroup(Q).order() == Q.order()
        Z = center(Q)
        assert Z.is_subgroup_of(derived_subgroup(Q))
        assert is_simple(quotient_map(Q, Z).group)


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_normal_subgroup_compatibility(name, groups):
    G = groups[name]
    Fs = generalized_fitting(G)
    hG, lG = gf_height(G), nonsoluble_length(G)[0]
    for N in normal_subgroups(G):
        assert is_normal(G, N)
        assert generalized_fitting(N).order() == intersection(Fs, N).order()
        q = quotient_map(G, N)
        Q = q.group
        assert q.image_of(Fs).is_subgroup_of(generalized_fitting(Q))
        hN, hQ = gf_height(N), gf_height(Q)
        lN, lQ = nonsoluble_length(N)[0], nonsoluble_length(Q)[0]
        assert hN <= hG and hQ <= hG and hG <= hN + hQ
        assert lN <= lG and lQ <= lG and lG <= lN + lQ


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_series_are_valid(name, groups):
    G = groups[name]
    lam, s = nonsoluble_length(G)
    assert s.is_valid()
    assert s.count("semisimple") == lam
    assert gf_series(G).is_valid()


@pytest.mark.parametrize("name", [n for n in CORPUS_NAMES if corpus_group(n).order() <= 500])
def test_lambda_is_minimal(name, groups):
    G = groups[name]
    assert nonsoluble_length(G)[0] == nonsoluble_length_bruteforce(G)


def test_trivial_group_report():
    d = invariant_report(PermGroup.trivial(3)).to_dict()
    assert d["order"] == 1
    assert d["derived_length"] == d["fitting_height"] == d["gf_height"] == d["nonsoluble_length"] == 0
    assert d["fitting"]["order"] == d["layer"]["order"] == d["radical"]["order"] == 1
    assert d["components"] == []


def test_report_keys_stable():
    a = invariant_report(named_group("S4")).to_dict()
    b = invariant_report(named_group("S4")).to_dict()
    assert list(a) == list(b) and a == b
    assert a["fitting_height"] == 3 and a["gf_height"] == 3 and a["nonsoluble_length"] == 0
