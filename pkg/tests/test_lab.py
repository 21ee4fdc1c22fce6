import json
import math

import pytest

from permstruct import (
    BudgetExceeded,
    EnumerationBudget,
    NotAFactorization,
    NotSoluble,
    PermGroup,
    Permutation,
    PreconditionError,
    TowerSpec,
    corollary2_bound,
    direct_product,
    gf_height,
    hall_pair_for_tower,
    is_normal,
    named_group,
    nonsoluble_length,
    replay_theorem1,
    tower,
    tower_lambda_certificate,
    validate_certificate,
    verify_cjs_inequalities,
    verify_corollary2,
    verify_theorem1_bound,
    wreath_product,
)
from permstruct.lab import tower_lambda_evidence


def P(cycles, n):
    return Permutation.from_cycles(cycles, n)


A5 = named_group("A5")
A4 = PermGroup([P([(1, 2, 3)], 5), P([(1, 2), (3, 4)], 5)])
C5 = PermGroup([P([(1, 2, 3, 4, 5)], 5)])
S5 = named_group("S5")
S4 = PermGroup([P([(1, 2, 3, 4)], 5), P([(1, 2)], 5)])
C6 = named_group("C6")
C2_in_C6 = PermGroup([P([(1, 4), (2, 5), (3, 6)], 6)])
C3_in_C6 = PermGroup([P([(1, 3, 5), (2, 4, 6)], 6)])


def wreath_hall():
    W = wreath_product(A5, named_group("C2"))
    A = wreath_product(A4, named_group("C2"))
    B = direct_product(C5, C5)
    return W, A, B


def test_wreath_orders():
    W = wreath_product(A5, named_group("C2"))
    assert W.degree == 10 and W.order() == 7200
    assert wreath_product(PermGroup.trivial(3), named_group("S3")).order() == 6
    AA = wreath_product(A5, A5)
    assert AA.degree == 25 and AA.order() == 60 ** 6


def test_tower_spec():
    assert TowerSpec(3).degree == 125
    with pytest.raises(ValueError):
        TowerSpec(0)
    with pytest.raises(ValueError):
        TowerSpec(2, base_degree=6)
    assert tower(TowerSpec(1)).order() == 60
    assert tower(TowerSpec(2)).order() == wreath_product(A5, A5).order()


@pytest.mark.parametrize("height", [1, 2])
def test_hall_pair(height):
    spec = TowerSpec(height)
    G = tower(spec)
    A, B = hall_pair_for_tower(spec)
    assert A.is_subgroup_of(G) and B.is_subgroup_of(G)
    assert A.order() * B.order() == G.order()
    assert math.gcd(A.order(), B.order()) == 1
    if height == 1:
        assert (A.order(), B.order()) == (12, 5)
    else:
        assert (A.order(), B.order()) == (12 ** 6, 5 ** 6)


def test_replay_a5():
    cert = replay_theorem1(A5, A4, C5)
    assert cert.m == 1
    t = cert.simple_factors[0]
    assert (t.s.order(), t.s_a.order(), t.s_b.order()) == (60, 12, 5)
    assert cert.kA.order() == cert.kB.order() == cert.k.order() == 60
    assert cert.l.order() == 60 and cert.radical.order() == 1
    assert cert.observed_lambda == 1 and cert.claimed_bound == 7
    assert all(cert.lemma_checks[k] for k in
               ["l-perm", "l-order", "l2-A", "l2-B", "burnside", "kA∩kB=K", "lambda(K)<=1"])
    assert validate_certificate(cert) == [] and cert.children == []


def test_replay_soluble_short_circuit():
    cert = replay_theorem1(C6, C2_in_C6, C3_in_C6)
    assert cert.observed_lambda == 0 and cert.claimed_bound == 3
    assert cert.m == 0 and cert.children == []
    assert validate_certificate(cert) == []


def test_replay_wreath():
    W, A, B = wreath_hall()
    assert gf_height(A) == 3
    cert = replay_theorem1(W, A, B)
    assert cert.m == 2
    assert cert.lemma_checks["burnside"]
    assert cert.observed_lambda == 1 and cert.claimed_bound == 15
    assert validate_certificate(cert) == []
    for c in cert.children:
        assert A.order() % c.a_order == 0 and B.order() % c.b_order == 0
        assert math.gcd(c.a_order, c.b_order) == 1
    for X in (cert.kA, cert.kB, cert.k):
        assert is_normal(W, X)
    json.dumps(cert.to_dict())


def test_replay_matches_independent_lambda():
    for G, A, B in [(A5, A4, C5), (S5, S4, C5), wreath_hall()]:
        assert replay_theorem1(G, A, B).observed_lambda == nonsoluble_length(G)[0]


def test_replay_parallel_is_deterministic():
    W, A, B = wreath_hall()
    assert replay_theorem1(W, A, B, jobs=2).to_dict() == replay_theorem1(W, A, B, jobs=1).to_dict()


def test_replay_rejects_bad_pair():
    with pytest.raises(NotAFactorization):
        replay_theorem1(A5, A4, A4)


def test_replay_budget_marks_incomplete():
    cert = replay_theorem1(A5, A4, C5, EnumerationBudget(max_elements=30))
    assert cert.incomplete and not cert.is_complete()
    assert "budget" in cert.note
    assert json.loads(json.dumps(cert.to_dict()))["incomplete"] is True


def test_validate_flags_tampering():
    cert = replay_theorem1(A5, A4, C5)
    cert.lemma_checks["burnside"] = False
    assert validate_certificate(cert)
    cert = replay_theorem1(A5, A4, C5)
    cert.observed_lambda = 99
    assert validate_certificate(cert)


def test_theorem1_bound_examples():
    assert tuple(verify_theorem1_bound(A5, A4, C5)) == (1, 7, True)
    assert tuple(verify_theorem1_bound(S5, S4, C5)) == (1, 15, True)
    assert tuple(verify_theorem1_bound(C6, C2_in_C6, C3_in_C6)) == (0, 3, True)


def test_fitting_height_inequalities():
    S4n = named_group("S4")
    D8 = PermGroup([P([(1, 2, 3, 4)], 4), P([(1, 3)], 4)])
    C3 = PermGroup([P([(1, 2, 3)], 4)])
    r = verify_cjs_inequalities(S4n, D8, C3)
    assert (r.h_G, r.h_A, r.d_B) == (3, 1, 1)
    assert r.nilpotent is True and r.h_G == r.h_A + 2 * r.d_B
    assert r.ok()

    F20 = named_group("F20")
    C5f = PermGroup([P([(1, 2, 3, 4, 5)], 5)])
    C4f = PermGroup([P([(2, 3, 5, 4)], 5)])
    for A, B in [(C5f, C4f), (C4f, C5f)]:
        r = verify_cjs_inequalities(F20, A, B)
        assert r.h_G == 2 and r.general and r.ok()
    assert verify_cjs_inequalities(F20, C5f, C4f).odd is None
    assert verify_cjs_inequalities(F20, C4f, C5f).odd is True

    S3 = named_group("S3")
    r = verify_cjs_inequalities(S3, PermGroup([P([(1, 2, 3)], 3)]), PermGroup([P([(1, 2)], 3)]))
    assert r.h_G == 2 and r.general


def test_fitting_height_inequality_errors():
    with pytest.raises(NotSoluble):
        verify_cjs_inequalities(A5, A4, C5)
    with pytest.raises(PreconditionError):
        verify_cjs_inequalities(C5, C5, PermGroup.trivial(5))


def test_soluble_factor_bound():
    assert corollary2_bound(2, 1) == 55
    assert corollary2_bound(3, 1) == 127
    assert tuple(verify_corollary2(A5, A4, C5)) == (1, 55, True)
    assert tuple(verify_corollary2(S5, S4, C5)) == (2, 127, True)
    r = verify_corollary2(C6, C2_in_C6, C3_in_C6)
    assert r.value == 1 and r.ok
    G = direct_product(named_group("C7"), A5)
    C7 = PermGroup([P([(1, 2, 3, 4, 5, 6, 7)], 12)])
    A5b = PermGroup([P([(8, 9, 10, 11, 12)], 12), P([(8, 9, 10)], 12)])
    with pytest.raises(NotSoluble):
        verify_corollary2(G, C7, A5b)


def test_tower_lambda_height2():
    assert tower_lambda_certificate(TowerSpec(2)) == (2, 2)
    ev = tower_lambda_evidence(TowerSpec(2))
    assert ev.series_orders == [1, 60 ** 5, 60 ** 6]
    assert all(ev.checks.values())


def test_tower_lambda_height1():
    with pytest.raises(ValueError):
        tower_lambda_certificate(TowerSpec(1))
    assert nonsoluble_length(tower(TowerSpec(1)))[0] == 1


def test_budget_error_type():
    with pytest.raises(BudgetExceeded):
        nonsoluble_length(A5, EnumerationBudget(max_elements=10))
