"""Acceptance gate: one test per criterion, run at its stated tolerance.

Run ``pytest tests/test_acceptance.py`` (or this file directly); the
terminal summary prints one PASS/FAIL line per criterion.
"""
import json
import math
import random
import sys
import time

import pytest

import oracles as o
from permstruct import (
    CORPUS_NAMES,
    EnumerationBudget,
    PermGroup,
    Permutation,
    TowerSpec,
    centralizer,
    corollary2_bound,
    corpus_group,
    direct_product,
    fitting_height,
    fitting_subgroup,
    find_coprime_factorizations,
    generalized_fitting,
    gf_height,
    hall_pair_for_tower,
    intersection,
    is_soluble,
    layer,
    named_group,
    nonsoluble_length,
    normal_closure,
    normal_subgroups,
    replay_theorem1,
    tower,
    tower_lambda_certificate,
    validate_certificate,
    verify_cjs_inequalities,
    verify_corollary2,
    verify_theorem1_bound,
    wreath_product,
)
from permstruct.cli import EXIT_BUDGET, main
from permstruct.group import quotient_map
from permstruct.lab import tower_lambda_evidence


@pytest.fixture(scope="module")
def corpus():
    return {n: corpus_group(n) for n in CORPUS_NAMES}


@pytest.fixture(scope="module")
def factorizations(corpus):
    out = {}
    for n, G in corpus.items():
        if G.order() <= 2000:
            out[n] = find_coprime_factorizations(G)
    return out


def P(cycles, n):
    return Permutation.from_cycles(cycles, n)


def a5_pair():
    return (named_group("A5"), PermGroup([P([(1, 2, 3)], 5), P([(1, 2), (3, 4)], 5)]),
            PermGroup([P([(1, 2, 3, 4, 5)], 5)]))


def s5_pair():
    return (named_group("S5"), PermGroup([P([(1, 2, 3, 4)], 5), P([(1, 2)], 5)]),
            PermGroup([P([(1, 2, 3, 4, 5)], 5)]))


def wreath_pair():
    A4 = PermGroup([P([(1, 2, 3)], 5), P([(1, 2), (3, 4)], 5)])
    C5 = PermGroup([P([(1, 2, 3, 4, 5)], 5)])
    C2 = named_group("C2")
    return wreath_product(named_group("A5"), C2), wreath_product(A4, C2), direct_product(C5, C5)


def test_ac1_core_correctness(corpus):
    t0 = time.time()
    assert len(corpus) == 20 and all(G.order() <= 10_000 for G in corpus.values())
    rng = random.Random(1)
    for name, G in corpus.items():
        X = o.elements_of(G)
        assert G.order() == len(X), name
        # membership on every element and on random permutations
        assert all(G._contains_raw(x) for x in X), name
        pts = list(range(G.degree))
        for _ in range(200):
            rng.shuffle(pts)
            assert G._contains_raw(tuple(pts)) == (tuple(pts) in X), name
        # normal closure of a few random elements
        for x in rng.sample(sorted(X), min(3, len(X))):
            N = normal_closure(G, [Permutation([i + 1 for i in x])])
            assert N.order() == len(o.normal_closure_in(X, [x], G.degree)), name
    assert time.time() - t0 < 60


def test_ac2_invariant_values(corpus):
    expected = [
        ("h", "S4", 3), ("h", "GL23", 3),
        ("h*", "A5", 1), ("h*", "S5", 2), ("h*", "SL25", 1), ("h*", "A5wrC2", 2),
        ("λ", "S4", 0), ("λ", "A5", 1), ("λ", "S5", 1), ("λ", "SL25", 1), ("λ", "A5wrC2", 1),
    ]
    engine = {"h": fitting_height, "h*": gf_height, "λ": lambda G: nonsoluble_length(G)[0]}
    oracle = {"h": o.fitting_height, "h*": o.gf_height, "λ": o.nonsoluble_length}
    for inv, name, value in expected:
        G = corpus[name]
        assert engine[inv](G) == value, (inv, name)
        if G.order() <= 2000:
            assert oracle[inv](o.elements_of(G)) == value, (inv, name)


def test_ac3_generalized_fitting_properties(corpus):
    violations = []
    for name, G in corpus.items():
        F, E, Fs = fitting_subgroup(G), layer(G), generalized_fitting(G)
        if not centralizer(G, Fs).is_subgroup_of(F):
            violations.append((name, "C(F*) <= F"))
        if any(f * e != e * f for f in F.generators for e in E.generators):
            violations.append((name, "[F,E] = 1"))
        hG, lG = gf_height(G), nonsoluble_length(G)[0]
        for N in normal_subgroups(G):
            if generalized_fitting(N).order() != intersection(Fs, N).order():
                violations.append((name, "F*(N) = F*(G) ∩ N", N.order()))
            q = quotient_map(G, N)
            if not q.image_of(Fs).is_subgroup_of(generalized_fitting(q.group)):
                violations.append((name, "F*(G)N/N <= F*(G/N)", N.order()))
            hN, hQ = gf_height(N), gf_height(q.group)
            lN, lQ = nonsoluble_length(N)[0], nonsoluble_length(q.group)[0]
            if not (hN <= hG and hQ <= hG and hG <= hN + hQ):
                violations.append((name, "h* monotone/subadditive", N.order()))
            if not (lN <= lG and lQ <= lG and lG <= lN + lQ):
                violations.append((name, "λ monotone/subadditive", N.order()))
    assert violations == []


def test_ac4_length_bound_and_replay(factorizations):
    t0 = time.time()
    instances = [(n, r.G, r.A, r.B) for n, recs in factorizations.items() for r in recs]
    instances += [("A5", *a5_pair()), ("S5", *s5_pair()), ("A5wrC2", *wreath_pair())]
    refuted, bad_certs = [], []
    for name, G, A, B in instances:
        lam, bound, ok = verify_theorem1_bound(G, A, B)
        if not ok:
            refuted.append((name, A.order(), B.order()))
        cert = replay_theorem1(G, A, B)
        if validate_certificate(cert) or not cert.is_complete() or cert.observed_lambda != lam:
            bad_certs.append((name, A.order(), B.order(), validate_certificate(cert)))
    assert len(instances) > 400
    assert refuted == [] and bad_certs == []
    assert time.time() - t0 < 300


def test_ac5_fitting_height_inequalities(factorizations, corpus):
    checked = 0
    for name, recs in factorizations.items():
        if not is_soluble(corpus[name]):
            continue
        for r in recs:
            for A, B in ((r.A, r.B), (r.B, r.A)):
                res = verify_cjs_inequalities(r.G, A, B)
                assert res.ok(), (name, A.order(), B.order(), res)
                checked += 1
    assert checked > 0
    S4 = named_group("S4")
    res = verify_cjs_inequalities(S4, PermGroup([P([(1, 2, 3, 4)], 4), P([(1, 3)], 4)]),
                                  PermGroup([P([(1, 2, 3)], 4)]))
    assert res.nilpotent and res.h_G == res.h_A + 2 * res.d_B == 3


def test_ac6_soluble_factor_bound(factorizations):
    assert corollary2_bound(2, 1) == 55 and corollary2_bound(3, 1) == 127
    instances = [(r.G, r.A, r.B) for recs in factorizations.values() for r in recs]
    instances += [a5_pair(), s5_pair(), wreath_pair()]
    checked = 0
    for G, A, B in instances:
        for X, Y in ((A, B), (B, A)):
            if is_soluble(Y):
                value, bound, ok = verify_corollary2(G, X, Y)
                assert ok, (G.order(), X.order(), Y.order(), value, bound)
                checked += 1
    assert checked > 0


def test_ac7_tower_example():
    t0 = time.time()
    spec = TowerSpec(2)
    G = tower(spec)
    assert G.degree == 25 and G.order() == 60 ** 6
    A, B = hall_pair_for_tower(spec)
    assert A.order() * B.order() == 60 ** 6 and math.gcd(A.order(), B.order()) == 1
    assert A.is_subgroup_of(G) and B.is_subgroup_of(G)
    assert tower_lambda_certificate(spec) == (2, 2)
    assert time.time() - t0 < 120
    # height 3: construction and the upper-bound series only
    G3 = tower(TowerSpec(3))
    assert G3.degree == 125 and G3.order() == 60 ** 31
    ev = tower_lambda_evidence(TowerSpec(3), lower_bound=False)
    assert ev.upper == 3 and all(ev.checks.values())


def test_ac8_budget_contract(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "a4.grp").write_text("degree 5\n(1 2 3)\n(1 2)(3 4)\n")
    (tmp_path / "c5.grp").write_text("degree 5\n(1 2 3 4 5)\n")
    assert main(["info", "--name", "A5xA5", "--max-elements", "100"]) == EXIT_BUDGET
    code = main(["verify", "--name", "A5", "-A", "a4.grp", "-B", "c5.grp", "--replay", "c.json",
                 "--max-elements", "20"])
    assert code == EXIT_BUDGET
    assert json.loads((tmp_path / "c.json").read_text())["incomplete"] is True
    # inside the replay: the node is marked and nothing it did record is false
    W, A, B = wreath_pair()
    cert = replay_theorem1(W, A, B, EnumerationBudget(max_elements=5000))
    assert cert.incomplete and not cert.is_complete()
    assert all(cert.lemma_checks.values())
    assert cert.observed_lambda in (None, 1)
    # the height-2 tower with its Hall pair is far beyond enumeration budgets
    T = tower(TowerSpec(2))
    TA, TB = hall_pair_for_tower(TowerSpec(2))
    cert = replay_theorem1(T, TA, TB)
    assert cert.incomplete and cert.observed_lambda is None


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
