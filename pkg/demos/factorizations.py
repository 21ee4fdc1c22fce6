"""
Coprime factorizations and a replayed length bound
==================================================

Every G = AB with gcd(|A|, |B|) = 1 is found by walking the subgroup
lattice.  For each we compare λ(G) with 2^(h*(A)+h*(B)) - 1 and replay the
inductive argument, which records the simple factors of the socle, the
normalizer intersections K_A, K_B, K and a handful of checks.
"""
import json
from collections import Counter

from permstruct import (
    PermGroup,
    Permutation,
    corpus_group,
    direct_product,
    named_group,
    wreath_product,
    find_coprime_factorizations,
    replay_theorem1,
    validate_certificate,
    verify_theorem1_bound,
)

G = corpus_group("PSL27")
recs = find_coprime_factorizations(G)
print(len(recs), "coprime factorizations of PSL(2,7):",
      Counter((r.a_order, r.b_order) for r in recs))

worst = max(recs, key=lambda r: verify_theorem1_bound(G, r.A, r.B).bound)
print("λ, bound, ok =", tuple(verify_theorem1_bound(G, worst.A, worst.B)))

cert = replay_theorem1(G, worst.A, worst.B)
print("simple factors:", [(t.s.order(), t.s_a.order(), t.s_b.order()) for t in cert.simple_factors])
print("checks:", cert.lemma_checks)
print("problems:", validate_certificate(cert))

# A two-factor example: A5 wr C2 with A = A4 wr C2 and B = C5 x C5.
A4 = PermGroup([Permutation.from_cycles([(1, 2, 3)], 5), Permutation.from_cycles([(1, 2), (3, 4)], 5)])
C5 = PermGroup([Permutation.from_cycles([(1, 2, 3, 4, 5)], 5)])
W = wreath_product(named_group("A5"), named_group("C2"))
cert = replay_theorem1(W, wreath_product(A4, named_group("C2")), direct_product(C5, C5))
print("A5 wr C2: m =", cert.m, " λ =", cert.observed_lambda, " bound =", cert.claimed_bound,
      " |K_A| =", cert.kA.order(), " children:", [c.group_order for c in cert.children])
print(json.dumps(cert.to_dict()["lemma_checks"], ensure_ascii=False))
