"""Wreath towers, Hall factorizations and instance checks of the length bounds.

The centrepiece is :func:`replay_theorem1`, which walks the inductive
argument bounding the nonsoluble length of a coprime product ``G = AB`` by
``2**(h*(A) + h*(B)) - 1`` on a concrete instance and records every
intermediate object and assertion in a :class:`Certificate`.
"""
from __future__ import annotations

import contextvars
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from typing import NamedTuple

from .errors import BudgetExceeded, NotSoluble, PreconditionError
from .factorize import require_coprime_factorization
from .group import (
    DEFAULT_BUDGET,
    EnumerationBudget,
    PermGroup,
    conjugate_subgroup,
    derived_subgroup,
    intersection,
    is_normal,
    normalizer,
    quotient_map,
)
from .perm import Permutation, conjugate
from .structure import (
    _socle_of_fitting_free,
    derived_length,
    fitting_height,
    fitting_subgroup,
    generalized_fitting,
    gf_height,
    is_simple,
    is_soluble,
    nonsoluble_length,
    prime_factors,
    simple_factor_decomposition,
    soluble_radical,
)

__all__ = [
    "wreath_product",
    "TowerSpec",
    "tower",
    "hall_pair_for_tower",
    "tower_layers",
    "TowerLambdaEvidence",
    "tower_lambda_evidence",
    "tower_lambda_certificate",
    "FactorTriple",
    "Certificate",
    "replay_theorem1",
    "validate_certificate",
    "theorem1_bound",
    "verify_theorem1_bound",
    "CJSResult",
    "verify_cjs_inequalities",
    "corollary2_bound",
    "verify_corollary2",
]


# ---------------------------------------------------------------------------
# wreath products and towers


def _wreath_raw(bottom: list[tuple], n: int, top: list[tuple], m: int) -> list[tuple]:
    gens = []
    for j in range(m):
        for g in bottom:
            img = list(range(n * m))
            off = j * n
            for i in range(n):
                img[off + i] = off + g[i]
            gens.append(tuple(img))
    for t in top:
        gens.append(tuple(t[j] * n + i for j in range(m) for i in range(n)))
    return gens


def wreath_product(bottom: PermGroup, top: PermGroup) -> PermGroup:
    """Imprimitive wreath product on ``bottom.degree * top.degree`` points.

    Point ``(j, i)`` (block j, point i) is numbered ``j*n + i + 1``; the
    block copies of ``bottom`` come first, then ``top`` permuting blocks.
    """
    n, m = bottom.degree, top.degree
    return PermGroup._from_raw(n * m, _wreath_raw(bottom._gens, n, top._gens, m))


@dataclass(frozen=True)
class TowerSpec:
    """A5 wr (A5 wr (... wr A5)) with ``height`` copies of A5."""

    height: int
    base_degree: int = 5
    action: str = "imprimitive"

    def __post_init__(self):
        if self.height < 1:
            raise ValueError("tower height must be positive")
        if self.base_degree != 5 or self.action != "imprimitive":
            raise ValueError("only the imprimitive A5 tower is supported")

    @property
    def degree(self) -> int:
        return 5 ** self.height


_A5 = [(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)]          # (1 2 3 4 5), (1 2 3)
_A4 = [(1, 2, 0, 3, 4), (1, 0, 3, 2, 4)]          # (1 2 3), (1 2)(3 4): fixes 5
_C5 = [(1, 2, 3, 4, 0)]


def tower_layers(height: int, block: list[tuple] = _A5) -> list[list[tuple]]:
    """Generators of the iterated wreath product, grouped by layer.

    Layer 0 holds the copies acting inside the finest blocks (size 5); layer
    k holds copies permuting blocks of size 5**k inside blocks of size
    5**(k+1).  The kernel of the action on blocks of size 5**j is generated
    by layers 0..j-1.
    """
    layers = [list(block)]
    deg = 5
    for _ in range(height - 1):
        new_layers = [_wreath_raw(block, 5, [], deg)]
        # existing layers now act on block indices
        for layer in layers:
            new_layers.append(_wreath_raw([], 5, layer, deg))
        layers = new_layers
        deg *= 5
    return layers


def _tower_from(height: int, block: list[tuple]) -> PermGroup:
    return PermGroup._from_raw(5 ** height, [g for layer in tower_layers(height, block) for g in layer])


def tower(spec: TowerSpec) -> PermGroup:
    return _tower_from(spec.height, _A5)


def hall_pair_for_tower(spec: TowerSpec) -> tuple[PermGroup, PermGroup]:
    """The Hall {2,3}-subgroup (iterated A4) and Hall 5-subgroup (iterated C5)."""
    return _tower_from(spec.height, _A4), _tower_from(spec.height, _C5)


def _centralizer_in_symmetric_is_trivial(H: PermGroup) -> bool:
    """Sufficient test that no nonidentity permutation centralizes H.

    A centralizing permutation c maps each orbit representative w to a
    point fixed by the stabilizer H_w, and is then determined on the orbit
    of w.  If H_w fixes only w for every representative, c is the identity.
    """
    for orbit in H.orbits():
        w = orbit[0]
        ch = H.stabilizer_chain_with_base([w])
        stab = ch.gens[1] if len(ch.base) > 1 else []
        fixed = [x for x in range(H.degree) if all(s[x] == x for s in stab)]
        if fixed != [w - 1]:
            return False
    return True


@dataclass
class TowerLambdaEvidence:
    height: int
    lower: int
    upper: int
    checks: dict[str, bool]
    series_orders: list[int]
    notes: list[str] = field(default_factory=list)


def _block_action(gens: list[tuple], size: int) -> list[tuple]:
    """Images of gens acting on consecutive blocks of the given size."""
    return [tuple(g[j * size] // size for j in range(len(g) // size)) for g in gens]


def tower_lambda_evidence(spec: TowerSpec, lower_bound: bool = True) -> TowerLambdaEvidence:
    """Bounds on the nonsoluble length of a tower of height >= 2.

    Upper bound: the kernels of the block actions form a normal series whose
    factors are direct powers of A5.  Lower bound at height 2: G is perfect
    and the base A5^5 has trivial centralizer, so S(G) = 1 and G is not
    semisimple; one semisimple factor therefore cannot suffice.  Taller
    towers map onto the height-2 tower, so they inherit its lower bound.
    """
    k = spec.height
    if k < 2:
        raise ValueError("height must be at least 2; height 1 is A5 itself")
    layers = tower_layers(k)
    G = PermGroup._from_raw(5 ** k, [g for layer in layers for g in layer])
    checks: dict[str, bool] = {}
    notes: list[str] = []

    # series T_0 = 1 < T_1 < ... < T_k = G, T_j generated by layers 0..j-1
    terms = [PermGroup.trivial(G.degree)]
    for j in range(1, k + 1):
        terms.append(PermGroup._from_raw(G.degree, [g for layer in layers[:j] for g in layer]))
    orders = [T.order() for T in terms]
    checks["tower_order"] = orders[-1] == 60 ** ((5 ** k - 1) // 4)
    for j in range(1, k + 1):
        copies = 5 ** (k - j)
        checks[f"factor_{j}_order"] = orders[j] == orders[j - 1] * 60 ** copies
        checks[f"term_{j}_normal"] = is_normal(G, terms[j])
        # T_j/T_{j-1} is the direct product of the layer-(j-1) copies of A5,
        # which act on disjoint blocks modulo T_{j-1}
        size = 5 ** (j - 1)
        copy_gens = _block_action(layers[j - 1], size)
        per_block = [copy_gens[i:i + 2] for i in range(0, len(copy_gens), 2)]
        simple_ok = True
        for gens in per_block[:1]:
            block_image = PermGroup._from_raw(len(gens[0]), gens)
            simple_ok = block_image.order() == 60 and is_simple(block_image)
        checks[f"factor_{j}_simple_copies"] = simple_ok
    upper = k if all(checks.values()) else None
    if upper is None:
        notes.append("series checks failed; no upper bound")

    lower = 0 if is_soluble(G) else 1
    if lower_bound:
        if k == 2:
            base = terms[1]
            checks["perfect"] = derived_subgroup(G).order() == G.order()
            checks["base_proper"] = base.order() < G.order()
            checks["base_centralizer_trivial"] = _centralizer_in_symmetric_is_trivial(base)
            if checks["perfect"] and checks["base_proper"] and checks["base_centralizer_trivial"]:
                lower = 2
        else:
            # G acts on its 25 blocks of size 5**(k-2) as the height-2 tower
            size = 5 ** (k - 2)
            img = PermGroup._from_raw(25, _block_action(G._gens, size))
            checks["maps_onto_height2"] = img.order() == 60 ** 6
            sub = tower_lambda_evidence(TowerSpec(2))
            if checks["maps_onto_height2"] and sub.lower == 2:
                lower = 2
            notes.append("lower bound inherited from the height-2 quotient")
    return TowerLambdaEvidence(k, lower, upper if upper is not None else -1, checks, orders, notes)


def tower_lambda_certificate(spec: TowerSpec) -> tuple[int, int]:
    """(lower, upper) bounds on λ of the tower; height 2 gives (2, 2)."""
    ev = tower_lambda_evidence(spec)
    return ev.lower, ev.upper


# ---------------------------------------------------------------------------
# replay of the inductive length bound


def theorem1_bound(h_star_a: int, h_star_b: int) -> int:
    return 2 ** (h_star_a + h_star_b) - 1


def _not_p_group(n: int) -> bool:
    return len(prime_factors(n)) >= 2


def _gens(H: PermGroup | None) -> list[str] | None:
    return None if H is None else [str(g) for g in H.generators]


@dataclass
class FactorTriple:
    s: PermGroup
    s_a: PermGroup
    s_b: PermGroup

    def to_dict(self) -> dict:
        return {
            "S": {"order": self.s.order(), "generators": _gens(self.s)},
            "S_A": {"order": self.s_a.order(), "generators": _gens(self.s_a)},
            "S_B": {"order": self.s_b.order(), "generators": _gens(self.s_b)},
        }


@dataclass
class Certificate:
    """One node of a replay.

    ``radical``, ``l``, ``kA``, ``kB`` and ``k`` live in the node's group G
    (they all contain S(G)); the simple factors live in the radical-free
    quotient G/S(G), of order ``quotient_order``.
    """

    group_order: int
    a_order: int
    b_order: int
    h_star_a: int | None = None
    h_star_b: int | None = None
    claimed_bound: int | None = None
    observed_lambda: int | None = None
    radical: PermGroup | None = None
    quotient_order: int | None = None
    simple_factors: list[FactorTriple] = field(default_factory=list)
    kA: PermGroup | None = None
    kB: PermGroup | None = None
    k: PermGroup | None = None
    l: PermGroup | None = None
    lemma_checks: dict[str, bool] = field(default_factory=dict)
    lambdas: dict[str, int] = field(default_factory=dict)
    children: list["Certificate"] = field(default_factory=list)
    incomplete: bool = False
    note: str = ""

    @property
    def m(self) -> int:
        return len(self.simple_factors)

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def all_checks(self) -> bool:
        return all(self.lemma_checks.values()) and all(c.all_checks() for c in self.children)

    def is_complete(self) -> bool:
        return not self.incomplete and all(c.is_complete() for c in self.children)

    def to_dict(self) -> dict:
        def sub(H):
            return None if H is None else {"order": H.order(), "generators": _gens(H)}

        return {
            "group_order": self.group_order,
            "a_order": self.a_order,
            "b_order": self.b_order,
            "h_star_a": self.h_star_a,
            "h_star_b": self.h_star_b,
            "claimed_bound": self.claimed_bound,
            "observed_lambda": self.observed_lambda,
            "radical": sub(self.radical),
            "quotient_order": self.quotient_order,
            "m": self.m,
            "simple_factors": [t.to_dict() for t in self.simple_factors],
            "kA": sub(self.kA),
            "kB": sub(self.kB),
            "k": sub(self.k),
            "l": sub(self.l),
            "lemma_checks": dict(self.lemma_checks),
            "lambdas": dict(self.lambdas),
            "incomplete": self.incomplete,
            "note": self.note,
            "children": [c.to_dict() for c in self.children],
        }


def _same_subgroup(H: PermGroup, K: PermGroup) -> bool:
    return H.order() == K.order() and H.is_subgroup_of(K)


def _factor_permutation(g: tuple, factors: list[PermGroup]) -> list[int] | None:
    """Index j with S_i^g = S_j for each i, or None if g does not permute them."""
    out = []
    for S in factors:
        conj = [conjugate(s, g) for s in S._gens]
        hit = [j for j, T in enumerate(factors) if all(T._contains_raw(c) for c in conj)]
        if len(hit) != 1:
            return None
        out.append(hit[0])
    return out


def _orbits_on_factors(perms: list[list[int]], m: int) -> list[set[int]]:
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i, j in enumerate(p):
            parent[find(i)] = find(j)
    groups: dict[int, set[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), set()).add(i)
    return list(groups.values())


def _normalizes(g: tuple, S: PermGroup) -> bool:
    return all(S._contains_raw(conjugate(s, g)) for s in S._gens)


def replay_theorem1(G: PermGroup, A: PermGroup, B: PermGroup,
                    budget: EnumerationBudget = DEFAULT_BUDGET, jobs: int = 1) -> Certificate:
    """Replay the inductive bound λ(G) <= 2^(h*(A)+h*(B)) - 1 on one instance.

    Raises NotAFactorization if (A, B) is not a coprime factorization of G.
    A budget overrun inside any node marks that node ``incomplete`` and skips
    its subtree instead of failing the run.
    """
    require_coprime_factorization(G, A, B)
    return _replay(G, A, B, budget, jobs)


def _replay(G: PermGroup, A: PermGroup, B: PermGroup, budget: EnumerationBudget,
            jobs: int) -> Certificate:
    cert = Certificate(G.order(), A.order(), B.order())
    try:
        _replay_node(cert, G, A, B, budget, jobs)
    except BudgetExceeded as e:
        cert.incomplete = True
        cert.note = f"budget exceeded: {e}"
    return cert


def _replay_node(cert: Certificate, G, A, B, budget, jobs) -> None:
    ck = cert.lemma_checks
    hA, hB = gf_height(A, budget), gf_height(B, budget)
    cert.h_star_a, cert.h_star_b = hA, hB
    cert.claimed_bound = theorem1_bound(hA, hB)
    lam, _ = nonsoluble_length(G, budget)
    cert.observed_lambda = lam

    if lam == 0 or is_soluble(G):
        cert.note = "soluble group: nothing to replay"
        ck["bound"] = lam <= cert.claimed_bound
        return
    if hA + hB <= 1:
        cert.note = "degenerate base: one factor is trivial"
        ck["bound"] = lam <= cert.claimed_bound
        return

    # pass to the radical-free quotient
    R = soluble_radical(G, budget)
    cert.radical = R
    q = quotient_map(G, R, budget)
    Gb, Ab, Bb = q.group, q.image_of(A), q.image_of(B)
    cert.quotient_order = Gb.order()
    ck["radical_quotient_factorized"] = (Ab.order() * Bb.order() == Gb.order()
                                         and math.gcd(Ab.order(), Bb.order()) == 1)

    Lb = _socle_of_fitting_free(Gb, budget)
    cert.l = q.preimage(Lb)
    factors = simple_factor_decomposition(Lb, budget)
    m = len(factors)
    triples = [FactorTriple(S, intersection(S, Ab, budget), intersection(S, Bb, budget)) for S in factors]
    cert.simple_factors = triples
    ck["factors_split"] = all(t.s_a.order() * t.s_b.order() == t.s.order() for t in triples)

    # the conjugation action on {S_i}
    g_perms = [_factor_permutation(g, factors) for g in Gb._gens]
    ck["G_permutes_factors"] = all(p is not None for p in g_perms)

    def lperm(Hb: PermGroup, which: str) -> bool:
        for h in Hb._gens:
            p = _factor_permutation(h, factors)
            if p is None:
                return False
            for i, j in enumerate(p):
                X = getattr(triples[i], which)
                Y = getattr(triples[j], which)
                hX = conjugate_subgroup(X, Permutation._raw(h))
                if not _same_subgroup(hX, Y):
                    return False
        return True

    ck["l-perm"] = lperm(Ab, "s_a") and lperm(Bb, "s_b")

    orbits = _orbits_on_factors([p for p in g_perms if p is not None], m)
    ck["l-order"] = all(
        len({triples[i].s_a.order() for i in orb}) == 1 and len({triples[i].s_b.order() for i in orb}) == 1
        for orb in orbits
    )

    FA, FB = generalized_fitting(Ab, budget), generalized_fitting(Bb, budget)
    idx_A = [i for i, t in enumerate(triples) if _not_p_group(t.s_a.order())]
    idx_B = [i for i, t in enumerate(triples) if _not_p_group(t.s_b.order())]
    ck["l2-A"] = all(_normalizes(f, factors[i]) for i in idx_A for f in FA._gens)
    ck["l2-B"] = all(_normalizes(f, factors[i]) for i in idx_B for f in FB._gens)
    ck["burnside"] = set(idx_A) | set(idx_B) == set(range(m))

    normalizers = [Gb if m == 1 else normalizer(Gb, S, budget) for S in factors]

    def meet(idx):
        if not idx:
            return Gb
        return reduce(lambda X, Y: intersection(X, Y, budget), (normalizers[i] for i in idx))

    KA, KB, K = meet(idx_A), meet(idx_B), meet(range(m))
    cert.kA, cert.kB, cert.k = q.preimage(KA), q.preimage(KB), q.preimage(K)
    ck["kA_normal"] = is_normal(Gb, KA)
    ck["kB_normal"] = is_normal(Gb, KB)
    ck["k_normal"] = is_normal(Gb, K)
    ck["F*(A)<=kA"] = FA.is_subgroup_of(KA)
    ck["F*(B)<=kB"] = FB.is_subgroup_of(KB)
    ck["kA∩kB=K"] = intersection(KA, KB, budget).order() == K.order() and K.is_subgroup_of(KA)

    lam_K, _ = nonsoluble_length(K, budget)
    K_over_L = quotient_map(K, Lb, budget).group
    ck["lambda(K)<=1"] = lam_K <= 1
    ck["K/L_soluble"] = Lb.is_subgroup_of(K) and is_soluble(K_over_L)
    qK = quotient_map(KA, K, budget)
    lam_KA_K, _ = nonsoluble_length(qK.group, budget)

    def child(X: PermGroup):
        if X.order() == Gb.order():
            return None
        qx = quotient_map(Gb, X, budget)
        return _replay(qx.group, qx.image_of(Ab), qx.image_of(Bb), budget, jobs)

    if jobs > 1:
        # each worker runs in a copy of this context so the seed carries over
        with ThreadPoolExecutor(max_workers=2) as pool:
            fa = pool.submit(contextvars.copy_context().run, child, KA)
            fb = pool.submit(contextvars.copy_context().run, child, KB)
            ca, cb = fa.result(), fb.result()
    else:
        ca, cb = child(KA), child(KB)

    s = hA + hB
    lam_GA = 0 if ca is None else ca.observed_lambda
    lam_GB = 0 if cb is None else cb.observed_lambda
    for c in (ca, cb):
        if c is None:
            continue
        cert.children.append(c)
        if c.h_star_a is not None:
            ck.setdefault("induction_drop", True)
            ck["induction_drop"] &= c.h_star_a + c.h_star_b <= s - 1
        ck.setdefault("child_coprime", True)
        ck["child_coprime"] &= (Ab.order() % c.a_order == 0 and Bb.order() % c.b_order == 0
                                and c.a_order * c.b_order == c.group_order)
    cert.lambdas = {"G/kA": lam_GA, "G/kB": lam_GB, "kA/K": lam_KA_K, "K": lam_K}
    if lam_GA is not None and lam_GB is not None:
        ck["kA/K_embeds"] = lam_KA_K <= lam_GB
        ck["series_sum"] = lam <= lam_GA + lam_KA_K + lam_K
    ck["bound"] = lam <= cert.claimed_bound


def validate_certificate(cert: Certificate, _budget_depth: int | None = None) -> list[str]:
    """Every failed assertion in the certificate tree, as text."""
    out = []
    if _budget_depth is None and cert.h_star_a is not None:
        _budget_depth = cert.h_star_a + cert.h_star_b
    for name, ok in cert.lemma_checks.items():
        if not ok:
            out.append(f"check {name} failed at node of order {cert.group_order}")
    if cert.observed_lambda is not None and cert.claimed_bound is not None:
        if cert.observed_lambda > cert.claimed_bound:
            out.append(f"λ = {cert.observed_lambda} exceeds bound {cert.claimed_bound}")
    if _budget_depth is not None and cert.depth() > max(_budget_depth, 1):
        out.append(f"recursion depth {cert.depth()} exceeds h*(A)+h*(B) = {_budget_depth}")
    for c in cert.children:
        out.extend(validate_certificate(c, None if _budget_depth is None else _budget_depth - 1))
    return out


# ---------------------------------------------------------------------------
# direct verification of the bounds


class BoundCheck(NamedTuple):
    value: int
    bound: int
    ok: bool


def verify_theorem1_bound(G: PermGroup, A: PermGroup, B: PermGroup,
                          budget: EnumerationBudget = DEFAULT_BUDGET) -> BoundCheck:
    """(λ(G), 2^(h*(A)+h*(B)) - 1, holds?) computed directly, without the replay."""
    require_coprime_factorization(G, A, B)
    lam, _ = nonsoluble_length(G, budget)
    bound = theorem1_bound(gf_height(A, budget), gf_height(B, budget))
    return BoundCheck(lam, bound, lam <= bound)


@dataclass
class CJSResult:
    """Verdicts for the three Fitting-height inequalities; None where not applicable."""

    h_G: int
    h_A: int
    h_B: int
    d_B: int
    general: bool
    odd: bool | None
    nilpotent: bool | None

    def ok(self) -> bool:
        return self.general and self.odd is not False and self.nilpotent is not False


def verify_cjs_inequalities(G: PermGroup, A: PermGroup, B: PermGroup,
                            budget: EnumerationBudget = DEFAULT_BUDGET) -> CJSResult:
    """Check h(G) against h(A), h(B) and d(B) for a soluble coprime product.

    general:   h(G) <= h(A) + h(B) + 4 d(B) - 1
    |B| odd:   h(G) <= h(A) + h(B) + 2 d(B) - 1
    B nilpotent: h(G) <= h(A) + 2 d(B)
    """
    require_coprime_factorization(G, A, B)
    if not is_soluble(G):
        raise NotSoluble("the Fitting-height inequalities need a soluble group")
    if A.order() == G.order() or B.order() == G.order():
        raise PreconditionError("A and B must be proper subgroups")
    hG, hA, hB = fitting_height(G, budget), fitting_height(A, budget), fitting_height(B, budget)
    d = derived_length(B)
    b = B.order()
    nilpotent = fitting_subgroup(B, budget).order() == b
    return CJSResult(
        h_G=hG, h_A=hA, h_B=hB, d_B=d,
        general=hG <= hA + hB + 4 * d - 1,
        odd=(hG <= hA + hB + 2 * d - 1) if b % 2 else None,
        nilpotent=(hG <= hA + 2 * d) if nilpotent else None,
    )


def corollary2_bound(h_star_a: int, d: int) -> int:
    """Explicit bound on h*(G) for G = AB coprime with B soluble of derived length d.

    With L = 2^(h*(A)+d) - 1, the canonical λ-series has at most L
    semisimple factors (each of generalized Fitting height 1) and L+1
    soluble factors.  Each soluble factor is a coprime product of a section
    of A (Fitting height <= h*(A)) and a section of B (Fitting height and
    derived length <= d), so its Fitting height is at most h*(A) + 5d - 1.
    Heights add along a normal series.
    """
    L = 2 ** (h_star_a + d) - 1
    return L + (L + 1) * (h_star_a + 5 * d - 1)


def verify_corollary2(G: PermGroup, A: PermGroup, B: PermGroup,
                      budget: EnumerationBudget = DEFAULT_BUDGET) -> BoundCheck:
    require_coprime_factorization(G, A, B)
    if not is_soluble(B):
        raise NotSoluble("B must be soluble")
    bound = corollary2_bound(gf_height(A, budget), derived_length(B))
    hs = gf_height(G, budget)
    return BoundCheck(hs, bound, hs <= bound)
