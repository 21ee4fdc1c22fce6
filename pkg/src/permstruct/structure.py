"""Characteristic subgroups and series.

Derived series, p-cores, the Fitting and generalized Fitting series, the
soluble radical, components and the layer, simple-factor decompositions and
the nonsoluble length.  Quotients are always realised as coset actions;
preimages are pulled back through the coset map.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import NotSemisimple, NotSoluble
from .group import (
    DEFAULT_BUDGET,
    EnumerationBudget,
    PermGroup,
    _classes_raw,
    _normal_closure_raw,
    centralizer,
    derived_subgroup,
    intersection,
    is_normal,
    join,
    quotient_map,
)

__all__ = [
    "NormalSeries",
    "InvariantReport",
    "prime_factors",
    "is_p_power",
    "derived_series",
    "is_soluble",
    "derived_length",
    "p_core",
    "fitting_subgroup",
    "fitting_series",
    "fitting_height",
    "soluble_radical",
    "minimal_normal_subgroups",
    "normal_subgroups",
    "is_simple",
    "is_semisimple",
    "simple_factor_decomposition",
    "center",
    "layer",
    "components",
    "generalized_fitting",
    "gf_series",
    "gf_height",
    "nonsoluble_length",
    "nonsoluble_length_bruteforce",
    "invariant_report",
]

SOLUBLE = "soluble"
SEMISIMPLE = "semisimple"
QUASINILPOTENT = "quasinilpotent"


def prime_factors(n: int) -> list[int]:
    """Distinct primes dividing n, by trial division."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _elt_order(g: tuple) -> int:
    seen = [False] * len(g)
    o = 1
    for i in range(len(g)):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = g[j]
            k += 1
        o = math.lcm(o, k)
    return o


def _trivial(G: PermGroup) -> PermGroup:
    return PermGroup.trivial(G.degree)


# ---------------------------------------------------------------------------
# series container


@dataclass
class NormalSeries:
    """Ascending chain ``1 = terms[0] < ... < terms[-1] = ambient``.

    ``factor_kinds[i]`` classifies ``terms[i+1]/terms[i]``.
    """

    ambient: PermGroup
    terms: list[PermGroup]
    factor_kinds: list[str]

    def __len__(self) -> int:
        return len(self.factor_kinds)

    def count(self, kind: str) -> int:
        return sum(k == kind for k in self.factor_kinds)

    def orders(self) -> list[int]:
        return [T.order() for T in self.terms]

    def factor(self, i: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> PermGroup:
        """terms[i+1]/terms[i] as a coset-action image."""
        lo, hi = self.terms[i], self.terms[i + 1]
        return quotient_map(hi, lo, budget).group

    def problems(self, budget: EnumerationBudget = DEFAULT_BUDGET) -> list[str]:
        """Every violated invariant, as text; empty when the series is valid."""
        out = []
        G = self.ambient
        if len(self.terms) != len(self.factor_kinds) + 1:
            out.append("kinds do not match gaps")
            return out
        if self.terms[0].order() != 1:
            out.append("series does not start at the trivial group")
        if self.terms[-1].order() != G.order() or not G.is_subgroup_of(self.terms[-1]):
            out.append("series does not end at the ambient group")
        for i, T in enumerate(self.terms):
            if not T.is_subgroup_of(G) or not is_normal(G, T):
                out.append(f"term {i} is not normal")
        for i, kind in enumerate(self.factor_kinds):
            lo, hi = self.terms[i], self.terms[i + 1]
            if not lo.is_subgroup_of(hi) or lo.order() >= hi.order():
                out.append(f"gap {i} does not strictly ascend")
                continue
            Q = self.factor(i, budget)
            if kind == SOLUBLE:
                ok = is_soluble(Q)
            elif kind == SEMISIMPLE:
                ok = is_semisimple(Q, budget)
            elif kind == QUASINILPOTENT:
                ok = generalized_fitting(Q, budget).order() == Q.order()
            else:
                ok = False
            if not ok:
                out.append(f"gap {i} is not {kind}")
        return out

    def is_valid(self, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
        return not self.problems(budget)

    def to_dict(self) -> dict:
        return {
            "orders": self.orders(),
            "kinds": list(self.factor_kinds),
            "terms": [[str(g) for g in T.generators] for T in self.terms],
        }


# ---------------------------------------------------------------------------
# derived series


def derived_series(G: PermGroup) -> list[PermGroup]:
    series = [G]
    while series[-1].order() > 1:
        D = derived_subgroup(series[-1])
        if D.order() == series[-1].order():
            break
        series.append(D)
    return series


def is_soluble(G: PermGroup) -> bool:
    return derived_series(G)[-1].order() == 1


def derived_length(G: PermGroup) -> int:
    series = derived_series(G)
    if series[-1].order() != 1:
        raise NotSoluble("derived length of a nonsoluble group")
    return len(series) - 1


def _perfect_core(G: PermGroup) -> PermGroup:
    return derived_series(G)[-1]


# ---------------------------------------------------------------------------
# Fitting subgroup and radical


def p_core(G: PermGroup, p: int, budget: EnumerationBudget = DEFAULT_BUDGET,
           _classes=None) -> PermGroup:
    """O_p(G), the largest normal p-subgroup."""
    if G.order() % p:
        return _trivial(G)
    classes = _classes if _classes is not None else _classes_raw(G, budget)
    return _prime_power_core(G, classes, [p])[p]


def _prime_power_core(G: PermGroup, classes, primes) -> dict[int, PermGroup]:
    found: dict[int, list[tuple]] = {p: [] for p in primes}
    for x, _ in classes:
        o = _elt_order(x)
        if o == 1:
            continue
        ps = prime_factors(o)
        if len(ps) != 1 or ps[0] not in found:
            continue
        p = ps[0]
        N = _normal_closure_raw(G, [x])
        if is_p_power(N.order(), p):
            found[p].append(x)
    return {p: _normal_closure_raw(G, xs) for p, xs in found.items()}


def fitting_subgroup(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> PermGroup:
    """F(G), the join of the p-cores over primes dividing |G|."""
    if G.order() == 1:
        return G
    classes = _classes_raw(G, budget)
    cores = _prime_power_core(G, classes, prime_factors(G.order()))
    parts = [O for O in cores.values() if O.order() > 1]
    if not parts:
        return _trivial(G)
    return join(*parts, order_hint=math.prod(O.order() for O in parts))


def _ascend(G: PermGroup, step, budget, stop_when_stuck: bool):
    terms = [_trivial(G)]
    while terms[-1].order() < G.order():
        q = quotient_map(G, terms[-1], budget)
        X = step(q.group, budget)
        if X.order() == 1:
            if stop_when_stuck:
                break
            raise NotSoluble("Fitting series stalls below the whole group")
        terms.append(q.preimage(X))
    return terms


def fitting_series(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> NormalSeries:
    """1 = F_0 < F_1 < ... < F_h = G with F_{i+1}/F_i = F(G/F_i); G must be soluble."""
    terms = _ascend(G, fitting_subgroup, budget, stop_when_stuck=False)
    return NormalSeries(G, terms, [SOLUBLE] * (len(terms) - 1))


def fitting_height(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> int:
    return len(fitting_series(G, budget))


def soluble_radical(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> PermGroup:
    """S(G): climb the Fitting series until F(G/N) is trivial."""
    return _ascend(G, fitting_subgroup, budget, stop_when_stuck=True)[-1]


# ---------------------------------------------------------------------------
# normal structure


def _closures_of_classes(G: PermGroup, budget) -> list[PermGroup]:
    out: list[PermGroup] = []
    for x, _ in _classes_raw(G, budget):
        if x == G.chain.idt:
            continue
        N = _normal_closure_raw(G, [x])
        if not any(M.order() == N.order() and N.is_subgroup_of(M) for M in out):
            out.append(N)
    return out


def minimal_normal_subgroups(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> list[PermGroup]:
    closures = sorted(_closures_of_classes(G, budget), key=PermGroup.order)
    minimal: list[PermGroup] = []
    for N in closures:
        if not any(M.order() < N.order() and M.is_subgroup_of(N) for M in minimal):
            minimal.append(N)
    return minimal


def normal_subgroups(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> list[PermGroup]:
    """Every normal subgroup, as joins of normal closures of classes."""
    atoms = _closures_of_classes(G, budget)
    found = [_trivial(G)]
    for N in found:
        for K in atoms:
            if K.is_subgroup_of(N):
                continue
            J = join(N, K)
            if not any(M.order() == J.order() and J.is_subgroup_of(M) for M in found):
                found.append(J)
    return sorted(found, key=PermGroup.order)


def is_simple(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    n = G.order()
    if n == 1:
        return False
    if G.is_abelian():
        return len(prime_factors(n)) == 1 and n == prime_factors(n)[0]
    for x, _ in _classes_raw(G, budget):
        if x != G.chain.idt and _normal_closure_raw(G, [x]).order() != n:
            return False
    return True


def simple_factor_decomposition(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> list[PermGroup]:
    """The nonabelian simple direct factors of a semisimple G.

    They are exactly the minimal normal subgroups; their orders must
    multiply to |G|.
    """
    if G.order() == 1:
        raise NotSemisimple("trivial group has no simple factors")
    mins = minimal_normal_subgroups(G, budget)
    for M in mins:
        if M.is_abelian():
            raise NotSemisimple("abelian minimal normal subgroup")
        if not is_simple(M, budget):
            raise NotSemisimple("minimal normal subgroup is not simple")
    if math.prod(M.order() for M in mins) != G.order():
        raise NotSemisimple("minimal normal subgroups do not fill the group")
    return mins


def is_semisimple(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    try:
        simple_factor_decomposition(G, budget)
    except NotSemisimple:
        return False
    return True


def center(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> PermGroup:
    return centralizer(G, G, budget)


def _socle_of_fitting_free(G: PermGroup, budget) -> PermGroup:
    mins = minimal_normal_subgroups(G, budget)
    if any(M.is_abelian() for M in mins):
        raise AssertionError("abelian minimal normal subgroup in a Fitting-free group")
    if not mins:
        return _trivial(G)
    return join(*mins, order_hint=math.prod(M.order() for M in mins))


def layer(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET, _fit=None) -> PermGroup:
    """E(G), the product of the components.

    With C = C_G(F(G)) we have F(C) = Z(C), so C/Z(C) has trivial Fitting
    subgroup; E(G) is the perfect core of the preimage of its socle.
    """
    if G.order() == 1:
        return G
    F = _fit if _fit is not None else fitting_subgroup(G, budget)
    C = centralizer(G, F, budget)
    Z = intersection(C, F, budget)
    if C.order() == Z.order():
        return _trivial(G)
    q = quotient_map(C, Z, budget)
    soc = _socle_of_fitting_free(q.group, budget)
    return _perfect_core(q.preimage(soc))


def components(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET, _layer=None) -> list[PermGroup]:
    """The subnormal quasisimple subgroups Q_i whose product is E(G)."""
    E = _layer if _layer is not None else layer(G, budget)
    if E.order() == 1:
        return []
    Z = center(E, budget)
    q = quotient_map(E, Z, budget)
    return [_perfect_core(q.preimage(T)) for T in simple_factor_decomposition(q.group, budget)]


def generalized_fitting(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> PermGroup:
    """F*(G) = F(G)E(G)."""
    if G.order() == 1:
        return G
    F = fitting_subgroup(G, budget)
    E = layer(G, budget, _fit=F)
    if E.order() == 1:
        return F
    if F.order() == 1:
        return E
    return join(F, E)


def gf_series(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> NormalSeries:
    terms = _ascend(G, generalized_fitting, budget, stop_when_stuck=False)
    return NormalSeries(G, terms, [QUASINILPOTENT] * (len(terms) - 1))


def gf_height(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> int:
    return len(gf_series(G, budget))


# ---------------------------------------------------------------------------
# nonsoluble length


def nonsoluble_length(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> tuple[int, NormalSeries]:
    """λ(G) from the canonical series.

    Alternately take the soluble radical of the current quotient and then
    the socle of the (radical-free) quotient above it; λ counts the socle
    layers.
    """
    terms = [_trivial(G)]
    kinds: list[str] = []
    lam = 0
    R = terms[0]
    while True:
        q = quotient_map(G, R, budget)
        S = soluble_radical(q.group, budget)
        if S.order() > 1:
            R = q.preimage(S)
            terms.append(R)
            kinds.append(SOLUBLE)
        if R.order() == G.order():
            break
        q = quotient_map(G, R, budget)
        R = q.preimage(_socle_of_fitting_free(q.group, budget))
        terms.append(R)
        kinds.append(SEMISIMPLE)
        lam += 1
    return lam, NormalSeries(G, terms, kinds)


def nonsoluble_length_bruteforce(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET,
                                 max_order: int = 500) -> int:
    """Fewest semisimple factors over all soluble/semisimple normal series.

    Shortest path over the lattice of normal subgroups; only for small groups.
    """
    if G.order() > max_order:
        raise ValueError(f"brute-force λ limited to order <= {max_order}")
    lattice = normal_subgroups(G, budget)
    n = len(lattice)
    best = [math.inf] * n
    best[0] = 0
    for j in range(1, n):
        for i in range(j):
            if best[i] == math.inf:
                continue
            lo, hi = lattice[i], lattice[j]
            if lo.order() >= hi.order() or not lo.is_subgroup_of(hi):
                continue
            Q = quotient_map(hi, lo, budget).group
            if is_soluble(Q):
                best[j] = min(best[j], best[i])
            elif is_semisimple(Q, budget):
                best[j] = min(best[j], best[i] + 1)
    return int(best[-1])


# ---------------------------------------------------------------------------
# report


def _gens(H: PermGroup) -> list[str]:
    return [str(g) for g in H.generators]


@dataclass
class InvariantReport:
    order: int
    is_soluble: bool
    derived_length: int | None
    fitting_height: int | None
    gf_height: int
    nonsoluble_length: int
    fitting: PermGroup
    layer: PermGroup
    gf: PermGroup
    radical: PermGroup
    components: list[PermGroup]
    simple_factor_count: int
    series: NormalSeries
    degree: int = 0
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "degree": self.degree,
            "soluble": self.is_soluble,
            "derived_length": self.derived_length,
            "fitting_height": self.fitting_height,
            "gf_height": self.gf_height,
            "nonsoluble_length": self.nonsoluble_length,
            "simple_factor_count": self.simple_factor_count,
            "fitting": {"order": self.fitting.order(), "generators": _gens(self.fitting)},
            "layer": {"order": self.layer.order(), "generators": _gens(self.layer)},
            "gf": {"order": self.gf.order(), "generators": _gens(self.gf)},
            "radical": {"order": self.radical.order(), "generators": _gens(self.radical)},
            "components": [{"order": Q.order(), "generators": _gens(Q)} for Q in self.components],
            "series": self.series.to_dict(),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def invariant_report(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> InvariantReport:
    sol = is_soluble(G)
    F = fitting_subgroup(G, budget)
    E = layer(G, budget, _fit=F)
    Fs = join(F, E) if E.order() > 1 else F
    R = soluble_radical(G, budget)
    lam, series = nonsoluble_length(G, budget)
    if sol:
        m = 0
    else:
        q = quotient_map(G, R, budget)
        m = len(simple_factor_decomposition(generalized_fitting(q.group, budget), budget))
    return InvariantReport(
        order=G.order(),
        degree=G.degree,
        is_soluble=sol,
        derived_length=derived_length(G) if sol else None,
        fitting_height=fitting_height(G, budget) if sol else None,
        gf_height=gf_height(G, budget),
        nonsoluble_length=lam,
        fitting=F,
        layer=E,
        gf=Fs,
        radical=R,
        components=components(G, budget, _layer=E),
        simple_factor_count=m,
        series=series,
    )
