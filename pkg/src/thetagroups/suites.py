"""Verification suites: batches of exact checks with pass/fail records.

Each suite takes a seeded ``random.Random`` and a :class:`Limits` and
returns a list of :class:`Check`.  The CLI runs them by name; the
acceptance tests call them with the acceptance parameters.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, prod

from .abelian import FinAbGroup
from .adelic import (
    AdelePoint,
    adelic_pairing,
    adelic_pairing_levels,
    injectivity_witness,
    level_theta_group,
    ns_to_h2,
    pullback,
    push_point,
    random_integral_matrix,
    random_ns_form,
    random_point,
    supp,
    weil_relation_check,
)
from .errors import ThetaError
from .reps import (
    GPrime,
    Heisenberg,
    all_irreps,
    character_norm,
    classify_irreps,
    count_irreps,
    decompose_weight_module,
    direct_sum,
    gprime_class_count,
    induce_with_intertwiner,
    inner_product,
    random_monomial,
)
from .skew import (
    all_maximal_isotropic,
    is_maximal_isotropic,
    is_nondegenerate,
    maximal_isotropic,
    random_nondegenerate_form,
    reconstruction_check,
    symplectic_decompose,
)
from .theta import (
    Cocycle,
    ThetaGroup,
    commutator_form,
    coboundary,
    descent,
    extensions_equivalent,
    heisenberg_of_type,
    lift_level_subgroup,
    random_bilinear,
    random_cochain,
)

SMALL_TYPES = [(2,), (3,), (4,), (6,), (2, 2), (2, 4)]


@dataclass
class Limits:
    group_cap: int = 4096
    dim_cap: int = 64
    level_bound: int = 48
    cases: int = 0  # 0 means the suite's own default


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    counterexample: object = None


@dataclass
class SuiteResult:
    suite: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _cases(limits: Limits, default: int) -> int:
    return limits.cases or default


def _guard(name, fn):
    """Run one check body; exceptions become failures with the error as counterexample."""
    try:
        return fn()
    except (ThetaError, AssertionError, ValueError) as exc:
        return Check(name, False, f"{type(exc).__name__}: {exc}", repr(exc))


# -- representation theory -----------------------------------------------------------


def suite_counting(rng, limits, types=SMALL_TYPES):
    out = []
    for t in types:
        for n in range(t[-1] + 1):
            def body(t=t, n=n):
                c = classify_irreps(t, n)
                count, dim = count_irreps(t, n)
                ok = len(c.classes) == count and c.dims == {dim}
                detail = (f"type {t}, n={n}: {len(c.classes)} classes of dim {sorted(c.dims)}; "
                          f"prod gcd(n,d_i)^2 = {count}, D_n = {dim}")
                return Check(f"count {t} n={n}", ok, detail, None if ok else (len(c.classes), c.dims))
            out.append(_guard(f"count {t} n={n}", body))
    return out


def suite_uniqueness(rng, limits, types=SMALL_TYPES):
    out = []
    for t in types:
        def body(t=t):
            c = classify_irreps(t, 1)
            root = isqrt(FinAbGroup(t).order ** 2)
            ok = len(c.classes) == 1 and c.dims == {root}
            return Check(f"weight 1 {t}", ok, f"{len(c.classes)} class of dim {sorted(c.dims)}, sqrt|K| = {root}")
        out.append(_guard(f"weight 1 {t}", body))
    return out


def suite_gprime(rng, limits, types=((2,), (3,), (2, 2))):
    out = []
    for t in types:
        def body(t=t):
            Gp = GPrime(Heisenberg(t))
            brute = gprime_class_count(t, cap=limits.group_cap)
            formula = Gp.class_formula()
            terms = " + ".join(str(prod(gcd(r, d) ** 2 for d in t)) for r in range(Gp.heis.exponent))
            return Check(f"G' classes {t}", brute == formula,
                         f"|G'| = {Gp.order}, brute force {brute}, sum = {terms} = {formula}")
        out.append(_guard(f"G' classes {t}", body))
    return out


def suite_irreducibility(rng, limits, types=SMALL_TYPES, max_copies=3):
    out = []
    for t in types:
        for n in range(t[-1] + 1):
            def body(t=t, n=n):
                classes = classify_irreps(t, n).classes
                norms = [character_norm(W) for W in classes]
                if any(x != 1 for x in norms):
                    return Check(f"norms {t} n={n}", False, f"norms {norms}")
                bad = None
                for i, A in enumerate(classes):
                    for B in classes[i + 1:]:
                        ip = inner_product(A, B)
                        if ip != 0:
                            bad = (A, B, ip)
                            break
                    if bad:
                        break
                W = rng.choice(classes)
                sums = {}
                for k in range(1, max_copies + 1):
                    sums[k] = character_norm(direct_sum([W] * k))
                ok = bad is None and all(v == k * k for k, v in sums.items())
                detail = (f"{len(classes)} norms = 1, cross products 0: {bad is None}, "
                          f"k-fold sums of {W}: {dict((k, str(v)) for k, v in sums.items())}")
                return Check(f"norms {t} n={n}", ok, detail, bad)
            out.append(_guard(f"norms {t} n={n}", body))
    return out


def suite_induction(rng, limits, types=SMALL_TYPES):
    out = []
    for t in types:
        for n in range(t[-1] + 1):
            def body(t=t, n=n):
                classes = classify_irreps(t, n).classes
                for W in classes:
                    ind = induce_with_intertwiner(t, n, W.y, W.chi)
                    if ind.rep.dim != W.dim:
                        return Check(f"induce {t} n={n}", False, f"dim {ind.rep.dim} != {W.dim}", W)
                return Check(f"induce {t} n={n}", True,
                             f"{len(classes)} classes, intertwiner verified on all {GPrime(Heisenberg(t)).order} elements of G'")
            out.append(_guard(f"induce {t} n={n}", body))
    return out


def suite_decomposition(rng, limits, types=SMALL_TYPES, method="weights"):
    out = []
    trials = _cases(limits, 50)
    for t in types:
        def body(t=t):
            for trial in range(trials):
                n = rng.randrange(t[-1] + 1)
                irr = all_irreps(t, n)
                pick = [rng.choice(irr) for _ in range(rng.randint(1, 3))]
                S = direct_sum(pick)
                if S.dim > limits.dim_cap:
                    continue
                Q, Qinv = random_monomial(S.dim, S.level, rng)
                V = S.conjugate(Q, Qinv)
                res = decompose_weight_module(V, n, method=method)
                got = sorted((iso.y, iso.chi) for iso in res for _ in iso.copies)
                want = sorted(W.label_class() for W in pick)
                if got != want:
                    return Check(f"decompose {t}", False, f"trial {trial}, n={n}", (got, want))
            return Check(f"decompose {t}", True, f"{trials} conjugated sums recovered their label classes")
        out.append(_guard(f"decompose {t}", body))
    return out


# -- structure -------------------------------------------------------------------------


def suite_structure(rng, limits):
    out = []
    forms = _cases(limits, 100)

    def recon():
        for i in range(forms):
            form = random_nondegenerate_form(rng, max_order=min(4096, limits.group_cap))
            dec = symplectic_decompose(form)
            dec.verify()
            if not reconstruction_check(dec):
                return Check("reconstruction", False, f"form {i}", form)
            H = maximal_isotropic(form)
            if len(H) ** 2 != form.base.order or not is_maximal_isotropic(form, H):
                return Check("reconstruction", False, f"maximal isotropic of form {i}", form)
        return Check("reconstruction", True, f"{forms} random nondegenerate forms, all pairs compared")

    out.append(_guard("reconstruction", recon))
    samples = [(2,), (3,), (4,), (6,), (8,), (2, 2), (2, 4), (3, 3), (4, 4), (2, 2, 2), (2, 2, 2, 2)]
    for t in samples:
        def body(t=t):
            form = random_nondegenerate_form(rng, type_=t)
            if form.base.order > 256:
                return Check(f"isotropic law {t}", True, "skipped: |K| > 256")
            Hs = all_maximal_isotropic(form)
            bad = [H for H in Hs if len(H) ** 2 != form.base.order]
            return Check(f"isotropic law {t}", not bad,
                         f"{len(Hs)} maximal isotropic subgroups, each with |H|^2 = {form.base.order}", bad[:1])
        out.append(_guard(f"isotropic law {t}", body))
    return out


def suite_descent(rng, limits, types=SMALL_TYPES + [(2, 2, 2), (3, 3)]):
    out = []
    for t in types:
        def body(t=t):
            G = heisenberg_of_type(t)
            form = commutator_form(G)
            K = G.base
            checked = 0
            for _ in range(6):
                gens = [rng.choice(K.elements()) for _ in range(rng.randint(0, 2))]
                iso = [g for g in gens if all(not form.eval(g, h) for h in gens)]
                try:
                    L = lift_level_subgroup(G, iso)
                except ThetaError:
                    continue
                D = descent(G, L)
                Q = D.group
                qform = commutator_form(Q)
                if Q.base.order * len(L.subgroup) ** 2 != K.order or not is_nondegenerate(qform):
                    return Check(f"descend {t}", False, f"subgroup {L.subgroup}", iso)
                checked += 1
            return Check(f"descend {t}", True, f"{checked} level subgroups: |base'| |K'|^2 = |base|, nondegenerate")
        out.append(_guard(f"descend {t}", body))
    return out


def suite_cocycle(rng, limits, bases=((2, 2), (3, 3), (2, 4))):
    out = []
    pairs = _cases(limits, 200)
    for div in bases:
        def body(div=div):
            K = FinAbGroup(div)
            agree = {True: 0, False: 0}
            for i in range(pairs):
                f = Cocycle.bilinear(K, random_bilinear(K, rng)) + coboundary(K, random_cochain(K, rng))
                if rng.random() < 0.5:
                    g = f + coboundary(K, random_cochain(K, rng))
                else:
                    g = Cocycle.bilinear(K, random_bilinear(K, rng)) + coboundary(K, random_cochain(K, rng))
                f, g = f.tabulate(), g.tabulate()
                eq = extensions_equivalent(f, g)
                same = commutator_form(ThetaGroup(f)) == commutator_form(ThetaGroup(g))
                if eq != same:
                    return Check(f"cocycles {div}", False, f"pair {i}", (f.to_json(), g.to_json()))
                agree[eq] += 1
            return Check(f"cocycles {div}", True,
                         f"{pairs} pairs: {agree[True]} equivalent, {agree[False]} not; matches commutator forms")
        out.append(_guard(f"cocycles {div}", body))
    return out


# -- adelic ------------------------------------------------------------------------------


def suite_adelic(rng, limits):
    cases = _cases(limits, 200)
    out = []

    def additivity():
        for _ in range(cases):
            g = rng.randint(1, 3)
            E, E2 = random_ns_form(rng, g), random_ns_form(rng, g)
            x, y = random_point(rng, g), random_point(rng, g)
            if adelic_pairing(E + E2, x, y) != adelic_pairing(E, x, y) + adelic_pairing(E2, x, y):
                return Check("additivity", False, "", (E, E2, x, y))
            if ns_to_h2(E) + ns_to_h2(E2) != ns_to_h2(E + E2):
                return Check("additivity", False, "class sum", (E, E2))
        return Check("additivity", True, f"{cases} cases: pairing(E+E') = pairing(E) + pairing(E')")

    def triviality():
        zeros = 0
        for i in range(cases):
            g = rng.randint(1, 3)
            E = random_ns_form(rng, g) if i % 4 else random_ns_form(rng, g, bound=0)
            w = injectivity_witness(E)
            trivial = ns_to_h2(E).is_trivial()
            if E.is_zero():
                zeros += 1
                if w is not None or not trivial:
                    return Check("triviality", False, "zero form with witness", E)
            elif w is None or not adelic_pairing(E, *w) or trivial:
                return Check("triviality", False, "nonzero form without witness", E)
        return Check("triviality", True, f"{cases} forms ({zeros} zero): witness exists iff E != 0")

    def functoriality():
        for _ in range(cases):
            g, g2 = rng.randint(1, 3), rng.randint(1, 3)
            E = random_ns_form(rng, g)
            F = random_integral_matrix(rng, 2 * g, 2 * g2)
            x, y = random_point(rng, g2), random_point(rng, g2)
            lhs = adelic_pairing(pullback(F, E), x, y)
            rhs = adelic_pairing(E, push_point(F, x), push_point(F, y))
            if lhs != rhs:
                return Check("functoriality", False, "", (F, E, x, y))
        return Check("functoriality", True, f"{cases} squares: pairing(F^T E F, x, y) = pairing(E, Fx, Fy)")

    def two_levels():
        for _ in range(cases):
            g = rng.randint(1, 3)
            E = random_ns_form(rng, g)
            x, y = random_point(rng, g), random_point(rng, g)
            pv = adelic_pairing_levels(E, x, y)
            if pv.value != adelic_pairing(E, y, x) * -1 or adelic_pairing(E, x, x):
                return Check("two levels", False, "alternation", (E, x, y))
        return Check("two levels", True, f"{cases} pairs agree at their two smallest joint levels; alternating")

    def bridge():
        done = degenerate = 0
        while done < cases:
            g = rng.randint(1, 3)
            E = random_ns_form(rng, g)
            if E.determinant() == 0:
                degenerate += 1  # infinite level groups; no finite bridge to test
                continue
            x, y = random_point(rng, g), random_point(rng, g)
            pv = adelic_pairing_levels(E, x, y)
            for p in pv.levels:
                L = level_theta_group(E, p)
                val = L.form.eval(L.coords(x.component(p)), L.coords(y.component(p)))
                if val != pv.value:
                    return Check("bridge", False, f"level {p}", (E, x, y))
            done += 1
        return Check("bridge", True, f"{done} cases at both joint levels: finite level form at (x_p, y_p) "
                                     f"= adelic pairing ({degenerate} degenerate forms redrawn)")

    for name, fn in [("additivity", additivity), ("triviality", triviality), ("functoriality", functoriality),
                     ("two levels", two_levels), ("bridge", bridge)]:
        out.append(_guard(name, fn))
    return out


def suite_supp(rng, limits):
    cases = _cases(limits, 200)
    N = limits.level_bound
    out = []

    def clause(name, test):
        def run():
            for _ in range(cases):
                g = rng.randint(1, 3)
                prime = rng.choice([0, 0, 2, 3, 5])
                E = random_ns_form(rng, g, excluded_prime=prime)
                r = test(E, g, prime)
                if r is not True:
                    return Check(name, False, "", r)
            return Check(name, True, f"{cases} random forms and points")
        return _guard(name, run)

    def a(E, g, prime):
        x = random_point(rng, g, excluded_prime=prime)
        return True if x.order in supp(E, x, x.order) else (E, x)

    def b(E, g, prime):
        x = random_point(rng, g, excluded_prime=prime)
        s = supp(E, x, N)
        for m in s:
            for n in range(m, N + 1, m):
                if E.model.in_levels(n) and n not in s:
                    return (E, x, m, n)
        return True

    def c(E, g, prime):
        x, y = random_point(rng, g, excluded_prime=prime), random_point(rng, g, excluded_prime=prime)
        bound = x.order * y.order // gcd(x.order, y.order)
        return True if set(supp(E, x, bound)) & set(supp(E, y, bound)) else (E, x, y)

    def d(E, g, prime):
        g2 = rng.randint(1, 3)
        F = random_integral_matrix(rng, 2 * g, 2 * g2)
        x = random_point(rng, g2, excluded_prime=prime)
        bound = x.order
        left = supp(pullback(F, E), x, bound)
        right = supp(E, push_point(F, x), bound)
        return True if set(left) & set(right) else (F, E, x)

    for name, test in [("supp (a) order of x_1", a), ("supp (b) multiples", b),
                       ("supp (c) pairwise", c), ("supp (d) pullback", d)]:
        out.append(clause(name, test))
    return out


def suite_weil(rng, limits):
    cases = _cases(limits, 200)

    def run():
        for _ in range(cases):
            g = rng.randint(1, 3)
            E = random_ns_form(rng, g)
            n = rng.randint(1, 8)
            # x is n-torsion; y = u/n makes n E y = E u integral
            x = AdelePoint([Fraction(rng.randrange(n), n) for _ in range(2 * g)])
            y = AdelePoint([Fraction(rng.randint(-2 * n, 2 * n), n) for _ in range(2 * g)])
            z = None if rng.random() < 0.5 else AdelePoint([c / n + rng.randint(-2, 2) for c in y.v])
            rel = weil_relation_check(E, n, x, y, z)
            if not rel.holds:
                return Check("weil relation", False, f"n={n}", (E, x, y, z))
        return Check("weil relation", True, f"{cases} cases: n E(x, y) = n^2 E(x, z) whenever n z = y")

    return [_guard("weil relation", run)]


SUITES = {
    "counting": suite_counting,
    "uniqueness": suite_uniqueness,
    "gprime": suite_gprime,
    "irreducibility": suite_irreducibility,
    "induction": suite_induction,
    "decomposition": suite_decomposition,
    "structure": suite_structure,
    "descent": suite_descent,
    "cocycle": suite_cocycle,
    "adelic": suite_adelic,
    "supp": suite_supp,
    "weil": suite_weil,
}


def run_suite(name: str, seed: int = 0, limits: Limits = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    rng = random.Random(seed)
    start = time.perf_counter()
    checks = SUITES[name](rng, limits or Limits())
    return SuiteResult(name, checks, time.perf_counter() - start)


__all__ = ["Check", "Limits", "SUITES", "SuiteResult", "run_suite"]
