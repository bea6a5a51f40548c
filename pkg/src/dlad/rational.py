"""Geometric and rational class enumeration and the structure checks built on it.

A geometric class is an orbit of the even signed permutations on adjoint torus
vectors (mod the half shift).  Canonical forms are computed directly — sort the
coordinatewise minimal +-representatives and repair flip parity by negating
the largest entry — so enumeration never walks orbits.  Rational classes for a
Frobenius F are parametrized by the theta cosets of the twisted fixers, and
the table builder cross-checks its entry count against the component group
with its F-action, which is an independent computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations
from math import factorial, gcd

from .centralizer import (
    component_group,
    coset_reps,
    count_signed_matchings,
    fiber_action,
    max_orbit_bound,
    _common_den,
    _int_coords,
    _match_elements,
)
from .errors import (
    BoundExceeded,
    DenominatorDivisibleByP,
    FrobeniusPowerZero,
    HypothesisViolated,
    NotStable,
    RankMismatch,
)
from .exactnum import QZ, QZVector
from .torus import (
    AdTorusElem,
    Center,
    CenterElem,
    ThetaCoset,
    _center_for_rank,
    _coset_of,
    omega,
    theta,
    theta_raw,
)
from .weyl import ExtElem, SignedPerm, gamma

__all__ = [
    "GeomClass",
    "RationalEntry",
    "RationalClassTable",
    "CheckReport",
    "ScenarioFinding",
    "Cor26Report",
    "canonical_form",
    "geom_class_of",
    "enumerate_geom_classes",
    "class_stable",
    "rational_classes",
    "theorem_b_check",
    "cor32_check",
    "rem24_check",
    "scenario_search",
    "cor26_explore",
]


# ---------------------------------------------------------------------------
# canonical forms and the census


def _canon_weyl_int(t: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Lex-least even-signed-permutation image of t (numerators mod n).

    Sort the coordinatewise min(a, -a); if that used an odd number of strict
    negations and no coordinate is self-negating (0 or n/2), undo the flip on
    the largest entry — the unique lex-optimal repair.
    """
    reps = []
    strict = 0
    free = False
    for a in t:
        b = (n - a) % n
        if b < a:
            reps.append(b)
            strict ^= 1
        else:
            reps.append(a)
            if b == a:
                free = True
    reps.sort()
    if strict and not free:
        reps[-1] = n - reps[-1]
    return tuple(reps)


def _canonical_form_int(t: tuple[int, ...], n: int) -> tuple[int, ...]:
    half = n // 2
    shifted = tuple((a + half) % n for a in t)
    return min(_canon_weyl_int(t, n), _canon_weyl_int(shifted, n))


def canonical_form(t: QZVector) -> QZVector:
    """Lex-least vector in the even-signed orbit of t modulo the half shift."""
    n = t.denominator_lcm()
    if n % 2:
        n *= 2
    ints = tuple(q.num * (n // q.den) for q in t.coords)
    return QZVector(tuple(QZ(a, n) for a in _canonical_form_int(ints, n)))


def _group_order(l: int) -> int:
    return 2 ** (l - 1) * factorial(l)


def _subsystem_order_int(vals: tuple[int, ...], n: int) -> int:
    """|W(Phi_x)| read off the value classes: self-paired classes of size c
    give a D_c factor (2^{c-1} c!), others of total size m an A_{m-1} (m!)."""
    classes: dict[int, int] = {}
    for v in vals:
        key = min(v, (n - v) % n)
        classes[key] = classes.get(key, 0) + 1
    order = 1
    for key, c in classes.items():
        if c < 2:
            continue
        if (2 * key) % n == 0:
            order *= 2 ** (c - 1) * factorial(c)
        else:
            order *= factorial(c)
    return order


@dataclass(frozen=True)
class GeomClass:
    rep: AdTorusElem
    orbit_size: int
    a_order: int

    def to_json(self) -> dict:
        return {"x": str(self.rep), "orbit_size": self.orbit_size,
                "a_order": self.a_order}


def _geom_from_ints(t: tuple[int, ...], n: int, l: int) -> GeomClass:
    exact = count_signed_matchings(t, t, n, even_only=True)
    half = n // 2
    shifted = tuple((a + half) % n for a in t)
    mod_shift = exact + count_signed_matchings(t, shifted, n, even_only=True)
    sub = _subsystem_order_int(t, n)
    assert _group_order(l) % exact == 0 and mod_shift % sub == 0
    rep = AdTorusElem(QZVector(tuple(QZ(a, n) for a in t)))
    return GeomClass(rep, _group_order(l) // exact, mod_shift // sub)


def geom_class_of(x: AdTorusElem) -> GeomClass:
    n = _common_den(x)
    canon = _canonical_form_int(_int_coords(x.t, n), n)
    return _geom_from_ints(canon, n, x.rank)


def enumerate_geom_classes(l: int, N: int, p: int = 0,
                           bound: int | None = None) -> list[GeomClass]:
    """All geometric classes with coordinates in (1/N)Z/Z, by canonical rep.

    Enumerates candidate canonical vectors (ascending, first l-1 entries at
    most 1/2) and keeps the fixed points of the canonical form; the raw space
    N^l is only a guard figure, never walked.
    """
    if l < 2:
        raise RankMismatch(f"rank {l} too small")
    if N < 1:
        raise ValueError("denominator must be positive")
    if p and gcd(N, p) != 1:
        raise DenominatorDivisibleByP(f"denominator {N} shares a factor with p = {p}")
    cap = max_orbit_bound(bound, default=10 ** 8)
    if N ** l > cap:
        raise BoundExceeded(f"census of {N ** l} raw vectors exceeds bound {cap}")
    n = N if N % 2 == 0 else 2 * N
    step = n // N
    half = n // 2
    out = []
    for head in combinations_with_replacement(range(0, half + 1, step), l - 1):
        for last in range(head[-1], n, step):
            t = head + (last,)
            if _canonical_form_int(t, n) == t:
                out.append(_geom_from_ints(t, n, l))
    return out


def class_stable(x: AdTorusElem, sigma: ExtElem, p: int = 1) -> bool:
    """Whether sigma maps the geometric class of x to itself."""
    if sigma.rank != x.rank:
        raise RankMismatch(f"rank {sigma.rank} vs {x.rank}")
    n = _common_den(x)
    src = _int_coords(x.t, n)
    scaled = tuple((v * pow(p, sigma.a, n)) % n for v in src) if sigma.a else src
    img = sigma.v.apply_ints(scaled, n)
    return _canonical_form_int(img, n) == _canonical_form_int(src, n)


# ---------------------------------------------------------------------------
# rational class tables


@dataclass(frozen=True)
class RationalEntry:
    theta: ThetaCoset
    gamma_stable: bool
    f0_stable: bool

    def to_json(self) -> dict:
        return {"theta": self.theta.to_json(), "gamma_stable": self.gamma_stable,
                "f0_stable": self.f0_stable}


@dataclass(frozen=True)
class RationalClassTable:
    x: AdTorusElem
    geom: GeomClass
    frobenius: ExtElem
    entries: tuple[RationalEntry, ...]

    def theta_reps(self) -> tuple[CenterElem, ...]:
        return tuple(e.theta.rep for e in self.entries)

    def to_json(self) -> dict:
        return {"x": str(self.x), "geom": self.geom.to_json(),
                "frobenius": str(self.frobenius),
                "entries": [e.to_json() for e in self.entries]}


def _coset_fixed_by(Z: Center, tc: ThetaCoset, sigma: ExtElem, p: int) -> bool:
    """Whether sigma maps the coset to itself (sigma preserves the modulus)."""
    moved_mod = {Z.act(sigma, c, p).u for c in tc.modulus}
    assert moved_mod == {c.u for c in tc.modulus}
    return Z.act(sigma, tc.rep, p).u in {c.u for c in tc.coset}


def coset_image_rep(Z: Center, tc: ThetaCoset, sigma: ExtElem, p: int) -> CenterElem:
    """Canonical representative of sigma applied to the coset."""
    moved = sorted((Z.act(sigma, c, p) for c in tc.coset), key=CenterElem.sort_key)
    return moved[0]


def twisted_fixers(x: AdTorusElem, F: ExtElem, p: int,
                   bound: int | None = None) -> list[SignedPerm]:
    """Even v such that (v, 0) * F fixes x on the adjoint torus."""
    n = _common_den(x)
    src = _int_coords(x.t, n)
    scaled = tuple((v * pow(p, F.a, n)) % n for v in src) if F.a else src
    y = F.v.apply_ints(scaled, n)
    half = n // 2
    shifted = tuple((a + half) % n for a in src)
    return sorted((v for v in _match_elements(y, (src, shifted), n, bound)
                   if v.is_even()), key=SignedPerm.sort_key)


def rational_classes(x: AdTorusElem, F: ExtElem, p: int,
                     base: ExtElem | None = None,
                     bound: int | None = None) -> RationalClassTable:
    """Group the twisted Frobenii at x by theta value.

    One entry per distinct theta coset; the count is checked against the
    component group with its F-action (|A| / |[A, F]|), computed without any
    theta evaluation.  Stability flags record whether the graph automorphism
    (resp. the base Frobenius, F itself by default) fixes the coset.
    """
    if F.a < 1:
        raise FrobeniusPowerZero("rational classes need a genuine Frobenius")
    if not class_stable(x, F, p):
        raise NotStable(f"class of {x} is not stable under {F}")
    if base is None:
        base = F
    Z = _center_for_rank(x.rank)
    g = ExtElem(gamma(x.rank), 0)

    seen: dict = {}
    for v in twisted_fixers(x, F, p, bound):
        tc = theta(x, ExtElem(v * F.v, F.a), p)
        seen.setdefault(tc.rep.sort_key(), tc)
    cosets = [seen[k] for k in sorted(seen)]
    entries = tuple(
        RationalEntry(tc, _coset_fixed_by(Z, tc, g, p), _coset_fixed_by(Z, tc, base, p))
        for tc in cosets)

    # Independent count, no theta evaluation: theta factors through the
    # displacement embedding omega of the component group into Z(H_0), so the
    # number of distinct cosets is |A| divided by the omega-preimage of [Z, F].
    data = component_group(x, bound)
    comm_keys = {c.sort_key() for c in Z.commutator_set(F, p)}
    kernel = [b for b in data.b_check if omega(x, b).sort_key() in comm_keys]
    assert data.a_order % len(kernel) == 0
    assert len(entries) == data.a_order // len(kernel), \
        (len(entries), data.a_order, len(kernel))
    # Twisted conjugacy on the component group can only merge classes that
    # theta already identifies: the commutator set of F on B-check sits inside
    # the kernel above, making |A/[A, F]| an upper bound for the entry count.
    f_reps = coset_reps(x, F.a, F.parity, p, bound).reps
    assert f_reps, "an F-stable class must admit a basis-fixing twisted Frobenius"
    vf = f_reps[0].v
    comm = {(b.inverse() * (vf * b * vf.inverse())).sort_key() for b in data.b_check}
    kernel_keys = {b.sort_key() for b in kernel}
    assert comm <= kernel_keys, (sorted(comm), sorted(kernel_keys))

    return RationalClassTable(x, geom_class_of(x), F, entries)


# ---------------------------------------------------------------------------
# named checks


@dataclass(frozen=True)
class CheckReport:
    name: str
    items: dict
    details: dict

    @property
    def passed(self) -> bool:
        return all(self.items.values())

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {"check": self.name, "items": dict(sorted(self.items.items())),
                "details": self.details, "verdict": self.verdict}


def theorem_b_check(x: AdTorusElem, F0: ExtElem, p: int,
                    bound: int | None = None) -> CheckReport:
    """For a class with full component group (order 4): theta is a bijection
    onto the center modulo [Z, F0], and the trivial-theta entry exists and is
    stable under the graph automorphism."""
    data = component_group(x, bound)
    if data.a_order != 4:
        raise HypothesisViolated(f"component group has order {data.a_order}, need 4")
    if not class_stable(x, F0, p):
        raise HypothesisViolated("class is not stable under F0")
    if not class_stable(x, ExtElem(gamma(x.rank), 0), p):
        raise HypothesisViolated("class is not stable under the graph automorphism")
    Z = _center_for_rank(x.rank)
    table = rational_classes(x, F0, p, bound=bound)
    modulus = Z.commutator_set(F0, p)
    quotient_reps = {_coset_of(Z, c, modulus).rep.sort_key() for c in Z}
    reps = {e.theta.rep.sort_key() for e in table.entries}

    trivial = [e for e in table.entries
               if any(c.u.u.is_zero() for c in e.theta.coset)]
    items = {
        "entry_count": len(table.entries) == 4 // len(modulus),
        "theta_bijective": reps == quotient_reps,
        "trivial_entry_exists": len(trivial) == 1,
        "trivial_entry_gamma_stable": bool(trivial) and trivial[0].gamma_stable,
    }
    details = {
        "x": str(x),
        "frobenius": str(F0),
        "entries": [e.to_json() for e in table.entries],
    }
    return CheckReport("thmB", items, details)


def cor32_check(x: AdTorusElem, F0: ExtElem, k: int, p: int,
                bound: int | None = None) -> CheckReport:
    """The no-gamma-stable-rational-class scenario at x.

    Hypotheses (raised as HypothesisViolated when absent): the class is F0-
    and gamma-stable and no rational class for F0 is gamma-stable.  Items:
    F0 acts trivially on the center; the component group has order 2 with
    omega image {1, h_0}; theta values fill the complement of <h_0>; for
    F = F0^{2k} every rational class is stable under both the graph
    automorphism and F0; every F0-coset value stays outside <h_0>; and all
    mixed coset commutators equal the complement generator.
    """
    l = x.rank
    g = ExtElem(gamma(l), 0)
    if not class_stable(x, F0, p):
        raise HypothesisViolated("class is not stable under F0")
    if not class_stable(x, g, p):
        raise HypothesisViolated("class is not stable under the graph automorphism")
    table0 = rational_classes(x, F0, p, bound=bound)
    if any(e.gamma_stable for e in table0.entries):
        raise HypothesisViolated("a gamma-stable rational class exists")

    Z = _center_for_rank(l)
    data = component_group(x, bound)
    h0_set = {c.u for c in Z.h0_subgroup()}

    items = {}
    items["f0_trivial_on_center"] = all(
        Z.act(F0, c, p).u == c.u for c in Z.elements)
    items["a_order_2"] = data.a_order == 2
    items["omega_image_h0"] = \
        {c.u for c in data.omega_table.values()} == h0_set
    items["theta_image_complement"] = (
        all(len(e.theta.modulus) == 1 for e in table0.entries)
        and {e.theta.rep.u for e in table0.entries}
        == {c.u for c in Z.elements} - h0_set)

    F = F0 ** (2 * k)
    tableF = rational_classes(x, F, p, base=F0, bound=bound)
    items["power_classes_both_stable"] = all(
        e.gamma_stable and e.f0_stable for e in tableF.entries)

    f_reps = coset_reps(x, F0.a, F0.parity, p, bound).reps
    g_reps = coset_reps(x, 0, 1, p, bound).reps
    items["coset_values_outside_h0"] = bool(f_reps) and all(
        theta_raw(x, f, p).u not in h0_set for f in f_reps)
    b_gen = [b for b in data.b_check if not b.is_identity()]
    items["paired_commutators_constant"] = (
        len(b_gen) == 1 and bool(f_reps) and bool(g_reps) and all(
            (f.v * gg.v * f.v.inverse() * gg.v.inverse()) == b_gen[0]
            for f in f_reps for gg in g_reps))

    details = {
        "x": str(x),
        "frobenius": str(F0),
        "k": k,
        "theta_values": [e.theta.rep.label for e in table0.entries],
        "power_entries": [e.to_json() for e in tableF.entries],
        "complement_generator": str(b_gen[0]) if len(b_gen) == 1 else None,
    }
    return CheckReport("cor32", items, details)


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[i] for i in b)


def rem24_check(x: AdTorusElem, p: int, f0_exponent: int = 1,
                bound: int | None = None) -> CheckReport:
    """The action of the extended complement on the four lifts of x.

    Lifts sit in one fiber of the covering torus; translation by h_0 is the
    double transposition (0 1)(2 3) in the fixed lift order.  Every
    materialized coset representative must induce a lift permutation
    commuting with it (hence landing in its order-8 dihedral centralizer in
    S_4), and the pair (lift permutation, coset tag) must separate the
    representatives.
    """
    tau = (1, 0, 3, 2)
    s4 = list(permutations(range(4)))
    dihedral = {pi for pi in s4 if _compose(pi, tau) == _compose(tau, pi)}
    assert len(dihedral) == 8

    pairs = []
    for (a, parity) in ((0, 0), (0, 1), (f0_exponent, 0), (f0_exponent, 1)):
        for e in coset_reps(x, a, parity, p, bound).reps:
            pairs.append((fiber_action(x, e, p), (a, parity)))

    items = {
        "commutes_with_h0_translation": all(
            _compose(pi, tau) == _compose(tau, pi) for pi, _ in pairs),
        "pair_map_injective": len(set(pairs)) == len(pairs),
        "image_in_dihedral": all(pi in dihedral for pi, _ in pairs),
    }
    details = {
        "x": str(x),
        "rep_count": len(pairs),
        "actions": sorted({"".join(map(str, pi)) for pi, _ in pairs}),
    }
    return CheckReport("rem24", items, details)


@dataclass(frozen=True)
class ScenarioFinding:
    geom: GeomClass
    report: CheckReport

    def to_json(self) -> dict:
        return {"class": self.geom.to_json(), "report": self.report.to_json()}


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"not a prime power: {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    a, m = 0, q
    while m % p == 0:
        m //= p
        a += 1
    if m != 1:
        raise ValueError(f"not a prime power: {q}")
    return p, a


def scenario_search(l: int, q: int, N: int | None = None,
                    bound: int | None = None) -> list[ScenarioFinding]:
    """Classes with denominator dividing N exhibiting the cor32 scenario.

    The Frobenius is the untwisted (id, a) with p^a = q; N defaults to
    2(q^2 - 1), the denominator at which the scenario is expected to occur.
    Every returned class satisfies the hypotheses and carries its full check
    report.
    """
    p, a = _prime_power(q)
    if N is None:
        N = 2 * (q * q - 1)
    F0 = ExtElem(SignedPerm.identity(l), a)
    g = ExtElem(gamma(l), 0)
    findings = []
    for gc in enumerate_geom_classes(l, N, p, bound):
        if gc.a_order != 2:
            continue  # the scenario forces a component group of order 2
        x = gc.rep
        if not (class_stable(x, F0, p) and class_stable(x, g, p)):
            continue
        table0 = rational_classes(x, F0, p, bound=bound)
        if any(e.gamma_stable for e in table0.entries):
            continue
        findings.append(ScenarioFinding(gc, cor32_check(x, F0, 1, p, bound)))
    return findings


@dataclass(frozen=True)
class Cor26Report:
    found: bool
    pair: tuple[ExtElem, ExtElem] | None
    f0_coset_size: int
    f_coset_size: int

    def to_json(self) -> dict:
        return {
            "commuting_pair_found": self.found,
            "pair": [str(e) for e in self.pair] if self.pair else None,
            "f0_coset_size": self.f0_coset_size,
            "f_coset_size": self.f_coset_size,
            "verdict": "pass",
        }


def cor26_explore(x: AdTorusElem, F: ExtElem, F0: ExtElem, p: int,
                  bound: int | None = None) -> Cor26Report:
    """Search for a commuting pair between the F0- and F-cosets.

    Existence is reported, never asserted.  Requires the class to be stable
    under both endomorphisms and at least one F0-rational class to be fixed
    by F (the compatibility hypothesis, tested on theta values).
    """
    if not class_stable(x, F0, p):
        raise NotStable("class is not stable under F0")
    if not class_stable(x, F, p):
        raise NotStable("class is not stable under F")
    Z = _center_for_rank(x.rank)
    table0 = rational_classes(x, F0, p, bound=bound)
    if not any(_coset_fixed_by(Z, e.theta, F, p) for e in table0.entries):
        raise HypothesisViolated("no F0-rational class is fixed by F")
    f0_reps = coset_reps(x, F0.a, F0.parity, p, bound).reps
    f_reps = coset_reps(x, F.a, F.parity, p, bound).reps
    pair = None
    for f0 in f0_reps:
        for f in f_reps:
            if (f0.v * f.v * f0.v.inverse() * f.v.inverse()).is_identity():
                pair = (f0, f)
                break
        if pair:
            break
    return Cor26Report(pair is not None, pair, len(f0_reps), len(f_reps))
