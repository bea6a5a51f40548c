"""Stabilizers, component groups and coset representatives.

For an adjoint torus element x the relevant group is the even signed
permutations sending x to itself or to its half shift.  The reflections of the
vanishing subsystem generate the identity-component part; the complement is
cut out by the elements that additionally stabilize the chosen simple system
of the vanishing roots.  Searching is done by backtracking over slot/source
matchings of coordinate values, which stays exact and never enumerates the
ambient group.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import factorial

from .errors import BoundExceeded, NotFixed, RankMismatch
from .exactnum import QZ, QZVector
from .roots import Root, RootSubsystem, phi_x, reflection_group
from .torus import AdTorusElem, CenterElem, act_ad, act_sc, lift, omega, _center_for_rank
from .weyl import ExtElem, SignedPerm

__all__ = [
    "CentralizerData",
    "CosetReps",
    "stabilizer",
    "component_group",
    "coset_reps",
    "fiber_action",
    "verify_semidirect",
    "SemidirectReport",
    "max_orbit_bound",
]

_DEFAULT_BOUND = 10 ** 6


def max_orbit_bound(override: int | None = None,
                    default: int = _DEFAULT_BOUND) -> int:
    """Search-size guard; DLAD_MAX_ORBIT overrides the built-in default."""
    if override is not None:
        return override
    env = os.environ.get("DLAD_MAX_ORBIT")
    return int(env) if env else default


def _int_coords(t: QZVector, n: int) -> tuple[int, ...]:
    return tuple(q.num * (n // q.den) for q in t.coords)


def _common_den(x: AdTorusElem) -> int:
    n = x.t.denominator_lcm()
    return n if n % 2 == 0 else 2 * n  # the half shift must be representable


def _value_classes(vals: tuple[int, ...], n: int) -> dict[int, tuple[int, int]]:
    """Group coordinates by the unordered pair {v, -v}; counts (plus, minus)."""
    out: dict[int, list[int]] = {}
    for v in vals:
        key = min(v, (n - v) % n)
        p, m = out.get(key, (0, 0))
        if v == key:
            out[key] = (p + 1, m)
        else:
            out[key] = (p, m + 1)
    return out


def count_signed_matchings(source: tuple[int, ...], target: tuple[int, ...],
                           n: int, even_only: bool) -> int:
    """Exact count of signed permutations v with v(source) = target.

    Within a class {v, -v} with v != -v every bijection of matching size
    works and its flip count has fixed parity; self-paired classes (v = -v)
    contribute c! * 2^c with free parity.
    """
    src = _value_classes(source, n)
    tgt = _value_classes(target, n)
    if set(src) != set(tgt):
        return 0
    total = 1
    parity = 0
    has_free = False
    for key, (ps, ms) in src.items():
        pt, mt = tgt[key]
        if ps + ms != pt + mt:
            return 0
        if (2 * key) % n == 0:
            c = ps + ms
            total *= factorial(c) * 2 ** c
            if c:
                has_free = True
        else:
            total *= factorial(ps + ms)
            parity ^= (pt - ps) & 1
    if not even_only:
        return total
    if has_free:
        return total // 2
    return total if parity == 0 else 0


def _signed_matchings(source: tuple[int, ...], target: tuple[int, ...], n: int):
    """Yield (perm, flips) for every signed permutation with v(source) = target."""
    l = len(source)
    used = [False] * l
    perm = [0] * l  # perm[j] = slot that source j is sent to (1-based)
    flips: list[int] = []

    def rec(i: int):
        if i == l:
            yield tuple(perm), frozenset(flips)
            return
        t = target[i]
        for j in range(l):
            if used[j]:
                continue
            s = source[j]
            if s == t:
                used[j] = True
                perm[j] = i + 1
                yield from rec(i + 1)
                used[j] = False
            if (n - s) % n == t:
                used[j] = True
                perm[j] = i + 1
                flips.append(i + 1)
                yield from rec(i + 1)
                flips.pop()
                used[j] = False

    yield from rec(0)


def _match_elements(source: tuple[int, ...], targets, n: int,
                    bound: int | None) -> list[SignedPerm]:
    limit = max_orbit_bound(bound)
    expected = sum(count_signed_matchings(source, t, n, even_only=False)
                   for t in targets)
    if expected > limit:
        raise BoundExceeded(f"{expected} matchings exceed bound {limit}")
    out = []
    for t in targets:
        for perm, flips in _signed_matchings(source, t, n):
            out.append(SignedPerm(perm, flips))
    return out


def stabilizer(x: AdTorusElem, bound: int | None = None) -> frozenset[SignedPerm]:
    """Even signed permutations fixing x on the adjoint torus."""
    n = _common_den(x)
    src = _int_coords(x.t, n)
    shift = tuple((a + n // 2) % n for a in src)
    elems = _match_elements(src, (src, shift), n, bound)
    return frozenset(v for v in elems if v.is_even())


@dataclass(frozen=True)
class CentralizerData:
    x: AdTorusElem
    phi: RootSubsystem
    stab: frozenset[SignedPerm]
    b_check: frozenset[SignedPerm]
    a_order: int
    omega_table: dict  # SignedPerm -> CenterElem

    def omega_labels(self) -> dict[str, str]:
        return {str(w): self.omega_table[w].label
                for w in sorted(self.b_check, key=SignedPerm.sort_key)}


def _stabilizes_basis(v: SignedPerm, basis: tuple[Root, ...]) -> bool:
    target = {r.vec for r in basis}
    return all(v.apply_intvec(r.vec) in target for r in basis)


def component_group(x: AdTorusElem, bound: int | None = None) -> CentralizerData:
    """The stabilizer split into reflection part and basis-fixing complement."""
    phi = phi_x(x)
    stab = stabilizer(x, bound)
    b_check = frozenset(v for v in stab if _stabilizes_basis(v, phi.basis))
    omega_table = {w: omega(x, w) for w in b_check}
    data = CentralizerData(x, phi, stab, b_check, len(b_check), omega_table)

    # structural invariants of the decomposition
    refl = reflection_group(phi.roots, max_orbit_bound(bound)) if phi.roots \
        else frozenset({SignedPerm.identity(x.rank)})
    assert refl <= stab, "reflections of vanishing roots must fix x"
    assert len(stab) == phi.weyl_order() * len(b_check)
    assert data.a_order in (1, 2, 4)
    roots_set = {r.vec for r in phi.roots}
    assert all({v.apply_intvec(r) for r in roots_set} == roots_set for v in stab)
    bs = sorted(b_check, key=SignedPerm.sort_key)
    assert all(a * b == b * a for a in bs for b in bs), "complement must be abelian"
    vals = list(omega_table.values())
    assert len({c.u for c in vals}) == len(vals), "omega must be injective"
    return data


@dataclass(frozen=True)
class CosetReps:
    a: int
    parity: int
    reps: tuple[ExtElem, ...]


def coset_reps(x: AdTorusElem, a: int, parity: int, p: int,
               bound: int | None = None) -> CosetReps:
    """All (v, a) of the given flip parity fixing x and its simple system.

    With a = 0, parity 0 this is the basis-fixing complement itself; parity 1
    gives the graph-automorphism coset, and a >= 1 the Frobenius cosets.
    """
    if a < 0:
        raise ValueError("negative exponent")
    n = _common_den(x)
    src = _int_coords(x.t, n)
    powered = tuple((v * pow(p, a, n)) % n for v in src)
    shift = tuple((v + n // 2) % n for v in src)
    basis = phi_x(x).basis
    found = []
    for v in _match_elements(powered, (src, shift), n, bound):
        if v.flip_parity == parity and _stabilizes_basis(v, basis):
            found.append(ExtElem(v, a))
    found.sort(key=lambda e: e.v.sort_key())
    return CosetReps(a, parity, tuple(found))


def fiber_action(x: AdTorusElem, sigma: ExtElem, p: int = 1) -> tuple[int, ...]:
    """The permutation sigma induces on the four lifts of x.

    Lifts are indexed 0..3 in the order u, u+h_0, u+z, u+z*h_0.  The result
    commutes with the h_0 translation (0 1)(2 3); that is asserted.
    """
    if act_ad(sigma, x, p) != x:
        raise NotFixed(f"{sigma} does not fix {x}")
    Z = _center_for_rank(x.rank)
    u = lift(x)
    lifts = [u + zeta.u for zeta in Z.elements]
    images = []
    for w in lifts:
        moved = act_sc(sigma, w, p)
        images.append(next(i for i, cand in enumerate(lifts) if cand == moved))
    pi = tuple(images)
    assert sorted(pi) == [0, 1, 2, 3]
    assert all(pi[i ^ 1] == pi[i] ^ 1 for i in range(4)), \
        "fiber action must commute with the h_0 translation"
    return pi


@dataclass(frozen=True)
class SemidirectReport:
    x: AdTorusElem
    phi_type: str
    stab_order: int
    a_order: int
    checks: dict
    omega: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "x": str(self.x),
            "phi_type": self.phi_type,
            "stab_order": self.stab_order,
            "a_order": self.a_order,
            "omega": self.omega,
            "checks": dict(sorted(self.checks.items())),
            "verdict": "pass" if self.passed else "fail",
        }


def verify_semidirect(x: AdTorusElem, p: int, f0_exponent: int = 1,
                      bound: int | None = None) -> SemidirectReport:
    """Check the stabilizer decomposition and coset normalization at x.

    Verifies that the reflection part is normal(ized), meets the basis-fixing
    complement trivially, that orders multiply, that the complement is abelian
    with injective omega, and that every Frobenius/graph coset representative
    normalizes the complement with commutators falling inside it.
    """
    data = component_group(x, bound)
    refl = reflection_group(data.phi.roots, max_orbit_bound(bound)) if data.phi.roots \
        else frozenset({SignedPerm.identity(x.rank)})
    roots_set = {r.vec for r in data.phi.roots}
    ident = SignedPerm.identity(x.rank)

    checks = {}
    checks["stab_permutes_phi"] = all(
        {v.apply_intvec(r) for r in roots_set} == roots_set for v in data.stab)
    checks["complement_meets_reflections_trivially"] = \
        (data.b_check & refl) == frozenset({ident})
    checks["order_product"] = \
        len(data.stab) == data.phi.weyl_order() * data.a_order
    bs = sorted(data.b_check, key=SignedPerm.sort_key)
    checks["complement_abelian"] = all(a * b == b * a for a in bs for b in bs)
    vals = [data.omega_table[w] for w in bs]
    checks["omega_injective"] = len({c.u for c in vals}) == len(vals)

    f_reps = coset_reps(x, f0_exponent, 0, p, bound).reps
    g_reps = coset_reps(x, 0, 1, p, bound).reps
    checks["reps_normalize_complement"] = all(
        frozenset(e.v * b * e.v.inverse() for b in data.b_check) == data.b_check
        for e in f_reps + g_reps)
    checks["rep_commutators_in_complement"] = all(
        (f.v * g.v * f.v.inverse() * g.v.inverse()) in data.b_check
        for f in f_reps for g in g_reps)

    return SemidirectReport(
        x, data.phi.type_string(), len(data.stab), data.a_order,
        checks, data.omega_labels())
