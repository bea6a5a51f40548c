"""Adjoint and simply connected torus coordinates, the center, omega and theta.

Three coordinate systems are in play.  "SO coordinates" are l-tuples in Q/Z
(diagonal entries t_1..t_l of an orthogonal torus matrix, the inverses being
implicit).  The adjoint torus identifies a vector with its half shift
(t + (1/2,...,1/2)); AdTorusElem stores the lexicographically smaller of the
two representatives.  The simply connected torus uses coordinates in the
simple-coroot basis; these are faithful, and the composite

    ScTorusElem --expand_so--> SO coordinates --project--> AdTorusElem

has kernel of order 4, the center.  The two maps omega and theta below measure
how Weyl/Frobenius elements fixing an adjoint point move its lifts through
that kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import (
    ConfigError,
    FrobeniusPowerZero,
    NotFixed,
    NotInStabilizer,
    OddParity,
    RankMismatch,
)
from .exactnum import QZ, IntMatrix, QZVector, coroot_basis, solve_basis
from .weyl import ExtElem, SignedPerm, gamma

__all__ = [
    "AdTorusElem",
    "ScTorusElem",
    "CenterElem",
    "Center",
    "ThetaCoset",
    "center",
    "expand_so",
    "project",
    "lift",
    "act_ad",
    "act_sc",
    "omega",
    "theta",
    "theta_raw",
]


@dataclass(frozen=True)
class AdTorusElem:
    """A point of the adjoint torus; stores the canonical representative."""

    t: QZVector

    def __post_init__(self):
        shifted = self.t + QZVector.half_shift(len(self.t))
        if shifted.coords < self.t.coords:
            object.__setattr__(self, "t", shifted)

    @classmethod
    def parse(cls, text: str, p: int = 0) -> AdTorusElem:
        return cls(QZVector.parse(text, p))

    @classmethod
    def zero(cls, l: int) -> AdTorusElem:
        return cls(QZVector.zero(l))

    @property
    def rank(self) -> int:
        return len(self.t)

    def representatives(self) -> tuple[QZVector, QZVector]:
        return self.t, self.t + QZVector.half_shift(self.rank)

    def validate_char(self, p: int) -> AdTorusElem:
        self.t.validate_char(p)
        return self

    def __str__(self) -> str:
        return str(self.t)


@dataclass(frozen=True)
class ScTorusElem:
    """A point of the simply connected torus in simple-coroot coordinates."""

    u: QZVector

    @property
    def rank(self) -> int:
        return len(self.u)

    def __add__(self, other: ScTorusElem) -> ScTorusElem:
        return ScTorusElem(self.u + other.u)

    def __sub__(self, other: ScTorusElem) -> ScTorusElem:
        return ScTorusElem(self.u - other.u)

    def __str__(self) -> str:
        return str(self.u)

    @classmethod
    def parse(cls, text: str, p: int = 0) -> ScTorusElem:
        return cls(QZVector.parse(text, p))


def expand_so(u: ScTorusElem) -> QZVector:
    """Coroot coordinates to SO coordinates: multiply by the basis matrix."""
    return coroot_basis(u.rank).apply_qz(u.u)


def project(u: ScTorusElem) -> AdTorusElem:
    return AdTorusElem(expand_so(u))


def lift(x: AdTorusElem) -> ScTorusElem:
    """The deterministic lift: solve the basis against the canonical rep."""
    return ScTorusElem(solve_basis(coroot_basis(x.rank), x.t))


@dataclass(frozen=True)
class CenterElem:
    """An element of the order-4 kernel of project(expand_so(.)), with label."""

    u: ScTorusElem
    label: str

    def __str__(self) -> str:
        return f"{self.label}({self.u})"

    def sort_key(self):
        return tuple((q.num, q.den) for q in self.u.u.coords)


@dataclass(frozen=True)
class Center:
    """The center of the simply connected group, with its naming and actions."""

    l: int
    elements: tuple[CenterElem, ...]  # order: 1, h_0, z, z*h_0
    group_type: str

    @property
    def one(self) -> CenterElem:
        return self.elements[0]

    @property
    def h0(self) -> CenterElem:
        return self.elements[1]

    @property
    def z(self) -> CenterElem:
        return self.elements[2]

    def __iter__(self):
        return iter(self.elements)

    def from_sc(self, u: ScTorusElem) -> CenterElem:
        for c in self.elements:
            if c.u == u:
                return c
        raise NotFixed(f"{u} is not a central element")

    def is_central(self, u: ScTorusElem) -> bool:
        return any(c.u == u for c in self.elements)

    def add(self, a: CenterElem, b: CenterElem) -> CenterElem:
        return self.from_sc(a.u + b.u)

    def act(self, sigma: ExtElem, c: CenterElem, p: int) -> CenterElem:
        """Even elements fix the center pointwise; odd ones act like the
        graph automorphism; the p-power part multiplies by p^a."""
        u = c.u
        if sigma.parity == 1:
            u = ScTorusElem(_gamma_center_matrix(self.l).apply_qz(u.u))
        if sigma.a:
            u = ScTorusElem(u.u * pow(p, sigma.a))
        return self.from_sc(u)

    def commutator_set(self, sigma: ExtElem, p: int) -> tuple[CenterElem, ...]:
        """[Z, sigma] = {sigma(c) - c}; a subgroup since sigma acts by
        automorphisms.  Depends only on sigma's parity and exponent."""
        out = {self.from_sc(self.act(sigma, c, p).u - c.u) for c in self.elements}
        return tuple(sorted(out, key=CenterElem.sort_key))

    def h0_subgroup(self) -> tuple[CenterElem, ...]:
        return tuple(sorted((self.one, self.h0), key=CenterElem.sort_key))


@lru_cache(maxsize=None)
def _gamma_center_matrix(l: int) -> IntMatrix:
    return _act_sc_matrix(gamma(l))


@lru_cache(maxsize=None)
def _center_for_rank(l: int) -> Center:
    B = coroot_basis(l)
    half, zero = QZ(1, 2), QZ(0)
    # kernel generator of expand_so: the nonzero order-2 solution of B*u = 0
    h0 = None
    for combo in product((zero, half), repeat=l):
        u = QZVector(combo)
        if not u.is_zero() and B.apply_qz(u).is_zero():
            assert h0 is None, "kernel of expand_so should have order 2"
            h0 = ScTorusElem(u)
    assert h0 is not None
    z = ScTorusElem(solve_basis(B, QZVector.half_shift(l)))
    one = ScTorusElem(QZVector.zero(l))
    elems = (
        CenterElem(one, "1"),
        CenterElem(h0, "h_0"),
        CenterElem(z, "z"),
        CenterElem(z + h0, "z*h_0"),
    )
    assert len({c.u for c in elems}) == 4
    group_type = "(Z/2)^2" if (z + z).u.is_zero() else "Z/4"
    assert group_type == ("(Z/2)^2" if l % 2 == 0 else "Z/4")
    return Center(l, elems, group_type)


def center(l: int, p: int) -> Center:
    """The order-4 center for rank l; p is validated (odd) but not used."""
    if p % 2 == 0:
        raise ConfigError(f"characteristic must be odd, got {p}")
    return _center_for_rank(l)


@lru_cache(maxsize=None)
def _act_sc_matrix(v: SignedPerm) -> IntMatrix:
    """The integer matrix of v in coroot coordinates: B^{-1} M(v) B.

    Signed permutations preserve the even-sum lattice, so the conjugated
    matrix is integral; acting with it is therefore well defined mod 1.
    """
    l = v.rank
    B = coroot_basis(l)
    inv = B.inverse_fractions()
    cols = []
    for j in range(l):
        image = v.apply_intvec(B.column(j))
        col = []
        for row in inv:
            s = sum(c * x for c, x in zip(row, image))
            assert s.denominator == 1
            col.append(int(s))
        cols.append(tuple(col))
    return IntMatrix.from_columns(cols)


def act_ad(sigma: ExtElem, x: AdTorusElem, p: int = 1) -> AdTorusElem:
    """sigma acting on the adjoint torus; the result is re-canonicalized."""
    if sigma.rank != x.rank:
        raise RankMismatch(f"rank {sigma.rank} vs {x.rank}")
    return AdTorusElem(sigma.apply(x.t, p))


def act_sc(sigma: ExtElem, u: ScTorusElem, p: int = 1) -> ScTorusElem:
    """sigma acting on coroot coordinates via the conjugated integer matrix."""
    if sigma.rank != u.rank:
        raise RankMismatch(f"rank {sigma.rank} vs {u.rank}")
    out = _act_sc_matrix(sigma.v).apply_qz(u.u)
    if sigma.a:
        out = out * pow(p, sigma.a)
    return ScTorusElem(out)


def omega(x: AdTorusElem, w: SignedPerm) -> CenterElem:
    """The center element act_sc(w, lift(x)) - lift(x) for even w fixing x.

    Even elements fix the center pointwise, so the value does not depend on
    the choice of lift; that independence is asserted here at runtime.
    """
    if not w.is_even():
        raise OddParity(f"{w} has odd flip parity")
    ext = ExtElem(w, 0)
    if act_ad(ext, x) != x:
        raise NotInStabilizer(f"{w} does not fix {x}")
    Z = _center_for_rank(x.rank)
    u = lift(x)
    val = act_sc(ext, u) - u
    out = Z.from_sc(val)
    for zeta in (Z.h0, Z.z):
        alt = u + zeta.u
        assert (act_sc(ext, alt) - alt) == val, "omega must not depend on the lift"
    return out


@dataclass(frozen=True)
class ThetaCoset:
    """A coset of [Z, F] in the center: canonical rep plus sorted members."""

    rep: CenterElem
    coset: tuple[CenterElem, ...]
    modulus: tuple[CenterElem, ...]

    def __str__(self) -> str:
        return f"{self.rep.label} mod {{{','.join(c.label for c in self.modulus)}}}"

    def to_json(self) -> dict:
        return {
            "rep": self.rep.label,
            "coset": [c.label for c in self.coset],
            "mod": [c.label for c in self.modulus],
        }


def _coset_of(Z: Center, value: CenterElem, modulus: tuple[CenterElem, ...]) -> ThetaCoset:
    members = sorted((Z.add(value, m) for m in modulus), key=CenterElem.sort_key)
    return ThetaCoset(members[0], tuple(members), modulus)


def theta_raw(x: AdTorusElem, F: ExtElem, p: int) -> CenterElem:
    """act_sc(F, lift(x)) - lift(x) as a bare center element (no coset)."""
    if act_ad(F, x, p) != x:
        raise NotFixed(f"{F} does not fix {x}")
    Z = _center_for_rank(x.rank)
    u = lift(x)
    return Z.from_sc(act_sc(F, u, p) - u)


def theta(x: AdTorusElem, F: ExtElem, p: int) -> ThetaCoset:
    """The lift-displacement of F at x, taken modulo [Z, F].

    Requires a genuine Frobenius (a >= 1) fixing x on the adjoint torus.
    Changing the lift moves the raw value inside its [Z, F]-coset, so the
    coset is well defined; this is asserted against all four lifts.
    """
    if F.a < 1:
        raise FrobeniusPowerZero("theta needs a genuine Frobenius (a >= 1)")
    Z = _center_for_rank(x.rank)
    modulus = Z.commutator_set(F, p)
    raw = theta_raw(x, F, p)
    out = _coset_of(Z, raw, modulus)
    u = lift(x)
    for zeta in Z:
        alt = u + zeta.u
        moved = Z.from_sc(act_sc(F, alt, p) - alt)
        assert _coset_of(Z, moved, modulus) == out, "theta must not depend on the lift"
    return out
