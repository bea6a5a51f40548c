"""Signed permutations and their extension by p-power maps.

V_l = (Z/2) wr S_l acts on l torus coordinates by permuting slots and negating
a subset of them.  The canonical form is "flips after permutation": v first
sends coordinate j to slot sigma(j), then negates the slots listed in
``flips``.  The even-flip subgroup is the Weyl group of type D_l; the single
flip at slot l plays the role of the graph automorphism.

ExtElem pairs a signed permutation with an exponent a >= 0 and acts on torus
coordinates as t -> p^a * v(t); a = 0 is allowed so that the graph
automorphism alone is expressible, and operations that need a genuine
Frobenius enforce a >= 1 themselves.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .errors import FrobeniusPowerZero, RankMismatch
from .exactnum import QZVector

__all__ = [
    "SignedPerm",
    "ExtElem",
    "compose",
    "commutator",
    "gamma",
    "all_signed_perms",
    "weyl_d",
]


@dataclass(frozen=True)
class SignedPerm:
    """perm[i-1] is the image of i under sigma; flips are slots, 1-based."""

    perm: tuple[int, ...]
    flips: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(self.perm))
        object.__setattr__(self, "flips", frozenset(self.flips))
        l = len(self.perm)
        if sorted(self.perm) != list(range(1, l + 1)):
            raise ValueError(f"not a permutation of 1..{l}: {self.perm}")
        if not all(1 <= i <= l for i in self.flips):
            raise ValueError(f"flip slots out of range: {sorted(self.flips)}")

    @classmethod
    def identity(cls, l: int) -> SignedPerm:
        return cls(tuple(range(1, l + 1)))

    @classmethod
    def transposition(cls, l: int, i: int, j: int) -> SignedPerm:
        perm = list(range(1, l + 1))
        perm[i - 1], perm[j - 1] = j, i
        return cls(tuple(perm))

    @classmethod
    def flip_set(cls, l: int, slots) -> SignedPerm:
        return cls(tuple(range(1, l + 1)), frozenset(slots))

    @property
    def rank(self) -> int:
        return len(self.perm)

    @property
    def flip_parity(self) -> int:
        return len(self.flips) % 2

    def is_even(self) -> bool:
        return self.flip_parity == 0

    def is_identity(self) -> bool:
        return not self.flips and self.perm == tuple(range(1, self.rank + 1))

    def __mul__(self, other: SignedPerm) -> SignedPerm:
        """self after other: (f_F sigma)(f_G tau) = f_{F xor sigma(G)} (sigma tau)."""
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        perm = tuple(self.perm[other.perm[i] - 1] for i in range(self.rank))
        flips = self.flips ^ frozenset(self.perm[g - 1] for g in other.flips)
        return SignedPerm(perm, flips)

    def inverse(self) -> SignedPerm:
        inv = [0] * self.rank
        for i, img in enumerate(self.perm, start=1):
            inv[img - 1] = i
        return SignedPerm(tuple(inv), frozenset(inv[f - 1] for f in self.flips))

    def apply(self, t: QZVector) -> QZVector:
        """Coordinate action: out[sigma(j)] = t[j], then negate flip slots."""
        if len(t) != self.rank:
            raise RankMismatch(f"rank {self.rank} vs vector rank {len(t)}")
        out = [None] * self.rank
        for j in range(self.rank):
            out[self.perm[j] - 1] = t.coords[j]
        for i in self.flips:
            out[i - 1] = -out[i - 1]
        return QZVector(tuple(out))

    def apply_ints(self, t: tuple[int, ...], n: int) -> tuple[int, ...]:
        """Same action on numerator tuples over a common denominator n."""
        out = [0] * self.rank
        for j in range(self.rank):
            out[self.perm[j] - 1] = t[j]
        for i in self.flips:
            out[i - 1] = (n - out[i - 1]) % n
        return tuple(out)

    def apply_intvec(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        """Action on integer vectors (root/coweight coordinates)."""
        out = [0] * self.rank
        for j in range(self.rank):
            out[self.perm[j] - 1] = vec[j]
        for i in self.flips:
            out[i - 1] = -out[i - 1]
        return tuple(out)

    def sort_key(self):
        return (self.perm, tuple(sorted(self.flips)))

    def __str__(self) -> str:
        body = ",".join(str(i) for i in self.perm)
        fl = ",".join(str(i) for i in sorted(self.flips))
        return f"perm=[{body}];flips={{{fl}}}"

    _RE = re.compile(r"^perm=\[([0-9,]*)\];flips=\{([0-9,]*)\}$")

    @classmethod
    def parse(cls, text: str) -> SignedPerm:
        m = cls._RE.match(text.strip().replace(" ", ""))
        if not m:
            raise ValueError(f"cannot parse signed permutation: {text!r}")
        perm = tuple(int(x) for x in m.group(1).split(",") if x)
        flips = frozenset(int(x) for x in m.group(2).split(",") if x)
        return cls(perm, flips)


def gamma(l: int) -> SignedPerm:
    """The graph automorphism in this model: the single flip at slot l."""
    return SignedPerm.flip_set(l, {l})


@dataclass(frozen=True)
class ExtElem:
    """A signed permutation together with a p-power exponent a >= 0."""

    v: SignedPerm
    a: int = 0

    def __post_init__(self):
        if self.a < 0:
            raise ValueError(f"exponent must be >= 0, got {self.a}")

    @classmethod
    def identity(cls, l: int) -> ExtElem:
        return cls(SignedPerm.identity(l), 0)

    @property
    def rank(self) -> int:
        return self.v.rank

    @property
    def parity(self) -> int:
        return self.v.flip_parity

    def __mul__(self, other: ExtElem) -> ExtElem:
        # p-power maps commute with signed permutations, so exponents add.
        return ExtElem(self.v * other.v, self.a + other.a)

    def __pow__(self, k: int) -> ExtElem:
        if k < 0:
            raise FrobeniusPowerZero("negative powers of an ExtElem are undefined")
        w = SignedPerm.identity(self.rank)
        for _ in range(k):
            w = w * self.v
        return ExtElem(w, self.a * k)

    def inverse(self) -> ExtElem:
        if self.a != 0:
            raise FrobeniusPowerZero("only a = 0 elements are invertible")
        return ExtElem(self.v.inverse(), 0)

    def apply(self, t: QZVector, p: int) -> QZVector:
        """t -> p^a * v(t) on raw coordinates."""
        out = self.v.apply(t)
        return out * (p ** self.a) if self.a else out

    def __str__(self) -> str:
        return f"{self.v};a={self.a}"

    @classmethod
    def parse(cls, text: str) -> ExtElem:
        body, sep, tail = text.strip().rpartition(";a=")
        if not sep:
            return cls(SignedPerm.parse(text), 0)
        return cls(SignedPerm.parse(body), int(tail))


def compose(x: ExtElem, y: ExtElem) -> ExtElem:
    return x * y


def commutator(x: ExtElem, y: ExtElem) -> SignedPerm:
    """x y x^{-1} y^{-1}; the p-power parts are central and cancel."""
    vx, vy = x.v, y.v
    return vx * vy * vx.inverse() * vy.inverse()


def all_signed_perms(l: int):
    """All 2^l * l! elements of V_l."""
    slots = list(range(1, l + 1))
    for perm in permutations(slots):
        for r in range(l + 1):
            for fl in combinations(slots, r):
                yield SignedPerm(perm, frozenset(fl))


def weyl_d(l: int):
    """The even-flip subgroup: the Weyl group of D_l, order 2^{l-1} * l!."""
    slots = list(range(1, l + 1))
    for perm in permutations(slots):
        for r in range(0, l + 1, 2):
            for fl in combinations(slots, r):
                yield SignedPerm(perm, frozenset(fl))
