"""Explicit special orthogonal groups over small finite fields.

Everything abstract in the other modules has a literal matrix shadow here:
signed permutations become permutation matrices, torus vectors become
diagonal matrices built from a fixed generator of the multiplicative group,
and roots become one-parameter unipotent subgroups.  The basis of the natural
2l-dimensional module is ordered (1, ..., l, -l, ..., -1), which makes the
bilinear form the antidiagonal matrix J and keeps every construction literal.

Field elements are coefficient tuples over the prime field; the modulus and
the generator are chosen deterministically (least in base-p digit order), so
identical inputs give identical matrices across runs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import factorial, gcd

from .errors import ConfigError, DenominatorNotSplit
from .exactnum import QZ, QZVector
from .roots import Root, full_root_system, simple_roots
from .torus import AdTorusElem, act_ad, lift, project
from .weyl import ExtElem, SignedPerm, all_signed_perms

__all__ = [
    "FiniteField",
    "OrthMatrix",
    "identity_matrix",
    "form_matrix",
    "perm_matrix",
    "torus_matrix",
    "root_subgroup",
    "verify_prop21",
    "verify_graph_auto",
    "crosscheck_action",
    "crosscheck_suite",
    "field_for",
    "MatrixReport",
]


# ---------------------------------------------------------------------------
# finite fields

def _poly_mulmod(a, b, modulus, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    k = len(modulus) - 1
    for i in range(len(out) - 1, k - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(k):
                out[i - k + j] = (out[i - k + j] - c * modulus[j]) % p
    out = out[:k]
    return tuple(out + [0] * (k - len(out)))


def _digits(n: int, p: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        out.append(n % p)
        n //= p
    return tuple(out)


def _poly_divides(d, f, p):
    """Whether monic d divides monic f over F_p (coefficients low-to-high)."""
    r = list(f)
    while True:
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(d):
            break
        c = r[-1]
        off = len(r) - len(d)
        for i, x in enumerate(d):
            r[off + i] = (r[off + i] - c * x) % p
    return not any(r)


def _least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k with least base-p digit value."""
    if k == 1:
        return (0, 1)
    for n in range(p ** k):
        f = _digits(n, p, k) + (1,)
        if f[0] == 0:
            continue  # divisible by X
        if any(sum(c * pow(r, i, p) for i, c in enumerate(f)) % p == 0
               for r in range(p)):
            continue
        ok = True
        for deg in range(2, k // 2 + 1):
            for m in range(p ** deg):
                if _poly_divides(_digits(m, p, deg) + (1,), f, p):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return f
    raise AssertionError("no irreducible polynomial found")


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """F_{p^k} with a deterministic modulus and generator.

    Elements are coefficient tuples (c_0, ..., c_{k-1}); the modulus is the
    monic irreducible of degree k least in base-p digit order, and the
    generator is the first element (in the same digit order) of full
    multiplicative order.
    """

    def __init__(self, p: int, k: int = 1):
        if p < 3 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ConfigError(f"characteristic must be an odd prime, got {p}")
        if k < 1:
            raise ConfigError(f"extension degree must be positive, got {k}")
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus = _least_irreducible(p, k)
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        self.generator = self._find_generator()
        pows = [self.one]
        for _ in range(self.order - 2):
            pows.append(self.mul(pows[-1], self.generator))
        self._gen_pows = pows

    def __repr__(self) -> str:
        return f"FiniteField({self.p}, {self.k})"

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        return _poly_mulmod(a, b, self.modulus, self.p)

    def pow(self, a, e):
        if not any(a):
            return self.one if e == 0 else self.zero
        e %= self.order - 1
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("field inverse of zero")
        return self.pow(a, self.order - 2)

    def from_int(self, n: int):
        return (n % self.p,) + (0,) * (self.k - 1)

    def element(self, n: int):
        """The n-th element in base-p digit order, 0 <= n < order."""
        return _digits(n, self.p, self.k)

    def elements(self):
        return (self.element(n) for n in range(self.order))

    def _find_generator(self):
        radicals = [(self.order - 1) // r for r in _prime_factors(self.order - 1)]
        for n in range(1, self.order):
            g = self.element(n)
            if all(self.pow(g, e) != self.one for e in radicals):
                return g
        raise AssertionError("no generator found")

    def gen_pow(self, e: int):
        return self._gen_pows[e % (self.order - 1)]

    def elem_str(self, a) -> str:
        parts = []
        for i, c in enumerate(a):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x" if c != 1 else "x")
            else:
                parts.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "+".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# orthogonal matrices


def _pos(i: int, l: int) -> int:
    """Basis slot of index i in the ordering (1, ..., l, -l, ..., -1)."""
    return i - 1 if i > 0 else 2 * l + i


@dataclass(frozen=True)
class OrthMatrix:
    """A 2l x 2l matrix over a finite field; equality compares entries."""

    field: FiniteField = dc_field(compare=False)
    entries: tuple = ()  # tuple of row tuples of field elements

    @property
    def size(self) -> int:
        return len(self.entries)

    def __mul__(self, other: OrthMatrix) -> OrthMatrix:
        # row-oriented accumulation, skipping zeros: our matrices are sparse
        F = self.field
        zero, one = F.zero, F.one
        out = []
        for row in self.entries:
            acc = [zero] * len(row)
            for k, a in enumerate(row):
                if a == zero:
                    continue
                brow = other.entries[k]
                if a == one:
                    for j, b in enumerate(brow):
                        if b != zero:
                            acc[j] = F.add(acc[j], b)
                else:
                    for j, b in enumerate(brow):
                        if b != zero:
                            acc[j] = F.add(acc[j], F.mul(a, b))
            out.append(tuple(acc))
        return OrthMatrix(F, tuple(out))

    def transpose(self) -> OrthMatrix:
        return OrthMatrix(self.field, tuple(zip(*self.entries)))

    def neg(self) -> OrthMatrix:
        F = self.field
        return OrthMatrix(F, tuple(tuple(F.neg(x) for x in row)
                                   for row in self.entries))

    def is_diagonal(self) -> bool:
        z = self.field.zero
        return all(x == z
                   for i, row in enumerate(self.entries)
                   for j, x in enumerate(row) if i != j)

    def is_upper_triangular(self) -> bool:
        z = self.field.zero
        return all(x == z
                   for i, row in enumerate(self.entries)
                   for j, x in enumerate(row) if j < i)

    def det(self):
        F = self.field
        rows = [list(r) for r in self.entries]
        n = len(rows)
        out = F.one
        for c in range(n):
            pivot = next((r for r in range(c, n) if rows[r][c] != F.zero), None)
            if pivot is None:
                return F.zero
            if pivot != c:
                rows[c], rows[pivot] = rows[pivot], rows[c]
                out = F.neg(out)
            out = F.mul(out, rows[c][c])
            inv = F.inv(rows[c][c])
            for r in range(c + 1, n):
                if rows[r][c] != F.zero:
                    f = F.mul(rows[r][c], inv)
                    rows[r] = [F.sub(x, F.mul(f, y))
                               for x, y in zip(rows[r], rows[c])]
        return out

    def preserves_form(self) -> bool:
        J = form_matrix(self.field, self.size // 2)
        return (self.transpose() * J * self) == J

    def inverse(self) -> OrthMatrix:
        """Only valid for form-preserving matrices: M^{-1} = J tM J."""
        J = form_matrix(self.field, self.size // 2)
        out = J * self.transpose() * J
        assert (out * self) == identity_matrix(self.field, self.size // 2)
        return out

    def to_json(self) -> list:
        return [[self.field.elem_str(x) for x in row] for row in self.entries]


def identity_matrix(F: FiniteField, l: int) -> OrthMatrix:
    n = 2 * l
    return OrthMatrix(F, tuple(
        tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n)))


def form_matrix(F: FiniteField, l: int) -> OrthMatrix:
    """The antidiagonal form J pairing slot i with slot -i."""
    n = 2 * l
    return OrthMatrix(F, tuple(
        tuple(F.one if i + j == n - 1 else F.zero for j in range(n))
        for i in range(n)))


def perm_matrix(v: SignedPerm, F: FiniteField) -> OrthMatrix:
    """The 0/1 matrix of v on the basis (1, ..., l, -l, ..., -1).

    v sends basis vector e_i to e_{v(i)} with v(-i) = -v(i); a flip at the
    image index means the target is the negatively indexed vector, so the
    matrix stays 0/1 and its determinant is (-1)^(number of flips).
    """
    l = v.rank
    n = 2 * l
    rows = [[F.zero] * n for _ in range(n)]
    for i in range(1, l + 1):
        img = v.perm[i - 1]
        tgt = -img if img in v.flips else img
        rows[_pos(tgt, l)][_pos(i, l)] = F.one
        rows[_pos(-tgt, l)][_pos(-i, l)] = F.one
    return OrthMatrix(F, tuple(tuple(r) for r in rows))


def _split_exponent(F: FiniteField, den: int) -> int:
    if (F.order - 1) % den:
        m = 1
        while (F.p ** m - 1) % den:
            m += 1
        raise DenominatorNotSplit(
            f"denominator {den} does not divide {F.order} - 1", suggested_degree=m)
    return (F.order - 1) // den


def torus_matrix(t: QZVector, F: FiniteField) -> OrthMatrix:
    """Diagonal matrix with g^(num (q-1)/den) in slot i, inverse in slot -i."""
    l = len(t)
    n = 2 * l
    rows = [[F.zero] * n for _ in range(n)]
    for i, q in enumerate(t.coords):
        e = q.num * _split_exponent(F, q.den)
        rows[_pos(i + 1, l)][_pos(i + 1, l)] = F.gen_pow(e)
        rows[_pos(-(i + 1), l)][_pos(-(i + 1), l)] = F.gen_pow(-e)
    return OrthMatrix(F, tuple(tuple(r) for r in rows))


def root_subgroup(alpha: Root, s, l: int, F: FiniteField) -> OrthMatrix:
    """The unipotent x_alpha(s) in the natural representation.

    e_i - e_j gives Id + s(E_{i,j} - E_{-j,-i}); e_i + e_j gives
    Id + s(E_{i,-j} - E_{j,-i}); -e_i - e_j gives Id + s(E_{-j,i} - E_{-i,j}).
    Each preserves the antidiagonal form and is additive in s.
    """
    (i, ei), (j, ej) = [(k, alpha.vec[k - 1]) for k in alpha.support]
    if ei == 1 and ej == -1:
        pairs = ((i, j), (-j, -i))
    elif ei == -1 and ej == 1:
        pairs = ((j, i), (-i, -j))
    elif ei == 1 and ej == 1:
        pairs = ((i, -j), (j, -i))
    else:
        pairs = ((-j, i), (-i, j))
    rows = [list(r) for r in identity_matrix(F, l).entries]
    (a, b), (c, d) = pairs
    rows[_pos(a, l)][_pos(b, l)] = F.add(rows[_pos(a, l)][_pos(b, l)], s)
    rows[_pos(c, l)][_pos(d, l)] = F.sub(rows[_pos(c, l)][_pos(d, l)], s)
    return OrthMatrix(F, tuple(tuple(r) for r in rows))


@lru_cache(maxsize=None)
def field_for(p: int, q: int) -> FiniteField:
    """The deterministic field of order q in characteristic p."""
    k = 0
    m = 1
    while m < q:
        m *= p
        k += 1
    if m != q:
        raise ConfigError(f"{q} is not a power of {p}")
    return FiniteField(p, k)


# ---------------------------------------------------------------------------
# verification suites


@dataclass(frozen=True)
class MatrixReport:
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


def _prime_power_base(q: int) -> int:
    return next(d for d in range(2, q + 1) if q % d == 0)


def _random_split_vector(l: int, F: FiniteField, rng: random.Random) -> QZVector:
    n = F.order - 1
    return QZVector(tuple(QZ(rng.randrange(n), n) for _ in range(l)))


def _inverse_paired(M: OrthMatrix) -> bool:
    F = M.field
    n = M.size
    return all(
        M.entries[i][i] == F.inv(M.entries[n - 1 - i][n - 1 - i])
        for i in range(n))


def verify_prop21(l: int, q: int, seed: int = 0) -> MatrixReport:
    """The permutation-matrix complement of the diagonal torus, concretely.

    Checks that the even-flip matrices form a faithful copy of the rank-l
    even hyperoctahedral group inside SO_2l: right size, trivial intersection
    with the diagonal, normalizing the torus, fixed entrywise by the q-power
    map, and still faithful modulo the center {±Id}.
    """
    p = _prime_power_base(q)
    F = field_for(p, q)
    rng = random.Random(seed)
    elems = list(all_signed_perms(l))
    even = [v for v in elems if v.is_even()]
    odd = [v for v in elems if not v.is_even()]
    mats = {v: perm_matrix(v, F) for v in elems}
    all_entries = {m.entries for m in mats.values()}
    minus_one = F.neg(F.one)

    items = {}
    items["weyl_image_in_so"] = (
        len({mats[v].entries for v in even}) == 2 ** (l - 1) * factorial(l)
        and all(mats[v].det() == F.one and mats[v].preserves_form()
                for v in even)
        and all(mats[v].det() == minus_one for v in odd))
    items["torus_intersection_trivial"] = all(
        v.is_identity() for v in even if mats[v].is_diagonal())

    normalizes = True
    for _ in range(10):
        T = torus_matrix(_random_split_vector(l, F, rng), F)
        for v in rng.sample(even, min(20, len(even))):
            M = mats[v] * T * mats[v].inverse()
            if not (M.is_diagonal() and _inverse_paired(M)):
                normalizes = False
    items["normalizes_torus"] = normalizes

    powmap = {x: F.pow(x, q) for x in F.elements()}
    items["frobenius_fixes_elementwise"] = all(
        powmap[x] == x for m in mats.values() for row in m.entries for x in row)
    items["injects_mod_center"] = (
        len(all_entries) == 2 ** l * factorial(l)
        and identity_matrix(F, l).neg().entries not in all_entries)

    details = {"l": l, "q": q,
               "weyl_order": len({mats[v].entries for v in even})}
    return MatrixReport("prop21", items, details)


def verify_graph_auto(l: int, q: int, samples: int = 20,
                      seed: int = 0) -> MatrixReport:
    """Conjugation by the (l, -l) transposition matrix on root subgroups.

    The expected pattern is the diagram symmetry: the first l-2 simple root
    subgroups are fixed pointwise, the last two are swapped, positivity is
    preserved (upper-triangular matrices stay upper triangular), and doing it
    twice is the identity.
    """
    p = _prime_power_base(q)
    F = field_for(p, q)
    rng = random.Random(seed)
    C = perm_matrix(SignedPerm.flip_set(l, (l,)), F)
    Cinv = C.inverse()
    simple = simple_roots(l)
    nonzero = [F.element(n) for n in range(1, F.order)]
    svals = [rng.choice(nonzero) for _ in range(samples)]

    def conj(M):
        return C * M * Cinv

    items = {}
    items["fixes_first_roots"] = all(
        conj(root_subgroup(simple[i], s, l, F))
        == root_subgroup(simple[i], s, l, F)
        for i in range(l - 2) for s in svals)
    items["swaps_last_pair"] = all(
        conj(root_subgroup(simple[l - 2], s, l, F))
        == root_subgroup(simple[l - 1], s, l, F)
        and conj(root_subgroup(simple[l - 1], s, l, F))
        == root_subgroup(simple[l - 2], s, l, F)
        for s in svals)
    positive = [r for r in full_root_system(l) if r.is_positive()]
    items["preserves_positivity"] = all(
        conj(root_subgroup(r, s, l, F)).is_upper_triangular()
        for r in positive for s in svals[:5])
    items["involution"] = C * C == identity_matrix(F, l) and all(
        conj(conj(root_subgroup(simple[i], s, l, F)))
        == root_subgroup(simple[i], s, l, F)
        for i in range(l) for s in svals[:5])

    details = {"l": l, "q": q, "samples": samples, "seed": seed}
    return MatrixReport("graphauto", items, details)


def crosscheck_action(x: AdTorusElem, v: SignedPerm, F: FiniteField) -> bool:
    """Abstract Weyl action vs matrix conjugation, modulo the center ±Id.

    True iff P_v T(x) P_v^{-1} equals the torus matrix of the acted adjoint
    representative, for one of that representative's two lifts (they differ
    by the half shift, i.e. by the scalar -Id).
    """
    P = perm_matrix(v, F)
    T = torus_matrix(x.t, F)
    lhs = P * T * P.inverse()
    rhs = torus_matrix(act_ad(ExtElem(v, 0), x).t, F)
    return lhs == rhs or lhs == rhs.neg()


def _splitting_degree(p: int, den: int) -> int:
    m = 1
    while (p ** m - 1) % den:
        m += 1
    return m


def _random_signed_perm(l: int, rng: random.Random) -> SignedPerm:
    perm = list(range(1, l + 1))
    rng.shuffle(perm)
    flips = tuple(i for i in range(1, l + 1) if rng.random() < 0.5)
    return SignedPerm(tuple(perm), flips)


def crosscheck_suite(l: int = 4, p: int = 3, samples: int = 100,
                     max_den: int = 16, roundtrips: int = 1000,
                     seed: int = 0) -> MatrixReport:
    """Random model-faithfulness sweep.

    Each sample draws a torus element with one denominator up to max_den
    (coprime to p), builds the smallest field splitting it, and compares the
    abstract Weyl action with matrix conjugation.  The round-trip item checks
    that lifting to coroot coordinates and projecting back is the identity.
    """
    rng = random.Random(seed)
    dens = [d for d in range(1, max_den + 1) if gcd(d, p) == 1]

    def random_x() -> AdTorusElem:
        d = rng.choice(dens)
        return AdTorusElem(QZVector(tuple(QZ(rng.randrange(d), d)
                                          for _ in range(l))))

    matched = 0
    for _ in range(samples):
        x = random_x()
        v = _random_signed_perm(l, rng)
        den = x.t.denominator_lcm()
        F = field_for(p, p ** _splitting_degree(p, den if den % 2 == 0 else 2 * den))
        if crosscheck_action(x, v, F):
            matched += 1

    trips = 0
    for _ in range(roundtrips):
        x = random_x()
        if project(lift(x)) == x:
            trips += 1

    items = {
        "matrix_action_matches": matched == samples,
        "lift_project_roundtrip": trips == roundtrips,
    }
    details = {"l": l, "p": p, "samples": samples, "max_den": max_den,
               "roundtrips": roundtrips, "seed": seed,
               "matched": matched, "roundtrips_ok": trips}
    return MatrixReport("crosscheck", items, details)
