"""Exact arithmetic in (Q/Z) restricted to denominators prime to p.

The additive group Q/Z models roots of unity of order prime to the working
characteristic: the fraction num/den stands for a fixed primitive den-th root
of unity raised to the num-th power.  Everything here is integer arithmetic;
there is no floating point anywhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DenominatorDivisibleByP, RankMismatch, SingularBasis

__all__ = [
    "QZ",
    "QZVector",
    "IntMatrix",
    "qz",
    "coroot_basis",
    "solve_basis",
]


@dataclass(frozen=True)
class QZ:
    """An element of Q/Z stored as the reduced fraction num/den in [0, 1)."""

    num: int = 0
    den: int = 1

    def __post_init__(self):
        if self.den == 0:
            raise ZeroDivisionError("zero denominator")
        num, den = self.num, self.den
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    def __add__(self, other: QZ) -> QZ:
        return QZ(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: QZ) -> QZ:
        return QZ(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> QZ:
        # already reduced: gcd(den - num, den) = gcd(num, den) = 1
        return QZ(self.den - self.num if self.num else 0, self.den)

    def __mul__(self, k: int) -> QZ:
        if not isinstance(k, int):
            return NotImplemented
        return QZ(self.num * k, self.den)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.num != 0

    def __lt__(self, other: QZ) -> bool:
        return self.num * other.den < other.num * self.den

    def __le__(self, other: QZ) -> bool:
        return self.num * other.den <= other.num * self.den

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def compact(self) -> str:
        """Short form used inside vectors: "0", "1/4"."""
        return str(self.num) if self.den == 1 else f"{self.num}/{self.den}"

    @classmethod
    def parse(cls, text: str) -> QZ:
        text = text.strip()
        if "/" in text:
            a, b = text.split("/")
            return cls(int(a), int(b))
        return cls(int(text))


def qz(a: int, b: int, p: int) -> QZ:
    """Reduced a/b mod 1 with the denominator checked against p."""
    x = QZ(a, b)
    if p > 1 and x.den % p == 0:
        raise DenominatorDivisibleByP(f"{x} has denominator divisible by p = {p}")
    return x


ZERO = QZ(0)
HALF = QZ(1, 2)


@dataclass(frozen=True)
class QZVector:
    """A tuple of QZ coordinates; the ambient meaning is supplied by callers."""

    coords: tuple[QZ, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))

    @classmethod
    def zero(cls, l: int) -> QZVector:
        return cls((ZERO,) * l)

    @classmethod
    def half_shift(cls, l: int) -> QZVector:
        return cls((HALF,) * l)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> QZ:
        return self.coords[i]

    def _check_rank(self, other: QZVector) -> None:
        if len(self) != len(other):
            raise RankMismatch(f"rank {len(self)} vs {len(other)}")

    def __add__(self, other: QZVector) -> QZVector:
        self._check_rank(other)
        return QZVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: QZVector) -> QZVector:
        self._check_rank(other)
        return QZVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> QZVector:
        return QZVector(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> QZVector:
        if not isinstance(k, int):
            return NotImplemented
        return QZVector(tuple(a * k for a in self.coords))

    __rmul__ = __mul__

    def __lt__(self, other: QZVector) -> bool:
        self._check_rank(other)
        return self.coords < other.coords

    def __le__(self, other: QZVector) -> bool:
        return self == other or self < other

    def is_zero(self) -> bool:
        return all(not a for a in self.coords)

    def denominator_lcm(self) -> int:
        n = 1
        for a in self.coords:
            n = n * a.den // gcd(n, a.den)
        return n

    def validate_char(self, p: int) -> QZVector:
        """Raise unless every reduced denominator is prime to p."""
        for a in self.coords:
            if p > 1 and a.den % p == 0:
                raise DenominatorDivisibleByP(
                    f"coordinate {a} has denominator divisible by p = {p}")
        return self

    def __str__(self) -> str:
        return ",".join(a.compact() for a in self.coords)

    @classmethod
    def parse(cls, text: str, p: int = 0) -> QZVector:
        v = cls(tuple(QZ.parse(part) for part in text.split(",")))
        if p:
            v.validate_char(p)
        return v


@dataclass(frozen=True)
class IntMatrix:
    """A square integer matrix; rows are tuples."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        rows = tuple(tuple(int(e) for e in row) for row in self.rows)
        if any(len(row) != n for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def from_columns(cls, cols: list[tuple[int, ...]]) -> IntMatrix:
        return cls(tuple(zip(*cols)))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def det(self) -> int:
        """Determinant by fraction-free elimination over Fraction (exact)."""
        n = self.n
        m = [[Fraction(e) for e in row] for row in self.rows]
        det = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col]), None)
            if pivot is None:
                return 0
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det
            det *= m[col][col]
            inv = 1 / m[col][col]
            for r in range(col + 1, n):
                f = m[r][col] * inv
                if f:
                    m[r] = [a - f * b for a, b in zip(m[r], m[col])]
        assert det.denominator == 1
        return int(det)

    def inverse_fractions(self) -> tuple[tuple[Fraction, ...], ...]:
        """Exact inverse by Gauss-Jordan; raises SingularBasis on det 0."""
        n = self.n
        aug = [[Fraction(e) for e in row] + [Fraction(int(i == r)) for i in range(n)]
               for r, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col]), None)
            if pivot is None:
                raise SingularBasis("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [a * inv for a in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return tuple(tuple(row[n:]) for row in aug)

    def apply_qz(self, v: QZVector) -> QZVector:
        """Integer matrix acting on (Q/Z)^n coordinates (well defined mod 1)."""
        if len(v) != self.n:
            raise RankMismatch(f"matrix rank {self.n} vs vector rank {len(v)}")
        out = []
        for row in self.rows:
            num, den = 0, 1
            for c, a in zip(row, v.coords):
                if c:
                    num = num * a.den + c * a.num * den
                    den *= a.den
            out.append(QZ(num, den))
        return QZVector(tuple(out))

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{e:3d}" for e in row) for row in self.rows)


def coroot_basis(l: int) -> IntMatrix:
    """Columns are the simple coroots of D_l in the standard basis.

    e_1-e_2, ..., e_{l-1}-e_l, e_{l-1}+e_l; the determinant is +-2, which is
    exactly the index of the coroot lattice in Z^l.
    """
    if l < 2:
        raise RankMismatch(f"rank {l} too small for type D")
    cols = []
    for i in range(l - 1):
        col = [0] * l
        col[i], col[i + 1] = 1, -1
        cols.append(tuple(col))
    last = [0] * l
    last[l - 2] = last[l - 1] = 1
    cols.append(tuple(last))
    return IntMatrix.from_columns(cols)


def solve_basis(B: IntMatrix, t: QZVector) -> QZVector:
    """Solve B*u = t over Q/Z, evaluated on the stored representative of t.

    The answer is B^{-1} applied to the canonical num/den representatives;
    changing representatives moves the result by an element of the kernel of
    u -> B*u mod 1 (order |det B|), so the canonical-representative rule makes
    the choice deterministic.
    """
    if B.n != len(t):
        raise RankMismatch(f"matrix rank {B.n} vs vector rank {len(t)}")
    d = B.det()
    if d == 0:
        raise SingularBasis("coroot basis is singular")
    inv = B.inverse_fractions()
    out = []
    for row in inv:
        s = Fraction(0)
        for c, a in zip(row, t.coords):
            if c:
                s += c * a.as_fraction()
        out.append(QZ(s.numerator, s.denominator))
    return QZVector(tuple(out))
