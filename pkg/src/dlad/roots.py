"""The root system of type D_l and its subsystems cut out by torus elements.

Roots are the integer vectors +-e_i +- e_j (i < j).  A root evaluates on a
coordinate vector t as the corresponding signed sum, which is well defined on
the adjoint torus because every root kills the half shift (1/2, ..., 1/2).
Positivity is lexicographic on coordinate vectors, which recovers the standard
positive system and the standard simple roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import factorial

from .errors import (
    BoundExceeded,
    NotClosedUnderNegation,
    RankMismatch,
    UnclassifiableComponent,
)
from .exactnum import QZ, QZVector
from .weyl import SignedPerm

__all__ = [
    "Root",
    "RootSubsystem",
    "full_root_system",
    "simple_roots",
    "phi_x",
    "choose_basis",
    "classify_components",
    "weyl_order",
    "reflection",
    "reflection_group",
]


@dataclass(frozen=True)
class Root:
    """A vector with exactly two nonzero entries, both +-1."""

    vec: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vec", tuple(int(c) for c in self.vec))
        nz = [c for c in self.vec if c]
        if len(nz) != 2 or any(c not in (1, -1) for c in nz):
            raise ValueError(f"not a D-type root: {self.vec}")

    @property
    def rank(self) -> int:
        return len(self.vec)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, c in enumerate(self.vec) if c)

    def __neg__(self) -> Root:
        return Root(tuple(-c for c in self.vec))

    def __add__(self, other: Root):
        # may leave the root system; callers must catch ValueError.
        return Root(tuple(a + b for a, b in zip(self.vec, other.vec)))

    def is_positive(self) -> bool:
        for c in self.vec:
            if c:
                return c > 0
        return False

    def dot(self, other: Root) -> int:
        return sum(a * b for a, b in zip(self.vec, other.vec))

    def evaluate(self, t: QZVector) -> QZ:
        if len(t) != self.rank:
            raise RankMismatch(f"root rank {self.rank} vs vector rank {len(t)}")
        val = QZ(0)
        for c, a in zip(self.vec, t.coords):
            if c == 1:
                val = val + a
            elif c == -1:
                val = val - a
        return val

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.vec, start=1):
            if c:
                parts.append(f"{'+' if c > 0 else '-'}e{i}")
        return "".join(parts)

    @classmethod
    def parse(cls, text: str, l: int) -> Root:
        vec = [0] * l
        body = text.strip().replace(" ", "")
        if not body.startswith(("+", "-")):
            body = "+" + body
        for term in body.replace("-", " -").replace("+", " +").split():
            sign = 1 if term[0] == "+" else -1
            if term[1] != "e":
                raise ValueError(f"cannot parse root: {text!r}")
            vec[int(term[2:]) - 1] = sign
        return cls(tuple(vec))


@lru_cache(maxsize=None)
def full_root_system(l: int) -> frozenset[Root]:
    """All 2l(l-1) roots +-e_i +- e_j of D_l."""
    roots = set()
    for i in range(l):
        for j in range(i + 1, l):
            for si in (1, -1):
                for sj in (1, -1):
                    vec = [0] * l
                    vec[i], vec[j] = si, sj
                    roots.add(Root(tuple(vec)))
    return frozenset(roots)


@lru_cache(maxsize=None)
def simple_roots(l: int) -> tuple[Root, ...]:
    """e_1-e_2, ..., e_{l-1}-e_l, e_{l-1}+e_l."""
    out = []
    for i in range(l - 1):
        vec = [0] * l
        vec[i], vec[i + 1] = 1, -1
        out.append(Root(tuple(vec)))
    vec = [0] * l
    vec[l - 2] = vec[l - 1] = 1
    out.append(Root(tuple(vec)))
    return tuple(out)


def choose_basis(roots) -> tuple[Root, ...]:
    """Indecomposable positive roots of a negation-closed set, in standard order.

    Positivity is lexicographic; a positive root is indecomposable when it is
    not a sum of two positive members.  The result is sorted by first support
    index, then lexicographically, which is deterministic and lists e.g. the
    full D_4 basis as e1-e2, e2-e3, e3-e4, e3+e4.
    """
    roots = frozenset(roots)
    for r in roots:
        if -r not in roots:
            raise NotClosedUnderNegation(f"missing {-r}")
    positives = {r for r in roots if r.is_positive()}
    basis = []
    for r in positives:
        decomposable = False
        for b in positives:
            if b != r:
                try:
                    rem = Root(tuple(a - c for a, c in zip(r.vec, b.vec)))
                except ValueError:
                    continue
                if rem in positives:
                    decomposable = True
                    break
        if not decomposable:
            basis.append(r)
    basis.sort(key=lambda r: (r.support[0], r.vec))
    return tuple(basis)


def _span_rank(vecs: list[tuple[int, ...]]) -> int:
    rows = [[Fraction(c) for c in v] for v in vecs]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [a * inv for a in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def classify_components(roots) -> tuple[tuple[str, tuple[int, ...]], ...]:
    """Split into orthogonality-connected components and name each A_r or D_r.

    Inside D_l a component of rank r is type A exactly when its support uses
    r+1 coordinates and type D when it uses r; anything else is rejected.
    D_2 never appears as a single component (its two A_1 factors are
    orthogonal) and rank-3 components on three coordinates are reported as D_3.
    """
    remaining = set(roots)
    components = []
    while remaining:
        seed = remaining.pop()
        comp = {seed, -seed}
        remaining.discard(-seed)
        frontier = [seed, -seed]
        while frontier:
            cur = frontier.pop()
            linked = [r for r in remaining if cur.dot(r) != 0]
            for r in linked:
                remaining.discard(r)
                comp.add(r)
                frontier.append(r)
        support = sorted(set(i for r in comp for i in r.support))
        r = _span_rank([root.vec for root in comp])
        n = len(comp)
        if len(support) == r + 1 and n == r * (r + 1):
            label = f"A{r}"
        elif len(support) == r and r >= 3 and n == 2 * r * (r - 1):
            label = f"D{r}"
        else:
            raise UnclassifiableComponent(
                f"component with {n} roots, rank {r}, support {support}")
        components.append((label, tuple(support)))
    components.sort(key=lambda c: (c[1], c[0]))
    return tuple(components)


def _component_order(label: str) -> int:
    kind, r = label[0], int(label[1:])
    if kind == "A":
        return factorial(r + 1)
    return 2 ** (r - 1) * factorial(r)


@dataclass(frozen=True)
class RootSubsystem:
    roots: frozenset[Root]
    basis: tuple[Root, ...]
    components: tuple[tuple[str, tuple[int, ...]], ...]

    @classmethod
    def from_roots(cls, roots) -> RootSubsystem:
        roots = frozenset(roots)
        basis = choose_basis(roots)
        components = classify_components(roots)
        sub = cls(roots, basis, components)
        # the classification must account for every root and basis element
        assert len(roots) == sum(
            int(lbl[1:]) * (int(lbl[1:]) + 1) if lbl[0] == "A"
            else 2 * int(lbl[1:]) * (int(lbl[1:]) - 1)
            for lbl, _ in components)
        assert len(basis) == sum(int(lbl[1:]) for lbl, _ in components)
        return sub

    def type_string(self) -> str:
        if not self.components:
            return "1"
        labels = sorted(lbl for lbl, _ in self.components)
        out = []
        for lbl in sorted(set(labels)):
            k = labels.count(lbl)
            out.append(lbl if k == 1 else f"{lbl}^{k}")
        return "x".join(out)

    def weyl_order(self) -> int:
        return reduce(lambda acc, c: acc * _component_order(c[0]), self.components, 1)

    def to_json(self) -> dict:
        return {
            "type": self.type_string(),
            "roots": sorted(str(r) for r in self.roots),
            "basis": [str(r) for r in self.basis],
        }


def phi_x(x) -> RootSubsystem:
    """Roots of D_l vanishing on x (an AdTorusElem or QZVector)."""
    t = x.t if hasattr(x, "t") else x
    zero = QZ(0)
    found = [r for r in full_root_system(len(t)) if r.evaluate(t) == zero]
    return RootSubsystem.from_roots(found)


def weyl_order(roots) -> int:
    """Order of the reflection group of a negation-closed A/D root set."""
    return reduce(lambda acc, c: acc * _component_order(c[0]),
                  classify_components(frozenset(roots)), 1)


def reflection(root: Root) -> SignedPerm:
    """s_{e_i-e_j} swaps slots i,j; s_{e_i+e_j} swaps and negates both."""
    i, j = root.support
    tr = SignedPerm.transposition(root.rank, i, j)
    if root.vec[i - 1] == root.vec[j - 1]:
        return SignedPerm(tr.perm, frozenset({i, j}))
    return tr


def reflection_group(roots, bound: int = 10 ** 6) -> frozenset[SignedPerm]:
    """Closure of the reflections in the given roots, with a size guard.

    The predicted order (from the component classification) is checked against
    ``bound`` before generating, and the generated size must agree with the
    prediction — the closure acts as an independent check on the formulas.
    """
    roots = frozenset(roots)
    if not roots:
        return frozenset()
    predicted = weyl_order(roots)
    if predicted > bound:
        raise BoundExceeded(f"reflection group of order {predicted} exceeds {bound}")
    gens = [reflection(r) for r in choose_basis(roots)]
    seen = {SignedPerm.identity(next(iter(roots)).rank)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                h = g * w
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    assert len(seen) == predicted, (len(seen), predicted)
    return frozenset(seen)
