"""Classical finite-group machinery used as brute-force ground truth.

Groups are stored as Cayley tables on indices 0..order-1.  Permutations act
on 0-based points; 1-based cycle notation is translated at the CLI boundary.
Everything here is exact integer arithmetic, which is the point: these
results are the oracles the numerical quantum-group computations are checked
against.  Sizes are capped at order 24 (the largest group needed is S4), so
brute force is fine throughout and nothing fancier is attempted.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError, ShapeError

ORDER_BOUND = 24


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0..degree-1}, stored as the tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ShapeError(f"not a permutation: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # composition as functions: (self * other)(i) = self(other(i))
        if self.degree != other.degree:
            raise ShapeError("permutation degrees differ")
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.degree)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def matrix(self) -> np.ndarray:
        """Permutation matrix P with P e_j = e_{sigma(j)}."""
        p = np.zeros((self.degree, self.degree), dtype=complex)
        for j in range(self.degree):
            p[self.images[j], j] = 1.0
        return p

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(tuple(range(degree)))

    def order(self) -> int:
        e = Permutation.identity(self.degree)
        p, k = self, 1
        while p != e:
            p = p * self
            k += 1
        return k


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation like "(1 2)(3 4)" or "(1,2,3)"."""
    images = list(range(degree))
    cycles = re.findall(r"\(([^()]*)\)", text)
    if text.strip() and not cycles and text.strip() not in ("", "()", "id", "e"):
        raise ShapeError(f"cannot parse cycles: {text!r}")
    for cyc in cycles:
        pts = [int(tok) - 1 for tok in re.split(r"[,\s]+", cyc.strip()) if tok]
        if not pts:
            continue
        if any(p < 0 or p >= degree for p in pts):
            raise ShapeError(f"cycle point out of range 1..{degree}: {text!r}")
        if len(set(pts)) != len(pts):
            raise ShapeError(f"repeated point in cycle: {text!r}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return Permutation(tuple(images))


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group as a Cayley table; cayley[a, b] = index of a*b."""

    cayley: np.ndarray
    identity: int
    perms: tuple[Permutation, ...] | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return int(self.cayley.shape[0])

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        row = self.cayley[a]
        return int(np.where(row == self.identity)[0][0])

    def element_order(self, a: int) -> int:
        x, k = a, 1
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def conjugacy_classes(self) -> list[frozenset[int]]:
        seen, classes = set(), []
        for a in range(self.order):
            if a in seen:
                continue
            cls = {self.mul(self.mul(g, a), self.inv(g)) for g in range(self.order)}
            seen |= cls
            classes.append(frozenset(cls))
        return classes


def validate_group(g: FiniteGroup) -> None:
    """Check associativity, identity and inverses; raise on failure."""
    n = g.order
    c = g.cayley
    if c.shape != (n, n):
        raise ShapeError("cayley table must be square")
    if c.min() < 0 or c.max() >= n:
        raise ShapeError("cayley entries out of range")
    e = g.identity
    if not (np.all(c[e] == np.arange(n)) and np.all(c[:, e] == np.arange(n))):
        raise ShapeError("identity element does not act as identity")
    for a in range(n):
        if e not in c[a]:
            raise ShapeError(f"element {a} has no inverse")
    # associativity: (ab)c == a(bc)
    left = c[c, :]          # left[a,b,x] = (ab)x
    right = c[:, c]         # right[a,b,x] = a(bx)
    if not np.array_equal(left, right):
        raise ShapeError("cayley table is not associative")


def group_from_cayley(cayley, identity: int | None = None) -> FiniteGroup:
    c = np.asarray(cayley, dtype=int)
    if identity is None:
        n = c.shape[0]
        candidates = [e for e in range(n)
                      if np.all(c[e] == np.arange(n)) and np.all(c[:, e] == np.arange(n))]
        if not candidates:
            raise ShapeError("no identity element in cayley table")
        identity = candidates[0]
    g = FiniteGroup(c, identity)
    validate_group(g)
    return g


def closure(gens: list[Permutation]) -> FiniteGroup:
    """Group generated by permutations, by breadth-first product closure."""
    if not gens:
        raise PreconditionError("need at least one generator")
    degree = gens[0].degree
    if any(p.degree != degree for p in gens):
        raise PreconditionError("generators must share a degree")
    ident = Permutation.identity(degree)
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        new = []
        for p in frontier:
            for q in gens:
                r = p * q
                if r not in index:
                    index[r] = len(elements)
                    elements.append(r)
                    new.append(r)
        frontier = new
    n = len(elements)
    cayley = np.empty((n, n), dtype=int)
    for i, p in enumerate(elements):
        for j, q in enumerate(elements):
            cayley[i, j] = index[p * q]
    g = FiniteGroup(cayley, 0, perms=tuple(elements))
    validate_group(g)
    return g


def cyclic_group(n: int) -> FiniteGroup:
    cayley = np.fromfunction(lambda a, b: (a + b) % n, (n, n), dtype=int)
    return FiniteGroup(cayley.astype(int), 0)


def symmetric_group(n: int) -> FiniteGroup:
    if n == 1:
        return cyclic_group(1)
    gens = [Permutation(tuple([1, 0] + list(range(2, n))))]
    if n > 2:
        gens.append(Permutation(tuple(list(range(1, n)) + [0])))
    return closure(gens)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, as permutations of the vertices."""
    rot = Permutation(tuple((i + 1) % n for i in range(n)))
    ref = Permutation(tuple((n - i) % n for i in range(n)))
    return closure([rot, ref])


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    na, nb = a.order, b.order
    n = na * nb
    cayley = np.empty((n, n), dtype=int)
    for (x1, y1) in itertools.product(range(na), range(nb)):
        for (x2, y2) in itertools.product(range(na), range(nb)):
            cayley[x1 * nb + y1, x2 * nb + y2] = a.mul(x1, x2) * nb + b.mul(y1, y2)
    return FiniteGroup(cayley, a.identity * nb + b.identity)


def klein_four() -> FiniteGroup:
    return direct_product(cyclic_group(2), cyclic_group(2))


def subgroup_generated(g: FiniteGroup, gens) -> frozenset[int]:
    """Subgroup of g generated by a set of element indices (product closure)."""
    elems = {g.identity} | set(int(x) for x in gens)
    frontier = list(elems)
    while frontier:
        new = []
        for a in frontier:
            for b in list(elems):
                for c in (g.mul(a, b), g.mul(b, a)):
                    if c not in elems:
                        elems.add(c)
                        new.append(c)
        frontier = new
    return frozenset(elems)


def normal_closure(g: FiniteGroup, seed) -> frozenset[int]:
    """Smallest normal subgroup containing the seed elements."""
    conj = {g.mul(g.mul(x, a), g.inv(x)) for a in seed for x in range(g.order)}
    current = subgroup_generated(g, conj)
    while True:
        conj = {g.mul(g.mul(x, a), g.inv(x)) for a in current for x in range(g.order)}
        if conj <= current:
            return current
        current = subgroup_generated(g, conj)


def normal_subgroups(g: FiniteGroup, bound: int = ORDER_BOUND) -> list[frozenset[int]]:
    """All normal subgroups, by lattice walk over normal closures."""
    if g.order > bound:
        raise PreconditionError(f"group order {g.order} exceeds bound {bound}")
    found = {frozenset({g.identity})}
    frontier = [frozenset({g.identity})]
    while frontier:
        new = []
        for sub in frontier:
            for a in range(g.order):
                if a in sub:
                    continue
                bigger = normal_closure(g, set(sub) | {a})
                if bigger not in found:
                    found.add(bigger)
                    new.append(bigger)
        frontier = new
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def is_subgroup(g: FiniteGroup, elems) -> bool:
    s = set(elems)
    if g.identity not in s:
        return False
    return all(g.mul(a, b) in s for a in s for b in s)


def is_normal(g: FiniteGroup, elems) -> bool:
    s = set(elems)
    return is_subgroup(g, s) and all(
        g.mul(g.mul(x, a), g.inv(x)) in s for a in s for x in range(g.order)
    )


def intersect_subgroups(s1, s2) -> frozenset[int]:
    return frozenset(s1) & frozenset(s2)


def quotient_map(g: FiniteGroup, normal) -> tuple[FiniteGroup, np.ndarray]:
    """Quotient group g/normal plus the element -> coset-index projection."""
    s = frozenset(normal)
    if not is_normal(g, s):
        raise PreconditionError("subgroup is not normal")
    coset_of = -np.ones(g.order, dtype=int)
    reps = []
    for a in range(g.order):
        if coset_of[a] >= 0:
            continue
        idx = len(reps)
        reps.append(a)
        for h in s:
            coset_of[g.mul(a, h)] = idx
    m = len(reps)
    cayley = np.empty((m, m), dtype=int)
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            cayley[i, j] = coset_of[g.mul(a, b)]
    q = FiniteGroup(cayley, int(coset_of[g.identity]))
    validate_group(q)
    return q, coset_of


def quotient(g: FiniteGroup, normal) -> FiniteGroup:
    return quotient_map(g, normal)[0]


def subgroup_as_group(g: FiniteGroup, elems) -> tuple[FiniteGroup, list[int]]:
    """Relabel a subgroup as a FiniteGroup; returns it with its element list."""
    s = sorted(set(int(x) for x in elems))
    if not is_subgroup(g, s):
        raise PreconditionError("element set is not closed under the product")
    pos = {a: i for i, a in enumerate(s)}
    m = len(s)
    cayley = np.empty((m, m), dtype=int)
    for i, a in enumerate(s):
        for j, b in enumerate(s):
            cayley[i, j] = pos[g.mul(a, b)]
    h = FiniteGroup(cayley, pos[g.identity])
    validate_group(h)
    return h, s


def _generating_sequence(g: FiniteGroup) -> list[int]:
    gens: list[int] = []
    span = {g.identity}
    order = sorted(range(g.order), key=lambda a: -g.element_order(a))
    for a in order:
        if a not in span:
            gens.append(a)
            span = subgroup_generated(g, gens)
            if len(span) == g.order:
                break
    return gens


def is_isomorphic(a: FiniteGroup, b: FiniteGroup, bound: int = ORDER_BOUND) -> bool:
    """Brute-force generator-image search with order-multiset pruning."""
    if a.order > bound or b.order > bound:
        raise PreconditionError(f"orders exceed bound {bound}")
    if a.order != b.order:
        return False
    orders_a = sorted(a.element_order(x) for x in range(a.order))
    orders_b = sorted(b.element_order(x) for x in range(b.order))
    if orders_a != orders_b:
        return False
    gens = _generating_sequence(a)
    if not gens:
        return True  # trivial group
    by_order: dict[int, list[int]] = {}
    for x in range(b.order):
        by_order.setdefault(b.element_order(x), []).append(x)

    def extend(mapping: dict[int, int], level: int) -> bool:
        if level == len(gens):
            return len(set(mapping.values())) == a.order
        gen = gens[level]
        for img in by_order.get(a.element_order(gen), []):
            new_map = dict(mapping)
            new_map[gen] = img
            # close the partial map under products; bail out on conflict
            ok = True
            frontier = list(new_map.items())
            while frontier and ok:
                nxt = []
                for (x1, y1) in frontier:
                    for (x2, y2) in list(new_map.items()):
                        for (xa, ya) in ((a.mul(x1, x2), b.mul(y1, y2)),
                                         (a.mul(x2, x1), b.mul(y2, y1))):
                            if xa in new_map:
                                if new_map[xa] != ya:
                                    ok = False
                                    break
                            else:
                                new_map[xa] = ya
                                nxt.append((xa, ya))
                        if not ok:
                            break
                    if not ok:
                        break
                frontier = nxt
            if ok and len(set(new_map.values())) == len(new_map):
                if extend(new_map, level + 1):
                    return True
        return False

    return extend({a.identity: b.identity}, 0)
