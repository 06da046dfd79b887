"""Exact extreme-ray enumeration for cones {x >= 0 : Ax = 0}.

The double description method builds the cone one hyperplane at a time:
starting from the non-negative orthant, each step keeps the rays lying on
the new hyperplane and adds one convex combination for every *adjacent*
pair of rays straddling it.  Two rays are adjacent when no third ray
vanishes on all coordinates where both of them vanish.

The adjacency test dominates the running time, so rays are indexed in a
binary trie keyed by the zero / non-zero pattern of their coordinates:
the test then walks only the subtrees that could contain a witness, and
per-node ray counts let it backtrack out of subtrees containing nothing
but the two query rays.

All arithmetic is exact (arbitrary-precision integers); every ray is kept
primitive (coordinate gcd 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, Sequence


@dataclass(frozen=True)
class Ray:
    """A primitive non-negative integer vector spanning an extreme ray.

    ``zero_set`` holds bit ``i`` exactly when ``vector[i] == 0``.
    """

    vector: tuple[int, ...]
    zero_set: int

    def __post_init__(self):
        if not self.vector:
            raise ValueError("ray vector must be non-empty")
        if any(v < 0 for v in self.vector):
            raise ValueError("ray vector must be non-negative")
        if not any(self.vector):
            raise ValueError("ray vector must be non-zero")
        if gcd(*self.vector) != 1:
            raise ValueError("ray vector must be primitive")
        mask = 0
        for i, v in enumerate(self.vector):
            if v == 0:
                mask |= 1 << i
        if mask != self.zero_set:
            raise ValueError("zero_set inconsistent with vector")

    @classmethod
    def from_vector(cls, values: Iterable[int]) -> "Ray":
        """Normalize ``values`` to a primitive ray."""
        vec = tuple(values)
        if not vec:
            raise ValueError("ray vector must be non-empty")
        g = gcd(*vec)
        if g == 0:
            raise ValueError("ray vector must be non-zero")
        vec = tuple(v // g for v in vec)
        mask = 0
        for i, v in enumerate(vec):
            if v == 0:
                mask |= 1 << i
        return cls(vec, mask)

    @property
    def dimension(self) -> int:
        return len(self.vector)

    @property
    def support_mask(self) -> int:
        """Bitmask of the non-zero coordinates."""
        return ((1 << len(self.vector)) - 1) ^ self.zero_set


#: A pair filter receives the support masks of two candidate rays and
#: returns False to veto combining them.
PairFilter = Callable[[int, int], bool]


@dataclass(frozen=True)
class ConeProblem:
    """The cone {x in R^dimension : rows . x = 0, x >= 0}.

    ``pair_filter``, when given, vetoes ray combinations during
    enumeration based on the union of their supports; it must be
    *downward closed* (a vector with support contained in an accepted
    support is also acceptable) for the enumeration to stay exact.
    """

    dimension: int
    rows: tuple[tuple[int, ...], ...]
    pair_filter: PairFilter | None = None

    def __init__(
        self,
        dimension: int,
        rows: Iterable[Iterable[int]] = (),
        pair_filter: PairFilter | None = None,
    ):
        frozen_rows = tuple(tuple(int(v) for v in row) for row in rows)
        if dimension <= 0:
            raise ValueError("dimension must be positive")
        for k, row in enumerate(frozen_rows):
            if len(row) != dimension:
                raise ValueError(
                    f"row {k} has {len(row)} entries; expected {dimension}"
                )
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "rows", frozen_rows)
        object.__setattr__(self, "pair_filter", pair_filter)


class _TrieNode:
    __slots__ = ("count", "zero", "nonzero", "ray")

    def __init__(self):
        self.count = 0
        self.zero = None
        self.nonzero = None
        self.ray = None


class RayTrie:
    """Rays indexed by their zero / non-zero coordinate pattern.

    A binary tree: the node at depth ``i`` branches on whether coordinate
    ``i`` is zero.  Each ray is stored at the node just below its last
    non-zero coordinate, and every node counts the rays in its subtree,
    so the tree holds at most ``dimension`` nodes per ray.
    """

    def __init__(self, dimension: int):
        if dimension <= 0:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        self._root = _TrieNode()
        self._nodes = 1

    def __len__(self) -> int:
        return self._root.count

    @property
    def node_count(self) -> int:
        return self._nodes

    def _child(self, node: _TrieNode, branch: str, create: bool):
        child = getattr(node, branch)
        if child is None and create:
            child = _TrieNode()
            setattr(node, branch, child)
            self._nodes += 1
        return child

    def insert(self, ray: Ray) -> None:
        if ray.dimension != self.dimension:
            raise ValueError("ray dimension mismatch")
        last = ray.dimension - 1
        while ray.vector[last] == 0:
            last -= 1
        node = self._root
        node.count += 1
        for i in range(last + 1):
            branch = "zero" if ray.vector[i] == 0 else "nonzero"
            node = self._child(node, branch, create=True)
            node.count += 1
        if node.ray is not None and node.ray != ray:
            raise ValueError("distinct rays share a zero pattern")
        node.ray = ray

    def contains(self, ray: Ray) -> bool:
        if ray.dimension != self.dimension:
            return False
        last = ray.dimension - 1
        while ray.vector[last] == 0:
            last -= 1
        node = self._root
        for i in range(last + 1):
            node = self._child(node, "zero" if ray.vector[i] == 0 else "nonzero", False)
            if node is None:
                return False
        return node.ray == ray

    def finds_third_ray(self, x1: Ray, x2: Ray) -> bool:
        """True iff some stored ray other than ``x1``/``x2`` vanishes on
        every coordinate where both ``x1`` and ``x2`` vanish."""
        v1, v2 = x1.vector, x2.vector
        last1 = max(i for i, v in enumerate(v1) if v != 0)
        last2 = max(i for i, v in enumerate(v2) if v != 0)
        # Depth-first over (node, depth, x1-in-subtree, x2-in-subtree).
        # A ray sits in the subtree while the path matches its zero
        # pattern and has not yet passed its storage node (just below the
        # last non-zero coordinate).
        stack = [(self._root, 0, True, True)]
        while stack:
            node, depth, in1, in2 = stack.pop()
            expected = (1 if in1 else 0) + (1 if in2 else 0)
            if node.count <= expected:
                continue  # nothing here but the query rays themselves
            if node.ray is not None and node.ray != x1 and node.ray != x2:
                return True
            z1 = depth < len(v1) and v1[depth] == 0
            z2 = depth < len(v2) and v2[depth] == 0
            if node.zero is not None:
                stack.append(
                    (
                        node.zero,
                        depth + 1,
                        in1 and z1 and last1 > depth,
                        in2 and z2 and last2 > depth,
                    )
                )
            if not (z1 and z2) and node.nonzero is not None:
                stack.append(
                    (node.nonzero, depth + 1, in1 and not z1, in2 and not z2)
                )
        return False


def adjacent(trie: RayTrie, x1: Ray, x2: Ray) -> bool:
    """True iff no third stored ray vanishes wherever both inputs vanish."""
    for ray in (x1, x2):
        if not trie.contains(ray):
            raise ValueError("adjacency queries require stored rays")
    return not trie.finds_third_ray(x1, x2)


def _dot(row: Sequence[int], vec: Sequence[int]) -> int:
    return sum(r * v for r, v in zip(row, vec))


def enumerate_extreme_rays(
    problem: ConeProblem, row_order: Sequence[int] | None = None
) -> list[Ray]:
    """All extreme rays of the problem's cone, primitive and sorted.

    ``row_order`` optionally reorders the hyperplane processing (the
    result set is independent of it; intermediate cone sizes are not).
    """
    d = problem.dimension
    if row_order is None:
        order = range(len(problem.rows))
    else:
        order = list(row_order)
        if sorted(order) != list(range(len(problem.rows))):
            raise ValueError("row_order must permute the row indices")

    rays = [
        Ray.from_vector(tuple(1 if i == j else 0 for i in range(d)))
        for j in range(d)
    ]
    for index in order:
        row = problem.rows[index]
        on: list[Ray] = []
        positive: list[tuple[Ray, int]] = []
        negative: list[tuple[Ray, int]] = []
        for ray in rays:
            value = _dot(row, ray.vector)
            if value == 0:
                on.append(ray)
            elif value > 0:
                positive.append((ray, value))
            else:
                negative.append((ray, value))

        produced: dict[tuple[int, ...], Ray] = {ray.vector: ray for ray in on}
        if positive and negative:
            trie = RayTrie(d)
            for ray in rays:
                trie.insert(ray)
            for x1, v1 in positive:
                for x2, v2 in negative:
                    if problem.pair_filter is not None and not problem.pair_filter(
                        x1.support_mask, x2.support_mask
                    ):
                        continue
                    if trie.finds_third_ray(x1, x2):
                        continue  # not adjacent
                    combined = Ray.from_vector(
                        tuple(
                            -v2 * a + v1 * b
                            for a, b in zip(x1.vector, x2.vector)
                        )
                    )
                    produced.setdefault(combined.vector, combined)
        rays = list(produced.values())
    return sorted(rays, key=lambda ray: ray.vector)
