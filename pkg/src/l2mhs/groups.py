"""Finite groups, their rational modules and equivariant maps.

For a finite deck group everything is exact: the von Neumann dimension of a
module is dim_Q / |G|, reduced and unreduced cohomology agree, and l2(G) is
just the regular module Q[G].  Group elements are indexed 0..order-1 with the
identity at index 0.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .ratlinalg import RatMatrix


class GroupError(ValueError):
    pass


def _compose_perms(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """(p then q) as functions acting on the left: x -> q[p[x]]."""
    return tuple(q[p[x]] for x in range(len(p)))


class FiniteGroup:
    """Finite group given by its multiplication table.

    ``table[g][h]`` is the product g*h; index 0 is the identity.  Groups may
    also be generated from permutations, in which case the table is built by
    closure and validated.
    """

    __slots__ = ("order", "table", "inverses", "_generators")

    def __init__(self, table: Sequence[Sequence[int]], validate: bool = True):
        self.order = len(table)
        self.table = tuple(tuple(row) for row in table)
        if validate:
            self._validate()
        inv = [None] * self.order
        for g in range(self.order):
            for h in range(self.order):
                if self.table[g][h] == 0:
                    inv[g] = h
                    break
            if inv[g] is None:
                raise GroupError(f"element {g} has no inverse")
        self.inverses = tuple(inv)
        self._generators = None

    def _validate(self):
        n = self.order
        if n == 0:
            raise GroupError("empty group")
        for g in range(n):
            if len(self.table[g]) != n:
                raise GroupError("multiplication table is not square")
            if self.table[0][g] != g or self.table[g][0] != g:
                raise GroupError("index 0 is not the identity")
            if sorted(self.table[g]) != list(range(n)):
                raise GroupError(f"row {g} is not a permutation")
            if sorted(self.table[h][g] for h in range(n)) != list(range(n)):
                raise GroupError(f"column {g} is not a permutation")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise GroupError(f"associativity fails at ({a},{b},{c})")

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]], validate=False)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        if n < 1:
            raise GroupError("cyclic group order must be positive")
        return cls([[(i + j) % n for j in range(n)] for i in range(n)], validate=False)

    @classmethod
    def from_permutation_generators(cls, generators: Sequence[Sequence[int]]) -> "FiniteGroup":
        """Close a set of permutations (of any finite set) into a group.

        Element 0 is the identity; the remaining elements are enumerated in
        BFS order, which makes the index assignment deterministic.
        """
        if not generators:
            return cls.trivial()
        degree = len(generators[0])
        gens = []
        for p in generators:
            p = tuple(p)
            if len(p) != degree or sorted(p) != list(range(degree)):
                raise GroupError(f"not a permutation of 0..{degree - 1}: {p}")
            gens.append(p)
        identity = tuple(range(degree))
        elements = [identity]
        index = {identity: 0}
        queue = [identity]
        while queue:
            cur = queue.pop(0)
            for s in gens:
                nxt = _compose_perms(cur, s)
                if nxt not in index:
                    index[nxt] = len(elements)
                    elements.append(nxt)
                    queue.append(nxt)
        n = len(elements)
        table = [[index[_compose_perms(elements[h], elements[g])] for h in range(n)] for g in range(n)]
        group = cls(table, validate=True)
        return group

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverses[g]

    def elements(self) -> range:
        return range(self.order)

    def generators(self) -> tuple[int, ...]:
        """A small generating set (greedy, deterministic)."""
        if self._generators is None:
            gens: list[int] = []
            span = {0}
            for g in range(1, self.order):
                if g not in span:
                    gens.append(g)
                    span = set(self.subgroup_closure(gens))
                    if len(span) == self.order:
                        break
            self._generators = tuple(gens)
        return self._generators

    def subgroup_closure(self, elements: Iterable[int]) -> tuple[int, ...]:
        span = {0}
        frontier = [0]
        gens = sorted(set(elements))
        for g in gens:
            if not 0 <= g < self.order:
                raise GroupError(f"element index {g} out of range")
        while frontier:
            x = frontier.pop()
            for g in gens:
                for y in (self.table[x][g], self.table[g][x]):
                    if y not in span:
                        span.add(y)
                        frontier.append(y)
        return tuple(sorted(span))

    def is_subgroup(self, elements: Iterable[int]) -> bool:
        elems = sorted(set(elements))
        if not elems or elems[0] != 0:
            return False
        eset = set(elems)
        return all(self.table[a][b] in eset for a in elems for b in elems) and all(
            self.inverses[a] in eset for a in elems
        )

    def left_cosets(self, subgroup: Iterable[int]) -> list[tuple[int, ...]]:
        """Left cosets gH, ordered by their minimal element (deterministic)."""
        sub = tuple(sorted(set(subgroup)))
        if not self.is_subgroup(sub):
            raise GroupError(f"{sub} is not a subgroup")
        seen = set()
        cosets = []
        for g in range(self.order):
            if g in seen:
                continue
            coset = tuple(sorted(self.table[g][h] for h in sub))
            seen.update(coset)
            cosets.append(coset)
        return cosets

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


class GModule:
    """Finite-dimensional Q-representation of a FiniteGroup.

    The action is stored as one invertible RatMatrix per group element;
    permutation constructions validate the homomorphism property on the
    cheap permutation level before building matrices.
    """

    __slots__ = ("group", "dimension", "_actions")

    def __init__(self, group: FiniteGroup, dimension: int, actions: Sequence[RatMatrix] | None = None,
                 validate: bool = True):
        self.group = group
        self.dimension = dimension
        if actions is None:
            actions = [RatMatrix.identity(dimension)] * group.order
        actions = list(actions)
        if len(actions) != group.order:
            raise GroupError("one action matrix per group element is required")
        for a in actions:
            if a.shape != (dimension, dimension):
                raise GroupError("action matrix shape mismatch")
        self._actions = tuple(actions)
        if validate:
            self._validate()

    def _validate(self):
        if self._actions[0] != RatMatrix.identity(self.dimension):
            raise GroupError("identity must act as the identity matrix")
        for g in self.group.generators():
            for h in self.group.elements():
                gh = self.group.mul(g, h)
                if self._actions[g] @ self._actions[h] != self._actions[gh]:
                    raise GroupError(f"action is not a homomorphism at ({g},{h})")

    def action(self, g: int) -> RatMatrix:
        return self._actions[g]

    @property
    def vn_dim(self) -> Fraction:
        return Fraction(self.dimension, self.group.order)

    @classmethod
    def trivial(cls, group: FiniteGroup, dimension: int) -> "GModule":
        return cls(group, dimension, None, validate=False)

    @classmethod
    def from_permutations(cls, group: FiniteGroup, perms: Sequence[Sequence[int]]) -> "GModule":
        """Module with basis permuted by the group: g.e_x = e_{perms[g][x]}."""
        n = len(perms[0]) if perms else 0
        if len(perms) != group.order:
            raise GroupError("one permutation per group element is required")
        perms = [tuple(p) for p in perms]
        for p in perms:
            if sorted(p) != list(range(n)):
                raise GroupError("basis action is not a permutation")
        if perms[0] != tuple(range(n)):
            raise GroupError("identity must act trivially")
        for g in group.generators():
            for h in group.elements():
                gh = group.mul(g, h)
                if tuple(perms[g][perms[h][x]] for x in range(n)) != perms[gh]:
                    raise GroupError(f"permutation action is not a homomorphism at ({g},{h})")
        actions = [RatMatrix(n, n, {(p[x], x): Fraction(1) for x in range(n)}) for p in perms]
        return cls(group, n, actions, validate=False)

    @classmethod
    def regular(cls, group: FiniteGroup) -> "GModule":
        """Q[G] with the left translation action."""
        perms = [[group.mul(g, h) for h in group.elements()] for g in group.elements()]
        return cls.from_permutations(group, perms)

    @classmethod
    def coset_module(cls, group: FiniteGroup, subgroup: Iterable[int]) -> "GModule":
        """Q[G/H] with basis the left cosets of H (deterministic order)."""
        cosets = group.left_cosets(subgroup)
        index = {c: i for i, c in enumerate(cosets)}
        sub = set(cosets[0])
        perms = []
        for g in group.elements():
            images = []
            for c in cosets:
                rep = c[0]
                moved = tuple(sorted(group.mul(group.mul(g, rep), h) for h in sub))
                images.append(index[moved])
            perms.append(images)
        return cls.from_permutations(group, perms)

    @classmethod
    def direct_sum(cls, summands: Sequence["GModule"]) -> "GModule":
        summands = list(summands)
        if not summands:
            raise GroupError("direct sum needs at least one summand")
        group = summands[0].group
        for m in summands:
            if m.group != group:
                raise GroupError("direct sum over different groups")
        actions = [
            RatMatrix.block_diagonal([m.action(g) for m in summands]) for g in group.elements()
        ]
        dim = sum(m.dimension for m in summands)
        return cls(group, dim, actions, validate=False)

    def __repr__(self):
        return f"GModule(dim={self.dimension}, |G|={self.group.order})"


def vn_dim(module: GModule) -> Fraction:
    """dim_Q / |G|, exact."""
    if module.group.order <= 0:
        raise GroupError("group order must be positive")
    return module.vn_dim


class GMap:
    """Linear map between GModules, stored as a matrix on column vectors."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: GModule, target: GModule, matrix: RatMatrix):
        if matrix.shape != (target.dimension, source.dimension):
            raise ValueError(
                f"matrix shape {matrix.shape} does not match map "
                f"{source.dimension} -> {target.dimension}"
            )
        if source.group != target.group:
            raise ValueError("source and target must share the group")
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def zero(cls, source: GModule, target: GModule) -> "GMap":
        return cls(source, target, RatMatrix.zeros(target.dimension, source.dimension))

    def check_equivariance(self) -> bool:
        """True iff matrix.action_src(g) == action_tgt(g).matrix on generators."""
        for g in self.source.group.generators():
            if self.matrix @ self.source.action(g) != self.target.action(g) @ self.matrix:
                return False
        return True

    def compose(self, earlier: "GMap") -> "GMap":
        """self after earlier."""
        if earlier.target.dimension != self.source.dimension:
            raise ValueError("composition shape mismatch")
        return GMap(earlier.source, self.target, self.matrix @ earlier.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def rank(self) -> int:
        return self.matrix.rank()

    def __repr__(self):
        return f"GMap({self.source.dimension} -> {self.target.dimension})"


def check_equivariance(f: GMap) -> bool:
    return f.check_equivariance()
