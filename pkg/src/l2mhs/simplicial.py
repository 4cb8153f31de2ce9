"""Brute-force simplicial computations used to cross-check everything else.

The complement of a subcomplex D inside |X| deformation-retracts onto the
full subcomplex of the barycentric subdivision spanned by barycenters of
simplices NOT in D; its cohomology is computed by plain rank arithmetic.
Covers of a simplicial base are described by group labels on oriented edges
satisfying the cocycle condition on every triangle.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .covers import CoverError, LocalSystemComplex
from .groups import FiniteGroup
from .ratlinalg import RatMatrix


class SimplicialError(ValueError):
    pass


class SimplicialComplex:
    """Abstract simplicial complex closed under taking faces."""

    def __init__(self, maximal_simplices, vertex_count: int | None = None):
        simplices: set[tuple[int, ...]] = set()
        for s in maximal_simplices:
            s = tuple(sorted(set(s)))
            if not s:
                raise SimplicialError("empty simplex")
            for k in range(1, len(s) + 1):
                simplices.update(combinations(s, k))
        self.by_dim: dict[int, list[tuple[int, ...]]] = {}
        for s in simplices:
            self.by_dim.setdefault(len(s) - 1, []).append(s)
        for d in self.by_dim:
            self.by_dim[d].sort()
        vertices = sorted(v for (v,) in self.by_dim.get(0, []))
        self.vertex_count = vertex_count if vertex_count is not None else (
            (max(vertices) + 1) if vertices else 0)
        self._index = {s: i for d in self.by_dim for i, s in enumerate(self.by_dim[d])}

    def dimension(self) -> int:
        return max(self.by_dim) if self.by_dim else -1

    def simplices(self, d: int) -> list[tuple[int, ...]]:
        return self.by_dim.get(d, [])

    def all_simplices(self) -> list[tuple[int, ...]]:
        return [s for d in sorted(self.by_dim) for s in self.by_dim[d]]

    def counts(self) -> dict[int, int]:
        return {d: len(v) for d, v in self.by_dim.items()}

    def contains(self, simplex) -> bool:
        return tuple(sorted(set(simplex))) in self._index

    def index(self, simplex) -> int:
        return self._index[tuple(sorted(set(simplex)))]

    def boundary_matrix(self, d: int) -> RatMatrix:
        """Boundary C_d -> C_{d-1} with the standard alternating signs."""
        rows = self.simplices(d - 1)
        cols = self.simplices(d)
        row_index = {s: i for i, s in enumerate(rows)}
        entries = {}
        for j, s in enumerate(cols):
            for k in range(len(s)):
                face = s[:k] + s[k + 1:]
                if face:
                    entries[(row_index[face], j)] = Fraction((-1) ** k)
        return RatMatrix(len(rows), len(cols), entries)

    def cohomology_dims(self) -> dict[int, int]:
        """b^k over Q via boundary ranks (field coefficients: b^k = b_k)."""
        if not self.by_dim:
            return {}
        dims = {}
        top = self.dimension()
        ranks = {d: self.boundary_matrix(d).rank() for d in range(1, top + 1)}
        for d in range(0, top + 1):
            n = len(self.simplices(d))
            dims[d] = n - ranks.get(d, 0) - ranks.get(d + 1, 0)
        return dims

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(v) for d, v in self.by_dim.items())

    def closure_of(self, simplices) -> set[tuple[int, ...]]:
        out: set[tuple[int, ...]] = set()
        for s in simplices:
            s = tuple(sorted(set(s)))
            for k in range(1, len(s) + 1):
                out.update(combinations(s, k))
        return out

    def is_subcomplex(self, simplices) -> bool:
        return all(s in self._index for s in self.closure_of(simplices))

    def barycentric_subdivision(self) -> tuple["SimplicialComplex", dict]:
        """Bd(X); vertices of Bd are the simplices of X (flag chains)."""
        order = self.all_simplices()
        vertex_of = {s: i for i, s in enumerate(order)}
        maximal = []
        top = self.dimension()
        # maximal chains: only chains ending in a maximal simplex matter, but
        # emitting every full flag of every simplex is simplest and closed
        def chains(s):
            out = [[s]]
            if len(s) > 1:
                for k in range(len(s)):
                    face = s[:k] + s[k + 1:]
                    out.extend(chain + [s] for chain in chains(face))
            return out

        for d in range(top, -1, -1):
            for s in self.simplices(d):
                for chain in chains(s):
                    if len(chain) == d + 1:
                        maximal.append([vertex_of[c] for c in chain])
        bd = SimplicialComplex(maximal, vertex_count=len(order))
        return bd, vertex_of


def complement_complex(x: SimplicialComplex, divisor_simplices) -> SimplicialComplex:
    """Deformation retract of |X| minus |D| inside the subdivision.

    D is the subcomplex generated by divisor_simplices; the result is the
    full subcomplex of Bd(X) on barycenters of simplices not in D.
    """
    d_closure = x.closure_of(divisor_simplices)
    for s in d_closure:
        if not x.contains(s):
            raise SimplicialError(f"divisor simplex {s} is not a simplex of the complex")
    allowed = [s for s in x.all_simplices() if s not in d_closure]
    allowed_set = set(allowed)
    if not allowed:
        raise SimplicialError("the divisor exhausts the complex")
    # faces of Bd(X) inside the allowed vertices: chains of allowed simplices
    maximal = []

    def grow(chain, top_simplex):
        extensions = []
        for s in allowed_set:
            if len(s) > len(top_simplex) and set(top_simplex) < set(s):
                extensions.append(s)
        grew = False
        for s in sorted(extensions):
            grew = True
            grow(chain + [s], s)
        if not grew:
            maximal.append(list(chain))

    starts = [s for s in allowed if not any(
        len(t) < len(s) and set(t) < set(s) for t in allowed_set)]
    for s in sorted(starts):
        grow([s], s)
    vertex_of = {s: i for i, s in enumerate(x.all_simplices())}
    return SimplicialComplex([[vertex_of[s] for s in chain] for chain in maximal],
                             vertex_count=len(vertex_of))


def complement_cohomology(x: SimplicialComplex, divisor_simplices,
                          subdivisions: int = 1) -> dict[int, int]:
    """Cohomology of |X| minus |D|, via the deleted-subdivision retract.

    subdivisions=2 re-runs the construction one barycentric level deeper
    (the dimensions must not change; useful as a self-check).
    """
    if subdivisions not in (1, 2):
        raise SimplicialError("subdivisions must be 1 or 2")
    d_closure = x.closure_of(divisor_simplices)
    for s in d_closure:
        if not x.contains(s):
            raise SimplicialError(f"divisor simplex {s} is not a simplex of the complex")
    if subdivisions == 2:
        bd, vertex_of = x.barycentric_subdivision()
        divisor_vertices = {vertex_of[s] for s in d_closure}
        d_sub = [s for s in bd.all_simplices() if all(v in divisor_vertices for v in s)]
        return complement_cohomology(bd, d_sub, subdivisions=1)
    if not d_closure:
        return {k: v for k, v in x.cohomology_dims().items()}
    return complement_complex(x, divisor_simplices).cohomology_dims()


def cover_complex(x: SimplicialComplex, group: FiniteGroup,
                  edge_labels: dict | None = None,
                  deck_action: list | None = None) -> LocalSystemComplex:
    """Cover of X from group labels on oriented edges (or a deck action).

    edge_labels maps ordered vertex pairs (u, v) with u < v to a group
    element; the reverse orientation uses the inverse.  The labels must
    satisfy the cocycle condition on every 2-simplex, which is exactly what
    makes the lifts of higher simplices consistent.  The expanded total
    complex of the result is the |G|-fold cover.

    deck_action instead gives one vertex permutation per group generator
    acting freely and simplicially on x; the quotient becomes the base and
    labels are derived.  Exactly one of the two descriptions must be given.
    """
    if (edge_labels is None) == (deck_action is None):
        raise SimplicialError("give exactly one of edge_labels or deck_action")
    if deck_action is not None:
        return _cover_from_deck_action(x, group, deck_action)
    labels = {}
    for (u, v), g in edge_labels.items():
        if not x.contains((u, v)):
            raise SimplicialError(f"labeled edge {(u, v)} is not an edge of the complex")
        if not 0 <= g < group.order:
            raise SimplicialError(f"label of edge {(u, v)} is not a group element")
        labels[tuple(sorted((u, v)))] = g

    def label(u, v):
        if u == v:
            return 0
        g = labels.get(tuple(sorted((u, v))), 0)
        return g if u < v else group.inv(g)

    for s in x.simplices(2):
        u, v, w = s
        if group.mul(label(u, v), label(v, w)) != label(u, w):
            raise CoverError(f"cocycle condition fails on 2-cell {s}")

    # sheets: the lift of simplex s in sheet x has vertex v on sheet
    # x * label(s[0] -> v); the face anchored at f0 then sits in sheet
    # x * label(s[0] -> f0), so the stored transport is the inverse,
    # label(f0 -> s[0]), matching the expansion convention of
    # LocalSystemComplex (row sheet = column sheet * t).
    cells = {d: list(x.simplices(d)) for d in range(0, x.dimension() + 1)}
    diffs = {}
    for d in range(0, x.dimension()):
        rows = cells[d + 1]
        colix = {s: j for j, s in enumerate(cells[d])}
        mat = [[dict() for _ in cells[d]] for _ in rows]
        for i, s in enumerate(rows):
            anchor = s[0]
            for k in range(len(s)):
                face = s[:k] + s[k + 1:]
                j = colix[face]
                t = label(face[0], anchor)
                cell = mat[i][j]
                cell[t] = cell.get(t, Fraction(0)) + Fraction((-1) ** k)
        diffs[d] = mat
    return LocalSystemComplex(group, cells, diffs)


def _cover_from_deck_action(total: SimplicialComplex, group: FiniteGroup,
                            generator_perms: list) -> LocalSystemComplex:
    """Quotient a free simplicial action and return the labeled base."""
    perms = [tuple(p) for p in generator_perms]
    nv = total.vertex_count
    for p in perms:
        if sorted(p) != list(range(nv)):
            raise SimplicialError("deck generator is not a vertex permutation")
    probe = FiniteGroup.from_permutation_generators(perms) if perms else FiniteGroup.trivial()
    if probe.table != group.table:
        raise SimplicialError(
            "deck generators do not realize the stated group "
            "(build the group with from_permutation_generators on the same list)")
    # element index -> vertex permutation, in the same BFS order the group
    # closure uses, so indices agree with the multiplication table
    elems = {tuple(range(nv)): 0}
    queue = [tuple(range(nv))]
    order = [tuple(range(nv))]
    while queue:
        cur = queue.pop(0)
        for p in perms:
            nxt = tuple(p[cur[i]] for i in range(nv))
            if nxt not in elems:
                elems[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
    if len(order) != group.order:
        raise SimplicialError("deck action does not realize the group")
    for perm in order[1:]:
        if any(perm[v] == v for v in range(nv)):
            raise SimplicialError("deck action is not free on vertices")
        for s in total.all_simplices():
            if not total.contains(tuple(perm[v] for v in s)):
                raise SimplicialError("deck action is not simplicial")
    # orbit representatives: the minimal vertex of each orbit
    rep = {}
    orbit_of = {}
    for v in range(nv):
        orbit = sorted({perm[v] for perm in order})
        orbit_of[v] = orbit[0]
        rep[orbit[0]] = orbit
    base_vertices = sorted(rep)
    base_index = {v: i for i, v in enumerate(base_vertices)}
    # labels: for each total edge from a representative, the deck element
    # carrying the representative of the target orbit to the actual endpoint
    elem_sending = {}
    for idx, perm in enumerate(order):
        for v in range(nv):
            elem_sending[(v, perm[v])] = idx
    seen: dict[int, set] = {}
    for s in total.all_simplices():
        bs = tuple(sorted(base_index[orbit_of[v]] for v in s))
        if len(bs) != len(s):
            raise SimplicialError(
                "deck action identifies the vertices of a simplex; the quotient "
                "is not simplicial")
        seen.setdefault(len(s) - 1, set()).add(bs)
    for d, images in seen.items():
        if len(images) * group.order != len(total.simplices(d)):
            raise SimplicialError(
                f"distinct {d}-simplices share an image vertex set; the quotient "
                "is not a simplicial complex")
    base = SimplicialComplex(sorted(set().union(*seen.values())),
                             vertex_count=len(base_vertices))
    labels = {}
    for (u, v) in base.simplices(1):
        tu, tv = base_vertices[u], base_vertices[v]
        # find a lift of the edge starting at the representative tu
        for perm in order:
            cand = perm[tv]
            if total.contains((tu, cand)):
                labels[(u, v)] = elem_sending[(tv, cand)]
                break
        else:
            raise SimplicialError("could not lift a base edge")
    return cover_complex(base, group, edge_labels=labels)
