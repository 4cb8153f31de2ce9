"""Dual graphs of surface divisor configurations and intersection forms.

Vertices are compact components of D(1), edges are the points of D(2) (their
lifts under a finite cover); homology is computed over Q with orientations
fixed by the global vertex order.  Loops record transversal
self-intersections: they contribute nothing to the boundary but one
dimension to H_1.

Definiteness of the intersection form is decided exactly by a symmetric
LDL^T-style elimination with rational pivots; the pivot list is the
certificate, no eigenvalues are ever computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import Arrangement, ArrangementError
from .covers import CoverSpec, cover_validate
from .ratlinalg import RatMatrix


@dataclass(frozen=True)
class DualGraph:
    vertices: tuple
    edges: tuple            # (edge id, vertex, vertex); loops have equal ends,
    group_order: int = 1    # an endpoint may be None (it lay on a dropped cell)

    def boundary_matrix(self) -> RatMatrix:
        index = {v: i for i, v in enumerate(self.vertices)}
        entries = {}
        for j, (_, a, b) in enumerate(self.edges):
            if a is not None and a == b:
                continue  # loop: zero boundary, one H_1 dimension
            if a is not None and b is not None:
                ia, ib = index[a], index[b]
                # orient from the earlier vertex to the later one
                if ia > ib:
                    ia, ib = ib, ia
                entries[(ib, j)] = entries.get((ib, j), Fraction(0)) + 1
                entries[(ia, j)] = entries.get((ia, j), Fraction(0)) - 1
            elif a is not None or b is not None:
                # dangling edge: the other endpoint was not a cell
                i = index[a if a is not None else b]
                entries[(i, j)] = entries.get((i, j), Fraction(0)) + 1
        return RatMatrix(len(self.vertices), len(self.edges), entries)


def dual_graph(arr: Arrangement, cover: CoverSpec | None = None) -> DualGraph:
    """Extract the dual graph: compact curve components vs double points.

    Requires the surface case.  Under a cover the vertices and edges are the
    lifted components (coset labels); endpoints follow the incidence lifts.
    """
    if arr.n > 2:
        raise ArrangementError("dual graphs are defined for curves and surfaces only")
    if cover is not None:
        cover_validate(arr, cover)
    vertices = []
    for cid in arr.level_components(1):
        if not arr.component(cid).compact:
            continue
        if cover is None:
            vertices.append(cid)
        else:
            vertices.extend((cid, c) for c in range(cover.lift_count(cid)))
    vertex_set = set(vertices)
    edges = []
    for cid in arr.level_components(2):
        comp = arr.component(cid)
        i, j = arr.ordered_subset(comp.subset)
        pa = arr.parent_in(cid, j)  # the component of D_i containing the point
        pb = arr.parent_in(cid, i)
        if cover is None:
            a = pa if pa in vertex_set else None
            b = pb if pb in vertex_set else None
            edges.append((cid, a, b))
        else:
            la = cover.lift_matrix(cid, j, pa)
            lb = cover.lift_matrix(cid, i, pb)
            for c in range(cover.lift_count(cid)):
                a = _lift_endpoint(la, pa, c, vertex_set)
                b = _lift_endpoint(lb, pb, c, vertex_set)
                edges.append(((cid, c), a, b))
    return DualGraph(tuple(vertices), tuple(edges),
                     cover.group.order if cover is not None else 1)


def _lift_endpoint(lift: RatMatrix, parent, coset: int, vertex_set):
    for i, j, _ in lift.iter_nonzero():
        if j == coset:
            v = (parent, i)
            return v if v in vertex_set else None
    return None


def graph_l2_homology(g: DualGraph) -> tuple[Fraction, Fraction]:
    """(vn-dim H_0, vn-dim H_1) of the edge->vertex boundary complex."""
    boundary = g.boundary_matrix()
    r = boundary.rank()
    h0 = len(g.vertices) - r
    h1 = len(g.edges) - r
    return Fraction(h0, g.group_order), Fraction(h1, g.group_order)


@dataclass(frozen=True)
class IntersectionForm:
    components: tuple[str, ...]
    matrix: RatMatrix


def intersection_form(arr: Arrangement) -> IntersectionForm:
    """Q with self-intersections on the diagonal, crossing counts off it.

    Indexed by the compact components of D(1) in canonical order; requires
    the surface case and a self-intersection number for every component.
    """
    if arr.n != 2:
        raise ArrangementError("intersection forms are defined in the surface case")
    comps = [cid for cid in arr.level_components(1) if arr.component(cid).compact]
    index = {cid: i for i, cid in enumerate(comps)}
    missing = [cid for cid in comps if cid not in arr.intersection_numbers]
    if missing:
        raise ArrangementError(f"missing self-intersection numbers for {missing}")
    entries = {}
    for i, cid in enumerate(comps):
        entries[(i, i)] = Fraction(arr.intersection_numbers[cid])
    for pid in arr.level_components(2):
        comp = arr.component(pid)
        i, j = arr.ordered_subset(comp.subset)
        a = arr.parent_in(pid, j)
        b = arr.parent_in(pid, i)
        if a in index and b in index and a != b:
            ia, ib = index[a], index[b]
            entries[(ia, ib)] = entries.get((ia, ib), Fraction(0)) + 1
            entries[(ib, ia)] = entries.get((ib, ia), Fraction(0)) + 1
    return IntersectionForm(tuple(comps), RatMatrix(len(comps), len(comps), entries))


@dataclass(frozen=True)
class DefinitenessCertificate:
    negative_definite: bool
    pivots: tuple[Fraction, ...]
    radical_dim: int
    failure: str | None = None


def is_negative_definite(q: IntersectionForm | RatMatrix) -> DefinitenessCertificate:
    """Exact LDL^T-style test: negative definite iff all pivots are negative.

    Also reports the radical dimension (kernel of Q); it bounds weight-one
    contributions and is zero precisely when the form is nondegenerate.
    """
    m = q.matrix if isinstance(q, IntersectionForm) else q
    if m.nrows != m.ncols:
        raise ValueError("intersection form must be square")
    if m != m.transpose():
        raise ValueError("intersection form must be symmetric")
    n = m.nrows
    radical = n - m.rank()
    a = m.rows()
    pivots: list[Fraction] = []
    failure = None
    definite = n >= 0
    for k in range(n):
        piv = a[k][k]
        pivots.append(piv)
        if piv == 0:
            definite = False
            if any(a[k][j] != 0 for j in range(k, n)):
                failure = f"zero pivot at index {k} with nonzero residual row"
                break
            failure = failure or f"zero pivot at index {k}"
            continue
        if piv > 0:
            definite = False
            failure = failure or f"positive pivot at index {k}"
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f == 0:
                continue
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    negative = definite and all(p < 0 for p in pivots) and len(pivots) == n
    return DefinitenessCertificate(
        negative_definite=negative,
        pivots=tuple(pivots),
        radical_dim=radical,
        failure=None if negative else failure,
    )


def dynkin_matrix(kind: str, rank: int) -> RatMatrix:
    """Negative Cartan-like matrices: diagonal -2, Dynkin adjacency 1."""
    edges: list[tuple[int, int]] = []
    if kind == "A":
        edges = [(i, i + 1) for i in range(rank - 1)]
    elif kind == "D":
        if rank < 3:
            raise ValueError("D_k needs rank >= 3")
        edges = [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    elif kind == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E_k has rank 6, 7 or 8")
        edges = [(i, i + 1) for i in range(rank - 2)] + [(2, rank - 1)]
    else:
        raise ValueError(f"unknown Dynkin type {kind!r}")
    entries = {(i, i): Fraction(-2) for i in range(rank)}
    for i, j in edges:
        entries[(i, j)] = Fraction(1)
        entries[(j, i)] = Fraction(1)
    return RatMatrix(rank, rank, entries)
