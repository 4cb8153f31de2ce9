"""Seeded deterministic generators for the randomized self-test corpora.

Complexes and filtered complexes are built from elementary pieces (survivors
and cancelling pairs) conjugated by random basis changes, so every expected
dimension is known by construction and serves as an independent oracle.
All randomness flows through a caller-provided random.Random, and the seed
is always printed by the commands that use these.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import Arrangement, GysinData
from .complexes import CochainComplex, DoubleComplex
from .covers import CoverSpec
from .groups import FiniteGroup
from .presets import (
    curve_arrangement,
    genus2_triangulation,
    p1_cyclic_cover,
    sphere_triangulation,
    split_cover,
    surface_curve_configuration,
    torus_free_puncture_cover,
    torus_triangulation,
)
from .ratlinalg import RatMatrix, Subspace
from .simplicial import SimplicialComplex
from .spectral import FilteredComplex


def _random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2)))


def _random_invertible(rng: random.Random, n: int) -> RatMatrix:
    """Unipotent-upper times unipotent-lower with occasional diagonal signs."""
    if n == 0:
        return RatMatrix.identity(0)
    upper = {(i, i): Fraction(1) for i in range(n)}
    lower = {(i, i): Fraction(rng.choice((1, 1, -1))) for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                upper[(i, j)] = _random_fraction(rng)
            if rng.random() < 0.4:
                lower[(j, i)] = _random_fraction(rng)
    return RatMatrix(n, n, upper) @ RatMatrix(n, n, lower)


@dataclass
class ExpectedComplex:
    cohomology: dict[int, int] = field(default_factory=dict)


def random_cochain_complex(rng: random.Random, max_total_dim: int = 10,
                           degree_span: tuple[int, int] = (0, 3)) -> tuple[CochainComplex, ExpectedComplex]:
    lo, hi = degree_span
    slots: dict[int, int] = {}
    pairs: list[tuple[int, int, int]] = []
    expected = ExpectedComplex()
    budget = rng.randint(2, max_total_dim)

    def new_slot(k):
        slots[k] = slots.get(k, 0) + 1
        return slots[k] - 1

    while budget > 0:
        if budget >= 2 and rng.random() < 0.55:
            k = rng.randint(lo, hi - 1)
            pairs.append((k, new_slot(k), new_slot(k + 1)))
            budget -= 2
        else:
            k = rng.randint(lo, hi)
            new_slot(k)
            expected.cohomology[k] = expected.cohomology.get(k, 0) + 1
            budget -= 1
    dims = {k: n for k, n in slots.items()}
    matrices: dict[int, dict] = {}
    for (k, src, tgt) in pairs:
        matrices.setdefault(k, {})[(tgt, src)] = Fraction(1)
    raw = {
        k: RatMatrix(dims.get(k + 1, 0), dims.get(k, 0), matrices.get(k, {}))
        for k in dims
        if k + 1 in dims
    }
    basis = {k: _random_invertible(rng, n) for k, n in dims.items()}
    conj = {
        k: basis[k + 1] @ m @ basis[k].inverse()
        for k, m in raw.items()
    }
    return CochainComplex.from_matrices(dims, conj), expected


@dataclass
class ExpectedFiltered:
    degeneration_page: int
    graded: dict[tuple[int, int], int]  # (p, q) -> dim of Gr^p H^{p+q}
    cohomology: dict[int, int]


def random_filtered_complex(rng: random.Random, max_total_dim: int = 12,
                            max_filtration_len: int = 4,
                            degree_span: tuple[int, int] = (0, 3)) -> tuple[FilteredComplex, ExpectedFiltered]:
    """Filtered complex with fully predictable pages.

    Survivor slots persist to E_oo; a pair with filtration jump s >= 1 dies
    exactly at page s+1 (its d_s is nonzero), a jump-0 pair never reaches
    E_1.  The conjugating automorphism preserves the flag.
    """
    lo, hi = degree_span
    levels = rng.randint(1, max_filtration_len)
    slots: dict[int, list[int]] = {}
    pairs = []
    expected = ExpectedFiltered(1, {}, {})
    budget = rng.randint(2, max_total_dim)

    def new_slot(k, level):
        slots.setdefault(k, []).append(level)
        return len(slots[k]) - 1

    max_jump = 0
    while budget > 0:
        if budget >= 2 and rng.random() < 0.6:
            k = rng.randint(lo, hi - 1)
            w_src = rng.randint(0, levels - 1)
            w_tgt = rng.randint(w_src, levels - 1)
            pairs.append((k, new_slot(k, w_src), new_slot(k + 1, w_tgt)))
            max_jump = max(max_jump, w_tgt - w_src)
            budget -= 2
        else:
            k = rng.randint(lo, hi)
            w = rng.randint(0, levels - 1)
            new_slot(k, w)
            expected.graded[(w, k - w)] = expected.graded.get((w, k - w), 0) + 1
            expected.cohomology[k] = expected.cohomology.get(k, 0) + 1
            budget -= 1
    expected.degeneration_page = max(1, max_jump + 1) if max_jump >= 1 else 1

    # sort slots by level descending so flag-preserving matrices are upper
    # triangular in the block order
    order: dict[int, list[int]] = {}
    for k, lv in slots.items():
        order[k] = sorted(range(len(lv)), key=lambda i: (-lv[i], i))
    position = {k: {slot: pos for pos, slot in enumerate(order[k])} for k in slots}
    dims = {k: len(lv) for k, lv in slots.items()}
    matrices: dict[int, dict] = {}
    for (k, src, tgt) in pairs:
        matrices.setdefault(k, {})[(position[k + 1][tgt], position[k][src])] = Fraction(1)
    raw = {
        k: RatMatrix(dims.get(k + 1, 0), dims.get(k, 0), matrices.get(k, {}))
        for k in dims
        if k + 1 in dims
    }

    def flag_automorphism(k):
        n = dims[k]
        lv = [slots[k][slot] for slot in order[k]]
        entries = {(i, i): Fraction(1) for i in range(n)}
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                # column j may spill only into rows of level >= level(j)
                if lv[i] > lv[j] or (lv[i] == lv[j] and i < j):
                    if rng.random() < 0.35:
                        entries[(i, j)] = _random_fraction(rng)
        return RatMatrix(n, n, entries)

    basis = {k: flag_automorphism(k) for k in dims}
    conj = {k: basis[k + 1] @ m @ basis[k].inverse() for k, m in raw.items()}
    cx = CochainComplex.from_matrices(dims, conj)
    filtration: dict[int, dict[int, Subspace]] = {}
    for p in range(0, levels):
        filtration[p] = {}
        for k in dims:
            lv = [slots[k][slot] for slot in order[k]]
            vectors = []
            for i, level in enumerate(lv):
                if level >= p:
                    vec = [Fraction(0)] * dims[k]
                    vec[i] = Fraction(1)
                    vectors.append(basis[k].apply(vec))
            filtration[p][k] = Subspace.from_vectors(dims[k], vectors)
    return FilteredComplex(cx, filtration), expected


@dataclass
class DoubleComplexSummary:
    has_horizontal_pair: bool
    pieces: list[str]


def random_double_complex(rng: random.Random, max_cells: int = 10,
                          window: int = 3) -> tuple[DoubleComplex, DoubleComplexSummary]:
    dims: dict[tuple[int, int], int] = {}
    horiz: dict[tuple[int, int], dict] = {}
    vert: dict[tuple[int, int], dict] = {}
    pieces = []
    has_hpair = False

    def slot(p, q):
        dims[(p, q)] = dims.get((p, q), 0) + 1
        return dims[(p, q)] - 1

    def add_h(p, q, i, j, value=Fraction(1)):
        horiz.setdefault((p, q), {})[(j, i)] = value

    def add_v(p, q, i, j, value=Fraction(1)):
        vert.setdefault((p, q), {})[(j, i)] = value

    budget = rng.randint(2, max_cells)
    while budget > 0:
        kind = rng.choice(["single", "hpair", "vpair", "square", "stair"])
        p = rng.randint(0, window - 1)
        q = rng.randint(0, window - 1)
        if kind == "single" or budget == 1:
            slot(p, q)
            pieces.append("single")
            budget -= 1
        elif kind == "hpair" and budget >= 2 and p + 1 < window:
            a = slot(p, q)
            b = slot(p + 1, q)
            add_h(p, q, a, b)
            pieces.append("hpair")
            has_hpair = True
            budget -= 2
        elif kind == "vpair" and budget >= 2 and q + 1 < window:
            a = slot(p, q)
            b = slot(p, q + 1)
            add_v(p, q, a, b)
            pieces.append("vpair")
            budget -= 2
        elif kind == "square" and budget >= 4 and p + 1 < window and q + 1 < window:
            w = slot(p, q)
            x = slot(p + 1, q)
            y = slot(p, q + 1)
            z = slot(p + 1, q + 1)
            add_h(p, q, w, x)
            add_v(p, q, w, y)
            add_v(p + 1, q, x, z)
            add_h(p, q + 1, y, z, Fraction(-1))
            pieces.append("square")
            budget -= 4
        elif kind == "stair" and budget >= 3 and p + 1 < window and q + 1 < window:
            # a at (p, q+1) --h--> b at (p+1, q+1) <--v-- c at (p+1, q)
            a = slot(p, q + 1)
            b = slot(p + 1, q + 1)
            c = slot(p + 1, q)
            add_h(p, q + 1, a, b)
            add_v(p + 1, q, c, b)
            pieces.append("stair")
            budget -= 3
        else:
            slot(p, q)
            pieces.append("single")
            budget -= 1

    basis = {pq: _random_invertible(rng, n) for pq, n in dims.items()}

    def conj(mats, direction):
        out = {}
        for (p, q), entries in mats.items():
            tgt = (p + 1, q) if direction == "h" else (p, q + 1)
            m = RatMatrix(dims.get(tgt, 0), dims[(p, q)], entries)
            out[(p, q)] = basis.get(tgt, RatMatrix.identity(0)) @ m @ basis[(p, q)].inverse()
        return out

    dc = DoubleComplex.from_dims(dims, conj(horiz, "h"), conj(vert, "v"))
    return dc, DoubleComplexSummary(has_hpair, pieces)


_SMALL_GROUPS: list[FiniteGroup] | None = None


def small_groups() -> list[FiniteGroup]:
    global _SMALL_GROUPS
    if _SMALL_GROUPS is None:
        s3 = FiniteGroup.from_permutation_generators([(1, 0, 2), (0, 2, 1)])
        _SMALL_GROUPS = [
            FiniteGroup.cyclic(2),
            FiniteGroup.cyclic(3),
            FiniteGroup.cyclic(4),
            FiniteGroup.cyclic(5),
            FiniteGroup.cyclic(6),
            s3,
        ]
    return _SMALL_GROUPS


@dataclass
class ArrangementCase:
    arrangement: Arrangement
    gysin: GysinData | None
    simplicial_model: tuple[SimplicialComplex, list] | None  # (complex, divisor simplices)
    description: str


def random_arrangement(rng: random.Random) -> ArrangementCase:
    """A consistent arrangement with valid Gysin data and nonzero d_1.

    Curve cases come paired with a triangulated model of the punctured
    surface; surface cases carry user divisor-class matrices.
    """
    if rng.random() < 0.6:
        genus = rng.choice([0, 1, 2])
        punctures = rng.randint(1, 4)
        arr = curve_arrangement(genus, punctures)
        model = _curve_model(genus, punctures)
        return ArrangementCase(arr, None, model, f"curve g={genus} n={punctures}")
    k = rng.randint(1, 3)
    names = {f"C{i + 1}": rng.choice([0, 0, 1]) for i in range(k)}
    crossings = []
    curve_names = sorted(names)
    for i in range(len(curve_names)):
        for j in range(i + 1, len(curve_names)):
            for _ in range(rng.randint(0, 2)):
                crossings.append((curve_names[i], curve_names[j]))
    b2 = rng.choice([1, 2])
    betti = (1, 0, b2, 0, 1)
    hodge = {0: {(0, 0): 1}, 1: {}, 2: {(1, 1): b2}, 3: {}, 4: {(2, 2): 1}}
    classes = RatMatrix.from_rows(
        [[rng.randint(-2, 2) for _ in curve_names] for _ in range(b2)])
    if classes.is_zero() and not crossings:
        classes = RatMatrix.from_rows([[1] * len(curve_names)] + [[0] * len(curve_names)] * (b2 - 1))
    h1_total = sum(2 * names[c] for c in curve_names)
    arr, gysin = surface_curve_configuration(
        names, crossings, ambient_betti=betti, ambient_hodge=hodge,
        divisor_classes=classes,
        self_intersections={c: rng.randint(-3, -1) for c in curve_names},
    )
    return ArrangementCase(arr, gysin, None, f"surface k={k} x={len(crossings)}")


def _curve_model(genus: int, punctures: int) -> tuple[SimplicialComplex, list] | None:
    if genus == 0:
        x = sphere_triangulation()
        vertices = [0, 5, 1, 2]
    elif genus == 1:
        x = torus_triangulation()
        vertices = [0, 1, 2, 3]
    elif genus == 2:
        x = genus2_triangulation()
        vertices = [0, 1, 9, 10]
    else:
        return None
    if punctures > len(vertices):
        return None
    return x, [[v] for v in vertices[:punctures]]


@dataclass
class CoverCase:
    arrangement: Arrangement
    gysin: GysinData | None
    cover: CoverSpec
    description: str


def random_cover_case(rng: random.Random) -> CoverCase:
    """A cover satisfying the Euler balance by construction."""
    kind = rng.random()
    if kind < 0.4:
        case = random_arrangement(rng)
        group = rng.choice(small_groups())
        return CoverCase(case.arrangement, case.gysin, split_cover(case.arrangement, group),
                         f"split |G|={group.order} over {case.description}")
    if kind < 0.7:
        order = rng.randint(2, 6)
        arr, cover = p1_cyclic_cover(order, free_punctures=rng.randint(0, 2))
        return CoverCase(arr, None, cover, f"P1 cyclic z^{order}")
    order = rng.randint(2, 6)
    arr, cover = torus_free_puncture_cover(order, rng.randint(1, 3))
    return CoverCase(arr, None, cover, f"torus free cover |G|={order}")


@dataclass
class SimplicialCoverCase:
    complex: SimplicialComplex
    group: FiniteGroup
    edge_labels: dict
    description: str


def random_simplicial_cover(rng: random.Random) -> SimplicialCoverCase:
    """Random monodromy data for the two-path cover cohomology comparison.

    Graphs carry arbitrary labels (no cocycle constraints); 2-complexes get
    gauge (coboundary) labels, which always satisfy the cocycle condition.
    """
    group = rng.choice(small_groups())
    if rng.random() < 0.7:
        n = rng.randint(3, 6)
        edges = [(i, (i + 1) % n) for i in range(n)]
        extra = rng.randint(0, 2)
        for _ in range(extra):
            u = rng.randrange(n)
            v = rng.randrange(n)
            if u != v and tuple(sorted((u, v))) not in [tuple(sorted(e)) for e in edges]:
                edges.append((min(u, v), max(u, v)))
        x = SimplicialComplex(edges)
        labels = {}
        for (u, v) in x.simplices(1):
            if rng.random() < 0.7:
                labels[(u, v)] = rng.randrange(group.order)
        return SimplicialCoverCase(x, group, labels, f"graph n={n} |G|={group.order}")
    x = rng.choice([sphere_triangulation(), torus_triangulation()])
    potential = {v: rng.randrange(group.order) for (v,) in x.simplices(0)}
    labels = {}
    for (u, v) in x.simplices(1):
        labels[(u, v)] = group.mul(group.inv(potential[u]), potential[v])
    return SimplicialCoverCase(x, group, labels, f"gauge cover |G|={group.order}")
