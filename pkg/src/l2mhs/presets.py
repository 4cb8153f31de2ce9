"""Ready-made arrangements, covers and triangulations used throughout."""

from __future__ import annotations

from .arrangement import Arrangement, GysinData, StratumComponent
from .covers import CoverSpec
from .groups import FiniteGroup
from .ratlinalg import RatMatrix
from .simplicial import SimplicialComplex


def curve_arrangement(genus: int, punctures: int) -> Arrangement:
    """Compact curve of the given genus with point divisors to remove."""
    divisors = [f"P{i}" for i in range(1, punctures + 1)]
    hodge_x = {
        0: {(0, 0): 1},
        1: {(1, 0): genus, (0, 1): genus},
        2: {(1, 1): 1},
    }
    components = [
        StratumComponent("X", frozenset(), True, (1, 2 * genus, 1), hodge_x)
    ]
    incidence = {}
    for d in divisors:
        cid = f"pt_{d}"
        components.append(StratumComponent(cid, frozenset({d}), True, (1,), {0: {(0, 0): 1}}))
        incidence[("X", d)] = [cid]
    return Arrangement(1, divisors, components, incidence)


def annulus_arrangement() -> Arrangement:
    """P^1 minus two points."""
    return curve_arrangement(0, 2)


def surface_curve_configuration(
    name_to_genus: dict[str, int],
    crossings: list[tuple[str, str]],
    ambient_betti: tuple[int, int, int, int, int] = (1, 0, 1, 0, 1),
    divisor_classes: RatMatrix | None = None,
    curve_h1_classes: RatMatrix | None = None,
    self_intersections: dict[str, int] | None = None,
    ambient_hodge: dict | None = None,
) -> tuple[Arrangement, GysinData]:
    """Compact surface with smooth compact curves crossing transversally.

    crossings lists unordered curve pairs; each listed pair meets in one
    point (repeat a pair for several points).  divisor_classes is the Gysin
    matrix H^0(D(1)) -> H^2(X); curve_h1_classes is H^1(D(1)) -> H^3(X) and
    is required when some curve has positive genus and b^3(X) > 0.
    """
    curves = sorted(name_to_genus)
    divisors = list(curves)
    if ambient_hodge is None and ambient_betti == (1, 0, 1, 0, 1):
        ambient_hodge = {
            0: {(0, 0): 1},
            1: {},
            2: {(1, 1): 1},
            3: {},
            4: {(2, 2): 1},
        }
    components = [StratumComponent("X", frozenset(), True, ambient_betti, ambient_hodge)]
    incidence: dict[tuple[str, str], list[str]] = {}
    for c in curves:
        g = name_to_genus[c]
        hodge = {0: {(0, 0): 1}, 1: {(1, 0): g, (0, 1): g}, 2: {(1, 1): 1}}
        components.append(StratumComponent(c, frozenset({c}), True, (1, 2 * g, 1), hodge))
        incidence[("X", c)] = [c]
    counters: dict[tuple[str, str], int] = {}
    for a, b in crossings:
        a, b = sorted((a, b))
        counters[(a, b)] = counters.get((a, b), 0) + 1
        pid = f"pt_{a}_{b}_{counters[(a, b)]}"
        components.append(
            StratumComponent(pid, frozenset({a, b}), True, (1,), {0: {(0, 0): 1}})
        )
        # the point lies on curve a along divisor b and vice versa
        incidence.setdefault((a, b), []).append(pid)
        incidence.setdefault((b, a), []).append(pid)
    gysin = GysinData.empty()
    k = len(curves)
    b2 = ambient_betti[2]
    if divisor_classes is None:
        divisor_classes = RatMatrix.from_rows([[1] * k] + [[0] * k] * (b2 - 1)) if b2 else RatMatrix.zeros(0, k)
    if divisor_classes.shape != (b2, k):
        raise ValueError(f"divisor class matrix must be {b2}x{k}")
    gysin.blocks[(1, 2)] = divisor_classes
    h1_total = sum(2 * name_to_genus[c] for c in curves)
    b3 = ambient_betti[3]
    if h1_total and b3:
        if curve_h1_classes is None:
            raise ValueError("curve H^1 -> H^3(X) Gysin matrix required")
        gysin.blocks[(1, 3)] = curve_h1_classes
    elif h1_total:
        gysin.blocks[(1, 3)] = RatMatrix.zeros(0, h1_total)
    arr = Arrangement(2, divisors, components, incidence,
                      intersection_numbers=self_intersections)
    return arr, gysin


def triangle_configuration() -> tuple[Arrangement, GysinData]:
    """Three rational (-2)-curves pairwise meeting once on a rational surface."""
    return surface_curve_configuration(
        {"C1": 0, "C2": 0, "C3": 0},
        [("C1", "C2"), ("C1", "C3"), ("C2", "C3")],
        self_intersections={"C1": -2, "C2": -2, "C3": -2},
    )


def split_cover(arr: Arrangement, group: FiniteGroup) -> CoverSpec:
    """|G| disjoint copies of the base: every stabilizer is trivial."""
    return CoverSpec(group, {cid: (0,) for cid in arr.components})


def p1_cyclic_cover(order: int, free_punctures: int = 0) -> tuple[Arrangement, CoverSpec]:
    """z -> z^order on P^1: two fully-stabilized points plus free ones.

    The lifted complement is connected; the two branch points have full
    cyclic inertia, extra punctures lift to free orbits.  The Euler balance
    chi(X)(1 - 1/|G|) = sum (1 - 1/|G_i|) holds exactly.
    """
    arr = curve_arrangement(0, 2 + free_punctures)
    group = FiniteGroup.cyclic(order)
    full = tuple(range(order))
    stabilizers = {"X": full, "pt_P1": full, "pt_P2": full}
    for i in range(3, 3 + free_punctures):
        stabilizers[f"pt_P{i}"] = (0,)
    return arr, CoverSpec(group, stabilizers)


def torus_free_puncture_cover(order: int, punctures: int) -> tuple[Arrangement, CoverSpec]:
    """Connected cyclic cover of a torus, unramified at every puncture."""
    arr = curve_arrangement(1, punctures)
    group = FiniteGroup.cyclic(order)
    stabilizers = {"X": tuple(range(order))}
    for i in range(1, punctures + 1):
        stabilizers[f"pt_P{i}"] = (0,)
    return arr, CoverSpec(group, stabilizers)


def sphere_triangulation() -> SimplicialComplex:
    """Octahedral 2-sphere; vertices 0 and 5 are antipodal poles."""
    equator = [1, 2, 3, 4]
    triangles = []
    for k in range(4):
        a, b = equator[k], equator[(k + 1) % 4]
        triangles.append((0, a, b))
        triangles.append((5, a, b))
    return SimplicialComplex(triangles)


def torus_triangulation() -> SimplicialComplex:
    """The 7-vertex (Moebius-Kantor) torus."""
    triangles = []
    for i in range(7):
        triangles.append(tuple(sorted(((i) % 7, (i + 1) % 7, (i + 3) % 7))))
        triangles.append(tuple(sorted(((i) % 7, (i + 2) % 7, (i + 3) % 7))))
    return SimplicialComplex(triangles)


def genus2_triangulation() -> SimplicialComplex:
    """Closed orientable genus-2 surface: connected sum of two 7-vertex tori.

    One triangle is removed from each torus and the boundaries are glued
    (7 -> 0, 8 -> 1, 10 -> 3); the result has chi = -2 and is simplicial.
    """
    t1 = [s for s in torus_triangulation().simplices(2) if s != (0, 1, 3)]
    relabel = {0: 0, 1: 1, 3: 3}
    nxt = 7
    for v in range(7):
        key = v
        if v not in (0, 1, 3):
            relabel[key] = nxt
            nxt += 1
    t2 = []
    for s in torus_triangulation().simplices(2):
        if s == (0, 1, 3):
            continue
        t2.append(tuple(sorted(relabel[v] for v in s)))
    return SimplicialComplex(t1 + t2)
