"""Acceptance criteria: exact benchmarks and seeded property suites.

Every equality is exact (rational arithmetic, zero tolerance).  Each test
prints one pass/fail line with its runtime against the stated budget.
"""

import random
import time
from fractions import Fraction

from l2mhs.arrangement import assemble_weight_e1
from l2mhs.complexes import DoubleComplex, froelicher
from l2mhs.covers import equivariant_cohomology
from l2mhs.dualgraph import dual_graph, dynkin_matrix, graph_l2_homology, is_negative_definite
from l2mhs.generators import (
    random_arrangement,
    random_cover_case,
    random_double_complex,
    random_filtered_complex,
    random_simplicial_cover,
    small_groups,
)
from l2mhs.groups import FiniteGroup
from l2mhs.presets import (
    annulus_arrangement,
    curve_arrangement,
    genus2_triangulation,
    sphere_triangulation,
    split_cover,
    surface_curve_configuration,
    triangle_configuration,
)
from l2mhs.ratlinalg import RatMatrix
from l2mhs.simplicial import complement_cohomology, cover_complex
from l2mhs.spectral import (
    abutment_check,
    associated_graded_of_cohomology,
    degeneration_page,
    spectral_sequence,
)
from l2mhs.weights import (
    build_dual_complex,
    euler_l2,
    euler_values,
    mixed_hodge_numbers,
    weight_graded_dims,
)


def _verdict(num: int, description: str, start: float, budget: float):
    elapsed = time.perf_counter() - start
    print(f"criterion {num}: PASS ({elapsed:.2f}s <= {budget:g}s) {description}")
    assert elapsed <= budget, f"criterion {num} exceeded its {budget}s budget ({elapsed:.2f}s)"


def test_criterion_1_curve_benchmark():
    start = time.perf_counter()
    arr = curve_arrangement(2, 3)
    report = weight_graded_dims(assemble_weight_e1(arr))
    assert report.piece_dim(0, 0) == 1
    assert report.piece_dim(1, 1) == 4
    assert report.piece_dim(1, 2) == 2
    assert euler_l2(arr) == -5
    oracle = complement_cohomology(genus2_triangulation(), [[0], [1], [9]])
    assert oracle[1] == 6
    totals = {n: int(t) for n, t in report.abutment_totals.items() if t}
    assert {n: v for n, v in oracle.items() if v} == totals
    _verdict(1, "genus 2 with 3 punctures: weights, Euler, oracle abutment", start, 1.0)


def test_criterion_2_annulus_benchmark():
    start = time.perf_counter()
    arr = annulus_arrangement()
    table = mixed_hodge_numbers(arr)
    assert table.degree_table(1) == {(2, 1, 1): 1}
    oracle = complement_cohomology(sphere_triangulation(), [[0], [5]])
    assert oracle[1] == 1
    _verdict(2, "P^1 minus 2 points: h^{1,1} in weight 2 only; oracle b^1 = 1", start, 1.0)


def test_criterion_3_weight_degeneration_corpus():
    start = time.perf_counter()
    rng = random.Random(20260809)
    paired = 0
    for _ in range(50):
        case = random_arrangement(rng)
        e1 = assemble_weight_e1(case.arrangement, case.gysin)
        report = weight_graded_dims(e1)  # re-verified through the generic engine
        assert report.degeneration_page == 2, case.description
        pages = spectral_sequence(e1.to_filtered_complex())
        assert degeneration_page(pages) == 2, case.description
        if case.simplicial_model is not None:
            x, divisor = case.simplicial_model
            oracle = {n: v for n, v in complement_cohomology(x, divisor).items() if v}
            totals = {n: int(t) for n, t in report.abutment_totals.items() if t}
            assert oracle == totals, case.description
            assert abutment_check(pages, oracle), case.description
            paired += 1
    assert paired >= 10
    _verdict(3, f"50 seeded arrangements degenerate at page 2 ({paired} oracle-paired)",
             start, 30.0)


def test_criterion_4_l2_euler_invariance():
    start = time.perf_counter()
    rng = random.Random(11235)
    for _ in range(100):
        case = random_cover_case(rng)
        assert case.cover.group.order <= 6
        base = euler_l2(case.arrangement)
        with_cover = euler_l2(case.arrangement, case.cover)  # raises on mismatch
        assert with_cover == base, case.description
        values = euler_values(case.arrangement, case.cover)
        assert values.l2 == values.base, case.description
    _verdict(4, "100 seeded covers with |G| <= 6: chi_l2 = chi", start, 30.0)


def _surface_corpus():
    yield triangle_configuration() + (None,)
    arr, gysin = surface_curve_configuration(
        {"C1": 0, "C2": 0}, [("C1", "C2"), ("C1", "C2")],
        self_intersections={"C1": -2, "C2": -2})
    yield arr, gysin, None
    arr2, gysin2 = triangle_configuration()
    yield arr2, gysin2, split_cover(arr2, FiniteGroup.cyclic(2))
    yield arr2, gysin2, split_cover(arr2, small_groups()[-1])  # S3
    # a surface with b^3 > 0 and a surviving top-weight cycle: here cells
    # allowing a formal d_2 exist, so the engine verification path runs
    arr3, gysin3 = surface_curve_configuration(
        {"E1": 1, "E2": 1}, [("E1", "E2"), ("E1", "E2")],
        ambient_betti=(1, 2, 2, 2, 1),
        ambient_hodge={
            0: {(0, 0): 1},
            1: {(1, 0): 1, (0, 1): 1},
            2: {(1, 1): 2},
            3: {(2, 1): 1, (1, 2): 1},
            4: {(2, 2): 1},
        },
        divisor_classes=RatMatrix.from_rows([[1, 0], [0, 1]]),
        curve_h1_classes=RatMatrix.from_rows([[1, 0, 1, 0], [0, 0, 0, 0]]),
        self_intersections={"E1": -1, "E2": -1},
    )
    yield arr3, gysin3, None
    rng = random.Random(607)
    produced = 0
    while produced < 12:
        case = random_arrangement(rng)
        if case.arrangement.n != 2:
            continue
        produced += 1
        yield case.arrangement, case.gysin, None
        yield case.arrangement, case.gysin, split_cover(
            case.arrangement, rng.choice(small_groups()))


def test_criterion_5_dual_complex_claim():
    start = time.perf_counter()
    count = 0
    for arr, gysin, cover in _surface_corpus():
        report = weight_graded_dims(assemble_weight_e1(arr, gysin, cover))
        top = report.piece_vn(2, 4)
        h0, h1 = graph_l2_homology(dual_graph(arr, cover))
        assert top == h1, f"cover={cover is not None}"
        dual = build_dual_complex(arr, cover)
        if -1 in dual.modules and dual.modules[-1].dimension:
            assert dual.cohomology()[-1].vn_dim == h1
        count += 1
    _verdict(5, f"top weight of H^2 equals dual-graph H_1 on {count} surface inputs "
                "(covers included)", start, 10.0)


def test_criterion_6_spectral_engine_property():
    start = time.perf_counter()
    rng = random.Random(424242)
    for _ in range(200):
        fc, expected = random_filtered_complex(rng, max_total_dim=12, max_filtration_len=4)
        pages = spectral_sequence(fc)
        final = pages[-1].dims()
        direct = associated_graded_of_cohomology(fc)
        assert final == direct
        assert final == {k: v for k, v in expected.graded.items() if v}
        assert degeneration_page(pages) == expected.degeneration_page
    _verdict(6, "200 seeded filtered complexes: E_oo equals direct graded cohomology",
             start, 60.0)


def test_criterion_7_two_path_cover_cohomology():
    start = time.perf_counter()
    rng = random.Random(31415)
    for _ in range(100):
        case = random_simplicial_cover(rng)
        lsc = cover_complex(case.complex, case.group, edge_labels=case.edge_labels)
        res = equivariant_cohomology(lsc)  # raises if the two paths disagree
        total = lsc.total_complex().cohomology_dims()
        assert res.dims == total, case.description
        chi_base = case.complex.euler_characteristic()
        chi_l2 = sum((-1) ** k * v for k, v in res.vn_dims.items())
        assert chi_l2 == chi_base, case.description
    _verdict(7, "100 seeded simplicial covers: both cohomology routes agree", start, 60.0)


def _brute_force_froelicher(dc: DoubleComplex) -> bool:
    """Independent comparison of first-page totals vs totalization, by raw ranks."""
    cells = dc.cells()
    e1: dict[int, int] = {}
    for (p, q) in cells:
        up = dc.vmat(p, q)
        down = dc.vmat(p, q - 1)
        h = dc.dim(p, q) - up.rank() - down.rank()
        if h:
            e1[p + q] = e1.get(p + q, 0) + h
    degrees = sorted({p + q for (p, q) in cells})
    offsets = {}
    dims = {}
    for n in degrees:
        off = 0
        for pq in sorted(c for c in cells if sum(c) == n):
            offsets[pq] = off
            off += dc.dim(*pq)
        dims[n] = off
    ranks = {}
    for n in degrees:
        entries = {}
        for (p, q) in (c for c in cells if sum(c) == n):
            for mat, tgt in ((dc.hmat(p, q), (p + 1, q)), (dc.vmat(p, q), (p, q + 1))):
                if tgt in offsets:
                    for i, j, v in mat.iter_nonzero():
                        entries[(offsets[tgt] + i, offsets[(p, q)] + j)] = v
        ranks[n] = RatMatrix(dims.get(n + 1, 0), dims[n], entries).rank()
    h_tot = {}
    for n in degrees:
        h = dims[n] - ranks.get(n, 0) - ranks.get(n - 1, 0)
        if h:
            h_tot[n] = h
    return e1 == h_tot


def test_criterion_8_froelicher_detector():
    start = time.perf_counter()
    rng = random.Random(2718)
    for _ in range(100):
        dc, _ = random_double_complex(rng)
        assert froelicher(dc).degenerates == _brute_force_froelicher(dc)
    genus2 = DoubleComplex.from_dims(
        {(0, 0): 1, (1, 0): 2, (0, 1): 2, (1, 1): 1}, {}, {})
    res = froelicher(genus2)
    assert res.degenerates and res.h_totals.get(1) == 4
    counterexample = DoubleComplex.from_dims(
        {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1},
        {(0, 0): RatMatrix.identity(1), (0, 1): RatMatrix.identity(1)},
        {},
    )
    assert not froelicher(counterexample).degenerates
    _verdict(8, "100 seeded double complexes match the brute-force detector; "
                "genus-2 model degenerates, 4-cell toy does not", start, 30.0)


def test_criterion_9_intersection_forms():
    start = time.perf_counter()
    for k in range(1, 9):
        cert = is_negative_definite(dynkin_matrix("A", k))
        assert cert.negative_definite and all(p < 0 for p in cert.pivots)
    for k in range(3, 9):
        cert = is_negative_definite(dynkin_matrix("D", k))
        assert cert.negative_definite and all(p < 0 for p in cert.pivots)
    cert = is_negative_definite(dynkin_matrix("E", 8))
    assert cert.negative_definite and all(p < 0 for p in cert.pivots)
    hyperbolic = is_negative_definite(RatMatrix.from_rows([[0, 1], [1, 0]]))
    assert not hyperbolic.negative_definite
    _verdict(9, "A_k, D_k, E_8 negative definite with all-negative pivots; "
                "hyperbolic plane rejected", start, 1.0)
