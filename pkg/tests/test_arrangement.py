import pytest
from fractions import Fraction

from l2mhs.arrangement import (
    Arrangement,
    ArrangementError,
    GysinData,
    GysinError,
    StratumComponent,
    assemble_weight_e1,
)
from l2mhs.presets import (
    annulus_arrangement,
    curve_arrangement,
    surface_curve_configuration,
    triangle_configuration,
)
from l2mhs.ratlinalg import RatMatrix
from l2mhs.weights import (
    MHSTable,
    MixedHodgeError,
    build_dual_complex,
    check_mhs_table,
    euler_l2,
    gr0_restriction_image,
    mixed_hodge_numbers,
    weight_graded_dims,
)


def empty_divisor_arrangement():
    comp = StratumComponent("X", frozenset(), True, (1, 4, 6, 4, 1))
    return Arrangement(2, [], [comp], {})


def test_validation_betti_length():
    with pytest.raises(ArrangementError, match="length"):
        StratumComponent("X", frozenset(), True, (1, 0))
        Arrangement(1, [], [StratumComponent("X", frozenset(), True, (1, 0))], {})


def test_validation_poincare_symmetry():
    with pytest.raises(ArrangementError, match="symmetric"):
        Arrangement(1, [], [StratumComponent("X", frozenset(), True, (1, 3, 2))], {})


def test_validation_noncompact_top():
    with pytest.raises(ArrangementError, match="b\\^top"):
        Arrangement(
            2,
            ["D"],
            [
                StratumComponent("X", frozenset(), True, (1, 0, 0, 0, 1)),
                StratumComponent("C", frozenset({"D"}), False, (1, 0, 1)),
            ],
            {("X", "D"): ["C"]},
        )


def test_validation_incidence_unique_parent():
    with pytest.raises(ArrangementError, match="exactly one"):
        Arrangement(
            1,
            ["D"],
            [
                StratumComponent("X", frozenset(), True, (1, 0, 1)),
                StratumComponent("p", frozenset({"D"}), True, (1,)),
            ],
            {},
        )


def test_empty_divisor_weight_page_is_pure():
    arr = empty_divisor_arrangement()
    e1 = assemble_weight_e1(arr)
    report = weight_graded_dims(e1)
    assert report.degeneration_page == 1
    for piece in report.pieces:
        assert piece.weight == piece.degree
        assert piece.dim == arr.component("X").betti[piece.degree]
    assert gr0_restriction_image(e1) == {k: Fraction(b) for k, b in enumerate((1, 4, 6, 4, 1))}
    assert euler_l2(arr) == 0


def test_curve_weight_dims_genus2_three_punctures():
    arr = curve_arrangement(2, 3)
    e1 = assemble_weight_e1(arr)
    report = weight_graded_dims(e1)
    assert report.degeneration_page == 2
    assert report.piece_dim(0, 0) == 1
    assert report.piece_dim(1, 1) == 4
    assert report.piece_dim(1, 2) == 2
    assert report.piece_dim(2, 2) == 0
    assert report.abutment_totals == {0: Fraction(1), 1: Fraction(6)}
    assert euler_l2(arr) == -5


def test_annulus_weight_dims():
    arr = annulus_arrangement()
    e1 = assemble_weight_e1(arr)
    report = weight_graded_dims(e1)
    assert report.piece_dim(1, 2) == 1
    assert report.piece_dim(1, 1) == 0
    assert report.abutment_totals.get(1) == 1
    assert euler_l2(arr) == 0


def test_gr0_of_curves():
    # with at least one puncture the degree map is onto: Gr^0 H^2 = 0
    arr = curve_arrangement(1, 2)
    e1 = assemble_weight_e1(arr)
    gr0 = gr0_restriction_image(e1)
    assert gr0[2] == 0
    # nothing maps into degree 1: full H^1(X) survives
    assert gr0[1] == 2


def test_curve_gysin_user_matrix_rejected_on_top_row():
    arr = curve_arrangement(0, 2)
    gysin = GysinData({(1, 2): RatMatrix.from_rows([[1, 1]])})
    with pytest.raises(GysinError, match="top row"):
        assemble_weight_e1(arr, gysin)


def test_surface_missing_gysin_row_reported():
    arr, gysin = surface_curve_configuration({"C1": 0}, [])
    del gysin.blocks[(1, 2)]
    with pytest.raises(GysinError, match="\\(1,2\\)"):
        assemble_weight_e1(arr, gysin)


def test_single_smooth_compact_divisor_on_surface():
    # one genus-2 curve: the page occupies columns -1 and 0 only, d_1 is the
    # user data, and there is no composite to constrain
    arr, gysin = surface_curve_configuration(
        {"C": 2}, [], self_intersections={"C": -1})
    e1 = assemble_weight_e1(arr, gysin)
    assert all(e1.cell_dim(p, q) == 0 for (p, q) in e1.cells if p >= 2)
    report = weight_graded_dims(e1)
    # class map H^0(C) -> H^2(X) is [1]: weight-2 pieces of H^1 and H^2 die
    assert report.piece_dim(1, 2) == 0
    assert report.piece_dim(2, 2) == 0
    # H^1(C) survives into weight 3 of H^2 (b^3(X) = 0 here)
    assert report.piece_dim(2, 3) == 4
    assert euler_l2(arr) == 3 - (2 - 2 * 2)  # chi(X) - chi(C)


def test_triangle_configuration_weights_and_dual_graph():
    arr, gysin = triangle_configuration()
    e1 = assemble_weight_e1(arr, gysin)
    report = weight_graded_dims(e1)
    assert report.degeneration_page == 2
    # top weight of H^2 equals the cycle space of the triangle graph
    assert report.piece_dim(2, 4) == 1
    dual = build_dual_complex(arr)
    dual_h = dual.cohomology_dims()
    assert dual_h[0] == 1  # connected graph
    assert dual_h[-1] == 1  # one independent cycle
    assert report.piece_dim(2, 4) == dual_h[-1]


def test_two_curves_one_point_dual_complex_is_tree():
    arr, gysin = surface_curve_configuration({"C1": 0, "C2": 0}, [("C1", "C2")])
    dual = build_dual_complex(arr)
    dims = dual.cohomology_dims()
    assert dims[0] == 1 and dims.get(-1, 0) == 0


def test_dual_complex_drops_noncompact_and_empty_case():
    # nothing compact in D(1): empty complex
    comps = [
        StratumComponent("X", frozenset(), True, (1, 0, 1, 0, 1)),
        StratumComponent("C", frozenset({"D"}), False, (1, 2, 0)),
    ]
    arr = Arrangement(2, ["D"], comps, {("X", "D"): ["C"]})
    dual = build_dual_complex(arr)
    assert dual.total_dimension() == 0


def test_noncompact_divisor_component_in_weight_rows():
    # non-compact strata still feed the weight rows (with b^top = 0), they
    # just never become dual cells
    comps = [
        StratumComponent("X", frozenset(), True, (1, 0, 1, 0, 1)),
        StratumComponent("C", frozenset({"D"}), False, (1, 2, 0)),
    ]
    arr = Arrangement(2, ["D"], comps, {("X", "D"): ["C"]})
    gysin = GysinData({(1, 2): RatMatrix.from_rows([[1]])})
    e1 = assemble_weight_e1(arr, gysin)
    assert e1.cell_dim(1, 2) == 1
    assert e1.cell_dim(1, 3) == 2
    assert e1.cell_dim(1, 4) == 0  # enforced b^top = 0
    report = weight_graded_dims(e1)
    assert report.piece_dim(2, 3) == 2
    assert report.piece_dim(2, 4) == 0
    from l2mhs.dualgraph import dual_graph, graph_l2_homology

    assert graph_l2_homology(dual_graph(arr))[1] == 0


def test_mhs_annulus():
    arr = annulus_arrangement()
    table = mixed_hodge_numbers(arr)
    assert table.degree_table(1) == {(2, 1, 1): 1}
    assert table.degree_table(0) == {(0, 0, 0): 1}
    assert check_mhs_table(table, {0: 1, 1: 1})


def test_mhs_genus_g_curve():
    g, n = 2, 3
    arr = curve_arrangement(g, n)
    table = mixed_hodge_numbers(arr)
    assert table.degree_table(1) == {(1, 1, 0): g, (1, 0, 1): g, (2, 1, 1): n - 1}
    assert check_mhs_table(table, {0: 1, 1: 2 * g + n - 1})


def test_mhs_compact_input_reproduces_hodge_tables():
    arr = curve_arrangement(2, 0)
    table = mixed_hodge_numbers(arr)
    assert table.degree_table(1) == {(1, 1, 0): 2, (1, 0, 1): 2}
    assert table.degree_table(2) == {(2, 1, 1): 1}


def test_mhs_requires_hodge_tables():
    comp = StratumComponent("X", frozenset(), True, (1, 0, 1))
    arr = Arrangement(1, [], [comp], {})
    with pytest.raises(MixedHodgeError, match="without Hodge tables"):
        mixed_hodge_numbers(arr)


def test_mhs_block_mixing_detected():
    # genus-1 curves on a surface with b^3 = 2: send (1,0) classes across blocks
    arr, gysin = surface_curve_configuration(
        {"C1": 1}, [], ambient_betti=(1, 2, 2, 2, 1),
        ambient_hodge={
            0: {(0, 0): 1},
            1: {(1, 0): 1, (0, 1): 1},
            2: {(1, 1): 2},
            3: {(2, 1): 1, (1, 2): 1},
            4: {(2, 2): 1},
        },
        divisor_classes=RatMatrix.from_rows([[1], [0]]),
        curve_h1_classes=RatMatrix.from_rows([[1, 1], [1, 1]]),
    )
    with pytest.raises(MixedHodgeError, match="mixes Hodge blocks"):
        mixed_hodge_numbers(arr, gysin)


def test_check_mhs_table_rejects_asymmetry_and_off_diagonal():
    t = MHSTable()
    t.add(1, 1, 1, 0, 1)
    assert not check_mhs_table(t, {1: 1})  # h^{1,0} != h^{0,1}
    t2 = MHSTable()
    t2.add(1, 2, 1, 0, 1)
    t2.add(1, 2, 0, 1, 1)
    assert not check_mhs_table(t2, {1: 2})  # entries off the p+q = m diagonal
    t3 = MHSTable()
    t3.add(1, 1, 1, 0, 2)
    t3.add(1, 1, 0, 1, 2)
    assert check_mhs_table(t3, {1: 4})


def test_divisor_relabeling_invariance():
    # transposing two divisor indices must not change any reported dimension
    arr1, g1 = triangle_configuration()
    dims1 = weight_graded_dims(assemble_weight_e1(arr1, g1)).dims_by_degree()

    def renamed():
        arr, gysin = surface_curve_configuration(
            {"C1": 0, "C2": 0, "C3": 0},
            [("C1", "C2"), ("C1", "C3"), ("C2", "C3")],
        )
        order = list(arr.divisors)
        order[0], order[1] = order[1], order[0]
        return Arrangement(2, order, list(arr.components.values()),
                           {k: list(v) for k, v in arr.incidence.items()}), gysin

    arr2, g2 = renamed()
    dims2 = weight_graded_dims(assemble_weight_e1(arr2, g2)).dims_by_degree()
    assert dims1 == dims2
    d1 = build_dual_complex(arr1).cohomology_dims()
    d2 = build_dual_complex(arr2).cohomology_dims()
    assert d1 == d2


def test_curve_e1_page_matches_strata_diagram():
    # the engine's E_1 of the weight-filtered total complex must consist of
    # the strata cohomologies: column -1 holds H^0 of the punctures in row 2,
    # column 0 holds the Betti numbers of X
    from l2mhs.spectral import spectral_sequence

    arr = curve_arrangement(2, 3)
    e1 = assemble_weight_e1(arr)
    pages = spectral_sequence(e1.to_filtered_complex())
    first = pages[0]
    assert first.entry_dim(-1, 2) == 3
    assert first.entry_dim(0, 0) == 1
    assert first.entry_dim(0, 1) == 4
    assert first.entry_dim(0, 2) == 1
    assert sum(first.dims().values()) == 9


def test_euler_inclusion_exclusion_matches_weight_report():
    for arr, gysin in (triangle_configuration(), (curve_arrangement(2, 3), None)):
        e1 = assemble_weight_e1(arr, gysin)
        report = weight_graded_dims(e1)
        chi = sum((-1) ** n * total for n, total in report.abutment_totals.items())
        assert chi == euler_l2(arr)
