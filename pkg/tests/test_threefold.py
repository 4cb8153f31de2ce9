from fractions import Fraction

from l2mhs.arrangement import Arrangement, GysinData, StratumComponent, assemble_weight_e1
from l2mhs.ratlinalg import RatMatrix
from l2mhs.weights import euler_l2, mixed_hodge_numbers, weight_graded_dims


def two_planes_in_p3():
    """Two hyperplanes meeting in a line; the complement is C* x C^2."""
    hodge_point = lambda d: {2 * k: {(k, k): 1} for k in range(d + 1)}
    components = [
        StratumComponent("X", frozenset(), True, (1, 0, 1, 0, 1, 0, 1), hodge_point(3)),
        StratumComponent("P1", frozenset({"D1"}), True, (1, 0, 1, 0, 1), hodge_point(2)),
        StratumComponent("P2", frozenset({"D2"}), True, (1, 0, 1, 0, 1), hodge_point(2)),
        StratumComponent("L", frozenset({"D1", "D2"}), True, (1, 0, 1), hodge_point(1)),
    ]
    incidence = {
        ("X", "D1"): ["P1"],
        ("X", "D2"): ["P2"],
        ("P1", "D2"): ["L"],
        ("P2", "D1"): ["L"],
    }
    arr = Arrangement(3, ["D1", "D2"], components, incidence)
    gysin = GysinData({
        (1, 2): RatMatrix.from_rows([[1, 1]]),        # H^0(planes) -> H^2(X)
        (1, 4): RatMatrix.from_rows([[1, 1]]),        # H^2(planes) -> H^4(X)
        (2, 4): RatMatrix.from_rows([[1], [1]]),      # H^0(line) -> H^2(planes)
    })
    return arr, gysin


def test_two_planes_complement_is_a_circle():
    arr, gysin = two_planes_in_p3()
    report = weight_graded_dims(assemble_weight_e1(arr, gysin))
    dims = report.dims_by_degree()
    assert dims.get(0) == {0: 1}
    assert dims.get(1) == {2: 1}
    for n in (2, 3, 4, 5, 6):
        assert not dims.get(n), (n, dims.get(n))
    assert report.degeneration_page == 2
    assert euler_l2(arr) == 0


def test_two_planes_hodge_numbers():
    arr, gysin = two_planes_in_p3()
    table = mixed_hodge_numbers(arr, gysin)
    assert table.degree_table(0) == {(0, 0, 0): 1}
    assert table.degree_table(1) == {(2, 1, 1): 1}
    for n in (2, 3, 4, 5, 6):
        assert table.total(n) == 0


def test_two_planes_engine_verification_runs():
    # middle columns exist, so the generic engine pass is forced explicitly
    arr, gysin = two_planes_in_p3()
    e1 = assemble_weight_e1(arr, gysin)
    report = weight_graded_dims(e1, verify=True)
    assert report.abutment_totals == {0: Fraction(1), 1: Fraction(1)}
