import pytest
from fractions import Fraction

from l2mhs.complexes import CochainComplex
from l2mhs.groups import FiniteGroup, GModule
from l2mhs.ratlinalg import RatMatrix, Subspace
from l2mhs.spectral import (
    FilteredComplex,
    FiltrationError,
    abutment_check,
    associated_graded_of_cohomology,
    degeneration_page,
    spectral_sequence,
    verify_page_recursion,
)


def circle_complex():
    d0 = RatMatrix.from_rows([[-1, 1, 0], [0, -1, 1], [-1, 0, 1]])
    return CochainComplex.from_matrices({0: 3, 1: 3}, {0: d0})


def test_trivial_filtration_reproduces_cohomology():
    cx = circle_complex()
    fc = FilteredComplex.trivial(cx)
    pages = spectral_sequence(fc, r_max=3)
    dims = cx.cohomology_dims()
    assert pages[0].total_dims() == {k: v for k, v in dims.items() if v}
    # all later pages identical, all differentials vanish
    for page in pages:
        assert page.differential_is_zero()
        assert page.total_dims() == pages[0].total_dims()
    assert degeneration_page(pages) == 1
    assert abutment_check(pages, dims)


def two_step_filtered_complex():
    # d(e1) = f1, e2 and f2 survive; filtration level 1 holds e2, f1, f2
    d = RatMatrix.from_rows([[1, 0], [0, 0]])
    cx = CochainComplex.from_matrices({0: 2, 1: 2}, {0: d})
    spans = {
        0: {0: [[1, 0], [0, 1]], 1: [[1, 0], [0, 1]]},
        1: {0: [[0, 1]], 1: [[1, 0], [0, 1]]},
    }
    return FilteredComplex.from_spanning_sets(cx, spans)


def test_two_step_filtration_matches_direct_graded_cohomology():
    fc = two_step_filtered_complex()
    pages = spectral_sequence(fc)
    direct = associated_graded_of_cohomology(fc)
    assert pages[-1].dims() == direct
    assert verify_page_recursion(pages)
    assert abutment_check(pages, fc.complex.cohomology_dims())


def surviving_d2_complex():
    # four-dimensional example with a differential jumping two filtration steps
    d = RatMatrix.from_rows([[1, 0], [0, 1]])  # e -> f, a -> b
    cx = CochainComplex.from_matrices({0: 2, 1: 2}, {0: d})
    f_levels = {
        0: {0: [[1, 0], [0, 1]], 1: [[1, 0], [0, 1]]},
        1: {0: [], 1: [[1, 0]]},
        2: {0: [], 1: [[1, 0]]},
    }
    return FilteredComplex.from_spanning_sets(cx, f_levels)


def test_surviving_d2_detected():
    fc = surviving_d2_complex()
    pages = spectral_sequence(fc, r_max=4)
    assert degeneration_page(pages) == 3
    d2 = pages[1].differentials.get((0, 0))
    assert d2 is not None and not d2.is_zero()
    assert pages[2].total_dims() == {}
    assert verify_page_recursion(pages)
    assert abutment_check(pages, fc.complex.cohomology_dims())


def test_abutment_check_detects_perturbation():
    fc = two_step_filtered_complex()
    pages = spectral_sequence(fc)
    totals = fc.complex.cohomology_dims()
    assert abutment_check(pages, totals)
    perturbed = dict(totals)
    perturbed[0] = perturbed.get(0, 0) + 1
    assert not abutment_check(pages, perturbed)


def test_filtration_validation_errors():
    cx = circle_complex()
    # not d-stable: level 1 of degree 0 contains a vector whose image leaves level 1
    spans = {
        0: {0: [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1: [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
        1: {0: [[1, 0, 0]], 1: []},
    }
    with pytest.raises(FiltrationError):
        FilteredComplex.from_spanning_sets(cx, spans)


def test_empty_complex_gives_empty_pages():
    cx = CochainComplex({})
    fc = FilteredComplex(cx, {0: {}}, validate=False)
    pages = spectral_sequence(fc, r_max=2)
    assert all(page.entries == {} for page in pages)


def test_equivariant_pages_have_vn_dims():
    g = FiniteGroup.cyclic(2)
    reg = GModule.regular(g)
    cx = CochainComplex({0: reg, 1: reg})
    fc = FilteredComplex.trivial(cx)
    pages = spectral_sequence(fc, r_max=2)
    assert pages[-1].entries[(0, 0)].vn_dim == Fraction(2, 2)
    for page in pages:
        for d in page.differentials.values():
            assert d.check_equivariance()


def test_euler_characteristic_constant_across_pages():
    fc = surviving_d2_complex()
    pages = spectral_sequence(fc, r_max=4)
    total = sum((-1) ** k * fc.complex.dim(k) for k in fc.complex.degrees())
    for page in pages:
        chi = sum((-1) ** n * d for n, d in page.total_dims().items())
        assert chi == total
