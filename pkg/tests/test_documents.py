import pytest
from fractions import Fraction

from l2mhs.arrangement import assemble_weight_e1
from l2mhs.covers import CoverSpec
from l2mhs.documents import (
    ArrangementDoc,
    ComplexDoc,
    DocumentError,
    DoubleComplexDoc,
    arrangement_to_document,
    double_complex_to_document,
    filtered_complex_to_document,
    load_arrangement,
    load_double_complex,
    load_filtered_complex,
    parse_exact,
    parse_matrix,
)
from l2mhs.generators import random_double_complex, random_filtered_complex
from l2mhs.groups import FiniteGroup
from l2mhs.presets import curve_arrangement, p1_cyclic_cover, triangle_configuration
from l2mhs.spectral import degeneration_page, spectral_sequence
from l2mhs.weights import weight_graded_dims

import random


def test_parse_exact_values():
    assert parse_exact(3) == 3
    assert parse_exact("-7/2") == Fraction(-7, 2)
    with pytest.raises(DocumentError):
        parse_exact("1.5x")
    with pytest.raises(DocumentError):
        parse_exact(True)


def test_parse_matrix_shape_errors():
    with pytest.raises(DocumentError, match="ragged"):
        parse_matrix([[1, 2], [3]])
    with pytest.raises(DocumentError, match="expected"):
        parse_matrix([[1, 2]], nrows=2)


def test_arrangement_document_roundtrip():
    arr, gysin = triangle_configuration()
    doc = ArrangementDoc.model_validate(arrangement_to_document(arr, gysin))
    arr2, gysin2, cover2 = load_arrangement(doc)
    assert cover2 is None
    r1 = weight_graded_dims(assemble_weight_e1(arr, gysin)).dims_by_degree()
    r2 = weight_graded_dims(assemble_weight_e1(arr2, gysin2)).dims_by_degree()
    assert r1 == r2


def test_arrangement_document_with_cover_roundtrip():
    arr, cover = p1_cyclic_cover(3, free_punctures=1)
    doc = ArrangementDoc.model_validate(arrangement_to_document(arr, None, cover))
    arr2, _, cover2 = load_arrangement(doc)
    assert isinstance(cover2, CoverSpec)
    assert cover2.group.order == 3
    assert cover2.stabilizer_order("pt_P1") == 3
    assert cover2.stabilizer_order("pt_P3") == 1


def test_filtered_complex_document_roundtrip():
    rng = random.Random(42)
    for _ in range(5):
        fc, expected = random_filtered_complex(rng, max_total_dim=8)
        doc = ComplexDoc.model_validate(filtered_complex_to_document(fc))
        fc2 = load_filtered_complex(doc)
        pages1 = spectral_sequence(fc)
        pages2 = spectral_sequence(fc2)
        assert degeneration_page(pages1) == degeneration_page(pages2) == expected.degeneration_page
        assert pages1[-1].dims() == pages2[-1].dims()


def test_double_complex_document_roundtrip():
    rng = random.Random(43)
    from l2mhs.complexes import froelicher

    for _ in range(5):
        dc, _ = random_double_complex(rng)
        doc = DoubleComplexDoc.model_validate(double_complex_to_document(dc))
        dc2 = load_double_complex(doc)
        assert froelicher(dc).degenerates == froelicher(dc2).degenerates


def test_fraction_strings_accepted_in_gysin():
    arr = curve_arrangement(0, 2)
    doc = arrangement_to_document(arr)
    doc["gysin"] = [{"p": 1, "q": 2, "matrix": [["1/1", 1]]}]
    with pytest.raises(Exception, match="top row"):
        loaded = ArrangementDoc.model_validate(doc)
        a, g, _ = load_arrangement(loaded)
        assemble_weight_e1(a, g)


def test_group_document_variants():
    from l2mhs.documents import GroupDoc

    table = GroupDoc(table=[[0, 1], [1, 0]]).build()
    perms = GroupDoc(permutation_generators=[[1, 0]]).build()
    assert table.order == perms.order == 2
    with pytest.raises(DocumentError):
        GroupDoc().build()


def test_equivariant_filtered_complex_roundtrip():
    from l2mhs.complexes import CochainComplex
    from l2mhs.groups import GMap, GModule
    from l2mhs.ratlinalg import RatMatrix
    from l2mhs.spectral import FilteredComplex, spectral_sequence

    g = FiniteGroup.cyclic(2)
    reg = GModule.regular(g)
    cx = CochainComplex({0: reg, 1: reg}, {0: GMap(reg, reg, RatMatrix.identity(2))})
    fc = FilteredComplex.trivial(cx)
    doc = ComplexDoc.model_validate(filtered_complex_to_document(fc))
    assert doc.actions, "non-trivial actions must be serialized"
    fc2 = load_filtered_complex(doc)
    assert fc2.complex.group.order == 2
    swap = RatMatrix.from_rows([[0, 1], [1, 0]])
    assert fc2.complex.module(0).action(1) == swap
    pages = spectral_sequence(fc2, r_max=2)
    assert pages[-1].total_dims() == {}


def test_actions_must_cover_all_elements():
    doc = {
        "group": {"table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]},
        "dimensions": [{"degree": 0, "dimension": 1}],
        "actions": [{"degree": 0, "element": 1, "matrix": [[1]]}],
    }
    with pytest.raises(DocumentError, match="every non-identity element"):
        load_filtered_complex(ComplexDoc.model_validate(doc))


def test_monodromy_requires_group():
    arr = curve_arrangement(0, 2)
    doc = arrangement_to_document(arr)
    doc["monodromy"] = {"orbits": [{"component": "X", "stabilizer": [0]}]}
    with pytest.raises(DocumentError, match="group"):
        load_arrangement(ArrangementDoc.model_validate(doc))
