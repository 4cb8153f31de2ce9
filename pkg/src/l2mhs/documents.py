"""File formats: JSON documents validated by pydantic, loaded to core objects.

All numbers in matrices and filtrations are integers or exact fraction
strings "a/b"; nothing is ever parsed through floating point.
"""

from __future__ import annotations

from fractions import Fraction

from pydantic import BaseModel, Field, field_validator

from .arrangement import Arrangement, GysinData, StratumComponent
from .complexes import CochainComplex, DoubleComplex
from .covers import CoverSpec
from .groups import FiniteGroup, GMap, GModule
from .ratlinalg import RatMatrix, Subspace
from .simplicial import SimplicialComplex
from .spectral import FilteredComplex


class DocumentError(ValueError):
    pass


ExactNumber = int | str


def parse_exact(value: ExactNumber) -> Fraction:
    if isinstance(value, bool):
        raise DocumentError(f"not an exact number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentError(f"not an exact fraction string: {value!r}") from exc
    raise DocumentError(f"not an exact number: {value!r}")


def parse_matrix(rows: list[list[ExactNumber]], nrows: int | None = None,
                 ncols: int | None = None) -> RatMatrix:
    parsed = [[parse_exact(v) for v in row] for row in rows]
    if nrows is not None and len(parsed) != nrows:
        raise DocumentError(f"matrix has {len(parsed)} rows, expected {nrows}")
    if parsed and any(len(r) != len(parsed[0]) for r in parsed):
        raise DocumentError("ragged matrix rows")
    if ncols is not None:
        width = len(parsed[0]) if parsed else 0
        if parsed and width != ncols:
            raise DocumentError(f"matrix has {width} columns, expected {ncols}")
    return RatMatrix.from_rows(parsed, ncols if not parsed else None)


class HodgeEntryDoc(BaseModel):
    degree: int
    p: int
    q: int
    count: int = Field(ge=0)


class ComponentDoc(BaseModel):
    id: str
    compact: bool = True
    betti: list[int]
    hodge: list[HodgeEntryDoc] | None = None


class StratumDoc(BaseModel):
    subset: list[str]
    components: list[ComponentDoc]


class IncidenceDoc(BaseModel):
    parent: str
    divisor: str
    children: list[str]


class GysinBlockDoc(BaseModel):
    p: int
    q: int
    matrix: list[list[ExactNumber]]


class GroupDoc(BaseModel):
    table: list[list[int]] | None = None
    permutation_generators: list[list[int]] | None = None

    def build(self) -> FiniteGroup:
        if (self.table is None) == (self.permutation_generators is None):
            raise DocumentError("group needs exactly one of table or permutation_generators")
        if self.table is not None:
            return FiniteGroup(self.table)
        return FiniteGroup.from_permutation_generators(self.permutation_generators)


class OrbitDoc(BaseModel):
    component: str
    stabilizer: list[int]


class IncidenceLiftDoc(BaseModel):
    component: str
    divisor: str
    element: int


class MonodromyDoc(BaseModel):
    orbits: list[OrbitDoc]
    incidence_lifts: list[IncidenceLiftDoc] = Field(default_factory=list)


class EdgeLabelDoc(BaseModel):
    edge: list[int]
    element: int

    @field_validator("edge")
    @classmethod
    def _two_ends(cls, v):
        if len(v) != 2:
            raise ValueError("an edge has two vertices")
        return v


class SimplicialMonodromyDoc(BaseModel):
    group: GroupDoc
    edge_labels: list[EdgeLabelDoc] | None = None
    deck_action: list[list[int]] | None = None


class SimplicialDoc(BaseModel):
    maximal_simplices: list[list[int]]
    divisor: list[list[int]] = Field(default_factory=list)
    monodromy: SimplicialMonodromyDoc | None = None

    def build_complex(self) -> SimplicialComplex:
        return SimplicialComplex(self.maximal_simplices)


class ArrangementDoc(BaseModel):
    ambient_dim: int
    divisors: list[str]
    strata: list[StratumDoc]
    incidence: list[IncidenceDoc] = Field(default_factory=list)
    intersection_numbers: dict[str, int] | None = None
    gysin: list[GysinBlockDoc] | None = None
    group: GroupDoc | None = None
    monodromy: MonodromyDoc | None = None
    simplicial_model: SimplicialDoc | None = None


def load_arrangement(doc: ArrangementDoc) -> tuple[Arrangement, GysinData | None, CoverSpec | None]:
    components = []
    for stratum in doc.strata:
        subset = frozenset(stratum.subset)
        if len(subset) != len(stratum.subset):
            raise DocumentError(f"stratum subset {stratum.subset} has repeats")
        for comp in stratum.components:
            hodge = None
            if comp.hodge is not None:
                hodge = {}
                for entry in comp.hodge:
                    table = hodge.setdefault(entry.degree, {})
                    key = (entry.p, entry.q)
                    table[key] = table.get(key, 0) + entry.count
            components.append(
                StratumComponent(comp.id, subset, comp.compact, tuple(comp.betti), hodge))
    incidence = {}
    for inc in doc.incidence:
        key = (inc.parent, inc.divisor)
        if key in incidence:
            raise DocumentError(f"duplicate incidence block for {key}")
        incidence[key] = list(inc.children)
    arrangement = Arrangement(doc.ambient_dim, doc.divisors, components, incidence,
                              doc.intersection_numbers)
    gysin = None
    if doc.gysin:
        gysin = GysinData({})
        for block in doc.gysin:
            if (block.p, block.q) in gysin.blocks:
                raise DocumentError(f"duplicate Gysin block ({block.p},{block.q})")
            gysin.blocks[(block.p, block.q)] = parse_matrix(block.matrix)
    cover = None
    if doc.monodromy is not None:
        if doc.group is None:
            raise DocumentError("monodromy requires a group block")
        group = doc.group.build()
        stabilizers = {}
        for orbit in doc.monodromy.orbits:
            if orbit.component in stabilizers:
                raise DocumentError(f"duplicate orbit for component {orbit.component!r}")
            stabilizers[orbit.component] = tuple(orbit.stabilizer)
        lifts = {}
        for lift in doc.monodromy.incidence_lifts:
            lifts[(lift.component, lift.divisor)] = lift.element
        cover = CoverSpec(group, stabilizers, lifts)
    return arrangement, gysin, cover


class DegreeDimDoc(BaseModel):
    degree: int
    dimension: int = Field(ge=0)


class DegreeMatrixDoc(BaseModel):
    degree: int
    matrix: list[list[ExactNumber]]


class ActionDoc(BaseModel):
    degree: int
    element: int
    matrix: list[list[ExactNumber]]


class FiltrationLevelDoc(BaseModel):
    level: int
    degree: int
    vectors: list[list[ExactNumber]]


class ComplexDoc(BaseModel):
    """Raw filtered complex: dimensions, differentials, filtration levels.

    With a group block, `actions` may list the action matrices of the
    non-identity elements per degree (degrees without actions carry the
    trivial representation); differentials and filtration levels are then
    validated to be equivariant.
    """

    group: GroupDoc | None = None
    dimensions: list[DegreeDimDoc]
    differentials: list[DegreeMatrixDoc] = Field(default_factory=list)
    actions: list[ActionDoc] = Field(default_factory=list)
    filtration: list[FiltrationLevelDoc] = Field(default_factory=list)


def load_filtered_complex(doc: ComplexDoc) -> FilteredComplex:
    dims = {d.degree: d.dimension for d in doc.dimensions}
    if len(dims) != len(doc.dimensions):
        raise DocumentError("duplicate degree in dimensions")
    matrices = {}
    for dm in doc.differentials:
        if dm.degree not in dims or dm.degree + 1 not in dims:
            raise DocumentError(f"differential at degree {dm.degree} outside the complex")
        matrices[dm.degree] = parse_matrix(dm.matrix, dims[dm.degree + 1], dims[dm.degree])
    group = doc.group.build() if doc.group is not None else None
    if doc.actions and group is None:
        raise DocumentError("actions require a group block")
    if doc.actions:
        per_degree: dict[int, dict[int, RatMatrix]] = {}
        for act in doc.actions:
            if act.degree not in dims:
                raise DocumentError(f"action on missing degree {act.degree}")
            if not 1 <= act.element < group.order:
                raise DocumentError(f"action element {act.element} is not a non-identity index")
            per_degree.setdefault(act.degree, {})[act.element] = parse_matrix(
                act.matrix, dims[act.degree], dims[act.degree])
        modules = {}
        for k, n in dims.items():
            given = per_degree.get(k)
            if given is None:
                modules[k] = GModule.trivial(group, n)
                continue
            if sorted(given) != list(range(1, group.order)):
                raise DocumentError(
                    f"degree {k}: actions must cover every non-identity element")
            modules[k] = GModule(group, n, [RatMatrix.identity(n)]
                                 + [given[g] for g in range(1, group.order)])
        gmaps = {k: GMap(modules[k], modules[k + 1], m) for k, m in matrices.items()}
        cx = CochainComplex(modules, gmaps)
    else:
        cx = CochainComplex.from_matrices(dims, matrices, group=group)
    if not doc.filtration:
        return FilteredComplex.trivial(cx)
    spans: dict[int, dict[int, list]] = {}
    for level in doc.filtration:
        if level.degree not in dims:
            raise DocumentError(f"filtration level on missing degree {level.degree}")
        vectors = [[parse_exact(v) for v in vec] for vec in level.vectors]
        for vec in vectors:
            if len(vec) != dims[level.degree]:
                raise DocumentError(
                    f"filtration vector of length {len(vec)} in degree {level.degree} "
                    f"(dimension {dims[level.degree]})")
        spans.setdefault(level.level, {})[level.degree] = vectors
    filtration = {
        p: {k: Subspace.from_vectors(dims[k], vecs) for k, vecs in per_degree.items()}
        for p, per_degree in spans.items()
    }
    return FilteredComplex(cx, filtration)


class BigradedDimDoc(BaseModel):
    p: int
    q: int
    dimension: int = Field(ge=0)


class BigradedMatrixDoc(BaseModel):
    p: int
    q: int
    matrix: list[list[ExactNumber]]


class DoubleComplexDoc(BaseModel):
    cells: list[BigradedDimDoc]
    horizontal: list[BigradedMatrixDoc] = Field(default_factory=list)
    vertical: list[BigradedMatrixDoc] = Field(default_factory=list)


def load_double_complex(doc: DoubleComplexDoc) -> DoubleComplex:
    dims = {(c.p, c.q): c.dimension for c in doc.cells}
    if len(dims) != len(doc.cells):
        raise DocumentError("duplicate bigraded cell")

    def load_maps(blocks, direction):
        out = {}
        for b in blocks:
            src = (b.p, b.q)
            tgt = (b.p + 1, b.q) if direction == "h" else (b.p, b.q + 1)
            if src not in dims:
                raise DocumentError(f"{direction}-differential on missing cell {src}")
            out[src] = parse_matrix(b.matrix, dims.get(tgt, 0), dims[src])
        return out

    return DoubleComplex.from_dims(dims, load_maps(doc.horizontal, "h"),
                                   load_maps(doc.vertical, "v"))


class GraphEdgeDoc(BaseModel):
    id: str | None = None
    ends: list[str | None]

    @field_validator("ends")
    @classmethod
    def _two_ends(cls, v):
        if len(v) != 2:
            raise ValueError("an edge has two ends")
        return v


class GraphDoc(BaseModel):
    """Standalone dual graph, plus an optional symmetric form to test."""

    vertices: list[str]
    edges: list[GraphEdgeDoc] = Field(default_factory=list)
    form: list[list[ExactNumber]] | None = None


# -- serialization: core objects -> documents --------------------------------


def _exact(value: Fraction) -> ExactNumber:
    value = Fraction(value)
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def matrix_to_rows(m: RatMatrix) -> list[list[ExactNumber]]:
    return [[_exact(v) for v in row] for row in m.rows()]


def arrangement_to_document(arrangement: Arrangement, gysin: GysinData | None = None,
                            cover: CoverSpec | None = None,
                            simplicial_model: tuple | None = None) -> dict:
    """Dump an arrangement (and optional extras) as a plain JSON document."""
    by_subset: dict[frozenset, list] = {}
    for comp in arrangement.components.values():
        by_subset.setdefault(comp.subset, []).append(comp)
    strata = []
    for subset in sorted(by_subset, key=lambda s: (len(s), arrangement.ordered_subset(s))):
        comps = []
        for comp in by_subset[subset]:
            entry = {"id": comp.cid, "compact": comp.compact, "betti": list(comp.betti)}
            if comp.hodge is not None:
                hodge = []
                for degree in sorted(comp.hodge):
                    for (p, q), h in sorted(comp.hodge[degree].items()):
                        if h:
                            hodge.append({"degree": degree, "p": p, "q": q, "count": h})
                entry["hodge"] = hodge
            comps.append(entry)
        strata.append({"subset": list(arrangement.ordered_subset(subset)), "components": comps})
    incidence = [
        {"parent": parent, "divisor": divisor, "children": list(children)}
        for (parent, divisor), children in sorted(arrangement.incidence.items())
    ]
    doc = {
        "ambient_dim": arrangement.n,
        "divisors": list(arrangement.divisors),
        "strata": strata,
        "incidence": incidence,
    }
    if arrangement.intersection_numbers:
        doc["intersection_numbers"] = dict(sorted(arrangement.intersection_numbers.items()))
    if gysin is not None and gysin.blocks:
        doc["gysin"] = [
            {"p": p, "q": q, "matrix": matrix_to_rows(m)}
            for (p, q), m in sorted(gysin.blocks.items())
        ]
    if cover is not None:
        doc["group"] = {"table": [list(row) for row in cover.group.table]}
        doc["monodromy"] = {
            "orbits": [
                {"component": cid, "stabilizer": list(stab)}
                for cid, stab in sorted(cover.stabilizers.items())
            ],
            "incidence_lifts": [
                {"component": cid, "divisor": div, "element": t}
                for (cid, div), t in sorted(cover.incidence_lifts.items())
                if t != 0
            ],
        }
    if simplicial_model is not None:
        x, divisor = simplicial_model
        doc["simplicial_model"] = {
            "maximal_simplices": [list(s) for s in x.simplices(x.dimension())],
            "divisor": [list(s) for s in divisor],
        }
    return doc


def filtered_complex_to_document(fc: FilteredComplex) -> dict:
    cx = fc.complex
    dims = [{"degree": k, "dimension": cx.dim(k)} for k in cx.degrees()]
    diffs = []
    for k in cx.degrees():
        m = cx.differential_matrix(k)
        if not m.is_zero():
            diffs.append({"degree": k, "matrix": matrix_to_rows(m)})
    filtration = []
    for p in range(fc.p_min, fc.p_max + 1):
        for k in cx.degrees():
            level = fc.level(p, k)
            filtration.append({
                "level": p,
                "degree": k,
                "vectors": [[_exact(v) for v in row] for row in level.rows],
            })
    out = {"dimensions": dims, "differentials": diffs, "filtration": filtration}
    if cx.group.order > 1:
        out["group"] = {"table": [list(row) for row in cx.group.table]}
        actions = []
        for k in cx.degrees():
            module = cx.module(k)
            for g in range(1, cx.group.order):
                act = module.action(g)
                if act != RatMatrix.identity(module.dimension):
                    actions.append({"degree": k, "element": g, "matrix": matrix_to_rows(act)})
        if actions:
            # every non-identity element must be listed once a degree has any
            listed = {a["degree"] for a in actions}
            actions = [
                {"degree": k, "element": g, "matrix": matrix_to_rows(cx.module(k).action(g))}
                for k in sorted(listed)
                for g in range(1, cx.group.order)
            ]
            out["actions"] = actions
    return out


def double_complex_to_document(dc: DoubleComplex) -> dict:
    cells = [{"p": p, "q": q, "dimension": dc.dim(p, q)} for (p, q) in dc.cells()]
    horizontal = [
        {"p": p, "q": q, "matrix": matrix_to_rows(m)}
        for (p, q), m in sorted(dc.horizontal.items())
    ]
    vertical = [
        {"p": p, "q": q, "matrix": matrix_to_rows(m)}
        for (p, q), m in sorted(dc.vertical.items())
    ]
    return {"cells": cells, "horizontal": horizontal, "vertical": vertical}
