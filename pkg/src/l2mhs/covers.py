"""Finite Galois cover data over an arrangement and over simplicial bases.

A cover is described by monodromy on stratum components, never by maps of
spaces: each base component carries the stabilizer subgroup H of a chosen
lift, the orbit of lifts is the coset space G/H with left translation, and
incidence lifts are right translations gH_child -> g.t.H_parent.  That is
exactly the data consumed by the induced weight page (orbits and
stabilizers), and Q[G] stands in for l2(G) throughout: for a finite deck
group the two coincide and reduced equals unreduced.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import CochainComplex
from .groups import FiniteGroup, GModule
from .ratlinalg import RatMatrix


class CoverError(ValueError):
    pass


def stratum_vn_dims(b: int, stabilizer_order: int, group_order: int) -> Fraction:
    """Von Neumann dimension b/|G_i| of the induced module Q[G/G_i]^b.

    Equivalently (|G|/|G_i|) * b / |G|: the orbit has |G|/|G_i| lifts, each
    contributing b rational dimensions.
    """
    if b < 0:
        raise CoverError("negative dimension")
    if stabilizer_order <= 0 or group_order <= 0:
        raise CoverError("orders must be positive")
    if group_order % stabilizer_order != 0:
        raise CoverError(
            f"stabilizer order {stabilizer_order} does not divide group order {group_order}")
    return Fraction(b, stabilizer_order)


class CoverSpec:
    """Monodromy data for a finite Galois cover of an arrangement.

    stabilizers: component id -> subgroup (element indices; the orbit of
        lifts is G/H with left translation).
    incidence_lifts: (component id, divisor) -> group element t describing
        which lift of the parent contains each lift of the component,
        gH_child -> g t H_parent.  Omitted pairs default to the identity.
    """

    def __init__(self, group: FiniteGroup, stabilizers: dict[str, tuple[int, ...]],
                 incidence_lifts: dict[tuple[str, str], int] | None = None):
        self.group = group
        self.stabilizers = {c: tuple(sorted(set(h))) for c, h in stabilizers.items()}
        self.incidence_lifts = dict(incidence_lifts or {})
        for cid, sub in self.stabilizers.items():
            if not group.is_subgroup(sub):
                raise CoverError(f"stabilizer of component {cid!r} is not a subgroup")
        for (cid, div), t in self.incidence_lifts.items():
            if not 0 <= t < group.order:
                raise CoverError(f"incidence lift for ({cid!r},{div!r}) is not a group element")

    def stabilizer(self, cid: str) -> tuple[int, ...]:
        sub = self.stabilizers.get(cid)
        if sub is None:
            raise CoverError(f"no monodromy orbit for component {cid!r}")
        return sub

    def stabilizer_order(self, cid: str) -> int:
        return len(self.stabilizer(cid))

    def cosets(self, cid: str) -> list[tuple[int, ...]]:
        return self.group.left_cosets(self.stabilizer(cid))

    def lift_count(self, cid: str) -> int:
        return self.group.order // self.stabilizer_order(cid)

    def lift_element(self, cid: str, divisor: str) -> int:
        return self.incidence_lifts.get((cid, divisor), 0)

    def component_module(self, cid: str) -> GModule:
        return GModule.coset_module(self.group, self.stabilizer(cid))

    def lift_matrix(self, child: str, divisor: str, parent: str) -> RatMatrix:
        """Matrix of the containment map Q[G/H_child] -> Q[G/H_parent]."""
        t = self.lift_element(child, divisor)
        hc = self.stabilizer(child)
        hp = set(self.stabilizer(parent))
        tinv = self.group.inv(t)
        for h in hc:
            if self.group.mul(self.group.mul(tinv, h), t) not in hp:
                raise CoverError(
                    f"lift of ({child!r},{divisor!r}) is not equivariant: "
                    f"t^-1 H t is not inside the parent stabilizer")
        child_cosets = self.cosets(child)
        parent_cosets = self.cosets(parent)
        parent_index = {c: i for i, c in enumerate(parent_cosets)}
        hp_sorted = tuple(sorted(hp))
        entries = {}
        for j, coset in enumerate(child_cosets):
            rep = coset[0]
            image = tuple(sorted(self.group.mul(self.group.mul(rep, t), h) for h in hp_sorted))
            entries[(parent_index[image], j)] = Fraction(1)
        return RatMatrix(len(parent_cosets), len(child_cosets), entries)

    def permutation_action(self, cid: str) -> list[list[int]]:
        """The G-set of lifts as permutation images per group element."""
        cosets = self.cosets(cid)
        index = {c: i for i, c in enumerate(cosets)}
        sub = self.stabilizer(cid)
        out = []
        for g in self.group.elements():
            out.append([
                index[tuple(sorted(self.group.mul(self.group.mul(g, c[0]), h) for h in sub))]
                for c in cosets
            ])
        return out


@dataclass(frozen=True)
class InducedStratum:
    component_id: str
    degree: int
    module: GModule
    base_betti: int

    @property
    def vn_dim(self) -> Fraction:
        return self.module.vn_dim


class InducedArrangement:
    """Arrangement strata turned into induced GModules Q[G/G_c] ^ b_k."""

    def __init__(self, arrangement, cover: CoverSpec):
        cover_validate(arrangement, cover)
        self.arrangement = arrangement
        self.cover = cover
        self.strata: dict[tuple[str, int], InducedStratum] = {}
        for cid, comp in arrangement.components.items():
            coset = cover.component_module(cid)
            for k, b in enumerate(comp.betti):
                if b == 0:
                    module = GModule.trivial(cover.group, 0)
                else:
                    module = GModule.direct_sum([coset] * b)
                self.strata[(cid, k)] = InducedStratum(cid, k, module, b)

    def module(self, cid: str, degree: int) -> GModule:
        return self.strata[(cid, degree)].module

    def vn_dim(self, cid: str, degree: int) -> Fraction:
        return self.strata[(cid, degree)].module.vn_dim


def induce_arrangement(arrangement, cover: CoverSpec) -> InducedArrangement:
    return InducedArrangement(arrangement, cover)


def cover_validate(arrangement, cover: CoverSpec):
    """Check the cover against the arrangement's incidence structure.

    Validates: every component has an orbit; stabilizers are subgroups whose
    order divides |G| (automatic); containment maps are equivariant; and the
    two routes child -> grandparent through different divisors agree, so the
    action commutes with incidence.
    """
    group = cover.group
    for cid in arrangement.components:
        sub = cover.stabilizer(cid)
        if group.order % len(sub) != 0:
            raise CoverError(f"stabilizer order at {cid!r} does not divide |G|")
    for cid, comp in arrangement.components.items():
        for i in sorted(comp.subset, key=arrangement.divisor_position):
            parent = arrangement.parent_in(cid, i)
            cover.lift_matrix(cid, i, parent)
    # two-route coherence into the grandparent stratum
    for cid, comp in arrangement.components.items():
        subset = sorted(comp.subset, key=arrangement.divisor_position)
        if len(subset) < 2:
            continue
        for a in range(len(subset)):
            for b in range(a + 1, len(subset)):
                i, j = subset[a], subset[b]
                pi = arrangement.parent_in(cid, i)
                pj = arrangement.parent_in(cid, j)
                grand = arrangement.parent_in(pi, j)
                t1 = group.mul(cover.lift_element(cid, i), cover.lift_element(pi, j))
                t2 = group.mul(cover.lift_element(cid, j), cover.lift_element(pj, i))
                hg = set(cover.stabilizer(grand))
                # t1 H == t2 H  <=>  t2^-1 t1 in H
                if group.mul(group.inv(t2), t1) not in hg:
                    raise CoverError(
                        f"incidence lifts around component {cid!r} are incoherent "
                        f"(routes through {i!r} and {j!r} disagree)")


class LocalSystemComplex:
    """Cochain complex of free Q[G]-modules from a G-cover of a cell complex.

    Per degree there is one Q[G]-line per base cell; differentials are
    matrices with group-algebra entries, stored as dicts {element: coeff}.
    Expanding every entry through the regular representation recovers the
    plain complex of the total space.
    """

    def __init__(self, group: FiniteGroup, cells: dict[int, list], diffs: dict[int, list[list[dict[int, Fraction]]]]):
        self.group = group
        self.cells = {k: list(v) for k, v in cells.items()}
        self.diffs = diffs
        for k, mat in diffs.items():
            rows = len(self.cells.get(k + 1, []))
            cols = len(self.cells.get(k, []))
            if len(mat) != rows or any(len(r) != cols for r in mat):
                raise CoverError(f"group-algebra differential at degree {k} has wrong shape")

    def degrees(self) -> list[int]:
        return sorted(self.cells)

    def base_dims(self) -> dict[int, int]:
        return {k: len(v) for k, v in self.cells.items()}

    def _right_mult_matrix(self, entry: dict[int, Fraction]) -> RatMatrix:
        g = self.group
        entries = {}
        for t, coeff in entry.items():
            for x in g.elements():
                key = (g.mul(x, t), x)
                entries[key] = entries.get(key, Fraction(0)) + coeff
        return RatMatrix(g.order, g.order, entries)

    def equivariant_complex(self) -> CochainComplex:
        """Expansion through the regular representation, cell-major basis."""
        g = self.group
        reg = GModule.regular(g)
        modules = {}
        for k, cells in self.cells.items():
            if cells:
                modules[k] = GModule.direct_sum([reg] * len(cells))
            else:
                modules[k] = GModule.trivial(g, 0)
        from .groups import GMap
        diffs = {}
        for k, mat in self.diffs.items():
            if k not in modules or k + 1 not in modules:
                continue
            n_src = len(self.cells.get(k, []))
            n_tgt = len(self.cells.get(k + 1, []))
            entries = {}
            for i in range(n_tgt):
                for j in range(n_src):
                    block = self._right_mult_matrix(mat[i][j])
                    for bi, bj, v in block.iter_nonzero():
                        entries[(i * g.order + bi, j * g.order + bj)] = v
            matrix = RatMatrix(n_tgt * g.order, n_src * g.order, entries)
            diffs[k] = GMap(modules[k], modules[k + 1], matrix)
        return CochainComplex(modules, diffs, validate=True)

    def total_complex(self) -> CochainComplex:
        """Plain complex of the |G|-fold total space, group-major basis.

        Assembled independently of equivariant_complex: lifted cells are
        enumerated (g, cell) and each matrix entry is re-derived from the
        group-algebra data, giving a genuinely separate computation path.
        """
        g = self.group
        dims = {k: g.order * len(cells) for k, cells in self.cells.items()}
        matrices = {}
        for k, mat in self.diffs.items():
            if k not in dims or k + 1 not in dims:
                continue
            n_src = len(self.cells.get(k, []))
            n_tgt = len(self.cells.get(k + 1, []))
            entries = {}
            for x in g.elements():
                for j in range(n_src):
                    col = x * n_src + j
                    for i in range(n_tgt):
                        for t, coeff in mat[i][j].items():
                            row = g.mul(x, t) * n_tgt + i
                            entries[(row, col)] = entries.get((row, col), Fraction(0)) + coeff
            matrices[k] = RatMatrix(dims.get(k + 1, 0), dims.get(k, 0), entries)
        return CochainComplex.from_matrices(dims, matrices, validate=True)


@dataclass(frozen=True)
class EquivariantCohomology:
    dims: dict[int, int]
    vn_dims: dict[int, Fraction]


def equivariant_cohomology(l: LocalSystemComplex) -> EquivariantCohomology:
    """Cohomology of the complex of G-modules, checked two ways.

    The expansion through the regular representation and the directly
    assembled total-space complex must agree degree by degree; a mismatch is
    an internal consistency failure and raises.
    """
    via_modules = l.equivariant_complex().cohomology_dims()
    via_total = l.total_complex().cohomology_dims()
    if via_modules != via_total:
        raise CoverError(
            f"equivariant and total-space cohomology disagree: {via_modules} vs {via_total}")
    order = l.group.order
    return EquivariantCohomology(
        dims=dict(via_total),
        vn_dims={k: Fraction(v, order) for k, v in via_total.items()},
    )
