"""Combinatorial normal-crossing arrangements and their weight machinery.

An Arrangement records the strata of a compact ambient space X with a
divisor D = D_1 u ... u D_N: for every index subset I, the connected
components of D_I = intersection of the D_i, with compactness flags, Betti
vectors, optional Hodge tables, and the containment (incidence) relation
between consecutive strata.

From this the module assembles the first page of the weight spectral
sequence E_1^{-p,q} = H^{q-2p}(D(p)) with Gysin differentials, computes the
weight-graded dimensions of the complement cohomology, mixed Hodge number
tables, inclusion-exclusion Euler characteristics (also as l2 values under a
finite cover), and the dual complex of compact strata.

Sign conventions: divisor index tuples are normalized to the global order;
removing index i from the ordered tuple I contributes (-1)^{pos_I(i)}, and
the Gysin differential on the row q carries the uniform extra sign
(-1)^{q-2p}.  Any consistent convention yields the same dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import CochainComplex
from .covers import CoverSpec, cover_validate
from .groups import FiniteGroup, GMap, GModule
from .ratlinalg import RatMatrix, Subspace
from .spectral import FilteredComplex


class ArrangementError(ValueError):
    pass


class GysinError(ValueError):
    pass


@dataclass(frozen=True)
class StratumComponent:
    """One connected component of a stratum D_I (I may be empty: X itself)."""

    cid: str
    subset: frozenset
    compact: bool
    betti: tuple[int, ...]
    hodge: dict | None = None  # degree -> {(p, q): count}

    def euler(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    @property
    def top_degree(self) -> int:
        return len(self.betti) - 1


class Arrangement:
    def __init__(self, ambient_dim: int, divisors: list[str],
                 components: list[StratumComponent],
                 incidence: dict[tuple[str, str], list[str]],
                 intersection_numbers: dict[str, int] | None = None):
        self.n = ambient_dim
        self.divisors = tuple(divisors)
        if len(set(self.divisors)) != len(self.divisors):
            raise ArrangementError("duplicate divisor labels")
        self._div_pos = {d: i for i, d in enumerate(self.divisors)}
        self.components = {}
        for comp in components:
            if comp.cid in self.components:
                raise ArrangementError(f"duplicate component id {comp.cid!r}")
            self.components[comp.cid] = comp
        self.incidence = {k: tuple(v) for k, v in incidence.items()}
        self.intersection_numbers = dict(intersection_numbers or {})
        self._parents: dict[tuple[str, str], str] = {}
        self._validate()

    # -- structure ----------------------------------------------------------

    def divisor_position(self, d: str) -> int:
        try:
            return self._div_pos[d]
        except KeyError:
            raise ArrangementError(f"unknown divisor {d!r}") from None

    def ordered_subset(self, subset: frozenset) -> tuple[str, ...]:
        return tuple(sorted(subset, key=self.divisor_position))

    def level_components(self, p: int) -> list[str]:
        """Component ids of D(p), in the canonical (subset, id) order."""
        found = [
            (tuple(self.divisor_position(d) for d in self.ordered_subset(c.subset)), cid)
            for cid, c in self.components.items()
            if len(c.subset) == p
        ]
        return [cid for _, cid in sorted(found)]

    def parent_in(self, cid: str, divisor: str) -> str:
        """The component of D_{I minus {divisor}} containing cid."""
        got = self._parents.get((cid, divisor))
        if got is None:
            raise ArrangementError(f"no parent of {cid!r} along divisor {divisor!r}")
        return got

    def component(self, cid: str) -> StratumComponent:
        return self.components[cid]

    def betti(self, cid: str, k: int) -> int:
        b = self.components[cid].betti
        return b[k] if 0 <= k < len(b) else 0

    def sign(self, subset: frozenset, divisor: str) -> int:
        """(-1)^position of the divisor inside the ordered tuple of subset."""
        pos = self.ordered_subset(subset).index(divisor)
        return -1 if pos % 2 else 1

    # -- validation ----------------------------------------------------------

    def _validate(self):
        if self.n < 1:
            raise ArrangementError("ambient dimension must be at least 1")
        ambient = [c for c in self.components.values() if not c.subset]
        if not ambient:
            raise ArrangementError("the empty-subset stratum (X itself) is required")
        for comp in self.components.values():
            for d in comp.subset:
                self.divisor_position(d)
            depth = len(comp.subset)
            if depth > self.n:
                raise ArrangementError(f"component {comp.cid!r} deeper than the ambient dimension")
            expected = 2 * (self.n - depth) + 1
            if len(comp.betti) != expected:
                raise ArrangementError(
                    f"component {comp.cid!r}: Betti vector must have length {expected}")
            if any(b < 0 for b in comp.betti):
                raise ArrangementError(f"component {comp.cid!r}: negative Betti number")
            if comp.betti[0] != 1:
                raise ArrangementError(f"component {comp.cid!r}: b^0 must be 1 (components are connected)")
            if not comp.subset and not comp.compact:
                raise ArrangementError("the ambient space must be compact")
            if depth == self.n and not comp.compact:
                raise ArrangementError(f"component {comp.cid!r}: points are compact")
            top = comp.top_degree
            if comp.compact:
                for k in range(top + 1):
                    if comp.betti[k] != comp.betti[top - k]:
                        raise ArrangementError(
                            f"component {comp.cid!r}: compact Betti vector is not symmetric")
            elif top >= 1 and comp.betti[top] != 0:
                raise ArrangementError(
                    f"component {comp.cid!r}: non-compact components need b^top = 0")
            if comp.hodge is not None:
                self._validate_hodge(comp)
        self._build_parents()
        self._check_order_coherence()

    def _validate_hodge(self, comp: StratumComponent):
        dim = self.n - len(comp.subset)
        for k in range(len(comp.betti)):
            table = comp.hodge.get(k, {})
            total = 0
            for (p, q), h in table.items():
                if p + q != k or not (0 <= p <= dim and 0 <= q <= dim):
                    raise ArrangementError(
                        f"component {comp.cid!r}: Hodge entry ({p},{q}) invalid in degree {k}")
                if h < 0:
                    raise ArrangementError(f"component {comp.cid!r}: negative Hodge number")
                if table.get((q, p), 0) != h:
                    raise ArrangementError(
                        f"component {comp.cid!r}: Hodge symmetry h^{{p,q}} = h^{{q,p}} fails in degree {k}")
                total += h
            if total != comp.betti[k]:
                raise ArrangementError(
                    f"component {comp.cid!r}: Hodge numbers in degree {k} do not sum to b^{k}")

    def _build_parents(self):
        listed: dict[tuple[str, str], list[str]] = {}
        for (parent, divisor), children in self.incidence.items():
            if parent not in self.components:
                raise ArrangementError(f"incidence parent {parent!r} unknown")
            pcomp = self.components[parent]
            if divisor in pcomp.subset:
                raise ArrangementError(
                    f"incidence ({parent!r},{divisor!r}): divisor already in the subset")
            for child in children:
                ccomp = self.components.get(child)
                if ccomp is None:
                    raise ArrangementError(f"incidence child {child!r} unknown")
                if ccomp.subset != pcomp.subset | {divisor}:
                    raise ArrangementError(
                        f"incidence ({parent!r},{divisor!r}): child {child!r} has the wrong subset")
                listed.setdefault((child, divisor), []).append(parent)
        for cid, comp in self.components.items():
            for d in comp.subset:
                parents = listed.get((cid, d), [])
                if len(parents) != 1:
                    raise ArrangementError(
                        f"component {cid!r} must lie in exactly one component along {d!r}, "
                        f"found {len(parents)}")
                self._parents[(cid, d)] = parents[0]

    def _check_order_coherence(self):
        for cid, comp in self.components.items():
            subset = self.ordered_subset(comp.subset)
            if len(subset) < 2:
                continue
            for a in range(len(subset)):
                for b in range(a + 1, len(subset)):
                    i, j = subset[a], subset[b]
                    via_i = self.parent_in(self.parent_in(cid, i), j)
                    via_j = self.parent_in(self.parent_in(cid, j), i)
                    if via_i != via_j:
                        raise ArrangementError(
                            f"incidence of {cid!r} is inconsistent across orderings "
                            f"({i!r} then {j!r} vs {j!r} then {i!r})")

    # -- Euler characteristics ------------------------------------------------

    def euler_complement(self) -> int:
        """chi(X minus D) by inclusion-exclusion over strata."""
        total = 0
        for comp in self.components.values():
            total += (-1) ** len(comp.subset) * comp.euler()
        return total


@dataclass
class GysinData:
    """User-supplied Gysin matrices, one per (p, q) cell of the first page.

    The matrix for (p, q) maps the base-arrangement cell H^{q-2p}(D(p)) to
    H^{q-2p+2}(D(p-1)) in the canonical component order, WITHOUT the
    combinatorial signs: the engine applies (-1)^{pos} per removed index and
    the uniform (-1)^{q-2p}.  The top row q = 2n is derived automatically and
    must not be supplied.
    """

    blocks: dict[tuple[int, int], RatMatrix] = field(default_factory=dict)

    @classmethod
    def empty(cls) -> "GysinData":
        return cls({})


@dataclass(frozen=True)
class CellBasisLabel:
    component: str
    betti_index: int
    coset_index: int


class WeightE1:
    """First page of the weight spectral sequence with d_1 differentials.

    Cells are stored under (p, q) with p >= 0 meaning column -p; the entry is
    H^{q-2p}(D(p)) (a sum of induced modules under a cover), the differential
    goes (p, q) -> (p-1, q), the entry carries weight q on H^{q-p}.
    """

    def __init__(self, arrangement: Arrangement, cover: CoverSpec | None,
                 group: FiniteGroup,
                 cells: dict[tuple[int, int], GModule],
                 labels: dict[tuple[int, int], list[CellBasisLabel]],
                 d1: dict[tuple[int, int], GMap]):
        self.arrangement = arrangement
        self.cover = cover
        self.group = group
        self.cells = cells
        self.labels = labels
        self.d1 = d1

    @property
    def n(self) -> int:
        return self.arrangement.n

    def cell_dim(self, p: int, q: int) -> int:
        m = self.cells.get((p, q))
        return m.dimension if m is not None else 0

    def nonzero_cells(self) -> list[tuple[int, int]]:
        return sorted(pq for pq, m in self.cells.items() if m.dimension)

    def d1_matrix(self, p: int, q: int) -> RatMatrix:
        d = self.d1.get((p, q))
        if d is not None:
            return d.matrix
        return RatMatrix.zeros(self.cell_dim(p - 1, q), self.cell_dim(p, q))

    def to_filtered_complex(self) -> FilteredComplex:
        """Total complex with the (decreasing, j = -p) weight filtration."""
        by_degree: dict[int, list[tuple[int, int]]] = {}
        for (p, q), module in self.cells.items():
            if module.dimension:
                by_degree.setdefault(q - p, []).append((p, q))
        for m in by_degree:
            by_degree[m].sort()
        offsets = {}
        modules = {}
        for m, cells in by_degree.items():
            off = 0
            mods = []
            for pq in cells:
                offsets[pq] = off
                off += self.cells[pq].dimension
                mods.append(self.cells[pq])
            modules[m] = GModule.direct_sum(mods) if mods else GModule.trivial(self.group, 0)
        diffs = {}
        for m in sorted(by_degree):
            if m + 1 not in modules:
                continue
            entries = {}
            for (p, q) in by_degree[m]:
                # d1 keeps the row q and moves one column right: total degree m+1
                tgt = (p - 1, q)
                if tgt not in offsets:
                    continue
                mat = self.d1_matrix(p, q)
                for i, j, v in mat.iter_nonzero():
                    entries[(offsets[tgt] + i, offsets[(p, q)] + j)] = v
            diffs[m] = RatMatrix(modules[m + 1].dimension, modules[m].dimension, entries)
        gmaps = {}
        for m, mat in diffs.items():
            gmaps[m] = GMap(modules[m], modules[m + 1], mat)
        cx = CochainComplex(modules, gmaps, validate=True)
        filtration: dict[int, dict[int, Subspace]] = {}
        degrees = sorted(modules)
        for j in range(-self.n, 1):
            filtration[j] = {}
            for m in degrees:
                dim = modules[m].dimension
                vectors = []
                for (p, q) in by_degree.get(m, []):
                    if p <= -j:
                        off = offsets[(p, q)]
                        for t in range(self.cells[(p, q)].dimension):
                            vec = [Fraction(0)] * dim
                            vec[off + t] = Fraction(1)
                            vectors.append(vec)
                filtration[j][m] = Subspace.from_vectors(dim, vectors)
        return FilteredComplex(cx, filtration, validate=True)


def _cell_rows(n: int) -> list[tuple[int, int]]:
    cells = []
    for p in range(0, n + 1):
        for k in range(0, 2 * (n - p) + 1):
            cells.append((p, k + 2 * p))
    return cells


def _cell_layout(arr: Arrangement, cover: CoverSpec | None, p: int, q: int,
                 group: FiniteGroup):
    """Module, labels and per-component offsets of the cell (p, q)."""
    k = q - 2 * p
    labels: list[CellBasisLabel] = []
    offsets: dict[str, int] = {}
    summands: list[GModule] = []
    off = 0
    for cid in arr.level_components(p):
        b = arr.betti(cid, k)
        offsets[cid] = off
        if b == 0:
            continue
        if cover is None:
            lifts = 1
            summands.extend([GModule.trivial(group, 1)] * b)
        else:
            coset = cover.component_module(cid)
            lifts = coset.dimension
            summands.extend([coset] * b)
        for t in range(b):
            for c in range(lifts):
                labels.append(CellBasisLabel(cid, t, c))
        off += b * lifts
    if summands:
        module = GModule.direct_sum(summands)
    else:
        module = GModule.trivial(group, 0)
    return module, labels, offsets


def _base_offsets(arr: Arrangement, p: int, k: int) -> tuple[dict[str, int], int]:
    """Offsets of components inside the base (cover-free) cell basis."""
    offsets = {}
    off = 0
    for cid in arr.level_components(p):
        offsets[cid] = off
        off += arr.betti(cid, k)
    return offsets, off


def assemble_weight_e1(arr: Arrangement, gysin: GysinData | None = None,
                       cover: CoverSpec | None = None) -> WeightE1:
    """Populate the first weight page and validate d_1^2 = 0.

    Top-row maps (q = 2n) are derived from incidence as signed
    fundamental-class pairings; all other rows with nonzero source and
    target require a user matrix in GysinData (missing ones raise, listing
    the rows).  With a cover, every block is tensored with the coset lift
    map, so the differentials are equivariant by construction (and checked).
    """
    gysin = gysin or GysinData.empty()
    n = arr.n
    if cover is not None:
        cover_validate(arr, cover)
        group = cover.group
    else:
        group = FiniteGroup.trivial()

    cells = {}
    labels = {}
    offsets = {}
    for (p, q) in _cell_rows(n):
        module, labs, offs = _cell_layout(arr, cover, p, q, group)
        cells[(p, q)] = module
        labels[(p, q)] = labs
        offsets[(p, q)] = offs

    known = set(_cell_rows(n))
    for (p, q) in gysin.blocks:
        if (p, q) not in known:
            raise GysinError(f"Gysin matrix for non-existent cell ({p},{q})")
        if q == 2 * n:
            raise GysinError(
                f"row q={q} is the top row: its maps are derived automatically, "
                "do not supply them")
        if p < 1:
            raise GysinError(f"Gysin matrices start at column p=1, got p={p}")

    missing = []
    d1: dict[tuple[int, int], GMap] = {}
    for (p, q) in _cell_rows(n):
        if p < 1 or (p - 1, q) not in cells:
            continue
        k = q - 2 * p
        src_mod = cells[(p, q)]
        tgt_mod = cells[(p - 1, q)]
        if src_mod.dimension == 0 or tgt_mod.dimension == 0:
            continue
        top_row = q == 2 * n
        user = gysin.blocks.get((p, q))
        if not top_row and user is None:
            missing.append((p, q))
            continue
        src_base, src_base_dim = _base_offsets(arr, p, k)
        tgt_base, tgt_base_dim = _base_offsets(arr, p - 1, k + 2)
        if user is not None and user.shape != (tgt_base_dim, src_base_dim):
            raise GysinError(
                f"Gysin matrix at ({p},{q}) has shape {user.shape}, "
                f"expected {(tgt_base_dim, src_base_dim)}")
        entries: dict[tuple[int, int], Fraction] = {}
        global_sign = -1 if k % 2 else 1
        for cid in arr.level_components(p):
            comp = arr.component(cid)
            b_src = arr.betti(cid, k)
            if b_src == 0:
                continue
            for d in arr.ordered_subset(comp.subset):
                parent = arr.parent_in(cid, d)
                b_tgt = arr.betti(parent, k + 2)
                if b_tgt == 0:
                    continue
                sign = arr.sign(comp.subset, d) * global_sign
                if top_row:
                    block = RatMatrix.identity(1)
                else:
                    block_entries = {}
                    for i in range(b_tgt):
                        for j in range(b_src):
                            v = user.entry(tgt_base[parent] + i, src_base[cid] + j)
                            if v != 0:
                                block_entries[(i, j)] = v
                    block = RatMatrix(b_tgt, b_src, block_entries)
                if cover is None:
                    lift = RatMatrix.identity(1)
                else:
                    lift = cover.lift_matrix(cid, d, parent)
                src_off = offsets[(p, q)][cid]
                tgt_off = offsets[(p - 1, q)][parent]
                nc_src = lift.ncols
                nc_tgt = lift.nrows
                for i, j, v in block.iter_nonzero():
                    for li, lj, lv in lift.iter_nonzero():
                        row = tgt_off + i * nc_tgt + li
                        col = src_off + j * nc_src + lj
                        entries[(row, col)] = entries.get((row, col), Fraction(0)) + sign * v * lv
        if user is not None:
            _check_user_support(arr, user, p, k, src_base, tgt_base)
        matrix = RatMatrix(tgt_mod.dimension, src_mod.dimension, entries)
        gm = GMap(src_mod, tgt_mod, matrix)
        if not gm.check_equivariance():
            raise GysinError(f"assembled d_1 at ({p},{q}) is not equivariant")
        d1[(p, q)] = gm

    if missing:
        rows = ", ".join(f"({p},{q})" for p, q in sorted(missing))
        raise GysinError(f"missing Gysin matrices for rows: {rows}")

    for (p, q), gm in d1.items():
        nxt = d1.get((p - 1, q))
        if nxt is not None and not (nxt.matrix @ gm.matrix).is_zero():
            raise GysinError(f"d_1 o d_1 != 0 out of cell ({p},{q})")

    return WeightE1(arr, cover, group, cells, labels, d1)


def _check_user_support(arr: Arrangement, user: RatMatrix, p: int, k: int,
                        src_base: dict[str, int], tgt_base: dict[str, int]):
    """User entries may only connect incident component pairs."""
    src_ranges = []
    for cid in arr.level_components(p):
        b = arr.betti(cid, k)
        src_ranges.append((src_base[cid], src_base[cid] + b, cid))
    tgt_ranges = []
    for cid in arr.level_components(p - 1):
        b = arr.betti(cid, k + 2)
        tgt_ranges.append((tgt_base[cid], tgt_base[cid] + b, cid))

    def locate(ranges, idx):
        for lo, hi, cid in ranges:
            if lo <= idx < hi:
                return cid
        return None

    for i, j, _ in user.iter_nonzero():
        src_cid = locate(src_ranges, j)
        tgt_cid = locate(tgt_ranges, i)
        if src_cid is None or tgt_cid is None:
            raise GysinError(f"Gysin entry ({i},{j}) at ({p},{k + 2 * p}) outside the cell bases")
        comp = arr.component(src_cid)
        parents = {arr.parent_in(src_cid, d) for d in comp.subset}
        if tgt_cid not in parents:
            raise GysinError(
                f"Gysin entry connects non-incident components {src_cid!r} -> {tgt_cid!r}")
