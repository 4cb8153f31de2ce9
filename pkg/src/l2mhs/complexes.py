"""Bounded cochain complexes of group modules and double complexes.

Cohomology is computed exactly: H^k = ker d^k / im d^{k-1} with canonical
subquotient bases, so downstream code (spectral sequences, comparisons) can
work with explicit representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .groups import FiniteGroup, GMap, GModule
from .ratlinalg import Quotient, RatMatrix, Subspace, column_space


class ComplexError(ValueError):
    pass


class CochainComplex:
    """Bounded complex of GModules with differentials d^k : K^k -> K^{k+1}.

    Degrees may be any consecutive range of integers (negative degrees are
    used to store chain complexes).  Missing differentials are zero maps.
    """

    def __init__(self, modules: dict[int, GModule], differentials: dict[int, GMap] | None = None,
                 validate: bool = True):
        if not modules:
            self.modules = {}
            self.differentials = {}
            self.group = FiniteGroup.trivial()
            return
        self.modules = dict(modules)
        groups = {m.group for m in self.modules.values()}
        if len(groups) != 1:
            raise ComplexError("all modules must share one group")
        self.group = next(iter(groups))
        degrees = sorted(self.modules)
        self.differentials = {}
        diffs = dict(differentials or {})
        for k in degrees:
            if k + 1 in self.modules:
                d = diffs.pop(k, None)
                if d is None:
                    d = GMap.zero(self.modules[k], self.modules[k + 1])
                self.differentials[k] = d
        for k, d in diffs.items():
            if not d.is_zero():
                raise ComplexError(f"differential at degree {k} has no target module")
        if validate:
            self.validate()

    @classmethod
    def from_matrices(cls, dims: dict[int, int], matrices: dict[int, RatMatrix],
                      group: FiniteGroup | None = None, validate: bool = True) -> "CochainComplex":
        """Complex of trivial modules from plain matrices d^k."""
        group = group or FiniteGroup.trivial()
        modules = {k: GModule.trivial(group, n) for k, n in dims.items()}
        diffs = {}
        for k, m in matrices.items():
            if k not in modules or k + 1 not in modules:
                raise ComplexError(f"differential at degree {k} outside the declared range")
            diffs[k] = GMap(modules[k], modules[k + 1], m)
        return cls(modules, diffs, validate=validate)

    def degrees(self) -> list[int]:
        return sorted(self.modules)

    def module(self, k: int) -> GModule:
        return self.modules[k]

    def dim(self, k: int) -> int:
        m = self.modules.get(k)
        return m.dimension if m is not None else 0

    def differential(self, k: int) -> GMap | None:
        return self.differentials.get(k)

    def differential_matrix(self, k: int) -> RatMatrix:
        d = self.differentials.get(k)
        if d is not None:
            return d.matrix
        return RatMatrix.zeros(self.dim(k + 1), self.dim(k))

    def validate(self):
        for k, d in self.differentials.items():
            if not d.check_equivariance():
                raise ComplexError(f"differential d^{k} is not equivariant")
        for k in self.degrees():
            d0 = self.differentials.get(k)
            d1 = self.differentials.get(k + 1)
            if d0 is not None and d1 is not None:
                if not (d1.matrix @ d0.matrix).is_zero():
                    raise ComplexError(f"d^{k + 1} o d^{k} != 0")

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * m.dimension for k, m in self.modules.items())

    def total_dimension(self) -> int:
        return sum(m.dimension for m in self.modules.values())

    def cocycles(self, k: int) -> Subspace:
        n = self.dim(k)
        d = self.differentials.get(k)
        if d is None:
            return Subspace.full(n)
        return Subspace.from_vectors(n, d.matrix.kernel_basis())

    def coboundaries(self, k: int) -> Subspace:
        n = self.dim(k)
        d = self.differentials.get(k - 1)
        if d is None:
            return Subspace.zero(n)
        return column_space(d.matrix)

    def cohomology(self) -> dict[int, "DegreeCohomology"]:
        out = {}
        for k in self.degrees():
            z = self.cocycles(k)
            b = self.coboundaries(k)
            if not b.is_subspace_of(z):
                raise ComplexError(f"d^{k} o d^{k - 1} != 0")
            q = Quotient(z, b)
            out[k] = DegreeCohomology(
                degree=k,
                dim=q.dim,
                vn_dim=Fraction(q.dim, self.group.order),
                cocycles=z,
                coboundaries=b,
                classes=q,
            )
        return out

    def cohomology_dims(self) -> dict[int, int]:
        return {k: h.dim for k, h in self.cohomology().items()}

    def __repr__(self):
        degs = self.degrees()
        if not degs:
            return "CochainComplex(empty)"
        dims = ", ".join(f"{k}:{self.dim(k)}" for k in degs)
        return f"CochainComplex({dims})"


@dataclass(frozen=True)
class DegreeCohomology:
    degree: int
    dim: int
    vn_dim: Fraction
    cocycles: Subspace
    coboundaries: Subspace
    classes: Quotient


class DoubleComplex:
    """Bigraded modules with anticommuting horizontal/vertical differentials.

    horizontal: (p,q) -> (p+1,q)   vertical: (p,q) -> (p,q+1)
    d_h^2 = d_v^2 = 0 and d_h d_v + d_v d_h = 0, so d_h + d_v squares to zero
    on the totalization.
    """

    def __init__(self, modules: dict[tuple[int, int], GModule],
                 horizontal: dict[tuple[int, int], RatMatrix],
                 vertical: dict[tuple[int, int], RatMatrix],
                 group: FiniteGroup | None = None, validate: bool = True):
        self.group = group or FiniteGroup.trivial()
        self.modules = dict(modules)
        self.horizontal = {k: m for k, m in horizontal.items() if not m.is_zero()}
        self.vertical = {k: m for k, m in vertical.items() if not m.is_zero()}
        if validate:
            self.validate()

    @classmethod
    def from_dims(cls, dims: dict[tuple[int, int], int],
                  horizontal: dict[tuple[int, int], RatMatrix],
                  vertical: dict[tuple[int, int], RatMatrix],
                  validate: bool = True) -> "DoubleComplex":
        group = FiniteGroup.trivial()
        modules = {pq: GModule.trivial(group, n) for pq, n in dims.items() if n > 0}
        return cls(modules, horizontal, vertical, group, validate=validate)

    def dim(self, p: int, q: int) -> int:
        m = self.modules.get((p, q))
        return m.dimension if m is not None else 0

    def hmat(self, p: int, q: int) -> RatMatrix:
        return self.horizontal.get((p, q), RatMatrix.zeros(self.dim(p + 1, q), self.dim(p, q)))

    def vmat(self, p: int, q: int) -> RatMatrix:
        return self.vertical.get((p, q), RatMatrix.zeros(self.dim(p, q + 1), self.dim(p, q)))

    def validate(self):
        for (p, q), m in list(self.horizontal.items()) + list(self.vertical.items()):
            if (p, q) not in self.modules:
                raise ComplexError(f"differential on missing cell ({p},{q})")
        for (p, q) in self.modules:
            h = self.hmat(p, q)
            if h.shape != (self.dim(p + 1, q), self.dim(p, q)):
                raise ComplexError(f"horizontal shape mismatch at ({p},{q})")
            v = self.vmat(p, q)
            if v.shape != (self.dim(p, q + 1), self.dim(p, q)):
                raise ComplexError(f"vertical shape mismatch at ({p},{q})")
            if not (self.hmat(p + 1, q) @ h).is_zero():
                raise ComplexError(f"horizontal differential does not square to zero at ({p},{q})")
            if not (self.vmat(p, q + 1) @ v).is_zero():
                raise ComplexError(f"vertical differential does not square to zero at ({p},{q})")
            anti = self.vmat(p + 1, q) @ h + self.hmat(p, q + 1) @ v
            if not anti.is_zero():
                raise ComplexError(f"anticommutation failure at ({p},{q})")

    def cells(self) -> list[tuple[int, int]]:
        return sorted(self.modules)

    def column(self, p: int) -> CochainComplex:
        """The vertical complex (K^{p,.}, d_v), graded by q."""
        mods = {q: m for (pp, q), m in self.modules.items() if pp == p}
        diffs = {}
        for q in mods:
            if q + 1 in mods:
                diffs[q] = GMap(mods[q], mods[q + 1], self.vmat(p, q))
        return CochainComplex(mods, diffs, validate=False)

    def totalization(self) -> CochainComplex:
        """Total complex T^n = sum of K^{p,q} with p+q = n, D = d_h + d_v."""
        by_degree: dict[int, list[tuple[int, int]]] = {}
        for (p, q) in self.cells():
            by_degree.setdefault(p + q, []).append((p, q))
        for n in by_degree:
            by_degree[n].sort()
        offsets: dict[tuple[int, int], int] = {}
        dims: dict[int, int] = {}
        for n, cells in by_degree.items():
            off = 0
            for pq in cells:
                offsets[pq] = off
                off += self.dim(*pq)
            dims[n] = off
        matrices: dict[int, RatMatrix] = {}
        for n in sorted(by_degree):
            if n + 1 not in dims:
                continue
            entries = {}
            for (p, q) in by_degree[n]:
                src = offsets[(p, q)]
                for mat, tgt_cell in ((self.hmat(p, q), (p + 1, q)), (self.vmat(p, q), (p, q + 1))):
                    if tgt_cell not in offsets:
                        if not mat.is_zero():
                            raise ComplexError(f"differential leaves the stored cells at ({p},{q})")
                        continue
                    tgt = offsets[tgt_cell]
                    for i, j, v in mat.iter_nonzero():
                        entries[(tgt + i, src + j)] = v
            matrices[n] = RatMatrix(dims[n + 1], dims[n], entries)
        return CochainComplex.from_matrices(dims, matrices, validate=False)


@dataclass(frozen=True)
class FroelicherResult:
    e1_totals: dict[int, int]
    h_totals: dict[int, int]
    degenerates: bool


def froelicher(dc: DoubleComplex) -> FroelicherResult:
    """Compare first-page column cohomology totals with the totalization.

    e1_total(n) = sum over p+q=n of dim H^q(K^{p,.}, d_v); h_total(n) is the
    cohomology of the total complex.  Since all dimensions are finite and
    exact, the spectral sequence of the column filtration degenerates at its
    first page iff the totals agree in every degree.
    """
    dc.validate()
    e1: dict[int, int] = {}
    for p in sorted({p for (p, _) in dc.cells()}):
        for q, h in dc.column(p).cohomology_dims().items():
            if h:
                e1[p + q] = e1.get(p + q, 0) + h
    h_tot = {n: d for n, d in dc.totalization().cohomology_dims().items() if d}
    degrees = set(e1) | set(h_tot)
    degenerates = all(e1.get(n, 0) == h_tot.get(n, 0) for n in degrees)
    return FroelicherResult(e1_totals=e1, h_totals=h_tot, degenerates=degenerates)
