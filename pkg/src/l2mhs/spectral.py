"""Spectral sequences of filtered cochain complexes.

Pages are computed from the classical cycle/boundary subspaces

    Z_r^{p,q} = F^p K^{p+q}  meet  d^{-1}(F^{p+r} K^{p+q+1})
    E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2})

with every subspace held in canonical echelon form, so page entries are
explicit subquotients of K^{p+q} and the induced d_r are honest matrices on
the chosen representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import CochainComplex, ComplexError
from .groups import GMap, GModule
from .ratlinalg import Quotient, RatMatrix, Subspace


class FiltrationError(ValueError):
    pass


class FilteredComplex:
    """Cochain complex with a decreasing filtration F^p by subspaces.

    The filtration is exhaustive (F^{p_min} is everything), separated
    (F^{p_max+1} = 0), preserved by d, and stable under the group action.
    """

    def __init__(self, complex: CochainComplex, filtration: dict[int, dict[int, Subspace]],
                 validate: bool = True):
        self.complex = complex
        if not filtration:
            raise FiltrationError("empty filtration")
        self.p_min = min(filtration)
        self.p_max = max(filtration)
        self.filtration = {p: dict(filtration[p]) for p in filtration}
        if validate:
            self.validate()

    @classmethod
    def from_spanning_sets(cls, complex: CochainComplex,
                           spans: dict[int, dict[int, list]], validate: bool = True) -> "FilteredComplex":
        """Filtration given by spanning column vectors per (p, degree)."""
        filtration = {}
        for p, per_degree in spans.items():
            filtration[p] = {
                k: Subspace.from_vectors(complex.dim(k), vecs) for k, vecs in per_degree.items()
            }
        return cls(complex, filtration, validate=validate)

    @classmethod
    def trivial(cls, complex: CochainComplex) -> "FilteredComplex":
        """One-step filtration: F^0 = everything, F^1 = 0."""
        return cls(complex, {0: {k: Subspace.full(complex.dim(k)) for k in complex.degrees()}},
                   validate=False)

    def level(self, p: int, degree: int) -> Subspace:
        n = self.complex.dim(degree)
        if p <= self.p_min:
            return Subspace.full(n)
        if p > self.p_max:
            return Subspace.zero(n)
        sub = self.filtration.get(p, {}).get(degree)
        return sub if sub is not None else Subspace.zero(n)

    def filtration_length(self) -> int:
        return self.p_max - self.p_min + 1

    def validate(self):
        degrees = self.complex.degrees()
        for p in range(self.p_min, self.p_max + 1):
            for k in degrees:
                cur = self.level(p, k)
                if cur.ambient != self.complex.dim(k):
                    raise FiltrationError(f"F^{p} K^{k} has wrong ambient dimension")
                if not self.level(p + 1, k).is_subspace_of(cur):
                    raise FiltrationError(f"filtration is not decreasing at (p={p}, degree={k})")
                d = self.complex.differential_matrix(k)
                if not cur.image_under(d).is_subspace_of(self.level(p, k + 1)):
                    raise FiltrationError(f"d does not preserve F^{p} in degree {k}")
                if self.complex.group.order > 1:
                    for g in self.complex.group.generators():
                        act = self.complex.module(k).action(g)
                        if not cur.image_under(act).is_subspace_of(cur):
                            raise FiltrationError(
                                f"filtration is not stable under the group at (p={p}, degree={k})")


@dataclass(frozen=True)
class PageEntry:
    p: int
    q: int
    classes: Quotient
    module: GModule

    @property
    def dim(self) -> int:
        return self.classes.dim

    @property
    def vn_dim(self) -> Fraction:
        return Fraction(self.dim, self.module.group.order)


class SSPage:
    """One page E_r with entries and the induced differentials d_r.

    d_r goes E_r^{p,q} -> E_r^{p+r,q-r+1}; matrices act on the canonical
    representative coordinates of the entries.
    """

    def __init__(self, r: int, entries: dict[tuple[int, int], PageEntry],
                 differentials: dict[tuple[int, int], GMap]):
        self.r = r
        self.entries = entries
        self.differentials = differentials

    def dims(self) -> dict[tuple[int, int], int]:
        return {pq: e.dim for pq, e in self.entries.items() if e.dim}

    def entry_dim(self, p: int, q: int) -> int:
        e = self.entries.get((p, q))
        return e.dim if e is not None else 0

    def differential_is_zero(self) -> bool:
        return all(d.is_zero() for d in self.differentials.values())

    def total_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (p, q), e in self.entries.items():
            if e.dim:
                out[p + q] = out.get(p + q, 0) + e.dim
        return out

    def __repr__(self):
        return f"SSPage(r={self.r}, cells={len(self.entries)})"


class _PageMachine:
    """Shared state for computing Z_r subspaces with memoization."""

    def __init__(self, fc: FilteredComplex):
        self.fc = fc
        self.cx = fc.complex
        self._z: dict[tuple[int, int, int], Subspace] = {}

    def z(self, r: int, p: int, n: int) -> Subspace:
        """Z_r^{p,n-p} = F^p K^n meet d^{-1}(F^{p+r} K^{n+1})."""
        key = (r, p, n)
        got = self._z.get(key)
        if got is not None:
            return got
        fp = self.fc.level(p, n)
        d = self.cx.differential_matrix(n)
        pre = self.fc.level(p + r, n + 1).preimage_under(d)
        out = fp.intersect(pre)
        self._z[key] = out
        return out

    def boundary_part(self, r: int, p: int, n: int) -> Subspace:
        """Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2} inside K^n."""
        stay = self.z(r - 1, p + 1, n)
        dprev = self.cx.differential_matrix(n - 1)
        hit = self.z(r - 1, p - r + 1, n - 1).image_under(dprev)
        return stay.sum_with(hit)


def _induced_module(cx: CochainComplex, degree: int, classes: Quotient) -> GModule:
    """Group action induced on the canonical representatives of a subquotient."""
    group = cx.group
    k = classes.dim
    if group.order == 1 or k == 0:
        return GModule.trivial(group, k)
    actions = []
    module = cx.module(degree)
    for g in group.elements():
        act = module.action(g)
        cols = [classes.coords(act.apply(classes.lift(i))) for i in range(k)]
        actions.append(RatMatrix.from_columns(cols, k))
    return GModule(group, k, actions, validate=False)


def spectral_sequence(fc: FilteredComplex, r_max: int | None = None) -> list[SSPage]:
    """Pages E_1 .. E_{r_max} of a filtered complex.

    r_max defaults to filtration length + 1; beyond that every d_r vanishes
    for support reasons.  An empty complex yields pages with no entries.
    """
    cx = fc.complex
    if r_max is None:
        r_max = fc.filtration_length() + 1
    machine = _PageMachine(fc)
    degrees = cx.degrees()
    if not degrees:
        return [SSPage(r, {}, {}) for r in range(1, r_max + 1)]
    pages = []
    cells = [
        (p, n - p)
        for n in degrees
        for p in range(fc.p_min, fc.p_max + 1)
    ]
    for r in range(1, r_max + 1):
        entries: dict[tuple[int, int], PageEntry] = {}
        for (p, q) in cells:
            n = p + q
            znum = machine.z(r, p, n)
            bden = machine.boundary_part(r, p, n)
            if not bden.is_subspace_of(znum):
                raise ComplexError(f"page {r} denominator escapes numerator at ({p},{q})")
            quot = Quotient(znum, bden)
            entries[(p, q)] = PageEntry(p, q, quot, _induced_module(cx, n, quot))
        differentials: dict[tuple[int, int], GMap] = {}
        for (p, q), src in entries.items():
            tgt = entries.get((p + r, q - r + 1))
            if tgt is None or src.dim == 0:
                continue
            d = cx.differential_matrix(p + q)
            cols = [tgt.classes.coords(d.apply(src.classes.lift(i))) for i in range(src.dim)]
            mat = RatMatrix.from_columns(cols, tgt.dim)
            differentials[(p, q)] = GMap(src.module, tgt.module, mat)
        page = SSPage(r, entries, differentials)
        _check_dr_squares(page)
        pages.append(page)
    return pages


def _check_dr_squares(page: SSPage):
    for (p, q), first in page.differentials.items():
        second = page.differentials.get((p + page.r, q - page.r + 1))
        if second is not None and not (second.matrix @ first.matrix).is_zero():
            raise ComplexError(f"d_{page.r} o d_{page.r} != 0 at ({p},{q})")


def verify_page_recursion(pages: list[SSPage]) -> bool:
    """Cohomology of (E_r, d_r) must reproduce the E_{r+1} dimensions."""
    for cur, nxt in zip(pages, pages[1:]):
        r = cur.r
        for (p, q), entry in cur.entries.items():
            out = cur.differentials.get((p, q))
            inc = cur.differentials.get((p - r, q + r - 1))
            rk_out = out.rank() if out is not None else 0
            rk_in = inc.rank() if inc is not None else 0
            if entry.dim - rk_out - rk_in != nxt.entry_dim(p, q):
                return False
    return True


def degeneration_page(pages: list[SSPage]) -> int:
    """Smallest r0 with d_r = 0 for all computed r >= r0 (at least 1)."""
    if not pages:
        raise ValueError("no pages given")
    rs = [page.r for page in pages]
    if rs != list(range(rs[0], rs[0] + len(rs))):
        raise ValueError("pages are not consecutive")
    last_nonzero = 0
    for page in pages:
        if not page.differential_is_zero():
            last_nonzero = page.r
    return max(1, last_nonzero + 1)


def abutment_check(pages: list[SSPage], total: dict[int, int]) -> bool:
    """Do the final-page graded dimensions sum to the given cohomology dims?"""
    if not pages:
        raise ValueError("no pages given")
    final = pages[-1].total_dims()
    degrees = set(final) | {n for n, v in total.items() if v}
    return all(final.get(n, 0) == total.get(n, 0) for n in degrees)


def associated_graded_of_cohomology(fc: FilteredComplex) -> dict[tuple[int, int], int]:
    """Direct route: dims of Gr_F^p H^n(K) from filtered cocycles.

    Gr^p H^n = ((Z^n meet F^p) + B^n) / ((Z^n meet F^{p+1}) + B^n); this does
    not use the page recursion, so it serves as an independent check of E_oo.
    """
    cx = fc.complex
    out: dict[tuple[int, int], int] = {}
    for n in cx.degrees():
        z = cx.cocycles(n)
        b = cx.coboundaries(n)
        for p in range(fc.p_min, fc.p_max + 1):
            top = z.intersect(fc.level(p, n)).sum_with(b)
            bot = z.intersect(fc.level(p + 1, n)).sum_with(b)
            d = top.dim - bot.dim
            if d:
                out[(p, n - p)] = d
    return out
