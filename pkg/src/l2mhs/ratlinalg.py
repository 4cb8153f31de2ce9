"""Exact rational linear algebra.

Everything in this package reduces to ranks, kernels and canonical echelon
forms of matrices over Q.  Coefficients are ``fractions.Fraction`` (always
reduced, positive denominator); elimination is fraction-free Bareiss on
integer-cleared rows, so no floating point and no tolerance enter anywhere.

Pivot choice is the first nonzero entry in column-major order, which makes
every result deterministic across platforms.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Sequence

Rat = Fraction

#: matrices with at most this fill ratio are kept in sparse (dict) storage
SPARSE_FILL_THRESHOLD = Fraction(1, 4)


def rat(value) -> Fraction:
    """Coerce ints, Fractions and exact strings like ``"3/4"`` to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def _row_lcm_scale(row: Sequence[Fraction]) -> list[int]:
    """Scale a row of Fractions by the lcm of denominators; returns ints."""
    denom = 1
    for x in row:
        d = x.denominator
        denom = denom // gcd(denom, d) * d
    return [int(x * denom) for x in row]


class RatMatrix:
    """Immutable matrix over Q.

    Storage is a map (row, col) -> Fraction when the fill is at most
    SPARSE_FILL_THRESHOLD, dense row lists otherwise; the choice is an
    internal detail and never observable through the API.
    """

    __slots__ = ("nrows", "ncols", "_data", "_rows", "_rank")

    def __init__(self, nrows: int, ncols: int, entries: dict):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimensions")
        self.nrows = nrows
        self.ncols = ncols
        clean = {}
        for (i, j), v in entries.items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValueError(f"entry ({i},{j}) outside {nrows}x{ncols}")
            v = rat(v)
            if v != 0:
                clean[(i, j)] = v
        cells = nrows * ncols
        if cells > 0 and Fraction(len(clean), cells) > SPARSE_FILL_THRESHOLD:
            rows = [[Fraction(0)] * ncols for _ in range(nrows)]
            for (i, j), v in clean.items():
                rows[i][j] = v
            self._rows = rows
            self._data = None
        else:
            self._data = clean
            self._rows = None
        self._rank = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(r):
                v = rat(v)
                if v != 0:
                    entries[(i, j)] = v
        return cls(nrows, ncols, entries)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls(nrows, ncols, {})

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "RatMatrix":
        columns = [list(c) for c in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        entries = {}
        for j, c in enumerate(columns):
            if len(c) != nrows:
                raise ValueError("ragged columns")
            for i, v in enumerate(c):
                v = rat(v)
                if v != 0:
                    entries[(i, j)] = v
        return cls(nrows, len(columns), entries)

    # -- access ------------------------------------------------------------

    def entry(self, i: int, j: int) -> Fraction:
        if self._rows is not None:
            return self._rows[i][j]
        return self._data.get((i, j), Fraction(0))

    def iter_nonzero(self) -> Iterator[tuple[int, int, Fraction]]:
        if self._rows is not None:
            for i, row in enumerate(self._rows):
                for j, v in enumerate(row):
                    if v != 0:
                        yield i, j, v
        else:
            for (i, j), v in sorted(self._data.items()):
                yield i, j, v

    def rows(self) -> list[list[Fraction]]:
        """Dense copy of the rows (safe to mutate)."""
        if self._rows is not None:
            return [list(r) for r in self._rows]
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self._data.items():
            out[i][j] = v
        return out

    def column(self, j: int) -> list[Fraction]:
        return [self.entry(i, j) for i in range(self.nrows)]

    def columns(self) -> list[list[Fraction]]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        if self._rows is not None:
            return all(v == 0 for row in self._rows for v in row)
        return not self._data

    def nnz(self) -> int:
        if self._rows is not None:
            return sum(1 for row in self._rows for v in row if v != 0)
        return len(self._data)

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return dict(((i, j), v) for i, j, v in self.iter_nonzero()) == dict(
            ((i, j), v) for i, j, v in other.iter_nonzero()
        )

    def __hash__(self):
        return hash((self.shape, tuple(sorted((i, j, v) for i, j, v in self.iter_nonzero()))))

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.nrows, self.ncols, {(i, j): -v for i, j, v in self.iter_nonzero()})

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        entries = dict(((i, j), v) for i, j, v in self.iter_nonzero())
        for i, j, v in other.iter_nonzero():
            entries[(i, j)] = entries.get((i, j), Fraction(0)) + v
        return RatMatrix(self.nrows, self.ncols, entries)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)

    def scaled(self, c) -> "RatMatrix":
        c = rat(c)
        return RatMatrix(self.nrows, self.ncols, {(i, j): c * v for i, j, v in self.iter_nonzero()})

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        # group the right factor by row so sparse x sparse stays cheap
        right_rows: dict[int, list[tuple[int, Fraction]]] = {}
        for k, j, v in other.iter_nonzero():
            right_rows.setdefault(k, []).append((j, v))
        entries: dict[tuple[int, int], Fraction] = {}
        for i, k, a in self.iter_nonzero():
            for j, b in right_rows.get(k, ()):
                key = (i, j)
                entries[key] = entries.get(key, Fraction(0)) + a * b
        return RatMatrix(self.nrows, other.ncols, entries)

    def apply(self, vector: Sequence) -> list[Fraction]:
        """Matrix-vector product (vector is a column of length ncols)."""
        vec = [rat(v) for v in vector]
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        out = [Fraction(0)] * self.nrows
        for i, j, v in self.iter_nonzero():
            if vec[j] != 0:
                out[i] += v * vec[j]
        return out

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.ncols, self.nrows, {(j, i): v for i, j, v in self.iter_nonzero()})

    @classmethod
    def hstack(cls, blocks: Sequence["RatMatrix"]) -> "RatMatrix":
        blocks = list(blocks)
        if not blocks:
            return cls.zeros(0, 0)
        nrows = blocks[0].nrows
        entries = {}
        off = 0
        for b in blocks:
            if b.nrows != nrows:
                raise ValueError("hstack row mismatch")
            for i, j, v in b.iter_nonzero():
                entries[(i, j + off)] = v
            off += b.ncols
        return cls(nrows, off, entries)

    @classmethod
    def vstack(cls, blocks: Sequence["RatMatrix"]) -> "RatMatrix":
        blocks = list(blocks)
        if not blocks:
            return cls.zeros(0, 0)
        ncols = blocks[0].ncols
        entries = {}
        off = 0
        for b in blocks:
            if b.ncols != ncols:
                raise ValueError("vstack column mismatch")
            for i, j, v in b.iter_nonzero():
                entries[(i + off, j)] = v
            off += b.nrows
        return cls(off, ncols, entries)

    @classmethod
    def block_diagonal(cls, blocks: Sequence["RatMatrix"]) -> "RatMatrix":
        entries = {}
        roff = coff = 0
        for b in blocks:
            for i, j, v in b.iter_nonzero():
                entries[(i + roff, j + coff)] = v
            roff += b.nrows
            coff += b.ncols
        return cls(roff, coff, entries)

    def __repr__(self):
        return f"RatMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # -- elimination --------------------------------------------------------

    def rank(self) -> int:
        if self._rank is None:
            self._rank = len(_bareiss_ref(self)[1])
        return self._rank

    def rref(self) -> tuple[list[int], list[list[Fraction]]]:
        """Canonical reduced row echelon form over Q.

        Returns (pivot_columns, rows); only the nonzero rows are returned and
        each pivot entry is 1 with zeros above and below.
        """
        ref_rows, pivots = _bareiss_ref(self)
        rows = [[Fraction(x) for x in ref_rows[r]] for r in range(len(pivots))]
        # normalize pivots to 1, then clear above
        for r, pc in enumerate(pivots):
            pv = rows[r][pc]
            rows[r] = [x / pv for x in rows[r]]
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            for s in range(r):
                f = rows[s][pc]
                if f != 0:
                    rows[s] = [a - f * b for a, b in zip(rows[s], rows[r])]
        return list(pivots), rows

    def inverse(self) -> "RatMatrix":
        if self.nrows != self.ncols:
            raise ValueError("only square matrices can be inverted")
        n = self.nrows
        augmented = RatMatrix.hstack([self, RatMatrix.identity(n)])
        pivots, rows = augmented.rref()
        if pivots[:n] != list(range(n)) or len(pivots) != n:
            raise ValueError("matrix is singular")
        return RatMatrix.from_rows([r[n:] for r in rows])

    def kernel_basis(self) -> list[list[Fraction]]:
        """Vectors spanning ker(self); count = ncols - rank, exact."""
        pivots, rows = self.rref()
        pivot_set = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivot_set]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -rows[r][f]
            basis.append(v)
        return basis


def _bareiss_ref(m: RatMatrix) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Rows are cleared to integers first (row scaling changes neither rank,
    kernel nor pivot columns).  Returns (rows, pivot_columns); the first
    len(pivot_columns) rows are the echelon rows.
    """
    rows = [_row_lcm_scale(r) for r in m.rows()]
    nrows, ncols = m.nrows, m.ncols
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rr = rows[r]
        for i in range(r + 1, nrows):
            ri = rows[i]
            fi = ri[c]
            # rows with fi == 0 are still rescaled by piv/prev: entries must
            # stay minors of the input for the exact division to hold
            for j in range(c, ncols):
                ri[j] = (piv * ri[j] - fi * rr[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(m: RatMatrix) -> int:
    return m.rank()


def kernel_basis(m: RatMatrix) -> list[list[Fraction]]:
    return m.kernel_basis()


class Subspace:
    """Subspace of Q^n held in canonical reduced echelon form.

    The basis rows are RREF rows, so two Subspace objects are equal iff the
    subspaces coincide; reduction modulo a subspace is canonical.
    """

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient: int, rows: Sequence[Sequence[Fraction]], pivots: Sequence[int]):
        self.ambient = ambient
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise ValueError("vector length does not match ambient dimension")
        if not vecs:
            return cls(ambient, [], [])
        pivots, rows = RatMatrix.from_rows(vecs, ambient).rref()
        return cls(ambient, rows, pivots)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, [], [])

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        rows = [[Fraction(1) if i == j else Fraction(0) for j in range(ambient)] for i in range(ambient)]
        return cls(ambient, rows, range(ambient))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis_vectors(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def reduce(self, vector: Sequence) -> list[Fraction]:
        """Canonical residue of a vector modulo this subspace."""
        v = [rat(x) for x in vector]
        if len(v) != self.ambient:
            raise ValueError("vector length does not match ambient dimension")
        for row, pc in zip(self.rows, self.pivots):
            f = v[pc]
            if f != 0:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vector: Sequence) -> bool:
        return all(x == 0 for x in self.reduce(vector))

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.rows == other.rows

    def __hash__(self):
        return hash((self.ambient, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def sum_with(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return Subspace.from_vectors(self.ambient, list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: reduce [[A A],[B 0]]; zero-left rows give A cap B."""
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        n = self.ambient
        stacked = []
        for r in self.rows:
            stacked.append(list(r) + list(r))
        for r in other.rows:
            stacked.append(list(r) + [Fraction(0)] * n)
        if not stacked:
            return Subspace.zero(n)
        _, rows = RatMatrix.from_rows(stacked, 2 * n).rref()
        meet = [row[n:] for row in rows if all(x == 0 for x in row[:n])]
        return Subspace.from_vectors(n, meet)

    def preimage_under(self, m: RatMatrix) -> "Subspace":
        """{x : m.x in self} for m acting on columns of length m.ncols."""
        if m.nrows != self.ambient:
            raise ValueError("map target does not match ambient")
        k = self.dim
        entries = dict(((i, j), v) for i, j, v in m.iter_nonzero())
        for t, row in enumerate(self.rows):
            for i, v in enumerate(row):
                if v != 0:
                    entries[(i, m.ncols + t)] = -v
        block = RatMatrix(self.ambient, m.ncols + k, entries)
        vectors = [v[: m.ncols] for v in block.kernel_basis()]
        return Subspace.from_vectors(m.ncols, vectors)

    def image_under(self, m: RatMatrix) -> "Subspace":
        """Image of this subspace under the matrix (acting on columns)."""
        if m.ncols != self.ambient:
            raise ValueError("map source does not match ambient")
        return Subspace.from_vectors(m.nrows, [m.apply(r) for r in self.rows])


def column_space(m: RatMatrix) -> Subspace:
    return Subspace.from_vectors(m.nrows, [m.column(j) for j in range(m.ncols)])


class Quotient:
    """Subquotient V/W of Q^n with a canonical representative basis.

    Representatives live in the complement of W inside V cut out by zeroing
    the W-pivot coordinates, so coordinates of a class are read off at the
    representative pivots after reduction mod W.
    """

    __slots__ = ("space", "sub", "rows", "pivots")

    def __init__(self, space: Subspace, sub: Subspace):
        if not sub.is_subspace_of(space):
            raise ValueError("denominator is not contained in numerator")
        self.space = space
        self.sub = sub
        reduced = [sub.reduce(r) for r in space.rows]
        reps = Subspace.from_vectors(space.ambient, reduced)
        self.rows = reps.rows
        self.pivots = reps.pivots

    @property
    def dim(self) -> int:
        return self.space.dim - self.sub.dim

    @property
    def ambient(self) -> int:
        return self.space.ambient

    def lift(self, index: int) -> list[Fraction]:
        return list(self.rows[index])

    def lifts(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def coords(self, vector: Sequence) -> list[Fraction]:
        """Coordinates of [vector] in the representative basis."""
        residue = self.sub.reduce(vector)
        out = []
        v = list(residue)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            out.append(c)
            if c != 0:
                v = [a - c * b for a, b in zip(v, row)]
        if any(x != 0 for x in v):
            raise ValueError("vector does not lie in the subquotient numerator")
        return out

    def __repr__(self):
        return f"Quotient(dim={self.dim}, ambient={self.ambient})"
