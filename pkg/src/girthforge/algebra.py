"""Two-level circulant code algebra.

Protographs, one- and two-variable polynomial parity-check matrices, and
the expansion maps between the three representation levels.

The shift convention is fixed once for the whole package: the monomial
x^s at entry (i, j) of a matrix lifted with factor S places ones at
(i*S + t, j*S + ((t - s) mod S)) for t in [0, S).  Equivalently, x^s is
the identity with its columns rotated s places to the left.  The same
convention applies to the y level, so a two-level monomial x^a y^b first
expands into an S_y x S_y block of x^a entries and then into an
S_x S_y x S_x S_y permutation matrix.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np
import scipy.sparse as sp

from .errors import IncompleteMatrixError


class Monomial(NamedTuple):
    """One x^a y^b term.  Either exponent may be a placeholder name."""

    a: "int | str"
    b: "int | str"

    @property
    def is_determined(self) -> bool:
        return isinstance(self.a, int) and isinstance(self.b, int)

    def __str__(self):
        return f"x^{self.a} y^{self.b}"


def _mono_sort_key(m: Monomial):
    # Concrete exponents order before placeholders; placeholders by name.
    ka = (0, m.a, "") if isinstance(m.a, int) else (1, -1, m.a)
    kb = (0, m.b, "") if isinstance(m.b, int) else (1, -1, m.b)
    return (ka, kb)


def _reduce(value, modulus):
    if isinstance(value, str):
        return value
    return int(value) % modulus


class Protomatrix:
    """Nonnegative integer matrix of protograph edge multiplicities."""

    def __init__(self, mult):
        arr = np.asarray(mult, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("protomatrix must be two-dimensional")
        if arr.size and arr.min() < 0:
            raise ValueError("protomatrix entries must be >= 0")
        arr.setflags(write=False)
        self.mult = arr
        self.rows, self.cols = arr.shape

    @classmethod
    def regular(cls, dv: int, dc: int) -> "Protomatrix":
        """The dv x dc all-ones protograph of a (dv, dc)-regular ensemble."""
        if dv < 1 or dc < 1:
            raise ValueError("node degrees must be >= 1")
        return cls(np.ones((dv, dc), dtype=np.int64))

    def row_weights(self) -> np.ndarray:
        return self.mult.sum(axis=1)

    def col_weights(self) -> np.ndarray:
        return self.mult.sum(axis=0)

    @property
    def design_rate(self) -> float:
        """1 - M/N; reported for reference, never enforced."""
        return 1.0 - self.rows / self.cols

    @property
    def max_multiplicity(self) -> int:
        return int(self.mult.max()) if self.mult.size else 0

    @property
    def total_edges(self) -> int:
        return int(self.mult.sum())

    def __eq__(self, other):
        return (
            isinstance(other, Protomatrix)
            and self.mult.shape == other.mult.shape
            and np.array_equal(self.mult, other.mult)
        )

    def __hash__(self):
        return hash((self.mult.shape, self.mult.tobytes()))

    def __add__(self, other):
        if not isinstance(other, Protomatrix):
            return NotImplemented
        return Protomatrix(self.mult + other.mult)

    def __repr__(self):
        return f"Protomatrix({self.mult.tolist()!r})"


class BivariatePolyMatrix:
    """Matrix whose entries are sets of x^a y^b monomials.

    Entries are stored as sorted tuples, so equality is entry-set
    equality.  Monomials within an entry must be distinct as (a, b)
    pairs.  Entries whose terms additionally carry pairwise distinct
    y-exponents expand into a type-I one-level matrix (only zeros and
    monomials); the constructions enforce that, general matrices need
    not satisfy it.
    """

    def __init__(self, rows, cols, sx, sy, entries):
        if sx < 1 or sy < 1:
            raise ValueError("lifting factors must be >= 1")
        self.rows = int(rows)
        self.cols = int(cols)
        self.sx = int(sx)
        self.sy = int(sy)
        norm = []
        for i in range(self.rows):
            row = []
            for j in range(self.cols):
                monos = [
                    Monomial(_reduce(m[0], self.sx), _reduce(m[1], self.sy))
                    for m in entries[i][j]
                ]
                monos.sort(key=_mono_sort_key)
                if len(set(monos)) != len(monos):
                    raise ValueError(f"entry ({i}, {j}) repeats a monomial")
                row.append(tuple(monos))
            norm.append(tuple(row))
        self.entries = tuple(norm)

    @property
    def is_type_one(self) -> bool:
        """Distinct y-exponents everywhere, so y-expansion is type-I."""
        for i in range(self.rows):
            for j in range(self.cols):
                bs = [m.b for m in self.entries[i][j] if isinstance(m.b, int)]
                if len(set(bs)) != len(bs):
                    return False
        return True

    @classmethod
    def zeros(cls, rows, cols, sx, sy):
        return cls(rows, cols, sx, sy, [[[] for _ in range(cols)] for _ in range(rows)])

    def entry(self, i, j) -> tuple[Monomial, ...]:
        return self.entries[i][j]

    def iter_monomials(self):
        """Yield (i, j, slot, monomial) over all terms in sorted entry order."""
        for i in range(self.rows):
            for j in range(self.cols):
                for k, m in enumerate(self.entries[i][j]):
                    yield i, j, k, m

    @property
    def monomial_count(self) -> int:
        return sum(len(self.entries[i][j]) for i in range(self.rows) for j in range(self.cols))

    @property
    def is_determined(self) -> bool:
        return all(m.is_determined for _, _, _, m in self.iter_monomials())

    def substitute(self, values: dict) -> "BivariatePolyMatrix":
        """Replace placeholder names by concrete exponents."""

        def conc(v):
            if isinstance(v, str):
                if v not in values:
                    raise KeyError(f"no value for placeholder {v!r}")
                return int(values[v])
            return v

        entries = [
            [[(conc(m.a), conc(m.b)) for m in self.entries[i][j]] for j in range(self.cols)]
            for i in range(self.rows)
        ]
        return BivariatePolyMatrix(self.rows, self.cols, self.sx, self.sy, entries)

    def __eq__(self, other):
        return (
            isinstance(other, BivariatePolyMatrix)
            and (self.rows, self.cols, self.sx, self.sy)
            == (other.rows, other.cols, other.sx, other.sy)
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.sx, self.sy, self.entries))

    def __repr__(self):
        return (
            f"BivariatePolyMatrix({self.rows}x{self.cols}, sx={self.sx}, "
            f"sy={self.sy}, {self.monomial_count} monomials)"
        )


class UnivariatePolyMatrix:
    """Matrix of x-exponent sets over a single lifting factor."""

    def __init__(self, rows, cols, s, entries):
        if s < 1:
            raise ValueError("lifting factor must be >= 1")
        self.rows = int(rows)
        self.cols = int(cols)
        self.s = int(s)
        norm = []
        for i in range(self.rows):
            row = []
            for j in range(self.cols):
                exps = sorted(int(e) % self.s for e in entries[i][j])
                if len(set(exps)) != len(exps):
                    raise ValueError(f"entry ({i}, {j}) repeats an exponent")
                row.append(tuple(exps))
            norm.append(tuple(row))
        self.entries = tuple(norm)

    def entry(self, i, j) -> tuple[int, ...]:
        return self.entries[i][j]

    @property
    def is_type_one(self) -> bool:
        """True when every entry holds at most one monomial."""
        return all(
            len(self.entries[i][j]) <= 1 for i in range(self.rows) for j in range(self.cols)
        )

    @property
    def monomial_count(self) -> int:
        return sum(len(self.entries[i][j]) for i in range(self.rows) for j in range(self.cols))

    def __eq__(self, other):
        return (
            isinstance(other, UnivariatePolyMatrix)
            and (self.rows, self.cols, self.s) == (other.rows, other.cols, other.s)
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.s, self.entries))

    def __repr__(self):
        return f"UnivariatePolyMatrix({self.rows}x{self.cols}, s={self.s})"


class BinaryPcm:
    """Sparse binary parity-check matrix."""

    def __init__(self, rows, cols, one_rows: Iterable[int], one_cols: Iterable[int]):
        rr = np.asarray(list(one_rows), dtype=np.int64)
        cc = np.asarray(list(one_cols), dtype=np.int64)
        if rr.shape != cc.shape:
            raise ValueError("row and column index lists must have equal length")
        data = np.ones(len(rr), dtype=np.uint8)
        mat = sp.csr_matrix((data, (rr, cc)), shape=(rows, cols))
        if mat.nnz and mat.data.max() > 1:
            raise ValueError("duplicate one-positions")
        self.matrix = mat
        self.rows = int(rows)
        self.cols = int(cols)

    @classmethod
    def from_dense(cls, arr) -> "BinaryPcm":
        arr = np.asarray(arr)
        rr, cc = np.nonzero(arr)
        return cls(arr.shape[0], arr.shape[1], rr, cc)

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def coords(self) -> list[tuple[int, int]]:
        coo = self.matrix.tocoo()
        return sorted(zip(coo.row.tolist(), coo.col.tolist()))

    @property
    def num_ones(self) -> int:
        return int(self.matrix.nnz)

    def row_weights(self) -> np.ndarray:
        return np.asarray(self.matrix.sum(axis=1)).ravel()

    def col_weights(self) -> np.ndarray:
        return np.asarray(self.matrix.sum(axis=0)).ravel()

    def __eq__(self, other):
        return (
            isinstance(other, BinaryPcm)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.coords() == other.coords()
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.coords())))

    def __repr__(self):
        return f"BinaryPcm({self.rows}x{self.cols}, {self.num_ones} ones)"


def y_expand(hxy: BivariatePolyMatrix) -> UnivariatePolyMatrix:
    """Expand the y level: every entry becomes an S_y x S_y circulant block.

    A monomial x^a y^b contributes x^a at block positions
    (t, (t - b) mod S_y).  Distinct y-exponents within an entry guarantee
    the result is type-I on each block cell.
    """
    if not hxy.is_determined:
        raise IncompleteMatrixError("matrix still contains symbolic exponents")
    sy = hxy.sy
    out = [[[] for _ in range(hxy.cols * sy)] for _ in range(hxy.rows * sy)]
    for i, j, _, m in hxy.iter_monomials():
        for t in range(sy):
            out[i * sy + t][j * sy + (t - m.b) % sy].append(m.a)
    return UnivariatePolyMatrix(hxy.rows * sy, hxy.cols * sy, hxy.sx, out)


def x_expand(hx: UnivariatePolyMatrix) -> BinaryPcm:
    """Expand each exponent into an S x S cyclic permutation matrix."""
    s = hx.s
    t = np.arange(s)
    rr: list[np.ndarray] = []
    cc: list[np.ndarray] = []
    for i in range(hx.rows):
        for j in range(hx.cols):
            for e in hx.entries[i][j]:
                rr.append(i * s + t)
                cc.append(j * s + (t - e) % s)
    if rr:
        rows = np.concatenate(rr)
        cols = np.concatenate(cc)
    else:
        rows = cols = np.empty(0, dtype=np.int64)
    return BinaryPcm(hx.rows * s, hx.cols * s, rows, cols)


def full_expand(hxy: BivariatePolyMatrix) -> BinaryPcm:
    """Both expansion levels; each monomial contributes S_x * S_y ones."""
    return x_expand(y_expand(hxy))


def protograph_of(hxy: BivariatePolyMatrix) -> Protomatrix:
    """Edge multiplicities: the term count of each entry."""
    mult = [
        [len(hxy.entries[i][j]) for j in range(hxy.cols)] for i in range(hxy.rows)
    ]
    return Protomatrix(np.asarray(mult, dtype=np.int64).reshape(hxy.rows, hxy.cols))
