"""Edge spreading, coupled-code assembly, and cycle-window extraction.

A block code with protomatrix P is spread over a coupling width w by
partitioning its edges into components P_0 .. P_{w-1} with sum P.  The
coupled parity-check matrix repeats the stacked components L times on a
banded diagonal: block (r, c) of the assembled matrix is component
r - c whenever 0 <= r - c < w.

For cycle analysis the assembled matrix never has to be materialized at
full length: all cycles of length l live inside the leading submatrix
with 1 + floor((l+2)/4) * (w-1) block rows and 1 + floor(l/4) * (w-1)
block columns (the largest possible span of such a cycle), so checks on
that window are conclusive for every replication count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import BivariatePolyMatrix, Protomatrix, protograph_of
from .errors import InvalidSpreadError


class SpreadingSpec:
    """A partition of a block protograph into w components.

    The companion slot assignment maps each edge of an entry (in
    canonical sorted-slot order) to its component, component-major:
    component 0's edges first, then component 1's, and so on.  This
    makes despreading followed by spreading reproduce the components.
    """

    def __init__(self, components: Sequence[Protomatrix]):
        comps = tuple(components)
        if not comps:
            raise InvalidSpreadError("need at least one component")
        shape = (comps[0].rows, comps[0].cols)
        for c in comps:
            if (c.rows, c.cols) != shape:
                raise InvalidSpreadError("components must share dimensions")
        self.components = comps
        self.w = len(comps)
        self.rows, self.cols = shape

    @property
    def block(self) -> Protomatrix:
        total = np.zeros((self.rows, self.cols), dtype=np.int64)
        for c in self.components:
            total = total + c.mult
        return Protomatrix(total)

    def slot_assignment(self, i: int, j: int) -> tuple[int, ...]:
        """Component index per edge slot of block entry (i, j)."""
        out = []
        for t, comp in enumerate(self.components):
            out.extend([t] * int(comp.mult[i, j]))
        return tuple(out)

    @classmethod
    def trivial(cls, proto: Protomatrix) -> "SpreadingSpec":
        return cls((proto,))

    @classmethod
    def random(cls, proto: Protomatrix, w: int, rng: np.random.Generator) -> "SpreadingSpec":
        """Assign every edge independently and uniformly to a component."""
        if w < 1:
            raise InvalidSpreadError("coupling width must be >= 1")
        parts = [np.zeros((proto.rows, proto.cols), dtype=np.int64) for _ in range(w)]
        for i in range(proto.rows):
            for j in range(proto.cols):
                for _ in range(int(proto.mult[i, j])):
                    parts[int(rng.integers(w))][i, j] += 1
        return cls([Protomatrix(p) for p in parts])

    def __eq__(self, other):
        return isinstance(other, SpreadingSpec) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"SpreadingSpec(w={self.w}, block={self.rows}x{self.cols})"


def spread(matrix, spec: SpreadingSpec):
    """Split a block matrix into its w spread components.

    For a polynomial matrix the entry's monomials (in canonical sorted
    order) are routed to components according to the spec's slot
    assignment; for a protomatrix the spec itself is validated against
    the matrix and its components returned.
    """
    if isinstance(matrix, Protomatrix):
        if spec.block != matrix:
            raise InvalidSpreadError("components do not sum to the given protomatrix")
        return list(spec.components)
    if not isinstance(matrix, BivariatePolyMatrix):
        raise TypeError(f"cannot spread {type(matrix).__name__}")
    if (matrix.rows, matrix.cols) != (spec.rows, spec.cols):
        raise InvalidSpreadError("spec dimensions do not match the matrix")
    if spec.block != protograph_of(matrix):
        raise InvalidSpreadError("assignment is not a partition of the matrix edges")
    parts = [
        [[[] for _ in range(matrix.cols)] for _ in range(matrix.rows)]
        for _ in range(spec.w)
    ]
    for i in range(matrix.rows):
        for j in range(matrix.cols):
            assignment = spec.slot_assignment(i, j)
            for slot, mono in enumerate(matrix.entries[i][j]):
                parts[assignment[slot]][i][j].append(mono)
    return [
        BivariatePolyMatrix(matrix.rows, matrix.cols, matrix.sx, matrix.sy, p)
        for p in parts
    ]


def despread(components):
    """Entrywise union of the components (entrywise sum for protographs)."""
    comps = list(components)
    if not comps:
        raise InvalidSpreadError("nothing to despread")
    if all(isinstance(c, Protomatrix) for c in comps):
        return SpreadingSpec(comps).block
    first = comps[0]
    for c in comps:
        if (c.rows, c.cols, c.sx, c.sy) != (first.rows, first.cols, first.sx, first.sy):
            raise InvalidSpreadError("components must share dimensions and lifting factors")
    entries = [
        [
            [m for c in comps for m in c.entries[i][j]]
            for j in range(first.cols)
        ]
        for i in range(first.rows)
    ]
    try:
        merged = BivariatePolyMatrix(first.rows, first.cols, first.sx, first.sy, entries)
    except ValueError as exc:
        raise InvalidSpreadError(f"despread produces an invalid entry: {exc}") from exc
    if not merged.is_type_one:
        raise InvalidSpreadError(
            "despread merges terms with equal y-exponents into one entry; "
            "the reassembled block code would not be type-I"
        )
    return merged


def _banded_blocks(n_block_rows: int, n_block_cols: int, w: int):
    for r in range(n_block_rows):
        for c in range(max(0, r - w + 1), min(n_block_cols, r + 1)):
            yield r, c, r - c


def assemble_sc(components, L: int):
    """Banded replication of the stacked components, L batches wide.

    The result has (L + w - 1) block rows and L block columns, the
    terminated matrix of the coupled chain.
    """
    if L < 1:
        raise ValueError("replication count must be >= 1")
    comps = list(components)
    w = len(comps)
    return _place_blocks(comps, L + w - 1, L)


def crm_block_shape(w: int, ell: int) -> tuple[int, int]:
    """Block-row and block-column counts of the length-l cycle window."""
    if ell < 4 or ell % 2:
        raise ValueError("cycle length must be even and >= 4")
    return 1 + ((ell + 2) // 4) * (w - 1), 1 + (ell // 4) * (w - 1)


def crm(components, ell: int):
    """The leading cycle-relevant submatrix for cycles of length ell.

    Computed structurally from the banded placement, never by slicing a
    materialized full chain.
    """
    comps = list(components)
    n_rows, n_cols = crm_block_shape(len(comps), ell)
    return _place_blocks(comps, n_rows, n_cols)


def _place_blocks(comps, n_block_rows: int, n_block_cols: int):
    w = len(comps)
    first = comps[0]
    if isinstance(first, Protomatrix):
        m, n = first.rows, first.cols
        out = np.zeros((n_block_rows * m, n_block_cols * n), dtype=np.int64)
        for r, c, t in _banded_blocks(n_block_rows, n_block_cols, w):
            out[r * m : (r + 1) * m, c * n : (c + 1) * n] = comps[t].mult
        return Protomatrix(out)
    m, n = first.rows, first.cols
    entries = [
        [[] for _ in range(n_block_cols * n)] for _ in range(n_block_rows * m)
    ]
    for r, c, t in _banded_blocks(n_block_rows, n_block_cols, w):
        comp = comps[t]
        for i in range(m):
            for j in range(n):
                entries[r * m + i][c * n + j] = list(comp.entries[i][j])
    return BivariatePolyMatrix(
        n_block_rows * m, n_block_cols * n, first.sx, first.sy, entries
    )


@dataclass(frozen=True)
class ScStructure:
    """A spreading spec together with a replication count."""

    spec: SpreadingSpec
    L: int

    @property
    def m(self) -> int:
        return self.spec.rows

    @property
    def n(self) -> int:
        return self.spec.cols

    @property
    def block_rows(self) -> int:
        return (self.L + self.spec.w - 1) * self.m

    @property
    def block_cols(self) -> int:
        return self.L * self.n

    def assemble(self) -> Protomatrix:
        return assemble_sc(self.spec.components, self.L)


@dataclass(frozen=True)
class ScCode:
    """A constructed coupled code: concrete polynomial components."""

    components: tuple[BivariatePolyMatrix, ...]

    def __post_init__(self):
        if not self.components:
            raise InvalidSpreadError("a coupled code needs at least one component")

    @property
    def w(self) -> int:
        return len(self.components)

    @property
    def m(self) -> int:
        return self.components[0].rows

    @property
    def n(self) -> int:
        return self.components[0].cols

    @property
    def sx(self) -> int:
        return self.components[0].sx

    @property
    def sy(self) -> int:
        return self.components[0].sy

    def assemble(self, L: int) -> BivariatePolyMatrix:
        return assemble_sc(self.components, L)

    def crm(self, ell: int) -> BivariatePolyMatrix:
        return crm(self.components, ell)

    def block(self) -> BivariatePolyMatrix:
        return despread(self.components)

    def spreading_spec(self) -> SpreadingSpec:
        return SpreadingSpec([protograph_of(c) for c in self.components])

    def default_verification_reps(self, g: int) -> int:
        """Batches needed so the expansion strictly covers the largest window."""
        return (g // 4) * (self.w - 1) + 2
