"""Closed-path enumeration and cycle analysis at the polynomial level.

A closed path of even length l is a cyclic sequence of l monomial
instances where consecutive instances alternately share a row and a
column (transition k shares a row for odd k, a column for even k, with
the wrap-around transition l closing on a column).  Consecutive
instances must be distinct; revisiting an instance non-consecutively is
allowed and is exactly how exponent multiplicities beyond +-1 arise.

Such a path lifts to cycles in the expanded Tanner graph iff its
alternating exponent sums vanish modulo both lifting factors.

Paths are deduplicated by a canonical form: the lexicographically
smallest sequence over all parity-preserving rotations (step 2) of the
path and of its reversal.  A class with r distinct representations and
a cycle-condition-satisfying, non-degenerate structure lifts to exactly
r * S_x * S_y / l distinct simple cycles, which is S_x * S_y for the
generic, symmetry-free class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .algebra import BivariatePolyMatrix

Step = tuple[int, int, int]  # (row, col, slot)


def canonical_representations(steps: tuple) -> list[tuple]:
    """All parity-preserving representations of a closed path."""
    ell = len(steps)
    reps = []
    rev = steps[::-1]
    for base in (steps, rev):
        for r in range(0, ell, 2):
            reps.append(base[r:] + base[:r])
    return reps


def canonical_form(steps: tuple) -> tuple:
    return min(canonical_representations(steps))


@dataclass(frozen=True)
class ClosedPath:
    """A canonical closed path over a concrete bivariate matrix.

    sigma_x and sigma_y are the alternating sums sum_k (-1)^k s_k over
    the x- and y-exponents along the path (1-based positions).  kappa
    maps each visited instance (i, j, slot) to its net signed
    multiplicity in those sums.
    """

    steps: tuple[Step, ...]
    sigma_x: int
    sigma_y: int
    kappa: dict

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def representation_count(self) -> int:
        return len(set(canonical_representations(self.steps)))

    @classmethod
    def from_steps(cls, matrix: BivariatePolyMatrix, steps) -> "ClosedPath":
        steps = tuple(steps)
        sx_sum = 0
        sy_sum = 0
        kappa: dict = {}
        for pos, (i, j, k) in enumerate(steps, start=1):
            sign = -1 if pos % 2 else 1  # (-1)^pos, 1-based positions
            m = matrix.entries[i][j][k]
            sx_sum += sign * m.a
            sy_sum += sign * m.b
            kappa[(i, j, k)] = kappa.get((i, j, k), 0) + sign
        return cls(steps=steps, sigma_x=sx_sum, sigma_y=sy_sum, kappa=kappa)


class _Structure:
    """Row/column indexes over the monomial instances of a matrix."""

    def __init__(self, cells: dict):
        # cells: (i, j) -> number of slots
        self.steps: list[Step] = []
        for (i, j), count in sorted(cells.items()):
            for k in range(count):
                self.steps.append((i, j, k))
        self.by_row: dict[int, list[int]] = {}
        self.by_col: dict[int, list[int]] = {}
        self.by_cell: dict[tuple[int, int], list[int]] = {}
        for idx, (i, j, _) in enumerate(self.steps):
            self.by_row.setdefault(i, []).append(idx)
            self.by_col.setdefault(j, []).append(idx)
            self.by_cell.setdefault((i, j), []).append(idx)

    @classmethod
    def of_matrix(cls, matrix: BivariatePolyMatrix) -> "_Structure":
        cells = {}
        for i in range(matrix.rows):
            for j in range(matrix.cols):
                n = len(matrix.entries[i][j])
                if n:
                    cells[(i, j)] = n
        return cls(cells)


def _iter_step_cycles(structure: _Structure, ell: int, restrict_cols=None) -> Iterator[tuple]:
    """Canonical instance-id sequences of closed paths of length ell.

    With restrict_cols = n, only classes visiting at least one instance
    in a column < n are produced.
    """
    if ell < 4 or ell % 2:
        raise ValueError("path length must be even and >= 4")
    steps = structure.steps
    by_row = structure.by_row
    by_col = structure.by_col
    by_cell = structure.by_cell
    n_inst = len(steps)
    seq = [0] * ell

    def extend(depth: int, start: int):
        last = seq[depth - 1]
        li, lj, _ = steps[last]
        if depth == ell - 1:
            # Final step: must share a row with the previous instance and a
            # column with the start; candidates live in one cell.
            sj = steps[seq[0]][1]
            candidates = by_cell.get((li, sj), ())
        elif depth % 2:
            candidates = by_row[li]
        else:
            candidates = by_col[lj]
        for cand in candidates:
            if cand < start or cand == last:
                continue
            if depth == ell - 1 and cand == seq[0]:
                continue
            seq[depth] = cand
            if depth == ell - 1:
                tup = tuple(seq)
                if tup == canonical_form(tup):
                    if restrict_cols is None or any(
                        steps[s][1] < restrict_cols for s in tup
                    ):
                        yield tup
            else:
                yield from extend(depth + 1, start)

    for start in range(n_inst):
        seq[0] = start
        yield from extend(1, start)


def enumerate_closed_paths(
    matrix: BivariatePolyMatrix,
    ell: int,
    restrict_first_block_col: int | None = None,
) -> Iterator[ClosedPath]:
    """Stream each closed-path class of length ell exactly once.

    Classes are yielded as their canonical representative.  With
    restrict_first_block_col = n, only classes that touch a column with
    index < n are produced (used on cycle-window submatrices of coupled
    codes, where the banded periodic structure maps every cycle onto one
    that touches the leading block column).
    """
    structure = _Structure.of_matrix(matrix)
    for ids in _iter_step_cycles(structure, ell, restrict_first_block_col):
        yield ClosedPath.from_steps(matrix, (structure.steps[s] for s in ids))


def is_cycle(path: ClosedPath, sx: int, sy: int) -> bool:
    """Cycle condition: both alternating sums vanish modulo the factors."""
    return path.sigma_x % sx == 0 and path.sigma_y % sy == 0


def _expansion_is_simple(matrix: BivariatePolyMatrix, path: ClosedPath) -> bool:
    """Whether the lifted walk visits 2*l distinct nodes.

    Walks the path symbolically, tracking the (x, y) shift offset.  The
    walk starts at a variable node, crosses to a check on odd positions
    and back on even ones.  A repeated (block index, offset) pair means
    the lift closes early and produces shorter cycles instead of a
    simple cycle of the full length.
    """
    sx, sy = matrix.sx, matrix.sy
    off_a = 0
    off_b = 0
    checks = set()
    variables = {(path.steps[0][1], 0, 0)}
    for pos, (i, j, k) in enumerate(path.steps, start=1):
        m = matrix.entries[i][j][k]
        if pos % 2:
            off_a = (off_a + m.a) % sx
            off_b = (off_b + m.b) % sy
            node = (i, off_a, off_b)
            if node in checks:
                return False
            checks.add(node)
        else:
            off_a = (off_a - m.a) % sx
            off_b = (off_b - m.b) % sy
            node = (j, off_a, off_b)
            if pos < len(path.steps) and node in variables:
                return False
            variables.add(node)
    return True


def count_cycles(
    matrix: BivariatePolyMatrix,
    up_to_ell: int,
    sx: int | None = None,
    sy: int | None = None,
) -> dict[int, Fraction]:
    """Cycle class counts per length, normalized to the expansion orbit.

    N_l is defined so that the expanded Tanner graph contains exactly
    S_x * S_y * N_l simple cycles of length l.  A satisfying class whose
    lift stays simple contributes reps/l, which is 1 unless the path has
    a rotational or reflective self-symmetry (parallel-edge ping-pong
    paths are the typical symmetric case, contributing 1/2).  Classes
    whose lift closes early contribute nothing; their short cycles are
    counted at their own lengths.
    """
    sx = matrix.sx if sx is None else sx
    sy = matrix.sy if sy is None else sy
    counts: dict[int, Fraction] = {}
    for ell in range(4, up_to_ell + 1, 2):
        total = Fraction(0)
        for path in enumerate_closed_paths(matrix, ell):
            if not is_cycle(path, sx, sy):
                continue
            if not _expansion_is_simple(matrix, path):
                continue
            total += Fraction(path.representation_count, ell)
        counts[ell] = total
    return counts


def poly_girth(matrix: BivariatePolyMatrix, g_max: int, sx=None, sy=None):
    """Smallest lifted-cycle length below g_max, or math.inf.

    Checks lengths 4, 6, ..., g_max - 2; math.inf means the girth is at
    least g_max.  A satisfying class of minimal length always lifts to
    simple cycles (an early-closing lift would imply an even shorter
    satisfying class), so the congruence test alone is conclusive here.
    """
    if g_max % 2:
        raise ValueError("g_max must be even")
    sx = matrix.sx if sx is None else sx
    sy = matrix.sy if sy is None else sy
    for ell in range(4, g_max - 1, 2):
        for path in enumerate_closed_paths(matrix, ell):
            if is_cycle(path, sx, sy):
                return ell
    return math.inf
