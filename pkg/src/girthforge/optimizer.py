"""Greedy cost-table construction of high-girth two-level codes.

The construction keeps a symbolic template of the matrix under
optimization: one x- and one y-exponent variable per edge of the block
protograph, shared by every replication of that edge inside the cycle
window of a coupled code.  All closed paths of the relevant lengths are
enumerated once per template; each path is stored as the signed
multiplicity vector of the variables in its alternating exponent sums,
so evaluating which paths currently lift to cycles is a sparse
matrix-vector product.

For a path with multiplicity kappa in a variable of current value s0
and alternating sum Sigma, the candidate values s' that would turn the
path into lifted cycles solve kappa * (s0 - s') == Sigma modulo the
lifting factor; every solution adds the path's length weight to the
variable's cost-table row.  One greedy step moves the single exponent
with the largest strictly positive cost reduction; the total weighted
cycle count decreases by exactly that reduction, so descents terminate.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .algebra import BivariatePolyMatrix, Monomial, Protomatrix
from .cycles import _Structure, _iter_step_cycles, poly_girth
from .errors import ConstructionFailure
from .spreading import (
    ScCode,
    SpreadingSpec,
    _banded_blocks,
    crm,
    crm_block_shape,
    spread,
)


def length_weights(g: int) -> dict[int, int]:
    """Powers-of-five weights for counted cycle lengths 4 .. g-2.

    Anchored so that length 10 has weight 1 for targets up to 12; for
    larger targets the longest counted length gets weight 1 and shorter
    lengths continue the powers-of-five pattern.
    """
    top = max(g - 2, 10)
    return {ell: 5 ** ((top - ell) // 2) for ell in range(4, g - 1, 2)}


@dataclass(frozen=True)
class ExponentVariable:
    """One undetermined exponent of the template."""

    id: int
    axis: str  # "x" or "y"
    modulus: int
    name: str
    home: tuple  # (component, block row, block col, slot)


class ConstructionTemplate:
    """Symbolic cycle window of a (possibly coupled) code under construction.

    For coupling width 1 the window degenerates to the block matrix
    itself.  Variables are numbered component-major, then row-major over
    the block entries, matching the usual pencil-and-paper labelling
    a1, a2, ... / b1, b2, ...
    """

    def __init__(self, spec: SpreadingSpec, sx: int, sy: int, window_ell: int):
        if sx < 1 or sy < 1:
            raise ValueError("lifting factors must be >= 1")
        self.spec = spec
        self.sx = sx
        self.sy = sy
        self.window_ell = window_ell

        self.x_vars: list[ExponentVariable] = []
        self.y_vars: list[ExponentVariable] = []
        self._slot_refs: dict[tuple, list[tuple[int, int]]] = {}
        self.y_groups: list[tuple[int, ...]] = []
        for t, comp in enumerate(spec.components):
            for i in range(comp.rows):
                for j in range(comp.cols):
                    mult = int(comp.mult[i, j])
                    if not mult:
                        continue
                    refs = []
                    for k in range(mult):
                        xid = len(self.x_vars)
                        yid = len(self.y_vars)
                        self.x_vars.append(
                            ExponentVariable(xid, "x", sx, f"a{xid + 1}", (t, i, j, k))
                        )
                        self.y_vars.append(
                            ExponentVariable(yid, "y", sy, f"b{yid + 1}", (t, i, j, k))
                        )
                        refs.append((xid, yid))
                    self._slot_refs[(t, i, j)] = refs
                    if mult > 1:
                        if mult > sy:
                            raise ValueError(
                                f"entry multiplicity {mult} needs a y-lifting factor "
                                f">= {mult} to keep y-exponents distinct (got {sy})"
                            )
                        self.y_groups.append(tuple(yid for _, yid in refs))

        m, n = spec.rows, spec.cols
        n_rows, n_cols = crm_block_shape(spec.w, window_ell)
        cells: dict[tuple[int, int], int] = {}
        cell_refs: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for r, c, t in _banded_blocks(n_rows, n_cols, spec.w):
            comp = spec.components[t]
            for i in range(m):
                for j in range(n):
                    refs = self._slot_refs.get((t, i, j))
                    if refs:
                        cell = (r * m + i, c * n + j)
                        cells[cell] = len(refs)
                        cell_refs[cell] = refs
        self.structure = _Structure(cells)
        # Per enumerated instance: the shared variable ids behind it.
        self.inst_x = np.array(
            [cell_refs[(i, j)][k][0] for (i, j, k) in self.structure.steps],
            dtype=np.int64,
        )
        self.inst_y = np.array(
            [cell_refs[(i, j)][k][1] for (i, j, k) in self.structure.steps],
            dtype=np.int64,
        )
        self.restrict_cols = n
        self.grid_rows = n_rows * m
        self.grid_cols = n_cols * n

    @property
    def n_x(self) -> int:
        return len(self.x_vars)

    @property
    def n_y(self) -> int:
        return len(self.y_vars)

    @classmethod
    def for_block(cls, proto: Protomatrix, sx: int, sy: int, g: int):
        return cls(SpreadingSpec.trivial(proto), sx, sy, max(g - 2, 4))

    @classmethod
    def for_window(cls, spec: SpreadingSpec, sx: int, sy: int, g: int):
        return cls(spec, sx, sy, max(g - 2, 4))

    def random_values(self, rng: np.random.Generator):
        """Uniform x-exponents; y-exponents drawn distinct per entry."""
        a = rng.integers(0, self.sx, size=self.n_x, dtype=np.int64)
        b = rng.integers(0, self.sy, size=self.n_y, dtype=np.int64)
        for group in self.y_groups:
            picks = rng.choice(self.sy, size=len(group), replace=False)
            b[list(group)] = picks
        return a, b

    def realize(self, a, b) -> ScCode:
        comps = []
        for t, comp in enumerate(self.spec.components):
            entries = [
                [
                    [
                        Monomial(int(a[x]), int(b[y]))
                        for x, y in self._slot_refs.get((t, i, j), ())
                    ]
                    for j in range(comp.cols)
                ]
                for i in range(comp.rows)
            ]
            comps.append(
                BivariatePolyMatrix(comp.rows, comp.cols, self.sx, self.sy, entries)
            )
        return ScCode(tuple(comps))

    def symbolic_components(self) -> tuple[BivariatePolyMatrix, ...]:
        names_a = {v.id: v.name for v in self.x_vars}
        names_b = {v.id: v.name for v in self.y_vars}
        comps = []
        for t, comp in enumerate(self.spec.components):
            entries = [
                [
                    [
                        Monomial(names_a[x], names_b[y])
                        for x, y in self._slot_refs.get((t, i, j), ())
                    ]
                    for j in range(comp.cols)
                ]
                for i in range(comp.rows)
            ]
            comps.append(
                BivariatePolyMatrix(comp.rows, comp.cols, self.sx, self.sy, entries)
            )
        return tuple(comps)

    def symbolic_window(self) -> BivariatePolyMatrix:
        return crm(self.symbolic_components(), self.window_ell)


@dataclass
class PathInventory:
    """All closed-path classes of a template, as multiplicity vectors."""

    lengths: np.ndarray  # (classes,)
    weights: np.ndarray  # (classes,) length weight per class
    kx: sp.csr_matrix  # (classes, n_x) signed multiplicities
    ky: sp.csr_matrix
    x_inc: tuple[np.ndarray, np.ndarray, np.ndarray]  # class, variable, kappa
    y_inc: tuple[np.ndarray, np.ndarray, np.ndarray]

    @property
    def n_classes(self) -> int:
        return len(self.lengths)


def build_path_inventory(template: ConstructionTemplate, g: int) -> PathInventory:
    """Enumerate every counted path class once and freeze its structure.

    The enumeration is restricted to classes touching the leading block
    column; by the banded periodicity of the window this loses nothing.
    """
    weights = length_weights(g)
    inst_x = template.inst_x
    inst_y = template.inst_y
    lengths: list[int] = []
    x_cls: list[int] = []
    x_var: list[int] = []
    x_kap: list[int] = []
    y_cls: list[int] = []
    y_var: list[int] = []
    y_kap: list[int] = []
    idx = 0
    for ell in range(4, g - 1, 2):
        for ids in _iter_step_cycles(template.structure, ell, template.restrict_cols):
            acc_x: dict[int, int] = {}
            acc_y: dict[int, int] = {}
            for pos, inst in enumerate(ids, start=1):
                sign = -1 if pos % 2 else 1
                vx = int(inst_x[inst])
                vy = int(inst_y[inst])
                acc_x[vx] = acc_x.get(vx, 0) + sign
                acc_y[vy] = acc_y.get(vy, 0) + sign
            for v, k in acc_x.items():
                if k:
                    x_cls.append(idx)
                    x_var.append(v)
                    x_kap.append(k)
            for v, k in acc_y.items():
                if k:
                    y_cls.append(idx)
                    y_var.append(v)
                    y_kap.append(k)
            lengths.append(ell)
            idx += 1
    lengths_arr = np.array(lengths, dtype=np.int64)
    weight_arr = np.array([weights[ell] for ell in lengths], dtype=np.float64)

    def _csr(cls_idx, var_idx, kap, n_vars):
        return sp.csr_matrix(
            (
                np.array(kap, dtype=np.int64),
                (np.array(cls_idx, dtype=np.int64), np.array(var_idx, dtype=np.int64)),
            ),
            shape=(idx, n_vars),
        )

    return PathInventory(
        lengths=lengths_arr,
        weights=weight_arr,
        kx=_csr(x_cls, x_var, x_kap, template.n_x),
        ky=_csr(y_cls, y_var, y_kap, template.n_y),
        x_inc=(
            np.array(x_cls, dtype=np.int64),
            np.array(x_var, dtype=np.int64),
            np.array(x_kap, dtype=np.int64),
        ),
        y_inc=(
            np.array(y_cls, dtype=np.int64),
            np.array(y_var, dtype=np.int64),
            np.array(y_kap, dtype=np.int64),
        ),
    )


@dataclass
class CostTables:
    """Per-variable, per-candidate-value weighted short-cycle counts."""

    x: np.ndarray  # (n_x, sx)
    y: np.ndarray  # (n_y, sy); infeasible y-values hold +inf
    weights: dict[int, int]


def _sigma(inventory: PathInventory, a: np.ndarray, b: np.ndarray):
    return inventory.kx @ a, inventory.ky @ b


def _accumulate_axis(table_flat, inc, sigma_axis, sat_other, values, modulus, weights):
    cls_all, var_all, kap_all = inc
    gate = sat_other[cls_all]
    cls_g = cls_all[gate]
    var_g = var_all[gate]
    kap_g = kap_all[gate]
    if not len(cls_g):
        return
    rhs_all = (kap_g * values[var_g] - sigma_axis[cls_g]) % modulus
    for kval in np.unique(kap_g):
        mask = kap_g == kval
        rhs = rhs_all[mask]
        d = math.gcd(int(kval), modulus)
        step = modulus // d
        divisible = rhs % d == 0
        if not divisible.any():
            continue
        rhs_d = rhs[divisible] // d
        if step == 1:
            base = np.zeros(len(rhs_d), dtype=np.int64)
        else:
            inv = pow((int(kval) // d) % step, -1, step)
            base = (rhs_d * inv) % step
        var_sel = var_g[mask][divisible]
        wt_sel = weights[cls_g[mask][divisible]]
        for rep in range(d):
            flat = var_sel * modulus + base + rep * step
            table_flat += np.bincount(flat, weights=wt_sel, minlength=len(table_flat))


def build_cost_tables(
    template: ConstructionTemplate,
    a: np.ndarray,
    b: np.ndarray,
    g: int,
    inventory: PathInventory | None = None,
) -> CostTables:
    """Cost of every candidate single-exponent value at the current state.

    Entry (e, s) is the weighted number of counted path classes through
    e that lift to cycles once e is set to s, everything else held
    fixed.  Only paths whose other-axis congruence already holds can be
    completed by a single change, and paths in which e cancels out
    contribute nothing.  Candidate y-values colliding with a sibling
    exponent of the same entry cost infinity.
    """
    if inventory is None:
        inventory = build_path_inventory(template, g)
    sx, sy = template.sx, template.sy
    sig_x, sig_y = _sigma(inventory, a, b)
    sat_x = sig_x % sx == 0
    sat_y = sig_y % sy == 0
    x_flat = np.zeros(template.n_x * sx, dtype=np.float64)
    y_flat = np.zeros(template.n_y * sy, dtype=np.float64)
    _accumulate_axis(x_flat, inventory.x_inc, sig_x, sat_y, a, sx, inventory.weights)
    _accumulate_axis(y_flat, inventory.y_inc, sig_y, sat_x, b, sy, inventory.weights)
    x_table = x_flat.reshape(template.n_x, sx)
    y_table = y_flat.reshape(template.n_y, sy)
    for group in template.y_groups:
        for v in group:
            for u in group:
                if u != v:
                    y_table[v, b[u]] = np.inf
    return CostTables(x=x_table, y=y_table, weights=length_weights(g))


def greedy_step(template: ConstructionTemplate, tables: CostTables, a, b):
    """The single exponent change with the largest cost reduction.

    Returns (variable, new value) or None when every reduction is
    nonnegative.  Ties break deterministically: x-axis first, then the
    lowest variable id, then the lowest value.
    """
    best = 0.0
    choice = None
    if template.n_x and template.sx > 1:
        red_x = tables.x - tables.x[np.arange(template.n_x), a][:, None]
        mn = red_x.min()
        if mn < best:
            best = mn
            flat = int(np.argmin(red_x))
            choice = (template.x_vars[flat // template.sx], flat % template.sx)
    if template.n_y and template.sy > 1:
        red_y = tables.y - tables.y[np.arange(template.n_y), b][:, None]
        mn = red_y.min()
        if mn < best:
            best = mn
            flat = int(np.argmin(red_y))
            choice = (template.y_vars[flat // template.sy], flat % template.sy)
    return choice


def weighted_cycle_cost(template, inventory, a, b) -> float:
    """Total weighted count of path classes currently lifting to cycles."""
    sig_x, sig_y = _sigma(inventory, a, b)
    sat = (sig_x % template.sx == 0) & (sig_y % template.sy == 0)
    return float(inventory.weights[sat].sum())


def descend(template, inventory, a, b, g):
    """Greedy descent to a local cost minimum.  Mutates a and b.

    Returns the cost trace; the final entry is the local minimum.  The
    trace is strictly decreasing by construction, which also bounds the
    number of steps.
    """
    trace = [weighted_cycle_cost(template, inventory, a, b)]
    while True:
        tables = build_cost_tables(template, a, b, g, inventory)
        step = greedy_step(template, tables, a, b)
        if step is None:
            return trace
        var, value = step
        if var.axis == "x":
            a[var.id] = value
        else:
            b[var.id] = value
        cost = weighted_cycle_cost(template, inventory, a, b)
        if cost >= trace[-1]:
            raise AssertionError(
                "greedy step failed to reduce the weighted cycle count"
            )
        trace.append(cost)


def _window_is_clean(template, inventory, a, b) -> bool:
    sig_x, sig_y = _sigma(inventory, a, b)
    return not bool(
        ((sig_x % template.sx == 0) & (sig_y % template.sy == 0)).any()
    )


@dataclass
class ConstructionResult:
    """A successful construction together with attempt bookkeeping."""

    code: ScCode
    attempts: int
    cost_trace: list[float]
    seed: int


def _construct_on_window(spec, sx, sy, g, seed, budget, reassign):
    rng = np.random.default_rng(seed)
    template = None
    inventory = None
    block = spec.block
    for attempt in range(budget):
        if template is None or reassign:
            active = (
                SpreadingSpec.random(block, spec.w, rng)
                if reassign and attempt > 0
                else spec
            )
            template = ConstructionTemplate.for_window(active, sx, sy, g)
            inventory = build_path_inventory(template, g)
        a, b = template.random_values(rng)
        trace = descend(template, inventory, a, b, g)
        if _window_is_clean(template, inventory, a, b):
            return ConstructionResult(
                code=template.realize(a, b),
                attempts=attempt + 1,
                cost_trace=trace,
                seed=seed,
            )
    raise ConstructionFailure(
        f"no girth-{g} construction found in {budget} attempts "
        f"(sx={sx}, sy={sy}); consider raising the lifting sizes or budget",
        attempts=budget,
    )


def hqc_construct(
    proto: Protomatrix, sx: int, sy: int, g: int, seed: int = 0, budget: int = 50
) -> BivariatePolyMatrix:
    """Greedy construction of a block two-level code with girth >= g."""
    if sy < proto.max_multiplicity:
        raise ValueError(
            f"y-lifting factor {sy} cannot keep {proto.max_multiplicity} parallel "
            "edges on distinct y-shifts"
        )
    result = _construct_on_window(
        SpreadingSpec.trivial(proto), sx, sy, g, seed, budget, reassign=False
    )
    return result.code.components[0]


def construct_and_spread(
    spec: SpreadingSpec,
    sx: int,
    sy: int,
    g: int,
    seed: int = 0,
    budget: int = 50,
    reassign_each_attempt: bool = True,
) -> ScCode:
    """Construct the despread block code at girth g-2, then spread it.

    Spreading never shortens cycles, and with some luck removes the
    remaining ones of length g-2; each attempt re-randomizes the
    exponent initialization (and, by default, the edge assignment) and
    accepts only when the cycle window of the spread code is clean up to
    g-2.
    """
    block = spec.block
    if sy < block.max_multiplicity:
        raise ValueError(
            f"y-lifting factor {sy} cannot keep {block.max_multiplicity} parallel "
            "edges on distinct y-shifts"
        )
    rng = np.random.default_rng(seed)
    template = ConstructionTemplate.for_block(block, sx, sy, g - 2)
    inventory = build_path_inventory(template, g - 2)
    for attempt in range(budget):
        active = spec
        if reassign_each_attempt and attempt > 0:
            active = SpreadingSpec.random(block, spec.w, rng)
        a, b = template.random_values(rng)
        descend(template, inventory, a, b, g - 2)
        if not _window_is_clean(template, inventory, a, b):
            continue
        block_code = template.realize(a, b).components[0]
        code = ScCode(tuple(spread(block_code, active)))
        if poly_girth(code.crm(max(g - 2, 4)), g) >= g:
            return code
    raise ConstructionFailure(
        f"spreading never reached girth {g} in {budget} attempts "
        f"(sx={sx}, sy={sy})",
        attempts=budget,
    )


def crm_construct(
    spec: SpreadingSpec,
    sx: int,
    sy: int,
    g: int,
    seed: int = 0,
    budget: int = 50,
    reassign_each_attempt: bool = False,
) -> ScCode:
    """Optimize the exponents directly on the coupled cycle window.

    Replicated edges share their exponent variables, so a path may meet
    a variable with multiplicity beyond +-1; the cost tables handle the
    general congruence.  Cleanliness of the window up to g-2 guarantees
    girth >= g for every replication count.
    """
    for t, comp in enumerate(spec.components):
        if comp.max_multiplicity > sy:
            raise ValueError(
                f"component {t} has entry multiplicity {comp.max_multiplicity} "
                f"> y-lifting factor {sy}"
            )
    result = _construct_on_window(
        spec, sx, sy, g, seed, budget, reassign=reassign_each_attempt
    )
    return result.code


@dataclass
class SweepRow:
    """One ensemble/coupling-width point of a minimum-lifting-size sweep."""

    alg: int
    dv: int
    dc: int
    w: int
    g: int
    sy: int
    s_min: int | None
    trials: int
    seed: int
    wall_ms: int


def sweep_min_lifting(
    proto: Protomatrix,
    alg: int,
    w_values,
    g: int,
    sy: int,
    sx_values,
    trials: int = 20,
    seed: int = 0,
    verify=None,
) -> list[SweepRow]:
    """Smallest x-lifting size reaching girth g, per coupling width.

    Ascends sx_values and records the first size at which any of the
    per-size trials succeeds; None when the whole range fails.  The
    optional verify callback receives every successful code before it is
    accepted and may veto it by returning False.
    """
    if alg not in (2, 3):
        raise ValueError("sweeps run the coupled constructions (alg 2 or 3)")
    construct = construct_and_spread if alg == 2 else crm_construct
    rows = []
    sx_list = list(sx_values)
    for w in w_values:
        started = time.perf_counter()
        spec_rng = np.random.default_rng(np.random.SeedSequence([seed, alg, w]))
        s_min = None
        for sx in sx_list:
            spec = SpreadingSpec.random(proto, w, spec_rng)
            trial_seed = int(
                np.random.SeedSequence([seed, alg, w, sx]).generate_state(1)[0]
            )
            try:
                code = construct(spec, sx, sy, g, seed=trial_seed, budget=trials)
            except (ConstructionFailure, ValueError):
                continue
            if verify is not None and not verify(code, g):
                continue
            s_min = sx
            break
        rows.append(
            SweepRow(
                alg=alg,
                dv=proto.rows,
                dc=proto.cols,
                w=w,
                g=g,
                sy=sy,
                s_min=s_min,
                trials=trials,
                seed=seed,
                wall_ms=int((time.perf_counter() - started) * 1000),
            )
        )
    return rows
