"""Exact sparse linear algebra over the rationals and prime fields.

Vectors are sparse dicts ``{index: scalar}`` with no stored zeros.  The
elimination is plain fraction arithmetic with a deterministic pivot rule:
rows are processed in index order and each contributes its lowest remaining
nonzero column as pivot, so repeated runs produce identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import InconsistentSystem, InvalidInput
from .fields import Field


def vec_add(u: dict, v: dict) -> dict:
    out = dict(u)
    for i, c in v.items():
        s = out.get(i, 0) + c
        if s == 0:
            out.pop(i, None)
        else:
            out[i] = s
    return out


def vec_scale(c, v: dict) -> dict:
    if c == 0:
        return {}
    return {i: c * x for i, x in v.items()}


def vec_axpy(out: dict, c, v: dict) -> None:
    """In place: out += c * v."""
    if c == 0:
        return
    for i, x in v.items():
        s = out.get(i, 0) + c * x
        if s == 0:
            out.pop(i, None)
        else:
            out[i] = s


@dataclass
class SparseMatrix:
    """Sparse matrix with entries keyed by (row, col); zero entries are not stored."""

    rows: int
    cols: int
    entries: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        for (r, c), v in list(self.entries.items()):
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise InvalidInput(f"entry ({r},{c}) out of range")
            if v == 0:
                del self.entries[(r, c)]

    @staticmethod
    def from_rows(rows: int, cols: int, row_dicts: list[dict]) -> "SparseMatrix":
        entries = {}
        for r, row in enumerate(row_dicts):
            for c, v in row.items():
                if v != 0:
                    entries[(r, c)] = v
        return SparseMatrix(rows, cols, entries)

    def row_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def col_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def mul_vec(self, x: dict) -> dict:
        out: dict = {}
        for (r, c), v in self.entries.items():
            xc = x.get(c)
            if xc is not None:
                s = out.get(r, 0) + v * xc
                if s == 0:
                    out.pop(r, None)
                else:
                    out[r] = s
        return out


class EchelonSolver:
    """Gauss-Jordan elimination of a matrix given by rows, with transform tracking.

    Keeps T with T . M = E (E fully reduced), split into pivot rows and
    null rows.  The null rows test consistency of M x = b; the pivot rows
    give a particular solution and the free columns give the kernel.
    The transform rows also apply to vectors with polynomial entries, which
    is how the staged defining-system solver propagates parameters.
    """

    def __init__(self, field: Field, n_cols: int, rows: list[dict]):
        self.field = field
        self.n_cols = n_cols
        self.n_rows = len(rows)
        one = field.one()
        self.piv: list[tuple[int, dict, dict]] = []  # (pivot_col, E-row, T-row)
        self.null_ts: list[dict] = []
        piv_by_col: dict[int, tuple[int, dict, dict]] = {}
        for r_idx, row in enumerate(rows):
            cur = {c: v for c, v in row.items() if v != 0}
            t = {r_idx: one}
            # reduce against existing pivots; stored rows are fully reduced
            # (support = own pivot + free columns), so one pass suffices
            for c in sorted(set(cur) & piv_by_col.keys()):
                coef = cur.get(c)
                if coef is None:
                    continue
                hit = piv_by_col[c]
                vec_axpy(cur, -coef, hit[1])
                vec_axpy(t, -coef, hit[2])
            if not cur:
                self.null_ts.append(t)
                continue
            lead = min(cur)
            inv = one / cur[lead]
            cur = {c: inv * v for c, v in cur.items()}
            t = {c: inv * v for c, v in t.items()}
            # eliminate the new pivot column from all stored pivot rows
            for entry in self.piv:
                coef = entry[1].get(lead)
                if coef is not None:
                    vec_axpy(entry[1], -coef, cur)
                    vec_axpy(entry[2], -coef, t)
            rec = (lead, cur, t)
            self.piv.append(rec)
            piv_by_col[lead] = rec

        self.pivot_cols = [p[0] for p in self.piv]
        piv_set = set(self.pivot_cols)
        self.free_cols = [c for c in range(n_cols) if c not in piv_set]

    @property
    def rank(self) -> int:
        return len(self.piv)

    def _dot(self, t: dict, b: dict, zero):
        acc = zero
        for i, c in t.items():
            bi = b.get(i)
            if bi is not None:
                acc = acc + c * bi
        return acc

    def obstructions(self, b: dict, zero=None) -> list:
        """T_null . b; all must vanish for M x = b to be solvable."""
        z = self.field.zero() if zero is None else zero
        return [self._dot(t, b, z) for t in self.null_ts]

    def particular(self, b: dict, zero=None) -> dict:
        """One solution of M x = b with free coordinates set to zero.

        Does not test consistency; call ``obstructions`` first.
        """
        z = self.field.zero() if zero is None else zero
        out = {}
        for pcol, _erow, t in self.piv:
            y = self._dot(t, b, z)
            if y != 0:
                out[pcol] = y
        return out

    def solve(self, b: dict) -> dict:
        for obs in self.obstructions(b):
            if obs != 0:
                raise InconsistentSystem("right-hand side not in the image")
        return self.particular(b)

    def kernel_basis(self) -> list[dict]:
        out = []
        one = self.field.one()
        for f in self.free_cols:
            v = {f: one}
            for pcol, erow, _t in self.piv:
                c = erow.get(f)
                if c is not None:
                    v[pcol] = -c
            out.append(v)
        return out

    def in_image(self, b: dict) -> bool:
        return all(obs == 0 for obs in self.obstructions(b))


@dataclass
class AffineSolutionSet:
    """All solutions of M x = b: particular + span of kernel_basis."""

    particular: dict
    kernel_basis: list[dict]
    n_cols: int

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel_basis)


def solve_affine(matrix: SparseMatrix, b: dict, field: Field) -> AffineSolutionSet:
    """Solve M x = b exactly; raises InconsistentSystem when b is not in im M."""
    for r in b:
        if not (0 <= r < matrix.rows):
            raise InvalidInput("right-hand side index out of range")
    solver = EchelonSolver(field, matrix.cols, matrix.row_dicts())
    for obs in solver.obstructions(b):
        if obs != 0:
            raise InconsistentSystem("right-hand side not in the image")
    return AffineSolutionSet(solver.particular(b), solver.kernel_basis(), matrix.cols)


def rank(matrix: SparseMatrix, field: Field) -> int:
    return EchelonSolver(field, matrix.cols, matrix.row_dicts()).rank


class _SpanTracker:
    """Incremental row echelon for membership tests and independent-set selection."""

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, dict] = {}  # lead col -> normalized row

    def residue(self, v: dict) -> dict:
        cur = dict(v)
        while cur:
            lead = min(cur)
            row = self.rows.get(lead)
            if row is None:
                return cur
            vec_axpy(cur, -cur[lead], row)
        return cur

    def contains(self, v: dict) -> bool:
        return not self.residue(v)

    def add(self, v: dict) -> bool:
        """Add v to the span; returns True when v was independent."""
        res = self.residue(v)
        if not res:
            return False
        lead = min(res)
        inv = self.field.one() / res[lead]
        self.rows[lead] = {c: inv * x for c, x in res.items()}
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


class QuotientBasis:
    """Basis data for cycles/boundaries: representatives of the quotient plus
    a reduction map expressing any cycle in those representatives modulo
    boundaries."""

    def __init__(self, field: Field, ambient_dim: int,
                 cycles: list[dict], boundaries: list[dict]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.cycle_space = cycles
        self.boundary_space = boundaries

        cyc_span = _SpanTracker(field)
        for v in cycles:
            cyc_span.add(v)
        bnd_span = _SpanTracker(field)
        for v in boundaries:
            if not cyc_span.contains(v):
                raise InvalidInput("boundaries escape the cycle space")
            bnd_span.add(v)

        reps: list[dict] = []
        sel = _SpanTracker(field)
        for v in boundaries:
            sel.add(v)
        for v in cycles:
            if sel.add(v):
                reps.append(v)
        self.representatives = reps
        self.boundary_basis = list(bnd_span.rows.values())
        self._n_reps = len(reps)
        self._solver_cache = None

    @property
    def _solver(self) -> EchelonSolver:
        # columns = [representatives | boundary span rows]; these are
        # independent by construction, so coordinates are unique.  Built on
        # first use: dimension queries never pay for it.
        if self._solver_cache is None:
            cols = self.representatives + self.boundary_basis
            rows_of_cols: list[dict] = [dict() for _ in range(self.ambient_dim)]
            for j, col in enumerate(cols):
                for i, v in col.items():
                    rows_of_cols[i][j] = v
            self._solver_cache = EchelonSolver(self.field, len(cols),
                                               rows_of_cols)
        return self._solver_cache

    @property
    def dim(self) -> int:
        return self._n_reps

    def reduce(self, v: dict) -> dict:
        """Coordinates of the class of v in the representatives."""
        if not self._solver.in_image(v):
            raise InvalidInput("vector is not in the cycle space")
        sol = self._solver.particular(v)
        return {j: c for j, c in sol.items() if j < self._n_reps}

    def reduce_generic(self, v: dict, zero) -> dict:
        """Reduction for vectors with entries from any commutative algebra
        over the field (used with parameter polynomials).  Consistency is the
        caller's concern: entries beyond the representative columns are
        obstructions and returned under key ('obs', j)."""
        out = {}
        for pcol, _erow, t in self._solver.piv:
            y = self._solver._dot(t, v, zero)
            if y != 0:
                if pcol < self._n_reps:
                    out[pcol] = y
                else:
                    out[("coord", pcol)] = y
        for k, t in enumerate(self._solver.null_ts):
            y = self._solver._dot(t, v, zero)
            if y != 0:
                out[("obs", k)] = y
        return out

    def project(self, v: dict) -> dict:
        """Canonical representative of the class of v (idempotent)."""
        coords = self.reduce(v)
        out: dict = {}
        for j, c in coords.items():
            vec_axpy(out, c, self.representatives[j])
        return out

    def is_zero_class(self, v: dict) -> bool:
        return not self.reduce(v)


def subspace_quotient(cycles: list[dict], boundaries: list[dict],
                      field: Field, ambient_dim: int) -> QuotientBasis:
    """Quotient of span(cycles) by span(boundaries) with reduction data."""
    return QuotientBasis(field, ambient_dim, cycles, boundaries)
