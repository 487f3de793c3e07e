"""Formal connections, defining systems and higher Massey products.

A formal connection of order n is a strictly upper triangular (n+1) x (n+1)
array of cochains, indexed here by labels (i, j) with 1 <= i <= j <= n (the
label (i, j) sits at matrix position (i, j+1)).  Its Maurer-Cartan defect is

    mu(i, j) = d a(i, j) - sum_{r=i}^{j-1} bar(a(i, r)) ^ a(r+1, j).

A defining system has mu(i, j) = 0 for every (i, j) != (1, n); the related
cocycle c(A) = sum_r bar(a(1, r)) ^ a(r+1, n) represents the product value.
Partial connections solved through stage k-1 (all slots with j - i < k) give
the k-step product: the stage-k obstruction classes form its value tuple.

The search solves the staged equations with the kernel of every stage carried
as symbolic parameters, so the value class comes out as a vector of
polynomials in those parameters; membership and triviality questions reduce
to exact linear algebra whenever that dependence is affine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .dga import CohomologyClass, DGAlgebra, MultiDegree, c_scale
from .errors import (InvalidInput, NotADefiningSystem, SingularMatrix,
                     WindowTooSmall)
from .linalg import EchelonSolver, vec_axpy
from .params import Poly


# ---------------------------------------------------------------------------
# concrete connections


@dataclass
class FormalConnection:
    dga: DGAlgebra
    n: int
    entries: dict  # (i, j) -> cochain; diagonal carries the input cocycles

    def entry(self, i: int, j: int) -> dict:
        return self.entries.get((i, j), {})

    def diagonal(self) -> list:
        return [self.entry(i, i) for i in range(1, self.n + 1)]


def mc_defect(conn: FormalConnection) -> dict:
    """All defect entries mu(i, j), including the corner."""
    dga = conn.dga
    out = {}
    for i in range(1, conn.n + 1):
        for j in range(i, conn.n + 1):
            acc = dga.d(conn.entry(i, j))
            for r in range(i, j):
                left = conn.entry(i, r)
                right = conn.entry(r + 1, j)
                if left and right:
                    prod = dga.wedge(dga.bar(left), right)
                    acc = {m: c for m, c in
                           _acc_sub(acc, prod).items() if c != 0}
            if acc:
                out[(i, j)] = acc
    return out


def _acc_sub(u: dict, v: dict) -> dict:
    out = dict(u)
    for m, c in v.items():
        s = out.get(m, 0) - c
        if s == 0:
            out.pop(m, None)
        else:
            out[m] = s
    return out


def defect_band(mu: dict, n: int) -> int | None:
    """Smallest j - i over the nonzero defect slots; None when mu = 0."""
    if not mu:
        return None
    return min(j - i for (i, j) in mu)


def in_corner_ideal(mu: dict, n: int) -> bool:
    return all((i, j) == (1, n) for (i, j) in mu)


def is_k_step(mu: dict, k: int) -> bool:
    """Defect confined to slots with j - i >= k (stages below k all solved)."""
    return all(j - i >= k for (i, j) in mu)


def is_defining_system(conn: FormalConnection) -> bool:
    return in_corner_ideal(mc_defect(conn), conn.n)


def related_cocycle(conn: FormalConnection) -> dict:
    if not is_defining_system(conn):
        raise NotADefiningSystem("Maurer-Cartan defect escapes the corner")
    dga = conn.dga
    acc: dict = {}
    for r in range(1, conn.n):
        left = conn.entry(1, r)
        right = conn.entry(r + 1, conn.n)
        if left and right:
            prod = dga.wedge(dga.bar(left), right)
            for m, c in prod.items():
                s = acc.get(m, 0) + c
                if s == 0:
                    acc.pop(m, None)
                else:
                    acc[m] = s
    return acc


def conjugate(conn: FormalConnection, C: list) -> FormalConnection:
    """C^{-1} A C for an invertible upper-triangular scalar matrix C."""
    n = conn.n
    size = n + 1
    field = conn.dga.field
    C = [[field.of(C[r][c]) for c in range(size)] for r in range(size)]
    for r in range(size):
        for c in range(r):
            if C[r][c] != 0:
                raise InvalidInput("C must be upper triangular")
        if C[r][r] == 0:
            raise SingularMatrix("C has a zero diagonal entry")
    # invert the triangular matrix by back substitution
    inv = [[field.zero() for _ in range(size)] for _ in range(size)]
    for r in range(size):
        inv[r][r] = field.one() / C[r][r]
    for r in range(size - 1, -1, -1):
        for c in range(r + 1, size):
            s = field.zero()
            for t in range(r + 1, c + 1):
                s = s + C[r][t] * inv[t][c]
            inv[r][c] = -s / C[r][r]
    # matrix form: M[r][c] = a(r+1, c) for c >= r+1 (0-indexed rows/cols)
    def mat_entry(r, c):
        return conn.entries.get((r + 1, c), {})

    new_entries = {}
    for i in range(size):
        for j in range(i + 1, size):
            acc: dict = {}
            for r in range(size):
                for c in range(size):
                    co = inv[i][r] * C[c][j]
                    if co == 0:
                        continue
                    vec_axpy(acc, co, mat_entry(r, c))
            if acc:
                new_entries[(i + 1, j)] = acc
    return FormalConnection(conn.dga, n, new_entries)


def strong_mc_check(dga: DGAlgebra, assignment: dict, n: int) -> bool:
    """True when the matrices of 1-forms built from a generator assignment
    satisfy dA - bar(A) ^ A = 0 in every slot (corner included), i.e. the
    assignment is a Lie algebra homomorphism into the triangular matrices."""
    entries: dict = {}
    for gen, mat in assignment.items():
        for r in range(n + 1):
            for c in range(n + 1):
                v = mat[r][c]
                if v == 0:
                    continue
                if c <= r:
                    raise InvalidInput("assignment must be strictly upper triangular")
                slot = (r + 1, c)
                cur = entries.setdefault(slot, {})
                s = cur.get((gen,), 0) + dga.field.of(v)
                if s == 0:
                    cur.pop((gen,), None)
                else:
                    cur[(gen,)] = s
    conn = FormalConnection(dga, n, {k: v for k, v in entries.items() if v})
    return not mc_defect(conn)


def lift_obstruction(conn: FormalConnection) -> CohomologyClass:
    """Class of the related cocycle of a defining system of 1-forms; it
    vanishes exactly when the induced homomorphism to the central quotient
    lifts, and a corner entry with d a(1,n) = c(A) completes the lift."""
    dga = conn.dga
    for (i, j), e in conn.entries.items():
        if e and dga.q_degree_of(e) != 1:
            raise NotADefiningSystem("all entries must be 1-forms")
    c = related_cocycle(conn)
    comps = dga.components(c)
    deg = next(iter(comps)) if len(comps) == 1 else \
        MultiDegree(2, (0,) * dga.aux_len)
    return CohomologyClass(dga, deg, c)


def complete_lift(conn: FormalConnection) -> dict | None:
    """Corner entry a(1, n) with d a(1,n) = c(A), when one exists."""
    dga = conn.dga
    c = related_cocycle(conn)
    if not c:
        return {}
    out: dict = {}
    for deg, comp in dga.components(c).items():
        solver = dga.d_solver(deg.d_source())
        vec = dga.to_vector(comp, deg)
        if not solver.in_image(vec):
            return None
        out.update(dga.from_vector(solver.particular(vec), deg.d_source()))
    return out


# ---------------------------------------------------------------------------
# parametric cochains: dict monomial -> Poly


def pc_const(cochain: dict) -> dict:
    return {m: Poly.const(c) for m, c in cochain.items()}


def pc_scale_sign(u: dict, sign: int) -> dict:
    if sign == 1:
        return u
    return {m: -p for m, p in u.items()}


def pc_add(u: dict, v: dict) -> dict:
    out = dict(u)
    for m, p in v.items():
        s = out.get(m, Poly()) + p
        if s.is_zero():
            out.pop(m, None)
        else:
            out[m] = s
    return out


def pc_wedge(dga: DGAlgebra, u: dict, v: dict) -> dict:
    out: dict = {}
    for m1, p1 in u.items():
        for m2, p2 in v.items():
            p = p1 * p2
            if p.is_zero():
                continue
            for m, cm in dga.mul_mono(m1, m2):
                s = out.get(m, Poly()) + p * cm
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
    return out


def pc_d(dga: DGAlgebra, u: dict) -> dict:
    out: dict = {}
    for m, p in u.items():
        for m2, c in dga.d_mono(m):
            s = out.get(m2, Poly()) + p * c
            if s.is_zero():
                out.pop(m2, None)
            else:
                out[m2] = s
    return out


def pc_components(dga: DGAlgebra, u: dict) -> dict:
    out: dict = {}
    for m, p in u.items():
        out.setdefault(dga.degree_of_mono(m), {})[m] = p
    return out


def pc_substitute(u: dict, subst: dict) -> dict:
    out = {}
    for m, p in u.items():
        q = p.substitute(subst)
        if not q.is_zero():
            out[m] = q
    return out


def pc_evaluate(u: dict, assign: dict, field) -> dict:
    out = {}
    for m, p in u.items():
        v = p.evaluate(assign, field)
        if v != 0:
            out[m] = v
    return out


# ---------------------------------------------------------------------------
# outcome containers


@dataclass
class ParamInfo:
    var: int
    slot: tuple
    degree: MultiDegree
    kind: str  # "class" (cohomology direction) or "boundary"
    direction: dict  # cochain


@dataclass
class ConnectionFamily:
    dga: DGAlgebra
    n: int
    entries: dict            # (i, j) -> parametric cochain
    params: list             # ParamInfo
    complete: bool
    max_stage: int           # stages solved: all slots with j - i <= max_stage
    notes: list = dc_field(default_factory=list)

    def free_vars(self) -> list:
        seen = set()
        for pc in self.entries.values():
            for p in pc.values():
                seen |= p.variables()
        return sorted(seen)

    def at(self, assign: dict | None = None) -> FormalConnection:
        assign = assign or {}
        entries = {}
        for slot, pc in self.entries.items():
            conc = pc_evaluate(pc, assign, self.dga.field)
            if conc:
                entries[slot] = conc
        return FormalConnection(self.dga, self.n, entries)


@dataclass
class Undefined:
    slot: tuple
    reason: str
    inconclusive: bool


@dataclass
class MasseyOutcome:
    status: str              # "undefined" | "strict" | "affine" | "sampled"
    n: int
    triviality: str          # "trivial" | "nontrivial" | "unknown"
    representative: CohomologyClass | None = None
    classes: list = dc_field(default_factory=list)
    indeterminacy: list = dc_field(default_factory=list)
    witness: FormalConnection | None = None
    complete: bool = True
    inconclusive: bool = False
    certificate: list | None = None
    value_affine: tuple | None = None  # (keys, const dict, direction dicts)
    value_coords: dict | None = None   # {(degree, index): Poly in parameters}

    @property
    def defined(self) -> bool:
        return self.status != "undefined"


@dataclass
class KStepOutcome:
    k: int
    defined: bool
    classes: tuple = ()
    triviality: str = "unknown"
    witness: FormalConnection | None = None
    complete: bool = True
    inconclusive: bool = False


# ---------------------------------------------------------------------------
# the staged search


class MasseyEngine:
    """Staged defining-system search bound to one algebra window.

    ``homogeneous_aux``: constrain entry slots to the sum of the input
    auxiliary degrees (weight additivity / vertex-support additivity).  With
    the flag off, entries range over every auxiliary degree materialized in
    the window, which is what exposes the full indeterminacy of the examples
    with inhomogeneous defining systems.
    """

    def __init__(self, dga: DGAlgebra, budget: int = 8,
                 homogeneous_aux: bool = True, seed: int = 0):
        self.dga = dga
        self.budget = budget
        self.homogeneous_aux = homogeneous_aux
        self.seed = seed

    # -- degree bookkeeping ------------------------------------------------
    def _profile(self, classes) -> dict:
        degs = {i + 1: cls.degree for i, cls in enumerate(classes)}
        prof = {}
        n = len(classes)
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                q = sum(degs[r].q - 1 for r in range(i, j + 1)) + 1
                aux = degs[i].aux
                for r in range(i + 1, j + 1):
                    aux = tuple(a + b for a, b in zip(aux, degs[r].aux))
                prof[(i, j)] = MultiDegree(q, aux)
        return prof

    def _entry_aux_degrees(self, q: int, nominal: MultiDegree) -> list:
        """Multidegrees an entry of cohomological degree q may occupy."""
        if self.homogeneous_aux:
            return [nominal]
        out = []
        for deg in self._window_degrees():
            if deg.q == q:
                out.append(deg)
        return sorted(out, key=lambda d: d.aux)

    def _window_degrees(self):
        dga = self.dga
        if hasattr(dga, "window_degrees"):
            return dga.window_degrees()
        raise InvalidInput("window does not enumerate degrees; "
                           "inhomogeneous search unavailable")

    # -- the solver ---------------------------------------------------------
    def find_defining_system(self, classes, max_stage: int | None = None):
        """Solve the staged equations through ``max_stage`` (default n-1,
        the full defining system).  Returns a ConnectionFamily or Undefined.
        """
        dga = self.dga
        n = len(classes)
        if n < 2:
            raise InvalidInput("need at least two classes")
        for cls in classes:
            if cls.dga is not dga:
                raise InvalidInput("classes live in a different window")
            if self.homogeneous_aux and len(dga.components(cls.rep)) > 1:
                raise InvalidInput(
                    "inhomogeneous representatives need homogeneous_aux=False")
        if max_stage is None:
            max_stage = n - 1
        prof = self._profile(classes)
        entries: dict = {}
        for i, cls in enumerate(classes, start=1):
            entries[(i, i)] = pc_const(cls.rep)
        params: list = []
        complete = True
        notes: list = []
        subst: dict = {}

        def apply_subst(new_subst: dict):
            nonlocal entries
            for v, rep in new_subst.items():
                subst[v] = rep
            for v in list(subst):
                subst[v] = subst[v].substitute(new_subst)
            entries = {slot: pc_substitute(pc, new_subst)
                       for slot, pc in entries.items()}

        for stage in range(1, max_stage + 1):
            for i in range(1, n - stage + 1):
                j = i + stage
                if (i, j) == (1, n):
                    continue
                rhs: dict = {}
                for r in range(i, j):
                    left = entries.get((i, r))
                    right = entries.get((r + 1, j))
                    if left and right:
                        sign = 1 if (prof[(i, r)].q + 1) % 2 == 0 else -1
                        rhs = pc_add(rhs, pc_wedge(
                            dga, pc_scale_sign(left, sign), right))
                if pc_d(dga, rhs):
                    raise NotADefiningSystem(
                        f"stage right-hand side at {(i, j)} is not closed")
                comps = pc_components(dga, rhs)
                # collect per-component obstructions, resolve, then solve
                constraints = []
                comp_data = []
                for deg, comp in sorted(comps.items(), key=lambda kv: kv[0].aux):
                    if self.homogeneous_aux and deg != prof[(i, j)].d_target():
                        raise NotADefiningSystem(
                            f"inhomogeneous right-hand side at {(i, j)}")
                    solver = dga.d_solver(deg.d_source())
                    vec = {dga.index(deg)[m]: p for m, p in comp.items()}
                    comp_data.append((deg, solver, vec))
                    constraints.extend(
                        obs for obs in solver.obstructions(vec, Poly())
                        if not obs.is_zero())
                if constraints:
                    res = self._resolve_constraints(constraints)
                    if res is None:
                        return Undefined((i, j), "inconsistent stage",
                                         inconclusive=not complete)
                    new_subst, clean = res
                    if not clean:
                        complete = False
                    if new_subst:
                        apply_subst(new_subst)
                        comp_data = [
                            (deg, solver,
                             {k: p.substitute(new_subst) for k, p in vec.items()})
                            for deg, solver, vec in comp_data]
                        comp_data = [
                            (deg, solver,
                             {k: p for k, p in vec.items() if not p.is_zero()})
                            for deg, solver, vec in comp_data]
                        for deg, solver, vec in comp_data:
                            for obs in solver.obstructions(vec, Poly()):
                                if not obs.is_zero():
                                    return Undefined(
                                        (i, j), "unresolved obstruction",
                                        inconclusive=True)
                entry: dict = {}
                for deg, solver, vec in comp_data:
                    sol = solver.particular(vec, Poly())
                    bas = dga.basis(deg.d_source())
                    for col, p in sol.items():
                        if not p.is_zero():
                            entry[bas[col]] = entry.get(bas[col], Poly()) + p
                # kernel freedom, cohomology directions first
                for deg in self._entry_aux_degrees(prof[(i, j)].q, prof[(i, j)]):
                    if not dga.in_window(deg) or not dga.in_window(deg.d_target()):
                        if self.homogeneous_aux:
                            raise WindowTooSmall(
                                f"entry degree {deg} not materialized")
                        continue
                    if not dga.basis(deg):
                        continue
                    qb = dga.cohomology_basis(deg)
                    bas = dga.basis(deg)
                    for kind, vecs in (("class", qb.representatives),
                                       ("boundary", qb.boundary_basis)):
                        for kvec in vecs:
                            if len(params) >= self.budget:
                                complete = False
                                break
                            var = len(params)
                            direction = {bas[c]: v for c, v in kvec.items()}
                            params.append(ParamInfo(var, (i, j), deg, kind,
                                                    direction))
                            for m, c in direction.items():
                                entry[m] = entry.get(m, Poly()) + \
                                    Poly({(var,): c})
                        else:
                            continue
                        break
                entry = {m: p for m, p in entry.items() if not p.is_zero()}
                if entry:
                    entries[(i, j)] = entry
        return ConnectionFamily(dga, n, entries, params, complete, max_stage,
                                notes)

    def _resolve_constraints(self, constraints):
        """Solve polynomial constraints = 0 for the parameters.

        Returns (substitution, clean) or None when provably inconsistent;
        ``clean`` is False when a heuristic zero-assignment was needed.
        """
        one = self.dga.field.one()
        todo = [c for c in constraints if not c.is_zero()]
        subst: dict = {}
        clean = True
        for _ in range(256):
            todo = [c for c in (p.substitute(subst) for p in todo)
                    if not c.is_zero()]
            if not todo:
                return subst, clean
            nonlinear = [c for c in todo if not c.is_affine()]
            if nonlinear:
                # heuristic: pin every variable of a nonlinear constraint to 0
                bad = set()
                for c in nonlinear:
                    bad |= c.variables()
                if not bad:
                    return None
                for v in bad:
                    subst[v] = Poly()
                clean = False
                continue
            progressed = False
            for c in todo:
                const, lin = c.affine_parts()
                if not lin:
                    if const != 0:
                        return None
                    continue
                var = min(lin)
                inv = -(one / lin[var])
                rep = Poly({(): inv * const} if const != 0 else {})
                for v, cf in lin.items():
                    if v != var:
                        rep = rep + Poly({(v,): inv * cf})
                subst[var] = rep
                progressed = True
                break
            if not progressed:
                return subst, clean
        return None

    # -- products ------------------------------------------------------------
    def related_cocycle_family(self, fam: ConnectionFamily) -> dict:
        dga = self.dga
        n = fam.n
        acc: dict = {}
        for r in range(1, n):
            left = fam.entries.get((1, r))
            right = fam.entries.get((r + 1, n))
            if left and right:
                q_left = {dga.degree_of_mono(m).q for m in left}
                sign = 1 if (next(iter(q_left)) + 1) % 2 == 0 else -1
                acc = pc_add(acc, pc_wedge(
                    dga, pc_scale_sign(left, sign), right))
        return acc

    def _reduce_family_value(self, value: dict):
        """Reduce a closed parametric cochain to cohomology coordinates.

        Returns {(degree, rep_index): Poly}; boundary coordinates are
        discarded, non-cycle components are an error.
        """
        dga = self.dga
        coords: dict = {}
        for deg, comp in pc_components(dga, value).items():
            qb = dga.cohomology_basis(deg)
            vec = {dga.index(deg)[m]: p for m, p in comp.items()}
            red = qb.reduce_generic(vec, Poly())
            for key, p in red.items():
                if isinstance(key, tuple):
                    if key[0] == "obs":
                        raise NotADefiningSystem("value is not a cocycle")
                    continue  # boundary coordinate
                coords[(deg, key)] = p
        return coords

    def _zero_solvable(self, coords: dict, extra_target: dict | None = None):
        """Find an assignment with coords == extra_target (default zero).

        Returns an assignment dict, or None when no assignment exists (a
        definitive answer); raises ValueError('nonlinear') when the
        dependence is not affine and no definitive fallback applies.
        """
        field = self.dga.field
        target = extra_target or {}
        polys = []
        for key, p in coords.items():
            t = target.get(key, field.zero())
            polys.append(p - Poly.const(t) if t != 0 else p)
        for key, t in target.items():
            if key not in coords and t != 0:
                return None
        # a constant nonzero coordinate is unreachable whatever the params
        for p in polys:
            if p.is_constant() and not p.is_zero():
                return None

        def affine_solve(ps):
            varset = sorted({v for p in ps for v in p.variables()})
            col = {v: c for c, v in enumerate(varset)}
            rows = []
            b = {}
            for r, p in enumerate(ps):
                const, lin = p.affine_parts()
                rows.append({col[v]: cf for v, cf in lin.items()})
                if const != 0:
                    b[r] = -const
            solver = EchelonSolver(field, len(varset), rows)
            if not solver.in_image(b):
                return None
            sol = solver.particular(b)
            return {varset[c]: v for c, v in sol.items()}

        if all(p.is_affine() for p in polys):
            return affine_solve(polys)
        # exhaustive enumeration over small prime-field parameter boxes
        varset = sorted({v for p in polys for v in p.variables()})
        if field.p is not None and field.p ** len(varset) <= 200_000:
            for combo in itertools.product(list(field.elements()),
                                           repeat=len(varset)):
                assign = dict(zip(varset, combo))
                if all(p.evaluate(assign, field) == 0 for p in polys):
                    return assign
            return None
        # witness search: pin every nonlinearly-occurring variable to zero,
        # then solve the remaining affine system exactly
        bad = set()
        for p in polys:
            for mono in p.terms:
                if len(mono) >= 2:
                    bad |= set(mono)
        zeroed = [p.substitute({v: Poly() for v in bad}) for p in polys]
        zeroed = [p for p in zeroed if not p.is_zero()]
        if all(p.is_affine() for p in zeroed):
            got = affine_solve(zeroed)
            if got is not None:
                for v in bad:
                    got.setdefault(v, field.zero())
                return got
        raise ValueError("nonlinear")

    def strictness_certificate(self, classes) -> list | None:
        """Vanishing cohomology degrees making every defining system give one
        class: H at the degree of every proper entry slot must be zero."""
        if not self.homogeneous_aux:
            return None
        dga = self.dga
        n = len(classes)
        prof = self._profile(classes)
        cert = []
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if (i, j) == (1, n):
                    continue
                deg = prof[(i, j)]
                if not (dga.in_window(deg) and dga.in_window(deg.d_target())):
                    return None
                if dga.cohomology_basis(deg).dim != 0:
                    return None
                cert.append(deg)
        return cert

    # -- public products -----------------------------------------------------
    def massey(self, classes, certificate: str = "auto") -> MasseyOutcome:
        from .dga import cup

        dga = self.dga
        n = len(classes)
        if n < 2:
            raise InvalidInput("need at least two classes")
        if n == 2:
            value = cup(classes[0], classes[1])
            triv = "trivial" if value.is_zero() else "nontrivial"
            witness = FormalConnection(dga, 2, {
                (1, 1): dict(classes[0].rep), (2, 2): dict(classes[1].rep)})
            return MasseyOutcome("strict", n, triv, representative=value,
                                 classes=[value], witness=witness)
        fam = self.find_defining_system(classes)
        if isinstance(fam, Undefined):
            return MasseyOutcome("undefined", n, "unknown",
                                 inconclusive=fam.inconclusive,
                                 complete=False)
        value_pc = self.related_cocycle_family(fam)
        coords = self._reduce_family_value(value_pc)
        rep_conn = fam.at({})
        rep_cochain = related_cocycle(rep_conn)
        nominal = self._profile(classes)[(1, n)]
        value_deg = MultiDegree(nominal.q + 1, nominal.aux)
        rep_class = CohomologyClass(dga, value_deg, rep_cochain)

        affine = all(p.is_affine() for p in coords.values())
        value_affine = None
        if affine:
            keys = sorted(coords, key=lambda k: (k[0].aux, k[0].q, k[1]))
            const = {}
            dirs: dict = {}
            for key, p in coords.items():
                c0, lin = p.affine_parts()
                if c0 != 0:
                    const[key] = c0
                for v, cf in lin.items():
                    dirs.setdefault(v, {})[key] = cf
            value_affine = (keys, const, [dirs[v] for v in sorted(dirs)])

        if n == 3:
            indet = self._triple_indeterminacy(classes, value_deg)
            triv = self._triviality(coords, fam)
            return MasseyOutcome("affine", n, triv, representative=rep_class,
                                 classes=[rep_class], indeterminacy=indet,
                                 witness=rep_conn, complete=fam.complete,
                                 value_affine=value_affine,
                                 value_coords=coords)

        cert = self.strictness_certificate(classes) if certificate == "auto" \
            else certificate
        if cert is not None:
            triv = "trivial" if rep_class.is_zero() else "nontrivial"
            return MasseyOutcome("strict", n, triv, representative=rep_class,
                                 classes=[rep_class], witness=rep_conn,
                                 complete=fam.complete, certificate=cert,
                                 value_coords=coords)
        samples = self._sample_classes(fam, coords, value_deg)
        triv = self._triviality(coords, fam)
        return MasseyOutcome("sampled", n, triv, representative=rep_class,
                             classes=samples, witness=rep_conn,
                             complete=fam.complete and affine,
                             value_affine=value_affine,
                             value_coords=coords)

    def _triple_indeterminacy(self, classes, value_deg) -> list:
        """Basis of the direction space a1 . H + H . a3 of the affine value
        set of a triple product."""
        from .linalg import _SpanTracker

        dga = self.dga
        a1, a3 = classes[0], classes[2]
        dirs: list = []
        seen = _SpanTracker(dga.field)
        vdim_index: dict = {}

        def flat(cochain):
            out = {}
            for deg, comp in dga.components(cochain).items():
                qb = dga.cohomology_basis(deg)
                red = qb.reduce(dga.to_vector(comp, deg))
                for i, c in red.items():
                    key = (deg, i)
                    if key not in vdim_index:
                        vdim_index[key] = len(vdim_index)
                    out[vdim_index[key]] = c
            return out

        def consider(prod_cochain):
            if not prod_cochain:
                return
            vec = flat(prod_cochain)
            if vec and seen.add(vec):
                dirs.append(prod_cochain)

        specs = (
            (value_deg.q - classes[0].degree.q,
             classes[1].degree + classes[2].degree,
             lambda z: dga.wedge(dga.bar(a1.rep), z)),
            (value_deg.q - classes[2].degree.q,
             classes[0].degree + classes[1].degree,
             lambda z: dga.wedge(dga.bar(z), a3.rep)),
        )
        for q, nominal, make in specs:
            for deg in self._entry_aux_degrees(q, MultiDegree(q, nominal.aux)):
                if not (dga.in_window(deg) and dga.in_window(deg.d_target())):
                    continue
                qb = dga.cohomology_basis(deg)
                bas = dga.basis(deg)
                for rep in qb.representatives:
                    z = {bas[i]: c for i, c in rep.items()}
                    try:
                        consider(make(z))
                    except WindowTooSmall:
                        continue
        out = []
        for cochain in dirs:
            comps = dga.components(cochain)
            deg = next(iter(comps)) if len(comps) == 1 else value_deg
            out.append(CohomologyClass(dga, deg, cochain))
        return out

    def _triviality(self, coords: dict, fam: ConnectionFamily) -> str:
        if not coords:
            return "trivial"
        for p in coords.values():
            if p.is_constant() and not p.is_zero():
                return "nontrivial"
        try:
            assign = self._zero_solvable(coords)
        except ValueError:
            return "unknown"
        if assign is not None:
            return "trivial"
        # definitive None: affine over Q, or exhausted prime-field box
        return "nontrivial"

    def contains_value(self, outcome: MasseyOutcome,
                       target_class: CohomologyClass) -> bool:
        """Is ``target_class`` reachable inside the explored value family?

        Raises ValueError("nonlinear") when undecidable by the exact solvers.
        """
        if outcome.value_coords is None:
            raise InvalidInput("outcome carries no value coordinates")
        target = target_class.coords()
        assign = self._zero_solvable(outcome.value_coords,
                                     extra_target=target)
        return assign is not None

    def _sample_classes(self, fam: ConnectionFamily, coords: dict,
                        value_deg) -> list:
        dga = self.dga
        field = dga.field
        free = fam.free_vars()
        assigns = [dict()]
        for v in free[:6]:
            assigns.append({v: field.of(1)})
            assigns.append({v: field.of(-1)})
        out = []
        seen = set()
        for assign in assigns:
            concrete = {}
            for key, p in coords.items():
                val = p.evaluate(assign, field)
                if val != 0:
                    concrete[key] = val
            sig = tuple(sorted((str(k), str(v)) for k, v in concrete.items()))
            if sig in seen:
                continue
            seen.add(sig)
            conn = fam.at(assign)
            out.append(CohomologyClass(dga, value_deg, related_cocycle(conn)))
        return out

    # -- k-step products -------------------------------------------------------
    def k_step(self, classes, k: int) -> KStepOutcome:
        dga = self.dga
        n = len(classes)
        if not 1 <= k <= n - 1:
            raise InvalidInput("need 1 <= k <= n-1")
        fam = self.find_defining_system(classes, max_stage=k - 1)
        if isinstance(fam, Undefined):
            return KStepOutcome(k, False, inconclusive=fam.inconclusive)
        prof = self._profile(classes)
        tuples_pc = []
        for s in range(1, n - k + 1):
            acc: dict = {}
            for r in range(s, s + k):
                left = fam.entries.get((s, r))
                right = fam.entries.get((r + 1, s + k))
                if left and right:
                    sign = 1 if (prof[(s, r)].q + 1) % 2 == 0 else -1
                    acc = pc_add(acc, pc_wedge(
                        dga, pc_scale_sign(left, sign), right))
            tuples_pc.append((s, acc))
        all_coords: dict = {}
        for s, acc in tuples_pc:
            for key, p in self._reduce_family_value(acc).items():
                all_coords[(s,) + key] = p
        conn0 = fam.at({})
        classes_out = []
        for s, acc in tuples_pc:
            conc = pc_evaluate(acc, {}, dga.field)
            deg = prof[(s, s + k)]
            classes_out.append(CohomologyClass(
                dga, MultiDegree(deg.q + 1, deg.aux), conc))
        if not all_coords:
            triv = "trivial"
        else:
            try:
                assign = self._zero_solvable(all_coords)
                if assign is not None:
                    triv = "trivial"
                    conn0 = fam.at(assign)
                elif all(p.is_affine() for p in all_coords.values()):
                    triv = "nontrivial"
                else:
                    triv = "nontrivial" if fam.complete else "unknown"
            except ValueError:
                triv = "unknown"
        return KStepOutcome(k, True, tuple(classes_out), triv, conn0,
                            complete=fam.complete)
