"""Finite windows of differential graded algebras.

A window materializes, per multidegree, a basis of named monomials together
with the differential and the product on basis pairs.  Cochains are plain
dicts ``{monomial: scalar}`` with no stored zeros; all bookkeeping (vectors,
matrices, cohomology bases) happens through the window object.

Degrees are pairs (cohomological degree, auxiliary vector): weight for
Chevalley-Eilenberg windows, vertex-support vectors for face-ring models,
exponent vectors for Koszul complexes of monomial quotients.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MixedDegree, WindowTooSmall
from .fields import Field
from .linalg import EchelonSolver, QuotientBasis


@dataclass(frozen=True)
class MultiDegree:
    q: int
    aux: tuple

    def __add__(self, other: "MultiDegree") -> "MultiDegree":
        return MultiDegree(self.q + other.q,
                           tuple(a + b for a, b in zip(self.aux, other.aux)))

    def shift(self, dq: int) -> "MultiDegree":
        return MultiDegree(self.q + dq, self.aux)

    def d_target(self) -> "MultiDegree":
        return MultiDegree(self.q + 1, self.aux)

    def d_source(self) -> "MultiDegree":
        return MultiDegree(self.q - 1, self.aux)


def c_add(u: dict, v: dict) -> dict:
    out = dict(u)
    for m, c in v.items():
        s = out.get(m, 0) + c
        if s == 0:
            out.pop(m, None)
        else:
            out[m] = s
    return out


def c_scale(c, v: dict) -> dict:
    if c == 0:
        return {}
    return {m: c * x for m, x in v.items()}


def c_sub(u: dict, v: dict) -> dict:
    return c_add(u, c_scale(-1, v))


def merge_sorted(base: tuple, extra: tuple):
    """Sort the concatenation of two index tuples, tracking the sign of the
    permutation; returns (tuple, sign) or None when an index repeats."""
    items = list(base) + list(extra)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and items[j - 1] == items[j]:
            return None
    return tuple(items), sign


class DGAlgebra:
    """Common machinery; concrete windows implement the five hooks below."""

    field: Field

    # ---- hooks ---------------------------------------------------------
    def in_window(self, deg: MultiDegree) -> bool:
        raise NotImplementedError

    def basis(self, deg: MultiDegree) -> list:
        raise NotImplementedError

    def degree_of_mono(self, mono) -> MultiDegree:
        raise NotImplementedError

    def d_mono(self, mono) -> list:
        """List of (monomial, coefficient)."""
        raise NotImplementedError

    def mul_mono(self, m1, m2) -> list:
        """List of (monomial, coefficient); empty when the product vanishes."""
        raise NotImplementedError

    # ---- cochain operations -------------------------------------------
    def d(self, cochain: dict) -> dict:
        out: dict = {}
        for m, c in cochain.items():
            for m2, c2 in self.d_mono(m):
                s = out.get(m2, 0) + c * c2
                if s == 0:
                    out.pop(m2, None)
                else:
                    out[m2] = s
        return out

    def wedge(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for m1, c1 in u.items():
            for m2, c2 in v.items():
                c = c1 * c2
                for m, cm in self.mul_mono(m1, m2):
                    s = out.get(m, 0) + c * cm
                    if s == 0:
                        out.pop(m, None)
                    else:
                        out[m] = s
        return out

    def q_degree_of(self, cochain: dict) -> int | None:
        """Common cohomological degree, None for the zero cochain."""
        qs = {self.degree_of_mono(m).q for m in cochain}
        if not qs:
            return None
        if len(qs) > 1:
            raise MixedDegree(f"mixed cohomological degrees {sorted(qs)}")
        return qs.pop()

    def degree_of(self, cochain: dict) -> MultiDegree | None:
        degs = {self.degree_of_mono(m) for m in cochain}
        if not degs:
            return None
        if len(degs) > 1:
            raise MixedDegree("cochain is not homogeneous")
        return degs.pop()

    def bar(self, cochain: dict) -> dict:
        """Involution: degree-k elements pick up the sign (-1)^(k+1)."""
        k = self.q_degree_of(cochain)
        if k is None or (k + 1) % 2 == 0:
            return dict(cochain)
        return c_scale(-1, cochain)

    def components(self, cochain: dict) -> dict:
        out: dict = {}
        for m, c in cochain.items():
            out.setdefault(self.degree_of_mono(m), {})[m] = c
        return out

    # ---- vectors and cached solvers ------------------------------------
    def _require(self, deg: MultiDegree):
        if not self.in_window(deg):
            raise WindowTooSmall(f"degree {deg} outside the materialized window")

    def index(self, deg: MultiDegree) -> dict:
        cache = self._index_cache()
        got = cache.get(deg)
        if got is None:
            got = {m: i for i, m in enumerate(self.basis(deg))}
            cache[deg] = got
        return got

    def _index_cache(self) -> dict:
        if not hasattr(self, "_idx"):
            self._idx = {}
        return self._idx

    def to_vector(self, cochain: dict, deg: MultiDegree) -> dict:
        idx = self.index(deg)
        out = {}
        for m, c in cochain.items():
            out[idx[m]] = c
        return out

    def from_vector(self, vec: dict, deg: MultiDegree) -> dict:
        bas = self.basis(deg)
        return {bas[i]: c for i, c in vec.items() if c != 0}

    def d_solver(self, deg: MultiDegree) -> EchelonSolver:
        """Elimination data for d restricted to the given degree."""
        if not hasattr(self, "_dsolve"):
            self._dsolve = {}
        got = self._dsolve.get(deg)
        if got is not None:
            return got
        self._require(deg)
        target = deg.d_target()
        self._require(target)
        src = self.basis(deg)
        tgt_idx = self.index(target)
        rows: list[dict] = [dict() for _ in range(len(tgt_idx))]
        for j, mono in enumerate(src):
            for m2, c in self.d_mono(mono):
                rows[tgt_idx[m2]][j] = rows[tgt_idx[m2]].get(j, 0) + c
        for row in rows:
            for k in [k for k, v in row.items() if v == 0]:
                del row[k]
        got = EchelonSolver(self.field, len(src), rows)
        self._dsolve[deg] = got
        return got

    def cycles(self, deg: MultiDegree) -> list:
        return self.d_solver(deg).kernel_basis()

    def boundaries(self, deg: MultiDegree) -> list:
        prev = deg.d_source()
        if not self.in_window(prev):
            return []
        idx = self.index(deg)
        out = []
        for mono in self.basis(prev):
            img = {}
            for m2, c in self.d_mono(mono):
                i = idx[m2]
                s = img.get(i, 0) + c
                if s == 0:
                    img.pop(i, None)
                else:
                    img[i] = s
            if img:
                out.append(img)
        return out

    def cohomology_basis(self, deg: MultiDegree) -> QuotientBasis:
        if not hasattr(self, "_coh"):
            self._coh = {}
        got = self._coh.get(deg)
        if got is not None:
            return got
        got = QuotientBasis(self.field, len(self.basis(deg)),
                            self.cycles(deg), self.boundaries(deg))
        self._coh[deg] = got
        return got

    def class_of(self, cochain: dict, deg: MultiDegree | None = None) -> "CohomologyClass":
        if deg is None:
            deg = self.degree_of(cochain)
        if deg is None:
            raise MixedDegree("cannot take the class of the zero cochain without a degree")
        if self.d(cochain):
            raise MixedDegree("representative is not closed")
        return CohomologyClass(self, deg, dict(cochain))


def cohomology(dga: DGAlgebra, window) -> dict:
    """Per-degree quotient bases of ker d / im d over a set of multidegrees."""
    return {deg: dga.cohomology_basis(deg) for deg in window}


@dataclass
class CohomologyClass:
    """Cohomology class given by a closed representative.

    ``degree`` is the nominal multidegree; the representative may spread over
    several auxiliary degrees (inhomogeneous defining systems produce such
    values), in which case coordinates are keyed by (component degree, index).
    """

    dga: DGAlgebra
    degree: MultiDegree
    rep: dict

    def coords(self) -> dict:
        out = {}
        for deg, comp in self.dga.components(self.rep).items():
            vec = self.dga.to_vector(comp, deg)
            for i, c in self.dga.cohomology_basis(deg).reduce(vec).items():
                out[(deg, i)] = c
        return out

    def is_zero(self) -> bool:
        return not self.coords()

    def same_class(self, other: "CohomologyClass") -> bool:
        diff = c_sub(self.rep, other.rep)
        if not diff:
            return True
        for deg, comp in self.dga.components(diff).items():
            vec = self.dga.to_vector(comp, deg)
            if not self.dga.cohomology_basis(deg).is_zero_class(vec):
                return False
        return True

    def scaled(self, c) -> "CohomologyClass":
        return CohomologyClass(self.dga, self.degree, c_scale(c, self.rep))


def cup(x: CohomologyClass, y: CohomologyClass) -> CohomologyClass:
    """Two-fold product: the class of bar(x) wedge y, canonically reduced."""
    dga = x.dga
    prod = dga.wedge(dga.bar(x.rep), y.rep)
    deg = x.degree + y.degree
    dga._require(deg)
    vec = dga.to_vector(prod, deg)
    proj = dga.cohomology_basis(deg).project(vec)
    return CohomologyClass(dga, deg, dga.from_vector(proj, deg))


def cohomology_dims(dga: DGAlgebra, degrees) -> dict:
    return {deg: dga.cohomology_basis(deg).dim for deg in degrees}
