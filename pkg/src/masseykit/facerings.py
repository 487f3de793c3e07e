"""The quotient model R(K) of the face ring, its cohomology, the simplicial
product rule, and multidegree-restricted Massey computation.

R(K) = k[K] (x) Lambda[u_1..u_m] / (v_i^2 = u_i v_i = 0) with d u_i = v_i;
its cohomology per squarefree multidegree I is the reduced cohomology of the
induced subcomplex K_I, shifted.  Monomials are pairs (sigma, J) for a face
sigma and a disjoint u-support J; the auxiliary degree is the 0/1 support
vector of sigma + J, so entries of defining systems are confined to unions
of the input supports by additivity, which keeps every search finite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .dga import CohomologyClass, DGAlgebra, MultiDegree
from .errors import CapExceeded, InvalidInput, OverlappingSupports
from .fields import QQ, Field
from .linalg import _SpanTracker
from .massey import MasseyEngine, MasseyOutcome
from .simplicial import BettiTable, SimplicialComplex, reduced_cache

RK_CAP = 14


class RKAlgebra(DGAlgebra):
    """Window of R(K), optionally restricted to supports inside a vertex set."""

    def __init__(self, K: SimplicialComplex, field: Field = QQ,
                 vertices=None, cap: int = RK_CAP):
        self.K = K
        self.field = field
        self.vertices = tuple(sorted(vertices)) if vertices is not None \
            else tuple(range(1, K.m + 1))
        if len(self.vertices) > cap:
            raise CapExceeded(
                f"{len(self.vertices)} vertices exceed the cap {cap}")
        self.aux_len = K.m
        self._vset = set(self.vertices)
        self._bases: dict = {}

    # ---- degrees ----------------------------------------------------------
    def _support_ok(self, aux) -> bool:
        return all(v == 0 or (i + 1) in self._vset
                   for i, v in enumerate(aux) if v)

    def in_window(self, deg: MultiDegree) -> bool:
        if any(v < 0 for v in deg.aux):
            return False
        if any(v >= 2 for v in deg.aux):
            return True  # materialized as the zero space
        return self._support_ok(deg.aux)

    def window_degrees(self) -> list:
        out = []
        for r in range(len(self.vertices) + 1):
            for S in itertools.combinations(self.vertices, r):
                aux = self._aux_of(S)
                for q in range(len(S), 2 * len(S) + 1):
                    out.append(MultiDegree(q, aux))
        return out

    def _aux_of(self, support) -> tuple:
        aux = [0] * self.K.m
        for v in support:
            aux[v - 1] = 1
        return tuple(aux)

    def support_of(self, deg: MultiDegree) -> tuple:
        return tuple(i + 1 for i, v in enumerate(deg.aux) if v)

    def basis(self, deg: MultiDegree) -> list:
        self._require(deg)
        got = self._bases.get(deg)
        if got is not None:
            return got
        if any(v >= 2 for v in deg.aux):
            got = []
        else:
            S = self.support_of(deg)
            k = deg.q - len(S)  # = |sigma|
            if k < 0 or k > len(S):
                got = []
            else:
                got = []
                sset = set(S)
                for sigma in self.K.faces_of_dim(k - 1, within=S):
                    J = tuple(sorted(sset - set(sigma)))
                    got.append((sigma, J))
                got.sort()
        self._bases[deg] = got
        return got

    def degree_of_mono(self, mono) -> MultiDegree:
        sigma, J = mono
        return MultiDegree(2 * len(sigma) + len(J),
                           self._aux_of(tuple(sigma) + tuple(J)))

    def d_mono(self, mono) -> list:
        sigma, J = mono
        out = []
        one = self.field.one()
        for t, j in enumerate(J):
            new = tuple(sorted(sigma + (j,)))
            if self.K.is_face(new):
                sign = one if t % 2 == 0 else -one
                out.append(((new, J[:t] + J[t + 1:]), sign))
        return out

    def mul_mono(self, m1, m2) -> list:
        s1, J1 = m1
        s2, J2 = m2
        sup1 = set(s1) | set(J1)
        sup2 = set(s2) | set(J2)
        if sup1 & sup2:
            return []
        sigma = tuple(sorted(s1 + s2))
        if not self.K.is_face(sigma):
            return []
        inv = sum(1 for a in J1 for b in J2 if a > b)
        sign = self.field.one() if inv % 2 == 0 else -self.field.one()
        return [((sigma, tuple(sorted(J1 + J2))), sign)]

    # ---- transport between simplicial cochains and R(K) --------------------
    def from_simplicial(self, I, cochain: dict) -> dict:
        """Chain isomorphism C~^{|sigma|-1}(K_I) -> R(K) in multidegree I:
        chi_sigma |-> (-1)^(sum over i in sigma of #{j in I: j < i})
        v_sigma u_{I minus sigma}."""
        I = tuple(sorted(I))
        iset = set(I)
        out = {}
        for sigma, c in cochain.items():
            sigma = tuple(sorted(sigma))
            if not set(sigma) <= iset:
                raise InvalidInput("cochain face escapes the support")
            exp = sum(sum(1 for j in I if j < i) for i in sigma)
            sign = 1 if exp % 2 == 0 else -1
            J = tuple(sorted(iset - set(sigma)))
            out[(sigma, J)] = self.field.of(sign) * c
        return out

    def to_simplicial(self, I, cochain: dict) -> dict:
        I = tuple(sorted(I))
        out = {}
        for (sigma, _J), c in cochain.items():
            exp = sum(sum(1 for j in I if j < i) for i in sigma)
            sign = 1 if exp % 2 == 0 else -1
            out[sigma] = self.field.of(sign) * c
        return out


@dataclass
class ZkClass:
    """Cohomology class of the moment-angle complex in one multidegree,
    carried as a reduced simplicial cocycle on the induced subcomplex."""

    I: tuple
    q: int  # reduced simplicial degree
    cochain: dict  # face tuple -> scalar

    @property
    def zk_degree(self) -> int:
        return len(self.I) + self.q + 1


def rk_cohomology(K: SimplicialComplex, field: Field = QQ,
                  cap: int = RK_CAP):
    """(BettiTable, classes) computed from the R(K) model; dims must agree
    with the Hochster route per multidegree."""
    if K.m > cap:
        raise CapExceeded(f"m = {K.m} exceeds the cap {cap}")
    alg = RKAlgebra(K, field, cap=cap)
    table = BettiTable(field.tag)
    classes = []
    for r in range(0, K.m + 1):
        for I in itertools.combinations(range(1, K.m + 1), r):
            aux = alg._aux_of(I)
            for q in range(r, 2 * r + 1):
                deg = MultiDegree(q, aux)
                if not alg.basis(deg):
                    continue
                qb = alg.cohomology_basis(deg)
                if qb.dim:
                    table.entries[(2 * r - q, I)] = qb.dim
                    bas = alg.basis(deg)
                    for rep in qb.representatives:
                        cochain = {bas[i]: c for i, c in rep.items()}
                        classes.append(
                            ZkClass(I, q - r - 1,
                                    alg.to_simplicial(I, cochain)))
    return table, classes


def zk_classes(K: SimplicialComplex, field: Field = QQ,
               cap: int = RK_CAP) -> list:
    """Basis classes of reduced cohomology per subset, simplicial route."""
    if K.m > cap:
        raise CapExceeded(f"m = {K.m} exceeds the cap {cap}")
    out = []
    for r in range(1, K.m + 1):
        for I in itertools.combinations(range(1, K.m + 1), r):
            rc = reduced_cache(K, I, field)
            for q in range(-1, r):
                qb = rc.quotient(q)
                faces = rc.basis_faces(q)
                for rep in qb.representatives:
                    out.append(ZkClass(I, q,
                                       {faces[i]: c for i, c in rep.items()}))
    return out


def _inv(A, B) -> int:
    return sum(1 for a in A for b in B if a > b)


def join_sign(s1, I1, s2, I2) -> int:
    """Shuffle parity of the join isomorphism, fixed so that the simplicial
    product rule agrees with the cochain product in the R(K) model."""
    J1 = [v for v in I1 if v not in s1]
    J2 = [v for v in I2 if v not in s2]
    inv = _inv(s1, I2) + _inv(s2, I1) + _inv(J1, J2)
    return 1 if inv % 2 == 0 else -1


def zk_cup(K: SimplicialComplex, x: ZkClass, y: ZkClass,
           field: Field = QQ) -> ZkClass | None:
    """Product rule: zero on overlapping supports, otherwise the signed
    join restricted to the induced subcomplex on the union."""
    if set(x.I) & set(y.I):
        return None
    I = tuple(sorted(set(x.I) | set(y.I)))
    q = x.q + y.q + 1
    out: dict = {}
    for s1, c1 in x.cochain.items():
        for s2, c2 in y.cochain.items():
            tau = tuple(sorted(s1 + s2))
            if K.is_face(tau):
                sgn = join_sign(s1, x.I, s2, y.I)
                v = out.get(tau, field.zero()) + field.of(sgn) * c1 * c2
                if v == 0:
                    out.pop(tau, None)
                else:
                    out[tau] = v
    return ZkClass(I, q, out)


def zk_class_is_zero(K: SimplicialComplex, cls: ZkClass,
                     field: Field = QQ) -> bool:
    rc = reduced_cache(K, cls.I, field)
    faces = rc.basis_faces(cls.q)
    idx = {f: i for i, f in enumerate(faces)}
    vec = {idx[f]: c for f, c in cls.cochain.items() if c != 0}
    if not vec:
        return True
    return rc.quotient(cls.q).is_zero_class(vec)


def _product_can_live(K, x: ZkClass, y: ZkClass, field) -> bool:
    """Cheap prune: the product of x and y lands in a zero group unless the
    reduced cohomology of the union is nonzero in the stacked degree."""
    if set(x.I) & set(y.I):
        return False
    union = tuple(sorted(set(x.I) | set(y.I)))
    return reduced_cache(K, union, field).dim(x.q + y.q + 1) != 0


def cup_length(K: SimplicialComplex, field: Field = QQ,
               cap: int = RK_CAP) -> int:
    """Largest number of positive-degree classes with a nonzero product."""
    basis = [c for c in zk_classes(K, field, cap)]
    if not basis:
        return 0
    level = [c for c in basis]
    length = 1
    while True:
        nxt = []
        seen: dict = {}
        for c in level:
            for b in basis:
                if not _product_can_live(K, c, b, field):
                    continue
                prod = zk_cup(K, c, b, field)
                if prod is None or zk_class_is_zero(K, prod, field):
                    continue
                key = (prod.I, prod.q)
                rc = reduced_cache(K, prod.I, field)
                faces = rc.basis_faces(prod.q)
                idx = {f: i for i, f in enumerate(faces)}
                vec = {idx[f]: v for f, v in prod.cochain.items() if v != 0}
                red = rc.quotient(prod.q).reduce(vec)
                span = seen.setdefault(key, _SpanTracker(field))
                if span.add(red):
                    nxt.append(prod)
        if not nxt:
            return length
        level = nxt
        length += 1


# ---- multidegree-restricted Massey products --------------------------------

def _degree_profile(classes) -> list:
    return [len(c.I) + c.q + 1 for c in classes]


def zk_massey(K: SimplicialComplex, classes: list, field: Field = QQ,
              budget: int = 8, cap: int = RK_CAP) -> MasseyOutcome:
    """Massey product of moment-angle classes on pairwise disjoint supports,
    computed in R(K) restricted to the union of the supports.

    For n = 3 the outcome is upgraded to strict when the indeterminacy
    vanishes; for higher orders strictness comes from the vanishing-entry
    certificate, which is the content of the sufficiency conditions checked
    by ``mainlemma_check``.
    """
    supports = [tuple(sorted(c.I)) for c in classes]
    for a, b in itertools.combinations(range(len(supports)), 2):
        if set(supports[a]) & set(supports[b]):
            raise OverlappingSupports("class supports must be disjoint")
    V = tuple(sorted(v for I in supports for v in I))
    alg = RKAlgebra(K, field, vertices=V, cap=cap)
    engine = MasseyEngine(alg, budget=budget, homogeneous_aux=True)
    chain_classes = []
    for c in classes:
        rk = alg.from_simplicial(c.I, c.cochain)
        deg = MultiDegree(len(c.I) + c.q + 1, alg._aux_of(c.I))
        if alg.d(rk):
            raise InvalidInput("class representative is not a cocycle")
        chain_classes.append(CohomologyClass(alg, deg, rk))
    out = engine.massey(chain_classes)
    if out.status == "affine" and not out.indeterminacy:
        out = MasseyOutcome(
            "strict", out.n, out.triviality,
            representative=out.representative, classes=out.classes,
            indeterminacy=[], witness=out.witness, complete=out.complete,
            certificate=engine.strictness_certificate(chain_classes),
            value_coords=out.value_coords, value_affine=out.value_affine)
    return out


def mainlemma_check(K: SimplicialComplex, supports: list, dims: list,
                    field: Field = QQ) -> dict:
    """Sufficiency conditions for definedness (cond1) and strictness (cond2)
    of the product of classes with the given supports and reduced degrees:
    the reduced cohomology of every consecutive union must vanish in the
    stacked degree (cond1) resp. one below it (cond2)."""
    k = len(supports)
    supports = [tuple(sorted(I)) for I in supports]
    for a, b in itertools.combinations(range(k), 2):
        if set(supports[a]) & set(supports[b]):
            raise OverlappingSupports("supports must be pairwise disjoint")
    if len(dims) != k:
        raise InvalidInput("need one degree per support")
    cond1 = True
    cond2 = True
    for r in range(1, k - 1):
        for s in range(1, k - r + 1):
            union = tuple(sorted(v for I in supports[s - 1:s + r]
                                 for v in I))
            d = sum(dims[s - 1:s + r]) + 1
            rc = reduced_cache(K, union, field)
            if rc.dim(d) != 0:
                cond1 = False
            if rc.dim(d - 1) != 0:
                cond2 = False
    return {"cond1": cond1, "cond2": cond2}


def generator_class(K: SimplicialComplex, I, field: Field = QQ,
                    q: int | None = None) -> ZkClass:
    """Canonical generator of the reduced cohomology of K_I (the group must
    be one-dimensional; pass q when several degrees are nonzero)."""
    I = tuple(sorted(I))
    rc = reduced_cache(K, I, field)
    hits = []
    qs = [q] if q is not None else range(-1, len(I))
    for qq in qs:
        qb = rc.quotient(qq)
        if qb.dim:
            hits.append((qq, qb))
    if len(hits) != 1 or hits[0][1].dim != 1:
        raise InvalidInput(f"K_I has no canonical generator on {I}")
    qq, qb = hits[0]
    faces = rc.basis_faces(qq)
    rep = qb.representatives[0]
    return ZkClass(I, qq, {faces[i]: c for i, c in rep.items()})


def triple_massey_scan(K: SimplicialComplex, field: Field = QQ,
                       cap: int = RK_CAP, budget: int = 8,
                       support_mode: str = "edges",
                       max_support: int = 4,
                       stop_on_nontrivial: bool = False) -> list:
    """Ordered triples of classes on pairwise-disjoint supports with the
    outcome of their triple product.

    ``support_mode``: "edges" scans the degree-zero generators of missing
    edges only; "h0" widens the scan to degree-zero classes on disconnected
    induced subcomplexes with up to ``max_support`` vertices (products of
    3-dimensional classes alone can be trivial throughout even when larger
    supports carry nontrivial products).  Definedness is pre-screened by the
    vanishing of the consecutive products and the value group.
    """
    if K.m > cap:
        raise CapExceeded(f"m = {K.m} exceeds the cap {cap}")
    if support_mode == "edges":
        supports = [e for e in itertools.combinations(range(1, K.m + 1), 2)
                    if not K.is_face(e)]
        sizes = {2}
    elif support_mode == "h0":
        sizes = set(range(2, max_support + 1))
        supports = []
        for r in sorted(sizes):
            for I in itertools.combinations(range(1, K.m + 1), r):
                if reduced_cache(K, I, field).dim(0):
                    supports.append(I)
    else:
        raise InvalidInput(f"unknown support mode {support_mode!r}")
    by_support = {}
    for I in supports:
        rc = reduced_cache(K, I, field)
        qb = rc.quotient(0)
        faces = rc.basis_faces(0)
        by_support[I] = [ZkClass(I, 0, {faces[i]: c for i, c in rep.items()})
                         for rep in qb.representatives]
    out = []
    for I1, I2, I3 in itertools.permutations(supports, 3):
        if set(I1) & set(I2) or set(I1) & set(I3) or set(I2) & set(I3):
            continue
        union = tuple(sorted(set(I1) | set(I2) | set(I3)))
        rc_union = reduced_cache(K, union, field)
        for classes in itertools.product(by_support[I1], by_support[I2],
                                         by_support[I3]):
            if support_mode != "edges" and rc_union.dim(1) == 0:
                continue
            outcome = zk_massey(K, list(classes), field, budget=budget,
                                cap=cap)
            out.append((I1, I2, I3, outcome))
            if stop_on_nontrivial and outcome.defined and \
                    outcome.triviality == "nontrivial":
                return out
    return out


# ---- Golod certification -----------------------------------------------------

@dataclass
class GolodVerdict:
    status: str  # "golod-up-to-cap" | "not-golod" | "unknown"
    order_cap: int
    witness: tuple | None = None  # ("product", x, y) | ("massey", classes, outcome)
    multiplication_trivial: bool = True
    massey_trivial_up_to_cap: bool = True


def golod_test(K: SimplicialComplex, field: Field = QQ,
               order_cap: int | None = None, cap: int = RK_CAP,
               budget: int = 8) -> GolodVerdict:
    """Trivial multiplication plus trivial defined Massey products up to the
    order cap.  A nonzero product or a nontrivial defined Massey product is
    a definitive counterexample; full Golodness is never certified."""
    if K.m > cap:
        raise CapExceeded(f"m = {K.m} exceeds the cap {cap}")
    if order_cap is None:
        order_cap = min(K.m - 1, 5)
    basis = zk_classes(K, field, cap)
    for x in basis:
        for y in basis:
            if not _product_can_live(K, x, y, field):
                continue
            prod = zk_cup(K, x, y, field)
            if prod is not None and not zk_class_is_zero(K, prod, field):
                return GolodVerdict("not-golod", order_cap,
                                    ("product", x, y),
                                    multiplication_trivial=False)
    by_support: dict = {}
    for c in basis:
        by_support.setdefault(c.I, []).append(c)
    supports = sorted(by_support)
    unknown = False

    def disjoint_tuples(n):
        out = []

        def rec(prefix, used):
            if len(prefix) == n:
                out.append(tuple(prefix))
                return
            if (n - len(prefix)) * 2 > K.m - len(used):
                return
            for I in supports:
                if used & set(I):
                    continue
                prefix.append(I)
                rec(prefix, used | set(I))
                prefix.pop()

        rec([], set())
        return out

    for n in range(3, order_cap + 1):
        for sups in disjoint_tuples(n):
            union = tuple(sorted(v for I in sups for v in I))
            rc = reduced_cache(K, union, field)
            for combo in itertools.product(*(by_support[I] for I in sups)):
                # the value group must be nonzero for a nontrivial product
                d_val = sum(c.q for c in combo) + 1
                if rc.dim(d_val) == 0:
                    continue
                outcome = zk_massey(K, list(combo), field, budget=budget,
                                    cap=cap)
                if not outcome.defined:
                    continue
                if outcome.triviality == "nontrivial":
                    return GolodVerdict("not-golod", order_cap,
                                        ("massey", list(combo), outcome),
                                        massey_trivial_up_to_cap=False)
                if outcome.triviality == "unknown":
                    unknown = True
    if unknown:
        return GolodVerdict("unknown", order_cap)
    return GolodVerdict("golod-up-to-cap", order_cap)
