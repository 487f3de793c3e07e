"""N-graded Lie algebra presentations and their Chevalley-Eilenberg windows.

Built-in presentations: the positive Witt algebra W+ with [e_i, e_j] =
(j-i) e_{i+j}, and the infinite filiform algebra m0 with [e_1, e_i] =
e_{i+1}.  A window materializes the exterior complex up to a top degree and
weight; the differential is dual to the bracket with the sign fixed so that
d e^3 = e^1 ^ e^2 in m0.  Weight is preserved by d, so per-weight cohomology
of a window agrees with the full algebra whenever the weight fits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .dga import (CohomologyClass, DGAlgebra, MultiDegree, c_add, c_scale,
                  merge_sorted)
from .errors import DomainError, InvalidInput, MixedDegree, WindowTooSmall
from .fields import QQ, Field


@dataclass
class GradedLie:
    """Finite-weight truncation of an N-graded Lie algebra.

    Brackets are stored for i < j only, as lists of (k, coefficient); the
    coefficients live in Q and get coerced into a window's field later.
    """

    name: str
    weights: dict  # generator index -> weight
    brackets: dict  # (i, j), i < j -> list of (k, coeff)
    truncation_weight: int

    def __post_init__(self):
        for (i, j), terms in self.brackets.items():
            if i >= j:
                raise InvalidInput("brackets must be keyed by i < j")
            for k, _c in terms:
                if self.weights[k] != self.weights[i] + self.weights[j]:
                    raise InvalidInput(
                        f"bracket [{i},{j}] -> {k} violates weight additivity")

    @property
    def generators(self) -> list:
        return sorted(self.weights)

    def bracket(self, i: int, j: int) -> list:
        if i == j:
            return []
        if i < j:
            return list(self.brackets.get((i, j), []))
        return [(k, -c) for k, c in self.brackets.get((j, i), [])]

    def jacobi_defect(self, i: int, j: int, k: int) -> dict:
        """[[i,j],k] + [[j,k],i] + [[k,i],j] as a dict over generators."""
        out: dict = {}
        for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
            for m, cm in self.bracket(a, b):
                for r, cr in self.bracket(m, c):
                    s = out.get(r, 0) + cm * cr
                    if s == 0:
                        out.pop(r, None)
                    else:
                        out[r] = s
        return out

    def jacobi_ok(self) -> bool:
        gens = self.generators
        w = self.weights
        for ia, i in enumerate(gens):
            for ja in range(ia + 1, len(gens)):
                j = gens[ja]
                for ka in range(ja + 1, len(gens)):
                    k = gens[ka]
                    if w[i] + w[j] + w[k] > self.truncation_weight:
                        continue
                    if self.jacobi_defect(i, j, k):
                        return False
        return True

    @staticmethod
    def from_json(data) -> "GradedLie":
        if isinstance(data, str):
            data = json.loads(data)
        if "name" in data:
            name = data["name"]
            W = int(data["W"])
            if name == "m0":
                return m0(W)
            if name == "witt_plus":
                return witt_plus(W)
            raise InvalidInput(f"unknown Lie presentation {name!r}")
        weights = {int(g["i"]): int(g["w"]) for g in data["generators"]}
        brackets = {}
        for b in data["brackets"]:
            i, j = int(b["i"]), int(b["j"])
            terms = [(int(t["k"]), Fraction(t["c"])) for t in b["terms"]]
            brackets[(i, j)] = terms
        W = int(data.get("W", max(weights.values(), default=0)))
        return GradedLie("custom", weights, brackets, W)


def m0(W: int) -> GradedLie:
    """Infinite filiform algebra truncated at weight W: [e1, e_i] = e_{i+1}."""
    if W < 2:
        raise InvalidInput("need W >= 2")
    weights = {i: i for i in range(1, W + 1)}
    brackets = {(1, i): [(i + 1, 1)] for i in range(2, W) if i + 1 <= W}
    return GradedLie("m0", weights, brackets, W)


def witt_plus(W: int) -> GradedLie:
    """Positive part of the Witt algebra truncated at weight W."""
    if W < 2:
        raise InvalidInput("need W >= 2")
    weights = {i: i for i in range(1, W + 1)}
    brackets = {}
    for i in range(1, W + 1):
        for j in range(i + 1, W + 1):
            if i + j <= W:
                brackets[(i, j)] = [(i + j, j - i)]
    return GradedLie("witt_plus", weights, brackets, W)


class CEAlgebra(DGAlgebra):
    """Window of the Chevalley-Eilenberg complex with trivial coefficients.

    Monomials are strictly increasing tuples of generator indices; the
    bidegree of e^{i1} ^ ... ^ e^{iq} is (q, sum of weights).
    """

    def __init__(self, lie: GradedLie, q_max: int, w_max: int, field: Field = QQ):
        if w_max > lie.truncation_weight:
            raise InvalidInput("window weight exceeds the algebra truncation")
        self.lie = lie
        self.q_max = q_max
        self.q_store = q_max + 1
        self.w_max = w_max
        self.field = field
        self._gens = [g for g in lie.generators if lie.weights[g] <= w_max]
        # e^k |-> terms of d e^k, from the reversed bracket table
        self._dgen: dict = {g: [] for g in self._gens}
        for (i, j), terms in lie.brackets.items():
            for k, c in terms:
                if k in self._dgen:
                    self._dgen[k].append(((i, j), field.of(c)))
        self._basis_cache: dict = {}

    aux_len = 1

    # ---- window hooks ---------------------------------------------------
    def in_window(self, deg: MultiDegree) -> bool:
        (w,) = deg.aux
        return 0 <= deg.q <= self.q_store and 0 <= w <= self.w_max

    def basis(self, deg: MultiDegree) -> list:
        self._require(deg)
        got = self._basis_cache.get(deg)
        if got is None:
            (w,) = deg.aux
            got = self._enumerate(deg.q, w)
            self._basis_cache[deg] = got
        return got

    def _enumerate(self, q: int, w: int) -> list:
        out = []

        def rec(prefix, start, remaining, slots):
            if slots == 0:
                if remaining == 0:
                    out.append(tuple(prefix))
                return
            for idx in range(start, len(self._gens)):
                g = self._gens[idx]
                wg = self.lie.weights[g]
                if wg > remaining:
                    continue
                prefix.append(g)
                rec(prefix, idx + 1, remaining - wg, slots - 1)
                prefix.pop()

        rec([], 0, w, q)
        return out

    def degree_of_mono(self, mono) -> MultiDegree:
        return MultiDegree(len(mono), (sum(self.lie.weights[g] for g in mono),))

    def d_mono(self, mono) -> list:
        out: dict = {}
        for t, g in enumerate(mono):
            rest = mono[:t] + mono[t + 1:]
            sign_t = 1 if t % 2 == 0 else -1
            for (a, b), c in self._dgen.get(g, ()):
                merged = merge_sorted(rest, (a, b))
                if merged is None:
                    continue
                m2, sgn = merged
                val = out.get(m2, 0) + sign_t * sgn * c
                if val == 0:
                    out.pop(m2, None)
                else:
                    out[m2] = val
        return list(out.items())

    def mul_mono(self, m1, m2) -> list:
        merged = merge_sorted(m1, m2)
        if merged is None:
            return []
        mono, sgn = merged
        deg = self.degree_of_mono(mono)
        if not self.in_window(deg):
            raise WindowTooSmall(
                f"product of weight {deg.aux[0]} exceeds the window (w_max={self.w_max})")
        return [(mono, self.field.of(sgn))]

    def window_degrees(self) -> list:
        return [MultiDegree(q, (w,))
                for q in range(0, self.q_store + 1)
                for w in range(0, self.w_max + 1)]

    # ---- helpers --------------------------------------------------------
    def one_form(self, *terms) -> dict:
        """Cochain from (index, coeff) pairs or bare indices."""
        out: dict = {}
        for t in terms:
            if isinstance(t, tuple):
                g, c = t
            else:
                g, c = t, 1
            out = c_add(out, {(g,): self.field.of(c)})
        return out

    def deg(self, q: int, w: int) -> MultiDegree:
        return MultiDegree(q, (w,))


def ce_window(g: GradedLie, q_max: int, w_max: int, field: Field = QQ) -> CEAlgebra:
    return CEAlgebra(g, q_max, w_max, field)


def goncharova_table(q_max: int, w_max: int, field: Field = QQ) -> dict:
    """Per-bidegree dimensions of H^q_w(W+) for q <= q_max, w <= w_max."""
    dga = ce_window(witt_plus(w_max), q_max, w_max, field)
    out = {}
    for q in range(1, q_max + 1):
        for w in range(1, w_max + 1):
            out[(q, w)] = dga.cohomology_basis(dga.deg(q, w)).dim
    return out


def pentagonal_weights(q: int) -> tuple:
    return ((3 * q * q - q) // 2, (3 * q * q + q) // 2)


# ---- the omega cocycle calculus on Lambda(e^2, e^3, ...) -----------------

def _check_domain(mono) -> None:
    if any(g < 2 for g in mono):
        raise DomainError("operator defined only on forms in e^2, e^3, ...")


def d1(x: dict) -> dict:
    """Derivation with D1(e^2) = 0, D1(e^i) = e^{i-1}; weight drops by one."""
    out: dict = {}
    for mono, c in x.items():
        _check_domain(mono)
        for t, g in enumerate(mono):
            if g == 2:
                continue
            if g - 1 in mono:
                continue
            m2 = tuple(sorted(mono[:t] + (g - 1,) + mono[t + 1:]))
            s = out.get(m2, 0) + c
            if s == 0:
                out.pop(m2, None)
            else:
                out[m2] = s
    return out


def d1_power(x: dict, k: int) -> dict:
    for _ in range(k):
        if not x:
            return {}
        x = d1(x)
    return x


def d_minus1(x: dict) -> dict:
    """Right inverse of D1: on xi ^ e^i (i the top index) it is
    sum_l (-1)^l D1^l(xi) ^ e^{i+1+l}."""
    out: dict = {}
    for mono, c in x.items():
        _check_domain(mono)
        top = mono[-1]
        prefix = {mono[:-1]: c}
        sign = 1
        l = 0
        while prefix:
            for pm, pc in prefix.items():
                if pm and pm[-1] >= top + 1 + l:
                    raise DomainError("prefix indices must stay below the appended one")
                m2 = pm + (top + 1 + l,)
                s = out.get(m2, 0) + sign * pc
                if s == 0:
                    out.pop(m2, None)
                else:
                    out[m2] = s
            prefix = d1(prefix)
            sign = -sign
            l += 1
    return out


def d_minus1_power(x: dict, k: int) -> dict:
    for _ in range(k):
        if not x:
            return {}
        x = d_minus1(x)
    return x


def omega_of(phi: dict, m: int) -> dict:
    """Extended omega on arguments phi ^ e^m ^ e^{m+1}:
    sum_l (-1)^l D1^l(phi ^ e^m) ^ e^{m+1+l}."""
    psi: dict = {}
    for mono, c in phi.items():
        merged = merge_sorted(mono, (m,))
        if merged is None:
            continue
        m2, sgn = merged
        s = psi.get(m2, 0) + sgn * c
        if s == 0:
            psi.pop(m2, None)
        else:
            psi[m2] = s
    out: dict = {}
    sign = 1
    l = 0
    while psi:
        for pm, pc in psi.items():
            m2 = pm + (m + 1 + l,)
            s = out.get(m2, 0) + sign * pc
            if s == 0:
                out.pop(m2, None)
            else:
                out[m2] = s
        psi = d1(psi)
        sign = -sign
        l += 1
    return out


@dataclass
class OmegaCocycle:
    """Closed (q+1)-form omega(e^{i1} ^ ... ^ e^{iq} ^ e^{iq+1}) of weight
    i1 + ... + i_{q-1} + 2 iq + 1, given by its strictly increasing index
    tuple (i1, ..., iq)."""

    indices: tuple
    form: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        idx = tuple(self.indices)
        if not idx or any(i < 2 for i in idx) or list(idx) != sorted(set(idx)):
            raise InvalidInput("indices must satisfy 2 <= i1 < ... < iq")
        object.__setattr__(self, "indices", idx)
        if not self.form:
            self.form = omega_of({idx[:-1]: 1}, idx[-1])

    @property
    def weight(self) -> int:
        return sum(self.indices[:-1]) + 2 * self.indices[-1] + 1

    @property
    def q(self) -> int:
        return len(self.indices) + 1


def omega(*indices) -> OmegaCocycle:
    if len(indices) == 1 and isinstance(indices[0], (tuple, list)):
        indices = tuple(indices[0])
    return OmegaCocycle(tuple(indices))


def staircase_connection(dga: CEAlgebra, k: int):
    """Explicit defining system for <e^2, e^1 x (2k-3), e^2> over m0.

    First row (-1)^{j+1} e^{j+1}, inner diagonal e^1, last column descending
    powers; the related cocycle is 2 (-1)^k omega(e^k ^ e^{k+1}).
    """
    from .massey import FormalConnection

    if k < 2:
        raise InvalidInput("need k >= 2")
    n = 2 * k - 1
    f = dga.field
    entries: dict = {}
    entries[(1, 1)] = dga.one_form(2)
    entries[(n, n)] = dga.one_form(2)
    for i in range(2, n):
        entries[(i, i)] = dga.one_form(1)
    for j in range(2, n):
        sign = 1 if (j + 1) % 2 == 0 else -1
        entries[(1, j)] = dga.one_form((j + 1, sign))
    for i in range(2, n):
        entries[(i, n)] = dga.one_form(n + 2 - i)
    return FormalConnection(dga, n, entries)


def omega_tail_connection(dga: CEAlgebra, i1: int, tail: OmegaCocycle):
    """Explicit defining system for <e^2, e^1 x (i1-2), omega(...)>: first row
    (-1)^{j+1} e^{j+1}, inner diagonal e^1, last column with shift-operator
    powers applied to the closing cocycle."""
    from .massey import FormalConnection

    if i1 < 3:
        raise InvalidInput("need i1 >= 3")
    n = i1
    f = dga.field
    entries: dict = {}
    entries[(1, 1)] = dga.one_form(2)
    for i in range(2, n):
        entries[(i, i)] = dga.one_form(1)
    entries[(n, n)] = {m: f.of(c) for m, c in tail.form.items()}
    for j in range(2, n):
        sign = 1 if (j + 1) % 2 == 0 else -1
        entries[(1, j)] = dga.one_form((j + 1, sign))
    for i in range(2, n):
        pw = d_minus1_power(tail.form, n - i)
        entries[(i, n)] = {m: f.of(c) for m, c in pw.items()}
    return FormalConnection(dga, n, entries)


def five_fold_connection(dga: CEAlgebra, t=0):
    """One-parameter family of defining systems for the conjugated 5-fold
    product <e^1, e^2, -e^1, -2e^1, -e^2> over W+, with related cocycle
    (e^2 ^ e^5 - 3 e^3 ^ e^4) + t e^2 ^ e^3."""
    from .massey import FormalConnection

    f = dga.field
    t = f.of(t)
    e = dga.one_form
    entries = {
        (1, 1): e(1), (2, 2): e(2), (3, 3): e((1, -1)),
        (4, 4): e((1, -2)), (5, 5): e((2, -1)),
        (1, 2): e(3), (1, 3): e(4), (1, 4): e(5),
        (2, 3): e(3), (2, 4): e(4),
        (3, 4): e((2, -1)),
        (3, 5): {(4,): f.of(-1), (2,): -t} if t != 0 else {(4,): f.of(-1)},
        (4, 5): e((3, 2)),
    }
    entries = {k: {m: c for m, c in v.items() if c != 0}
               for k, v in entries.items()}
    return FormalConnection(dga, 5, {k: v for k, v in entries.items() if v})


def one_dim_classes(dga: CEAlgebra, scalars) -> list:
    """Classes alpha e^1 + beta e^2 from (alpha, beta) pairs; mixed-weight
    representatives get the nominal degree label (1, 0)."""
    out = []
    for a, b in scalars:
        rep = dga.one_form((1, a), (2, b))
        if not rep:
            raise InvalidInput("zero class")
        if dga.d(rep):
            raise InvalidInput("representative not closed")
        try:
            deg = dga.degree_of(rep)
        except MixedDegree:
            deg = MultiDegree(1, (0,))
        out.append(CohomologyClass(dga, deg, rep))
    return out


def triple_criterion(scalars) -> bool:
    """Vanishing of b1 (a2 b3 - a3 b2) - b3 (a1 b2 - a2 b1): triviality of
    the triple product of alpha_i e^1 + beta_i e^2 over m0."""
    (a1, b1), (a2, b2), (a3, b3) = scalars
    return b1 * (a2 * b3 - a3 * b2) - b3 * (a1 * b2 - a2 * b1) == 0


def family_scalars(tag: str, n: int, params: dict) -> list:
    """(alpha, beta) tuples for the named trivial product families over m0.

    A: n equal classes alpha e^1 + beta e^2.
    B: classes (i alpha + beta) e^1 + e^2.
    C: e^1 x l, then e^2 + alpha e^1, then e^1 x (n - l - 1).
    D: e^2 + alpha e^1, e^1 x 2k, e^2 + beta e^1 (n = 2k + 2).
    """
    if tag == "A":
        a, b = params["alpha"], params["beta"]
        return [(a, b)] * n
    if tag == "B":
        a, b = params["alpha"], params["beta"]
        if a == 0:
            raise InvalidInput("family B needs alpha != 0")
        return [(i * a + b, 1) for i in range(1, n + 1)]
    if tag == "C":
        a, l = params["alpha"], params["l"]
        if not 0 <= l <= n - 1:
            raise InvalidInput("need 0 <= l <= n-1")
        out = [(1, 0)] * l + [(a, 1)] + [(1, 0)] * (n - l - 1)
        return out
    if tag == "D":
        if n < 4 or n % 2 != 0:
            raise InvalidInput("family D needs n = 2k + 2, k >= 1")
        a, b = params["alpha"], params["beta"]
        return [(a, 1)] + [(1, 0)] * (n - 2) + [(b, 1)]
    raise InvalidInput(f"unknown family {tag!r}")


_m0_window_cache: dict = {}


def m0_window(w_max: int, field: Field = QQ, q_max: int = 3) -> CEAlgebra:
    """Shared m0 windows: the cached elimination data makes repeated searches
    (classification sweeps) cheap."""
    key = (w_max, q_max, field)
    got = _m0_window_cache.get(key)
    if got is None:
        got = ce_window(m0(w_max), q_max, w_max, field)
        _m0_window_cache[key] = got
    return got


def classify_1d_massey(spec, field: Field = QQ, budget: int = 16,
                       w_max: int | None = None):
    """Massey outcome for products of classes alpha e^1 + beta e^2 over m0.

    ``spec`` is either a list of (alpha, beta) pairs or a dict
    {"family": tag, "n": n, ...family parameters...}.
    """
    from .massey import MasseyEngine

    if isinstance(spec, dict):
        scalars = family_scalars(spec["family"], int(spec["n"]),
                                 {k: v for k, v in spec.items()
                                  if k not in ("family", "n")})
    else:
        scalars = list(spec)
    n = len(scalars)
    if w_max is None:
        w_max = 2 * n + 4
    dga = m0_window(w_max, field)
    scalars = [(field.of(a), field.of(b)) for a, b in scalars]
    classes = one_dim_classes(dga, scalars)
    engine = MasseyEngine(dga, budget=budget, homogeneous_aux=False)
    return engine.massey(classes)


def omega_expand(form: dict) -> dict:
    """Expansion of a closed form in Lambda(e^2, e^3, ...) into the omega
    basis, computed by peeling minimal last indices.

    On that subcomplex d F = e^1 ^ D1 F, so closed means D1 F = 0; for such F
    every monomial of minimal last index L must end in (L-1, L) (decrementing
    the last index is injective on the distinct prefixes, so the slice could
    not cancel in D1 F otherwise), and subtracting the matching omega forms
    strictly raises the minimal last index.  Returns {index tuple: coeff}.
    """
    from .errors import UnsupportedOperands

    rest = {m: c for m, c in form.items() if c != 0}
    out: dict = {}
    while rest:
        L = min(m[-1] for m in rest)
        slice_monos = [m for m in rest if m[-1] == L]
        for mono in slice_monos:
            if len(mono) < 2 or mono[-2] != L - 1:
                raise UnsupportedOperands(
                    "form is not closed in Lambda(e^2, ...)")
            c = rest.get(mono, 0)
            if c == 0:
                continue
            out[mono[:-1]] = c
            rest = c_add(rest, c_scale(-c, omega(mono[:-1]).form))
    return out


def m0_product(x, y: OmegaCocycle) -> dict:
    """Product of the listed basis classes of H*(m0), in closed form.

    ``x`` is 1 or 2 (for the classes [e^1], [e^2]) or an OmegaCocycle.
    Products of omega classes stay inside Lambda(e^2, ...), are closed there,
    and expand exactly into omega cocycles; the returned cochain is that
    combination (it equals the wedge product on the nose).
    """
    from .errors import UnsupportedOperands

    if x == 1:
        return {}
    if x == 2:
        if y.indices[0] == 2:
            return {}
        return omega((2,) + y.indices).form
    if not isinstance(x, OmegaCocycle):
        raise UnsupportedOperands(f"unsupported left operand {x!r}")
    wedge: dict = {}
    for m1, c1 in x.form.items():
        for m2, c2 in y.form.items():
            merged = merge_sorted(m1, m2)
            if merged is None:
                continue
            mm, sgn = merged
            s = wedge.get(mm, 0) + sgn * c1 * c2
            if s == 0:
                wedge.pop(mm, None)
            else:
                wedge[mm] = s
    combo = omega_expand(wedge)
    out: dict = {}
    for idx, c in combo.items():
        out = c_add(out, c_scale(c, omega(idx).form))
    return out
