"""Simplicial complexes on [m], induced subcomplexes, reduced cohomology
and the per-subset table of multigraded Betti numbers.

A complex is stored by its minimal non-faces (an antichain of subsets of
size >= 2, so every element of [m] is a vertex); a subset is a face exactly
when it contains no minimal non-face.  Vertices are 1-based; bitmask
arithmetic keeps the face tests cheap.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field

from .errors import CapExceeded, InvalidInput
from .fields import QQ, Field
from .linalg import QuotientBasis

HOCHSTER_CAP = 14


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def _unmask(mask: int) -> tuple:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


@dataclass
class SimplicialComplex:
    m: int
    minimal_nonfaces: list  # sorted tuples of vertices, an antichain

    def __post_init__(self):
        nfs = sorted({tuple(sorted(set(nf))) for nf in self.minimal_nonfaces})
        for nf in nfs:
            if len(nf) < 2:
                raise InvalidInput("singleton non-face: every i must be a vertex")
            if any(v < 1 or v > self.m for v in nf):
                raise InvalidInput("non-face vertex out of range")
        masks = [_mask(nf) for nf in nfs]
        for i, a in enumerate(masks):
            for j, b in enumerate(masks):
                if i != j and a & b == a:
                    raise InvalidInput("minimal non-faces must form an antichain")
        self.minimal_nonfaces = nfs
        self._nf_masks = masks

    # ---- basic structure -------------------------------------------------
    def is_face_mask(self, mask: int) -> bool:
        return all(nf & mask != nf for nf in self._nf_masks)

    def is_face(self, vertices) -> bool:
        return self.is_face_mask(_mask(vertices))

    def faces(self, within=None) -> list:
        """All faces (as sorted vertex tuples), optionally inside a subset."""
        verts = sorted(within) if within is not None else range(1, self.m + 1)
        out = []
        verts = list(verts)
        for r in range(len(verts) + 1):
            for combo in itertools.combinations(verts, r):
                if self.is_face_mask(_mask(combo)):
                    out.append(combo)
        return out

    def faces_of_dim(self, q: int, within=None) -> list:
        """Faces with q + 1 vertices (q = -1 gives the empty face)."""
        verts = sorted(within) if within is not None else list(range(1, self.m + 1))
        if q + 1 < 0 or q + 1 > len(verts):
            return []
        return [c for c in itertools.combinations(verts, q + 1)
                if self.is_face_mask(_mask(c))]

    def facets(self) -> list:
        faces = self.faces()
        face_set = {f for f in faces}
        out = []
        for f in faces:
            mask = _mask(f)
            maximal = True
            for v in range(1, self.m + 1):
                if not (mask >> (v - 1)) & 1 and \
                        self.is_face_mask(mask | (1 << (v - 1))):
                    maximal = False
                    break
            if maximal:
                out.append(f)
        return out

    def dim(self) -> int:
        return max((len(f) for f in self.facets()), default=0) - 1

    def to_json(self) -> str:
        return json.dumps({"m": self.m,
                           "minimal_nonfaces": [list(nf) for nf in
                                                self.minimal_nonfaces]},
                          sort_keys=True)

    @staticmethod
    def from_json(data) -> "SimplicialComplex":
        if isinstance(data, str):
            data = json.loads(data)
        m = int(data["m"])
        if "minimal_nonfaces" in data:
            return SimplicialComplex(m, [tuple(nf) for nf in
                                         data["minimal_nonfaces"]])
        if "facets" in data:
            return from_facets(m, [tuple(f) for f in data["facets"]])
        raise InvalidInput("complex JSON needs minimal_nonfaces or facets")


def from_facets(m: int, facets: list) -> SimplicialComplex:
    """Complex generated by the given facets (all of [m] must appear)."""
    fmasks = [_mask(f) for f in facets]
    covered = 0
    for fm in fmasks:
        covered |= fm
    if covered != (1 << m) - 1:
        raise InvalidInput("every element of [m] must be a vertex")
    nonfaces = []
    # minimal non-faces: non-faces all of whose proper subsets are faces
    for r in range(2, m + 1):
        for combo in itertools.combinations(range(1, m + 1), r):
            cm = _mask(combo)
            if any(cm & fm == cm for fm in fmasks):
                continue
            if all(any((cm ^ (1 << (v - 1))) & fm == (cm ^ (1 << (v - 1)))
                       for fm in fmasks) for v in combo):
                nonfaces.append(combo)
    return SimplicialComplex(m, nonfaces)


def induced(K: SimplicialComplex, I) -> SimplicialComplex:
    """Induced subcomplex on I, relabeled to [|I|] by sorted order."""
    I = sorted(I)
    relabel = {v: i + 1 for i, v in enumerate(I)}
    iset = set(I)
    nfs = [tuple(relabel[v] for v in nf)
           for nf in K.minimal_nonfaces if set(nf) <= iset]
    return SimplicialComplex(len(I), nfs)


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Join: K2's vertices are shifted past K1's."""
    nfs = list(K1.minimal_nonfaces)
    nfs += [tuple(v + K1.m for v in nf) for nf in K2.minimal_nonfaces]
    return SimplicialComplex(K1.m + K2.m, nfs)


def is_flag(K: SimplicialComplex) -> bool:
    return all(len(nf) == 2 for nf in K.minimal_nonfaces)


def skeleton1(K: SimplicialComplex) -> dict:
    """1-skeleton as an adjacency dict {vertex: set of neighbours}."""
    adj = {v: set() for v in range(1, K.m + 1)}
    for u, v in itertools.combinations(range(1, K.m + 1), 2):
        if K.is_face((u, v)):
            adj[u].add(v)
            adj[v].add(u)
    return adj


def is_chordal(graph: dict) -> bool:
    """Chordality via repeated removal of simplicial vertices (a perfect
    elimination ordering exists iff the graph is chordal)."""
    adj = {v: set(ns) for v, ns in graph.items()}
    remaining = set(adj)
    while remaining:
        simplicial = None
        for v in sorted(remaining):
            nbrs = adj[v] & remaining
            if all(b in adj[a] for a, b in itertools.combinations(sorted(nbrs), 2)):
                simplicial = v
                break
        if simplicial is None:
            return False
        remaining.discard(simplicial)
    return True


def flag_complex(m: int, edges) -> SimplicialComplex:
    """Clique complex of a graph: minimal non-faces are the non-edges."""
    eset = {tuple(sorted(e)) for e in edges}
    nfs = [e for e in itertools.combinations(range(1, m + 1), 2)
           if e not in eset]
    return SimplicialComplex(m, nfs)


def graph_complex(m: int, edges) -> SimplicialComplex:
    """The graph itself as a 1-dimensional complex."""
    eset = {tuple(sorted(e)) for e in edges}
    nfs = [e for e in itertools.combinations(range(1, m + 1), 2)
           if e not in eset]
    nfs += [t for t in itertools.combinations(range(1, m + 1), 3)
            if all(tuple(sorted(p)) in eset
                   for p in itertools.combinations(t, 2))]
    return SimplicialComplex(m, nfs)


# ---- reduced simplicial cohomology ----------------------------------------

def _coboundary_rows(K: SimplicialComplex, q: int, within, field: Field):
    """Matrix of the reduced coboundary C^q(K_I) -> C^{q+1}(K_I) as rows
    indexed by (q+1)-faces; columns by q-faces."""
    src = K.faces_of_dim(q, within)
    tgt = K.faces_of_dim(q + 1, within)
    src_idx = {f: i for i, f in enumerate(src)}
    one = field.one()
    rows = []
    for f in tgt:
        row = {}
        for t in range(len(f)):
            sub = f[:t] + f[t + 1:]
            j = src_idx.get(sub)
            if j is not None:
                row[j] = one if t % 2 == 0 else -one
        rows.append(row)
    return src, tgt, rows


class ReducedCohomology:
    """Reduced cohomology of an induced subcomplex K_I over a field."""

    def __init__(self, K: SimplicialComplex, within=None, field: Field = QQ):
        self.K = K
        self.within = tuple(sorted(within)) if within is not None \
            else tuple(range(1, K.m + 1))
        self.field = field
        self._qb: dict = {}

    def quotient(self, q: int) -> QuotientBasis:
        got = self._qb.get(q)
        if got is not None:
            return got
        from .linalg import EchelonSolver
        src, _tgt, rows = _coboundary_rows(self.K, q, self.within, self.field)
        solver = EchelonSolver(self.field, len(src), rows)
        cycles = solver.kernel_basis()
        prev, cur, prows = _coboundary_rows(self.K, q - 1, self.within,
                                            self.field)
        cur_idx = {f: i for i, f in enumerate(cur)}
        boundaries = []
        for j, f in enumerate(prev):
            img = {}
            for i, row in enumerate(prows):
                c = row.get(j)
                if c is not None:
                    img[i] = c
            if img:
                boundaries.append(img)
        got = QuotientBasis(self.field, len(src), cycles, boundaries)
        self._qb[q] = got
        return got

    def dim(self, q: int) -> int:
        return self.quotient(q).dim

    def basis_faces(self, q: int) -> list:
        return self.K.faces_of_dim(q, self.within)


def reduced_cohomology(K: SimplicialComplex, q: int, field: Field = QQ,
                       within=None) -> ReducedCohomology:
    """Reduced cohomology data of K (or K_I) with the given degree warmed."""
    rc = ReducedCohomology(K, within, field)
    rc.quotient(q)
    return rc


def reduced_cache(K: SimplicialComplex, within, field: Field = QQ) -> ReducedCohomology:
    """Per-complex cache of induced-subcomplex cohomology data; the heavy
    sweeps hit the same (K, I, field) triples repeatedly."""
    cache = getattr(K, "_rc_cache", None)
    if cache is None:
        cache = {}
        K._rc_cache = cache
    key = (tuple(sorted(within)) if within is not None else None, field)
    got = cache.get(key)
    if got is None:
        got = ReducedCohomology(K, within, field)
        cache[key] = got
    return got


def reduced_cohomology_dim(K: SimplicialComplex, q: int, field: Field = QQ,
                           within=None) -> int:
    return ReducedCohomology(K, within, field).dim(q)


@dataclass
class BettiTable:
    """Nonzero entries (homological index, vertex subset) -> dimension."""

    field_tag: str
    entries: dict = dc_field(default_factory=dict)

    def total(self) -> dict:
        """Dims of H^p(Z_K) by total degree p = |I| + q + 1."""
        out: dict = {}
        for (i, I), d in self.entries.items():
            p = 2 * len(I) - i
            out[p] = out.get(p, 0) + d
        return out

    def to_json(self) -> dict:
        return {
            "field": self.field_tag,
            "entries": [{"i": i, "I": list(I), "dim": d}
                        for (i, I), d in sorted(self.entries.items(),
                                                key=lambda kv: (sorted(kv[0][1]),
                                                                kv[0][0]))],
        }

    def to_csv(self) -> str:
        lines = ["i,I,dim"]
        for (i, I), d in sorted(self.entries.items(),
                                key=lambda kv: (sorted(kv[0][1]), kv[0][0])):
            lines.append(f"{i},{' '.join(str(v) for v in I)},{d}")
        return "\n".join(lines) + "\n"


def hochster_table(K: SimplicialComplex, field: Field = QQ,
                   cap: int = HOCHSTER_CAP) -> BettiTable:
    """Per-subset Betti numbers: the (i, I) entry is the dimension of the
    reduced cohomology of K_I in degree |I| - i - 1."""
    if K.m > cap:
        raise CapExceeded(f"m = {K.m} exceeds the cap {cap}")
    table = BettiTable(field.tag)
    for r in range(0, K.m + 1):
        for I in itertools.combinations(range(1, K.m + 1), r):
            rc = ReducedCohomology(K, I, field)
            for q in range(-1, r):
                d = rc.dim(q)
                if d:
                    table.entries[(r - q - 1, I)] = d
    return table
