"""The radical-square-zero cyclic Nakayama algebra kZ_n/J^2 with its Hopf structure.

Basis: vertices e_0..e_{n-1} and arrows a_0..a_{n-1}, a_i: e_i -> e_{i+1}; paths
compose right to left.  Left modules are quiver representations: a vector space
per vertex and a matrix ``arrows[i]`` from vertex i to vertex i+1, acting on
column vectors, with ``arrows[i+1] @ arrows[i] == 0``.

Tensor products of modules use Delta; the vertex-i space of M (x) N is spanned by
Delta(e_i) applied to the blocks M_u (x) N_w with u + w = i, ordered by u
ascending.  For mu = 0 Delta(e_i) is block diagonal and this is the plain block
sum; for mu = 1 the coordinates are still the block coordinates because
Delta(e_i) only adds terms shifted two vertices away.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactlin import Matrix, image_basis, inverse, parse_scalar, rank, scalar_to_str, solve
from .hopf_core import (
    HopfPresentation,
    build_group_datum_algebra,
    check_hopf_axioms,
    cyclic_datum,
    dualize,
    validate_group_datum,
)

__all__ = [
    "CyclicAlgebra",
    "ModuleMap",
    "QuiverRep",
    "build_H",
    "direct_sum",
    "f_iso",
    "from_action",
    "is_isomorphic",
    "module_decompose",
    "module_tensor",
    "projective",
    "simple",
    "tensor_maps",
    "to_action",
    "zero_rep",
]


class RelationError(ValueError):
    """A representation violates the radical-square-zero relation."""


# ---------------------------------------------------------------------------
# the algebra


@dataclass(frozen=True, eq=False)
class CyclicAlgebra:
    n: int
    mu: int
    hopf: HopfPresentation
    # Delta(b) as tuples (kind1, vertex1, kind2, vertex2, coeff); kind is "e" or "a"
    terms: tuple

    def e(self, i: int) -> int:
        return i % self.n

    def a(self, i: int) -> int:
        return self.n + i % self.n

    def delta_terms(self, kind: str, i: int) -> tuple:
        return self.terms[self.e(i) if kind == "e" else self.a(i)]


def _basis_names(n: int) -> tuple[str, ...]:
    return tuple(f"e{i}" for i in range(n)) + tuple(f"a{i}" for i in range(n))


def _closed_form_hopf(n: int) -> HopfPresentation:
    e = lambda i: i % n  # noqa: E731
    a = lambda i: n + i % n  # noqa: E731
    mult = {}
    for i in range(n):
        mult[(e(i), e(i))] = {e(i): 1}
        mult[(a(i), e(i))] = {a(i): 1}
        mult[(e(i + 1), a(i))] = {a(i): 1}
    unit = {e(i): 1 for i in range(n)}
    comult = {}
    for i in range(n):
        comult[e(i)] = {(e(j), e(i - j)): 1 for j in range(n)}
        d = {}
        for j in range(n):
            l = (i - j) % n
            d[(e(j), a(l))] = 1
            d[(a(j), e(l))] = (-1) ** l
        comult[a(i)] = d
    counit = tuple(1 if k == 0 else 0 for k in range(2 * n))
    antipode = {}
    for i in range(n):
        antipode[e(i)] = {e(-i): 1}
        antipode[a(i)] = {a(-i - 1): (-1) ** i}
    return HopfPresentation(_basis_names(n), mult, unit, comult, counit, antipode)


def dual_hopf(n: int, mu: int) -> HopfPresentation:
    """Dual of A(n, 2, mu, -1) relabelled by p_{g^i} -> e_i, p_{g^i x} -> a_i."""
    alg = build_group_datum_algebra(cyclic_datum(n, (1, 2), mu))
    dual = dualize(alg)
    # A has basis g^i x^m at index 2i + m
    perm = [0] * (2 * n)
    for i in range(n):
        perm[2 * i] = i
        perm[2 * i + 1] = n + i
    return dual.relabel(perm, _basis_names(n))


def _terms_from_hopf(h: HopfPresentation, n: int) -> tuple:
    def split(k):
        return ("e", k) if k < n else ("a", k - n)

    out = []
    for c in range(2 * n):
        row = []
        for (p, q), z in sorted(h.comult.get(c, {}).items()):
            k1, v1 = split(p)
            k2, v2 = split(q)
            row.append((k1, v1, k2, v2, z))
        out.append(tuple(row))
    return tuple(out)


@lru_cache(maxsize=None)
def build_H(n: int, mu: int = 0) -> CyclicAlgebra:
    """H = (A(n, 2, mu, -1))^* presented as kZ_n/J^2 with its Hopf structure."""
    if n < 2 or n % 2:
        raise ValueError(
            f"n must be an even integer >= 2 (got {n}): the cycle length must be even "
            "for -1 to be an n-th root of unity of order 2"
        )
    if mu not in (0, 1):
        raise ValueError("mu must be 0 or 1")
    if mu == 1:
        rep = validate_group_datum(cyclic_datum(n, (1, 2), 1))
        if not rep.valid:
            raise ValueError(f"A({n},2,1,-1) is not a valid datum: {'; '.join(rep.violations)}")
        hopf = dual_hopf(n, 1)
    else:
        hopf = _closed_form_hopf(n)
        if not hopf.same_structure(dual_hopf(n, 0)):
            raise AssertionError("closed-form Hopf structure disagrees with the computed dual")
    terms = _terms_from_hopf(hopf, n)
    alg = CyclicAlgebra(n, mu, hopf, terms)
    _check_vertex_coordinates(alg)
    return alg


def _check_vertex_coordinates(H: CyclicAlgebra) -> None:
    # the block coordinates of Delta(e_i) restricted to the blocks u+w=i must be the identity
    n = H.n
    for i in range(n):
        same = Counter()
        for k1, v1, k2, v2, z in H.delta_terms("e", i):
            t1 = v1 + (k1 == "a")
            t2 = v2 + (k2 == "a")
            if (v1 + v2) % n == i % n and (t1 + t2) % n == i % n:
                same[(k1, v1, k2, v2)] += z
        expected = {("e", u, "e", (i - u) % n): 1 for u in range(n)}
        if {k: v for k, v in same.items() if v} != expected:
            raise AssertionError(f"Delta(e_{i}) is not block-unitriangular")


# ---------------------------------------------------------------------------
# representations


class QuiverRep:
    """A representation of the cyclic quiver Z_n with J^2 = 0."""

    __slots__ = ("n", "dims", "arrows")

    def __init__(self, n: int, dims: Sequence[int], arrows: Sequence[Matrix] | None = None, check: bool = True):
        dims = tuple(int(d) for d in dims)
        if len(dims) != n:
            raise ValueError(f"need {n} vertex dimensions, got {len(dims)}")
        if arrows is None:
            arrows = [Matrix.zeros(dims[(i + 1) % n], dims[i]) for i in range(n)]
        arrows = tuple(arrows)
        self.n = n
        self.dims = dims
        self.arrows = arrows
        if check:
            self.validate()

    def validate(self) -> None:
        n = self.n
        if len(self.arrows) != n:
            raise ValueError(f"need {n} arrow matrices")
        if any(d < 0 for d in self.dims):
            raise ValueError("dimensions must be nonnegative")
        for i, A in enumerate(self.arrows):
            if A.shape != (self.dims[(i + 1) % n], self.dims[i]):
                raise ValueError(f"arrow {i} has shape {A.shape}, expected {(self.dims[(i + 1) % n], self.dims[i])}")
        for i in range(n):
            if not (self.arrows[(i + 1) % n] @ self.arrows[i]).is_zero():
                raise RelationError(f"a_{(i + 1) % n} a_{i} acts nonzero")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __eq__(self, other):
        if not isinstance(other, QuiverRep):
            return NotImplemented
        return self.n == other.n and self.dims == other.dims and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.n, self.dims, self.arrows))

    def __repr__(self):
        return f"QuiverRep(n={self.n}, dims={self.dims})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dims": list(self.dims),
            "arrows": [[[scalar_to_str(x) for x in row] for row in A.data] for A in self.arrows],
        }

    @classmethod
    def from_json(cls, doc) -> "QuiverRep":
        if isinstance(doc, str):
            doc = json.loads(doc)
        n = int(doc["n"])
        dims = [int(d) for d in doc["dims"]]
        arrows = []
        for i, rows in enumerate(doc.get("arrows") or [[] for _ in range(n)]):
            r, c = dims[(i + 1) % n], dims[i]
            data = [[parse_scalar(x) for x in row] for row in rows] if r else []
            arrows.append(Matrix(data, r, c) if r else Matrix.zeros(0, c))
        return cls(n, dims, arrows)


def zero_rep(n: int) -> QuiverRep:
    return QuiverRep(n, [0] * n, check=False)


def simple(n: int, i: int) -> QuiverRep:
    if not 0 <= i < n:
        raise IndexError(f"vertex {i} out of range for n = {n}")
    dims = [0] * n
    dims[i] = 1
    return QuiverRep(n, dims)


def projective(n: int, i: int) -> QuiverRep:
    """P_i = H e_i = span{e_i, a_i}: e_i at vertex i, a_i at vertex i+1."""
    if not 0 <= i < n:
        raise IndexError(f"vertex {i} out of range for n = {n}")
    return projective_sum(n, [i])


def projective_sum(n: int, labels: Sequence[int]) -> QuiverRep:
    """Direct sum of P_{labels[0]}, P_{labels[1]}, ... in standard coordinates.

    The vertex-v basis lists the tops of copies labelled v, then the socles of
    copies labelled v-1, each in copy order.
    """
    tops = [[s for s, i in enumerate(labels) if i % n == v] for v in range(n)]
    dims = [len(tops[v]) + len(tops[(v - 1) % n]) for v in range(n)]
    arrows = []
    for v in range(n):
        w = (v + 1) % n
        rows = [[0] * dims[v] for _ in range(dims[w])]
        # top k at v maps to socle k at w, which sits after the tops at w
        for k in range(len(tops[v])):
            rows[len(tops[w]) + k][k] = 1
        arrows.append(Matrix(rows, dims[w], dims[v]))
    return QuiverRep(n, dims, arrows, check=False)


def direct_sum(*reps: QuiverRep) -> QuiverRep:
    if not reps:
        raise ValueError("direct_sum needs at least one summand")
    n = reps[0].n
    if any(r.n != n for r in reps):
        raise ValueError("summands live over different cycle lengths")
    dims = [sum(r.dims[v] for r in reps) for v in range(n)]
    arrows = [Matrix.block_diag([r.arrows[v] for r in reps]) for v in range(n)]
    return QuiverRep(n, dims, arrows, check=False)


class ModuleMap:
    """An H-linear map given by one matrix per vertex."""

    __slots__ = ("source", "target", "mats")

    def __init__(self, source: QuiverRep, target: QuiverRep, mats: Sequence[Matrix], check: bool = True):
        self.source = source
        self.target = target
        self.mats = tuple(mats)
        if check:
            self.validate()

    def validate(self) -> None:
        n = self.source.n
        if self.target.n != n or len(self.mats) != n:
            raise ValueError("module map over mismatched cycle lengths")
        for v, f in enumerate(self.mats):
            if f.shape != (self.target.dims[v], self.source.dims[v]):
                raise ValueError(f"vertex {v}: matrix shape {f.shape} does not fit")
        if not self.commutes():
            raise ValueError("map does not commute with the arrows")

    def commutes(self) -> bool:
        n = self.source.n
        for v in range(n):
            w = (v + 1) % n
            if self.mats[w] @ self.source.arrows[v] != self.target.arrows[v] @ self.mats[v]:
                return False
        return True

    @classmethod
    def zero(cls, source: QuiverRep, target: QuiverRep) -> "ModuleMap":
        return cls(source, target, [Matrix.zeros(target.dims[v], source.dims[v]) for v in range(source.n)], check=False)

    @classmethod
    def identity(cls, m: QuiverRep) -> "ModuleMap":
        return cls(m, m, [Matrix.identity(d) for d in m.dims], check=False)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other."""
        return ModuleMap(other.source, self.target, [a @ b for a, b in zip(self.mats, other.mats)], check=False)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [m.scale(c) for m in self.mats], check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, [a + b for a, b in zip(self.mats, other.mats)], check=False)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def is_iso(self) -> bool:
        return all(m.rows == m.cols and rank(m) == m.rows for m in self.mats)

    def inverse(self) -> "ModuleMap":
        return ModuleMap(self.target, self.source, [inverse(m) for m in self.mats])

    def __eq__(self, other):
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return self.mats == other.mats and self.source == other.source and self.target == other.target

    def to_json(self) -> list:
        return [[[scalar_to_str(x) for x in row] for row in m.data] for m in self.mats]

    @classmethod
    def from_json(cls, doc, source: QuiverRep, target: QuiverRep) -> "ModuleMap":
        mats = []
        for v, rows in enumerate(doc):
            r, c = target.dims[v], source.dims[v]
            mats.append(Matrix([[parse_scalar(x) for x in row] for row in rows], r, c) if r else Matrix.zeros(0, c))
        return cls(source, target, mats)


def map_direct_sum(maps: Sequence[ModuleMap]) -> ModuleMap:
    src = direct_sum(*[f.source for f in maps])
    tgt = direct_sum(*[f.target for f in maps])
    n = src.n
    return ModuleMap(src, tgt, [Matrix.block_diag([f.mats[v] for f in maps]) for v in range(n)], check=False)


# ---------------------------------------------------------------------------
# action matrices


def _offsets(dims: Sequence[int]) -> list[int]:
    out, acc = [], 0
    for d in dims:
        out.append(acc)
        acc += d
    return out


def to_action(M: QuiverRep) -> dict:
    """Matrices of e_i and a_i acting on the total space (vertex spaces concatenated)."""
    n, N = M.n, M.total_dim
    off = _offsets(M.dims)
    action = {}
    for i in range(n):
        rows = [[0] * N for _ in range(N)]
        for k in range(M.dims[i]):
            rows[off[i] + k][off[i] + k] = 1
        action[f"e{i}"] = Matrix(rows, N, N)
        rows = [[0] * N for _ in range(N)]
        A, w = M.arrows[i], (i + 1) % n
        for r in range(A.rows):
            for c in range(A.cols):
                rows[off[w] + r][off[i] + c] = A[r, c]
        action[f"a{i}"] = Matrix(rows, N, N)
    return action


def from_action(n: int, action: dict) -> QuiverRep:
    """Inverse of :func:`to_action` up to the choice of vertex bases (pivot columns)."""
    bases = [image_basis(action[f"e{i}"]) for i in range(n)]
    dims = [b.cols for b in bases]
    arrows = []
    for i in range(n):
        w = (i + 1) % n
        img = action[f"a{i}"] @ bases[i]
        sol = solve(bases[w], img)
        if sol is None:
            raise RelationError(f"a_{i} does not map vertex {i} into vertex {w}")
        arrows.append(sol)
    return QuiverRep(n, dims, arrows)


# ---------------------------------------------------------------------------
# tensor products


def _pairs(n: int, i: int) -> list[tuple[int, int]]:
    return [(u, (i - u) % n) for u in range(n)]


def _layout(M: QuiverRep, N: QuiverRep) -> tuple[list[dict], list[int]]:
    n = M.n
    offs, dims = [], []
    for i in range(n):
        off, acc = {}, 0
        for u, w in _pairs(n, i):
            off[(u, w)] = acc
            acc += M.dims[u] * N.dims[w]
        offs.append(off)
        dims.append(acc)
    return offs, dims


def _leg(rep_mats, rep: QuiverRep, kind: str, v: int):
    """Matrix of a basis element acting from vertex v, and its target vertex."""
    if kind == "e":
        return None, v
    return rep.arrows[v], (v + 1) % rep.n


def _accumulate(rows: list[list], r0: int, c0: int, m: Matrix, c) -> None:
    for r, row in enumerate(m.data):
        tgt = rows[r0 + r]
        for k, x in enumerate(row):
            if x:
                tgt[c0 + k] += c * x


def _kron_legs(left, right, dl: int, dr: int) -> Matrix:
    L = left if left is not None else Matrix.identity(dl)
    R = right if right is not None else Matrix.identity(dr)
    return L.kron(R)


def module_tensor(M: QuiverRep, N: QuiverRep, H: CyclicAlgebra) -> QuiverRep:
    """M (x) N with h(m (x) n) = Delta(h)(m (x) n), as a quiver representation."""
    n = H.n
    if M.n != n or N.n != n:
        raise ValueError(f"modules over n={M.n}, {N.n} do not match the algebra (n={n})")
    offs, dims = _layout(M, N)
    arrows = []
    for i in range(n):
        w_i = (i + 1) % n
        rows = [[0] * dims[i] for _ in range(dims[w_i])]
        for k1, v1, k2, v2, z in H.delta_terms("a", i):
            if (v1 + v2) % n != i or M.dims[v1] == 0 or N.dims[v2] == 0:
                continue
            L, t1 = _leg(None, M, k1, v1)
            R, t2 = _leg(None, N, k2, v2)
            if (t1 + t2) % n != w_i or M.dims[t1] == 0 or N.dims[t2] == 0:
                continue
            block = _kron_legs(L, R, M.dims[v1], N.dims[v2])
            _accumulate(rows, offs[w_i][(t1, t2)], offs[i][(v1, v2)], block, z)
        arrows.append(Matrix(rows, dims[w_i], dims[i]))
    return QuiverRep(n, dims, arrows, check=False)


def tensor_maps(f: ModuleMap, g: ModuleMap, H: CyclicAlgebra,
                src: QuiverRep | None = None, tgt: QuiverRep | None = None) -> ModuleMap:
    """f (x) g between the tensor products of sources and of targets."""
    n = H.n
    M, N, M2, N2 = f.source, g.source, f.target, g.target
    if src is None:
        src = module_tensor(M, N, H)
    if tgt is None:
        tgt = module_tensor(M2, N2, H)
    so, _ = _layout(M, N)
    to, _ = _layout(M2, N2)
    mats = []
    for i in range(n):
        rows = [[0] * src.dims[i] for _ in range(tgt.dims[i])]
        for k1, v1, k2, v2, z in H.delta_terms("e", i):
            if (v1 + v2) % n != i or M.dims[v1] == 0 or N.dims[v2] == 0:
                continue
            L, t1 = _leg(None, M, k1, v1)
            R, t2 = _leg(None, N, k2, v2)
            if (t1 + t2) % n != i or M2.dims[t1] == 0 or N2.dims[t2] == 0:
                continue
            left = f.mats[t1] if L is None else f.mats[t1] @ L
            right = g.mats[t2] if R is None else g.mats[t2] @ R
            _accumulate(rows, to[i][(t1, t2)], so[i][(v1, v2)], left.kron(right), z)
        mats.append(Matrix(rows, tgt.dims[i], src.dims[i]))
    return ModuleMap(src, tgt, mats, check=False)


# ---------------------------------------------------------------------------
# decomposition


def module_decompose(M: QuiverRep) -> Counter:
    """Multiplicities of S_i and P_i: keys ("S", i) and ("P", i)."""
    M.validate()
    n = M.n
    ranks = [rank(A) for A in M.arrows]
    out = Counter()
    for i in range(n):
        if ranks[i]:
            out[("P", i)] = ranks[i]
        s = M.dims[i] - ranks[i] - ranks[(i - 1) % n]
        if s < 0:  # pragma: no cover - impossible when J^2 = 0
            raise RelationError("negative simple multiplicity")
        if s:
            out[("S", i)] = s
    return out


def composition_class(M: QuiverRep) -> tuple[int, ...]:
    """Class in the Grothendieck group Z^n (composition factors S_i)."""
    return M.dims


def is_isomorphic(M: QuiverRep, N: QuiverRep) -> bool:
    return M.n == N.n and module_decompose(M) == module_decompose(N)


def f_iso(i: int, j: int, H: CyclicAlgebra) -> ModuleMap:
    """The explicit isomorphism P_i (x) P_j -> P_{i+j+1} (+) P_{i+j} (mu = 0)."""
    if H.mu != 0:
        raise ValueError("the explicit isomorphism is defined for mu = 0 only")
    n = H.n
    i, j = i % n, j % n
    Pi, Pj = projective(n, i), projective(n, j)
    src = module_tensor(Pi, Pj, H)
    tgt = direct_sum(projective(n, (i + j + 1) % n), projective(n, (i + j) % n))
    offs, _ = _layout(Pi, Pj)
    half = Fraction(1, 2)

    def vec(v: int, coeffs: dict) -> list:
        out = [0] * src.dims[v]
        for blk, c in coeffs.items():
            out[offs[v][blk]] += c
        return out

    # target coordinates: vertex basis of P_{i+j+1} first, then of P_{i+j}
    def tvec(v: int, which: str) -> list:
        out = [0] * tgt.dims[v]
        first = projective(n, (i + j + 1) % n).dims[v]
        if which == "top1":
            out[0] = 1
        elif which == "soc1":
            out[0] = 1  # P_{i+j+1} has a single basis vector at each of its two vertices
        elif which == "top0":
            out[first] = 1
        elif which == "soc0":
            out[first] = 1
        return out

    v0, v1, v2 = (i + j) % n, (i + j + 1) % n, (i + j + 2) % n
    ee, ea, ae, aa = (i, j), (i, (j + 1) % n), ((i + 1) % n, j), ((i + 1) % n, (j + 1) % n)
    sign = lambda k: -1 if k % 2 else 1  # noqa: E731
    images = {v: ([], []) for v in range(n)}  # vertex -> (source vectors, target vectors)
    images[v0][0].append(vec(v0, {ee: 1}))
    images[v0][1].append(tvec(v0, "top0"))
    images[v1][0].append(vec(v1, {ea: half * sign(j - 1), ae: half}))
    images[v1][1].append(tvec(v1, "top1"))
    images[v1][0].append(vec(v1, {ea: 1, ae: sign(j)}))
    images[v1][1].append(tvec(v1, "soc0"))
    images[v2][0].append(vec(v2, {aa: 1}))
    images[v2][1].append(tvec(v2, "soc1"))
    mats = []
    for v in range(n):
        S, T = images[v]
        if not S:
            mats.append(Matrix.zeros(tgt.dims[v], src.dims[v]))
            continue
        Smat = Matrix.from_columns(S, src.dims[v])
        Tmat = Matrix.from_columns(T, tgt.dims[v])
        mats.append(Tmat @ inverse(Smat))
    return ModuleMap(src, tgt, mats)
