"""Indecomposable objects of D^b(kZ_n/J^2), decomposition, and the tensor formulas.

The indecomposables are the shifted complexes

    M(i, j, p):  P_i -> P_{i-1} -> ... -> P_{i-j}   in degrees -p .. j-p
    N(i, p):     S_{i+2} -> P_{i+1} -> P_i          in degrees -p .. 2-p

Decomposition works on a minimal complex of projectives.  Every nonzero
component of a minimal differential sends the top of a copy of P_i to the
socle of a copy of P_{i-1}, so the copies split into n independent strands
(a copy of P_i in degree m lies on strand i + m mod n).  Each strand is a
representation of an equioriented line, and its interval summands are read
off from ranks of composites.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .exactlin import Matrix, extend_basis, kernel_basis, rank
from .homalg import (
    BoundedComplex,
    cohomology,
    direct_sum,
    shift,
    total_tensor,
)
from .nakayama import (
    CyclicAlgebra,
    ModuleMap,
    QuiverRep,
    build_H,
    module_decompose,
    projective,
    projective_sum,
    simple,
)

__all__ = [
    "CatalogObject",
    "Decomposition",
    "ProjectiveComplex",
    "TensorGrid",
    "VerificationReport",
    "WindowError",
    "catalog_M",
    "catalog_N",
    "catalog_complex",
    "decompose",
    "derived_hom_dim",
    "expected_tensor_cohomology",
    "predict_tensor",
    "projective_replacement",
    "verify_tensor_theorem",
]


class WindowError(RuntimeError):
    """The truncated replacement is too shallow to classify every interval."""


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True, order=False)
class CatalogObject:
    kind: str  # "M" or "N"
    n: int
    i: int
    j: int = 0  # length of an M-object; always 0 for N
    shift: int = 0

    def __post_init__(self):
        if self.kind not in ("M", "N"):
            raise ValueError(f"unknown catalog kind {self.kind!r}")
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.kind == "M" and self.j < 0:
            raise ValueError("M-objects need j >= 0")
        if self.kind == "N" and self.j != 0:
            raise ValueError("N-objects carry no length")
        object.__setattr__(self, "i", self.i % self.n)

    @classmethod
    def M(cls, n: int, i: int, j: int, p: int = 0) -> "CatalogObject":
        return cls("M", n, i, j, p)

    @classmethod
    def N(cls, n: int, i: int, p: int = 0) -> "CatalogObject":
        return cls("N", n, i, 0, p)

    def sort_key(self):
        return (self.kind, self.shift, self.i, self.j)

    def shifted(self, p: int) -> "CatalogObject":
        return CatalogObject(self.kind, self.n, self.i, self.j, self.shift + p)

    def complex(self) -> BoundedComplex:
        return catalog_complex(self)

    def label(self) -> str:
        if self.kind == "M":
            return f"M:{self.i},{self.j},{self.shift}"
        return f"N:{self.i},{self.shift}"

    def to_json(self, mult: int | None = None) -> dict:
        out = {"kind": self.kind, "i": self.i}
        if self.kind == "M":
            out["j"] = self.j
        out["shift"] = self.shift
        if mult is not None:
            out["mult"] = mult
        return out

    @classmethod
    def parse(cls, text: str, n: int) -> "CatalogObject":
        """Parse ``M:i,j,p`` or ``N:i,p``."""
        kind, sep, rest = text.strip().partition(":")
        kind = kind.strip().upper()
        if not sep or kind not in ("M", "N"):
            raise ValueError(f"cannot parse object {text!r}: expected M:i,j,p or N:i,p")
        try:
            nums = [int(x) for x in rest.split(",")]
        except ValueError:
            raise ValueError(f"cannot parse object {text!r}: parameters must be integers") from None
        if kind == "M":
            if len(nums) != 3:
                raise ValueError(f"M-object {text!r} needs three parameters i,j,p")
            if nums[1] < 0:
                raise ValueError(f"M-object {text!r} needs j >= 0")
            return cls.M(n, *nums)
        if len(nums) != 2:
            raise ValueError(f"N-object {text!r} needs two parameters i,p")
        return cls.N(n, *nums)


class Decomposition:
    """A multiset of catalog objects, compared as a multiset."""

    __slots__ = ("counts",)

    def __init__(self, items: Iterable | dict = ()):
        c = Counter()
        if isinstance(items, dict):
            for k, v in items.items():
                c[k] += v
        else:
            for x in items:
                if isinstance(x, tuple):
                    c[x[0]] += x[1]
                else:
                    c[x] += 1
        for k, v in c.items():
            if v < 0:
                raise ValueError("negative multiplicity")
        self.counts = Counter({k: v for k, v in c.items() if v})

    def items(self) -> list[tuple[CatalogObject, int]]:
        return sorted(self.counts.items(), key=lambda kv: kv[0].sort_key())

    def __eq__(self, other):
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.counts == other.counts

    def __hash__(self):
        return hash(frozenset(self.counts.items()))

    def __add__(self, other: "Decomposition") -> "Decomposition":
        return Decomposition(self.counts + other.counts)

    def __len__(self):
        return sum(self.counts.values())

    def shifted(self, p: int) -> "Decomposition":
        return Decomposition({k.shifted(p): v for k, v in self.counts.items()})

    def to_json(self) -> dict:
        return {"summands": [obj.to_json(m) for obj, m in self.items()]}

    def __str__(self):
        if not self.counts:
            return "0"
        parts = []
        for obj, m in self.items():
            parts.append(obj.label() if m == 1 else f"{m}x{obj.label()}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Decomposition({self})"


def radical_map(n: int, src: Sequence[int], tgt: Sequence[int], coeffs: dict,
                src_rep: QuiverRep | None = None, tgt_rep: QuiverRep | None = None) -> ModuleMap:
    """Map of projective sums sending top of copy s to sum_t coeffs[t, s] * socle of copy t.

    Only pairs with ``tgt[t] == src[s] - 1 (mod n)`` may carry coefficients.
    """
    src_rep = src_rep or projective_sum(n, src)
    tgt_rep = tgt_rep or projective_sum(n, tgt)
    tops_t = [[t for t, lab in enumerate(tgt) if lab % n == v] for v in range(n)]
    tops_s = [[s for s, lab in enumerate(src) if lab % n == v] for v in range(n)]
    rows = {v: [[0] * src_rep.dims[v] for _ in range(tgt_rep.dims[v])] for v in range(n)}
    for (t, s), c in coeffs.items():
        if not c:
            continue
        v = src[s] % n
        if tgt[t] % n != (v - 1) % n:
            raise ValueError("radical maps only connect P_i to P_{i-1}")
        r = len(tops_t[v]) + tops_t[(v - 1) % n].index(t)
        rows[v][r][tops_s[v].index(s)] = c
    mats = [Matrix(rows[v], tgt_rep.dims[v], src_rep.dims[v]) for v in range(n)]
    return ModuleMap(src_rep, tgt_rep, mats, check=False)


@lru_cache(maxsize=4096)
def catalog_M(n: int, i: int, j: int, p: int = 0) -> BoundedComplex:
    if j < 0:
        raise ValueError("j must be nonnegative")
    labels = [(i - r) % n for r in range(j + 1)]
    terms = [projective(n, a) for a in labels]
    diffs = [radical_map(n, [labels[r]], [labels[r + 1]], {(0, 0): 1}, terms[r], terms[r + 1]) for r in range(j)]
    return shift(BoundedComplex(n, 0, terms, diffs), p)


@lru_cache(maxsize=4096)
def catalog_N(n: int, i: int, p: int = 0) -> BoundedComplex:
    S = simple(n, (i + 2) % n)
    P1, P0 = projective(n, (i + 1) % n), projective(n, i % n)
    v = (i + 2) % n
    # inclusion of S_{i+2} onto the socle of P_{i+1}, which sits at vertex i+2
    eta = [Matrix([[1]], 1, 1) if w == v else Matrix.zeros(P1.dims[w], S.dims[w]) for w in range(n)]
    d0 = ModuleMap(S, P1, eta)
    d1 = radical_map(n, [(i + 1) % n], [i % n], {(0, 0): 1}, P1, P0)
    return shift(BoundedComplex(n, 0, [S, P1, P0], [d0, d1]), p)


def catalog_complex(obj: CatalogObject) -> BoundedComplex:
    if obj.kind == "M":
        return catalog_M(obj.n, obj.i, obj.j, obj.shift)
    return catalog_N(obj.n, obj.i, obj.shift)


def decomposition_complex(d: Decomposition, n: int) -> BoundedComplex:
    """Direct sum of the catalog complexes of a decomposition (zero complex if empty)."""
    parts = []
    for obj, m in d.items():
        parts.extend([catalog_complex(obj)] * m)
    if not parts:
        return BoundedComplex(n, 0, [], [])
    return direct_sum(*parts)


# ---------------------------------------------------------------------------
# minimal projective replacement


@dataclass
class ProjectiveComplex:
    """A truncated minimal complex of projectives.

    ``labels[m]`` lists the vertex of each copy of P in degree m; ``coeffs[m]`` maps
    (t, s) to the coefficient sending the top of copy s in degree m to the socle
    of copy t in degree m+1.  ``cut`` is the lowest degree kept when the
    replacement was truncated (``None`` when it is exact).
    """

    n: int
    labels: dict
    coeffs: dict
    cut: int | None
    source_window: tuple[int, int] | None = None

    @property
    def degrees(self) -> list[int]:
        return sorted(m for m, labs in self.labels.items() if labs)

    def as_complex(self) -> BoundedComplex:
        degs = self.degrees
        if not degs:
            return BoundedComplex(self.n, 0, [], [])
        lo, hi = degs[0], degs[-1]
        terms = [projective_sum(self.n, self.labels.get(m, [])) for m in range(lo, hi + 1)]
        diffs = [
            radical_map(self.n, self.labels.get(m, []), self.labels.get(m + 1, []), self.coeffs.get(m, {}),
                        terms[m - lo], terms[m + 1 - lo])
            for m in range(lo, hi)
        ]
        return BoundedComplex(self.n, lo, terms, diffs, check=False)

    def is_minimal(self) -> bool:
        """Every differential component runs from P_i to P_{i-1}, i.e. lies in the arrow span."""
        n = self.n
        for m, cs in self.coeffs.items():
            src, tgt = self.labels.get(m, []), self.labels.get(m + 1, [])
            for (t, s), c in cs.items():
                if c and tgt[t] % n != (src[s] - 1) % n:
                    return False
        return True

    def strands(self) -> dict:
        """strand c -> (degrees, {m: [copy indices]}, {m: Matrix V_m -> V_{m+1}})."""
        n = self.n
        degs = self.degrees
        out = {}
        for c in range(n):
            copies = {m: [s for s, lab in enumerate(self.labels[m]) if (lab + m) % n == c] for m in degs}
            maps = {}
            for m in degs:
                if m + 1 not in copies:
                    continue
                src, tgt = copies[m], copies[m + 1]
                cs = self.coeffs.get(m, {})
                rows = [[cs.get((t, s), 0) for s in src] for t in tgt]
                maps[m] = Matrix(rows, len(tgt), len(src))
            out[c] = (degs, copies, maps)
        return out


def default_depth(X: BoundedComplex) -> int:
    env = os.environ.get("DERIVED_DEPTH")
    base = (X.hi - X.lo) + 2 * X.n + 4
    if env:
        try:
            return max(int(env), 0)
        except ValueError:
            raise ValueError(f"DERIVED_DEPTH must be an integer, got {env!r}") from None
    return base


def projective_replacement(X: BoundedComplex, depth: int | None = None, floor: int | None = None) -> ProjectiveComplex:
    """Minimal complex of projectives P with a quasi-isomorphism P -> X, truncated below.

    Works downward from the top degree.  In degree m the cone of the partial
    map has term P^{m+1} (+) X^m; new copies of P_v in P^m are chosen to cover
    the cycles of that cone modulo the radical and the image of X^{m-1}.
    The replacement is kept down to ``hi - depth`` (or ``floor`` if lower).
    """
    n = X.n
    if X.is_zero():
        return ProjectiveComplex(n, {}, {}, None, None)
    lo, hi = X.lo, X.hi
    if depth is None:
        depth = default_depth(X)
    cut = hi - depth
    if floor is not None:
        cut = min(cut, floor)
    labels: dict[int, list[int]] = {}
    coeffs: dict[int, dict] = {}
    images: dict[int, list[tuple]] = {}  # images of tops under the map to X
    truncated = False
    m = hi
    while True:
        Pm1 = labels.get(m + 1, [])
        Pm2 = labels.get(m + 2, [])
        Xm, Xm1, Xlow = X.term(m), X.term(m + 1), X.term(m - 1)
        P1rep = projective_sum(n, Pm1)
        tops1 = [[s for s, lab in enumerate(Pm1) if lab == v] for v in range(n)]
        tops2 = [[s for s, lab in enumerate(Pm2) if lab == v] for v in range(n)]
        # cone^m at vertex v: [tops of P^{m+1} labelled v | socles labelled v-1 | X^m_v]
        Z, B, arrows = [], [], []
        for v in range(n):
            a1, b1 = len(tops1[v]), len(tops1[(v - 1) % n])
            a2, b2 = len(tops2[v]), len(tops2[(v - 1) % n])
            dimc = a1 + b1 + Xm.dims[v]
            dimt = a2 + b2 + Xm1.dims[v]
            # differential [[-d_P, 0], [phi, d_X]]
            rows = [[0] * dimc for _ in range(dimt)]
            cs = coeffs.get(m + 1, {})
            for k, s in enumerate(tops1[v]):
                for r, t in enumerate(tops2[(v - 1) % n]):
                    c = cs.get((t, s), 0)
                    if c:
                        rows[a2 + r][k] = -c
                y = images[m + 1][s]
                for q in range(Xm1.dims[v]):
                    rows[a2 + b2 + q][k] = y[q]
            if b1:
                Aprev = X.term(m + 1).arrows[(v - 1) % n]
                for k, s in enumerate(tops1[(v - 1) % n]):
                    ay = Aprev.apply(images[m + 1][s])
                    for q in range(Xm1.dims[v]):
                        rows[a2 + b2 + q][a1 + k] = ay[q]
            dX = X.diff(m).mats[v]
            for q in range(dX.rows):
                for r in range(dX.cols):
                    rows[a2 + b2 + q][a1 + b1 + r] = dX[q, r]
            D = Matrix(rows, dimt, dimc)
            Z.append(kernel_basis(D) if dimc else Matrix.zeros(0, 0))
            dlow = X.diff(m - 1).mats[v]
            if dlow.cols and dimc:
                cols = []
                for r in range(dlow.cols):
                    col = [0] * (a1 + b1) + [dlow[q, r] for q in range(dlow.rows)]
                    cols.append(col)
                B.append(Matrix.from_columns(cols, dimc))
            else:
                B.append(Matrix.zeros(dimc, 0))
            arrows.append(None)
        # arrows of cone^m: P^{m+1} block (+) X^m block
        cone_arrows = []
        for v in range(n):
            w = (v + 1) % n
            PA = P1rep.arrows[v]
            XA = Xm.arrows[v]
            cone_arrows.append(Matrix.block_diag([PA, XA]))
        new_labels, new_coeffs, new_images = [], {}, []
        for v in range(n):
            Zv = Z[v]
            if Zv.cols == 0:
                continue
            Zprev = Z[(v - 1) % n]
            rad = cone_arrows[(v - 1) % n] @ Zprev if Zprev.cols else Matrix.zeros(Zv.rows, 0)
            span = Matrix.hstack([rad, B[v]], rows=Zv.rows)
            chosen = extend_basis(span, Zv)
            a1 = len(tops1[v])
            b1 = len(tops1[(v - 1) % n])
            for idx in chosen:
                z = Zv.column(idx)
                if any(z[k] for k in range(a1)):
                    raise AssertionError("replacement is not minimal: a top component survived")
                s_new = len(new_labels)
                new_labels.append(v)
                for r, t in enumerate(tops1[(v - 1) % n]):
                    c = -z[a1 + r]
                    if c:
                        new_coeffs[(t, s_new)] = c
                new_images.append(tuple(z[a1 + b1:]))
        labels[m] = new_labels
        coeffs[m] = new_coeffs
        images[m] = new_images
        if m - 1 < lo and not new_labels:
            break
        if m <= cut:
            truncated = bool(new_labels)
            break
        m -= 1
    labels = {k: v for k, v in labels.items() if v}
    coeffs = {k: v for k, v in coeffs.items() if k in labels and v}
    return ProjectiveComplex(n, labels, coeffs, m if truncated else None, (lo, hi))


# ---------------------------------------------------------------------------
# decomposition


def _interval_multiplicities(degs: list[int], copies: dict, maps: dict) -> Counter:
    """Interval summands [a, b] of an equioriented line representation."""
    if not degs:
        return Counter()
    lo, hi = degs[0], degs[-1]
    dims = {m: len(copies.get(m, [])) for m in range(lo, hi + 1)}
    r = {}
    for a in range(lo, hi + 1):
        r[(a, a)] = dims[a]
        comp = None
        for b in range(a + 1, hi + 1):
            step = maps.get(b - 1)
            if step is None or dims[a] == 0 or dims[b] == 0:
                comp = None
                r[(a, b)] = 0
                # composite through a zero space stays zero
                for bb in range(b + 1, hi + 1):
                    r[(a, bb)] = 0
                break
            comp = step if comp is None else step @ comp
            r[(a, b)] = rank(comp)
    get = lambda a, b: r.get((a, b), 0) if lo <= a <= b <= hi else 0  # noqa: E731
    out = Counter()
    for a in range(lo, hi + 1):
        for b in range(a, hi + 1):
            mlt = get(a, b) - get(a - 1, b) - get(a, b + 1) + get(a - 1, b + 1)
            if mlt:
                out[(a, b)] = mlt
    return out


def decompose_projective(P: ProjectiveComplex) -> Decomposition:
    n = P.n
    lo_x = P.source_window[0] if P.source_window else None
    out = Counter()
    for c, (degs, copies, maps) in P.strands().items():
        for (a, b), mlt in _interval_multiplicities(degs, copies, maps).items():
            if mlt < 0:
                raise AssertionError("negative interval multiplicity")
            if P.cut is not None and a == P.cut:
                if b < lo_x - 1:
                    raise WindowError(f"tail ends at degree {b}, below the support of the complex")
                out[CatalogObject.N(n, c - b, 2 - b)] += mlt
            else:
                if P.cut is not None and a < lo_x:
                    raise WindowError(f"interval [{a},{b}] starts below the support window")
                out[CatalogObject.M(n, c - a, b - a, -a)] += mlt
    return Decomposition(out)


def decompose(X: BoundedComplex, depth: int | None = None, max_tries: int = 4) -> Decomposition:
    """Krull-Schmidt decomposition of X in D^b into catalog objects."""
    if X.is_zero():
        return Decomposition()
    if depth is None:
        depth = default_depth(X)
    need = X.hi - X.lo + 2
    depth = max(depth, need)
    for _ in range(max_tries):
        P = projective_replacement(X, depth)
        try:
            return decompose_projective(P)
        except WindowError:
            depth *= 2
    raise WindowError(f"could not classify the replacement even at depth {depth}")


# ---------------------------------------------------------------------------
# derived Hom


def derived_hom_dim(X: BoundedComplex, Y: BoundedComplex, depth: int | None = None) -> int:
    """dim Hom_{D^b}(X, Y), as chain maps P_X -> Y modulo null-homotopic maps."""
    if X.is_zero() or Y.is_zero():
        return 0
    n = X.n
    if depth is None:
        depth = default_depth(X)
    P = projective_replacement(X, depth, floor=Y.lo - 1)
    lab = P.labels
    ylo, yhi = Y.lo, Y.hi
    # unknowns: y_s in Y^m_{label}, for copies in degrees ylo..yhi
    var_off, nvar = {}, 0
    for m in range(ylo, yhi + 1):
        for s, v in enumerate(lab.get(m, [])):
            var_off[(m, s)] = nvar
            nvar += Y.term(m).dims[v]
    if nvar == 0:
        return 0
    # chain conditions for copies in degrees ylo-1..yhi
    eqs = []
    for m in range(ylo - 1, yhi + 1):
        Ym, Ynext = Y.term(m), Y.term(m + 1)
        cs = P.coeffs.get(m, {})
        nxt = lab.get(m + 1, [])
        for s, v in enumerate(lab.get(m, [])):
            dimt = Ynext.dims[v]
            if dimt == 0:
                continue
            block = [[0] * nvar for _ in range(dimt)]
            if (m, s) in var_off and Ym.dims[v]:
                dY = Y.diff(m).mats[v]
                o = var_off[(m, s)]
                for q in range(dimt):
                    for r in range(Ym.dims[v]):
                        block[q][o + r] += dY[q, r]
            Aprev = Ynext.arrows[(v - 1) % n]
            for t, vt in enumerate(nxt):
                c = cs.get((t, s), 0)
                if not c or (m + 1, t) not in var_off:
                    continue
                o = var_off[(m + 1, t)]
                for q in range(dimt):
                    for r in range(Aprev.cols):
                        x = Aprev[q, r]
                        if x:
                            block[q][o + r] -= c * x
            eqs.extend(block)
    E = Matrix(eqs, len(eqs), nvar) if eqs else Matrix.zeros(0, nvar)
    cycles = nvar - rank(E)
    # homotopies: w_s in Y^{m-1}_{label} for copies in degrees ylo+1..yhi+1
    hcols = []
    for m in range(ylo + 1, yhi + 2):
        Yprev = Y.term(m - 1)
        for s, v in enumerate(lab.get(m, [])):
            for r in range(Yprev.dims[v]):
                col = [0] * nvar
                # contribution d_Y w to y_s (degree m-1 -> m)
                if (m, s) in var_off:
                    dY = Y.diff(m - 1).mats[v]
                    o = var_off[(m, s)]
                    for q in range(dY.rows):
                        col[o + q] += dY[q, r]
                # contribution to y_u for copies u in degree m-1 with d_P(top u) hitting socle s
                cs = P.coeffs.get(m - 1, {})
                A = Yprev.arrows[v]
                for u, vu in enumerate(lab.get(m - 1, [])):
                    c = cs.get((s, u), 0)
                    if not c or (m - 1, u) not in var_off:
                        continue
                    o = var_off[(m - 1, u)]
                    for q in range(A.rows):
                        x = A[q, r]
                        if x:
                            col[o + q] += c * x
                hcols.append(col)
    homot = rank(Matrix.from_columns(hcols, nvar)) if hcols else 0
    return cycles - homot


# ---------------------------------------------------------------------------
# closed forms


def predict_tensor(a: CatalogObject, b: CatalogObject) -> Decomposition:
    if a.n != b.n:
        raise ValueError("objects over different cycle lengths")
    n = a.n
    p, q = a.shift, b.shift
    if a.kind == "N" and b.kind == "N":
        return Decomposition([CatalogObject.N(n, a.i + b.i, p + q - 2)])
    if a.kind == "M" and b.kind == "N":
        return Decomposition([CatalogObject.M(n, a.i + b.i, a.j, p + q - 2)])
    if a.kind == "N" and b.kind == "M":
        return Decomposition([CatalogObject.M(n, a.i + b.i, b.j, p + q - 2)])
    i, k, j, t = a.i, a.j, b.i, b.j
    lo_, hi_ = min(k, t), max(k, t)
    return Decomposition([
        CatalogObject.M(n, i + j + 1, lo_, p + q),
        CatalogObject.M(n, i + j - hi_, lo_, p + q - hi_),
    ])


def expected_tensor_cohomology(a: CatalogObject, b: CatalogObject) -> dict:
    """Cohomology of a (x) b by case analysis: degree -> Counter of (kind, vertex).

    The cases are stated for unshifted factors; shifts move every degree by
    -(p + q).  N (x) M uses the same case table as M (x) N.
    """
    n = a.n
    s = a.shift + b.shift
    out: dict[int, Counter] = {}

    def put(m, kind, v):
        out.setdefault(m - s, Counter())[(kind, v % n)] += 1

    if a.kind == "N" and b.kind == "N":
        put(4, "S", a.i + b.i)
    elif a.kind != b.kind:
        m_obj, n_obj = (a, b) if a.kind == "M" else (b, a)
        i, k, j = m_obj.i, m_obj.j, n_obj.i
        if k == 0:
            put(2, "P", i + j)
        else:
            put(2, "S", i + j + 1)
            put(k + 2, "S", i + j - k)
    else:
        i, k, j, t = a.i, a.j, b.i, b.j
        if k == 0 and t == 0:
            put(0, "P", i + j + 1)
            put(0, "P", i + j)
        elif k == 0:
            put(0, "P", i + j + 1)
            put(t, "P", i + j - t)
        elif t == 0:
            put(0, "P", i + j + 1)
            put(k, "P", i + j - k)
        else:
            if k == t:
                put(k, "S", i + j - t + 1)
                put(k, "S", i + j - k + 1)
            else:
                put(k, "S", i + j - k + 1)
                put(t, "S", i + j - t + 1)
            put(0, "S", i + j + 2)
            put(k + t, "S", i + j - k - t)
    return out


# ---------------------------------------------------------------------------
# verification harness


@dataclass
class TensorGrid:
    i_values: tuple = ()
    j_values: tuple = ()
    k_values: tuple = (0, 1, 2, 3, 4)
    t_values: tuple = (0, 1, 2, 3, 4)
    p_values: tuple = (-1, 0, 1)
    q_values: tuple = (-1, 0, 1)
    shapes: tuple = ("NN", "MN", "NM", "MM")
    check_tables: bool = True

    def tuples(self, n: int) -> list[tuple[CatalogObject, CatalogObject]]:
        iv = self.i_values or tuple(range(n))
        jv = self.j_values or tuple(range(n))
        out = []
        for shape in self.shapes:
            for i in iv:
                for j in jv:
                    ks = self.k_values if shape[0] == "M" else (None,)
                    ts = self.t_values if shape[1] == "M" else (None,)
                    for k in ks:
                        for t in ts:
                            for p in self.p_values:
                                for q in self.q_values:
                                    a = CatalogObject.M(n, i, k, p) if shape[0] == "M" else CatalogObject.N(n, i, p)
                                    b = CatalogObject.M(n, j, t, q) if shape[1] == "M" else CatalogObject.N(n, j, q)
                                    out.append((a, b))
        return out


@dataclass
class VerificationReport:
    n: int
    mu: int
    checked: int = 0
    mismatches: list = field(default_factory=list)
    table_checked: int = 0
    table_mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.table_mismatches

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mu": self.mu,
            "checked": self.checked,
            "mismatch_count": len(self.mismatches),
            "mismatches": self.mismatches,
            "table_checked": self.table_checked,
            "table_mismatch_count": len(self.table_mismatches),
            "table_mismatches": self.table_mismatches,
        }


def _signature_counts(X: BoundedComplex) -> dict:
    return {m: Counter(d) for m, d in cohomology(X).decomposed().items()}


def _json_counts(sig: dict) -> dict:
    return {str(m): sorted(f"{k}{v}" + (f"^{c}" if c > 1 else "") for (k, v), c in cnt.items())
            for m, cnt in sorted(sig.items())}


def check_tensor_pair(a: CatalogObject, b: CatalogObject, H: CyclicAlgebra, check_table: bool = True) -> dict:
    """Compare decompose(a (x) b) with the closed form (and the cohomology table)."""
    T = total_tensor(catalog_complex(a), catalog_complex(b), H)
    got = decompose(T)
    want = predict_tensor(a, b)
    out = {"a": a.label(), "b": b.label(), "match": got == want}
    if got != want:
        out["computed"] = got.to_json()["summands"]
        out["predicted"] = want.to_json()["summands"]
    if check_table:
        sig = _signature_counts(T)
        exp = expected_tensor_cohomology(a, b)
        out["table_match"] = sig == exp
        if sig != exp:
            out["computed_cohomology"] = _json_counts(sig)
            out["table_cohomology"] = _json_counts(exp)
    return out


def _check_chunk(args):
    n, mu, pairs, check_table = args
    H = build_H(n, mu)
    res = []
    for a, b in pairs:
        res.append(check_tensor_pair(CatalogObject(*a), CatalogObject(*b), H, check_table))
    return res


def verify_tensor_theorem(n: int, mu: int = 0, grid: TensorGrid | None = None, workers: int = 1,
                          progress=None) -> VerificationReport:
    """Check the tensor formulas over a grid of catalog pairs."""
    grid = grid or TensorGrid()
    H = build_H(n, mu)
    pairs = grid.tuples(n)
    rep = VerificationReport(n, mu)
    results = []
    if workers > 1 and len(pairs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        raw = [((a.kind, a.n, a.i, a.j, a.shift), (b.kind, b.n, b.i, b.j, b.shift)) for a, b in pairs]
        size = max(1, len(raw) // (workers * 8))
        chunks = [(n, mu, raw[k:k + size], grid.check_tables) for k in range(0, len(raw), size)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for part in ex.map(_check_chunk, chunks):
                results.extend(part)
    else:
        for idx, (a, b) in enumerate(pairs):
            results.append(check_tensor_pair(a, b, H, grid.check_tables))
            if progress is not None:
                progress(idx + 1, len(pairs))
    for r in results:
        rep.checked += 1
        if not r["match"]:
            rep.mismatches.append({k: r[k] for k in ("a", "b", "computed", "predicted")})
        if grid.check_tables:
            rep.table_checked += 1
            if not r["table_match"]:
                rep.table_mismatches.append(
                    {k: r[k] for k in ("a", "b", "computed_cohomology", "table_cohomology")})
    return rep


def decomposition_from_json(doc, n: int) -> Decomposition:
    if isinstance(doc, str):
        doc = json.loads(doc)
    items = []
    for s in doc["summands"]:
        if s["kind"] == "M":
            obj = CatalogObject.M(n, s["i"], s["j"], s["shift"])
        else:
            obj = CatalogObject.N(n, s["i"], s["shift"])
        items.append((obj, int(s.get("mult", 1))))
    return Decomposition(items)
