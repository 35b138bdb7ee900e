"""Bounded cochain complexes of quiver representations.

Complexes are cochain complexes (the differential raises degree).  A complex
stores its window ``[lo, hi]``, one term per degree and one differential
``diffs[m - lo]: terms[m] -> terms[m+1]`` per degree m in ``[lo, hi)``.
Zero end terms are trimmed, so the zero complex has ``lo = 0`` and no terms.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .exactlin import Matrix, extend_basis, image_basis, kernel_basis, rank, solve
from .nakayama import (
    CyclicAlgebra,
    ModuleMap,
    QuiverRep,
    direct_sum as rep_sum,
    map_direct_sum,
    module_decompose,
    module_tensor,
    tensor_maps,
    zero_rep,
)

__all__ = [
    "BoundedComplex",
    "ChainMap",
    "CohomologySignature",
    "cohomology",
    "cone",
    "direct_sum",
    "shift",
    "stalk",
    "total_tensor",
]


class ComplexError(ValueError):
    pass


class BoundedComplex:
    __slots__ = ("n", "lo", "terms", "diffs")

    def __init__(self, n: int, lo: int, terms: Sequence[QuiverRep], diffs: Sequence[ModuleMap], check: bool = True):
        terms = list(terms)
        diffs = list(diffs)
        if len(diffs) != max(len(terms) - 1, 0):
            raise ComplexError(f"{len(terms)} terms need {max(len(terms) - 1, 0)} differentials, got {len(diffs)}")
        # trim zero end terms
        while terms and terms[-1].is_zero():
            terms.pop()
            if diffs:
                diffs.pop()
        while terms and terms[0].is_zero():
            terms.pop(0)
            if diffs:
                diffs.pop(0)
            lo += 1
        if not terms:
            lo = 0
        self.n = n
        self.lo = lo
        self.terms = tuple(terms)
        self.diffs = tuple(diffs)
        if check:
            self.validate()

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    def is_zero(self) -> bool:
        return not self.terms

    def term(self, m: int) -> QuiverRep:
        if self.lo <= m <= self.hi:
            return self.terms[m - self.lo]
        return zero_rep(self.n)

    def diff(self, m: int) -> ModuleMap:
        """d^m: X^m -> X^{m+1} (a zero map outside the window)."""
        if self.lo <= m < self.hi:
            return self.diffs[m - self.lo]
        return ModuleMap.zero(self.term(m), self.term(m + 1))

    def validate(self) -> None:
        for k, d in enumerate(self.diffs):
            if d.source != self.terms[k] or d.target != self.terms[k + 1]:
                raise ComplexError(f"differential in degree {self.lo + k} has the wrong source or target")
            d.validate()
        for k in range(len(self.diffs) - 1):
            if not self.diffs[k + 1].compose(self.diffs[k]).is_zero():
                raise ComplexError(f"d^{self.lo + k + 1} d^{self.lo + k} is nonzero")

    def __eq__(self, other):
        if not isinstance(other, BoundedComplex):
            return NotImplemented
        return self.n == other.n and self.lo == other.lo and self.terms == other.terms and all(
            a.mats == b.mats for a, b in zip(self.diffs, other.diffs)
        )

    def __repr__(self):
        if self.is_zero():
            return f"BoundedComplex(n={self.n}, zero)"
        return f"BoundedComplex(n={self.n}, window=[{self.lo},{self.hi}], dims={[t.dims for t in self.terms]})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lo": self.lo,
            "hi": self.hi,
            "terms": [t.to_json() for t in self.terms],
            "diffs": [d.to_json() for d in self.diffs],
        }

    @classmethod
    def from_json(cls, doc, n: int | None = None) -> "BoundedComplex":
        if isinstance(doc, str):
            doc = json.loads(doc)
        terms = [QuiverRep.from_json(t) for t in doc.get("terms", [])]
        if n is None:
            n = int(doc["n"]) if "n" in doc else (terms[0].n if terms else 2)
        if any(t.n != n for t in terms):
            raise ComplexError("terms live over different cycle lengths")
        lo = int(doc.get("lo", 0))
        if "hi" in doc and terms and int(doc["hi"]) != lo + len(terms) - 1:
            raise ComplexError("hi does not match the number of terms")
        raw = doc.get("diffs", [])
        if len(raw) != max(len(terms) - 1, 0):
            raise ComplexError("wrong number of differentials")
        diffs = [ModuleMap.from_json(raw[k], terms[k], terms[k + 1]) for k in range(len(raw))]
        return cls(n, lo, terms, diffs)


def stalk(M: QuiverRep, degree: int = 0) -> BoundedComplex:
    return BoundedComplex(M.n, degree, [M], [])


def zero_complex(n: int) -> BoundedComplex:
    return BoundedComplex(n, 0, [], [])


def shift(X: BoundedComplex, p: int) -> BoundedComplex:
    """(X[p])^m = X^{m+p}, differential multiplied by (-1)^p."""
    if p % 2 == 0:
        diffs = X.diffs
    else:
        diffs = [d.scale(-1) for d in X.diffs]
    return BoundedComplex(X.n, X.lo - p, X.terms, diffs, check=False)


def direct_sum(*Xs: BoundedComplex) -> BoundedComplex:
    if not Xs:
        raise ComplexError("direct_sum needs at least one complex")
    n = Xs[0].n
    if any(X.n != n for X in Xs):
        raise ComplexError("complexes over different cycle lengths")
    live = [X for X in Xs if not X.is_zero()]
    if not live:
        return zero_complex(n)
    lo = min(X.lo for X in live)
    hi = max(X.hi for X in live)
    terms = [rep_sum(*[X.term(m) for X in live]) for m in range(lo, hi + 1)]
    diffs = []
    for m in range(lo, hi):
        f = map_direct_sum([X.diff(m) for X in live])
        diffs.append(ModuleMap(terms[m - lo], terms[m + 1 - lo], f.mats, check=False))
    return BoundedComplex(n, lo, terms, diffs, check=False)


def _block_map(src_parts: list[QuiverRep], tgt_parts: list[QuiverRep], blocks: dict, n: int,
               src: QuiverRep, tgt: QuiverRep) -> ModuleMap:
    """Assemble a map between direct sums from blocks {(t, s): ModuleMap}."""
    mats = []
    for v in range(n):
        rows = []
        for t, T in enumerate(tgt_parts):
            row = []
            for s, S in enumerate(src_parts):
                f = blocks.get((t, s))
                row.append(f.mats[v] if f is not None else Matrix.zeros(T.dims[v], S.dims[v]))
            rows.append(row)
        if not tgt_parts or not src_parts:
            mats.append(Matrix.zeros(tgt.dims[v], src.dims[v]))
        else:
            mats.append(Matrix.block(rows))
    return ModuleMap(src, tgt, mats, check=False)


def total_tensor(X: BoundedComplex, Y: BoundedComplex, H: CyclicAlgebra) -> BoundedComplex:
    """X (x) Y with d = d_X (x) 1 + (-1)^a 1 (x) d_Y on X^a (x) Y^b.

    The summands of degree m are ordered by a ascending.
    """
    n = H.n
    if X.n != n or Y.n != n:
        raise ComplexError("complexes do not match the algebra")
    if X.is_zero() or Y.is_zero():
        return zero_complex(n)
    lo, hi = X.lo + Y.lo, X.hi + Y.hi
    parts, terms = {}, {}
    cache = {}

    def tens(a, b):
        if (a, b) not in cache:
            cache[(a, b)] = module_tensor(X.term(a), Y.term(b), H)
        return cache[(a, b)]

    for m in range(lo, hi + 1):
        idx = [(a, m - a) for a in range(X.lo, X.hi + 1) if Y.lo <= m - a <= Y.hi]
        parts[m] = idx
        terms[m] = rep_sum(*[tens(a, b) for a, b in idx])
    diffs = []
    for m in range(lo, hi):
        blocks = {}
        src_idx, tgt_idx = parts[m], parts[m + 1]
        pos = {ab: k for k, ab in enumerate(tgt_idx)}
        for s, (a, b) in enumerate(src_idx):
            if (a + 1, b) in pos:
                f = tensor_maps(X.diff(a), ModuleMap.identity(Y.term(b)), H, tens(a, b), tens(a + 1, b))
                blocks[(pos[(a + 1, b)], s)] = f
            if (a, b + 1) in pos:
                g = tensor_maps(ModuleMap.identity(X.term(a)), Y.diff(b), H, tens(a, b), tens(a, b + 1))
                blocks[(pos[(a, b + 1)], s)] = g.scale(-1) if a % 2 else g
        diffs.append(_block_map([tens(*ab) for ab in src_idx], [tens(*ab) for ab in tgt_idx], blocks, n,
                                terms[m], terms[m + 1]))
    return BoundedComplex(n, lo, [terms[m] for m in range(lo, hi + 1)], diffs, check=False)


# ---------------------------------------------------------------------------
# cohomology


@dataclass
class CohomologySignature:
    n: int
    modules: dict = field(default_factory=dict)  # degree -> QuiverRep (nonzero only)

    @property
    def classes(self) -> dict:
        return {m: M.dims for m, M in sorted(self.modules.items())}

    def degrees(self) -> list[int]:
        return sorted(self.modules)

    def decomposed(self) -> dict:
        """degree -> Counter of ("S"|"P", vertex)."""
        return {m: module_decompose(M) for m, M in sorted(self.modules.items())}

    def euler_class(self) -> tuple[int, ...]:
        out = [0] * self.n
        for m, M in self.modules.items():
            for v, d in enumerate(M.dims):
                out[v] += -d if m % 2 else d
        return tuple(out)

    def to_json(self) -> dict:
        out = {}
        for m, M in sorted(self.modules.items()):
            dec = module_decompose(M)
            out[str(m)] = {
                "dims": list(M.dims),
                "summands": [{"kind": k, "i": i, "mult": c} for (k, i), c in sorted(dec.items())],
            }
        return out


def _subquotient(M: QuiverRep, K: list[Matrix], I: list[Matrix]) -> tuple[QuiverRep, list[Matrix]]:
    """Induced representation on K/I with K, I given as column bases per vertex.

    Returns the quotient and the chosen complement columns (in ambient coordinates).
    """
    n = M.n
    comps, bases = [], []
    for v in range(n):
        idx = extend_basis(I[v], K[v])
        C = K[v].select_columns(idx)
        comps.append(C)
        bases.append(Matrix.hstack([I[v], C], rows=M.dims[v]))
    arrows = []
    for v in range(n):
        w = (v + 1) % n
        img = M.arrows[v] @ comps[v]
        sol = solve(bases[w], img)
        if sol is None:  # pragma: no cover - K is a subrepresentation
            raise ComplexError("kernel is not closed under the arrows")
        k = I[w].cols
        arrows.append(sol.submatrix(range(k, sol.rows), range(sol.cols)))
    dims = [C.cols for C in comps]
    return QuiverRep(n, dims, arrows, check=False), comps


def _cohomology_at(X: BoundedComplex, m: int):
    M = X.term(m)
    n = X.n
    K, I = [], []
    d_out, d_in = X.diff(m), X.diff(m - 1)
    for v in range(n):
        if M.dims[v] == 0:
            K.append(Matrix.zeros(0, 0))
            I.append(Matrix.zeros(0, 0))
            continue
        K.append(kernel_basis(d_out.mats[v]) if d_out.target.dims[v] else Matrix.identity(M.dims[v]))
        if d_in.source.dims[v]:
            I.append(image_basis(d_in.mats[v]))
        else:
            I.append(Matrix.zeros(M.dims[v], 0))
    return _subquotient(M, K, I)


def cohomology(X: BoundedComplex) -> CohomologySignature:
    sig = CohomologySignature(X.n)
    if X.is_zero():
        return sig
    for m in range(X.lo, X.hi + 1):
        Hm, _ = _cohomology_at(X, m)
        if not Hm.is_zero():
            sig.modules[m] = Hm
    return sig


def cohomology_dims(X: BoundedComplex) -> dict:
    """degree -> dimension vector, computed from ranks only."""
    out = {}
    if X.is_zero():
        return out
    for m in range(X.lo, X.hi + 1):
        M = X.term(m)
        d_out, d_in = X.diff(m), X.diff(m - 1)
        vec = tuple(
            M.dims[v] - (rank(d_out.mats[v]) if M.dims[v] else 0) - (rank(d_in.mats[v]) if M.dims[v] else 0)
            for v in range(X.n)
        )
        if any(vec):
            out[m] = vec
    return out


# ---------------------------------------------------------------------------
# chain maps and cones


class ChainMap:
    __slots__ = ("source", "target", "maps")

    def __init__(self, source: BoundedComplex, target: BoundedComplex, maps: dict, check: bool = True):
        """``maps`` is {degree: ModuleMap}; missing degrees are zero."""
        self.source = source
        self.target = target
        self.maps = {m: f for m, f in maps.items() if not f.is_zero()}
        if check:
            self.validate()

    def at(self, m: int) -> ModuleMap:
        f = self.maps.get(m)
        if f is None:
            return ModuleMap.zero(self.source.term(m), self.target.term(m))
        return f

    def validate(self) -> None:
        X, Y = self.source, self.target
        for m, f in self.maps.items():
            if f.source != X.term(m) or f.target != Y.term(m):
                raise ComplexError(f"chain map component in degree {m} has the wrong shape")
            f.validate()
        lo = min([X.lo, Y.lo] if not (X.is_zero() or Y.is_zero()) else [X.lo if not X.is_zero() else Y.lo])
        hi = max(X.hi, Y.hi)
        for m in range(lo - 1, hi + 1):
            lhs = self.at(m + 1).compose(X.diff(m))
            rhs = Y.diff(m).compose(self.at(m))
            if lhs.mats != rhs.mats:
                raise ComplexError(f"not a chain map: square at degree {m} does not commute")

    @classmethod
    def identity(cls, X: BoundedComplex) -> "ChainMap":
        return cls(X, X, {m: ModuleMap.identity(X.term(m)) for m in range(X.lo, X.hi + 1)}, check=False)

    @classmethod
    def zero(cls, X: BoundedComplex, Y: BoundedComplex) -> "ChainMap":
        return cls(X, Y, {}, check=False)


def cone(f: ChainMap) -> BoundedComplex:
    """cone(f)^m = X^{m+1} (+) Y^m with differential [[-d_X, 0], [f, d_Y]]."""
    X, Y = f.source, f.target
    n = X.n
    if X.is_zero():
        return Y
    if Y.is_zero():
        return shift(X, 1)
    lo = min(X.lo - 1, Y.lo)
    hi = max(X.hi - 1, Y.hi)
    terms = [rep_sum(X.term(m + 1), Y.term(m)) for m in range(lo, hi + 1)]
    diffs = []
    for m in range(lo, hi):
        parts_s = [X.term(m + 1), Y.term(m)]
        parts_t = [X.term(m + 2), Y.term(m + 1)]
        blocks = {
            (0, 0): X.diff(m + 1).scale(-1),
            (1, 0): f.at(m + 1),
            (1, 1): Y.diff(m),
        }
        diffs.append(_block_map(parts_s, parts_t, blocks, n, terms[m - lo], terms[m + 1 - lo]))
    return BoundedComplex(n, lo, terms, diffs, check=False)


def cohomology_map_ranks(f: ChainMap) -> dict:
    """degree -> per-vertex rank of H^m(f): H^m(X) -> H^m(Y)."""
    X, Y = f.source, f.target
    out = {}
    if X.is_zero() or Y.is_zero():
        return out
    for m in range(max(X.lo, Y.lo), min(X.hi, Y.hi) + 1):
        ranks = []
        fm = f.at(m)
        for v in range(X.n):
            MX, MY = X.term(m), Y.term(m)
            if MX.dims[v] == 0 or MY.dims[v] == 0:
                ranks.append(0)
                continue
            dx = X.diff(m).mats[v]
            ZX = kernel_basis(dx) if dx.rows else Matrix.identity(MX.dims[v])
            dy_in = Y.diff(m - 1).mats[v]
            BY = image_basis(dy_in) if dy_in.cols else Matrix.zeros(MY.dims[v], 0)
            img = fm.mats[v] @ ZX
            ranks.append(rank(Matrix.hstack([BY, img], rows=MY.dims[v])) - BY.cols)
        out[m] = tuple(ranks)
    return out
