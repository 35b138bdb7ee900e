"""Finite-dimensional Hopf algebras by structure constants.

Covers group tables, group data (G, g, chi, mu), the pointed Hopf algebras
A(G, g, chi, mu) generated by G and a skew-primitive x, generic dualization,
exhaustive axiom checks, and a comparison of the computed dual structure with
closed-form presentations of the dual.

Elements are sparse dicts ``{basis index: scalar}``; tensors are sparse dicts
keyed by index tuples.  Structure constants never store zeros.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exactlin import Matrix, Scalar, canon, field_div, field_pow, parse_scalar, scalar_to_str, zeta

__all__ = [
    "AxiomReport",
    "DatumReport",
    "DualPresentationReport",
    "GroupDatum",
    "GroupTable",
    "HopfPresentation",
    "MalformedGroupError",
    "build_group_datum_algebra",
    "check_hopf_axioms",
    "cyclic_datum",
    "cyclic_group",
    "datum_from_json",
    "dihedral_group",
    "direct_product",
    "dualize",
    "quaternion_group",
    "symmetric_group",
    "validate_group_datum",
    "verify_dual_presentation",
]


class MalformedGroupError(ValueError):
    pass


class InvalidDatumError(ValueError):
    pass


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class GroupTable:
    order: int
    mult: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    names: tuple[str, ...]

    @classmethod
    def from_table(cls, mult: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> "GroupTable":
        order = len(mult)
        if order == 0:
            raise MalformedGroupError("empty group table")
        table = tuple(tuple(int(x) for x in row) for row in mult)
        if any(len(row) != order for row in table):
            raise MalformedGroupError("group table is not square")
        if any(not 0 <= x < order for row in table for x in row):
            raise MalformedGroupError("group table entry out of range")
        ident = [e for e in range(order) if all(table[e][a] == a and table[a][e] == a for a in range(order))]
        if not ident:
            raise MalformedGroupError("group table has no identity element")
        e = ident[0]
        inv = []
        for a in range(order):
            cands = [b for b in range(order) if table[a][b] == e and table[b][a] == e]
            if not cands:
                raise MalformedGroupError(f"element {a} has no inverse")
            inv.append(cands[0])
        for a, b, c in itertools.product(range(order), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise MalformedGroupError(f"table is not associative at ({a}, {b}, {c})")
        if names is None:
            names = tuple(f"h{a}" for a in range(order))
        if len(names) != order or len(set(names)) != order:
            raise MalformedGroupError("element names must be distinct, one per element")
        return cls(order, table, e, tuple(inv), tuple(names))

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        out = self.identity
        for _ in range(k):
            out = self.mult[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mult[x][a]
            k += 1
        return k

    def is_central(self, a: int) -> bool:
        return all(self.mult[a][h] == self.mult[h][a] for h in range(self.order))


def _cyclic_name(k: int) -> str:
    return "1" if k == 0 else ("g" if k == 1 else f"g^{k}")


def cyclic_group(n: int) -> GroupTable:
    return GroupTable.from_table(
        [[(a + b) % n for b in range(n)] for a in range(n)], [_cyclic_name(k) for k in range(n)]
    )


def direct_product(g1: GroupTable, g2: GroupTable) -> GroupTable:
    pairs = list(itertools.product(range(g1.order), range(g2.order)))
    index = {p: k for k, p in enumerate(pairs)}
    mult = [
        [index[(g1.mult[a][c], g2.mult[b][d])] for (c, d) in pairs] for (a, b) in pairs
    ]
    names = [f"({g1.names[a]},{g2.names[b]})" for a, b in pairs]
    return GroupTable.from_table(mult, names)


def _perm_group(perms: list[tuple[int, ...]], names: list[str]) -> GroupTable:
    index = {p: k for k, p in enumerate(perms)}
    mult = [[index[tuple(p[q[x]] for x in range(len(p)))] for q in perms] for p in perms]
    return GroupTable.from_table(mult, names)


def symmetric_group(k: int) -> GroupTable:
    perms = sorted(itertools.permutations(range(k)))
    return _perm_group(perms, ["".join(map(str, p)) for p in perms])


def dihedral_group(m: int) -> GroupTable:
    """Symmetries of the m-gon: elements r^a s^b, indexed a + m*b."""
    def mul(x, y):
        a, b = x % m, x // m
        c, d = y % m, y // m
        # r^a s^b r^c s^d = r^(a + (-1)^b c) s^(b+d)
        return (a + (c if b == 0 else -c)) % m + m * ((b + d) % 2)

    names = [f"r^{a}" if b == 0 else f"r^{a}s" for b in range(2) for a in range(m)]
    return GroupTable.from_table([[mul(x, y) for y in range(2 * m)] for x in range(2 * m)], names)


def quaternion_group() -> GroupTable:
    # unit quaternions {±1, ±i, ±j, ±k} as (sign, axis) with axis 0 = real part
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(s, a) for s in (1, -1) for a in range(4)]
    index = {e: k for k, e in enumerate(elems)}

    def mul(x, y):
        sign, axis = table[(x[1], y[1])]
        return index[(x[0] * y[0] * sign, axis)]

    names = [("" if s == 1 else "-") + "1ijk"[a] for s, a in elems]
    return GroupTable.from_table([[mul(x, y) for y in elems] for x in elems], names)


# ---------------------------------------------------------------------------
# group data


def _root_order(x: Scalar, bound: int) -> int | None:
    """Multiplicative order of x if it is a root of unity of order <= bound."""
    y = x
    for k in range(1, bound + 1):
        if y == 1:
            return k
        y = canon(y * x)
    return None


@dataclass(frozen=True)
class GroupDatum:
    group: GroupTable
    g: int
    chi: tuple
    mu: Scalar
    strict_mu: bool = True


@dataclass
class DatumReport:
    valid: bool
    violations: list[str]
    order_g: int | None = None
    d: int | None = None
    nilpotent: bool | None = None

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": list(self.violations),
            "order_g": self.order_g,
            "d": self.d,
            "type": None if self.nilpotent is None else ("nilpotent" if self.nilpotent else "non-nilpotent"),
        }


def validate_group_datum(alpha: GroupDatum) -> DatumReport:
    """List every violated datum condition; also report o(g), d = o(chi(g)) and the type."""
    G = alpha.group
    violations = []
    if not 0 <= alpha.g < G.order:
        raise MalformedGroupError(f"g = {alpha.g} is not an element index")
    if len(alpha.chi) != G.order:
        raise MalformedGroupError("chi must give one value per group element")
    if not G.is_central(alpha.g):
        violations.append(f"g = {G.names[alpha.g]} is not central")
    chi = alpha.chi
    if chi[G.identity] != 1:
        violations.append("chi(identity) != 1")
    for a in range(G.order):
        if chi[a] == 0:
            violations.append(f"chi({G.names[a]}) = 0")
    for a, b in itertools.product(range(G.order), repeat=2):
        if chi[G.mult[a][b]] != canon(chi[a] * chi[b]):
            violations.append(f"chi is not multiplicative at ({G.names[a]}, {G.names[b]})")
            break
    order_g = G.element_order(alpha.g)
    d = _root_order(chi[alpha.g], G.order)
    if d is None:
        violations.append("chi(g) is not a root of unity")
    mu = alpha.mu
    if d is not None:
        if mu != 0 and order_g == d:
            violations.append(f"mu must be 0 when o(g) = o(chi(g)) = {d}")
        if mu != 0 and any(field_pow(chi[a], d) != 1 for a in range(G.order)):
            violations.append(f"mu != 0 requires chi^{d} = 1")
    if alpha.strict_mu and mu not in (0, 1):
        violations.append("mu must be normalized to 0 or 1")
    nilpotent = None
    if d is not None:
        nilpotent = mu == 0 or G.power(alpha.g, d) == G.identity
    return DatumReport(not violations, violations, order_g, d, nilpotent)


def cyclic_datum(n: int, q_exp: tuple[int, int], mu: Scalar = 0, strict_mu: bool = True) -> GroupDatum:
    """The datum (Z_n, 1, chi, mu) with chi(1) = zeta_N^k for q_exp = (k, N)."""
    k, N = q_exp
    G = cyclic_group(n)
    chi = tuple(zeta(N, k * a) for a in range(n))
    return GroupDatum(G, 1 % n, chi, canon(mu), strict_mu)


def group_from_name(name: str) -> GroupTable:
    """``Z<n>``, ``D<m>`` (order 2m), ``S<k>``, ``Q8`` and products such as ``Z2xZ4``."""
    parts = [p.strip() for p in str(name).split("x")]
    out = None
    for p in parts:
        head, num = p[:1].upper(), p[1:]
        if not num.isdigit() or head not in "ZDSQ":
            raise MalformedGroupError(f"unknown group {p!r}")
        k = int(num)
        if head == "Z":
            G = cyclic_group(k)
        elif head == "D":
            G = dihedral_group(k)
        elif head == "S":
            G = symmetric_group(k)
        elif k == 8:
            G = quaternion_group()
        else:
            raise MalformedGroupError(f"unknown group {p!r}")
        out = G if out is None else direct_product(out, G)
    return out


def datum_from_json(doc) -> GroupDatum:
    """Read ``{order, mult, g, chi: [[k, N], ...], mu}`` (chi values are zeta_N^k).

    ``"group": "Z2xZ4"`` may replace ``order`` and ``mult``.
    """
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        if "group" in doc:
            G = group_from_name(doc["group"])
            if "order" in doc and int(doc["order"]) != G.order:
                raise MalformedGroupError(f"order {doc['order']} does not match group {doc['group']}")
        else:
            mult = doc["mult"]
            order = int(doc.get("order", len(mult)))
            if order != len(mult):
                raise MalformedGroupError(f"order {order} does not match table size {len(mult)}")
            G = GroupTable.from_table(mult, doc.get("names"))
        if len(doc["chi"]) != G.order:
            raise MalformedGroupError(f"chi lists {len(doc['chi'])} values for a group of order {G.order}")
        pairs = [tuple(int(v) for v in p) for p in doc["chi"]]
        L = 1
        for _, N in pairs:
            if N < 1:
                raise MalformedGroupError("root of unity orders must be positive")
            L = L * N // math.gcd(L, N)
        chi = tuple(zeta(L, k * (L // N)) for k, N in pairs)
        mu = parse_scalar(doc.get("mu", 0))
        return GroupDatum(G, int(doc["g"]), chi, mu, bool(doc.get("strict_mu", True)))
    except KeyError as exc:
        raise MalformedGroupError(f"missing field {exc.args[0]!r}") from None


# ---------------------------------------------------------------------------
# Hopf presentations


def _add(acc: dict, key, c) -> None:
    if c == 0:
        return
    v = canon(acc.get(key, 0) + c)
    if v == 0:
        acc.pop(key, None)
    else:
        acc[key] = v


def _clean(d: dict) -> dict:
    return {k: canon(v) for k, v in d.items() if v != 0}


@dataclass(eq=False)
class HopfPresentation:
    """Hopf algebra on a named basis.

    ``mult[(a, b)]`` is the product of basis elements a and b, ``comult[c]`` is
    Delta(c) as ``{(a, b): coeff}``, ``antipode[c]`` is S(c); ``unit`` is the
    identity element and ``counit`` the list of epsilon values.
    """

    basis_names: tuple[str, ...]
    mult: dict
    unit: dict
    comult: dict
    counit: tuple
    antipode: dict

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def index(self, name: str) -> int:
        return self.basis_names.index(name)

    # element arithmetic ----------------------------------------------------
    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for a, x in u.items():
            for b, y in v.items():
                for c, z in self.mult.get((a, b), {}).items():
                    _add(out, c, x * y * z)
        return out

    def tmul(self, U: dict, V: dict) -> dict:
        """Product in the tensor power of the same degree."""
        out: dict = {}
        for ka, x in U.items():
            for kb, y in V.items():
                prods = [self.mult.get((p, q), {}) for p, q in zip(ka, kb)]
                if any(not p for p in prods):
                    continue
                for combo in itertools.product(*(p.items() for p in prods)):
                    c = x * y
                    for _, z in combo:
                        c = c * z
                    _add(out, tuple(k for k, _ in combo), c)
        return out

    def delta(self, u: dict) -> dict:
        out: dict = {}
        for c, x in u.items():
            for key, z in self.comult.get(c, {}).items():
                _add(out, key, x * z)
        return out

    def eps(self, u: dict) -> Scalar:
        return canon(sum((x * self.counit[c] for c, x in u.items()), 0))

    def S(self, u: dict) -> dict:
        out: dict = {}
        for c, x in u.items():
            for a, z in self.antipode.get(c, {}).items():
                _add(out, a, x * z)
        return out

    def power(self, u: dict, k: int) -> dict:
        out = dict(self.unit)
        for _ in range(k):
            out = self.mul(out, u)
        return out

    def basis(self, a: int) -> dict:
        return {a: 1}

    # dense views -----------------------------------------------------------
    def antipode_matrix(self) -> Matrix:
        n = self.dim
        return Matrix([[self.antipode.get(c, {}).get(a, 0) for c in range(n)] for a in range(n)])

    def same_structure(self, other: "HopfPresentation") -> bool:
        """Equality of all structure constants under the index-wise basis identification."""
        return (
            self.dim == other.dim
            and self.mult == other.mult
            and self.unit == other.unit
            and self.comult == other.comult
            and tuple(self.counit) == tuple(other.counit)
            and self.antipode == other.antipode
        )

    def relabel(self, perm: Sequence[int], names: Sequence[str]) -> "HopfPresentation":
        """Re-index so that old basis element ``k`` becomes new index ``perm[k]``."""
        p = list(perm)
        return HopfPresentation(
            tuple(names),
            {(p[a], p[b]): {p[c]: z for c, z in v.items()} for (a, b), v in self.mult.items()},
            {p[c]: z for c, z in self.unit.items()},
            {p[c]: {(p[a], p[b]): z for (a, b), z in v.items()} for c, v in self.comult.items()},
            tuple(self.counit[p.index(k)] for k in range(len(p))),
            {p[c]: {p[a]: z for a, z in v.items()} for c, v in self.antipode.items()},
        )

    def to_json(self) -> dict:
        """Nonzero structure constants keyed by basis names, in index order."""
        nm = self.basis_names
        mult = [[nm[a], nm[b], self.format_element(v)] for (a, b), v in sorted(self.mult.items()) if v]
        return {
            "basis": list(nm),
            "unit": self.format_element(self.unit),
            "mult": mult,
            "comult": {nm[c]: self.format_tensor(self.comult.get(c, {})) for c in range(self.dim)},
            "counit": {nm[c]: scalar_to_str(self.counit[c]) for c in range(self.dim)},
            "antipode": {nm[c]: self.format_element(self.antipode.get(c, {})) for c in range(self.dim)},
        }

    def format_element(self, u: dict) -> str:
        if not u:
            return "0"
        return " + ".join(f"({scalar_to_str(u[k])})*{self.basis_names[k]}" for k in sorted(u))

    def format_tensor(self, U: dict) -> list:
        return [
            ["(x)".join(self.basis_names[k] for k in key), scalar_to_str(U[key])] for key in sorted(U)
        ]


def build_group_datum_algebra(alpha: GroupDatum, check: bool = True) -> HopfPresentation:
    """A(G, g, chi, mu) on the basis {h x^m : h in G, 0 <= m < d}, d = o(chi(g)).

    Relations x^d = mu(1 - g^d) and x h = chi(h) h x; Delta(h) = h (x) h,
    Delta(x) = x (x) 1 + g (x) x, eps(x) = 0, and the antipode is the convolution
    inverse S(h x^m) = (-g^{-1} x)^m h^{-1}.
    """
    rep = validate_group_datum(alpha)
    if check and not rep.valid:
        raise InvalidDatumError("; ".join(rep.violations))
    G, chi, mu, g = alpha.group, alpha.chi, alpha.mu, alpha.g
    d = rep.d
    gd = G.power(g, d)

    def idx(h: int, m: int) -> int:
        return h * d + m

    names = []
    for h in range(G.order):
        hn = G.names[h]
        for m in range(d):
            if m == 0:
                names.append(hn)
            else:
                xs = "x" if m == 1 else f"x^{m}"
                names.append(xs if h == G.identity else f"{hn}{xs}")

    mult = {}
    for h1, m1, h2, m2 in itertools.product(range(G.order), range(d), range(G.order), range(d)):
        c = field_pow(chi[h2], m1)
        hh = G.mult[h1][h2]
        m = m1 + m2
        out: dict = {}
        if m < d:
            _add(out, idx(hh, m), c)
        elif mu != 0:
            r = m - d
            _add(out, idx(hh, r), c * mu)
            _add(out, idx(G.mult[hh][gd], r), -c * mu)
        if out:
            mult[(idx(h1, m1), idx(h2, m2))] = out

    unit = {idx(G.identity, 0): 1}
    alg = HopfPresentation(tuple(names), mult, unit, {}, (), {})

    delta_x = {(idx(G.identity, 1), idx(G.identity, 0)): 1, (idx(g, 0), idx(G.identity, 1)): 1} if d > 1 else None
    comult = {}
    for h in range(G.order):
        cur = {(idx(h, 0), idx(h, 0)): 1}
        comult[idx(h, 0)] = cur
        for m in range(1, d):
            cur = alg.tmul(cur, delta_x)
            comult[idx(h, m)] = cur
    counit = tuple(1 if k % d == 0 else 0 for k in range(G.order * d))

    ginv = G.inverse[g]
    s_x = {idx(ginv, 1): -1} if d > 1 else None
    antipode = {}
    for h in range(G.order):
        hinv = {idx(G.inverse[h], 0): 1}
        cur = dict(unit)
        for m in range(d):
            antipode[idx(h, m)] = alg.mul(cur, hinv)
            if m + 1 < d:
                cur = alg.mul(cur, s_x)
    return HopfPresentation(tuple(names), mult, unit, comult, counit, antipode)


# ---------------------------------------------------------------------------
# axioms


@dataclass
class AxiomReport:
    results: dict = field(default_factory=dict)  # axiom -> None (pass) or witness string

    @property
    def ok(self) -> bool:
        return all(w is None for w in self.results.values())

    def failed(self) -> list[str]:
        return [k for k, w in self.results.items() if w is not None]

    def to_dict(self) -> dict:
        return {k: ("pass" if w is None else f"fail: {w}") for k, w in self.results.items()}


def check_hopf_axioms(h: HopfPresentation) -> AxiomReport:
    """Exhaustive check of every Hopf algebra axiom on the structure constants."""
    n = h.dim
    rep = AxiomReport()
    B = [h.basis(a) for a in range(n)]

    def first(pred, keys):
        for k in keys:
            if not pred(*k):
                return k
        return None

    w = first(
        lambda a, b, c: h.mul(h.mul(B[a], B[b]), B[c]) == h.mul(B[a], h.mul(B[b], B[c])),
        itertools.product(range(n), repeat=3),
    )
    rep.results["associativity"] = None if w is None else f"(b{w[0]} b{w[1]}) b{w[2]}"
    w = first(lambda a: h.mul(h.unit, B[a]) == B[a] == h.mul(B[a], h.unit), ((a,) for a in range(n)))
    rep.results["unit"] = None if w is None else f"basis {w[0]}"

    def coassoc(c):
        D = h.comult.get(c, {})
        left: dict = {}
        right: dict = {}
        for (a, b), z in D.items():
            for (p, q), y in h.comult.get(a, {}).items():
                _add(left, (p, q, b), z * y)
            for (p, q), y in h.comult.get(b, {}).items():
                _add(right, (a, p, q), z * y)
        return left == right

    w = first(coassoc, ((c,) for c in range(n)))
    rep.results["coassociativity"] = None if w is None else f"Delta(b{w[0]})"

    def counit_ok(c):
        D = h.comult.get(c, {})
        left: dict = {}
        right: dict = {}
        for (a, b), z in D.items():
            _add(left, b, z * h.counit[a])
            _add(right, a, z * h.counit[b])
        return left == B[c] == right

    w = first(counit_ok, ((c,) for c in range(n)))
    rep.results["counit"] = None if w is None else f"Delta(b{w[0]})"

    def bialg(a, b):
        prod = h.mul(B[a], B[b])
        if h.delta(prod) != h.tmul(h.comult.get(a, {}), h.comult.get(b, {})):
            return False
        return h.eps(prod) == canon(h.counit[a] * h.counit[b])

    w = first(bialg, itertools.product(range(n), repeat=2))
    if w is None and h.delta(h.unit) != {(p, q): canon(x * y) for p, x in h.unit.items() for q, y in h.unit.items()}:
        w = ("unit",)
    if w is None and h.eps(h.unit) != 1:
        w = ("eps(unit)",)
    rep.results["bialgebra"] = None if w is None else "at " + ", ".join(str(x) for x in w)

    def antipode_ok(c):
        D = h.comult.get(c, {})
        left: dict = {}
        right: dict = {}
        for (a, b), z in D.items():
            for k, v in h.mul(h.S(B[a]), B[b]).items():
                _add(left, k, z * v)
            for k, v in h.mul(B[a], h.S(B[b])).items():
                _add(right, k, z * v)
        target = {k: canon(v * h.counit[c]) for k, v in h.unit.items() if h.counit[c] != 0}
        return left == target == right

    w = first(antipode_ok, ((c,) for c in range(n)))
    rep.results["antipode"] = None if w is None else f"S at b{w[0]}"
    return rep


def dualize(h: HopfPresentation, prefix: str = "p", check: bool = True) -> HopfPresentation:
    """The dual Hopf algebra on the dual basis (structure constants transposed)."""
    if check:
        rep = check_hopf_axioms(h)
        if not rep.ok:
            raise ValueError(f"input fails Hopf axioms: {rep.failed()}")
    mult: dict = {}
    for c, D in h.comult.items():
        for (a, b), z in D.items():
            mult.setdefault((a, b), {})[c] = z
    comult: dict = {}
    for (a, b), v in h.mult.items():
        for c, z in v.items():
            comult.setdefault(c, {})[(a, b)] = z
    unit = {c: z for c, z in enumerate(h.counit) if z != 0}
    counit = tuple(h.unit.get(c, 0) for c in range(h.dim))
    antipode: dict = {}
    for c, v in h.antipode.items():
        for a, z in v.items():
            antipode.setdefault(a, {})[c] = z
    names = tuple(f"{prefix}[{nm}]" for nm in h.basis_names)
    return HopfPresentation(names, mult, unit, comult, counit, antipode)


# ---------------------------------------------------------------------------
# the dual of A(alpha) against its closed-form presentation


@dataclass
class DualPresentationReport:
    relations: dict
    nilpotency_index: int
    delta_xi: dict
    delta_p: dict

    @property
    def relations_hold(self) -> bool:
        return all(self.relations.values())

    def to_dict(self) -> dict:
        return {
            "relations": dict(self.relations),
            "xi_nilpotency_index": self.nilpotency_index,
            "delta_xi": self.delta_xi,
            "delta_p": self.delta_p,
        }


def _q_factorial(q: Scalar, r: int) -> Scalar:
    out = 1
    for s in range(1, r + 1):
        out = canon(out * sum((field_pow(q, t) for t in range(s)), 0))
    return out


def verify_dual_presentation(alpha: GroupDatum) -> DualPresentationReport:
    """Check the generators-and-relations description of the dual of A(alpha).

    The dual is computed by transposition; the closed forms for Delta(xi) and
    Delta(p_h) are evaluated separately and compared against it.
    """
    A = build_group_datum_algebra(alpha)
    D = dualize(A)
    G, chi, mu, g = alpha.group, alpha.chi, alpha.mu, alpha.g
    d = validate_group_datum(alpha).d
    q = chi[g]

    def p(h: int, m: int = 0) -> dict:
        return {h * d + m: 1}

    def lin(*terms) -> dict:
        out: dict = {}
        for c, u in terms:
            for k, v in u.items():
                _add(out, k, c * v)
        return out

    xi = lin(*((1, p(h, 1)) for h in range(G.order))) if d > 1 else {}
    chi_el = lin(*((chi[h], p(h)) for h in range(G.order)))
    one = D.unit

    rel = {}
    rel["sum_p_h_is_unit"] = lin(*((1, p(h)) for h in range(G.order))) == one
    rel["orthogonal_idempotents"] = all(
        D.mul(p(a), p(b)) == (p(a) if a == b else {}) for a in range(G.order) for b in range(G.order)
    )
    rel["xi_p_h_equals_p_gh_xi"] = all(
        D.mul(xi, p(h)) == D.mul(p(G.mult[g][h]), xi) for h in range(G.order)
    )
    powers = [one]
    for _ in range(d + 1):
        powers.append(D.mul(powers[-1], xi))
    nil = next((k for k, u in enumerate(powers) if not u), len(powers))
    rel["xi_power_d_is_zero"] = not powers[d]

    def tens(u: dict, v: dict) -> dict:
        out: dict = {}
        for a, x in u.items():
            for b, y in v.items():
                _add(out, (a, b), x * y)
        return out

    def tsum(*terms) -> dict:
        out: dict = {}
        for c, U in terms:
            for k, v in U.items():
                _add(out, k, c * v)
        return out

    computed = D.delta(xi)
    closed = tsum((1, tens(xi, chi_el)), (1, tens(one, chi_el)))
    variant = tsum((1, tens(xi, chi_el)), (1, tens(one, xi)))
    eps_closed: dict = {}
    for (a, b), z in closed.items():
        _add(eps_closed, a, z * D.counit[b])
    delta_xi = {
        "computed": D.format_tensor(computed),
        "closed_form": "xi(x)chi + 1(x)chi",
        "closed_form_matches": computed == closed,
        "variant_form": "xi(x)chi + 1(x)xi",
        "variant_matches": computed == variant,
        "closed_form_counit_defect": D.format_element(lin((1, eps_closed), (-1, xi))),
    }

    def xi_pow(r: int) -> dict:
        return powers[r] if r < len(powers) else {}

    def closed_delta_p(h: int, r_min: int, mu_value) -> dict:
        terms = []
        for u in range(G.order):
            uinv = G.inverse[u]
            terms.append((1, tens(p(u), p(G.mult[uinv][h]))))
        if mu_value != 0:
            ginv_d = G.power(g, -d)
            for u in range(G.order):
                uinv = G.inverse[u]
                w = G.mult[uinv][h]
                for r in range(r_min, d - r_min + 1):
                    s = d - r
                    left = D.mul(xi_pow(r), p(u))
                    right = D.mul(xi_pow(s), lin((1, p(G.mult[G.mult[uinv][ginv_d]][h])), (-1, p(w))))
                    if not left or not right:
                        continue  # a factor xi^d = 0 kills the term
                    c = field_div(mu_value * field_pow(chi[w], r), _q_factorial(q, r) * _q_factorial(q, s))
                    terms.append((c, tens(left, right)))
        return tsum(*terms)

    results = {}
    for label, r_min in (("r,s>=0", 0), ("r,s>=1", 1)):
        mism = [
            G.names[h]
            for h in range(G.order)
            if D.delta(p(h)) != closed_delta_p(h, r_min, mu)
        ]
        flipped = [
            G.names[h]
            for h in range(G.order)
            if D.delta(p(h)) != closed_delta_p(h, r_min, canon(-mu))
        ]
        results[label] = {"matches": not mism, "mismatched_h": mism, "matches_with_mu_negated": not flipped}
    delta_p = {"mu": scalar_to_str(mu), "conventions": results}
    if mu != 0:
        h0 = G.identity
        delta_p["computed_example"] = {
            "h": G.names[h0],
            "delta": D.format_tensor(D.delta(p(h0))),
            "closed_form_r,s>=1": D.format_tensor(closed_delta_p(h0, 1, mu)),
        }
    return DualPresentationReport(rel, nil, delta_xi, delta_p)
