"""Quivers with relations: parsing, gentleness, and Hopf admissibility.

Text format (sections separated by ``;`` or newlines)::

    vertices 0 1
    arrows a:0->1 b:1->0
    relations b.a a.b

Paths are read right to left: ``b.a`` is a followed by b, so it needs
target(a) == source(b).  The JSON form is
``{"vertices": [...], "arrows": [[name, src, tgt], ...], "relations": ["b.a", ...]}``;
arrows may also be objects ``{"name", "source", "target"}`` and relations may be
lists of arrow names.
"""

from __future__ import annotations

import json
import re
from collections import defaultdict
from dataclasses import dataclass, field

from .hopf_core import GroupDatum, InvalidDatumError, validate_group_datum

__all__ = [
    "GentleReport",
    "NotGentleError",
    "QuiverParseError",
    "QuiverPresentation",
    "cycle_quiver",
    "derived_equivalent",
    "hopf_admissible",
    "is_derived_discrete_datum",
    "is_gentle",
    "parse_quiver",
]


class QuiverParseError(ValueError):
    def __init__(self, message: str, position: int | None = None, token: str | None = None):
        self.position = position
        self.token = token
        where = f" at offset {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class NotGentleError(ValueError):
    pass


@dataclass(frozen=True)
class QuiverPresentation:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (name, source, target)
    relations: tuple[tuple[str, ...], ...]  # arrow names, leftmost applied last

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise QuiverParseError("duplicate vertex name")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            dup = next(x for x in names if names.count(x) > 1)
            raise QuiverParseError(f"duplicate arrow name {dup!r}", token=dup)
        for name, s, t in self.arrows:
            for v in (s, t):
                if v not in vs:
                    raise QuiverParseError(f"arrow {name!r} uses unknown vertex {v!r}", token=v)
        src = {a[0]: a[1] for a in self.arrows}
        tgt = {a[0]: a[2] for a in self.arrows}
        for k, rel in enumerate(self.relations):
            if not rel:
                raise QuiverParseError(f"relation {k} is empty")
            for x in rel:
                if x not in src:
                    raise QuiverParseError(f"relation {'.'.join(rel)!r} uses unknown arrow {x!r}", token=x)
            # rel = (b, a): a first, so target(a) must equal source(b)
            for left, right in zip(rel, rel[1:]):
                if tgt[right] != src[left]:
                    raise QuiverParseError(
                        f"relation {'.'.join(rel)!r} is not composable: {right!r} ends at {tgt[right]!r} "
                        f"but {left!r} starts at {src[left]!r}",
                        token=f"{left}.{right}",
                    )

    @property
    def _src(self):
        return {a[0]: a[1] for a in self.arrows}

    @property
    def _tgt(self):
        return {a[0]: a[2] for a in self.arrows}

    def length_two_paths(self) -> set[tuple[str, str]]:
        src, out = self._src, set()
        for b, _, _ in self.arrows:
            for a, _, ta in self.arrows:
                if ta == src[b]:
                    out.add((b, a))
        return out

    def relabel(self, vmap: dict, amap: dict) -> "QuiverPresentation":
        return QuiverPresentation(
            tuple(vmap[v] for v in self.vertices),
            tuple((amap[a], vmap[s], vmap[t]) for a, s, t in self.arrows),
            tuple(tuple(amap[x] for x in r) for r in self.relations),
        )

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [list(a) for a in self.arrows],
            "relations": [".".join(r) for r in self.relations],
        }

    def to_text(self) -> str:
        parts = ["vertices " + " ".join(self.vertices)]
        parts.append("arrows " + " ".join(f"{a}:{s}->{t}" for a, s, t in self.arrows))
        parts.append("relations " + " ".join(".".join(r) for r in self.relations))
        return "; ".join(parts)


_ARROW = re.compile(r"^([^\s:;]+):([^\s:;-]+)->([^\s:;]+)$")


def _parse_text(text: str) -> QuiverPresentation:
    vertices, arrows, relations = None, [], []
    seen = set()
    pos = 0
    for chunk in re.split(r"([;\n])", text):
        start = pos
        pos += len(chunk)
        if chunk in (";", "\n") or not chunk.strip():
            continue
        tokens = [(m.group(), start + m.start()) for m in re.finditer(r"\S+", chunk)]
        head, hpos = tokens[0]
        body = tokens[1:]
        key = head.lower()
        if key in seen:
            raise QuiverParseError(f"section {head!r} given twice", hpos, head)
        seen.add(key)
        if key == "vertices":
            vertices = [t for t, _ in body]
        elif key == "arrows":
            for tok, tpos in body:
                m = _ARROW.match(tok)
                if not m:
                    raise QuiverParseError(f"malformed arrow {tok!r} (expected name:src->tgt)", tpos, tok)
                arrows.append((m.group(1), m.group(2), m.group(3), tpos))
        elif key == "relations":
            for tok, tpos in body:
                parts = tok.split(".")
                if any(not p for p in parts):
                    raise QuiverParseError(f"malformed relation {tok!r}", tpos, tok)
                relations.append((tuple(parts), tpos))
        else:
            raise QuiverParseError(f"unknown section {head!r} (expected vertices, arrows or relations)", hpos, head)
    if vertices is None:
        raise QuiverParseError("missing 'vertices' section")
    vs = set(vertices)
    names = {}
    for name, s, t, tpos in arrows:
        for v in (s, t):
            if v not in vs:
                raise QuiverParseError(f"arrow {name!r} uses unknown vertex {v!r}", tpos, v)
        if name in names:
            raise QuiverParseError(f"duplicate arrow name {name!r}", tpos, name)
        names[name] = (s, t)
    for rel, tpos in relations:
        for x in rel:
            if x not in names:
                raise QuiverParseError(f"relation {'.'.join(rel)!r} uses unknown arrow {x!r}", tpos, x)
        for left, right in zip(rel, rel[1:]):
            if names[right][1] != names[left][0]:
                raise QuiverParseError(
                    f"relation {'.'.join(rel)!r} is not composable: {right!r} ends at {names[right][1]!r} "
                    f"but {left!r} starts at {names[left][0]!r}",
                    tpos,
                    f"{left}.{right}",
                )
    return QuiverPresentation(
        tuple(vertices), tuple((a, s, t) for a, s, t, _ in arrows), tuple(r for r, _ in relations)
    )


def _parse_json(doc: dict) -> QuiverPresentation:
    try:
        vertices = tuple(str(v) for v in doc["vertices"])
    except (KeyError, TypeError):
        raise QuiverParseError("JSON quiver needs a 'vertices' list") from None
    arrows = []
    for k, a in enumerate(doc.get("arrows", [])):
        if isinstance(a, dict):
            try:
                arrows.append((str(a["name"]), str(a["source"]), str(a["target"])))
            except KeyError as exc:
                raise QuiverParseError(f"arrow {k} is missing {exc.args[0]!r}") from None
        elif isinstance(a, str):
            m = _ARROW.match(a)
            if not m:
                raise QuiverParseError(f"malformed arrow {a!r}", token=a)
            arrows.append(m.groups())
        else:
            if len(a) != 3:
                raise QuiverParseError(f"arrow {k} must be [name, source, target]")
            arrows.append(tuple(str(x) for x in a))
    relations = []
    for r in doc.get("relations", []):
        relations.append(tuple(r.split(".")) if isinstance(r, str) else tuple(str(x) for x in r))
    return QuiverPresentation(vertices, tuple(arrows), tuple(relations))


def parse_quiver(text) -> QuiverPresentation:
    """Parse the text format or its JSON equivalent (a string or an already-loaded dict)."""
    if isinstance(text, dict):
        return _parse_json(text)
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise QuiverParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
        return _parse_json(doc)
    return _parse_text(text)


def cycle_quiver(n: int, copies: int = 1, relations: str = "J2") -> QuiverPresentation:
    """Disjoint union of ``copies`` basic n-cycles, with all length-two paths as relations."""
    vertices, arrows = [], []
    for c in range(copies):
        pre = f"c{c}_" if copies > 1 else ""
        for i in range(n):
            vertices.append(f"{pre}{i}")
            arrows.append((f"{pre}a{i}", f"{pre}{i}", f"{pre}{(i + 1) % n}"))
    q = QuiverPresentation(tuple(vertices), tuple(arrows), ())
    rels = tuple(sorted(q.length_two_paths())) if relations == "J2" else ()
    return QuiverPresentation(q.vertices, q.arrows, rels)


# ---------------------------------------------------------------------------
# gentleness


@dataclass
class GentleReport:
    gentle: bool
    violations: list = field(default_factory=list)  # (condition, witness)

    def __bool__(self):
        return self.gentle

    def __iter__(self):
        return iter((self.gentle, self.violations))

    def to_dict(self) -> dict:
        return {"gentle": self.gentle, "violations": [{"condition": c, "witness": w} for c, w in self.violations]}


def is_gentle(q: QuiverPresentation) -> GentleReport:
    """Check conditions (a)-(d) on the given relation set."""
    out_deg, in_deg = defaultdict(list), defaultdict(list)
    for a, s, t in q.arrows:
        out_deg[s].append(a)
        in_deg[t].append(a)
    viol = []
    for v in q.vertices:
        if len(out_deg[v]) > 2:
            viol.append(("a", f"{len(out_deg[v])} arrows start at vertex {v}: {', '.join(out_deg[v])}"))
        if len(in_deg[v]) > 2:
            viol.append(("a", f"{len(in_deg[v])} arrows stop at vertex {v}: {', '.join(in_deg[v])}"))
    for r in q.relations:
        if len(r) != 2:
            viol.append(("b", f"relation {'.'.join(r)} has length {len(r)}"))
    rels = {r for r in q.relations if len(r) == 2}
    src, tgt = q._src, q._tgt
    for b, sb, tb in q.arrows:
        before = in_deg[sb]  # alpha with beta.alpha composable
        after = out_deg[tb]  # gamma with gamma.beta composable
        free_before = [a for a in before if (b, a) not in rels]
        free_after = [c for c in after if (c, b) not in rels]
        in_before = [a for a in before if (b, a) in rels]
        in_after = [c for c in after if (c, b) in rels]
        if len(free_before) > 1:
            viol.append(("c", f"{b}.{free_before[0]} and {b}.{free_before[1]} are both nonzero"))
        if len(free_after) > 1:
            viol.append(("c", f"{free_after[0]}.{b} and {free_after[1]}.{b} are both nonzero"))
        if len(in_before) > 1:
            viol.append(("d", f"{b}.{in_before[0]} and {b}.{in_before[1]} are both relations"))
        if len(in_after) > 1:
            viol.append(("d", f"{in_after[0]}.{b} and {in_after[1]}.{b} are both relations"))
    return GentleReport(not viol, viol)


# ---------------------------------------------------------------------------
# Hopf admissibility


def _components(q: QuiverPresentation) -> list[set[str]]:
    adj = defaultdict(set)
    for _, s, t in q.arrows:
        adj[s].add(t)
        adj[t].add(s)
    seen, comps = set(), []
    for v in q.vertices:
        if v in seen:
            continue
        stack, comp = [v], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(adj[x] - comp)
        seen |= comp
        comps.append(comp)
    return comps


def hopf_admissible(q: QuiverPresentation) -> tuple[bool, str]:
    """Whether k Q / I can carry a Hopf algebra structure, with the reason.

    Requires a gentle presentation.  Admissible exactly when Q is a disjoint
    union of basic cycles of one common even length and I is generated by all
    paths of length two.
    """
    rep = is_gentle(q)
    if not rep.gentle:
        raise NotGentleError("not gentle: " + "; ".join(f"({c}) {w}" for c, w in rep.violations))
    if not q.vertices:
        return False, "empty quiver"
    out_deg, in_deg = defaultdict(int), defaultdict(int)
    for _, s, t in q.arrows:
        out_deg[s] += 1
        in_deg[t] += 1
    for v in q.vertices:
        if out_deg[v] != 1 or in_deg[v] != 1:
            return False, f"not a disjoint union of basic cycles: vertex {v} has {in_deg[v]} incoming and {out_deg[v]} outgoing arrows"
    lengths = sorted(len(c) for c in _components(q))
    if len(set(lengths)) > 1:
        return False, (
            f"mixed cycle lengths {sorted(set(lengths))}: all blocks of the coalgebra "
            "decomposition must share one cycle length"
        )
    n = lengths[0]
    if n % 2:
        return False, f"odd cycle length {n}"
    rels = set(q.relations)
    paths = q.length_two_paths()
    if rels != paths:
        missing = sorted(paths - rels)
        extra = sorted(rels - paths)
        bits = []
        if missing:
            bits.append("missing " + ", ".join(".".join(p) for p in missing))
        if extra:
            bits.append("extra " + ", ".join(".".join(p) for p in extra))
        return False, "relations are not all paths of length two: " + "; ".join(bits)
    return True, f"{len(lengths)} basic cycle(s) of even length {n} with I = J^2"


# ---------------------------------------------------------------------------
# classifier predicates


def is_derived_discrete_datum(alpha: GroupDatum) -> bool:
    """The dual of A(alpha) is derived discrete iff chi(g) has order 2."""
    rep = validate_group_datum(alpha)
    if not rep.valid:
        raise InvalidDatumError("invalid group datum: " + "; ".join(rep.violations))
    return rep.d == 2


def derived_equivalent(n: int, m: int) -> bool:
    """Whether the duals of A(n,2,mu,-1) and A(m,2,mu',-1) are derived equivalent."""
    for x in (n, m):
        if not isinstance(x, int) or x < 2 or x % 2:
            raise ValueError(f"cycle length {x!r} must be an even integer >= 2")
    return n == m
