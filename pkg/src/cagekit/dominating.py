"""Perfect dominating sets of the cage for even q and the graphs left after
deleting them.

A set ``U`` is a perfect dominating set when every vertex outside ``U`` has
exactly one neighbour in ``U``; removing it from a (q+1)-regular graph leaves
a q-regular graph.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .construct import build_gamma
from .field import FieldSpec, make_field
from .graph import INF, BipartiteGraph, degree_profile, diameter
from .labels import RHO, Label, label_to_json

VertexSet = frozenset


class UnsupportedQ(ValueError):
    pass


class EmptySeed(ValueError):
    pass


class PerfectionFailure(AssertionError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Variant(enum.Enum):
    EVEN_GE8 = "even_ge8"
    Q4_SPECIAL = "q4_special"
    # Q' seeds for q >= 8; not a construction from the source, offered as an option
    SHIFTED = "shifted"


def p_poly(F: FieldSpec, u: int) -> int:
    """1 + u + u^2."""
    return F.add(1, F.add(u, F.mul(u, u)))


@dataclass(frozen=True)
class SeedSets:
    Q: tuple[Label, ...]
    S: tuple[Label, ...]
    variant: Variant
    x: int | None = None


def seed_sets(q: int, x: int | None = None) -> SeedSets:
    """Seed sets Q (side 0) and S (side 1).

    For q = 4 the Q' form ``{(rho,j,x)_0} + {(rho,rho,0)_0}`` is used with
    ``x`` defaulting to the smallest element outside ``{0, 1}``.  For q >= 8
    passing ``x`` selects the same shifted form.
    """
    _require_even(q)
    F = make_field(q)
    if q == 4:
        variant = Variant.Q4_SPECIAL
        x = 2 if x is None else x
    elif x is None:
        variant, x = Variant.EVEN_GE8, None
    else:
        variant = Variant.SHIFTED
    if x is not None and x not in range(2, q):
        raise ValueError(f"x must be a field element outside {{0, 1}}, got {x!r}")
    shift = 0 if x is None else x
    Q = tuple(Label(0, RHO, j, shift) for j in range(q)) + (Label(0, RHO, RHO, 0),)
    S = tuple(Label(1, u, u, p_poly(F, u)) for u in range(q)) + (Label(1, RHO, 1, 1),)
    return SeedSets(Q, S, variant, x)


def _require_even(q: int) -> None:
    try:
        F = make_field(q)
    except ValueError as exc:
        raise UnsupportedQ(str(exc)) from None
    if F.p != 2 or q < 4:
        raise UnsupportedQ(f"perfect dominating set construction needs even q >= 4, got {q}")


# -- neighbourhood operators ----------------------------------------------------

def neighborhood(g: BipartiteGraph, A: Iterable[int]) -> VertexSet:
    out = set()
    for a in A:
        out.update(g.neighbors(a).tolist())
    return VertexSet(out)


def closed_neighborhood(g: BipartiteGraph, A: Iterable[int]) -> VertexSet:
    A = set(A)
    return VertexSet(A | neighborhood(g, A))


def second_neighborhood(g: BipartiteGraph, a: int) -> VertexSet:
    """Vertices at distance exactly 2 from ``a``."""
    first = set(g.neighbors(a).tolist())
    out = set()
    for w in first:
        out.update(g.neighbors(w).tolist())
    out -= first
    out.discard(a)
    return VertexSet(out)


def common_second_neighborhood(g: BipartiteGraph, A: Iterable[int]) -> VertexSet:
    A = list(A)
    if not A:
        raise EmptySeed("common second neighbourhood of an empty set")
    common = set(second_neighborhood(g, A[0]))
    for a in A[1:]:
        common &= second_neighborhood(g, a)
    return VertexSet(common)


# -- certificates ----------------------------------------------------------------

@dataclass
class PdsCertificate:
    pds: VertexSet
    perfect: bool
    outside_counts: dict[int, int]
    induced_degrees: dict[int, int]
    induced_diameter: int | float
    witness: int | None = None
    variant: Variant | None = None
    x: int | None = None
    q: int | None = None
    disjoint: bool | None = None
    parts: dict[str, VertexSet] = field(default_factory=dict)
    alternatives: dict[int, dict] = field(default_factory=dict)
    graph: BipartiteGraph | None = field(default=None, repr=False)

    @property
    def cardinality(self) -> int:
        return len(self.pds)

    def labels(self) -> list[Label]:
        return [self.graph.label(v) for v in sorted(self.pds)]

    def to_json(self) -> dict:
        out = {
            "q": self.q,
            "variant": self.variant.value if self.variant else None,
            "x": self.x,
            "cardinality": self.cardinality,
            "perfect": self.perfect,
            "outside_neighbor_counts": {str(k): v for k, v in self.outside_counts.items()},
            "induced_degrees": {str(k): v for k, v in self.induced_degrees.items()},
            "induced_diameter": "inf" if self.induced_diameter == INF else self.induced_diameter,
            "dq_ds_disjoint": self.disjoint,
            "witness": None,
        }
        if self.witness is not None:
            w = self.witness
            out["witness"] = label_to_json(self.graph.label(w)) if self.graph.labels else w
        if self.alternatives:
            out["alternatives"] = {str(k): v for k, v in self.alternatives.items()}
        return out


def verify_pds(g: BipartiteGraph, U: Iterable[int]) -> PdsCertificate:
    """Check ``|N(v) & U| == 1`` for every ``v`` outside ``U``; never raises."""
    U = VertexSet(int(u) for u in U)
    inside = [False] * g.order
    for u in U:
        inside[u] = True
    counts = Counter()
    witness = None
    for v in range(g.order):
        if inside[v]:
            continue
        k = sum(inside[w] for w in g.neighbors(v).tolist())
        counts[k] += 1
        if k != 1 and witness is None:
            witness = v
    H = g.induced_subgraph(U)
    return PdsCertificate(
        pds=U,
        perfect=witness is None,
        outside_counts=dict(sorted(counts.items())),
        induced_degrees=degree_profile(H),
        induced_diameter=diameter(H),
        witness=witness,
        graph=g,
    )


def _assemble(g: BipartiteGraph, seeds: SeedSets) -> dict[str, VertexSet]:
    Q = [g.index(lab) for lab in seeds.Q]
    S = [g.index(lab) for lab in seeds.S]
    return {
        "NQ": closed_neighborhood(g, Q),
        "IQ": common_second_neighborhood(g, Q),
        "NS": closed_neighborhood(g, S),
        "IS": common_second_neighborhood(g, S),
    }


def build_pds(q: int, x: int | None = None, strict: bool = True) -> PdsCertificate:
    """D = N[Q] + I_Q + N[S] + I_S in the cage, re-verified by :func:`verify_pds`.

    Raises :class:`PerfectionFailure` (with a witness) when ``strict`` and the
    set is not perfect.
    """
    seeds = seed_sets(q, x)
    g = build_gamma(q)
    parts = _assemble(g, seeds)
    DQ = parts["NQ"] | parts["IQ"]
    DS = parts["NS"] | parts["IS"]
    cert = verify_pds(g, DQ | DS)
    cert.variant, cert.x, cert.q = seeds.variant, seeds.x, q
    cert.disjoint = not (DQ & DS)
    cert.parts = parts
    if q == 4 and x is None:
        for other in range(3, q):
            alt = verify_pds(g, _union(_assemble(g, seed_sets(q, other))))
            cert.alternatives[other] = {"cardinality": alt.cardinality, "perfect": alt.perfect}
    if strict and not cert.perfect:
        raise PerfectionFailure(
            f"q={q}: vertex {g.label(cert.witness)} has "
            f"{sum(int(w) in cert.pds for w in g.neighbors(cert.witness))} neighbours in D",
            witness=cert.witness)
    return cert


def _union(parts: dict[str, VertexSet]) -> VertexSet:
    return VertexSet().union(*parts.values())


def remove_pds(q: int, x: int | None = None) -> BipartiteGraph:
    """The cage minus its perfect dominating set: a q-regular graph."""
    cert = build_pds(q, x)
    return cert.graph.remove_vertices(cert.pds)


# -- closed forms from the construction -------------------------------------------

def iq_closed_form(q: int) -> set[Label]:
    return {Label(0, 0, t, 0) for t in range(q)} | {Label(0, RHO, RHO, RHO)}


def is_closed_form(q: int) -> set[Label]:
    F = make_field(q)
    return {Label(1, u, F.add(1, u), p_poly(F, u)) for u in range(q)} | {Label(1, RHO, 0, 1)}


# -- the matching D_Q & V_1 -> D_S & V_0 -------------------------------------------

def matching_pairs(q: int) -> list[tuple[Label, Label]]:
    """Pairs (side-1 vertex of D_Q, side-0 vertex of D_S) as listed in the
    construction.  Entries whose closed form divides by zero are omitted."""
    _require_even(q)
    F = make_field(q)
    p = lambda u: p_poly(F, u)  # noqa: E731
    pairs = [(Label(1, RHO, RHO, u), Label(0, RHO, u, p(u))) for u in range(q)]
    pairs.append((Label(1, RHO, RHO, RHO), Label(0, RHO, RHO, 1)))
    pairs += [(Label(1, RHO, t, 0), Label(0, 0, t, p(t))) for t in range(q)]
    for a in range(q):
        a2 = F.mul(a, a)
        pairs.append((Label(1, a, a, 0), Label(0, 1, 0, a2)))
        pairs.append((Label(1, a, F.add(a, 1), 0), Label(0, 1, 1, a2)))
        if p(a) == 0:
            continue
        for t in range(2, q):
            # x = 1 + t(t+1)/p(a); the matched vertex is (x, ax+a+t, a^2 x)
            xx = F.add(1, F.div(F.mul(t, F.add(t, 1)), p(a)))
            y = F.add(F.add(F.mul(a, xx), a), t)
            pairs.append((Label(1, a, F.add(a, t), 0), Label(0, xx, y, F.mul(a2, xx))))
    return pairs


def matching_defects(q: int, pairs=None) -> list[str]:
    """Reasons the listed pairs fail to be a perfect matching of D_Q & V_1
    into D_S & V_0 inside the cage; empty when the check passes."""
    if q < 8:
        raise UnsupportedQ(f"matching check needs even q >= 8, got {q}")
    pairs = matching_pairs(q) if pairs is None else list(pairs)
    cert = build_pds(q, strict=False)
    g = cert.graph
    DQ = cert.parts["NQ"] | cert.parts["IQ"]
    DS = cert.parts["NS"] | cert.parts["IS"]
    left = {v for v in DQ if g.side[v] == 1}
    right = {v for v in DS if g.side[v] == 0}
    defects = []
    for l1, l0 in pairs:
        if l1 not in g or l0 not in g:
            defects.append(f"{l1} -- {l0}: not a vertex")
            continue
        u, v = g.index(l1), g.index(l0)
        if u not in left:
            defects.append(f"{l1} not in D_Q on side 1")
        if v not in right:
            defects.append(f"{l0} not in D_S on side 0")
        if not g.has_edge(u, v):
            defects.append(f"{l1} -- {l0} is not an edge")
    ones = [a for a, _ in pairs]
    zeros = [b for _, b in pairs]
    if len(set(ones)) != len(ones) or len(set(zeros)) != len(zeros):
        defects.append("pairing is not injective")
    covered = {g.index(a) for a in ones if a in g}
    for v in sorted(left - covered):
        defects.append(f"{g.label(v)} is unmatched")
    return defects


def check_matching(q: int, pairs=None) -> bool:
    return not matching_defects(q, pairs)
