"""Coordinate constructions of the Moore (q+1, 8)-graph and its subgraphs.

Every vertex is a :class:`~cagekit.labels.Label`.  The cage is generated from
the neighbour rule for side-1 vertices; the rule for side-0 vertices is kept as
an independent second description and only used for cross-checking.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Callable, Iterable

from .field import FieldSpec, make_field
from .graph import BipartiteGraph, GraphError
from .labels import RHO, InvalidLabel, Label, LabelCodec, validate

Rule = Callable[[FieldSpec, Label], list[Label]]


class RhoArithmeticError(TypeError):
    """Raised if rho ever reaches a field operation."""


class FormulationMismatch(AssertionError):
    pass


class Stage(enum.Enum):
    BQ = "bq"
    BQ_PRIME = "bq1"
    BQ_DOUBLE_PRIME = "bq2"
    BQ_TRIPLE_PRIME = "bq3"
    GAMMA = "gamma"


def _affine(*xs) -> None:
    for x in xs:
        if x is RHO or not isinstance(x, int):
            raise RhoArithmeticError(f"arithmetic on non-field value {x!r}")


# -- neighbour rules ------------------------------------------------------------

def gamma_rule_side1(F: FieldSpec, lab: Label) -> list[Label]:
    """Neighbours in the cage of a side-1 vertex."""
    _, a, b, c = lab
    W = range(F.q)
    if a is not RHO:
        _affine(a, b, c)
        a2 = F.mul(a, a)
        const = F.add(F.mul(F.scalar(2), F.mul(a, b)), c)
        out = [Label(0, w, F.add(F.mul(a, w), b), F.add(F.mul(a2, w), const)) for w in W]
        out.append(Label(0, RHO, a, c))
    elif b is not RHO:
        out = [Label(0, c, b, w) for w in W]
        out.append(Label(0, RHO, RHO, c))
    elif c is not RHO:
        out = [Label(0, RHO, c, w) for w in W]
        out.append(Label(0, RHO, RHO, RHO))
    else:
        out = [Label(0, RHO, RHO, w) for w in W]
        out.append(Label(0, RHO, RHO, RHO))
    return out


def gamma_rule_side0(F: FieldSpec, lab: Label) -> list[Label]:
    """Neighbours in the cage of a side-0 vertex (the 'equivalent' block)."""
    _, i, j, k = lab
    W = range(F.q)
    if i is not RHO:
        _affine(i, j, k)
        two_j = F.mul(F.scalar(2), j)
        out = []
        for w in W:
            y = F.sub(j, F.mul(w, i))
            z = F.add(F.sub(F.mul(F.mul(w, w), i), F.mul(w, two_j)), k)
            out.append(Label(1, w, y, z))
        out.append(Label(1, RHO, j, i))
    elif j is not RHO:
        out = [Label(1, j, w, k) for w in W]
        out.append(Label(1, RHO, RHO, j))
    elif k is not RHO:
        out = [Label(1, RHO, w, k) for w in W]
        out.append(Label(1, RHO, RHO, RHO))
    else:
        out = [Label(1, RHO, RHO, w) for w in W]
        out.append(Label(1, RHO, RHO, RHO))
    return out


def bq_rule_side1(F: FieldSpec, lab: Label) -> list[Label]:
    _, a, b, c = lab
    _affine(a, b, c)
    a2 = F.mul(a, a)
    const = F.add(F.mul(F.scalar(2), F.mul(a, b)), c)
    return [Label(0, j, F.add(F.mul(a, j), b), F.add(F.mul(a2, j), const)) for j in range(F.q)]


def hq_rule_side1(F: FieldSpec, lab: Label) -> list[Label]:
    _, a, b, c = lab
    _affine(a, b, c)
    a2 = F.mul(a, a)
    return [Label(0, w, F.add(F.mul(a, w), b), F.add(F.mul(a2, w), c)) for w in range(F.q)]


# -- vertex sets ----------------------------------------------------------------

def _shape(lab: Label) -> str:
    if lab.a is not RHO:
        return "abc"
    if lab.b is not RHO:
        return "rbc"
    if lab.c is not RHO:
        return "rrc"
    return "rrr"


# label shapes present on (side 0, side 1) at each stage
STAGE_SHAPES = {
    Stage.BQ: ({"abc"}, {"abc"}),
    Stage.BQ_PRIME: ({"abc"}, {"abc", "rbc"}),
    Stage.BQ_DOUBLE_PRIME: ({"abc", "rbc", "rrc"}, {"abc", "rbc"}),
    Stage.BQ_TRIPLE_PRIME: ({"abc", "rbc", "rrc"}, {"abc", "rbc", "rrc", "rrr"}),
    Stage.GAMMA: ({"abc", "rbc", "rrc", "rrr"}, {"abc", "rbc", "rrc", "rrr"}),
}


def stage_labels(q: int, stage: Stage) -> list[Label]:
    shapes = STAGE_SHAPES[stage]
    return [lab for lab in LabelCodec(q).all_labels() if _shape(lab) in shapes[lab.side]]


def _build(F: FieldSpec, labels: list[Label], rule: Rule, rule_side: int,
           induced: bool = False) -> BipartiteGraph:
    codec = LabelCodec(F.q)
    index = {lab: i for i, lab in enumerate(labels)}
    edges = []
    for lab in labels:
        if lab.side != rule_side:
            continue
        u = index[lab]
        nbrs = rule(F, lab)
        if len(set(nbrs)) != len(nbrs):
            raise GraphError(f"rule produced a repeated neighbour for {lab}")
        for nb in nbrs:
            validate(nb, F.q)
            v = index.get(nb)
            if v is None:
                if induced:
                    continue
                raise GraphError(f"rule maps {lab} outside the vertex set: {nb}")
            edges.append((u, v))
    side = [lab.side for lab in labels]
    return BipartiteGraph.from_edges(len(labels), edges, side, labels=labels, codec=codec)


@lru_cache(maxsize=32)
def build_gamma(q: int) -> BipartiteGraph:
    """The Moore (q+1, 8)-graph, generated from the side-1 rules."""
    F = make_field(q)
    return _build(F, stage_labels(q, Stage.GAMMA), gamma_rule_side1, 1)


@lru_cache(maxsize=32)
def build_gamma_dual(q: int) -> BipartiteGraph:
    """Same graph, generated from the side-0 rules."""
    F = make_field(q)
    return _build(F, stage_labels(q, Stage.GAMMA), gamma_rule_side0, 0)


@lru_cache(maxsize=32)
def build_bq(q: int) -> BipartiteGraph:
    F = make_field(q)
    return _build(F, stage_labels(q, Stage.BQ), bq_rule_side1, 1)


@lru_cache(maxsize=32)
def build_hq(q: int) -> BipartiteGraph:
    F = make_field(q)
    return _build(F, stage_labels(q, Stage.BQ), hq_rule_side1, 1)


@lru_cache(maxsize=64)
def build_staged(q: int, stage: Stage | str) -> BipartiteGraph:
    """Intermediate graph of the staged augmentation of B_q into the cage.

    Each stage is the subgraph of the cage induced on the label shapes listed
    in :data:`STAGE_SHAPES`, so all stages share the cage's rule table.
    """
    stage = Stage(stage)
    F = make_field(q)
    return _build(F, stage_labels(q, stage), gamma_rule_side1, 1, induced=True)


def compare_formulations(q: int) -> None:
    """Raise :class:`FormulationMismatch` unless both rule blocks agree."""
    primal, dual = build_gamma(q), build_gamma_dual(q)
    if primal.same_structure(dual):
        return
    ep = {tuple(e) for e in primal.edges().tolist()}
    ed = {tuple(e) for e in dual.edges().tolist()}
    diff = sorted(ep ^ ed)[0]
    where = "side-1 rules only" if diff in ep else "side-0 rules only"
    u, v = (primal.label(x) for x in diff)
    raise FormulationMismatch(f"q={q}: edge {u} -- {v} produced by {where}")


def formulations_agree(q: int) -> bool:
    try:
        compare_formulations(q)
    except FormulationMismatch:
        return False
    return True


# -- the isomorphism B_q -> H_q ---------------------------------------------------

def sigma(q: int, lab: Label) -> Label:
    """Map a B_q vertex to H_q: side 1 ``(a,b,c) -> (a,b,2ab+c)``, side 0 fixed."""
    F = make_field(q)
    validate(lab, q)
    if not lab.is_affine():
        raise InvalidLabel(f"{lab} is not a vertex of B_{q}")
    if lab.side == 0:
        return lab
    _, a, b, c = lab
    return Label(1, a, b, F.add(F.mul(F.scalar(2), F.mul(a, b)), c))


def check_isomorphism(q: int, bq: BipartiteGraph | None = None,
                      hq: BipartiteGraph | None = None,
                      mapping: Callable[[int, Label], Label] = sigma) -> bool:
    """True iff ``mapping`` is an isomorphism ``bq -> hq`` (both directions)."""
    bq = build_bq(q) if bq is None else bq
    hq = build_hq(q) if hq is None else hq
    if bq.order != hq.order:
        return False
    try:
        image = [hq.index(mapping(q, lab)) for lab in bq.labels]
    except KeyError:
        return False
    if len(set(image)) != bq.order:
        return False
    pre = [0] * hq.order
    for u, v in enumerate(image):
        pre[v] = u
    if any(hq.side[image[u]] != bq.side[u] for u in range(bq.order)):
        return False
    forward = all(hq.has_edge(image[u], image[v]) for u, v in bq.edges().tolist())
    backward = all(bq.has_edge(pre[u], pre[v]) for u, v in hq.edges().tolist())
    return forward and backward


def affine_labels(q: int, side: int) -> Iterable[Label]:
    return (Label(side, a, b, c) for a in range(q) for b in range(q) for c in range(q))
