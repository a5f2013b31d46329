"""The acceptance battery shared by ``cagekit selftest`` and the test suite.

Every check is exact.  Each entry yields a :class:`Check` whose ``run``
returns ``(passed, detail)``.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from collections import deque
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import construct as cc
from . import dominating as dom
from . import formats
from .graph import (INF, BipartiteGraph, degree_profile, diameter, distance,
                    distances_from, girth, is_bipartite_consistent, moore_bound)
from .labels import RHO, Label

GAMMA_QS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)
HQ_QS = (3, 4, 5, 7, 8, 9)
STAGE_QS = (2, 3, 4, 5)
EXHAUSTIVE_QS = (2, 3, 4, 5)
SAMPLED_QS = (7, 8, 9)
SAMPLE_PAIRS = 500
SEED = 20131


@dataclass
class Check:
    cid: str
    name: str
    run: Callable[[], tuple[bool, str]]
    q: int | None = None


@dataclass
class Outcome:
    cid: str
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.cid:<8} {self.name:<48} {self.seconds:8.3f}s  {self.detail}"


def warm_up() -> None:
    """Trigger JIT compilation so timings measure the kernels only."""
    g = BipartiteGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)], [0, 1, 0, 1])
    girth(g)
    diameter(g)
    distance(g, 0, 2)
    distances_from(g, 0, 1)


# -- 1, 2: the cage -------------------------------------------------------------------

def check_cage(q: int, with_diameter: bool = True, threads: int = 1):
    t0 = time.perf_counter()
    g = cc.build_gamma(q)
    n = 2 * (q**3 + q**2 + q + 1)
    facts = {
        "order": g.order == n == moore_bound(q + 1),
        "regular": degree_profile(g) == {q + 1: n},
        "bipartite": is_bipartite_consistent(g),
        "girth": girth(g, threads) == 8,
    }
    if with_diameter:
        facts["diameter"] = diameter(g, threads) == 4
    elapsed = time.perf_counter() - t0
    budget = 1.0 if q <= 9 else 60.0
    facts["runtime"] = elapsed < budget
    bad = [k for k, ok in facts.items() if not ok]
    return not bad, f"order={g.order} {elapsed:.2f}s/{budget:.0f}s" + (f" bad={bad}" if bad else "")


def check_dual(q: int):
    try:
        cc.compare_formulations(q)
    except cc.FormulationMismatch as exc:
        return False, str(exc)
    return True, f"{cc.build_gamma(q).size} edges identical"


# -- 3: B_q / H_q -------------------------------------------------------------------------

def check_bq_hq(q: int):
    bad = []
    for name, g in (("B", cc.build_bq(q)), ("H", cc.build_hq(q))):
        if g.order != 2 * q**3:
            bad.append(f"{name} order {g.order}")
        if degree_profile(g) != {q: 2 * q**3}:
            bad.append(f"{name} degrees {degree_profile(g)}")
        gi = girth(g)
        if gi != 8:
            bad.append(f"{name} girth {gi}")
    if not cc.check_isomorphism(q):
        bad.append("sigma is not an isomorphism")
    return not bad, "; ".join(bad) or f"order {2 * q**3}, {q}-regular, girth 8, sigma ok"


# -- 4: the staged graphs ----------------------------------------------------------------

STAGE_ORDERS = {
    cc.Stage.BQ_PRIME: lambda q: 2 * q**3 + q**2,
    cc.Stage.BQ_DOUBLE_PRIME: lambda q: 2 * q**3 + 2 * q**2 + q,
    cc.Stage.BQ_TRIPLE_PRIME: lambda q: 2 * q**3 + 2 * q**2 + 2 * q + 1,
}


def expected_stage_degree(q: int, stage: cc.Stage, lab: Label) -> int:
    """Degree ledger of the augmentation: vertices added at the latest
    stage have degree q, the rest q+1 (B' keeps all of side 1 at q)."""
    if stage is cc.Stage.BQ_PRIME:
        return q + 1 if lab.side == 0 else q
    if stage is cc.Stage.BQ_DOUBLE_PRIME:
        return q if (lab.side == 0 and lab.a is RHO) else q + 1
    if stage is cc.Stage.BQ_TRIPLE_PRIME:
        return q if (lab.side == 1 and lab.a is RHO and lab.b is RHO) else q + 1
    raise ValueError(stage)


def check_stages(q: int):
    bad = []
    for stage, order in STAGE_ORDERS.items():
        g = cc.build_staged(q, stage)
        if g.order != order(q):
            bad.append(f"{stage.value} order {g.order} != {order(q)}")
        wrong = [lab for v, lab in enumerate(g.labels)
                 if g.degree(v) != expected_stage_degree(q, stage, lab)]
        if wrong:
            bad.append(f"{stage.value} degree mismatch at {wrong[0]}")
        gi = girth(g)
        if gi != 8:
            bad.append(f"{stage.value} girth {gi}")
    gamma_same = cc.build_staged(q, cc.Stage.GAMMA).same_structure(cc.build_gamma(q))
    if not gamma_same:
        bad.append("final stage differs from the cage")
    return not bad, "; ".join(bad) or "orders, degree split and girth 8 for B', B'', B'''"


# -- 5: distance claims -------------------------------------------------------------------

def distance_claims(q: int) -> list[tuple[str, BipartiteGraph, list[list[Label]], int]]:
    """(name, graph, groups, bound): members of a group are pairwise at
    distance >= bound."""
    F = range(q)
    Fr = list(F) + [RHO]
    bq = cc.build_bq(q)
    b1 = cc.build_staged(q, cc.Stage.BQ_PRIME)
    b2 = cc.build_staged(q, cc.Stage.BQ_DOUBLE_PRIME)
    return [
        ("lemma side1", bq, [[Label(1, a, b, c) for b in F for c in F] for a in F], 4),
        ("lemma side0", bq, [[Label(0, i, j, k) for j in F for k in F] for i in F], 4),
        ("claim1", bq, [[Label(0, x, y, j) for j in F] for x in F for y in F], 6),
        ("claim3", b1, [[Label(1, a, t, c) for t in F] for a in Fr for c in F], 6),
        ("claim4", b2, [[Label(0, RHO, a, j) for j in F] for a in Fr], 6),
    ]


def _group_ok_exhaustive(g, group, bound):
    idx = [g.index(lab) for lab in group]
    for pos, src in enumerate(idx):
        dist = distances_from(g, src, bound - 1)
        for dst in idx[pos + 1:]:
            if 0 <= dist[dst] < bound:
                return False, (g.label(src), g.label(dst), int(dist[dst]))
    return True, None


def check_distance_claims(q: int, exhaustive: bool):
    rng = random.Random(SEED + q)
    report = []
    for name, g, groups, bound in distance_claims(q):
        if exhaustive:
            for group in groups:
                ok, bad = _group_ok_exhaustive(g, group, bound)
                if not ok:
                    return False, f"{name}: d{bad[:2]} = {bad[2]} < {bound}"
            report.append(f"{name}:all")
        else:
            for _ in range(SAMPLE_PAIRS):
                group = rng.choice(groups)
                u, v = rng.sample(group, 2)
                d = distance(g, g.index(u), g.index(v))
                if d < bound:
                    return False, f"{name}: d({u},{v}) = {d} < {bound}"
            report.append(f"{name}:{SAMPLE_PAIRS}")
    return True, " ".join(report)


# -- 6, 7: perfect dominating sets ----------------------------------------------------------

def check_pds(q: int):
    cert = dom.build_pds(q, strict=False)
    g = cert.graph
    bad = []
    if q == 4:
        if not (cert.perfect and cert.cardinality == 70):
            bad.append(f"perfect={cert.perfect} |D|={cert.cardinality}")
        return not bad, "; ".join(bad) or f"Q' with x={cert.x}: perfect, |D|=70"
    want = 2 * (q * q + 4 * q + 3)
    if not cert.perfect:
        bad.append(f"not perfect (witness {g.label(cert.witness)})")
    if cert.cardinality != want:
        bad.append(f"|D|={cert.cardinality} != {want}")
    iq = {g.label(v) for v in cert.parts["IQ"]}
    is_ = {g.label(v) for v in cert.parts["IS"]}
    if iq != dom.iq_closed_form(q):
        bad.append("I_Q differs from closed form")
    if is_ != dom.is_closed_form(q):
        bad.append("I_S differs from closed form")
    if not set(cert.induced_degrees) <= {3, q + 1}:
        bad.append(f"induced degrees {cert.induced_degrees}")
    if cert.induced_diameter != 5:
        bad.append(f"induced diameter {cert.induced_diameter}")
    defects = dom.matching_defects(q)
    if defects:
        bad.append(f"matching: {len(defects)} defects, e.g. {defects[0]}")
    return not bad, "; ".join(bad) or f"|D|={want}, perfect, closed forms, matching ok"


RESIDUAL_ORDERS = {4: 100, 8: 972, 16: 8092}


def check_residual(q: int, threads: int = 1):
    h = dom.remove_pds(q)
    want = RESIDUAL_ORDERS[q]
    bad = []
    if h.order != want:
        bad.append(f"order {h.order} != {want}")
    if degree_profile(h) != {q: h.order}:
        bad.append(f"degrees {degree_profile(h)}")
    gi = girth(h, threads)
    if gi != 8:
        bad.append(f"girth {gi}")
    return not bad, "; ".join(bad) or f"order {want}, {q}-regular, girth 8"


# -- 8: verifier soundness --------------------------------------------------------------------

def oracle_girth(n: int, edges) -> float:
    """Independent girth: for each edge, delete it and BFS between its ends."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    best = math.inf
    for u, v in edges:
        seen = {u: 0}
        todo = deque([u])
        while todo:
            x = todo.popleft()
            if x == v or seen[x] + 1 >= best:
                break
            for y in adj[x]:
                if (x, y) in ((u, v), (v, u)) or y in seen:
                    continue
                seen[y] = seen[x] + 1
                todo.append(y)
        if v in seen:
            best = min(best, seen[v] + 1)
    return best


def random_graphs(count: int = 50, seed: int = SEED):
    """Alternating random bipartite and general graphs, 2..200 vertices."""
    rng = np.random.default_rng(seed)
    for k in range(count):
        n = int(rng.integers(2, 201))
        density = float(rng.uniform(0.3, 4.0)) / n
        if k % 2 == 0:
            left = int(rng.integers(1, n))
            side = np.array([0] * left + [1] * (n - left), dtype=np.int8)
            pairs = [(u, v) for u in range(left) for v in range(left, n)
                     if rng.random() < 2 * density]
        else:
            side = np.zeros(n, dtype=np.int8)
            pairs = [(u, v) for u, v in itertools.combinations(range(n), 2)
                     if rng.random() < density]
        yield BipartiteGraph.from_edges(n, pairs, side), pairs


def check_girth_oracle(count: int = 50):
    for k, (g, pairs) in enumerate(random_graphs(count)):
        got, want = girth(g), oracle_girth(g.order, pairs)
        if got != want:
            return False, f"graph {k} (n={g.order}, m={len(pairs)}): kernel {got}, oracle {want}"
    return True, f"{count} random graphs agree"


def corruptions(g: BipartiteGraph, count: int = 20, seed: int = SEED):
    """Single-edge corruptions: intra-side insertions, cross insertions, deletions."""
    rng = random.Random(seed)
    edges = g.edges().tolist()
    side0 = [v for v in range(g.order) if g.side[v] == 0]
    side1 = [v for v in range(g.order) if g.side[v] == 1]
    for k in range(count):
        kind = k % 3
        if kind == 0:
            u, v = rng.sample(side0 if rng.random() < 0.5 else side1, 2)
            yield "intra", g.with_edge(u, v)
        elif kind == 1:
            while True:
                u, v = rng.choice(side0), rng.choice(side1)
                if not g.has_edge(u, v):
                    break
            yield "cross", g.with_edge(u, v)
        else:
            u, v = rng.choice(edges)
            yield "delete", g.without_edge(u, v)


def check_corruption_detected(q: int = 5):
    g = cc.build_gamma(q)
    for kind, bad in corruptions(g):
        regular = len(degree_profile(bad)) == 1
        if regular and is_bipartite_consistent(bad) and girth(bad) == 8:
            return False, f"undetected {kind} corruption"
    return True, "20 single-edge corruptions of the cage all detected"


# -- 9: formats ---------------------------------------------------------------------------

def check_roundtrip():
    bad = []
    for name, g in (("gamma3", cc.build_gamma(3)), ("residual4", dom.remove_pds(4))):
        for fmt in formats.FORMATS:
            data = formats.dumps(g, fmt)
            back = formats.loads(data, fmt)
            same = (np.array_equal(back.offsets, g.offsets)
                    and np.array_equal(back.nbrs, g.nbrs))
            if fmt == "labeled-json":
                same = same and back.labels == g.labels and back.same_structure(g)
            if not same:
                bad.append(f"{name}/{fmt} round trip")
            if formats.dumps(back, fmt) != data or formats.dumps(g, fmt) != data:
                bad.append(f"{name}/{fmt} re-serialization differs")
    return not bad, "; ".join(bad) or "4 formats x 2 graphs"


# -- assembly ---------------------------------------------------------------------------------

def battery(q_max: int = 16, quick: bool = False, threads: int = 1) -> list[Check]:
    checks = []
    for q in (q for q in GAMMA_QS if q <= q_max):
        with_diam = not (quick and q >= 11)
        checks.append(Check("1", f"Moore cage q={q}",
                            lambda q=q, d=with_diam: check_cage(q, d, threads), q))
    for q in (q for q in GAMMA_QS if q <= q_max):
        checks.append(Check("2", f"dual formulation q={q}", lambda q=q: check_dual(q), q))
    for q in (q for q in HQ_QS if q <= q_max):
        checks.append(Check("3", f"B_q/H_q and sigma q={q}", lambda q=q: check_bq_hq(q), q))
    for q in (q for q in STAGE_QS if q <= q_max):
        checks.append(Check("4", f"stage ledger q={q}", lambda q=q: check_stages(q), q))
    for q in (q for q in EXHAUSTIVE_QS if q <= q_max):
        checks.append(Check("5", f"distance claims q={q} (all)",
                            lambda q=q: check_distance_claims(q, True), q))
    for q in (q for q in SAMPLED_QS if q <= q_max):
        checks.append(Check("5", f"distance claims q={q} (sampled)",
                            lambda q=q: check_distance_claims(q, False), q))
    for q in (q for q in (4, 8, 16) if q <= q_max):
        checks.append(Check("6", f"perfect dominating set q={q}", lambda q=q: check_pds(q), q))
    for q in (q for q in (4, 8, 16) if q <= q_max):
        checks.append(Check("7", f"residual q-regular graph q={q}",
                            lambda q=q: check_residual(q, threads), q))
    checks.append(Check("8", "girth kernel vs brute-force oracle", check_girth_oracle))
    checks.append(Check("8", "corruption of cage q=5 detected", check_corruption_detected))
    checks.append(Check("9", "format round trips", check_roundtrip))
    return checks


def run(check: Check) -> Outcome:
    t0 = time.perf_counter()
    try:
        passed, detail = check.run()
    except Exception as exc:  # a crash is a failed criterion, reported not raised
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return Outcome(check.cid, check.name, passed, detail, time.perf_counter() - t0)
