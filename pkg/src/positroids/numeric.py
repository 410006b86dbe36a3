"""Exact evaluation on the Grassmannian side: minors, cell-point sampling,
identity verification.

Everything runs over ``fractions.Fraction``.  Cell points come from the
boundary measurement of a planar network: pick an acyclic orientation of a
reduced graph in which every internal black vertex has exactly one outgoing
edge and every internal white vertex exactly one incoming edge, then sum
weighted directed paths from boundary sources to boundary sinks.  With
positive weights the resulting matrix lands in the totally nonnegative part
of the open cell, which is what makes exact zero-testing of the vanishing
profile meaningful.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .cluster import LaurentPoly, Seed, mutate_seed, mutation_class
from .combinatorics import (
    DimensionError,
    GrassmannNecklace,
    KSet,
    ValidationError,
    necklace_from_permutation,
    positroid_members,
)
from .plabic import BLACK, WHITE, PlabicGraph, trip_permutation

__all__ = [
    "ConstructionError",
    "RationalMatrix",
    "CellPoint",
    "minor",
    "pluecker_relation_check",
    "evaluate",
    "minor_assignment",
    "perfect_orientation",
    "sample_cell_point",
    "sample_generic_matrix",
    "gauge_rescale",
    "verify_identities",
]


class ConstructionError(RuntimeError):
    """No valid network construction exists for the request."""


@dataclass(frozen=True)
class RationalMatrix:
    """A k x n matrix of exact rationals, one affine chart representative."""

    rows: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def of(cls, rows: Sequence[Sequence]) -> RationalMatrix:
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if data and any(len(row) != len(data[0]) for row in data):
            raise DimensionError("ragged rows")
        return cls(data)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def minor(self, columns: KSet) -> Fraction:
        return minor(self, columns)

    def rank(self) -> int:
        work = [list(row) for row in self.rows]
        r = 0
        for col in range(self.n):
            pivot = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
            if pivot is None:
                continue
            work[r], work[pivot] = work[pivot], work[r]
            for i in range(r + 1, len(work)):
                if work[i][col]:
                    f = work[i][col] / work[r][col]
                    for j in range(col, self.n):
                        work[i][j] -= f * work[r][j]
            r += 1
        return r

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> RationalMatrix:
        return cls.of(data)


def minor(matrix: RationalMatrix, columns: KSet) -> Fraction:
    """Exact determinant of the selected columns.

    >>> m = RationalMatrix.of([[1, 0, 2], [0, 1, 3]])
    >>> minor(m, KSet.of([1, 2], 3))
    Fraction(1, 1)
    """
    if columns.k != matrix.k:
        raise DimensionError(f"need {matrix.k} columns, got {columns.k}")
    if columns.n != matrix.n:
        raise DimensionError(f"matrix has {matrix.n} columns, label lives on [{columns.n}]")
    size = matrix.k
    work = [[matrix.rows[i][j - 1] for j in columns.elements] for i in range(size)]
    det = Fraction(1)
    for col in range(size):
        pivot = next((i for i in range(col, size) if work[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det *= work[col][col]
        inv = 1 / work[col][col]
        for i in range(col + 1, size):
            if work[i][col]:
                f = work[i][col] * inv
                for j in range(col, size):
                    work[i][j] -= f * work[col][j]
    return det


def pluecker_relation_check(
    matrix: RationalMatrix, core: KSet, a: int, b: int, c: int, d: int
) -> bool:
    """Exact three-term relation among minors through a common (k-2)-set.

    minor(Lac) * minor(Lbd) == minor(Lab) * minor(Lcd) + minor(Lad) * minor(Lbc)
    for any cyclically ordered quadruple disjoint from the core L.
    """
    quad = (a, b, c, d)
    if len(set(quad)) != 4 or set(quad) & set(core.elements):
        raise DimensionError("quadruple must be four distinct entries outside the core")
    n = core.n
    base = list(core.elements)
    lac = KSet.of(base + [a, c], n)
    lbd = KSet.of(base + [b, d], n)
    lab = KSet.of(base + [a, b], n)
    lcd = KSet.of(base + [c, d], n)
    lad = KSet.of(base + [a, d], n)
    lbc = KSet.of(base + [b, c], n)
    lhs = minor(matrix, lac) * minor(matrix, lbd)
    rhs = minor(matrix, lab) * minor(matrix, lcd) + minor(matrix, lad) * minor(matrix, lbc)
    return lhs == rhs


def evaluate(poly: LaurentPoly, assignment: Mapping[str, Fraction]) -> Fraction:
    """Exact value of a Laurent polynomial; raises PoleError at a zero base
    with negative exponent."""
    return poly.evaluate(assignment)


def minor_assignment(matrix: RationalMatrix, labels: Sequence[KSet]) -> dict[str, Fraction]:
    """Symbol table mapping each label to its minor, for Laurent evaluation."""
    return {lab.label(): minor(matrix, lab) for lab in labels}


# ---------------------------------------------------------------------------
# perfect orientations


def perfect_orientation(graph: PlabicGraph) -> dict[int, tuple[int, int]]:
    """An acyclic orientation with one outgoing edge per internal black vertex
    and one incoming edge per internal white vertex, as edge id -> (tail, head).

    Found by backtracking over the distinguished edge of each internal vertex
    (the outgoing one at black, the incoming one at white) with unit
    propagation; the coupling is local: a same-colored internal edge is
    distinguished at exactly one end, an opposite-colored one at both ends or
    neither.  Cyclic candidates are rejected, so the first surviving
    assignment is returned.
    """
    cached = _orientation_cache(graph)
    if cached is None:
        raise ConstructionError("graph admits no acyclic perfect orientation")
    return dict(cached)


@lru_cache(maxsize=None)
def _orientation_cache(graph: PlabicGraph) -> tuple[tuple[int, tuple[int, int]], ...] | None:
    n = graph.boundary
    rot = graph.rotation_map
    internal = sorted(v for v in rot if v > n)
    incident: dict[int, list[int]] = {v: list(rot[v]) for v in internal}
    colors = graph.color_map

    domains: dict[int, set[int]] = {v: set(edges) for v, edges in incident.items()}
    chosen: dict[int, int] = {}

    def endpoints(eid: int) -> tuple[int, int]:
        return graph.edges[eid]

    def other(eid: int, v: int) -> int:
        u, w = endpoints(eid)
        return w if u == v else u

    def force(v: int, eid: int, trail: list[tuple[str, int, int]]) -> bool:
        # v's distinguished edge must be eid
        if v in chosen:
            return chosen[v] == eid
        if eid not in domains[v]:
            return False
        return assign(v, eid, trail)

    def forbid(v: int, eid: int, trail: list[tuple[str, int, int]]) -> bool:
        if v in chosen:
            return chosen[v] != eid
        if eid in domains[v]:
            domains[v].discard(eid)
            trail.append(("domain", v, eid))
            if not domains[v]:
                return False
            if len(domains[v]) == 1 and v not in chosen:
                return assign(v, next(iter(domains[v])), trail)
        return True

    def assign(v: int, eid: int, trail: list[tuple[str, int, int]]) -> bool:
        chosen[v] = eid
        trail.append(("chosen", v, eid))
        for e2 in incident[v]:
            w = other(e2, v)
            if w <= n:
                continue
            if e2 == eid:
                ok = force(w, e2, trail) if colors[v] != colors[w] else forbid(w, e2, trail)
            else:
                ok = forbid(w, e2, trail) if colors[v] != colors[w] else force(w, e2, trail)
            if not ok:
                return False
        return True

    def undo(trail: list[tuple[str, int, int]], mark: int) -> None:
        while len(trail) > mark:
            kind, v, eid = trail.pop()
            if kind == "chosen":
                del chosen[v]
            else:
                domains[v].add(eid)

    def orientation_of(assignment: dict[int, int]) -> dict[int, tuple[int, int]]:
        directed: dict[int, tuple[int, int]] = {}
        for eid, (u, v) in enumerate(graph.edges):
            iu, iv = u > n, v > n
            if not iu and not iv:
                directed[eid] = (u, v) if u < v else (v, u)
                continue
            if iu:
                special = assignment.get(u) == eid
                # black: distinguished = outgoing; white: distinguished = incoming
                out_of_u = special if colors[u] == BLACK else not special
                directed[eid] = (u, v) if out_of_u else (v, u)
            else:
                special = assignment.get(v) == eid
                out_of_v = special if colors[v] == BLACK else not special
                directed[eid] = (v, u) if out_of_v else (u, v)
        return directed

    def acyclic(directed: dict[int, tuple[int, int]]) -> bool:
        outs: dict[int, list[int]] = {v: [] for v in rot}
        indeg = {v: 0 for v in rot}
        for tail, head in directed.values():
            outs[tail].append(head)
            indeg[head] += 1
        queue = [v for v, d in indeg.items() if d == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for w in outs[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return seen == len(indeg)

    result: tuple[tuple[int, tuple[int, int]], ...] | None = None

    def search() -> bool:
        nonlocal result
        free = [v for v in internal if v not in chosen]
        if not free:
            directed = orientation_of(chosen)
            if acyclic(directed):
                result = tuple(sorted(directed.items()))
                return True
            return False
        v = min(free, key=lambda x: len(domains[x]))
        for eid in sorted(domains[v]):
            trail: list[tuple[str, int, int]] = []
            if assign(v, eid, trail) and search():
                return True
            undo(trail, 0)
        return False

    # degree-1 internal vertices are forced immediately
    trail0: list[tuple[str, int, int]] = []
    for v in internal:
        if len(incident[v]) == 1 and v not in chosen:
            if not force(v, incident[v][0], trail0):
                return None
    return result if search() else None


def _orientation_sources(graph: PlabicGraph, directed: Mapping[int, tuple[int, int]]) -> KSet:
    n = graph.boundary
    rot = graph.rotation_map
    sources = [b for b in range(1, n + 1) if directed[rot[b][0]][0] == b]
    return KSet.of(sources, n)


# ---------------------------------------------------------------------------
# boundary measurement


@dataclass(frozen=True)
class CellPoint:
    """A sampled point of the open cell: the measurement matrix together with
    the network data that produced it."""

    matrix: RationalMatrix
    weights: tuple[tuple[int, Fraction], ...]
    graph: PlabicGraph
    orientation: tuple[tuple[int, tuple[int, int]], ...]
    sources: KSet

    def weight_map(self) -> dict[int, Fraction]:
        return dict(self.weights)

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_json(),
            "weights": {str(eid): str(w) for eid, w in self.weights},
            "sources": self.sources.to_json(),
        }


@lru_cache(maxsize=None)
def _graph_positroid(graph: PlabicGraph, n_cap: int):
    sigma = trip_permutation(graph)
    necklace = necklace_from_permutation(sigma)
    return necklace, positroid_members(necklace, n_cap).members


def _measurement_matrix(
    graph: PlabicGraph,
    directed: Mapping[int, tuple[int, int]],
    weights: Mapping[int, Fraction],
) -> tuple[RationalMatrix, KSet]:
    n = graph.boundary
    rot = graph.rotation_map
    sources = _orientation_sources(graph, directed)
    outs: dict[int, list[tuple[int, int]]] = {v: [] for v in rot}
    indeg = {v: 0 for v in rot}
    for eid, (tail, head) in directed.items():
        outs[tail].append((head, eid))
        indeg[head] += 1
    order = []
    queue = [v for v, d in indeg.items() if d == 0]
    while queue:
        v = queue.pop()
        order.append(v)
        for w, _ in outs[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if len(order) != len(indeg):
        raise ConstructionError("orientation has a directed cycle")

    src_list = list(sources.elements)
    rows = []
    for s in src_list:
        reach = {v: Fraction(0) for v in rot}
        reach[s] = Fraction(1)
        for v in order:
            if reach[v] == 0:
                continue
            for w, eid in outs[v]:
                reach[w] += reach[v] * weights[eid]
        row = []
        for j in range(1, n + 1):
            if j in sources:
                row.append(Fraction(1) if j == s else Fraction(0))
            else:
                between = sum(1 for t in src_list if min(s, j) < t < max(s, j))
                row.append((Fraction(-1) ** between) * reach[j])
        rows.append(tuple(row))
    return RationalMatrix(tuple(rows)), sources


def sample_cell_point(
    graph: PlabicGraph,
    weights: Mapping[int, Fraction] | None = None,
    rng_seed: int = 0,
    n_cap: int = 12,
) -> CellPoint:
    """Boundary measurement at positive edge weights, validated exactly.

    Weights default to small random positive rationals drawn from the seeded
    generator.  Every call checks the vanishing profile of the result: minors
    vanish exactly on the positroid complement and are strictly positive on
    the members (the point lies in the totally nonnegative part of the cell).
    """
    directed = perfect_orientation(graph)
    if weights is None:
        rng = random.Random(rng_seed)
        weights = {
            eid: Fraction(rng.randint(1, 9), rng.randint(1, 9))
            for eid in range(len(graph.edges))
        }
    else:
        weights = dict(weights)
        if set(weights) != set(range(len(graph.edges))):
            raise ValidationError("need one weight per edge id")
        if any(w <= 0 for w in weights.values()):
            raise ValidationError("weights must be positive")
    matrix, sources = _measurement_matrix(graph, directed, weights)

    necklace, members = _graph_positroid(graph, n_cap)
    n, k = necklace.n, necklace.k
    for combo in itertools.combinations(range(1, n + 1), k):
        lab = KSet(combo, n)
        value = minor(matrix, lab)
        if lab in members and value <= 0:
            raise ConstructionError(f"minor {lab} should be positive, got {value}")
        if lab not in members and value != 0:
            raise ConstructionError(f"minor {lab} should vanish, got {value}")
    return CellPoint(
        matrix,
        tuple(sorted(weights.items())),
        graph,
        tuple(sorted(directed.items())),
        sources,
    )


def gauge_rescale(point: CellPoint, vertex: int, factor: Fraction) -> CellPoint:
    """Rescale the edges at one internal vertex compatibly with the
    orientation: incoming weights by ``factor``, outgoing by its inverse.

    Every source-to-sink path through the vertex picks up both factors, so
    the measurement matrix, and hence every minor, is unchanged.
    """
    factor = Fraction(factor)
    if factor <= 0:
        raise ValidationError("gauge factor must be positive")
    if vertex <= point.graph.boundary or vertex not in point.graph.rotation_map:
        raise ValidationError(f"{vertex} is not an internal vertex")
    directed = dict(point.orientation)
    weights = point.weight_map()
    for eid in point.graph.rotation_map[vertex]:
        tail, head = directed[eid]
        if head == vertex:
            weights[eid] *= factor
        else:
            weights[eid] /= factor
    matrix, sources = _measurement_matrix(point.graph, directed, weights)
    return CellPoint(matrix, tuple(sorted(weights.items())), point.graph,
                     point.orientation, sources)


def sample_generic_matrix(k: int, n: int, rng: random.Random) -> RationalMatrix:
    """Random integer matrix with every maximal minor nonzero."""
    while True:
        m = RationalMatrix.of(
            [[rng.randint(-9, 9) for _ in range(n)] for _ in range(k)]
        )
        if all(
            minor(m, KSet(c, n)) != 0
            for c in itertools.combinations(range(1, n + 1), k)
        ):
            return m


# ---------------------------------------------------------------------------
# identity verification


def _value(seed: Seed, vid: int, matrix: RationalMatrix, assignment: Mapping[str, Fraction]) -> Fraction:
    # direct minor for labeled vertices, Laurent route otherwise; the exchange
    # identities below tie the two routes together
    vertex = seed.quiver.vertex(vid)
    if vertex.label is not None:
        return minor(matrix, vertex.label)
    return seed.variable(vid).evaluate(assignment)


def _exchange_identities(seed: Seed, limit: int) -> list[dict]:
    seeds, complete = mutation_class(seed, limit=limit)
    if not complete:
        raise ValidationError(f"mutation class exceeded the limit {limit}")
    out = []
    for idx, member in enumerate(seeds):
        for vid in member.quiver.mutable_ids():
            mutated = mutate_seed(member, vid)
            pivot = member.quiver.vertex(vid).label
            name = pivot.label() if pivot is not None else f"v{vid}"
            out.append(
                {
                    "name": f"exchange:{name}@{idx}",
                    "seed": member,
                    "mutated": mutated,
                    "vid": vid,
                }
            )
    return out


def _restricted_identities(necklace: GrassmannNecklace, n_cap: int) -> list[dict]:
    """Two-term specializations of three-term relations on the cell.

    Whenever a product in a three-term relation contains a minor from the
    positroid complement it drops on the cell; the leftover equality between
    the surviving products is a nontrivial exact check.
    """
    n, k = necklace.n, necklace.k
    if k < 2:
        return []  # no quadruple fits around a (k-2)-core
    members = positroid_members(necklace, n_cap).members
    out = []
    ground = range(1, n + 1)
    for core in itertools.combinations(ground, k - 2):
        rest = [x for x in ground if x not in core]
        for a, b, c, d in itertools.combinations(rest, 4):
            base = list(core)
            pairs = [
                (KSet.of(base + [a, c], n), KSet.of(base + [b, d], n)),
                (KSet.of(base + [a, b], n), KSet.of(base + [c, d], n)),
                (KSet.of(base + [a, d], n), KSet.of(base + [b, c], n)),
            ]
            alive = [p for p in pairs if p[0] in members and p[1] in members]
            if len(alive) == len(pairs) or not alive:
                continue
            name = "restricted:" + "=".join(
                f"{p[0].label()}*{p[1].label()}" for p in alive
            )
            out.append({"name": name, "pairs": pairs, "alive": alive})
    return out


def verify_identities(
    necklace: GrassmannNecklace,
    seed: Seed,
    points: Sequence[CellPoint],
    generic: Sequence[RationalMatrix],
    corrupt: bool = False,
    limit: int = 500,
    n_cap: int = 12,
) -> dict:
    """Exact verification sweep; no tolerances anywhere.

    Checks, in order: every exchange relation of every seed in the mutation
    class on every generic matrix (labels evaluated as minors, unlabeled
    variables through their Laurent expansions, which ties the two routes);
    the restricted two-term identities on every cell point; the k=2 generator
    decompositions on every cell point; and the exact vanishing profile of
    every cell point.  ``corrupt`` perturbs one mutated variable first and is
    a negative control: the report must then contain failures.
    """
    from . import cm

    initial_labels = [v.label for v in seed.quiver.vertices]
    if any(lab is None for lab in initial_labels):
        raise ValidationError("seed must be fully labeled")
    report: dict = {"identities": [], "passed": True}

    exchanges = _exchange_identities(seed, limit)
    if corrupt and exchanges:
        victim = exchanges[0]
        broken = victim["mutated"]
        vid = victim["vid"]
        variables = dict(broken.variables)
        variables[vid] = variables[vid] + LaurentPoly.const(1)
        # drop the label too, otherwise the direct-minor route would bypass
        # the corrupted variable and defeat the negative control
        from dataclasses import replace as _replace

        vertices = tuple(
            _replace(v, label=None) if v.id == vid else v
            for v in broken.quiver.vertices
        )
        victim["mutated"] = Seed.of(
            type(broken.quiver)(vertices, broken.quiver.arrows), variables
        )
        victim["name"] += ":corrupted"

    for item in exchanges:
        entry = {"name": item["name"], "points_checked": 0, "failures": []}
        member, mutated, vid = item["seed"], item["mutated"], item["vid"]
        for pidx, matrix in enumerate(generic):
            assignment = minor_assignment(matrix, initial_labels)
            lhs = _value(member, vid, matrix, assignment) * _value(
                mutated, vid, matrix, assignment
            )
            rhs = Fraction(0)
            for side in ("in", "out"):
                arrows = (
                    member.quiver.arrows_in(vid)
                    if side == "in"
                    else member.quiver.arrows_out(vid)
                )
                product = Fraction(1)
                for w, mult in arrows:
                    product *= _value(member, w, matrix, assignment) ** mult
                rhs += product
            entry["points_checked"] += 1
            if lhs != rhs:
                entry["failures"].append(
                    {"point": f"generic:{pidx}", "lhs": str(lhs), "rhs": str(rhs)}
                )
        report["identities"].append(entry)

    for item in _restricted_identities(necklace, n_cap):
        entry = {"name": item["name"], "points_checked": 0, "failures": []}
        for pidx, point in enumerate(points):
            values = [
                minor(point.matrix, p[0]) * minor(point.matrix, p[1])
                for p in item["pairs"]
            ]
            lhs, rhs = values[0], values[1] + values[2]
            entry["points_checked"] += 1
            if lhs != rhs:
                entry["failures"].append(
                    {"point": f"cell:{pidx}", "lhs": str(lhs), "rhs": str(rhs)}
                )
        report["identities"].append(entry)

    if necklace.k == 2:
        members = positroid_members(necklace, n_cap).members
        for label in sorted(members, key=lambda s: s.elements):
            decomposition = (
                cm.k2_generator_decomposition(label, necklace)
                if not cm.in_gp_b(label, necklace)
                else None
            )
            if decomposition is None:
                continue
            j_set, l1, l2 = decomposition
            entry = {
                "name": f"k2:{label.label()}*{j_set.label()}={l1.label()}*{l2.label()}",
                "points_checked": 0,
                "failures": [],
            }
            for pidx, point in enumerate(points):
                lhs = minor(point.matrix, label) * minor(point.matrix, j_set)
                rhs = minor(point.matrix, l1) * minor(point.matrix, l2)
                entry["points_checked"] += 1
                if lhs != rhs:
                    entry["failures"].append(
                        {"point": f"cell:{pidx}", "lhs": str(lhs), "rhs": str(rhs)}
                    )
            report["identities"].append(entry)

    entry = {"name": "vanishing-profile", "points_checked": 0, "failures": []}
    members = positroid_members(necklace, n_cap).members
    n, k = necklace.n, necklace.k
    for pidx, point in enumerate(points):
        zero = {
            KSet(c, n)
            for c in itertools.combinations(range(1, n + 1), k)
            if minor(point.matrix, KSet(c, n)) == 0
        }
        expected = {
            KSet(c, n) for c in itertools.combinations(range(1, n + 1), k)
        } - members
        entry["points_checked"] += 1
        if zero != expected:
            entry["failures"].append(
                {
                    "point": f"cell:{pidx}",
                    "lhs": sorted(s.label() for s in zero),
                    "rhs": sorted(s.label() for s in expected),
                }
            )
    report["identities"].append(entry)

    report["passed"] = all(not e["failures"] for e in report["identities"])
    return report
