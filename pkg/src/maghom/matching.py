"""Insertion certificates and the acyclic matchings they induce.

On a diameter-2 graph, a certificate assigns to every ordered distance-2
pair a middle vertex (a triple rule), and to every (alpha, beta, delta)
with d(alpha,beta)=1, d(beta,delta)=2 a middle vertex between beta and
delta (a quadruple rule).  Scanning a cell of K_l \\ K'_l for the first
certificate pattern and for the first distance-2 gap splits the cells
into three groups: untouched cells A (no gap, no pattern), gap-first
cells paired upward by inserting the certificate's middle vertex, and
pattern-first cells paired downward by deleting the vertex after the
pattern.  For a valid certificate this is a perfect pairing off of
everything but A, and the resulting matching is acyclic, which the
callers re-check rather than assume.

Pawful graphs always carry such a certificate (built here from
smallest-id selectors); ``search_structure`` decides existence in
general by exhaustive backtracking.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from math import inf

from .ai_complex import Simplex, build_pair, simplex_to_sequence
from .errors import BudgetExceeded, CertificateError, ParseError, ValidationError
from .graph import Graph, diameter, is_pawful
from .morse import Matching

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BUDGET = 10_000_000
_SEARCH_BUDGET_ENV = "MAGHOM_SEARCH_BUDGET"


def search_budget() -> int:
    raw = os.environ.get(_SEARCH_BUDGET_ENV)
    return int(raw) if raw else DEFAULT_SEARCH_BUDGET


@dataclass(frozen=True)
class SelectorMaps:
    """Smallest-id choices of middle vertices on a pawful graph.

    ``triple_mid[(x, y, z)]`` is adjacent to all of x, y, z for the
    triples with d(x,y) = d(y,z) = 2 and d(x,z) = 1; ``pair_mid[(x, y)]``
    is a common neighbor for each ordered pair at distance 2.
    """

    triple_mid: dict[tuple[int, int, int], int]
    pair_mid: dict[tuple[int, int], int]


def default_selectors(g: Graph) -> SelectorMaps:
    witness = is_pawful(g)
    if not witness.verdict:
        raise ValidationError(f"graph is not pawful: {witness}")
    pair_mid = {}
    triple_mid = {}
    for x in g.vertices:
        for y in g.vertices:
            if g.dist[x][y] != 2:
                continue
            pair_mid[(x, y)] = g.common_neighbors(x, y)[0]
            for z in g.vertices:
                if g.dist[y][z] == 2 and g.dist[x][z] == 1:
                    triple_mid[(x, y, z)] = g.common_neighbors(x, y, z)[0]
    return SelectorMaps(triple_mid, pair_mid)


@dataclass(frozen=True)
class SStructure:
    """A certificate: quadruple-rule tuples and triple-rule tuples.

    Every quad (alpha, beta, gamma, delta) has d(alpha,beta) = d(beta,gamma)
    = d(gamma,delta) = 1 and d(beta,delta) = 2; every triple
    (beta, gamma, delta) has d(beta,gamma) = d(gamma,delta) = 1 and
    d(beta,delta) = 2.  ``origin`` records how it was produced.
    """

    quads: frozenset[tuple[int, int, int, int]]
    triples: frozenset[tuple[int, int, int]]
    origin: str = "general"


def _validate_structure(g: Graph, s: SStructure) -> None:
    for t in s.triples:
        if g.dist[t[0]][t[2]] != 2 or g.dist[t[0]][t[1]] != 1 or g.dist[t[1]][t[2]] != 1:
            raise ValidationError(f"triple {t} violates its distance conditions")
    for q in s.quads:
        if (
            g.dist[q[0]][q[1]] != 1
            or g.dist[q[1]][q[2]] != 1
            or g.dist[q[2]][q[3]] != 1
            or g.dist[q[1]][q[3]] != 2
        ):
            raise ValidationError(f"quadruple {q} violates its distance conditions")


@lru_cache(maxsize=None)
def _quad_by_key(s: SStructure) -> dict[tuple[int, int, int], int]:
    out: dict[tuple[int, int, int], int] = {}
    for q in sorted(s.quads):
        key = (q[0], q[1], q[3])
        if key in out and out[key] != q[2]:
            raise CertificateError(f"two quadruples share the key {key}")
        out[key] = q[2]
    return out


@lru_cache(maxsize=None)
def _triple_by_key(s: SStructure) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for t in sorted(s.triples):
        key = (t[0], t[2])
        if key in out and out[key] != t[1]:
            raise CertificateError(f"two triples share the key {key}")
        out[key] = t[1]
    return out


def build_pawful_S(g: Graph, sel: SelectorMaps | None = None) -> SStructure:
    """The canonical certificate of a pawful graph.

    Quadruples come in two families over the keys (alpha, beta, delta)
    with d(alpha,beta) = 1 and d(beta,delta) = 2: when d(alpha,delta) = 1
    the middle is alpha itself, when d(alpha,delta) = 2 it is the
    selector vertex adjacent to all of alpha, delta, beta.  Triples pick
    the selected common neighbor of each ordered distance-2 pair.
    """
    if sel is None:
        sel = default_selectors(g)
    quads = set()
    triples = set()
    for beta in g.vertices:
        for delta in g.vertices:
            if g.dist[beta][delta] != 2:
                continue
            triples.add((beta, sel.pair_mid[(beta, delta)], delta))
            for alpha in g.neighbors[beta]:
                if g.dist[alpha][delta] == 1:
                    quads.add((alpha, beta, alpha, delta))
                elif g.dist[alpha][delta] == 2:
                    quads.add((alpha, beta, sel.triple_mid[(alpha, delta, beta)], delta))
    s = SStructure(frozenset(quads), frozenset(triples), origin="pawful")
    _validate_structure(g, s)
    return s


@dataclass(frozen=True)
class SequenceIndices:
    """First certificate-pattern index and first distance-2 gap index.

    ``pattern`` is 0 when the leading triple (x0, x1, x2) is in the
    certificate, otherwise the least window start i with
    (x_{i-1}, ..., x_{i+2}) among the quadruples, otherwise infinity.
    ``gap`` is the least j with d(x_j, x_{j+1}) = 2, otherwise infinity.
    """

    pattern: float
    gap: float


def sequence_indices(
    g: Graph,
    seq: tuple[int, ...],
    s: SStructure,
    *,
    triple_override: bool = True,
) -> SequenceIndices:
    """Scan a full endpoint-to-endpoint sequence for the two indices.

    ``triple_override=True`` gives the leading-triple rule precedence
    over quadruple windows; flipping it checks windows first.
    """
    k = len(seq) - 1
    triple_hit = k >= 2 and seq[0:3] in s.triples
    quad_i = next(
        (i for i in range(1, k - 1) if seq[i - 1 : i + 3] in s.quads), None
    )
    if triple_override and triple_hit:
        pattern = 0
    elif quad_i is not None:
        pattern = quad_i
    elif triple_hit:
        pattern = 0
    else:
        pattern = inf
    gap = next((j for j in range(k) if g.dist[seq[j]][seq[j + 1]] == 2), inf)
    return SequenceIndices(pattern, gap)


@dataclass(frozen=True)
class MatchingBuild:
    """A constructed matching with its cell partition."""

    matching: Matching
    inserted: tuple[Simplex, ...]    # gap-first cells, lower halves of pairs
    deleted: tuple[Simplex, ...]     # pattern-first cells, upper halves
    critical: tuple[Simplex, ...]    # untouched cells


def build_matching(
    g: Graph,
    a: int,
    b: int,
    length: int,
    s: SStructure,
    *,
    triple_override: bool = True,
) -> MatchingBuild:
    """Pair the cells of K_l(a,b) outside K'_l(a,b) using a certificate.

    Gap-first cells get the certificate's middle vertex inserted right
    after the gap start (position +1, the unique choice that keeps
    positions cumulative); pattern-first cells lose the vertex after the
    pattern start.  Both directions are verified to be mutually inverse;
    any failure means the certificate is invalid for this graph.
    """
    if diameter(g) > 2:
        raise ValidationError("certificate matchings need diameter <= 2")
    _validate_structure(g, s)
    quad_mid = _quad_by_key(s)
    triple_mid = _triple_by_key(s)
    pair = build_pair(g, a, b, length)
    cells = pair.quotient_cells()
    live = set(cells)

    untouched: list[Simplex] = []
    gap_first: list[Simplex] = []
    pattern_first: list[Simplex] = []
    index_of: dict[Simplex, SequenceIndices] = {}
    for cell in cells:
        seq = simplex_to_sequence(a, b, cell)
        idx = sequence_indices(g, seq, s, triple_override=triple_override)
        index_of[cell] = idx
        if idx.pattern == inf and idx.gap == inf:
            untouched.append(cell)
        elif idx.pattern == idx.gap:
            raise CertificateError(
                f"cell {cell}: pattern and gap coincide at {idx.pattern}"
            )
        elif idx.pattern > idx.gap:
            gap_first.append(cell)
        else:
            pattern_first.append(cell)

    def insert(cell: Simplex) -> Simplex:
        seq = simplex_to_sequence(a, b, cell)
        j = int(index_of[cell].gap)
        if j == 0:
            mid = triple_mid.get((seq[0], seq[1]))
        else:
            mid = quad_mid.get((seq[j - 1], seq[j], seq[j + 1]))
        if mid is None:
            raise CertificateError(
                f"no certificate entry for the gap at {j} in {seq}"
            )
        pos = 0 if j == 0 else cell[j - 1][1]
        out = cell[:j] + ((mid, pos + 1),) + cell[j:]
        if out not in live:
            raise CertificateError(
                f"inserting {mid} into {seq} left the length-{length} cell set"
            )
        return out

    def delete(cell: Simplex) -> Simplex:
        i = int(index_of[cell].pattern)
        return cell[:i] + cell[i + 1 :]

    gap_set = set(gap_first)
    pattern_set = set(pattern_first)
    pairs = []
    for cell in gap_first:
        mate = insert(cell)
        if mate not in pattern_set:
            raise CertificateError(f"image of {cell} is not a pattern-first cell")
        if delete(mate) != cell:
            raise CertificateError(f"deletion does not invert insertion at {cell}")
        pairs.append((cell, mate))
    for cell in pattern_first:
        mate = delete(cell)
        if mate not in gap_set:
            raise CertificateError(f"preimage of {cell} is not a gap-first cell")
        if insert(mate) != cell:
            raise CertificateError(f"insertion does not invert deletion at {cell}")

    return MatchingBuild(
        matching=Matching(frozenset(pairs)),
        inserted=tuple(gap_first),
        deleted=tuple(pattern_first),
        critical=tuple(untouched),
    )


# ---------------------------------------------------------------------------
# the general certificate conditions


def _ordered_y_keys(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for alpha in g.vertices:
        for beta in g.neighbors[alpha]:
            for delta in g.vertices:
                if g.dist[beta][delta] == 2:
                    out.append((alpha, beta, delta))
    return sorted(out)


def _ordered_x_keys(g: Graph) -> list[tuple[int, int]]:
    return sorted(
        (a, c)
        for a in g.vertices
        for c in g.vertices
        if g.dist[a][c] == 2
    )


def check_star_property(g: Graph) -> tuple[bool, tuple[int, int, int] | None]:
    """Does every (alpha, beta, delta) key admit a near middle vertex?

    Near means d(alpha, gamma) <= 1 on top of d(beta,gamma) =
    d(gamma,delta) = 1.  Pawful graphs always pass; the first failing key
    (lexicographically) is returned otherwise.
    """
    if diameter(g) > 2:
        raise ValidationError("the star property is defined for diameter <= 2")
    for alpha, beta, delta in _ordered_y_keys(g):
        if not any(
            g.dist[alpha][gamma] <= 1
            for gamma in g.common_neighbors(beta, delta)
        ):
            return False, (alpha, beta, delta)
    return True, None


def verify_s_structure(
    g: Graph, f1, f2
) -> tuple[bool, str | None]:
    """Check the three certificate conditions for given images f1, f2.

    ``f1`` is a collection of triples (one per ordered distance-2 pair),
    ``f2`` a collection of quadruples (one per (alpha, beta, delta) key).
    Condition (i): both are sections of the key projections.  Condition
    (ii): no quadruple's first three coordinates appear as the last three
    of any quadruple, nor among the triples.  Condition (iii): a
    quadruple whose middle is far from alpha must use the unique common
    neighbor of beta and delta.
    """
    if diameter(g) > 2:
        raise ValidationError("certificates are defined for diameter <= 2")
    triples = sorted(tuple(t) for t in f1)
    quads = sorted(tuple(q) for q in f2)

    # (i) sections of the projections, defined on every key exactly once
    seen_x: dict[tuple[int, int], tuple] = {}
    for t in triples:
        if len(t) != 3:
            return False, f"(i): {t} is not a triple"
        a_, b_, c_ = t
        if g.dist[a_][b_] != 1 or g.dist[b_][c_] != 1 or g.dist[a_][c_] != 2:
            return False, f"(i): {t} has the wrong distance pattern"
        if (a_, c_) in seen_x:
            return False, f"(i): two triples over the pair {(a_, c_)}"
        seen_x[(a_, c_)] = t
    missing = [k for k in _ordered_x_keys(g) if k not in seen_x]
    if missing:
        return False, f"(i): no triple over the pair {missing[0]}"

    seen_y: dict[tuple[int, int, int], tuple] = {}
    for q in quads:
        if len(q) != 4:
            return False, f"(i): {q} is not a quadruple"
        al, be, ga, de = q
        if (
            g.dist[al][be] != 1
            or g.dist[be][ga] != 1
            or g.dist[ga][de] != 1
            or g.dist[be][de] != 2
        ):
            return False, f"(i): {q} has the wrong distance pattern"
        if (al, be, de) in seen_y:
            return False, f"(i): two quadruples over the key {(al, be, de)}"
        seen_y[(al, be, de)] = q
    missing_y = [k for k in _ordered_y_keys(g) if k not in seen_y]
    if missing_y:
        return False, f"(i): no quadruple over the key {missing_y[0]}"

    # (ii) first-three prefixes never reappear as suffixes or triples
    first3 = {q[:3] for q in quads}
    for q in quads:
        if q[1:] in first3:
            return False, f"(ii): suffix of {q} matches a quadruple prefix"
    triple_set = set(triples)
    for q in quads:
        if q[:3] in triple_set:
            return False, f"(ii): prefix of {q} is also a triple"
        if q[1:] in triple_set:
            # not forbidden by (ii); surfaced because it shadows the
            # leading-triple rule when scanning cells
            logger.info("quadruple %s has its suffix among the triples", q)

    # (iii) a far middle vertex must be the only middle vertex
    for q in quads:
        al, be, ga, de = q
        if g.dist[al][ga] == 2:
            others = [x for x in g.common_neighbors(be, de) if x != ga]
            if others:
                return False, (
                    f"(iii): {q} has d(alpha,gamma)=2 but {others[0]} is "
                    f"another middle vertex"
                )
    return True, None


def search_structure(g: Graph, budget: int | None = None) -> SStructure | None:
    """Exhaustive backtracking search for a certificate.

    Returns a certificate, or None once the whole choice tree is ruled
    out.  Choice points are processed fewest-candidates-first; a node
    budget (default from MAGHOM_SEARCH_BUDGET) guards runaway searches,
    raising BudgetExceeded, which is distinct from exhaustion.
    """
    if diameter(g) > 2:
        raise ValidationError("certificates are defined for diameter <= 2")
    if budget is None:
        budget = search_budget()

    variables: list[tuple[str, tuple, list]] = []
    for key in _ordered_x_keys(g):
        a_, c_ = key
        variables.append(("T", key, g.common_neighbors(a_, c_)))
    for key in _ordered_y_keys(g):
        al, be, de = key
        mids = g.common_neighbors(be, de)
        allowed = [ga for ga in mids if g.dist[al][ga] <= 1 or len(mids) == 1]
        variables.append(("Q", key, allowed))
    variables.sort(key=lambda v: (len(v[2]), v[0], v[1]))
    if any(not v[2] for v in variables):
        return None

    chosen_triples: set[tuple[int, int, int]] = set()
    chosen_quads: set[tuple[int, int, int, int]] = set()
    # distinct keys can contribute the same prefix or suffix tuple, so
    # occupancy is counted rather than kept as a plain set
    first3: dict[tuple[int, int, int], int] = {}
    last3: dict[tuple[int, int, int], int] = {}
    nodes = 0

    def bump(counter, key, delta):
        new = counter.get(key, 0) + delta
        if new:
            counter[key] = new
        else:
            del counter[key]

    def assign(idx: int) -> bool:
        nonlocal nodes
        if idx == len(variables):
            return True
        kind, key, candidates = variables[idx]
        for mid in candidates:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"certificate search exceeded {budget} nodes")
            if kind == "T":
                t = (key[0], mid, key[1])
                if t in first3:
                    continue
                chosen_triples.add(t)
                if assign(idx + 1):
                    return True
                chosen_triples.discard(t)
            else:
                al, be, de = key
                q = (al, be, mid, de)
                pre, suf = q[:3], q[1:]
                if suf in first3 or pre in last3 or pre in chosen_triples:
                    continue
                chosen_quads.add(q)
                bump(first3, pre, 1)
                bump(last3, suf, 1)
                if assign(idx + 1):
                    return True
                chosen_quads.discard(q)
                bump(first3, pre, -1)
                bump(last3, suf, -1)
        return False

    if assign(0):
        return SStructure(frozenset(chosen_quads), frozenset(chosen_triples))
    return None


# ---------------------------------------------------------------------------
# certificate files: lines "T beta gamma delta" and "Q alpha beta gamma delta"


def serialize_s(s: SStructure) -> str:
    lines = [f"T {b} {c} {d}" for b, c, d in sorted(s.triples)]
    lines += [f"Q {a} {b} {c} {d}" for a, b, c, d in sorted(s.quads)]
    return "\n".join(lines) + "\n"


def parse_s(text: str, g: Graph) -> SStructure:
    triples = set()
    quads = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            tag, nums = parts[0].upper(), [int(x) for x in parts[1:]]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer entry in {raw!r}") from None
        if tag == "T" and len(nums) == 3:
            triples.add(tuple(nums))
        elif tag == "Q" and len(nums) == 4:
            quads.add(tuple(nums))
        else:
            raise ParseError(
                f"line {lineno}: expected 'T b c d' or 'Q a b c d', got {raw!r}"
            )
    s = SStructure(frozenset(quads), frozenset(triples))
    _validate_structure(g, s)
    return s
