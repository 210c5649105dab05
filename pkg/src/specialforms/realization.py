"""Realising an admissible distance matrix by index subsets.

A realisation assigns to each vertex v an index subset s_v of size p so that
pairwise distances p - #(s_v & s_w) reproduce the matrix.  Realisations are
governed by a weight function f on proper nonempty vertex subsets S: f(S)
counts the indices shared by exactly the vertices of S, and the matrix is
reproduced iff for every pair v != w the weights of subsets containing both
sum to p - d(v, w), while the weights of subsets containing a fixed vertex
sum to p.  `solve` finds all such f exhaustively; `realize` turns one f into
concrete subsets; `forms_of` enumerates the genuinely different sign choices
on a realisation.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import CapacityError, DomainError, PreconditionError
from .forms import OrientedSubset, SpecialForm
from .graphs import DistanceMatrix, is_admissible

# Exhaustive weight-function search is refused above this vertex count.
DEFAULT_SOLVER_VERTEX_CAP = 8
# forms_of refuses to expand more than 2**DEFAULT_SIGN_CLASS_BIT_CAP classes.
DEFAULT_SIGN_CLASS_BIT_CAP = 12


@dataclass(frozen=True)
class GraphFunction:
    """Weight function on proper nonempty subsets of the vertex set.

    Only nonzero values are stored, as (subset, value) pairs with subsets
    given by ascending 1-based vertex tuples, sorted lexicographically.
    """

    r: int
    p: int
    values: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self) -> None:
        if self.r < 1:
            raise DomainError(f"vertex count must be >= 1, got {self.r}")
        if self.p < 1:
            raise DomainError(f"degree must be >= 1, got {self.p}")
        norm = []
        for subset, val in self.values:
            subset = tuple(int(v) for v in subset)
            val = int(val)
            if val < 0:
                raise DomainError(f"negative weight {val} on {subset}")
            if not subset or len(subset) >= self.r:
                raise DomainError(f"subset {subset} is not proper and nonempty")
            if any(a >= b for a, b in zip(subset, subset[1:])):
                raise DomainError(f"subset {subset} is not strictly increasing")
            if subset[0] < 1 or subset[-1] > self.r:
                raise DomainError(f"subset {subset} outside the vertex range")
            if val > 0:
                norm.append((subset, val))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a[0] == b[0]:
                raise DomainError(f"duplicate subset {a[0]}")
        object.__setattr__(self, "values", tuple(norm))

    @property
    def dimension(self) -> int:
        """Total weight; the ambient dimension of the realisation."""
        return sum(v for _, v in self.values)

    def value(self, subset: Iterable[int]) -> int:
        key = tuple(sorted(int(v) for v in subset))
        for s, v in self.values:
            if s == key:
                return v
        return 0

    def vertex_sums(self) -> tuple[int, ...]:
        sums = [0] * self.r
        for subset, val in self.values:
            for v in subset:
                sums[v - 1] += val
        return tuple(sums)

    def check(self) -> None:
        """Raise unless every vertex is covered with total weight p."""
        sums = self.vertex_sums()
        bad = [v + 1 for v, s in enumerate(sums) if s != self.p]
        if bad:
            raise PreconditionError(
                f"vertex sums differ from p={self.p} at vertices {bad}"
            )

    def induced_matrix(self) -> DistanceMatrix:
        """Distances p - sum of weights over subsets containing both vertices."""
        self.check()
        rows = [[0] * self.r for _ in range(self.r)]
        for i in range(self.r):
            for j in range(i + 1, self.r):
                shared = sum(
                    val for s, val in self.values if i + 1 in s and j + 1 in s
                )
                rows[i][j] = rows[j][i] = self.p - shared
        return DistanceMatrix.from_rows(rows)

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "p": self.p,
            "values": [{"subset": list(s), "f": v} for s, v in self.values],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GraphFunction":
        try:
            values = tuple(
                (tuple(entry["subset"]), int(entry["f"])) for entry in data["values"]
            )
            return cls(int(data["r"]), int(data["p"]), values)
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed graph function object: {exc}") from exc


def solve(
    m: DistanceMatrix,
    p: int,
    d_filter: Optional[int] = None,
    *,
    vertex_cap: int = DEFAULT_SOLVER_VERTEX_CAP,
) -> list[GraphFunction]:
    """All weight functions realising the matrix in degree p.

    Exhaustive search over the proper nonempty subsets.  Subsets are
    processed by decreasing size; once every subset of size >= 3 is fixed,
    each pair subset is the last one covering its pair, so its weight is
    forced by the remaining pair budget, and singleton weights are forced
    by the remaining vertex budgets.  Branching therefore happens on sizes
    3..r-1 only, with weights bounded by the smallest open budget.
    """
    if p < 1:
        raise DomainError(f"degree must be >= 1, got {p}")
    if m.r > vertex_cap:
        raise CapacityError(
            f"solving on {m.r} vertices exceeds the cap {vertex_cap}"
        )
    if not is_admissible(m):
        raise PreconditionError("matrix is not admissible")
    worst = max(
        (m.entries[i][j] for i in range(m.r) for j in range(i + 1, m.r)),
        default=0,
    )
    if worst > p:
        raise PreconditionError(f"matrix distance {worst} exceeds the degree {p}")
    if d_filter is not None and d_filter < 0:
        raise DomainError("dimension filter must be non-negative")

    r = m.r
    if r == 1:
        return []  # no proper nonempty subsets exist to cover the vertex
    verts = range(r)
    pairs = [(i, j) for i in verts for j in range(i + 1, r)]
    pair_idx = {pq: k for k, pq in enumerate(pairs)}
    pair_budget = [p - m.entries[i][j] for i, j in pairs]
    vert_budget = [p] * r

    branch = []
    for size in range(r - 1, 2, -1):
        for combo in itertools.combinations(verts, size):
            internal = [pair_idx[ab] for ab in itertools.combinations(combo, 2)]
            branch.append((combo, internal))

    chosen: list[tuple[tuple[int, ...], int]] = []
    solutions: list[GraphFunction] = []

    def settle() -> None:
        vb = list(vert_budget)
        forced: list[tuple[tuple[int, ...], int]] = []
        for k, (i, j) in enumerate(pairs):
            c = pair_budget[k]
            if c:
                if r == 2:
                    return  # the pair is the whole vertex set, weight must be 0
                if vb[i] < c or vb[j] < c:
                    return
                vb[i] -= c
                vb[j] -= c
                forced.append(((i, j), c))
        for v in verts:
            if vb[v]:
                forced.append(((v,), vb[v]))
        entries = chosen + forced
        if d_filter is not None and sum(c for _, c in entries) != d_filter:
            return
        values = tuple(
            (tuple(v + 1 for v in subset), c) for subset, c in entries
        )
        solutions.append(GraphFunction(r, p, values))

    def descend(k: int) -> None:
        if k == len(branch):
            settle()
            return
        members, internal = branch[k]
        ub = min(vert_budget[v] for v in members)
        for q in internal:
            if pair_budget[q] < ub:
                ub = pair_budget[q]
        for c in range(ub + 1):
            if c:
                for v in members:
                    vert_budget[v] -= c
                for q in internal:
                    pair_budget[q] -= c
                chosen.append((members, c))
            descend(k + 1)
            if c:
                for v in members:
                    vert_budget[v] += c
                for q in internal:
                    pair_budget[q] += c
                chosen.pop()

    descend(0)
    solutions.sort(key=lambda f: f.values)
    return solutions


@dataclass(frozen=True)
class Realization:
    """Concrete index subsets for the vertices, plus the block structure.

    `blocks` records which consecutive index block realises each weighted
    subset: pairs (vertex subset, index tuple); the blocks partition 1..d.
    `subsets[v-1]` is s_v, the union of the blocks whose subset contains v.
    """

    r: int
    p: int
    d: int
    subsets: tuple[OrientedSubset, ...]
    blocks: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "p": self.p,
            "d": self.d,
            "subsets": [list(s.indices) for s in self.subsets],
            "blocks": [
                {"subset": list(s), "indices": list(idx)} for s, idx in self.blocks
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Realization":
        try:
            return cls(
                int(data["r"]),
                int(data["p"]),
                int(data["d"]),
                tuple(OrientedSubset(tuple(s)) for s in data["subsets"]),
                tuple(
                    (tuple(b["subset"]), tuple(b["indices"]))
                    for b in data["blocks"]
                ),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed realization object: {exc}") from exc


def realize(f: GraphFunction) -> Realization:
    """Assign index blocks to the weighted subsets in subset order.

    Deterministic: the support subsets are walked lexicographically and
    receive consecutive indices starting at 1, so equal inputs produce
    identical realisations.
    """
    f.check()
    next_index = 1
    blocks = []
    covered: dict[int, list[int]] = {v: [] for v in range(1, f.r + 1)}
    for subset, val in f.values:
        idx = tuple(range(next_index, next_index + val))
        next_index += val
        blocks.append((subset, idx))
        for v in subset:
            covered[v].extend(idx)
    d = next_index - 1
    subsets = tuple(OrientedSubset(tuple(sorted(covered[v]))) for v in covered)
    return Realization(
        r=f.r, p=f.p, d=d, subsets=subsets, blocks=tuple(blocks)
    )


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    failures: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def verify(real: Realization, m: DistanceMatrix) -> VerificationReport:
    """Check a realisation against a matrix, reporting each violation."""
    failures = []
    if real.r != m.r:
        failures.append(f"vertex count {real.r} != matrix size {m.r}")
        return VerificationReport(False, tuple(failures))
    for s in real.subsets:
        if s.degree != real.p:
            failures.append(f"subset {s} does not have size {real.p}")
    for i in range(real.r):
        for j in range(i + 1, real.r):
            got = real.subsets[i].distance_to(real.subsets[j])
            want = m.entries[i][j]
            if got != want:
                failures.append(
                    f"distance(v{i + 1}, v{j + 1}) = {got}, expected {want}"
                )
    union = set()
    total = 0
    for s in real.subsets:
        union |= set(s.indices)
        total += s.degree
    if union != set(range(1, real.d + 1)):
        failures.append(f"subsets cover {sorted(union)}, not 1..{real.d}")
    counts = Counter()
    for subset, idx in real.blocks:
        for i in idx:
            counts[i] += 1
    if any(c > 1 for c in counts.values()):
        dup = sorted(i for i, c in counts.items() if c > 1)
        failures.append(f"blocks overlap at indices {dup}")
    return VerificationReport(not failures, tuple(failures))


def _index_signature(real: Realization) -> Counter:
    """Multiset of index fibers: for each index, the set of vertices using it."""
    sig: Counter = Counter()
    for i in range(1, real.d + 1):
        owners = frozenset(
            v for v in range(1, real.r + 1) if i in real.subsets[v - 1].indices
        )
        sig[owners] += 1
    return sig


def equivalent(a: Realization, b: Realization) -> bool:
    """Whether some index permutation carries one realisation to the other.

    Such a permutation exists iff the two realisations use, for every vertex
    subset S, the same number of indices shared by exactly S.
    """
    if (a.r, a.p, a.d) != (b.r, b.p, b.d):
        return False
    return _index_signature(a) == _index_signature(b)


def forms_of(
    real: Realization, *, class_bit_cap: int = DEFAULT_SIGN_CLASS_BIT_CAP
) -> list[SpecialForm]:
    """One form per genuinely different sign choice on the realisation.

    Signs eps in {-1,+1}^r differ inessentially when related by flipping
    coordinate axes: axis i negates every vertex whose subset contains i.
    Over GF(2) the reachable flip patterns form the column space of the
    index incidence matrix, so the distinct classes are its cosets.  One
    representative per coset is returned, in sign-lexicographic order with
    respect to the term order; the first term always carries +1.
    """
    order = sorted(range(real.r), key=lambda v: real.subsets[v].indices)
    w = real.r
    vectors = set()
    for i in range(1, real.d + 1):
        bits = 0
        for pos, v in enumerate(order):
            if i in real.subsets[v].indices:
                bits |= 1 << (w - 1 - pos)
        vectors.add(bits)
    basis: dict[int, int] = {}
    for vec in vectors:
        v = vec
        while v:
            piv = v.bit_length() - 1
            if piv in basis:
                v ^= basis[piv]
            else:
                basis[piv] = v
                break
    free_bits = [b for b in range(w - 1, -1, -1) if b not in basis]
    if len(free_bits) > class_bit_cap:
        raise CapacityError(
            f"{2 ** len(free_bits)} sign classes exceed the cap 2**{class_bit_cap}"
        )
    forms = []
    for assign in range(2 ** len(free_bits)):
        eps = 0
        for k, bit in enumerate(free_bits):
            if (assign >> (len(free_bits) - 1 - k)) & 1:
                eps |= 1 << bit
        terms = tuple(
            (
                real.subsets[v],
                -1 if (eps >> (w - 1 - pos)) & 1 else 1,
            )
            for pos, v in enumerate(order)
        )
        forms.append(SpecialForm(real.d, real.p, terms))
    return forms


def lift_symmetry(f: GraphFunction, sigma: Sequence[int]) -> tuple[int, ...]:
    """Index permutation realising a vertex symmetry of the weight function.

    `sigma` gives 1-based images of the vertices and must preserve f, i.e.
    f(sigma(S)) == f(S) for every subset.  The returned tuple maps each
    index block of realize(f) order-preservingly onto the block of the
    image subset, so relabeling indices by it permutes the realisation's
    subsets exactly as sigma permutes vertices.
    """
    sigma = tuple(int(v) for v in sigma)
    if sorted(sigma) != list(range(1, f.r + 1)):
        raise DomainError(f"not a vertex permutation of 1..{f.r}: {sigma}")
    value_map = dict(f.values)
    for subset, val in f.values:
        image = tuple(sorted(sigma[v - 1] for v in subset))
        if value_map.get(image, 0) != val:
            raise PreconditionError(
                f"weight function is not invariant: f{image} != f{subset}"
            )
    real = realize(f)
    block_of = {subset: idx for subset, idx in real.blocks}
    perm = [0] * real.d
    for subset, idx in real.blocks:
        image = tuple(sorted(sigma[v - 1] for v in subset))
        target = block_of[image]
        for a, b in zip(idx, target):
            perm[a - 1] = b
    return tuple(perm)
