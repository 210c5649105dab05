"""Distance-labeled complete graphs attached to sign-valued forms.

The graph of a form has one vertex per term and edge labels given by the
subset distance (degree minus overlap).  This module provides admissibility
checks, the automorphism group of a distance matrix, the vertex-transitivity
predicates, and the decomposition of a matrix into closed curves when every
distance occurs exactly twice per row.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .errors import CapacityError, DomainError, PreconditionError
from .forms import SpecialForm

# Automorphism searches are refused above this vertex count by default.
DEFAULT_AUTOMORPHISM_VERTEX_CAP = 12


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric integer matrix with zero diagonal and positive off-diagonal."""

    r: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        ent = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", ent)
        if self.r < 1:
            raise DomainError(f"vertex count must be >= 1, got {self.r}")
        if len(ent) != self.r or any(len(row) != self.r for row in ent):
            raise DomainError(f"entries are not a {self.r} x {self.r} matrix")
        for i in range(self.r):
            if ent[i][i] != 0:
                raise DomainError(f"diagonal entry ({i + 1},{i + 1}) must be 0")
            for j in range(i + 1, self.r):
                if ent[i][j] != ent[j][i]:
                    raise DomainError(f"entries ({i + 1},{j + 1}) break symmetry")
                if ent[i][j] < 1:
                    raise DomainError(
                        f"off-diagonal entry ({i + 1},{j + 1}) must be >= 1"
                    )

    @classmethod
    def from_rows(cls, rows) -> "DistanceMatrix":
        rows = [list(r) for r in rows]
        return cls(len(rows), tuple(tuple(r) for r in rows))

    def distances(self) -> tuple[int, ...]:
        """Distinct off-diagonal values, ascending."""
        vals = {self.entries[i][j] for i in range(self.r) for j in range(i + 1, self.r)}
        return tuple(sorted(vals))

    def to_dict(self) -> dict:
        return {"r": self.r, "entries": [list(row) for row in self.entries]}

    @classmethod
    def from_dict(cls, data: dict) -> "DistanceMatrix":
        try:
            return cls(int(data["r"]), tuple(tuple(row) for row in data["entries"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed matrix object: {exc}") from exc


def graph_of_form(form: SpecialForm) -> DistanceMatrix:
    """Pairwise subset distances of the terms, in term order."""
    if form.weight == 0:
        raise DomainError("the graph of a form needs at least one term")
    subsets = form.support
    r = len(subsets)
    rows = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            dist = subsets[i].distance_to(subsets[j])
            rows[i][j] = rows[j][i] = dist
    return DistanceMatrix.from_rows(rows)


def is_admissible(m: DistanceMatrix) -> bool:
    """Positive off-diagonal entries satisfying all triangle inequalities."""
    e = m.entries
    for i in range(m.r):
        for j in range(i + 1, m.r):
            if e[i][j] < 1:
                return False
            for k in range(j + 1, m.r):
                a, b, c = e[i][j], e[i][k], e[j][k]
                if a > b + c or b > a + c or c > a + b:
                    return False
    return True


def _row_profiles(e: tuple[tuple[int, ...], ...]) -> list[tuple[int, ...]]:
    return [tuple(sorted(row)) for row in e]


def _find_automorphism(
    e: tuple[tuple[int, ...], ...],
    prefix_len: int,
    target: int,
    profiles: list[tuple[int, ...]],
) -> Optional[tuple[int, ...]]:
    """First matrix automorphism fixing vertices < prefix_len and sending
    prefix_len to target, or None.  Vertices are 0-based here."""
    r = len(e)
    if profiles[prefix_len] != profiles[target]:
        return None
    for v in range(prefix_len):
        if e[prefix_len][v] != e[target][v]:
            return None
    image = list(range(prefix_len)) + [target]
    used = [False] * r
    for x in image:
        used[x] = True

    def extend(v: int) -> bool:
        if v == r:
            return True
        for x in range(r):
            if used[x] or profiles[v] != profiles[x]:
                continue
            ok = True
            for u in range(v):
                if e[v][u] != e[x][image[u]]:
                    ok = False
                    break
            if ok:
                image.append(x)
                used[x] = True
                if extend(v + 1):
                    return True
                image.pop()
                used[x] = False
        return False

    if extend(prefix_len + 1):
        return tuple(image)
    return None


@dataclass(frozen=True)
class SymmetryGroupReport:
    """Automorphism group of a distance matrix.

    `generators` are vertex permutations given as tuples of 1-based images;
    together with the identity they generate the full group of `order`
    elements.  `transitive` records whether the group moves vertex 1 to
    every other vertex.
    """

    order: int
    transitive: bool
    generators: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "transitive": self.transitive,
            "generators": [list(g) for g in self.generators],
        }


def symmetries(
    m: DistanceMatrix, *, vertex_cap: int = DEFAULT_AUTOMORPHISM_VERTEX_CAP
) -> SymmetryGroupReport:
    """Order, transitivity, and generators of the automorphism group.

    Works down a stabilizer chain: the group order is the product over i of
    the orbit size of vertex i under the stabilizer of 1..i-1, and each
    orbit member contributes one witness automorphism.  The witnesses form
    a generating set.
    """
    if m.r > vertex_cap:
        raise CapacityError(
            f"automorphism search on {m.r} vertices exceeds the cap {vertex_cap}"
        )
    e = m.entries
    profiles = _row_profiles(e)
    order = 1
    first_orbit = 1
    gens: set[tuple[int, ...]] = set()
    for level in range(m.r):
        orbit = 1
        for x in range(level + 1, m.r):
            g = _find_automorphism(e, level, x, profiles)
            if g is not None:
                orbit += 1
                gens.add(tuple(v + 1 for v in g))
        order *= orbit
        if level == 0:
            first_orbit = orbit
    return SymmetryGroupReport(
        order=order,
        transitive=(first_orbit == m.r),
        generators=tuple(sorted(gens)),
    )


def is_democratic(
    m: DistanceMatrix, *, vertex_cap: int = DEFAULT_AUTOMORPHISM_VERTEX_CAP
) -> bool:
    """Whether the automorphism group is vertex-transitive."""
    if m.r > vertex_cap:
        raise CapacityError(
            f"automorphism search on {m.r} vertices exceeds the cap {vertex_cap}"
        )
    e = m.entries
    profiles = _row_profiles(e)
    for x in range(1, m.r):
        if _find_automorphism(e, 0, x, profiles) is None:
            return False
    return True


def is_predemocratic(m: DistanceMatrix) -> tuple[bool, Optional[dict[int, int]]]:
    """Whether every row realises the same distance counts.

    Returns (flag, counts); counts maps each distance a to the number n_a
    of times it occurs in a row, and is None when the flag is False.
    """
    counts = []
    for i in range(m.r):
        row = Counter(m.entries[i][j] for j in range(m.r) if j != i)
        counts.append(row)
    if any(c != counts[0] for c in counts[1:]):
        return False, None
    common = dict(sorted(counts[0].items()))
    assert sum(common.values()) == m.r - 1
    return True, common


@dataclass(frozen=True)
class CurveFamily:
    """The closed curves traced by one distance value.

    `cycles` lists each curve as a tuple of 1-based vertices in traversal
    order; `uniform` holds when all curves have the same length and that
    length divides the vertex count.
    """

    distance: int
    cycles: tuple[tuple[int, ...], ...]
    pathlengths: tuple[int, ...]
    uniform: bool


@dataclass(frozen=True)
class CurveDecomposition:
    families: tuple[CurveFamily, ...]

    @property
    def all_uniform(self) -> bool:
        return all(f.uniform for f in self.families)


def curve_decomposition(m: DistanceMatrix) -> CurveDecomposition:
    """Split the graph into closed curves, one family per distance.

    Requires a predemocratic matrix with n_a = 2 for every distance a, so
    that each distance induces a 2-regular graph, i.e. disjoint cycles.
    """
    flag, counts = is_predemocratic(m)
    if not flag or any(n != 2 for n in counts.values()):
        raise PreconditionError(
            "curve decomposition needs every distance exactly twice per row"
        )
    families = []
    for dist in sorted(counts):
        nbrs = [
            [j for j in range(m.r) if j != i and m.entries[i][j] == dist]
            for i in range(m.r)
        ]
        seen = [False] * m.r
        cycles = []
        for start in range(m.r):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            prev, cur = start, min(nbrs[start])
            while cur != start:
                cyc.append(cur)
                seen[cur] = True
                a, b = nbrs[cur]
                prev, cur = cur, (b if a == prev else a)
            cycles.append(tuple(v + 1 for v in cyc))
        lengths = tuple(len(c) for c in cycles)
        uniform = len(set(lengths)) == 1 and m.r % lengths[0] == 0
        families.append(
            CurveFamily(
                distance=dist,
                cycles=tuple(cycles),
                pathlengths=lengths,
                uniform=uniform,
            )
        )
    return CurveDecomposition(families=tuple(families))


def find_relabeling(
    src: DistanceMatrix, dst: DistanceMatrix
) -> Optional[tuple[int, ...]]:
    """Vertex permutation pi (1-based images) with dst[pi(v), pi(w)] == src[v, w],
    or None when the matrices are not relabeling-equivalent."""
    if src.r != dst.r:
        return None
    a, b = src.entries, dst.entries
    if sorted(_row_profiles(a)) != sorted(_row_profiles(b)):
        return None
    profiles_a = _row_profiles(a)
    profiles_b = _row_profiles(b)
    r = src.r
    image: list[int] = []
    used = [False] * r

    def extend(v: int) -> bool:
        if v == r:
            return True
        for x in range(r):
            if used[x] or profiles_a[v] != profiles_b[x]:
                continue
            ok = True
            for u in range(v):
                if a[v][u] != b[x][image[u]]:
                    ok = False
                    break
            if ok:
                image.append(x)
                used[x] = True
                if extend(v + 1):
                    return True
                image.pop()
                used[x] = False
        return False

    if extend(0):
        return tuple(x + 1 for x in image)
    return None


def to_dot(m: DistanceMatrix, p: Optional[int] = None) -> str:
    """GraphViz rendering; edges at distance p are omitted when p is given."""
    lines = ["graph distances {"]
    for v in range(1, m.r + 1):
        lines.append(f"  v{v};")
    for i in range(m.r):
        for j in range(i + 1, m.r):
            dist = m.entries[i][j]
            if p is not None and dist >= p:
                continue
            lines.append(f'  v{i + 1} -- v{j + 1} [label="d={dist}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
