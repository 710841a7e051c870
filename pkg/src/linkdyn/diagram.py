"""Generalized Cartan matrices and linkable Dynkin diagrams.

A diagram is a generalized Cartan matrix together with a set of dotted
edges between vertices.  Dotted edges are pairwise disjoint, each one
carries a flag (0 or 1), and outside self-linking mode the two ends of a
dotted edge must lie in different plain components.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Sequence

from .errors import (
    DiagonalNotTwo,
    PositiveOffDiagonal,
    ZeroAsymmetry,
)

Pair = tuple[int, int]

MODES = ("finite", "affine", "selflink")


@dataclass(frozen=True)
class CartanMatrix:
    """Immutable integer matrix satisfying the generalized Cartan axioms."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def a(self, i: int, j: int) -> int:
        """Entry in row i, column j (0-based)."""
        return self.entries[i][j]

    def submatrix(self, vertices: Sequence[int]) -> "CartanMatrix":
        rows = tuple(
            tuple(self.entries[i][j] for j in vertices) for i in vertices
        )
        return CartanMatrix(rows)

    def plain_edges(self) -> Iterator[Pair]:
        """Unordered vertex pairs joined by a nonzero off-diagonal entry."""
        for i in range(self.size):
            for j in range(i + 1, self.size):
                if self.entries[i][j] != 0:
                    yield (i, j)


def validate_cartan(rows: Sequence[Sequence[int]]) -> CartanMatrix:
    """Check the generalized Cartan axioms and freeze the matrix.

    Raises DiagonalNotTwo, PositiveOffDiagonal or ZeroAsymmetry naming
    the offending entry with 1-based indices.
    """
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"row {i + 1} has length {len(row)}, expected {n}")
    for i in range(n):
        if rows[i][i] != 2:
            raise DiagonalNotTwo(f"entry ({i + 1},{i + 1}) is {rows[i][i]}, must be 2")
        for j in range(n):
            if i == j:
                continue
            if rows[i][j] > 0:
                raise PositiveOffDiagonal(
                    f"entry ({i + 1},{j + 1}) is {rows[i][j]}, must be <= 0"
                )
    for i in range(n):
        for j in range(i + 1, n):
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise ZeroAsymmetry(
                    f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) must vanish together"
                )
    return CartanMatrix(tuple(tuple(int(x) for x in row) for row in rows))


class EdgeKind(NamedTuple):
    """Classification of one plain edge.

    kind is one of 'none', 'single', 'double', 'triple', 'quadruple',
    'a1affine', 'other'.  head is 0 or 1 for the asymmetric kinds: the
    local index (first or second vertex) whose matrix row holds the
    entry of larger magnitude, i.e. the arrow head.
    """

    kind: str
    head: Optional[int] = None


def edge_kind(aij: int, aji: int) -> EdgeKind:
    """Classify the edge with entries a_ij, a_ji between two vertices."""
    if (aij == 0) != (aji == 0):
        raise ZeroAsymmetry(f"entries {aij} and {aji} must vanish together")
    if aij == 0:
        return EdgeKind("none")
    pair = (aij, aji)
    if pair == (-1, -1):
        return EdgeKind("single")
    if pair == (-2, -2):
        return EdgeKind("a1affine")
    for magnitude, kind in ((-2, "double"), (-3, "triple"), (-4, "quadruple")):
        if pair == (magnitude, -1):
            return EdgeKind(kind, 0)
        if pair == (-1, magnitude):
            return EdgeKind(kind, 1)
    return EdgeKind("other")


@dataclass(frozen=True)
class LinkableDynkinDiagram:
    """A generalized Cartan matrix with dotted (linkable) edges.

    linkable holds the dotted edges as sorted vertex pairs; linked is the
    subset whose flag is 1.  mode is 'finite', 'affine' or 'selflink';
    the first two forbid dotted edges inside one plain component.
    """

    cartan: CartanMatrix
    linkable: tuple[Pair, ...]
    linked: frozenset[Pair]
    mode: str = "finite"

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        n = self.cartan.size
        seen: set[int] = set()
        for i, j in self.linkable:
            if not (0 <= i < j < n):
                raise ValueError(f"bad dotted edge ({i + 1},{j + 1})")
            if i in seen or j in seen:
                raise ValueError(
                    f"dotted edges must be disjoint, vertex {max(i, j) + 1} reused"
                )
            seen.add(i)
            seen.add(j)
        if not self.linked <= set(self.linkable):
            raise ValueError("linked pairs must be declared linkable")
        if self.mode != "selflink":
            comp = self.component_index()
            for i, j in self.linkable:
                if comp[i] == comp[j]:
                    raise ValueError(
                        f"dotted edge ({i + 1},{j + 1}) inside one plain component "
                        f"requires selflink mode"
                    )

    # ------------------------------------------------------------ structure

    @property
    def size(self) -> int:
        return self.cartan.size

    def a(self, i: int, j: int) -> int:
        return self.cartan.a(i, j)

    def plain_neighbors(self, v: int) -> list[int]:
        return [u for u in range(self.size) if u != v and self.a(v, u) != 0]

    def partner(self, v: int) -> Optional[int]:
        """The other end of the dotted edge at v, or None."""
        for i, j in self.linkable:
            if i == v:
                return j
            if j == v:
                return i
        return None

    def is_linkable_pair(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in set(self.linkable)

    def lambda_of(self, i: int, j: int) -> int:
        pair = (min(i, j), max(i, j))
        if pair not in set(self.linkable):
            raise ValueError(f"({i + 1},{j + 1}) is not a dotted edge")
        return 1 if pair in self.linked else 0

    def plain_components(self) -> list[tuple[int, ...]]:
        """Connected components of the plain-edge graph, each sorted."""
        comp = self.component_index()
        groups: dict[int, list[int]] = {}
        for v in range(self.size):
            groups.setdefault(comp[v], []).append(v)
        return [tuple(sorted(g)) for _, g in sorted(groups.items())]

    def component_index(self) -> dict[int, int]:
        """Map each vertex to the smallest vertex of its plain component."""
        parent = list(range(self.cartan.size))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in self.cartan.plain_edges():
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
        return {v: find(v) for v in range(self.cartan.size)}

    def is_link_connected(self) -> bool:
        """True if plain and dotted edges together connect all vertices."""
        if self.size == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self.plain_neighbors(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
            p = self.partner(v)
            if p is not None and p not in seen:
                seen.add(p)
                stack.append(p)
        return len(seen) == self.size


# --------------------------------------------------------------- templates


def _chain(n: int) -> list[list[int]]:
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        m[i][i + 1] = m[i + 1][i] = -1
    return m


def _set_edge(m: list[list[int]], i: int, j: int, aij: int, aji: int) -> None:
    m[i][j] = aij
    m[j][i] = aji


def _star(arms: tuple[int, ...]) -> list[list[int]]:
    # center is vertex 0, arms attach as consecutive chains
    n = 1 + sum(arms)
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    v = 1
    for length in arms:
        prev = 0
        for _ in range(length):
            _set_edge(m, prev, v, -1, -1)
            prev = v
            v += 1
    return m


def _finite_templates(s: int) -> list[tuple[str, list[list[int]]]]:
    out: list[tuple[str, list[list[int]]]] = [(f"A{s}", _chain(s))]
    if s >= 2:
        m = _chain(s)
        _set_edge(m, s - 2, s - 1, -1, -2)
        out.append((f"B{s}", m))
    if s >= 3:
        m = _chain(s)
        _set_edge(m, s - 2, s - 1, -2, -1)
        out.append((f"C{s}", m))
    if s >= 4:
        m = _chain(s - 1)
        for row in m:
            row.append(0)
        m.append([0] * s)
        m[s - 1][s - 1] = 2
        _set_edge(m, s - 3, s - 1, -1, -1)
        out.append((f"D{s}", m))
    if s == 6:
        out.append(("E6", _star((1, 2, 2))))
    if s == 7:
        out.append(("E7", _star((1, 2, 3))))
    if s == 8:
        out.append(("E8", _star((1, 2, 4))))
    if s == 4:
        m = _chain(4)
        _set_edge(m, 1, 2, -1, -2)
        out.append(("F4", m))
    if s == 2:
        m = [[2, -1], [-3, 2]]
        out.append(("G2", m))
    return out


def _affine_templates(s: int) -> list[tuple[str, list[list[int]]]]:
    out: list[tuple[str, list[list[int]]]] = []
    if s == 2:
        out.append(("A1(1)", [[2, -2], [-2, 2]]))
        out.append(("A2(2)", [[2, -1], [-4, 2]]))
    if s >= 3:
        m = _chain(s)
        _set_edge(m, 0, s - 1, -1, -1)
        out.append((f"A{s - 1}(1)", m))
    if s >= 4:
        # fork at one end, double arrow at the other, head outward
        m = _chain(s)
        _set_edge(m, 0, 1, 0, 0)
        _set_edge(m, 0, 2, -1, -1)
        _set_edge(m, s - 2, s - 1, -1, -2)
        out.append((f"B{s - 1}(1)", m))
    if s >= 3:
        m = _chain(s)
        _set_edge(m, 0, 1, -1, -2)
        _set_edge(m, s - 2, s - 1, -2, -1)
        out.append((f"C{s - 1}(1)", m))
    if s >= 5:
        m = _chain(s)
        _set_edge(m, 0, 1, 0, 0)
        _set_edge(m, 0, 2, -1, -1)
        _set_edge(m, s - 2, s - 1, 0, 0)
        _set_edge(m, s - 3, s - 1, -1, -1)
        out.append((f"D{s - 1}(1)", m))
    if s == 7:
        out.append(("E6(1)", _star((2, 2, 2))))
    if s == 8:
        out.append(("E7(1)", _star((1, 3, 3))))
    if s == 9:
        out.append(("E8(1)", _star((1, 2, 5))))
    if s == 5:
        m = _chain(5)
        _set_edge(m, 2, 3, -1, -2)
        out.append(("F4(1)", m))
    if s == 3:
        m = _chain(3)
        _set_edge(m, 1, 2, -1, -3)
        out.append(("G2(1)", m))
    if s >= 3:
        # twisted even A: double arrows at both ends, heads aligned
        m = _chain(s)
        _set_edge(m, 0, 1, -2, -1)
        _set_edge(m, s - 2, s - 1, -2, -1)
        out.append((f"A{2 * (s - 1)}(2)", m))
    if s >= 4:
        # twisted odd A: fork at one end, double arrow pointing inward
        m = _chain(s)
        _set_edge(m, 0, 1, 0, 0)
        _set_edge(m, 0, 2, -1, -1)
        _set_edge(m, s - 2, s - 1, -2, -1)
        out.append((f"A{2 * s - 3}(2)", m))
    if s >= 3:
        # twisted D: double arrows at both ends, heads outward
        m = _chain(s)
        _set_edge(m, 0, 1, -2, -1)
        _set_edge(m, s - 2, s - 1, -1, -2)
        out.append((f"D{s}(2)", m))
    if s == 5:
        m = _chain(5)
        _set_edge(m, 2, 3, -2, -1)
        out.append(("E6(2)", m))
    if s == 3:
        m = _chain(3)
        _set_edge(m, 0, 1, -1, -3)
        out.append(("D4(3)", m))
    return out


def _find_isomorphism(
    sub: CartanMatrix, template: list[list[int]]
) -> Optional[list[int]]:
    """Backtracking search for a relabeling carrying template onto sub."""
    n = sub.size
    if len(template) != n:
        return None

    def row_profile(m, i, size) -> tuple[int, ...]:
        return tuple(sorted(m[i][j] for j in range(size) if j != i))

    sub_rows = [list(r) for r in sub.entries]
    tpl_profiles = [row_profile(template, i, n) for i in range(n)]
    sub_profiles = [row_profile(sub_rows, i, n) for i in range(n)]
    if sorted(tpl_profiles) != sorted(sub_profiles):
        return None

    assign: list[int] = []
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        for v in range(n):
            if used[v] or sub_profiles[v] != tpl_profiles[k]:
                continue
            ok = True
            for p in range(k):
                if (
                    template[k][p] != sub_rows[v][assign[p]]
                    or template[p][k] != sub_rows[assign[p]][v]
                ):
                    ok = False
                    break
            if ok:
                assign.append(v)
                used[v] = True
                if extend(k + 1):
                    return True
                assign.pop()
                used[v] = False
        return False

    return assign if extend(0) else None


class ComponentType(NamedTuple):
    """One plain component with its recognized type label.

    label examples: 'A3', 'G2', 'A1(1)', 'A5(2)', 'D4(3)'; 'other' if the
    component matches no template of the requested mode.
    """

    label: str
    vertices: tuple[int, ...]


def classify_components(
    diagram: LinkableDynkinDiagram, mode: str = "any"
) -> list[ComponentType]:
    """Recognize each plain component against the finite or affine catalog.

    mode 'finite' tries finite templates only, 'affine' affine only,
    'any' both.  Components are returned sorted by smallest vertex.
    """
    result = []
    for vertices in diagram.plain_components():
        sub = diagram.cartan.submatrix(vertices)
        pool: list[tuple[str, list[list[int]]]] = []
        if mode in ("finite", "any"):
            pool.extend(_finite_templates(len(vertices)))
        if mode in ("affine", "any"):
            pool.extend(_affine_templates(len(vertices)))
        label = "other"
        for name, template in pool:
            if _find_isomorphism(sub, template) is not None:
                label = name
                break
        result.append(ComponentType(label, vertices))
    return result


class SubDiagram(NamedTuple):
    """An induced piece of a diagram together with its original labels."""

    vertices: tuple[int, ...]
    diagram: LinkableDynkinDiagram


def link_connected_components(
    diagram: LinkableDynkinDiagram,
) -> list[SubDiagram]:
    """Components of the graph formed by plain and dotted edges together.

    Each component comes back as an induced sub-diagram; its vertices
    field records the original labels in ascending order.
    """
    n = diagram.size
    seen: set[int] = set()
    out: list[SubDiagram] = []
    for root in range(n):
        if root in seen:
            continue
        comp = {root}
        stack = [root]
        while stack:
            v = stack.pop()
            for u in diagram.plain_neighbors(v):
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
            p = diagram.partner(v)
            if p is not None and p not in comp:
                comp.add(p)
                stack.append(p)
        seen |= comp
        verts = tuple(sorted(comp))
        pos = {v: t for t, v in enumerate(verts)}
        rows = tuple(
            tuple(diagram.a(u, v) for v in verts) for u in verts
        )
        linkable = tuple(
            sorted(
                (pos[i], pos[j])
                for i, j in diagram.linkable
                if i in pos and j in pos
            )
        )
        linked = frozenset(
            (pos[i], pos[j]) for i, j in diagram.linked if i in pos
        )
        out.append(
            SubDiagram(
                verts,
                LinkableDynkinDiagram(
                    CartanMatrix(rows), linkable, linked, diagram.mode
                ),
            )
        )
    return out


def pairwise_linking_consistency(diagram: LinkableDynkinDiagram) -> list[str]:
    """Check the entry-matching condition between every two dotted edges.

    For dotted edges {i,k} and {j,l}, matching the ends in either way
    gives a constraint that must hold: a_ij == a_kl together with
    a_ji == a_lk, and likewise for the crossed matching.  Most of the
    four equalities compare entries across components and hold
    trivially; the remaining ones force equal edge data between linked
    components.  One violation is reported per failing matching, empty
    when fine.
    """
    a = diagram.a
    violations: list[str] = []
    pairs = diagram.linkable
    for p in range(len(pairs)):
        for q in range(p + 1, len(pairs)):
            i, k = pairs[p]
            j, l = pairs[q]
            for (x, y), (u, w) in (((i, j), (k, l)), ((i, l), (k, j))):
                bad = [
                    f"a({s1 + 1},{t1 + 1})={a(s1, t1)} != "
                    f"a({s2 + 1},{t2 + 1})={a(s2, t2)}"
                    for (s1, t1), (s2, t2) in (
                        ((x, y), (u, w)),
                        ((y, x), (w, u)),
                    )
                    if a(s1, t1) != a(s2, t2)
                ]
                if bad:
                    violations.append(
                        f"dotted ({i + 1},{k + 1}) vs ({j + 1},{l + 1}): "
                        + ", ".join(bad)
                    )
    return violations
