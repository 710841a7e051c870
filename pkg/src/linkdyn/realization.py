"""Realizing braiding matrices over abelian groups.

A realization assigns to each vertex a group element g_i and a
character chi_i so that b_ij = chi_j(g_i), with the linking identity
chi_i^(1-a_ij) chi_j = 1 for every dotted pair.  Any matrix without
free parameters works over Z^s; over (Z/m)^s the entry orders must
divide m.  The module also builds the classical two-copy datum from a
symmetrizable Cartan matrix and solves the rank-four congruence system
that governs realizations over (Z/p)^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple, Optional

from .braiding import BraidingMatrix, RootExpr
from .diagram import CartanMatrix, LinkableDynkinDiagram
from .errors import (
    InadmissibleD,
    LinkConstraintUnsatisfiable,
    NotPrime,
    NotSymmetrizable,
    OrderNotDividing,
)
from .fields import is_prime

Pair = tuple[int, int]


# ------------------------------------------------------------ linking datum


@dataclass(frozen=True)
class LinkingDatum:
    """Group data realizing a braiding matrix.

    factors are the invariant factors of the group (0 meaning an
    infinite cyclic factor); elements holds each g_i as an exponent
    vector over the generators; characters holds each chi_j by its
    values on the generators.  All character values share one root
    order.
    """

    order: int
    factors: tuple[int, ...]
    elements: tuple[tuple[int, ...], ...]
    characters: tuple[tuple[RootExpr, ...], ...]
    linkable: tuple[Pair, ...]
    linked: frozenset[Pair]
    diagram: Optional[LinkableDynkinDiagram] = field(default=None, compare=False)

    def character_value(self, j: int, vector: tuple[int, ...]) -> RootExpr:
        """Evaluate chi_j on the group element with the given exponents."""
        acc = RootExpr.one(self.order)
        for t, e in enumerate(vector):
            if e:
                acc = acc * self.characters[j][t] ** e
        return acc

    def braiding_entry(self, i: int, j: int) -> RootExpr:
        return self.character_value(j, self.elements[i])

    def braiding_matrix(self) -> BraidingMatrix:
        s = len(self.elements)
        rows = tuple(
            tuple(self.braiding_entry(i, j) for j in range(s)) for i in range(s)
        )
        return BraidingMatrix(self.order, rows)

    def verify_datum(
        self, source: Optional[BraidingMatrix] = None
    ) -> tuple[str, ...]:
        """Failure messages for the realization identities, empty if fine."""
        failures: list[str] = []
        diagram = self.diagram
        if source is not None:
            induced = self.braiding_matrix()
            for i in range(source.size):
                for j in range(source.size):
                    if induced.entry(i, j) != source.entry(i, j):
                        failures.append(
                            f"chi_{j + 1}(g_{i + 1}) = {induced.entry(i, j)} "
                            f"but the matrix holds {source.entry(i, j)}"
                        )
        if diagram is not None:
            for i, j in self.linkable:
                for x, y in ((i, j), (j, i)):
                    exponent = 1 - diagram.a(x, y)
                    for t in range(len(self.factors)):
                        val = (
                            self.characters[x][t] ** exponent
                            * self.characters[y][t]
                        )
                        if not val.is_one:
                            failures.append(
                                f"character identity fails for pair "
                                f"({x + 1},{y + 1}) at generator {t + 1}: "
                                f"got {val}"
                            )
        return tuple(failures)

    # --------------------------------------------------------------- text

    def to_text(self) -> str:
        lines = [f"root_order {self.order}"]
        lines.append("factors " + " ".join(str(f) for f in self.factors))
        for i, vec in enumerate(self.elements):
            lines.append(f"g {i + 1}: " + " ".join(str(e) for e in vec))
        for j, chi in enumerate(self.characters):
            lines.append(f"chi {j + 1}: " + " ".join(str(v) for v in chi))
        for i, j in self.linkable:
            flag = 1 if (i, j) in self.linked else 0
            lines.append(f"lambda {i + 1} {j + 1}: {flag}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "LinkingDatum":
        order = 0
        factors: tuple[int, ...] = ()
        elements: list[tuple[int, ...]] = []
        characters: list[tuple[RootExpr, ...]] = []
        linkable: list[Pair] = []
        linked: set[Pair] = set()
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("root_order "):
                order = int(line.split()[1])
            elif line.startswith("factors"):
                factors = tuple(int(x) for x in line.split()[1:])
            elif line.startswith("g "):
                _, rest = line.split(" ", 1)
                _, vec = rest.split(":")
                elements.append(tuple(int(x) for x in vec.split()))
            elif line.startswith("chi "):
                _, rest = line.split(" ", 1)
                _, vals = rest.split(":")
                characters.append(
                    tuple(RootExpr.parse(tok, order) for tok in vals.split())
                )
            elif line.startswith("lambda "):
                head, flag = line.split(":")
                _, i, j = head.split()
                pair = (int(i) - 1, int(j) - 1)
                linkable.append(pair)
                if int(flag) == 1:
                    linked.add(pair)
            else:
                raise ValueError(f"bad datum line {line!r}")
        return cls(
            order,
            factors,
            tuple(elements),
            tuple(characters),
            tuple(linkable),
            frozenset(linked),
        )


# ------------------------------------------------------------ realizations


def realize_free(
    matrix: BraidingMatrix,
    diagram: LinkableDynkinDiagram,
    z_values: Optional[dict[int, RootExpr]] = None,
) -> LinkingDatum:
    """Realize a matrix over Z^s with the canonical basis as the g_i.

    Free parameters are substituted first (default 1).  The character
    linking identity is rechecked; failures raise
    LinkConstraintUnsatisfiable.
    """
    inst = matrix.instantiate(z_values)
    s = inst.size
    datum = LinkingDatum(
        order=inst.order,
        factors=(0,) * s,
        elements=tuple(
            tuple(1 if t == i else 0 for t in range(s)) for i in range(s)
        ),
        characters=tuple(
            tuple(inst.entry(i, j) for i in range(s)) for j in range(s)
        ),
        linkable=diagram.linkable,
        linked=diagram.linked,
        diagram=diagram,
    )
    failures = datum.verify_datum(inst)
    if failures:
        raise LinkConstraintUnsatisfiable("; ".join(failures))
    return datum


def realize_mod_p(
    matrix: BraidingMatrix,
    diagram: LinkableDynkinDiagram,
    modulus: int,
    z_values: Optional[dict[int, RootExpr]] = None,
) -> LinkingDatum:
    """Realize a matrix over (Z/modulus)^s.

    Every substituted entry must have multiplicative order dividing the
    modulus (OrderNotDividing otherwise), which makes the characters
    well defined on the finite group.
    """
    inst = matrix.instantiate(z_values)
    s = inst.size
    for i in range(s):
        for j in range(s):
            o = inst.entry(i, j).multiplicative_order()
            if modulus % o:
                raise OrderNotDividing(
                    f"entry ({i + 1},{j + 1}) = {inst.entry(i, j)} has order "
                    f"{o}, which does not divide {modulus}"
                )
    free = realize_free(inst, diagram)
    return LinkingDatum(
        order=free.order,
        factors=(modulus,) * s,
        elements=free.elements,
        characters=free.characters,
        linkable=free.linkable,
        linked=free.linked,
        diagram=diagram,
    )


# --------------------------------------------------------------- symmetrizer


def find_symmetrizer(cartan: CartanMatrix) -> tuple[int, ...]:
    """Positive integers d with d_i a_ij = d_j a_ji, minimal per component.

    Raises NotSymmetrizable when no such vector exists.
    """
    n = cartan.size
    vals: list[Optional[Fraction]] = [None] * n
    for root in range(n):
        if vals[root] is not None:
            continue
        vals[root] = Fraction(1)
        comp = [root]
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v in range(n):
                if v != u and cartan.a(u, v) != 0 and vals[v] is None:
                    vals[v] = vals[u] * cartan.a(u, v) / cartan.a(v, u)
                    comp.append(v)
                    queue.append(v)
        scale = lcm(*(vals[v].denominator for v in comp))
        shrink = gcd(*(int(vals[v] * scale) for v in comp))
        for v in comp:
            vals[v] = Fraction(int(vals[v] * scale) // shrink)
    out = tuple(int(v) for v in vals)  # type: ignore[arg-type]
    for i in range(n):
        for j in range(n):
            if i != j and out[i] * cartan.a(i, j) != out[j] * cartan.a(j, i):
                raise NotSymmetrizable(
                    f"no positive d with d_{i + 1} a({i + 1},{j + 1}) = "
                    f"d_{j + 1} a({j + 1},{i + 1})"
                )
    return out


def double_datum(
    cartan: CartanMatrix,
    symmetrizer: Optional[tuple[int, ...]] = None,
    q_order: int = 5,
) -> LinkingDatum:
    """Two linked copies of a symmetrizable Cartan matrix over Z^N.

    Vertices N+1..2N mirror 1..N, each pair {i, N+i} is linked, the
    group is Z^N with g_i = g_(N+i) = e_i, and chi_j(e_t) = q^(d_t a_tj)
    with the mirrored characters inverted.  This induces the braiding
    matrix behind the standard quantized enveloping algebras.
    """
    n = cartan.size
    if symmetrizer is None:
        symmetrizer = find_symmetrizer(cartan)
    else:
        if len(symmetrizer) != n or any(d <= 0 for d in symmetrizer):
            raise NotSymmetrizable("symmetrizer must be positive of full length")
        for i in range(n):
            for j in range(n):
                if i != j and symmetrizer[i] * cartan.a(i, j) != symmetrizer[j] * cartan.a(j, i):
                    raise NotSymmetrizable(
                        f"d_{i + 1} a({i + 1},{j + 1}) != d_{j + 1} a({j + 1},{i + 1})"
                    )
    for d_i in symmetrizer:
        if (2 * d_i) % q_order == 0:
            raise InadmissibleD(
                f"q of order {q_order} makes a diagonal entry q^{2 * d_i} "
                f"collapse to 1"
            )

    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            rows[i][j] = cartan.a(i, j)
            rows[n + i][n + j] = cartan.a(i, j)
    double_cartan = CartanMatrix(tuple(tuple(r) for r in rows))
    pairs = tuple((i, n + i) for i in range(n))
    diagram = LinkableDynkinDiagram(
        double_cartan, pairs, frozenset(pairs), mode="finite"
    )

    def q(e: int) -> RootExpr:
        return RootExpr.root(q_order, e)

    characters = tuple(
        tuple(q(symmetrizer[t] * cartan.a(t, j % n)) for t in range(n))
        if j < n
        else tuple(q(-symmetrizer[t] * cartan.a(t, j % n)) for t in range(n))
        for j in range(2 * n)
    )
    elements = tuple(
        tuple(1 if t == i % n else 0 for t in range(n)) for i in range(2 * n)
    )
    return LinkingDatum(
        order=q_order,
        factors=(0,) * n,
        elements=elements,
        characters=characters,
        linkable=pairs,
        linked=frozenset(pairs),
        diagram=diagram,
    )


# ---------------------------------------------------- (Z/p)^2 for rank four


def sqrt_mod(a: int, p: int) -> tuple[int, ...]:
    """All square roots of a modulo an odd prime p, ascending."""
    a %= p
    if a == 0:
        return (0,)
    if pow(a, (p - 1) // 2, p) != 1:
        return ()
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return tuple(sorted({r, p - r}))
    # Tonelli-Shanks for p = 1 mod 4
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return tuple(sorted({r, p - r}))


def _require_rank4_prime(p: int) -> None:
    if p < 5 or not is_prime(p):
        raise NotPrime(f"{p} is not a prime of at least 5")


def magic_pairs(p: int) -> tuple[tuple[int, int], ...]:
    """All (n, m) with n^2 - nm + m^2 + m + 1 = 0 modulo p, sorted."""
    _require_rank4_prime(p)
    return tuple(
        (n, m)
        for n in range(p)
        for m in range(p)
        if (n * n - n * m + m * m + m + 1) % p == 0
    )


def count_magic_solutions(p: int) -> int:
    return len(magic_pairs(p))


def _pure_pairs(p: int) -> tuple[tuple[int, int], ...]:
    return tuple(
        (k, l)
        for k in range(p)
        for l in range(p)
        if (k * k - k * l + l * l + 1) % p == 0
    )


def _satisfies_system(t: tuple[int, int, int, int], p: int) -> bool:
    n, m, k, l = t
    return (
        (n * n - n * m + m * m + m + 1) % p == 0
        and (k * k - k * l + l * l + 1) % p == 0
        and (k * (m - 2 * n) + l * (n - 2 * m - 1) + 1) % p == 0
    )


def a4_scan(p: int) -> tuple[tuple[int, int, int, int], ...]:
    """All (n, m, k, l) solving the three congruences, by full search."""
    _require_rank4_prime(p)
    pure = _pure_pairs(p)
    out = []
    for n, m in magic_pairs(p):
        cm, cl = (m - 2 * n) % p, (n - 2 * m - 1) % p
        for k, l in pure:
            if (k * cm + l * cl + 1) % p == 0:
                out.append((n, m, k, l))
    return tuple(sorted(out))


def a4_closed_form(p: int) -> tuple[tuple[int, int, int, int], ...]:
    """The same solutions through the square-root case formulas.

    Candidates are generated for the three parameter cases (m = 2n,
    n = 2m + 1, and the generic one) over every sign choice, then
    filtered through the congruences, so an ambiguous sign coupling in
    a formula cannot add spurious tuples.
    """
    _require_rank4_prime(p)
    inv2, inv3, inv4 = (pow(x, -1, p) for x in (2, 3, 4))
    roots_m2 = sqrt_mod(-2, p)
    roots_5 = sqrt_mod(5, p)
    cands: set[tuple[int, int, int, int]] = set()

    for r2 in roots_m2:
        if r2 == 0:
            continue
        ir2 = pow(r2, -1, p)
        # m = 2n
        for n in ((-1 + r2) * inv3 % p, (-1 - r2) * inv3 % p):
            m = 2 * n % p
            for l in (ir2, (-ir2) % p):
                for one in (1, -1):
                    for r5 in roots_5:
                        k = (one + r5) * inv2 * ir2 % p
                        cands.add((n, m, k, l))
        # n = 2m + 1
        for m in ((-2 + r2) * inv3 % p, (-2 - r2) * inv3 % p):
            n = (2 * m + 1) % p
            for k in (ir2, (-ir2) % p):
                for one in (1, -1):
                    for r5 in roots_5:
                        l = (one + r5) * inv2 * ir2 % p
                        cands.add((n, m, k, l))

    # generic case, signs of sqrt(5) coupled oppositely between l and k
    for n, m in magic_pairs(p):
        dm = (m - 2 * n) % p
        dn = (n - 2 * m - 1) % p
        if dm == 0 or dn == 0:
            continue
        for r5 in roots_5:
            l = (-inv2 - 3 * m * inv4 + r5 * dm * inv4) % p
            k = (
                (dn * (3 * m + 2) - 4) * pow(4 * dm % p, -1, p)
                - r5 * dn * inv4
            ) % p
            cands.add((n, m, k, l))

    return tuple(sorted(t for t in cands if _satisfies_system(t, p)))


class A4Solution(NamedTuple):
    """Both solution routes for the rank-four system over (Z/p)^2."""

    p: int
    tuples: tuple[tuple[int, int, int, int], ...]
    closed_form: tuple[tuple[int, int, int, int], ...]
    routes_agree: bool


def a4_solve_zp2(p: int) -> A4Solution:
    scan = a4_scan(p)
    closed = a4_closed_form(p)
    return A4Solution(p, scan, closed, scan == closed)


def a4_realizable_zp2(p: int) -> tuple[bool, tuple[str, ...]]:
    """Whether the rank-four chain admits a realization over (Z/p)^2.

    The exhaustive scan decides; the report compares it with the
    square-root criterion and with the residue-class shortcut, flagging
    primes where the shortcut and the scan differ.
    """
    report = a4_solve_zp2(p)
    realizable = bool(report.tuples)
    lines = [
        f"solutions over (Z/{p})^2: {len(report.tuples)}",
        f"closed-form route: {len(report.closed_form)} tuples "
        f"({'agrees with the scan' if report.routes_agree else 'DISAGREES with the scan'})",
    ]
    if p == 5:
        lines.append("5 is 0 modulo 5, trivially a square")
    else:
        square = pow(5, (p - 1) // 2, p) == 1
        lines.append(
            f"5 is a {'square' if square else 'non-square'} modulo {p} "
            f"(Euler criterion)"
        )
    shortcut = p == 5 or p % 10 in (1, 3)
    lines.append(
        f"residue shortcut (p = 5 or p mod 10 in {{1, 3}}) predicts "
        f"{'realizable' if shortcut else 'not realizable'}"
    )
    if shortcut != realizable:
        lines.append(
            f"shortcut and scan disagree for p = {p}; values above are "
            f"from the scan"
        )
    return realizable, tuple(lines)


def max_diagram_note_zp2(p: int) -> str:
    """Stated size bound for finite diagrams realizable over (Z/p)^2.

    This repeats a classification bound; nothing here recomputes it.
    """
    _require_rank4_prime(p)
    if p == 5:
        return (
            "largest finite diagram over (Z/5)^2: four vertices, except "
            "A_4 x A_1 (stated classification bound, not recomputed)"
        )
    return (
        f"largest finite diagram over (Z/{p})^2: four vertices "
        f"(stated classification bound, not recomputed)"
    )


__all__ = [
    "LinkingDatum",
    "realize_free",
    "realize_mod_p",
    "find_symmetrizer",
    "double_datum",
    "sqrt_mod",
    "magic_pairs",
    "count_magic_solutions",
    "a4_scan",
    "a4_closed_form",
    "a4_solve_zp2",
    "A4Solution",
    "a4_realizable_zp2",
    "max_diagram_note_zp2",
]
