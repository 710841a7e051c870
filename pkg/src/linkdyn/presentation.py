"""Exact q-arithmetic and emission of the linked Hopf algebra presentation.

The coefficient ring is Z[q^(+-1), symbols]: sparse Laurent polynomials
with integer coefficients in q and optional named symbols.  A value may
instead pin q to a primitive d-th root of unity, in which case elements
live in Z[zeta_d] (tensored with the symbols) and are kept in the
canonical reduced form modulo the d-th cyclotomic polynomial, so that
structural equality is exact equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .braiding import RootExpr
from .errors import IndexOutOfRange
from .realization import LinkingDatum

Sym = tuple[tuple[str, int], ...]
Key = tuple[int, Sym]


def _divisors(n: int) -> list[int]:
    return [e for e in range(1, n + 1) if n % e == 0]


def _poly_div_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic with ascending coefficients; division must be exact
    work = list(num)
    dn = len(den) - 1
    out = [0] * (len(work) - dn)
    for top in range(len(work) - 1, dn - 1, -1):
        c = work[top]
        if c == 0:
            continue
        shift = top - dn
        out[shift] = c
        for t, dc in enumerate(den):
            work[shift + t] -= c * dc
    if any(work):
        raise ArithmeticError("polynomial division was not exact")
    return out


_PHI_CACHE: dict[int, tuple[int, ...]] = {}


def cyclotomic_polynomial(d: int) -> tuple[int, ...]:
    """Coefficients of the d-th cyclotomic polynomial, ascending."""
    if d in _PHI_CACHE:
        return _PHI_CACHE[d]
    poly = [-1] + [0] * (d - 1) + [1]
    for e in _divisors(d)[:-1]:
        poly = _poly_div_exact(poly, cyclotomic_polynomial(e))
    out = tuple(poly)
    _PHI_CACHE[d] = out
    return out


def _reduce_root_vector(vec: dict[int, int], d: int) -> dict[int, int]:
    phi = cyclotomic_polynomial(d)
    deg = len(phi) - 1
    coeffs = [0] * d
    for e, c in vec.items():
        coeffs[e % d] += c
    for top in range(d - 1, deg - 1, -1):
        c = coeffs[top]
        if c == 0:
            continue
        shift = top - deg
        for t, pc in enumerate(phi):
            coeffs[shift + t] -= c * pc
    return {e: c for e, c in enumerate(coeffs[:deg]) if c}


def _merge_sym(a: Sym, b: Sym) -> Sym:
    acc = dict(a)
    for name, k in b:
        acc[name] = acc.get(name, 0) + k
    return tuple(sorted((n, k) for n, k in acc.items() if k))


@dataclass(frozen=True, eq=False)
class QValue:
    """One exact coefficient: Laurent polynomial in q and named symbols.

    root_order 0 keeps q as a free indeterminate; a positive root_order
    d treats q as a primitive d-th root of unity.  Exponents are then
    kept modulo d, and zero tests (hence equality) reduce modulo the
    d-th cyclotomic polynomial, so monomials stay readable while
    comparisons remain exact.
    """

    root_order: int
    terms: tuple[tuple[Key, int], ...]

    @staticmethod
    def _make(root_order: int, data: dict[Key, int]) -> "QValue":
        if root_order:
            folded: dict[Key, int] = {}
            for (e, sym), c in data.items():
                key = (e % root_order, sym)
                folded[key] = folded.get(key, 0) + c
            data = folded
        items = [(k, c) for k, c in data.items() if c]
        items.sort(key=lambda kv: (kv[0][1], kv[0][0]))
        return QValue(root_order, tuple(items))

    # ------------------------------------------------------- constructors

    @classmethod
    def zero(cls, root_order: int = 0) -> "QValue":
        return cls._make(root_order, {})

    @classmethod
    def one(cls, root_order: int = 0) -> "QValue":
        return cls._make(root_order, {(0, ()): 1})

    @classmethod
    def integer(cls, n: int) -> "QValue":
        return cls._make(0, {(0, ()): n})

    @classmethod
    def q(cls, root_order: int = 0) -> "QValue":
        return cls._make(root_order, {(1, ()): 1})

    @classmethod
    def symbol(cls, name: str) -> "QValue":
        return cls._make(0, {(0, ((name, 1),)): 1})

    @classmethod
    def from_root_expr(cls, value: RootExpr) -> "QValue":
        sym = tuple((f"z{t}", k) for t, k in value.zpow)
        return cls._make(value.order, {(value.exp, sym): 1})

    # --------------------------------------------------------- predicates

    @property
    def is_zero(self) -> bool:
        if not self.terms:
            return True
        if not self.root_order:
            return False
        by_sym: dict[Sym, dict[int, int]] = {}
        for (e, sym), c in self.terms:
            vec = by_sym.setdefault(sym, {})
            vec[e] = vec.get(e, 0) + c
        return all(
            not _reduce_root_vector(vec, self.root_order)
            for vec in by_sym.values()
        )

    @property
    def is_one(self) -> bool:
        return (self - 1).is_zero

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (QValue, int)):
            return NotImplemented
        try:
            return (self - self._coerce(other)).is_zero
        except ValueError:
            return False

    __hash__ = None  # type: ignore[assignment]  # values compare modulo Phi_d

    def _constant_like(self) -> bool:
        return all(e == 0 for (e, _sym), _c in self.terms)

    # --------------------------------------------------------- arithmetic

    @staticmethod
    def _coerce(other: "QValue | int") -> "QValue":
        if isinstance(other, int):
            return QValue.integer(other)
        if isinstance(other, QValue):
            return other
        raise TypeError(f"cannot mix QValue with {type(other).__name__}")

    @staticmethod
    def _align(a: "QValue", b: "QValue") -> tuple["QValue", "QValue"]:
        if a.root_order == b.root_order:
            return a, b
        if a._constant_like():
            return QValue._make(b.root_order, dict(a.terms)), b
        if b._constant_like():
            return a, QValue._make(a.root_order, dict(b.terms))
        raise ValueError("cannot mix q values of different root orders")

    def __add__(self, other: "QValue | int") -> "QValue":
        a, b = self._align(self, self._coerce(other))
        data = dict(a.terms)
        for k, c in b.terms:
            data[k] = data.get(k, 0) + c
        return QValue._make(a.root_order, data)

    __radd__ = __add__

    def __neg__(self) -> "QValue":
        return QValue._make(self.root_order, {k: -c for k, c in self.terms})

    def __sub__(self, other: "QValue | int") -> "QValue":
        return self + (-self._coerce(other))

    def __mul__(self, other: "QValue | int") -> "QValue":
        a, b = self._align(self, self._coerce(other))
        data: dict[Key, int] = {}
        for (e1, s1), c1 in a.terms:
            for (e2, s2), c2 in b.terms:
                key = (e1 + e2, _merge_sym(s1, s2))
                data[key] = data.get(key, 0) + c1 * c2
        return QValue._make(a.root_order, data)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QValue":
        if k == 0:
            return QValue.one(self.root_order)
        if k < 0:
            if len(self.terms) != 1 or abs(self.terms[0][1]) != 1:
                raise ValueError("only monomials with unit coefficient invert")
            (e, sym), c = self.terms[0]
            inv = QValue._make(
                self.root_order, {(-e, tuple((n, -p) for n, p in sym)): c}
            )
            return inv ** (-k)
        acc = QValue.one(self.root_order)
        for _ in range(k):
            acc = acc * self
        return acc

    # ---------------------------------------------------------- rendering

    def render(self) -> str:
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for (e, sym), c in self.terms:
            mags: list[str] = []
            if abs(c) != 1 or (e == 0 and not sym):
                mags.append(str(abs(c)))
            if e:
                mags.append("q" if e == 1 else f"q^{e}")
            for name, k in sym:
                mags.append(name if k == 1 else f"{name}^{k}")
            body = "*".join(mags)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()


# ------------------------------------------------------------ q-arithmetic


def qnumber(n: int, q: QValue) -> QValue:
    """1 + q + ... + q^(n-1)."""
    if n < 0:
        raise IndexOutOfRange(f"q-number needs n >= 0, got {n}")
    acc = QValue.zero(q.root_order)
    for t in range(n):
        acc = acc + q**t
    return acc


def qfactorial(n: int, q: QValue) -> QValue:
    if n < 0:
        raise IndexOutOfRange(f"q-factorial needs n >= 0, got {n}")
    acc = QValue.one(q.root_order)
    for t in range(1, n + 1):
        acc = acc * qnumber(t, q)
    return acc


def qbinomial(n: int, i: int, q: QValue) -> QValue:
    """q-binomial bracket by the Pascal recurrence, no division."""
    if n < 0 or i < 0 or i > n:
        raise IndexOutOfRange(f"q-binomial needs 0 <= i <= n, got ({n}, {i})")
    row = [QValue.one(q.root_order)]
    for r in range(n):
        new = []
        for c in range(r + 2):
            val = QValue.zero(q.root_order)
            if c <= r:
                val = val + q**c * row[c]
            if c >= 1:
                val = val + row[c - 1]
            new.append(val)
        row = new
    return row[i]


def check_identity(which: int, n: int, i: int, q: QValue) -> bool:
    """Exact check of one of the three bracket identities.

    which = 1 needs 1 <= i <= n and tests both stated equalities; for
    which in {2, 3} the argument i is ignored and n >= 1 is required.
    """
    if which == 1:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"identity 1 needs 1 <= i <= n, got ({n}, {i})")
        rhs = qbinomial(n + 1, i, q)
        lhs1 = q**i * qbinomial(n, i, q) + qbinomial(n, i - 1, q)
        lhs2 = qbinomial(n, i, q) + q ** (n + 1 - i) * qbinomial(n, i - 1, q)
        return (lhs1 - rhs).is_zero and (lhs2 - rhs).is_zero
    if which == 2:
        if n < 1:
            raise IndexOutOfRange(f"identity 2 needs n >= 1, got {n}")
        acc = QValue.zero(q.root_order)
        for t in range(n + 1):
            term = q ** (t * (t - 1) // 2) * qbinomial(n, t, q)
            acc = acc + (-term if t % 2 else term)
        return acc.is_zero
    if which == 3:
        if n < 1:
            raise IndexOutOfRange(f"identity 3 needs n >= 1, got {n}")
        acc = QValue.zero(q.root_order)
        for t in range(n + 1):
            term = q ** ((t * t + t) // 2 - n * t) * qbinomial(n, t, q)
            acc = acc + (-term if t % 2 else term)
        return acc.is_zero
    raise ValueError(f"no identity numbered {which}")


def serre_coefficients(a_ij: int, q_i: QValue, b_ij: QValue) -> list[QValue]:
    """Coefficients c_k of a_i^(1-a_ij-k) a_j a_i^k in the crossed power.

    c_k = (-1)^k [1-a_ij choose k]_{q_i} q_i^(k(k-1)/2) b_ij^k for
    k = 0 .. 1-a_ij, so the list always has 2 - a_ij entries.
    """
    if a_ij > 0:
        raise ValueError("off-diagonal Cartan entries are nonpositive")
    top = 1 - a_ij
    out = []
    for k in range(top + 1):
        c = qbinomial(top, k, q_i) * q_i ** (k * (k - 1) // 2) * b_ij**k
        out.append(-c if k % 2 else c)
    return out


# ------------------------------------------------------------ presentation


class Relation(NamedTuple):
    kind: str
    text: str
    machine: str


@dataclass(frozen=True)
class HopfPresentation:
    """Generators, relations, and coproduct of the linked algebra."""

    group_generators: tuple[str, ...]
    algebra_generators: tuple[str, ...]
    relations: tuple[Relation, ...]
    coproduct: tuple[str, ...]
    coproduct_machine: tuple[str, ...]

    def to_text(self) -> str:
        lines = [
            "generators: "
            + " ".join(self.group_generators + self.algebra_generators)
        ]
        for kind in ("group", "mixed", "serre"):
            block = [r for r in self.relations if r.kind == kind]
            if block:
                lines.append(f"{kind} relations:")
                lines.extend("  " + r.text for r in block)
        lines.append("coproduct:")
        lines.extend("  " + c for c in self.coproduct)
        return "\n".join(lines) + "\n"

    def to_machine(self) -> str:
        lines = [
            f"generators {len(self.group_generators)} "
            f"{len(self.algebra_generators)}"
        ]
        lines.extend(r.machine for r in self.relations)
        lines.extend(self.coproduct_machine)
        return "\n".join(lines) + "\n"


def _group_word(exps: tuple[int, ...], factors: tuple[int, ...]) -> str:
    parts = []
    for t, e in enumerate(exps):
        if factors[t]:
            e %= factors[t]
        if e:
            parts.append(f"h_{t + 1}" if e == 1 else f"h_{t + 1}^{e}")
    return "*".join(parts) if parts else "1"


def _coeff_str(value: RootExpr) -> str:
    return "1" if value.is_one else str(value)


def _serre_word(i: int, j: int, top: int, k: int, sep: str) -> str:
    parts = []
    left = top - k
    if left:
        parts.append(f"a_{i + 1}" if left == 1 else f"a_{i + 1}^{left}")
    parts.append(f"a_{j + 1}")
    if k:
        parts.append(f"a_{i + 1}" if k == 1 else f"a_{i + 1}^{k}")
    return sep.join(parts)


def _split_sign(c: QValue) -> tuple[int, str]:
    # render with the leading sign pulled out; parenthesize genuine sums
    if len(c.terms) == 1:
        body = c.render()
        return (-1, body[1:]) if body.startswith("-") else (1, body)
    if c.terms[0][1] < 0:
        return -1, f"({(-c).render()})"
    return 1, f"({c.render()})"


def _signed_sum(coeffs: list[QValue], words: list[str]) -> str:
    parts: list[str] = []
    for c, w in zip(coeffs, words):
        if c.is_zero:
            continue
        sign, body = _split_sign(c)
        piece = w if body == "1" else f"{body} {w}"
        if not parts:
            parts.append(piece if sign > 0 else f"-{piece}")
        else:
            parts.append(f" + {piece}" if sign > 0 else f" - {piece}")
    return "".join(parts) if parts else "0"


def emit_presentation(datum: LinkingDatum) -> HopfPresentation:
    """Full presentation of the algebra attached to a linking datum.

    Group relations come from the invariant factors, mixed relations
    carry the exact character coefficients, and each vertex pair i < j
    contributes one crossed-power relation whose left side has 2 - a_ij
    coefficient slots (zero coefficients are dropped from the text form
    but kept in the machine form).
    """
    diagram = datum.diagram
    if diagram is None:
        raise ValueError("datum carries no diagram; cannot expand relations")
    factors = datum.factors
    l, s = len(factors), len(datum.elements)
    hs = tuple(f"h_{t + 1}" for t in range(l))
    alg = tuple(f"a_{i + 1}" for i in range(s))
    rels: list[Relation] = []

    for t, f in enumerate(factors):
        if f:
            rels.append(
                Relation("group", f"h_{t + 1}^{f} = 1", f"group power {t + 1} {f}")
            )
    for t in range(l):
        for u in range(t + 1, l):
            rels.append(
                Relation(
                    "group",
                    f"h_{t + 1} h_{u + 1} = h_{u + 1} h_{t + 1}",
                    f"group comm {t + 1} {u + 1}",
                )
            )

    for t in range(l):
        for j in range(s):
            ctext = _coeff_str(datum.characters[j][t])
            rhs = (
                f"a_{j + 1} h_{t + 1}"
                if ctext == "1"
                else f"{ctext} a_{j + 1} h_{t + 1}"
            )
            rels.append(
                Relation(
                    "mixed",
                    f"h_{t + 1} a_{j + 1} = {rhs}",
                    f"mixed {t + 1} {j + 1} | coeff: {ctext}",
                )
            )

    for i in range(s):
        for j in range(i + 1, s):
            a = diagram.a(i, j)
            top = 1 - a
            q_i = QValue.from_root_expr(datum.braiding_entry(i, i))
            b_ij = QValue.from_root_expr(datum.braiding_entry(i, j))
            coeffs = serre_coefficients(a, q_i, b_ij)
            words_text = [_serre_word(i, j, top, k, " ") for k in range(top + 1)]
            words_mach = [_serre_word(i, j, top, k, "*") for k in range(top + 1)]
            lam = 1 if (i, j) in datum.linked else 0
            gw = ""
            if lam:
                exps = tuple(
                    (1 - a) * datum.elements[i][t] + datum.elements[j][t]
                    for t in range(l)
                )
                gw = _group_word(exps, factors)
                rhs = "0" if gw == "1" else f"1 - {gw}"
            else:
                rhs = "0"
            machine = (
                f"serre {i + 1} {j + 1} | coeffs: "
                + " ; ".join(c.render() for c in coeffs)
                + " | words: "
                + " , ".join(words_mach)
                + f" | rhs: lambda={lam}"
                + (f" g={gw}" if lam else "")
            )
            rels.append(
                Relation("serre", f"{_signed_sum(coeffs, words_text)} = {rhs}", machine)
            )

    copro = [f"delta(h_{t + 1}) = h_{t + 1} (x) h_{t + 1}" for t in range(l)]
    copro_m = [f"coproduct h {t + 1}" for t in range(l)]
    for i in range(s):
        gw = _group_word(datum.elements[i], factors)
        copro.append(f"delta(a_{i + 1}) = a_{i + 1} (x) 1 + {gw} (x) a_{i + 1}")
        copro_m.append(f"coproduct a {i + 1} | g={gw}")

    return HopfPresentation(hs, alg, tuple(rels), tuple(copro), tuple(copro_m))


__all__ = [
    "QValue",
    "cyclotomic_polynomial",
    "qnumber",
    "qfactorial",
    "qbinomial",
    "check_identity",
    "serre_coefficients",
    "Relation",
    "HopfPresentation",
    "emit_presentation",
]
