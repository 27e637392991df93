"""Sparse exact polynomials in ``S(g)`` over the Chevalley basis.

A monomial is a sorted tuple of ``(letter, exponent)`` pairs, letters being
the basis indices of :class:`~centun.rootsys.RootSystem`.  The Killing form
extends to ``S(g)`` by summing over all matchings of letters, which is the
permanent-style expansion behind ``(x^n, y^n) = n! (x, y)^n``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .linalg import IncrementalBasis, format_fraction
from .repbuild import Irrep
from .rootsys import RootSystem, Weight

Monomial = Tuple[Tuple[int, int], ...]


def mono(*letters: int) -> Monomial:
    """Monomial from a list of letters with repetition."""
    counts: Dict[int, int] = {}
    for a in letters:
        counts[a] = counts.get(a, 0) + 1
    return tuple(sorted(counts.items()))


def mono_mul(m: Monomial, n: Monomial) -> Monomial:
    d = dict(m)
    for a, e in n:
        d[a] = d.get(a, 0) + e
    return tuple(sorted(d.items()))


def mono_div(m: Monomial, a: int) -> Monomial:
    out = []
    for b, e in m:
        if b == a:
            if e > 1:
                out.append((b, e - 1))
        else:
            out.append((b, e))
    return tuple(out)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_letters(m: Monomial) -> Tuple[int, ...]:
    return tuple(a for a, e in m for _ in range(e))


class GPoly:
    """Immutable polynomial in ``S(g)``; ``terms`` maps monomials to nonzero Fractions."""

    __slots__ = ("rs", "terms", "_hash")

    def __init__(self, rs: RootSystem, terms: Optional[Mapping[Monomial, Fraction]] = None):
        self.rs = rs
        self.terms: Dict[Monomial, Fraction] = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def letter(cls, rs: RootSystem, a: int, coeff=1) -> "GPoly":
        return cls(rs, {((a, 1),): Fraction(coeff)})

    @classmethod
    def const(cls, rs: RootSystem, c=1) -> "GPoly":
        return cls(rs, {(): Fraction(c)})

    @classmethod
    def linear(cls, rs: RootSystem, coeffs: Mapping[int, Fraction]) -> "GPoly":
        return cls(rs, {((a, 1),): c for a, c in coeffs.items()})

    # arithmetic
    def __add__(self, other: "GPoly") -> "GPoly":
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m, 0) + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return GPoly(self.rs, t)

    def __neg__(self) -> "GPoly":
        return GPoly(self.rs, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "GPoly") -> "GPoly":
        return self + (-other)

    def __mul__(self, other) -> "GPoly":
        if isinstance(other, GPoly):
            t: Dict[Monomial, Fraction] = {}
            for m, c in self.terms.items():
                for n, d in other.terms.items():
                    k = mono_mul(m, n)
                    s = t.get(k, 0) + c * d
                    if s:
                        t[k] = s
                    else:
                        t.pop(k, None)
            return GPoly(self.rs, t)
        other = Fraction(other)
        return GPoly(self.rs, {m: c * other for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GPoly":
        out = GPoly.const(self.rs)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, GPoly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # grading
    def degrees(self) -> set:
        return {mono_degree(m) for m in self.terms}

    def homogeneous_part(self, k: int) -> "GPoly":
        return GPoly(self.rs, {m: c for m, c in self.terms.items() if mono_degree(m) == k})

    def monomial_weight(self, m: Monomial) -> Tuple[int, ...]:
        out = [0] * self.rs.rank
        for a, e in m:
            for i, x in enumerate(self.rs.letter_root[a]):
                out[i] += e * x
        return tuple(out)

    def weights(self) -> set:
        """Set of root-coordinate weights of the terms."""
        return {self.monomial_weight(m) for m in self.terms}

    def weight(self) -> Optional[Tuple[int, ...]]:
        ws = self.weights()
        return next(iter(ws)) if len(ws) == 1 else None

    def in_S_n(self) -> bool:
        """Every monomial uses only positive-root letters."""
        return all(a < self.rs.n_pos for m in self.terms for a, _ in m)

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        rs = self.rs

        def key(m):
            letters = sorted(mono_letters(m), key=rs.letter_sort_key)
            return (mono_degree(m), tuple(rs.letter_sort_key(a) for a in letters))

        return sorted(self.terms.items(), key=lambda mc: key(mc[0]))

    def to_records(self) -> List[dict]:
        out = []
        for m, c in self.sorted_terms():
            out.append({"monomial": {self.rs.letter_name(a): e for a, e in
                                     sorted(m, key=lambda ae: self.rs.letter_sort_key(ae[0]))},
                        "coeff": format_fraction(c)})
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_records(), separators=(",", ":"))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for a, e in sorted(m, key=lambda ae: self.rs.letter_sort_key(ae[0])):
                name = self.rs.letter_name(a)
                name = name if name.startswith("h") else f"e[{name}]"
                factors.append(name if e == 1 else f"{name}^{e}")
            parts.append(f"({c})" + ("*" + "*".join(factors) if factors else ""))
        return " + ".join(parts)


def poly_from_records(rs: RootSystem, records: Iterable[dict]) -> GPoly:
    lookup = {rs.letter_name(a): a for a in range(rs.dim)}
    terms = {}
    for rec in records:
        m = tuple(sorted((lookup[k], int(e)) for k, e in rec["monomial"].items()))
        terms[m] = Fraction(rec["coeff"])
    return GPoly(rs, terms)


# ----------------------------------------------------------------------------
# Killing pairing, derivatives, adjoint action


@lru_cache(maxsize=None)
def _pair_letters(rs: RootSystem, left: Tuple[int, ...], right: Tuple[int, ...]) -> Fraction:
    if not left:
        return Fraction(1)
    a = left[0]
    rest = left[1:]
    total = Fraction(0)
    for b, k in rs.killing_partners[a]:
        c = right.count(b)
        if c:
            i = right.index(b)
            total += c * k * _pair_letters(rs, rest, right[:i] + right[i + 1:])
    return total


def pair_monomials(rs: RootSystem, m: Monomial, n: Monomial) -> Fraction:
    if mono_degree(m) != mono_degree(n):
        return Fraction(0)
    return _pair_letters(rs, mono_letters(m), mono_letters(n))


def killing_pair_S(p: GPoly, q: GPoly) -> Fraction:
    """Extended Killing pairing on ``S(g)``."""
    rs = p.rs
    total = Fraction(0)
    for m, c in p.terms.items():
        dm = mono_degree(m)
        wm = p.monomial_weight(m)
        for n, d in q.terms.items():
            if mono_degree(n) != dm or any(x + y for x, y in zip(wm, q.monomial_weight(n))):
                continue
            total += c * d * pair_monomials(rs, m, n)
    return total


def _derive_letter(u: GPoly, x: int) -> GPoly:
    rs = u.rs
    partners = dict(rs.killing_partners[x])
    t: Dict[Monomial, Fraction] = {}
    for m, c in u.terms.items():
        for b, e in m:
            k = partners.get(b)
            if k:
                n = mono_div(m, b)
                s = t.get(n, 0) + c * e * k
                if s:
                    t[n] = s
                else:
                    t.pop(n, None)
    return GPoly(rs, t)


def directional_derivative(u: GPoly, p: GPoly) -> GPoly:
    """``d_p u``: the adjoint of multiplication by ``p`` under the pairing."""
    out = GPoly(u.rs)
    cache: Dict[Monomial, GPoly] = {(): u}

    def deriv(m: Monomial) -> GPoly:
        if m in cache:
            return cache[m]
        a = m[0][0]
        r = _derive_letter(deriv(mono_div(m, a)), a)
        cache[m] = r
        return r

    for m, c in p.terms.items():
        if mono_degree(m) > max(u.degrees(), default=-1):
            continue
        out = out + deriv(m) * c
    return out


def ad_action(x, p: GPoly) -> GPoly:
    """Derivation extending ``ad x`` to ``S(g)``; ``x`` is a letter or a linear dict."""
    rs = p.rs
    xs = {x: Fraction(1)} if isinstance(x, int) else dict(x)
    t: Dict[Monomial, Fraction] = {}
    for a, ca in xs.items():
        row = rs.brackets[a]
        for m, c in p.terms.items():
            for b, e in m:
                br = row[b]
                if not br:
                    continue
                rest = mono_div(m, b)
                for d, v in br.items():
                    k = mono_mul(rest, ((d, 1),))
                    s = t.get(k, 0) + ca * c * e * v
                    if s:
                        t[k] = s
                    else:
                        t.pop(k, None)
    return GPoly(rs, t)


def is_n_invariant_weight(p: GPoly, lam: Weight) -> bool:
    """``p`` lies in ``S(g)^n(lam)``: killed by every simple ``ad e_i`` and of weight ``lam``."""
    rs = p.rs
    target = tuple(int(x) for x in lam.root) if lam.in_root_lattice() else None
    if target is None or (p.terms and p.weights() != {target}):
        return False
    return all(ad_action(a, p).is_zero() for a in simple_letters(rs))


def simple_letters(rs: RootSystem) -> List[int]:
    return [rs.root_index[tuple(1 if j == i else 0 for j in range(rs.rank))] for i in range(rs.rank)]


def negative_simple_letters(rs: RootSystem) -> List[int]:
    return [rs.root_index[tuple(-1 if j == i else 0 for j in range(rs.rank))] for i in range(rs.rank)]


def substitute(p: GPoly, images: Mapping[int, GPoly]) -> GPoly:
    """Algebra map sending each letter ``a`` to ``images[a]``."""
    rs = p.rs
    powers: Dict[Tuple[int, int], GPoly] = {}

    def power(a, e):
        if (a, e) not in powers:
            powers[(a, e)] = images[a] ** e
        return powers[(a, e)]

    out = GPoly(rs)
    for m, c in p.terms.items():
        term = GPoly.const(rs, c)
        for a, e in m:
            term = term * power(a, e)
        out = out + term
    return out


def dual_letter(rs: RootSystem, a: int) -> GPoly:
    """Killing-dual basis element ``x^a`` as a degree-one polynomial."""
    return GPoly.linear(rs, rs.dual_basis[a])


# ----------------------------------------------------------------------------
# Invariants and harmonicity


@dataclass
class InvariantSet:
    generators: List[GPoly]
    degrees: List[int]


class InvariantError(ValueError):
    pass


DEFINING_MODULES = {
    "A": lambda n: [1] + [0] * (n - 1),
    "B": lambda n: [1] + [0] * (n - 1),
    "C": lambda n: [1] + [0] * (n - 1),
    "G": lambda n: [1, 0],
}


def defining_weight(rs: RootSystem) -> Weight:
    fam = rs.datum.family
    if fam not in DEFINING_MODULES:
        raise InvariantError(f"no trace-power realization of invariants for type {rs.name}")
    return rs.weight(DEFINING_MODULES[fam](rs.rank))


def trace_power(V: Irrep, m: int) -> GPoly:
    """``y -> tr(pi(y)^m)`` as an element of ``S(g)`` (in Killing-dual letters)."""
    rs = V.rs
    # generic matrix: entry (r, c) = sum_a t_a pi(x_a)[r, c]; t_a encoded by letter a
    gen: Dict[Tuple[int, int], GPoly] = {}
    for a, M in enumerate(V.matrices):
        for r, c, v in M.entries():
            gen[(r, c)] = gen.get((r, c), GPoly(rs)) + GPoly.letter(rs, a, v)
    rows: Dict[int, List[Tuple[int, GPoly]]] = {}
    for (r, c), p in gen.items():
        rows.setdefault(r, []).append((c, p))
    power = {(r, r): GPoly.const(rs) for r in range(V.dim)}
    for _ in range(m - 1):
        nxt: Dict[Tuple[int, int], GPoly] = {}
        for (r, k), p in power.items():
            for c, q in rows.get(k, ()):
                nxt[(r, c)] = nxt.get((r, c), GPoly(rs)) + p * q
        power = {k: v for k, v in nxt.items() if v}
    tr = GPoly(rs)
    for (r, k), p in power.items():
        for c, q in rows.get(k, ()):
            if c == r:
                tr = tr + p * q
    images = {a: dual_letter(rs, a) for a in range(rs.dim)}
    return substitute(tr, images)


def _products_of_degree(gens: List[Tuple[int, GPoly]], deg: int) -> List[GPoly]:
    """All products of the given generators with total degree ``deg``."""
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(acc)
            return
        for i in range(start, len(gens)):
            d, g = gens[i]
            if d <= remaining:
                rec(i, remaining - d, acc * g)

    if gens:
        rec(0, deg, GPoly.const(gens[0][1].rs))
    return out


def invariant_generators(rs: RootSystem, V_def: Irrep, allow_g2_sextic: bool = False) -> InvariantSet:
    if rs.datum.family == "G" and not allow_g2_sextic:
        raise InvariantError("G2 degree-6 trace expansion is disabled (set allow_g2_sextic)")
    gens: List[Tuple[int, GPoly]] = []
    for d in rs.invariant_degrees:
        p = trace_power(V_def, d)
        if p.is_zero():
            raise InvariantError(f"trace power of degree {d} vanishes identically in V_{V_def.highest_weight}")
        # must not be a polynomial in the lower generators
        basis = IncrementalBasis()
        for q in _products_of_degree(gens, d):
            basis.add(q.terms)
        if basis.contains(p.terms):
            raise InvariantError(f"trace power of degree {d} is decomposable")
        gens.append((d, p))
    return InvariantSet([g for _, g in gens], [d for d, _ in gens])


def is_harmonic(p: GPoly, J: InvariantSet) -> bool:
    return all(directional_derivative(p, g).is_zero() for g in J.generators)
