"""Enveloping-algebra side, realized through the action on a highest weight vector.

The matrix coefficient ``f(u) = v*(pi(u) v_nu)`` only sees ``U(g) v_nu``, so
the filtration ``U_m(g)`` is probed through ``W_m = U_m(g) v_nu`` and ``f`` is
the coordinate of the lowest weight basis vector.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .linalg import IncrementalBasis, Vec, axpy
from .polyalg import GPoly, Monomial, dual_letter, mono_degree, mono_div, substitute
from .repbuild import DEFAULT_SIZE_CAP, Irrep, act_word, build_irrep, invariant_pairing_value
from .rootsys import RootSystem, Weight, dual_weight

DEFAULT_TAU_DEGREE = 10


class CodegreeError(ValueError):
    pass


@dataclass
class FiltrationSpace:
    level: int
    basis: List[Vec]
    dim_by_weight: Dict[Tuple[int, ...], int] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass
class MatrixCoeffFunctional:
    """``f(u) = v*_{nu*}(pi_nu(u) v_nu)``; ``v*`` reads the lowest basis coordinate."""

    module: Irrep

    @property
    def rs(self) -> RootSystem:
        return self.module.rs

    @property
    def nu(self) -> Weight:
        return self.module.highest_weight

    @property
    def lam(self) -> Weight:
        return self.nu + dual_weight(self.rs, self.nu)

    def of_vector(self, v: Vec) -> Fraction:
        return v.get(self.module.lw_index, Fraction(0))

    def __call__(self, word: Sequence[int]) -> Fraction:
        return self.of_vector(act_word(self.module, word, self.module.hw_vector))


def functional_for(rs: RootSystem, nu: Weight, size_cap: int = DEFAULT_SIZE_CAP,
                   module: Optional[Irrep] = None) -> MatrixCoeffFunctional:
    return MatrixCoeffFunctional(module if module is not None else build_irrep(rs, nu, size_cap))


def filtration(F: MatrixCoeffFunctional, max_level: Optional[int] = None) -> Iterator[FiltrationSpace]:
    """Yield ``W_0, W_1, ...`` until ``W_m`` is the whole module (or ``max_level``)."""
    V = F.module
    per_weight: Dict[Tuple[int, ...], IncrementalBasis] = {}
    basis: List[Vec] = []
    counts: Dict[Tuple[int, ...], int] = {}

    def add(v: Vec) -> bool:
        w = V.weight_of[next(iter(v))]
        new, _ = per_weight.setdefault(w, IncrementalBasis()).add(v)
        if new:
            basis.append(v)
            counts[w] = counts.get(w, 0) + 1
        return new

    fresh = [V.hw_vector]
    add(V.hw_vector)
    level = 0
    yield FiltrationSpace(level, list(basis), dict(counts))
    while len(basis) < V.dim and (max_level is None or level < max_level):
        level += 1
        nxt = []
        for v in fresh:
            for M in V.matrices:
                u = M.apply(v)
                for comp in V.weight_components(u).values():
                    if add(comp):
                        nxt.append(comp)
        fresh = nxt
        yield FiltrationSpace(level, list(basis), dict(counts))


def codegree(F: MatrixCoeffFunctional) -> int:
    """Least ``m`` with ``f`` nonzero on ``U_m(g)``; equivalently ``W_m`` reaches the lowest line."""
    if F.nu.is_zero():
        raise CodegreeError("nu = 0: the functional vanishes identically")
    lw = F.module.weight_of[F.module.lw_index]
    for W in filtration(F):
        if W.dim_by_weight.get(lw):
            return W.level
    raise AssertionError("filtration never reached the lowest weight")  # irreducibility


# ----------------------------------------------------------------------------
# Words of prescribed total weight


def words_of_weight(rs: RootSystem, length: int, target: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """All letter tuples of ``length`` whose root weights sum to ``target`` (root coords)."""
    target = tuple(target)
    max_h = max(rs.heights)
    roots = rs.letter_root

    def rec(prefix, weight, remaining):
        if remaining == 0:
            if weight == target:
                yield tuple(prefix)
            return
        gap = sum(t - w for t, w in zip(target, weight))
        if abs(gap) > remaining * max_h:
            return
        for a in range(rs.dim):
            r = roots[a]
            nw = tuple(w + x for w, x in zip(weight, r))
            prefix.append(a)
            yield from rec(prefix, nw, remaining - 1)
            prefix.pop()

    yield from rec([], (0,) * rs.rank, length)


def _word_values(F: MatrixCoeffFunctional, k: int) -> Dict[Tuple[int, ...], Fraction]:
    """``f`` on every length-``k`` word of the right weight (suffix-shared evaluation)."""
    V = F.module
    rs = F.rs
    target = tuple(-int(x) for x in F.lam.root)
    max_h = max(rs.heights)
    out: Dict[Tuple[int, ...], Fraction] = {}

    def rec(suffix, vec, weight, remaining):
        if remaining == 0:
            if weight == target:
                val = F.of_vector(vec)
                if val:
                    out[tuple(suffix)] = val
            return
        gap = sum(t - w for t, w in zip(target, weight))
        if abs(gap) > remaining * max_h:
            return
        for a in range(rs.dim):
            u = V.matrices[a].apply(vec)
            if not u:
                continue
            nw = tuple(w + x for w, x in zip(weight, rs.letter_root[a]))
            rec((a,) + suffix, u, nw, remaining - 1)

    rec((), V.hw_vector, (0,) * rs.rank, k)
    return out


def extract_fk(F: MatrixCoeffFunctional, k: int, check_codegree: bool = True) -> GPoly:
    """``f_(k)`` with ``f(x_1 ... x_k) = (f_(k), x_1 ... x_k)`` via the Killing-dual basis."""
    if check_codegree and k != codegree(F):
        raise CodegreeError(f"k = {k} is not the codegree of f")
    rs = F.rs
    values = _word_values(F, k)
    coords = GPoly(rs)
    scale_k = Fraction(1, factorial(k))
    for word, val in values.items():
        m: Dict[int, int] = {}
        for a in word:
            m[a] = m.get(a, 0) + 1
        coords = coords + GPoly(rs, {tuple(sorted(m.items())): val * scale_k})
    images = {a: dual_letter(rs, a) for a in range(rs.dim)}
    return substitute(coords, images)


def word_values(F: MatrixCoeffFunctional, k: int) -> Dict[Tuple[int, ...], Fraction]:
    """Nonzero values of ``f`` on words of length ``k`` (weight-pruned)."""
    return _word_values(F, k)


# ----------------------------------------------------------------------------
# Symmetrization


class TauEvaluator:
    """Memoized ``pi(tau(Xi)) v`` for monomials ``Xi`` applied to a fixed vector."""

    def __init__(self, V: Irrep, v: Vec, degree_bound: int = DEFAULT_TAU_DEGREE):
        self.V = V
        self.v = v
        self.degree_bound = degree_bound
        self._memo: Dict[Monomial, Vec] = {(): dict(v)}

    def __call__(self, m: Monomial) -> Vec:
        k = mono_degree(m)
        if k > self.degree_bound:
            raise ValueError(f"monomial degree {k} exceeds tau degree bound {self.degree_bound}")
        return self._eval(m)

    def _eval(self, m: Monomial) -> Vec:
        if m in self._memo:
            return self._memo[m]
        k = mono_degree(m)
        out: Vec = {}
        # average over orderings: the leftmost letter is a with probability m_a / k
        for a, e in m:
            inner = self._eval(mono_div(m, a))
            if inner:
                axpy(out, Fraction(e, k), self.V.matrices[a].apply(inner))
        self._memo[m] = out
        return out


def tau_apply(V: Irrep, xi: Monomial, v: Vec, degree_bound: int = DEFAULT_TAU_DEGREE) -> Vec:
    """``pi(tau(xi)) v``: average of ``act_word`` over the distinct orderings of ``xi``."""
    return TauEvaluator(V, v, degree_bound)(xi)


def tau_apply_bruteforce(V: Irrep, xi: Monomial, v: Vec) -> Vec:
    letters = [a for a, e in xi for _ in range(e)]
    perms = set(itertools.permutations(letters))
    out: Vec = {}
    for p in perms:
        axpy(out, Fraction(1, len(perms)), act_word(V, p, v))
    return out


# ----------------------------------------------------------------------------
# The naive functional


def negative_monomials_of_weight(rs: RootSystem, target: Sequence[int]) -> List[Monomial]:
    """Monomials in negative-root letters with root weight ``target`` (all coords <= 0)."""
    target = tuple(target)
    letters = [rs.root_index[tuple(-x for x in r)] for r in rs.positive_roots]
    out: List[Monomial] = []

    def rec(i, remaining, acc):
        if not any(remaining):
            out.append(tuple(sorted(acc)))
            return
        if i == len(letters):
            return
        r = rs.positive_roots[i]
        e = 0
        rem = remaining
        while all(x >= 0 for x in rem):
            rec(i + 1, rem, acc + ([(letters[i], e)] if e else []))
            e += 1
            rem = tuple(x - y for x, y in zip(rem, r))

    rec(0, tuple(-x for x in target), [])
    return sorted(out, key=lambda m: (mono_degree(m), m))


def flip_monomial(rs: RootSystem, m: Monomial) -> Monomial:
    return tuple(sorted((rs.root_index[tuple(-x for x in rs.letter_root[a])], e) for a, e in m))


def monomial_norm(rs: RootSystem, m: Monomial) -> Fraction:
    """``(flip(m), m)`` for a monomial in root letters: ``prod a! kappa^a``."""
    out = Fraction(1)
    for a, e in m:
        out *= factorial(e) * rs.killing_root_pairs[rs.letter_root[a]] ** e
    return out


def lw_naive_pairings(V: Irrep) -> Dict[Monomial, Fraction]:
    """``(pi(tau(Xi)) v_nu, v_nu)`` for every ``Xi`` in ``S(n_-)`` of weight ``-2 nu``."""
    rs = V.rs
    nu = V.highest_weight
    target = tuple(-2 * int(x) for x in nu.root)
    monos = negative_monomials_of_weight(rs, target)
    bound = max((mono_degree(m) for m in monos), default=0)
    tau = TauEvaluator(V, V.hw_vector, degree_bound=bound)
    out = {}
    for m in monos:
        val = invariant_pairing_value(V, tau(m))
        if val:
            out[m] = val
    return out


def lw_naive_f(rs: RootSystem, xi: Weight, size_cap: int = DEFAULT_SIZE_CAP,
               module: Optional[Irrep] = None) -> GPoly:
    """The element ``f_nu`` of ``S(n)`` with ``(f_nu, Xi) = (pi_nu(tau Xi) v_nu, v_nu)``."""
    if not xi.is_integral() or not xi.is_dominant():
        raise ValueError(f"xi = {xi} must be dominant integral")
    nu = xi + dual_weight(rs, xi)
    V = module if module is not None else build_irrep(rs, nu, size_cap)
    if V.highest_weight != nu:
        raise ValueError("module does not have highest weight xi + xi*")
    terms = {}
    for m, val in lw_naive_pairings(V).items():
        terms[flip_monomial(rs, m)] = val / monomial_norm(rs, m)
    return GPoly(rs, terms)
