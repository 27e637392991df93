"""Root systems, weights, Chevalley bases and weight multiplicities.

Conventions
-----------
* Cartan matrix ``a[i][j] = <alpha_i^vee, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)``
  with Bourbaki node numbering.
* Roots are integer tuples in the simple-root basis.  Weights carry both
  fundamental and simple-root coordinates (:class:`Weight`).
* The Lie algebra basis (the "letters" of the symmetric algebra) is ordered
  positive roots, then the simple coroots ``h_1..h_l``, then negative roots;
  positive roots are sorted by height and then by descending coordinates.
* Structure constant signs follow the extraspecial-pair convention:
  ``e_gamma = [e_alpha, e_beta] / (p + 1)`` for the extraspecial pair of each
  non-simple positive ``gamma`` and ``e_{-gamma} = -[e_{-alpha}, e_{-beta}] / (p + 1)``.
  All remaining constants are read off a faithful realization (the adjoint
  module built by :mod:`centun.hwmodule`), so they are forced by the Jacobi
  identity rather than tabulated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .hwmodule import build_hw_module
from .linalg import SparseMatrix, inverse_dense

SIGN_CONVENTION = "extraspecial-v1"

Root = Tuple[int, ...]


class RootSystemError(ValueError):
    pass


# ----------------------------------------------------------------------------
# Cartan data


def cartan_matrix(family: str, rank: int) -> List[List[int]]:
    family = family.upper()
    n = rank
    if n < 1:
        raise RootSystemError(f"rank must be positive, got {rank}")

    def chain():
        return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]

    if family == "A":
        return chain()
    if family == "B":
        if n < 2:
            raise RootSystemError("type B needs rank >= 2")
        a = chain()
        a[n - 1][n - 2] = -2
        return a
    if family == "C":
        if n < 2:
            raise RootSystemError("type C needs rank >= 2")
        a = chain()
        a[n - 2][n - 1] = -2
        return a
    if family == "D":
        if n < 4:
            raise RootSystemError("type D needs rank >= 4")
        a = chain()
        a[n - 1][n - 2] = a[n - 2][n - 1] = 0
        a[n - 1][n - 3] = a[n - 3][n - 1] = -1
        return a
    if family == "E":
        if n not in (6, 7, 8):
            raise RootSystemError("type E needs rank 6, 7 or 8")
        # Bourbaki: 1-3-4-5-6(-7-8), 2 attached to 4
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
        return a
    if family == "F":
        if n != 4:
            raise RootSystemError("type F needs rank 4")
        return [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    if family == "G":
        if n != 2:
            raise RootSystemError("type G needs rank 2")
        return [[2, -3], [-1, 2]]
    raise RootSystemError(f"unknown family {family!r}")


INVARIANT_DEGREES = {
    "A": lambda n: list(range(2, n + 2)),
    "B": lambda n: list(range(2, 2 * n + 1, 2)),
    "C": lambda n: list(range(2, 2 * n + 1, 2)),
    "D": lambda n: sorted(list(range(2, 2 * n - 1, 2)) + [n]),
    "E": lambda n: {6: [2, 5, 6, 8, 9, 12], 7: [2, 6, 8, 10, 12, 14, 18],
                    8: [2, 8, 12, 14, 18, 20, 24, 30]}[n],
    "F": lambda n: [2, 6, 8, 12],
    "G": lambda n: [2, 6],
}


@dataclass(frozen=True)
class CartanDatum:
    family: str
    rank: int
    cartan_matrix: Tuple[Tuple[int, ...], ...]

    @classmethod
    def of(cls, family: str, rank: int) -> "CartanDatum":
        a = cartan_matrix(family, rank)
        return cls(family.upper(), rank, tuple(tuple(r) for r in a))

    def __post_init__(self):
        a = self.cartan_matrix
        n = self.rank
        if len(a) != n or any(len(r) != n for r in a):
            raise RootSystemError("Cartan matrix shape does not match rank")
        for i in range(n):
            if a[i][i] != 2:
                raise RootSystemError("Cartan matrix diagonal must be 2")
            for j in range(n):
                if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                    raise RootSystemError(f"invalid Cartan entry at ({i}, {j})")
        if [list(r) for r in a] != cartan_matrix(self.family, n):
            raise RootSystemError(f"matrix does not match the table for {self.family}{n}")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


# ----------------------------------------------------------------------------
# Weights


@dataclass(frozen=True)
class Weight:
    """A weight with exact fundamental and simple-root coordinates."""

    fund: Tuple[Fraction, ...]
    root: Tuple[Fraction, ...]

    def is_integral(self) -> bool:
        return all(Fraction(x).denominator == 1 for x in self.fund)

    def in_root_lattice(self) -> bool:
        return all(Fraction(x).denominator == 1 for x in self.root)

    def is_dominant(self) -> bool:
        return all(x >= 0 for x in self.fund)

    def is_zero(self) -> bool:
        return not any(self.fund)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.fund, other.fund)),
                      tuple(a + b for a, b in zip(self.root, other.root)))

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.fund), tuple(-a for a in self.root))

    def __mul__(self, k) -> "Weight":
        return Weight(tuple(k * a for a in self.fund), tuple(k * a for a in self.root))

    __rmul__ = __mul__

    @property
    def fund_int(self) -> Tuple[int, ...]:
        if not self.is_integral():
            raise ValueError(f"weight {self} is not integral")
        return tuple(int(x) for x in self.fund)

    @property
    def height(self) -> Fraction:
        return sum(self.root, Fraction(0))

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.fund) + ")"


# ----------------------------------------------------------------------------
# Root system


class RootSystem:
    """Root data, Chevalley structure constants and Killing form of a simple type.

    Instances are immutable after construction (lazy caches aside) and compare
    by identity.
    """

    def __init__(self, datum: CartanDatum):
        self.datum = datum
        a = datum.cartan_matrix
        n = self.rank = datum.rank
        self.cartan = a
        self._cartan_inv = inverse_dense(a)
        # (alpha_i, alpha_i) / 2 with the shortest simple root normalized to 1
        self.root_len = _symmetrizer(a)
        self.sym_form = [[Fraction(self.root_len[i] * a[i][j]) for j in range(n)] for i in range(n)]

        self.positive_roots = _positive_roots(a)
        self.heights = [sum(r) for r in self.positive_roots]
        self.roots = self.positive_roots + [tuple(-x for x in r) for r in self.positive_roots]
        self._root_set = set(self.roots)
        self.invariant_degrees = INVARIANT_DEGREES[datum.family](n)

        npos = len(self.positive_roots)
        self.n_pos = npos
        self.dim = 2 * npos + n
        # letter indices
        self.letter_root: List[Root] = (
            list(self.positive_roots) + [(0,) * n] * n + [tuple(-x for x in r) for r in self.positive_roots]
        )
        self.root_index: Dict[Root, int] = {}
        for k, r in enumerate(self.positive_roots):
            self.root_index[r] = k
            self.root_index[tuple(-x for x in r)] = npos + n + k
        self.cartan_letters = list(range(npos, npos + n))

        self.extraspecial = _extraspecial_pairs(self.positive_roots, self._root_set)
        self.structure_constants: Dict[Tuple[Root, Root], int] = {}
        self._realize()
        self._build_brackets()
        self._build_killing()
        self.rho = self.weight([1] * n)
        if n <= 4:
            _ = self.weyl_group

    # -- basic data -----------------------------------------------------------

    @property
    def name(self) -> str:
        return self.datum.name

    def is_root(self, r: Sequence[int]) -> bool:
        return tuple(r) in self._root_set

    def height(self, r: Sequence) -> Fraction:
        return sum(r, 0)

    def letter_name(self, a: int) -> str:
        if a in self.cartan_letters:
            return f"h{a - self.n_pos + 1}"
        return ",".join(str(x) for x in self.letter_root[a])

    def letter_sort_key(self, a: int):
        r = self.letter_root[a]
        cart = a - self.n_pos if a in self.cartan_letters else -1
        return (sum(r), tuple(-x for x in r), cart)

    def pairing(self, mu_fund: Sequence, root: Sequence) -> Fraction:
        """``<mu, alpha^vee>`` for a root ``alpha`` in simple-root coordinates."""
        lr = self.root_length(root)
        return sum((Fraction(mu_fund[i]) * root[i] * self.root_len[i] for i in range(self.rank)),
                   Fraction(0)) / lr

    def root_length(self, root: Sequence) -> Fraction:
        """``(alpha, alpha) / 2`` in the normalized symmetric form."""
        return self.inner_root(root, root) / 2

    def inner_root(self, x: Sequence, y: Sequence) -> Fraction:
        n = self.rank
        return sum((Fraction(x[i]) * self.sym_form[i][j] * y[j] for i in range(n) for j in range(n)
                    if x[i] and y[j]), Fraction(0))

    def coroot_coords(self, root: Sequence[int]) -> Tuple[int, ...]:
        """``h_root`` in the basis ``h_1..h_l`` of simple coroots."""
        lr = self.root_length(root)
        out = []
        for i in range(self.rank):
            c = Fraction(root[i]) * self.root_len[i] / lr
            assert c.denominator == 1
            out.append(int(c))
        return tuple(out)

    # -- weights --------------------------------------------------------------

    def weight(self, fund: Sequence) -> Weight:
        fund = tuple(Fraction(x) for x in fund)
        if len(fund) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(fund)}")
        root = tuple(sum((self._cartan_inv[i][j] * fund[j] for j in range(self.rank)), Fraction(0))
                     for i in range(self.rank))
        return Weight(fund, root)

    def weight_from_root(self, root: Sequence) -> Weight:
        root = tuple(Fraction(x) for x in root)
        fund = tuple(sum((self.cartan[j][i] * root[i] for i in range(self.rank)), Fraction(0))
                     for j in range(self.rank))
        return Weight(fund, root)

    def fundamental(self, i: int) -> Weight:
        return self.weight([1 if j == i else 0 for j in range(self.rank)])

    @property
    def highest_root(self) -> Weight:
        return self.weight_from_root(self.positive_roots[-1])

    def inner(self, mu: Weight, nu: Weight) -> Fraction:
        return self.inner_root(mu.root, nu.root)

    def killing_inner(self, mu: Weight, nu: Weight) -> Fraction:
        """Form on h* dual to the Killing form on h."""
        x = mu.fund
        y = nu.fund
        n = self.rank
        return sum((x[i] * self._kh_inv[i][j] * y[j] for i in range(n) for j in range(n)), Fraction(0))

    # -- Weyl group -----------------------------------------------------------

    def reflect_fund(self, mu: Sequence, i: int) -> Tuple:
        """Simple reflection ``s_i`` on fundamental coordinates."""
        c = mu[i]
        if not c:
            return tuple(mu)
        return tuple(m - c * self.cartan[k][i] for k, m in enumerate(mu))

    @cached_property
    def weyl_group(self) -> List[Tuple[Tuple[int, ...], int]]:
        """All elements as (reduced word, sign), BFS order; word acts right to left."""
        rho = tuple([1] * self.rank)
        seen = {rho: ()}
        order = [rho]
        k = 0
        while k < len(order):
            mu = order[k]
            k += 1
            for i in range(self.rank):
                nu = self.reflect_fund(mu, i)
                if nu not in seen:
                    seen[nu] = (i,) + seen[mu]
                    order.append(nu)
        return [(seen[mu], (-1) ** len(seen[mu])) for mu in order]

    @cached_property
    def weyl_rho_images(self) -> List[Tuple[Tuple[int, ...], int]]:
        """Pairs ``(w rho, sign(w))`` in fundamental coordinates."""
        out = []
        for word, sign in self.weyl_group:
            out.append((self.act_word(word, tuple([1] * self.rank)), sign))
        return out

    def act_word(self, word: Sequence[int], mu: Sequence) -> Tuple:
        mu = tuple(mu)
        for i in reversed(word):
            mu = self.reflect_fund(mu, i)
        return mu

    def dominant_conjugate(self, mu: Sequence) -> Tuple[Tuple, int]:
        """Return ``(dominant representative, sign of the reflections used)``."""
        mu = tuple(mu)
        sign = 1
        while True:
            for i, c in enumerate(mu):
                if c < 0:
                    mu = self.reflect_fund(mu, i)
                    sign = -sign
                    break
            else:
                return mu, sign

    def orbit(self, mu: Sequence) -> List[Tuple]:
        start = tuple(mu)
        seen = {start}
        order = [start]
        k = 0
        while k < len(order):
            x = order[k]
            k += 1
            for i in range(self.rank):
                y = self.reflect_fund(x, i)
                if y not in seen:
                    seen.add(y)
                    order.append(y)
        return order

    # -- Chevalley realization ------------------------------------------------

    def _realize(self):
        """Fix root vectors in the adjoint module and read off all brackets."""
        theta = self.weight_from_root(self.positive_roots[-1]).fund_int
        adj = build_hw_module(self.cartan, theta)
        if adj.dim != self.dim:
            raise RootSystemError(f"adjoint module has dimension {adj.dim}, expected {self.dim}")
        n = self.rank
        mats: Dict[Root, SparseMatrix] = {}
        for i in range(n):
            r = tuple(1 if j == i else 0 for j in range(n))
            mats[r] = adj.E[i]
            mats[tuple(-x for x in r)] = adj.F[i]
        for gamma, (alpha, beta, p) in self.extraspecial.items():
            neg = lambda r: tuple(-x for x in r)
            mats[gamma] = mats[alpha].commutator(mats[beta]).scaled(Fraction(1, p + 1))
            mats[neg(gamma)] = mats[neg(alpha)].commutator(mats[neg(beta)]).scaled(Fraction(-1, p + 1))
        hmats = [adj.h_matrix(i) for i in range(n)]
        self._adjoint_mats = mats
        self._adjoint_h = hmats

        for phi in self.roots:
            for psi in self.roots:
                s = tuple(a + b for a, b in zip(phi, psi))
                br = mats[phi].commutator(mats[psi])
                if not any(s):
                    coh = self.coroot_coords(phi)
                    expect = SparseMatrix()
                    for i, c in enumerate(coh):
                        if c:
                            expect = expect + hmats[i].scaled(c)
                    if br != expect:
                        raise RootSystemError(f"[e_{phi}, e_{psi}] is not the coroot")
                elif s in self._root_set:
                    target = mats[s]
                    i, j, v = next(target.entries())
                    c = br.entry(i, j) / v
                    if c.denominator != 1 or br != target.scaled(c):
                        raise RootSystemError(f"bracket of {phi}, {psi} not proportional to e_{s}")
                    self.structure_constants[(phi, psi)] = int(c)
                elif not br.is_zero():
                    raise RootSystemError(f"[e_{phi}, e_{psi}] should vanish")

    def N(self, phi: Sequence[int], psi: Sequence[int]) -> int:
        return self.structure_constants.get((tuple(phi), tuple(psi)), 0)

    def _build_brackets(self):
        """``brackets[a][b]``: coefficients of ``[x_a, x_b]`` in the letter basis."""
        d = self.dim
        br: List[List[Dict[int, Fraction]]] = [[{} for _ in range(d)] for _ in range(d)]
        for a in range(d):
            ra = self.letter_root[a]
            for b in range(d):
                rb = self.letter_root[b]
                out: Dict[int, Fraction] = {}
                a_cart = a in self.cartan_letters
                b_cart = b in self.cartan_letters
                if a_cart and b_cart:
                    pass
                elif a_cart:
                    c = Fraction(self.pairing_root(rb, a - self.n_pos))
                    if c:
                        out[b] = c
                elif b_cart:
                    c = Fraction(self.pairing_root(ra, b - self.n_pos))
                    if c:
                        out[a] = -c
                else:
                    s = tuple(x + y for x, y in zip(ra, rb))
                    if not any(s):
                        for i, c in enumerate(self.coroot_coords(ra)):
                            if c:
                                out[self.n_pos + i] = Fraction(c)
                    elif s in self._root_set:
                        out[self.root_index[s]] = Fraction(self.N(ra, rb))
                br[a][b] = out
        self.brackets = br

    def pairing_root(self, root: Sequence[int], i: int) -> int:
        """``<root, alpha_i^vee>`` = ``alpha(h_i)``."""
        return sum(root[j] * self.cartan[i][j] for j in range(self.rank))

    def ad_matrix(self, a: int) -> SparseMatrix:
        return SparseMatrix({b: self.brackets[a][b] for b in range(self.dim)})

    def bracket(self, x: Dict[int, Fraction], y: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, v in self.brackets[a][b].items():
                    s = out.get(c, 0) + ca * cb * v
                    if s:
                        out[c] = s
                    else:
                        out.pop(c, None)
        return out

    def _build_killing(self):
        ads = [self.ad_matrix(a) for a in range(self.dim)]
        self._ads = ads
        K: Dict[Tuple[int, int], Fraction] = {}
        for a in range(self.dim):
            for b in range(a, self.dim):
                ra, rb = self.letter_root[a], self.letter_root[b]
                if any(x + y for x, y in zip(ra, rb)):
                    continue
                v = (ads[a] @ ads[b]).trace()
                if v:
                    K[(a, b)] = K[(b, a)] = v
        self.killing = K
        n = self.rank
        self.killing_h = [[K.get((self.n_pos + i, self.n_pos + j), Fraction(0)) for j in range(n)]
                          for i in range(n)]
        self._kh_inv = inverse_dense(self.killing_h)
        self.killing_root_pairs = {
            r: K[(self.root_index[r], self.root_index[tuple(-x for x in r)])] for r in self.roots
        }
        # partners[a] = [(b, (x_a, x_b)) ...]
        self.killing_partners = [[(b, K[(a, b)]) for b in range(self.dim) if (a, b) in K]
                                 for a in range(self.dim)]
        # Killing-dual basis: dual[a] = {b: coeff}
        dual: List[Dict[int, Fraction]] = []
        for a in range(self.dim):
            if a in self.cartan_letters:
                i = a - self.n_pos
                dual.append({self.n_pos + j: self._kh_inv[i][j] for j in range(n) if self._kh_inv[i][j]})
            else:
                r = self.letter_root[a]
                opp = self.root_index[tuple(-x for x in r)]
                dual.append({opp: 1 / self.killing_root_pairs[r]})
        self.dual_basis = dual

    def killing_value(self, a: int, b: int) -> Fraction:
        return self.killing.get((a, b), Fraction(0))

    # -- verification helpers (used by tests) ---------------------------------

    def jacobi_violations(self) -> int:
        bad = 0
        d = self.dim
        for a, b, c in itertools.combinations(range(d), 3):
            xa, xb, xc = {a: 1}, {b: 1}, {c: 1}
            s = {}
            for t in (self.bracket(xa, self.bracket(xb, xc)),
                      self.bracket(xb, self.bracket(xc, xa)),
                      self.bracket(xc, self.bracket(xa, xb))):
                for k, v in t.items():
                    s[k] = s.get(k, 0) + v
            if any(s.values()):
                bad += 1
        return bad

    def killing_invariance_violations(self) -> int:
        bad = 0
        d = self.dim
        for x in range(d):
            for y in range(d):
                for z in range(d):
                    v = sum((c * self.killing_value(k, z) for k, c in self.brackets[x][y].items()), Fraction(0))
                    v += sum((c * self.killing_value(y, k) for k, c in self.brackets[x][z].items()), Fraction(0))
                    if v:
                        bad += 1
        return bad

    def serialize(self) -> str:
        """Deterministic text dump: positive roots, then the structure-constant table."""
        lines = [f"# root system {self.name} signs={SIGN_CONVENTION}", f"positive_roots {self.n_pos}"]
        for r, h in zip(self.positive_roots, self.heights):
            lines.append(" ".join(str(x) for x in r) + f"  height={h}")
        lines.append(f"structure_constants {len(self.structure_constants)}")
        for (phi, psi) in sorted(self.structure_constants, key=lambda k: (self._rkey(k[0]), self._rkey(k[1]))):
            lines.append(f"[{','.join(map(str, phi))}] [{','.join(map(str, psi))}] "
                         f"{self.structure_constants[(phi, psi)]}")
        return "\n".join(lines) + "\n"

    def _rkey(self, r):
        return self.root_index[r]


def _symmetrizer(a) -> List[Fraction]:
    """Half squared lengths of simple roots, shortest normalized to 1."""
    n = len(a)
    d: List[Optional[Fraction]] = [None] * n
    d[0] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if d[i] is not None and d[j] is None and a[i][j] != 0:
                    # d_i a_ij = d_j a_ji
                    d[j] = d[i] * a[i][j] / a[j][i]
                    changed = True
    m = min(d)
    return [x / m for x in d]


def _positive_roots(a) -> List[Root]:
    n = len(a)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                pair = sum(beta[j] * a[i][j] for j in range(n))
                q = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        q += 1
                    else:
                        break
                p = q - pair
                if p > 0:
                    up = tuple(beta[j] + (1 if j == i else 0) for j in range(n))
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=lambda r: (sum(r), tuple(-x for x in r)))


def _extraspecial_pairs(pos: List[Root], root_set) -> Dict[Root, Tuple[Root, Root, int]]:
    """For each non-simple positive gamma: (alpha, beta, p) with alpha minimal."""
    out = {}
    for gamma in pos:
        if sum(gamma) == 1:
            continue
        for alpha in pos:
            beta = tuple(g - x for g, x in zip(gamma, alpha))
            if beta in root_set and all(x >= 0 for x in beta):
                p = 0
                while tuple(b - (p + 1) * x for b, x in zip(beta, alpha)) in root_set:
                    p += 1
                out[gamma] = (alpha, beta, p)
                break
    return out


_CACHE: Dict[Tuple[str, int], RootSystem] = {}


def build_root_system(datum: CartanDatum | str, rank: int | None = None) -> RootSystem:
    """Build (and memoize) the root system of a Cartan datum or a name like ``"A2"``."""
    if isinstance(datum, str):
        if rank is None:
            datum, rank = datum[0], int(datum[1:])
        datum = CartanDatum.of(datum, rank)
    key = (datum.family, datum.rank)
    if key not in _CACHE:
        _CACHE[key] = RootSystem(datum)
    return _CACHE[key]


# ----------------------------------------------------------------------------
# Weight combinatorics


def _require_dominant_integral(lam: Weight):
    if not lam.is_integral() or not lam.is_dominant():
        raise ValueError(f"weight {lam} must be dominant integral")


def dual_weight(rs: RootSystem, lam: Weight) -> Weight:
    """Highest weight of the dual module, ``-w0 lam``."""
    _require_dominant_integral(lam)
    mu, _ = rs.dominant_conjugate(tuple(-x for x in lam.fund))
    return rs.weight(mu)


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    _require_dominant_integral(lam)
    lr = lam + rs.rho
    num = Fraction(1)
    for r in rs.positive_roots:
        rw = rs.weight_from_root(r)
        num *= rs.inner(lr, rw) / rs.inner(rs.rho, rw)
    assert num.denominator == 1
    return int(num)


_MULT_CACHE: Dict[Tuple[int, Tuple[int, ...]], Dict[Tuple[int, ...], int]] = {}


def weight_multiplicities(rs: RootSystem, lam: Weight) -> Dict[Tuple[int, ...], int]:
    """All weights of ``V_lam`` (fundamental coordinates) with Freudenthal multiplicities."""
    _require_dominant_integral(lam)
    top = lam.fund_int
    key = (id(rs), top)
    if key in _MULT_CACHE:
        return _MULT_CACHE[key]
    n = rs.rank
    alphas = [tuple(rs.cartan[k][j] for k in range(n)) for j in range(n)]
    pos_fund = [rs.weight_from_root(r).fund_int for r in rs.positive_roots]
    top_root = lam.root

    def is_weight(mu):
        dom, _ = rs.dominant_conjugate(mu)
        diff = [a - b for a, b in zip(top_root, rs.weight(dom).root)]
        return all(x.denominator == 1 and x >= 0 for x in diff)

    # BFS by depth
    order = [top]
    seen = {top}
    k = 0
    while k < len(order):
        mu = order[k]
        k += 1
        for j in range(n):
            nu = tuple(m - a for m, a in zip(mu, alphas[j]))
            if nu not in seen and is_weight(nu):
                seen.add(nu)
                order.append(nu)

    def ip(x, y):
        return rs.inner(rs.weight(x), rs.weight(y))

    rho = tuple([1] * n)
    lr = tuple(a + b for a, b in zip(top, rho))
    c_top = ip(lr, lr)
    mult: Dict[Tuple[int, ...], int] = {top: 1}
    pos_w = [(pf, rs.weight(pf)) for pf in pos_fund]
    for mu in order[1:]:
        dom, _ = rs.dominant_conjugate(mu)
        if dom in mult and dom != mu:
            mult[mu] = mult[dom]
            continue
        s = Fraction(0)
        mu_w = rs.weight(mu)
        for pf, aw in pos_w:
            step = 1
            while True:
                nu = tuple(m + step * a for m, a in zip(mu, pf))
                m_nu = mult.get(nu)
                if m_nu is None:
                    if nu not in seen:
                        break
                    m_nu = _late_mult(rs, nu, mult)
                s += m_nu * rs.inner(mu_w + step * aw, aw)
                step += 1
        mr = tuple(a + b for a, b in zip(mu, rho))
        val = 2 * s / (c_top - ip(mr, mr))
        assert val.denominator == 1
        mult[mu] = int(val)
    _MULT_CACHE[key] = mult
    return mult


def _late_mult(rs, nu, mult):
    dom, _ = rs.dominant_conjugate(nu)
    return mult[dom]


def freudenthal_mult(rs: RootSystem, lam: Weight, mu: Weight) -> int:
    """``dim V_lam(mu)``; zero off the weight support."""
    _require_dominant_integral(lam)
    if not mu.is_integral():
        return 0
    diff = lam - mu
    if not diff.in_root_lattice():
        return 0
    return weight_multiplicities(rs, lam).get(mu.fund_int, 0)


def max_weight_multiplicity(rs: RootSystem, xi: Weight) -> int:
    return max(weight_multiplicities(rs, xi).values())
