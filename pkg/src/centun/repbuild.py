"""Explicit irreducible modules, tensor products and the Cartan projection."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .hwmodule import HWModule, ModuleTooLarge, build_hw_module
from .linalg import SparseMatrix, Vec, axpy, det_dense, format_fraction, scale
from .rootsys import (SIGN_CONVENTION, RootSystem, Weight, dual_weight,
                      weight_multiplicities, weyl_dimension)

DEFAULT_SIZE_CAP = 512
CACHE_FORMAT = "centun-irrep/1"


class NotSelfDual(ValueError):
    pass


@dataclass
class Irrep:
    """``V_lambda`` with exact matrices for every letter of ``g``.

    Basis vectors are indexed ``0..dim-1``; index 0 is the highest weight
    vector and ``lw_index`` the lowest.  ``matrices[a]`` is the action of
    letter ``a`` (see :class:`~centun.rootsys.RootSystem` for the ordering).
    """

    rs: RootSystem
    highest_weight: Weight
    weight_of: List[Tuple[int, ...]]
    weight_spaces: Dict[Tuple[int, ...], List[int]]
    words: List[Tuple[int, ...]]
    matrices: List[SparseMatrix]
    contravariant_grams: Dict[Tuple[int, ...], Dict[int, Dict[int, Fraction]]] = field(default_factory=dict)
    hw_index: int = 0
    lw_index: int = 0

    @property
    def dim(self) -> int:
        return len(self.weight_of)

    def e(self, i: int) -> SparseMatrix:
        return self.matrices[self.rs.root_index[_unit(self.rs.rank, i)]]

    def f(self, i: int) -> SparseMatrix:
        return self.matrices[self.rs.root_index[_unit(self.rs.rank, i, -1)]]

    def h(self, i: int) -> SparseMatrix:
        return self.matrices[self.rs.n_pos + i]

    def root_matrix(self, root: Sequence[int]) -> SparseMatrix:
        return self.matrices[self.rs.root_index[tuple(root)]]

    def basis_vector(self, k: int) -> Vec:
        return {k: Fraction(1)}

    @property
    def hw_vector(self) -> Vec:
        return {self.hw_index: Fraction(1)}

    @property
    def lw_vector(self) -> Vec:
        return {self.lw_index: Fraction(1)}

    def weight_components(self, v: Vec) -> Dict[Tuple[int, ...], Vec]:
        out: Dict[Tuple[int, ...], Vec] = {}
        for k, c in v.items():
            out.setdefault(self.weight_of[k], {})[k] = c
        return out


def _unit(n, i, sign=1):
    return tuple(sign if j == i else 0 for j in range(n))


def _root_matrices(rs: RootSystem, E: List[SparseMatrix], F: List[SparseMatrix],
                   H: List[SparseMatrix]) -> List[SparseMatrix]:
    mats: Dict[Tuple[int, ...], SparseMatrix] = {}
    for i in range(rs.rank):
        mats[_unit(rs.rank, i)] = E[i]
        mats[_unit(rs.rank, i, -1)] = F[i]
    for gamma, (alpha, beta, _p) in rs.extraspecial.items():
        neg = lambda r: tuple(-x for x in r)
        n_pos = rs.N(alpha, beta)
        n_neg = rs.N(neg(alpha), neg(beta))
        mats[gamma] = mats[alpha].commutator(mats[beta]).scaled(Fraction(1, n_pos))
        mats[neg(gamma)] = mats[neg(alpha)].commutator(mats[neg(beta)]).scaled(Fraction(1, n_neg))
    out: List[SparseMatrix] = []
    for a in range(rs.dim):
        if a in rs.cartan_letters:
            out.append(H[a - rs.n_pos])
        else:
            out.append(mats[rs.letter_root[a]])
    return out


def build_irrep(rs: RootSystem, lam: Weight, size_cap: int = DEFAULT_SIZE_CAP) -> Irrep:
    if not lam.is_integral() or not lam.is_dominant():
        raise ValueError(f"highest weight {lam} must be dominant integral")
    dim = weyl_dimension(rs, lam)
    if dim > size_cap:
        raise ModuleTooLarge(dim, size_cap)
    mod = build_hw_module(rs.cartan, lam.fund_int, max_dim=size_cap)
    return _irrep_from_module(rs, lam, mod)


def _irrep_from_module(rs: RootSystem, lam: Weight, mod: HWModule) -> Irrep:
    H = [mod.h_matrix(i) for i in range(rs.rank)]
    mats = _root_matrices(rs, mod.E, mod.F, H)
    lowest = dual_weight(rs, lam)
    lw = tuple(-x for x in lowest.fund_int)
    (lw_index,) = mod.spaces[lw]
    return Irrep(rs=rs, highest_weight=lam, weight_of=list(mod.weight_of),
                 weight_spaces={w: list(v) for w, v in mod.spaces.items()},
                 words=list(mod.words), matrices=mats, contravariant_grams=mod.grams,
                 hw_index=0, lw_index=lw_index)


def act_word(V: Irrep, word: Sequence[int], v: Vec) -> Vec:
    """Apply ``pi(x_{a_1}) ... pi(x_{a_k})`` to ``v`` (rightmost letter first)."""
    for k in v:
        if not 0 <= k < V.dim:
            raise ValueError(f"vector index {k} outside module of dimension {V.dim}")
    for a in reversed(word):
        if not 0 <= a < V.rs.dim:
            raise ValueError(f"letter {a} is not a basis element of g")
        v = V.matrices[a].apply(v)
        if not v:
            break
    return v


def invariant_pairing_value(V: Irrep, u: Vec, require_self_dual: bool = True) -> Fraction:
    """Invariant pairing ``(u, v_nu)`` normalized so the lowest basis vector gives 1."""
    if require_self_dual and dual_weight(V.rs, V.highest_weight) != V.highest_weight:
        raise NotSelfDual(f"V_{V.highest_weight} is not self-dual")
    return u.get(V.lw_index, Fraction(0))


# ----------------------------------------------------------------------------
# Irrep checks


def irrep_relation_violations(V: Irrep) -> List[str]:
    """Chevalley relations on every basis vector; returns failure descriptions."""
    rs = V.rs
    bad = []
    n = rs.rank
    for i in range(n):
        for j in range(n):
            c = V.e(i).commutator(V.f(j))
            expect = V.h(i) if i == j else SparseMatrix()
            if c != expect:
                bad.append(f"[e{i}, f{j}]")
        for j in range(n):
            c = V.h(j).commutator(V.e(i))
            if c != V.e(i).scaled(rs.pairing_root(_unit(n, i), j)):
                bad.append(f"[h{j}, e{i}]")
    for phi in rs.roots:
        for psi in rs.roots:
            s = tuple(a + b for a, b in zip(phi, psi))
            c = V.root_matrix(phi).commutator(V.root_matrix(psi))
            if not any(s):
                expect = SparseMatrix()
                for i, k in enumerate(rs.coroot_coords(phi)):
                    if k:
                        expect = expect + V.h(i).scaled(k)
            elif rs.is_root(s):
                expect = V.root_matrix(s).scaled(rs.N(phi, psi))
            else:
                expect = SparseMatrix()
            if c != expect:
                bad.append(f"[e{phi}, e{psi}]")
    return bad


def gram_determinants(V: Irrep) -> Dict[Tuple[int, ...], Fraction]:
    out = {}
    for w, g in V.contravariant_grams.items():
        idx = V.weight_spaces[w]
        out[w] = det_dense([[g[s][t] for t in idx] for s in idx])
    return out


# ----------------------------------------------------------------------------
# Tensor products


def tensor_decompose(rs: RootSystem, beta: Weight, gamma: Weight) -> Dict[Tuple[int, ...], int]:
    """Constituents of ``V_beta (x) V_gamma`` by Weyl-alternated weight sums."""
    for w in (beta, gamma):
        if not w.is_integral() or not w.is_dominant():
            raise ValueError(f"{w} must be dominant integral")
    out: Dict[Tuple[int, ...], int] = {}
    b = beta.fund_int
    for mu, m in weight_multiplicities(rs, gamma).items():
        shifted = tuple(x + y + 1 for x, y in zip(b, mu))
        dom, sign = rs.dominant_conjugate(shifted)
        if any(x == 0 for x in dom):
            continue
        nu = tuple(x - 1 for x in dom)
        out[nu] = out.get(nu, 0) + sign * m
    return {k: v for k, v in sorted(out.items()) if v}


@dataclass
class TensorModule:
    """``V_beta (x) V_gamma`` with Leibniz action; index ``(i, j)`` -> ``i * dim_gamma + j``."""

    left: Irrep
    right: Irrep
    matrices: List[SparseMatrix]
    casimir_matrix: SparseMatrix
    constituents: Dict[Tuple[int, ...], int]

    @property
    def dim(self) -> int:
        return self.left.dim * self.right.dim

    def pure(self, u: Vec, w: Vec) -> Vec:
        d = self.right.dim
        return {i * d + j: a * b for i, a in u.items() for j, b in w.items()}

    @property
    def top_weight(self) -> Weight:
        return self.left.highest_weight + self.right.highest_weight


def _kron_action(A: SparseMatrix, B: SparseMatrix, da: int, db: int) -> SparseMatrix:
    cols: Dict[int, Vec] = {}
    for i in range(da):
        ca = A.cols.get(i, {})
        for j in range(db):
            col: Vec = {}
            for r, v in ca.items():
                col[r * db + j] = v
            for r, v in B.cols.get(j, {}).items():
                k = i * db + r
                s = col.get(k, 0) + v
                if s:
                    col[k] = s
                else:
                    col.pop(k, None)
            if col:
                cols[i * db + j] = col
    return SparseMatrix(cols)


def casimir(rs: RootSystem, matrices: Sequence[SparseMatrix]) -> SparseMatrix:
    """``sum_a pi(x_a) pi(x^a)`` for the Killing-dual basis."""
    C = SparseMatrix()
    for a in range(rs.dim):
        dual = SparseMatrix()
        for b, c in rs.dual_basis[a].items():
            dual = dual + matrices[b].scaled(c)
        C = C + (matrices[a] @ dual)
    return C


def casimir_value(rs: RootSystem, mu: Weight) -> Fraction:
    """Predicted scalar ``(mu, mu + 2 rho)`` with the Killing-dual form."""
    return rs.killing_inner(mu, mu + 2 * rs.rho)


def tensor_module(left: Irrep, right: Irrep) -> TensorModule:
    rs = left.rs
    mats = [_kron_action(left.matrices[a], right.matrices[a], left.dim, right.dim) for a in range(rs.dim)]
    C = casimir(rs, mats)
    cons = tensor_decompose(rs, left.highest_weight, right.highest_weight)
    return TensorModule(left, right, mats, C, cons)


class CasimirCollision(ValueError):
    pass


def cartan_project(T: TensorModule, v: Vec) -> Vec:
    """Invariant projection onto the Cartan component ``V_{beta+gamma}``."""
    rs = T.left.rs
    top = T.top_weight
    c_top = casimir_value(rs, top)
    others = set()
    for mu in T.constituents:
        if mu == top.fund_int:
            continue
        c = casimir_value(rs, rs.weight(mu))
        if c == c_top:
            raise CasimirCollision(f"constituent {mu} shares the Casimir value of the Cartan component")
        others.add(c)
    out = dict(v)
    for c in sorted(others):
        Cv = T.casimir_matrix.apply(out)
        axpy(Cv, -c, out)
        out = scale(1 / (c_top - c), Cv)
    return out


# ----------------------------------------------------------------------------
# Cache serialization


def cache_key(rs: RootSystem, lam: Weight) -> str:
    return f"{rs.datum.family}{rs.rank}_{'-'.join(str(x) for x in lam.fund_int)}_{SIGN_CONVENTION}.irrep"


def serialize_irrep(V: Irrep) -> str:
    rs = V.rs
    lines = [
        CACHE_FORMAT,
        f"type {rs.datum.family}",
        f"rank {rs.rank}",
        f"lambda {','.join(str(x) for x in V.highest_weight.fund_int)}",
        f"dimension {V.dim}",
        f"signs {SIGN_CONVENTION}",
        f"lowest {V.lw_index}",
        "basis",
    ]
    for k in range(V.dim):
        lines.append(f"{k} {','.join(map(str, V.weight_of[k]))} {'.'.join(map(str, V.words[k])) or '-'}")
    lines.append("grams")
    for w in sorted(V.contravariant_grams, key=lambda w: V.weight_spaces[w][0]):
        g = V.contravariant_grams[w]
        for s in sorted(g):
            for t in sorted(g[s]):
                if g[s][t]:
                    lines.append(f"{s} {t} {format_fraction(g[s][t])}")
    lines.append("matrices")
    for a, M in enumerate(V.matrices):
        for i, j, val in M.entries():
            lines.append(f"{a} {i} {j} {format_fraction(val)}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def deserialize_irrep(rs: RootSystem, text: str) -> Irrep:
    lines = text.splitlines()
    if not lines or lines[0] != CACHE_FORMAT:
        raise ValueError("not an irrep cache file")
    head = dict(l.split(" ", 1) for l in lines[1:7])
    if head["type"] != rs.datum.family or int(head["rank"]) != rs.rank:
        raise ValueError("cache file belongs to a different root system")
    if head["signs"] != SIGN_CONVENTION:
        raise ValueError("cache file uses a different sign convention")
    lam = rs.weight([int(x) for x in head["lambda"].split(",")])
    dim = int(head["dimension"])
    lw_index = int(head["lowest"])
    k = lines.index("basis") + 1
    weight_of, words = [], []
    spaces: Dict[Tuple[int, ...], List[int]] = {}
    for line in lines[k:k + dim]:
        idx, w, word = line.split(" ")
        w = tuple(int(x) for x in w.split(","))
        weight_of.append(w)
        words.append(() if word == "-" else tuple(int(x) for x in word.split(".")))
        spaces.setdefault(w, []).append(int(idx))
    g0 = lines.index("grams") + 1
    m0 = lines.index("matrices")
    grams: Dict[Tuple[int, ...], Dict[int, Dict[int, Fraction]]] = {}
    for w, idx in spaces.items():
        grams[w] = {s: {t: Fraction(0) for t in idx} for s in idx}
    for line in lines[g0:m0]:
        s, t, val = line.split(" ")
        s, t = int(s), int(t)
        grams[weight_of[s]][s][t] = Fraction(val)
    cols: List[Dict[int, Vec]] = [dict() for _ in range(rs.dim)]
    for line in lines[m0 + 1:]:
        if line == "end":
            break
        a, i, j, val = line.split(" ")
        cols[int(a)].setdefault(int(j), {})[int(i)] = Fraction(val)
    mats = [SparseMatrix(c) for c in cols]
    return Irrep(rs=rs, highest_weight=lam, weight_of=weight_of, weight_spaces=spaces, words=words,
                 matrices=mats, contravariant_grams=grams, hw_index=0, lw_index=lw_index)
