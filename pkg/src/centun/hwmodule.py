"""Irreducible highest-weight modules from a Cartan matrix alone.

The module is generated weight space by weight space from the highest weight
vector by the lowering generators ``f_j``.  A lowered vector ``f_j b`` of
weight ``mu != lambda`` vanishes in the irreducible quotient exactly when
every raising operator kills it, so linear relations among the candidates
are detected from their raising images ("e-images"), which live in already
finished weight spaces.  This is the same quotient as taking the radical of
the contravariant form, and the Gram matrices of that form are recorded too.

Weights are tuples of ints in fundamental-weight coordinates and the Cartan
matrix convention is ``a[i][j] = <alpha_i^vee, alpha_j>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .linalg import IncrementalBasis, SparseMatrix, Vec, axpy

WeightT = Tuple[int, ...]


class ModuleTooLarge(ValueError):
    def __init__(self, dimension: int, cap: int):
        super().__init__(f"module dimension {dimension} exceeds size cap {cap}")
        self.dimension = dimension
        self.cap = cap


@dataclass
class HWModule:
    cartan: Tuple[Tuple[int, ...], ...]
    highest: WeightT
    weights: List[WeightT] = field(default_factory=list)
    spaces: Dict[WeightT, List[int]] = field(default_factory=dict)
    weight_of: List[WeightT] = field(default_factory=list)
    words: List[Tuple[int, ...]] = field(default_factory=list)
    parents: List[Tuple[int, int]] = field(default_factory=list)
    E: List[SparseMatrix] = field(default_factory=list)
    F: List[SparseMatrix] = field(default_factory=list)
    grams: Dict[WeightT, Dict[int, Dict[int, Fraction]]] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.weight_of)

    def h_matrix(self, i: int) -> SparseMatrix:
        return SparseMatrix.diagonal(
            {k: Fraction(w[i]) for k, w in enumerate(self.weight_of) if w[i]}
        )


def simple_root_fund(cartan: Sequence[Sequence[int]], j: int) -> WeightT:
    """Fundamental coordinates of ``alpha_j`` (column ``j`` of the Cartan matrix)."""
    return tuple(cartan[k][j] for k in range(len(cartan)))


def build_hw_module(cartan: Sequence[Sequence[int]], highest: Sequence[int],
                    max_dim: int | None = None) -> HWModule:
    rank = len(cartan)
    lam = tuple(int(x) for x in highest)
    if any(x < 0 for x in lam):
        raise ValueError(f"highest weight {lam} is not dominant")
    alphas = [simple_root_fund(cartan, j) for j in range(rank)]

    def shift(mu, j, sign):
        return tuple(m + sign * a for m, a in zip(mu, alphas[j]))

    mod = HWModule(cartan=tuple(tuple(r) for r in cartan), highest=lam)
    E_cols: List[Dict[int, Vec]] = [dict() for _ in range(rank)]
    F_cols: List[Dict[int, Vec]] = [dict() for _ in range(rank)]

    mod.weights.append(lam)
    mod.spaces[lam] = [0]
    mod.weight_of.append(lam)
    mod.words.append(())
    mod.parents.append((-1, -1))
    mod.grams[lam] = {0: {0: Fraction(1)}}

    level = [lam]
    while level:
        nxt: List[WeightT] = []
        seen = set()
        for mu in level:
            for j in range(rank):
                nu = shift(mu, j, -1)
                if nu not in seen:
                    seen.add(nu)
                    nxt.append(nu)
        level = []
        for mu in nxt:
            cands = []
            for j in range(rank):
                src = shift(mu, j, +1)
                for b in mod.spaces.get(src, ()):
                    cands.append(((j,) + mod.words[b], j, b))
            cands.sort(key=lambda c: c[0])
            if not cands:
                continue
            images = [_e_image(mod, E_cols, F_cols, mu, j, b, shift) for _, j, b in cands]
            basis = IncrementalBasis()
            members: List[int] = []
            fresh = []
            exprs = []
            for (word, j, b), img in zip(cands, images):
                new, info = basis.add(img)
                if new:
                    g = len(mod.weight_of)
                    if max_dim is not None and g >= max_dim:
                        raise ModuleTooLarge(g + 1, max_dim)
                    mod.weight_of.append(mu)
                    mod.words.append(word)
                    mod.parents.append((j, b))
                    members.append(g)
                    fresh.append((g, img))
                    exprs.append({g: Fraction(1)})
                else:
                    exprs.append({members[t]: c for t, c in info.items()})
            if not members:
                continue
            mod.weights.append(mu)
            mod.spaces[mu] = members
            level.append(mu)
            for (word, j, b), ex in zip(cands, exprs):
                F_cols[j][b] = ex
            for g, img in fresh:
                for i in range(rank):
                    target = set(mod.spaces.get(shift(mu, i, +1), ()))
                    block = {k: v for k, v in img.items() if k in target}
                    if block:
                        E_cols[i][g] = block
            mod.grams[mu] = _gram(mod, E_cols, mu)

    mod.E = [SparseMatrix(c) for c in E_cols]
    mod.F = [SparseMatrix(c) for c in F_cols]
    return mod


def _e_image(mod, E_cols, F_cols, mu, j, b, shift) -> Vec:
    """Raising images ``e_i (f_j b)`` for all ``i``, concatenated by global index."""
    out: Vec = {}
    rank = len(mod.cartan)
    src = mod.weight_of[b]
    for i in range(rank):
        eb = E_cols[i].get(b)
        if eb:
            for k, c in eb.items():
                col = F_cols[j].get(k)
                if col:
                    axpy(out, c, col)
        if i == j and src[i]:
            axpy(out, Fraction(src[i]), {b: Fraction(1)})
    return out


def _gram(mod: HWModule, E_cols, mu) -> Dict[int, Dict[int, Fraction]]:
    """Contravariant form on V(mu): <f_j b, y> = <b, e_j y>."""
    gram: Dict[int, Dict[int, Fraction]] = {}
    for s in mod.spaces[mu]:
        j, b = mod.parents[s]
        row_b = mod.grams[mod.weight_of[b]][b]
        gram[s] = {}
        for t in mod.spaces[mu]:
            ey = E_cols[j].get(t, {})
            gram[s][t] = sum((row_b.get(u, 0) * c for u, c in ey.items()), Fraction(0))
    return gram
