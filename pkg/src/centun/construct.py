"""End-to-end constructions and their verification reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .config import EngineConfig
from .envelope import (TauEvaluator, codegree, extract_fk, functional_for,
                       lw_naive_f)
from .linalg import format_fraction, solve_dense
from .polyalg import (GPoly, InvariantError, ad_action, defining_weight, invariant_generators,
                      is_harmonic, is_n_invariant_weight, simple_letters)
from .repbuild import Irrep, build_irrep, invariant_pairing_value
from .rootsys import (RootSystem, Weight, dual_weight, freudenthal_mult, max_weight_multiplicity,
                      weight_multiplicities)


# ----------------------------------------------------------------------------
# Principal TDS


@dataclass
class PrincipalSL2:
    rs: RootSystem
    c: List[Fraction]
    e: Dict[int, Fraction]
    h: Dict[int, Fraction]
    e_minus: Dict[int, Fraction]

    def relations_hold(self) -> bool:
        rs = self.rs
        br = rs.bracket
        return (br(self.h, self.e) == {a: 2 * v for a, v in self.e.items()}
                and br(self.h, self.e_minus) == {a: -2 * v for a, v in self.e_minus.items()}
                and br(self.e, self.e_minus) == self.h)


def principal_sl2(rs: RootSystem) -> PrincipalSL2:
    n = rs.rank
    # alpha_j(sum c_i h_i) = sum_i c_i a_ij = 2
    at = [[rs.cartan[i][j] for i in range(n)] for j in range(n)]
    c = solve_dense(at, [2] * n)
    e = {rs.root_index[tuple(1 if j == i else 0 for j in range(n))]: Fraction(1) for i in range(n)}
    h = {rs.n_pos + i: c[i] for i in range(n) if c[i]}
    em = {rs.root_index[tuple(-1 if j == i else 0 for j in range(n))]: c[i] for i in range(n)}
    return PrincipalSL2(rs, c, e, h, em)


def max_exponent_pairing(rs: RootSystem, nu: Weight, module: Optional[Irrep] = None,
                         size_cap: int = 512) -> Tuple[int, Fraction]:
    """``(m, (pi(e_-^m) v_nu, v_nu))`` with ``m = nu(h)``; raises if the pairing vanishes."""
    if dual_weight(rs, nu) != nu:
        raise ValueError(f"nu = {nu} is not self-dual")
    tds = principal_sl2(rs)
    m = int(sum(2 * x for x in nu.root))
    if m != int((2 * nu).height):
        raise AssertionError("nu(h) differs from the height of 2 nu")
    V = module if module is not None else build_irrep(rs, nu, size_cap)
    # tau(e_-^m) = e_-^m: expand into monomials of the f_i and symmetrize each one
    tau = TauEvaluator(V, V.hw_vector, degree_bound=max(m, 1))
    lets = sorted(tds.e_minus)
    target = tuple(-2 * int(x) for x in nu.root)
    total = Fraction(0)
    for counts in _compositions(m, len(lets)):
        w = tuple(sum(-k * (1 if j == i else 0) for i, k in enumerate(counts)) for j in range(rs.rank))
        if w != target:
            continue
        coeff = Fraction(_multinomial(counts))
        for a, k in zip(lets, counts):
            coeff *= tds.e_minus[a] ** k
        xi = tuple((a, k) for a, k in zip(lets, counts) if k)
        total += coeff * invariant_pairing_value(V, tau(xi))
    # direct power of the single element e_- as a check of tau(x^k) = x^k
    v = V.hw_vector
    for _ in range(m):
        nxt = {}
        for a, c in tds.e_minus.items():
            for k, val in V.matrices[a].apply(v).items():
                nxt[k] = nxt.get(k, 0) + c * val
        v = {k: x for k, x in nxt.items() if x}
    direct = invariant_pairing_value(V, v)
    if direct != total:
        raise AssertionError("symmetrized and direct powers of e_- disagree")
    if total == 0:
        raise AssertionError("the pairing of e_-^m v_nu with v_nu vanishes")
    return m, total


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def _multinomial(counts) -> int:
    from math import factorial
    out = factorial(sum(counts))
    for k in counts:
        out //= factorial(k)
    return out


# ----------------------------------------------------------------------------
# Generalized exponents


@dataclass
class ExponentPolynomial:
    lam: Weight
    coeffs: Dict[int, int]

    @property
    def ell(self) -> int:
        return sum(self.coeffs.values())

    @property
    def min_degree(self) -> int:
        return min(self.coeffs)

    @property
    def max_degree(self) -> int:
        return max(self.coeffs)

    def __str__(self) -> str:
        return " + ".join(f"{c}*q^{d}" for d, c in sorted(self.coeffs.items()))


class ExponentError(ValueError):
    pass


def symmetric_power_weight_dims(rs: RootSystem, max_degree: int) -> List[Dict[Tuple[int, ...], int]]:
    """``dims[k][mu] = dim S^k(g)(mu)`` (root coordinates), for ``k <= max_degree``."""
    dims: List[Dict[Tuple[int, ...], int]] = [dict() for _ in range(max_degree + 1)]
    dims[0][(0,) * rs.rank] = 1
    for r in rs.letter_root:
        # multiply by 1 / (1 - t e^r): new[k][mu] = old[k][mu] + new[k-1][mu - r]
        for k in range(1, max_degree + 1):
            cur = dims[k]
            for mu, c in dims[k - 1].items():
                nu = tuple(a + b for a, b in zip(mu, r))
                cur[nu] = cur.get(nu, 0) + c
    return dims


def generalized_exponents(rs: RootSystem, lam: Weight, max_height: int = 12) -> ExponentPolynomial:
    """Graded multiplicity of ``V_lam`` in the harmonics, up to degree ``ht(lam)``."""
    if not lam.is_integral() or not lam.is_dominant():
        raise ExponentError(f"{lam} must be dominant integral")
    if not lam.in_root_lattice():
        raise ExponentError(f"{lam} is not in the root lattice")
    K = int(lam.height)
    if K > max_height:
        raise ExponentError(f"height {K} exceeds the configured bound {max_height}")
    dims = symmetric_power_weight_dims(rs, K)
    shifts = []
    for wrho, sign in rs.weyl_rho_images:
        mu_f = tuple(int(x) + 1 - y for x, y in zip(lam.fund, wrho))
        mu_r = tuple(int(x) for x in rs.weight(mu_f).root)
        shifts.append((mu_r, sign))
    series = []
    for k in range(K + 1):
        series.append(sum(sign * dims[k].get(mu, 0) for mu, sign in shifts))
    for d in rs.invariant_degrees:
        series = [series[k] - (series[k - d] if k >= d else 0) for k in range(K + 1)]
    coeffs = {k: c for k, c in enumerate(series) if c}
    if any(c < 0 for c in coeffs.values()):
        raise ExponentError(f"negative graded multiplicity for {lam}: {coeffs}")
    return ExponentPolynomial(lam, coeffs)


# ----------------------------------------------------------------------------
# Main construction


@dataclass
class ConstructionReport:
    nu: Weight
    lam: Weight
    k: int
    fk: GPoly
    checks: Dict[str, Optional[bool]]
    min_exponent: Optional[int] = None
    min_exponent_multiplicity: Optional[int] = None
    details: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v is True for v in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "type": self.fk.rs.name,
            "nu": [str(x) for x in self.nu.fund],
            "lambda": [str(x) for x in self.lam.fund],
            "lambda_root": [str(x) for x in self.lam.root],
            "codegree": self.k,
            "min_exponent": self.min_exponent,
            "min_exponent_multiplicity": self.min_exponent_multiplicity,
            "checks": {k: self.checks[k] for k in CHECK_ORDER},
            "ok": self.ok,
            "f_k": self.fk.to_records(),
            "details": list(self.details),
        }


CHECK_ORDER = ["weight_ok", "in_Sn", "n_invariant", "harmonic", "k_equals_min_exponent", "fk_nonzero"]


def _invariants(rs: RootSystem, cfg: EngineConfig):
    V_def = build_irrep(rs, defining_weight(rs), cfg.size_cap)
    return invariant_generators(rs, V_def, allow_g2_sextic=cfg.allow_g2_sextic)


def lipsman_wolf_element(rs: RootSystem, nu: Weight, cfg: Optional[EngineConfig] = None,
                         module: Optional[Irrep] = None) -> ConstructionReport:
    cfg = cfg or EngineConfig()
    if nu.is_zero() or not nu.is_integral() or not nu.is_dominant():
        raise ValueError(f"nu = {nu} must be a nonzero dominant integral weight")
    F = functional_for(rs, nu, cfg.size_cap, module)
    k = codegree(F)
    fk = extract_fk(F, k, check_codegree=False)
    lam = F.lam
    details = []
    checks: Dict[str, Optional[bool]] = {}
    lam_root = tuple(int(x) for x in lam.root)
    checks["weight_ok"] = bool(fk.terms) and fk.weights() == {lam_root} and fk.degrees() == {k}
    checks["in_Sn"] = fk.in_S_n()
    checks["n_invariant"] = is_n_invariant_weight(fk, lam)
    try:
        J = _invariants(rs, cfg)
        checks["harmonic"] = is_harmonic(fk, J)
    except InvariantError as exc:
        checks["harmonic"] = None
        details.append(f"harmonic: {exc}")
    report = ConstructionReport(nu, lam, k, fk, checks, details=details)
    try:
        E = generalized_exponents(rs, lam, cfg.max_exponent_height)
        report.min_exponent = E.min_degree
        report.min_exponent_multiplicity = E.coeffs[E.min_degree]
        checks["k_equals_min_exponent"] = k == E.min_degree
    except ExponentError as exc:
        checks["k_equals_min_exponent"] = None
        details.append(f"exponents: {exc}")
    checks["fk_nonzero"] = not fk.is_zero()
    report.checks = {name: checks[name] for name in CHECK_ORDER}
    for name, v in report.checks.items():
        if v is False:
            details.append(f"check failed: {name}")
    return report


# ----------------------------------------------------------------------------
# The naive construction


class NoCounterexample(ValueError):
    pass


@dataclass
class CounterexampleReport:
    xi: Weight
    d: int
    nu: Weight
    lam: Weight
    ell: int
    degrees_present: List[int]
    max_pairing: Fraction
    max_pairing_degree: int
    invariance_witness: Optional[int]
    f_nu: GPoly
    exponents: Optional[ExponentPolynomial] = None

    @property
    def refutes(self) -> bool:
        top = int(self.lam.height)
        return (self.d > 1 and self.ell > 1 and len(self.degrees_present) >= 2
                and top in self.degrees_present and self.invariance_witness is not None)

    def to_dict(self) -> dict:
        return {
            "type": self.f_nu.rs.name,
            "xi": [str(x) for x in self.xi.fund],
            "d": self.d,
            "nu": [str(x) for x in self.nu.fund],
            "lambda": [str(x) for x in self.lam.fund],
            "ell_lambda": self.ell,
            "exponents": {str(k): v for k, v in sorted(self.exponents.coeffs.items())} if self.exponents else None,
            "degrees_present": self.degrees_present,
            "max_pairing_degree": self.max_pairing_degree,
            "max_pairing": format_fraction(self.max_pairing),
            "invariance_witness": self.invariance_witness,
            "refutes": self.refutes,
            "f_nu": self.f_nu.to_records(),
        }


def counterexample_check(rs: RootSystem, xi: Weight, cfg: Optional[EngineConfig] = None) -> CounterexampleReport:
    cfg = cfg or EngineConfig()
    d = max_weight_multiplicity(rs, xi)
    if d <= 1:
        raise NoCounterexample(f"maximal weight multiplicity of V_{xi} is {d}; no counterexample")
    nu = xi + dual_weight(rs, xi)
    lam = 2 * nu
    V = build_irrep(rs, nu, cfg.size_cap)
    f_nu = lw_naive_f(rs, xi, cfg.size_cap, module=V)
    ell = freudenthal_mult(rs, lam, rs.weight([0] * rs.rank))
    exps = None
    if int(lam.height) <= cfg.max_exponent_height:
        exps = generalized_exponents(rs, lam, cfg.max_exponent_height)
    m, z = max_exponent_pairing(rs, nu, module=V)
    witness = None
    for i, a in enumerate(simple_letters(rs)):
        if not ad_action(a, f_nu).is_zero():
            witness = i
            break
    return CounterexampleReport(xi, d, nu, lam, ell, sorted(f_nu.degrees()), z, m, witness, f_nu, exps)


# ----------------------------------------------------------------------------
# Weight-multiplicity inequalities


@dataclass
class InequalityReport:
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def multiplicity_inequality_battery(rs: RootSystem, pairs: Sequence[Tuple[Weight, Weight]]) -> InequalityReport:
    rep = InequalityReport()
    zero = rs.weight([0] * rs.rank)
    for beta, gamma in pairs:
        if not gamma.in_root_lattice():
            raise ValueError(f"gamma = {gamma} is not in the root lattice")
        for mu_f, m in weight_multiplicities(rs, beta).items():
            mu = rs.weight(mu_f)
            rep.checked += 1
            big = freudenthal_mult(rs, beta + gamma, mu)
            if big < m:
                rep.failures.append(f"dim V_{beta + gamma}({mu}) = {big} < {m}")
        d = max_weight_multiplicity(rs, beta)
        top = beta + dual_weight(rs, beta)
        rep.checked += 1
        z = freudenthal_mult(rs, top, zero)
        if z < d:
            rep.failures.append(f"dim V_{top}(0) = {z} < d = {d}")
    return rep


def report_text(d: dict) -> str:
    """Stable ``key: value`` rendering of a report dictionary."""
    lines = []
    for k, v in d.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v, separators=(",", ":"))
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"
