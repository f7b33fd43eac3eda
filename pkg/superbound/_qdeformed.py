# coding: utf-8
"""The trigonometric R-matrix, U_q(gl(m|n)) in the fundamental representation
and the FRT operators L±."""
import cmath
import functools

from superbound._graded import *
from superbound._report import VerificationReport
from superbound._util import *
from superbound._yangian import monodromy, rtt_residual, ybe_residual

GRADED = "graded"
PLAIN = "plain"
CONVENTIONS = (GRADED, PLAIN)

_DEFAULT_MU = 0.3 + 0.1j
_DEFAULT_SAMPLES = 20
_DEFAULT_YBE_TOLERANCE = 1e-9
_DEFAULT_EXACT_TOLERANCE = 1e-10
_DEFAULT_ALGEBRA_TOLERANCE = 1e-11
_LIMIT_POINT = 20.0


class QParams(object):
    """The deformation q = e^{iμ}."""

    __slots__ = ("_mu",)

    def __init__(self, mu: complex = _DEFAULT_MU, allow_root_of_unity: bool = False) -> None:
        mu = complex(mu)
        if not allow_root_of_unity and is_close_to_root_of_unity(cmath.exp(1j * mu)):
            raise ValueError("q = exp(i·{}) is too close to a root of unity".format(mu))
        self._mu = mu

    @property
    def mu(self) -> complex:
        return self._mu

    @property
    def q(self) -> complex:
        return cmath.exp(1j * self._mu)

    def power(self, x: float) -> complex:
        """q^x as e^{iμx}, so half-integer powers are single valued."""
        return cmath.exp(1j * self._mu * x)

    def __eq__(self, other) -> bool:
        return isinstance(other, QParams) and self._mu == other._mu

    def __hash__(self) -> int:
        return hash(self._mu)

    def __repr__(self) -> str:
        return "QParams(mu={})".format(self._mu)


def trig_sampler(qp: QParams, seed: Hashable = None) -> SpectralSampler:
    """Points in [−1, 1]² away from 0 and ±iμ."""
    return SpectralSampler(
        seed, half_width=1.0, half_height=1.0, avoid=(0, 1j * qp.mu, -1j * qp.mu)
    )


def _weights(grading: Grading):
    return grading.signs()


def R_trig(lam: complex, qp: QParams, grading: Grading) -> GradedOperator:
    """Σ a_i e_ii⊗e_ii + b Σ_{i≠j} e_ii⊗e_jj + Σ_{i≠j} c_ij e_ij⊗e_ji with
    a_i = sinh(λ + iμ(−1)^{[i]}), b = sinh λ and
    c_ij = sinh(iμ) e^{sign(j−i)λ} (−1)^{[j]}."""
    d = grading.dim()
    w = _weights(grading)
    result = zero(grading, 2)
    for i in range(d):
        for j in range(d):
            if i == j:
                coefficient = cmath.sinh(lam + 1j * qp.mu * w[i])
                result = result + coefficient * tensor_embed(unit(grading, i, i), unit(grading, i, i))
                continue
            result = result + cmath.sinh(lam) * tensor_embed(unit(grading, i, i), unit(grading, j, j))
            c = cmath.sinh(1j * qp.mu) * cmath.exp(math.copysign(1, j - i) * lam) * (-1) ** grading.parity(j)
            result = result + c * tensor_embed(unit(grading, i, j), unit(grading, j, i))
    return result


def M_exponents(grading: Grading) -> List[int]:
    """e_k with M = Σ q^{e_k} e_kk, e_k = n+m−2k+1 − 2[k] + 4Σ_{i≤k}[i] (1-based k)."""
    m, n = grading.m, grading.n
    result = []
    seen = 0
    for k in range(1, m + n + 1):
        p = grading.parity(k - 1)
        seen += p
        result.append(n + m - 2 * k + 1 - 2 * p + 4 * seen)
    return result


def M_matrix(qp: QParams, grading: Grading) -> GradedOperator:
    return diagonal(grading, [qp.power(e) for e in M_exponents(grading)])


def q_eps(qp: QParams, grading: Grading, i: int, power: float = 1, convention: str = GRADED) -> GradedOperator:
    """π(q^{x·ε_i}) = 𝕀 + (q^{xw} − 1)e_ii, w = (−1)^{[i]} (graded) or 1 (plain)."""
    if convention not in CONVENTIONS:
        raise ValueError("unknown weight convention {!r}".format(convention))
    weight = (-1) ** grading.parity(i) if convention == GRADED else 1
    values = np.ones(grading.dim(), dtype=complex)
    values[i] = qp.power(power * weight)
    return diagonal(grading, values)


def _chevalley_e(grading: Grading, i: int) -> GradedOperator:
    return unit(grading, i, i + 1)


def _chevalley_f(grading: Grading, i: int) -> GradedOperator:
    return (-1) ** grading.parity(i) * unit(grading, i + 1, i)


def R_pm_limits(qp: QParams, grading: Grading) -> Tuple[GradedOperator, GradedOperator]:
    """R± = lim_{λ→±∞} 2e^{∓λ}R(λ), so that 2R(λ) = e^λR⁺ + e^{−λ}R⁻."""
    d = grading.dim()
    gap = qp.q - 1 / qp.q
    plus = zero(grading, 2)
    minus = zero(grading, 2)
    for i in range(d):
        plus = plus + tensor_embed(unit(grading, i, i), q_eps(qp, grading, i, 1))
        minus = minus - tensor_embed(unit(grading, i, i), q_eps(qp, grading, i, -1))
        for j in range(d):
            if i == j:
                continue
            term = gap * (-1) ** grading.parity(j) * tensor_embed(unit(grading, i, j), unit(grading, j, i))
            if j > i:
                plus = plus + term
            else:
                minus = minus + term
    return plus, minus


def cartan_matrix(grading: Grading):
    """a_ij with K_i e_j K_i⁻¹ = q^{a_ij} e_j in the graded weight convention."""
    w = _weights(grading)
    r = grading.dim() - 1
    a = np.zeros((r, r), dtype=int)
    for i in range(r):
        a[i, i] = w[i] + w[i + 1]
        if i + 1 < r:
            a[i, i + 1] = -w[i + 1]
        if i > 0:
            a[i, i - 1] = -w[i]
    return a


class UqGenerators(object):
    """N-site images of q^{±ε_i}, e_i, f_i and K_i^{±1/2}. Indices are 0-based."""

    __slots__ = ("_grading", "_qp", "_N", "_convention", "_single", "_cache")

    def __init__(self, qp: QParams, grading: Grading, N: int, convention: str = GRADED) -> None:
        if N < 1:
            raise SpaceError("need at least one site, got N = {}".format(N))
        if convention not in CONVENTIONS:
            raise ValueError("unknown weight convention {!r}".format(convention))
        self._grading = grading
        self._qp = qp
        self._N = N
        self._convention = convention
        self._cache = {}

    def grading(self) -> Grading:
        return self._grading

    def qparams(self) -> QParams:
        return self._qp

    def sites(self) -> int:
        return self._N

    def convention(self) -> str:
        return self._convention

    def rank(self) -> int:
        return self._grading.dim() - 1

    def parity(self, i: int) -> int:
        """Parity of e_i and f_i."""
        return (self._grading.parity(i) + self._grading.parity(i + 1)) % 2

    def single_q_eps(self, i: int, power: float = 1) -> GradedOperator:
        return q_eps(self._qp, self._grading, i, power, self._convention)

    def single_k(self, i: int, power: float = 1) -> GradedOperator:
        """π(K_i^x) = π(q^{x ε_i}) π(q^{−x ε_{i+1}})."""
        return self.single_q_eps(i, power) @ self.single_q_eps(i + 1, -power)

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def group_like(self, single: GradedOperator, sites: Optional[int] = None) -> GradedOperator:
        sites = self._N if sites is None else sites
        return tensor_embed(*([single] * sites))

    def skew_primitive(self, x: GradedOperator, i: int, sites: Optional[int] = None) -> GradedOperator:
        """Δ⁽ᴺ⁾ for Δ(x) = K_i^{−1/2} ⊗ x + x ⊗ K_i^{1/2}."""
        sites = self._N if sites is None else sites
        left = self.single_k(i, -0.5)
        right = self.single_k(i, 0.5)
        current = x
        for n in range(1, sites):
            current = tensor_embed(current, right) + tensor_embed(self.group_like(left, n), x)
        return current

    def q_eps(self, i: int, power: float = 1) -> GradedOperator:
        return self._memo(("q_eps", i, power),
                          lambda: self.group_like(self.single_q_eps(i, power)))

    def k(self, i: int, power: float = 1) -> GradedOperator:
        return self._memo(("k", i, power), lambda: self.group_like(self.single_k(i, power)))

    def e(self, i: int) -> GradedOperator:
        return self._memo(("e", i),
                          lambda: self.skew_primitive(_chevalley_e(self._grading, i), i))

    def f(self, i: int) -> GradedOperator:
        return self._memo(("f", i),
                          lambda: self.skew_primitive(_chevalley_f(self._grading, i), i))

    def named(self) -> Dict[str, GradedOperator]:
        """All Chevalley and Cartan generators keyed "e1", "f1", "qeps1", ..."""
        result = {}
        for i in range(self.rank()):
            result["e{}".format(i + 1)] = self.e(i)
            result["f{}".format(i + 1)] = self.f(i)
        for i in range(self._grading.dim()):
            result["qeps{}".format(i + 1)] = self.q_eps(i)
        return result

    def single_named(self) -> Dict[str, GradedOperator]:
        result = {}
        for i in range(self.rank()):
            result["e{}".format(i + 1)] = _chevalley_e(self._grading, i)
            result["f{}".format(i + 1)] = _chevalley_f(self._grading, i)
        for i in range(self._grading.dim()):
            result["qeps{}".format(i + 1)] = self.single_q_eps(i)
        return result


def uq_fundamental(qp: QParams, grading: Grading, N: int = 1, convention: str = GRADED) -> UqGenerators:
    return UqGenerators(qp, grading, N, convention)


def _graded_bracket(x: GradedOperator, y: GradedOperator, px: int, py: int) -> GradedOperator:
    return x @ y - (-1) ** (px * py) * (y @ x)


def check_uq_relations(
        G: UqGenerators,
        tolerance: float = _DEFAULT_ALGEBRA_TOLERANCE,
) -> VerificationReport:
    """Exchange relations, q-Serre relations, graded commutation of distant
    generators and e_i² = 0 for odd simple roots. One residual per family."""
    report = VerificationReport("uq-relations", tolerance)
    qp, grading = G.qparams(), G.grading()
    q = qp.q
    r, d = G.rank(), grading.dim()
    worst = {}

    def record(family, lhs, rhs=None):
        value = norm(lhs.entries() - (0 if rhs is None else rhs.entries()))
        worst[family] = max(worst.get(family, 0.0), value / max(1.0, norm(lhs.entries())))

    for i in range(r):
        for j in range(r):
            expected = None
            if i == j:
                expected = (G.k(i) - G.k(i, -1)) / (q - 1 / q)
            lhs = _graded_bracket(G.e(i), G.f(j), G.parity(i), G.parity(j))
            record("ef", lhs, expected if expected is not None else zero(grading, G.sites()))
            if abs(i - j) >= 2:
                record("distant_e", _graded_bracket(G.e(i), G.e(j), G.parity(i), G.parity(j)))
                record("distant_f", _graded_bracket(G.f(i), G.f(j), G.parity(i), G.parity(j)))
    for k in range(d):
        w = (-1) ** grading.parity(k) if G.convention() == GRADED else 1
        for i in range(r):
            weight = w * ((k == i) - (k == i + 1))
            record("cartan_e", G.q_eps(k) @ G.e(i) @ G.q_eps(k, -1), qp.power(weight) * G.e(i))
            record("cartan_f", G.q_eps(k) @ G.f(i) @ G.q_eps(k, -1), qp.power(-weight) * G.f(i))
    a = cartan_matrix(grading)
    for i in range(r):
        if a[i, i] == 0:
            record("odd_nilpotent", G.e(i) @ G.e(i))
            record("odd_nilpotent", G.f(i) @ G.f(i))
            continue
        for j in (i - 1, i + 1):
            if not 0 <= j < r:
                continue
            for x in (G.e, G.f):
                xi, xj = x(i), x(j)
                serre = xi @ xi @ xj - (q + 1 / q) * (xi @ xj @ xi) + xj @ xi @ xi
                record("serre", serre)
    for family in sorted(worst):
        report.add_residual(family, worst[family])
    zeros = [i + 1 for i in range(r) if a[i, i] == 0]
    report.set_info("cartan_matrix", a.tolist())
    report.set_info("zero_diagonal_positions", zeros)
    report.set_info("convention", G.convention())
    if grading.scheme == DISTINGUISHED and grading.m > 0 and grading.n > 0:
        report.expect("zero_diagonal_at_m", zeros == [grading.m])
    logger.info("U_q relations on %d sites: max residual %.3e", G.sites(), report.max_residual())
    return report


def check_coassociativity(
        qp: QParams,
        grading: Grading,
        convention: str = GRADED,
        tolerance: float = _DEFAULT_ALGEBRA_TOLERANCE,
) -> VerificationReport:
    """(Δ⊗id)Δ = (id⊗Δ)Δ on e_i and f_i."""
    report = VerificationReport("coassociativity", tolerance)
    G = UqGenerators(qp, grading, 1, convention)
    for i in range(G.rank()):
        left = G.single_k(i, -0.5)
        right = G.single_k(i, 0.5)
        for name, x in (("e", _chevalley_e(grading, i)), ("f", _chevalley_f(grading, i))):
            delta = tensor_embed(left, x) + tensor_embed(x, right)
            first = tensor_embed(left, left, x) + tensor_embed(delta, right)
            second = tensor_embed(left, delta) + tensor_embed(x, right, right)
            report.add_residual("{}{}".format(name, i + 1),
                                relative_residual(first.entries(), second.entries()))
    return report


def L_pm_from_generators(G: UqGenerators) -> Dict[str, GradedOperator]:
    """L± = Σ e_ij ⊗ l±_ij assembled from the single-site generators.

    l⁺_ii = q^{ε_i}, l⁺_ij = (−1)^{[j]+Σ_{i≤k<j}[k]}(q−q⁻¹) f_{j−1}⋯f_i (j > i),
    l⁻_ii = q^{−ε_i}, l⁻_ji = −(−1)^{[i]}(q−q⁻¹) e_i⋯e_{j−1} (j > i).
    The plain convention carries (−1)^{[i]} on the diagonal. Also returns the
    inverses L̂±.
    """
    grading, qp = G.grading(), G.qparams()
    d = grading.dim()
    gap = qp.q - 1 / qp.q
    plus = zero(grading, 2)
    minus = zero(grading, 2)
    for i in range(d):
        sign = 1 if G.convention() == GRADED else (-1) ** grading.parity(i)
        plus = plus + sign * tensor_embed(unit(grading, i, i), G.single_q_eps(i, 1))
        minus = minus + sign * tensor_embed(unit(grading, i, i), G.single_q_eps(i, -1))
        for j in range(i + 1, d):
            fs = identity(grading)
            es = identity(grading)
            for k in range(j - 1, i - 1, -1):
                fs = fs @ _chevalley_f(grading, k)
            for k in range(i, j):
                es = es @ _chevalley_e(grading, k)
            exponent = grading.parity(j) + sum(grading.parity(k) for k in range(i, j))
            l_plus = (-1) ** exponent * gap * fs
            l_minus = -((-1) ** grading.parity(i)) * gap * es
            plus = plus + tensor_embed(unit(grading, i, j), l_plus)
            minus = minus + tensor_embed(unit(grading, j, i), l_minus)
    return {
        "L+": plus,
        "L-": minus,
        "Lhat+": GradedOperator(grading, safe_inverse(plus.entries()), 2),
        "Lhat-": GradedOperator(grading, safe_inverse(minus.entries()), 2),
    }


def _scalar_match(reference: GradedOperator, candidate: GradedOperator) -> Tuple[complex, float]:
    """Scale `candidate` by the ratio of the (1,1)⊗(1,1) entries and return the
    scale with the remaining relative deviation."""
    scale = reference.entries()[0, 0] / candidate.entries()[0, 0]
    return scale, relative_residual(reference.entries(), scale * candidate.entries())


def check_L_pm(
        qp: QParams,
        grading: Grading,
        convention: str = GRADED,
        tolerance: float = _DEFAULT_EXACT_TOLERANCE,
) -> VerificationReport:
    """L⁺ ∝ R⁺ and L⁻ ∝ −R⁻ after matching one reference entry, the analytic
    limits against 2e^{∓λ}R(±λ) at |λ| = 20 and e^λL⁺ − e^{−λ}L⁻ = 2R(λ)."""
    report = VerificationReport("l-pm", tolerance)
    G = UqGenerators(qp, grading, 1, convention)
    L = L_pm_from_generators(G)
    r_plus, r_minus = R_pm_limits(qp, grading)
    scale_plus, dev_plus = _scalar_match(r_plus, L["L+"])
    scale_minus, dev_minus = _scalar_match(-r_minus, L["L-"])
    report.add_residual("L+_vs_R+", dev_plus)
    report.add_residual("L-_vs_R-", dev_minus)
    report.set_info("scale_plus", scale_plus)
    report.set_info("scale_minus", scale_minus)
    report.set_info("convention", convention)
    t = _LIMIT_POINT
    far_plus = 2 * cmath.exp(-t) * R_trig(t, qp, grading).entries()
    far_minus = 2 * cmath.exp(-t) * R_trig(-t, qp, grading).entries()
    report.set_info("limit_plus_deviation", relative_residual(r_plus.entries(), far_plus))
    report.set_info("limit_minus_deviation", relative_residual(r_minus.entries(), far_minus))
    lam = 0.37 - 0.21j
    lax = cmath.exp(lam) * L["L+"] - cmath.exp(-lam) * L["L-"]
    report.add_residual("lax_vs_2R", relative_residual(
        2 * R_trig(lam, qp, grading).entries(), lax.entries()
    ))
    return report


def select_weight_convention(qp: QParams, grading: Grading) -> str:
    """The weight convention for which L⁺ ∝ R⁺."""
    for convention in CONVENTIONS:
        if check_L_pm(qp, grading, convention).passed():
            logger.debug("weight convention %s selected for %r", convention, grading)
            return convention
    raise GradingError("no weight convention reproduces R⁺")


def _constant_lax(op: GradedOperator, lam: complex) -> GradedOperator:
    return op


def monodromy_pm(qp: QParams, grading: Grading, N: int) -> Tuple[GradedOperator, GradedOperator]:
    """T± = L±₀N ⋯ L±₀₁ built from the U_q generators.

    L± are rescaled onto R⁺ and −R⁻ by one matched entry, so T± does not
    depend on which weight convention reproduced the limits.
    """
    convention = select_weight_convention(qp, grading)
    L = L_pm_from_generators(UqGenerators(qp, grading, 1, convention))
    r_plus, r_minus = R_pm_limits(qp, grading)
    scale_plus, _ = _scalar_match(r_plus, L["L+"])
    scale_minus, _ = _scalar_match(-r_minus, L["L-"])
    t_plus = monodromy(functools.partial(_constant_lax, scale_plus * L["L+"]), 0, N)
    t_minus = monodromy(functools.partial(_constant_lax, scale_minus * L["L-"]), 0, N)
    return t_plus, t_minus


def check_frt(
        qp: QParams,
        grading: Grading,
        N: int = 1,
        tolerance: float = _DEFAULT_EXACT_TOLERANCE,
) -> VerificationReport:
    """R⁺₁₂T⁺₁T⁺₂ = T⁺₂T⁺₁R⁺₁₂, R⁺₁₂T⁻₁T⁻₂ = T⁻₂T⁻₁R⁺₁₂ and R⁺₁₂T⁺₁T⁻₂ = T⁻₂T⁺₁R⁺₁₂."""
    report = VerificationReport("frt", tolerance)
    r_plus, _ = R_pm_limits(qp, grading)
    t_plus, t_minus = monodromy_pm(qp, grading, N)
    total = N + 2
    sites = tuple(range(2, total))
    r12 = place(r_plus, (0, 1), total)
    for label, a, b in (("++", t_plus, t_plus), ("--", t_minus, t_minus), ("+-", t_plus, t_minus)):
        t1 = place(a, (0,) + sites, total)
        t2 = place(b, (1,) + sites, total)
        report.add_residual(label, relative_residual((r12 @ t1 @ t2).entries(), (t2 @ t1 @ r12).entries()))
    report.set_info("sites", N)
    return report


def _ybe_trig(qp: QParams, grading: Grading, pair: Tuple[complex, complex]) -> float:
    return ybe_residual(functools.partial(R_trig, qp=qp, grading=grading), *pair)


def _rtt_trig(qp: QParams, grading: Grading, N: int, pair: Tuple[complex, complex]) -> float:
    r = functools.partial(R_trig, qp=qp, grading=grading)
    return rtt_residual(r, r, N, *pair)


def check_ybe_trig(
        qp: QParams,
        grading: Grading,
        samples: int = _DEFAULT_SAMPLES,
        seed: Hashable = None,
        tolerance: float = _DEFAULT_YBE_TOLERANCE,
        mapper: Callable = map,
) -> VerificationReport:
    pairs = trig_sampler(qp, seed).pairs(samples)
    report = VerificationReport("ybe", tolerance)
    for index, residual in enumerate(mapper(functools.partial(_ybe_trig, qp, grading), pairs)):
        report.add_residual("sample{}".format(index), residual)
    logger.info("trigonometric YBE: max residual %.3e", report.max_residual())
    return report


def check_rtt_trig(
        qp: QParams,
        grading: Grading,
        N: int = 1,
        samples: int = _DEFAULT_SAMPLES,
        seed: Hashable = None,
        tolerance: float = _DEFAULT_YBE_TOLERANCE,
        mapper: Callable = map,
) -> VerificationReport:
    pairs = trig_sampler(qp, seed).pairs(samples)
    report = VerificationReport("rtt", tolerance)
    report.set_info("sites", N)
    for index, residual in enumerate(mapper(functools.partial(_rtt_trig, qp, grading, N), pairs)):
        report.add_residual("sample{}".format(index), residual)
    return report
