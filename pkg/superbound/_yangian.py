# coding: utf-8
"""The rational R-matrix of the super Yangian and the gl(m|n) generators in
the fundamental representation."""
import functools

from superbound._graded import *
from superbound._report import VerificationReport
from superbound._util import *

# Rational samplers avoid the zeros of λ² + 1.
RATIONAL_AVOID = (0, 1j, -1j)

_DEFAULT_SAMPLES = 20
_DEFAULT_YBE_TOLERANCE = 1e-11
_DEFAULT_RTT_TOLERANCE = 1e-10
_DEFAULT_ALGEBRA_TOLERANCE = 1e-12


def rational_sampler(seed: Hashable = None) -> SpectralSampler:
    return SpectralSampler(seed, avoid=RATIONAL_AVOID)


def rho(grading: Grading) -> Fraction:
    return grading.rho()


@functools.lru_cache(maxsize=None)
def permutation_P(grading: Grading) -> GradedOperator:
    """P = Σ_ij (−1)^{[j]} e_ij ⊗ e_ji, so P(v_a ⊗ v_b) = (−1)^{[a][b]} v_b ⊗ v_a."""
    d = grading.dim()
    result = zero(grading, 2)
    for i in range(d):
        for j in range(d):
            sign = (-1) ** grading.parity(j)
            result = result + sign * tensor_embed(unit(grading, i, j), unit(grading, j, i))
    return result


def R_rational(lam: complex, grading: Grading) -> GradedOperator:
    return lam * identity(grading, 2) + 1j * permutation_P(grading)


@functools.lru_cache(maxsize=None)
def projector_Q(grading: Grading) -> GradedOperator:
    """Q = ±P^{t₁}, the λ-independent part of the crossed R-matrix.

    The sign is fixed by Q² = 2ρQ: (P^{t₁})² = sdim·P^{t₁} and sdim = −2ρ,
    so Q = −P^{t₁} unless m = n.
    """
    transposed = partial_transpose(
        permutation_P(grading), 0, "t", crossing_form(grading)
    )
    sign = 1 if grading.sdim() == 2 * grading.rho() else -1
    return sign * transposed


def Rbar_rational(lam: complex, grading: Grading) -> GradedOperator:
    """R̄(λ) = λ̄ + iQ with λ̄ = −λ − iρ."""
    lam_bar = -lam - 1j * float(grading.rho())
    return lam_bar * identity(grading, 2) + 1j * projector_Q(grading)


def monodromy(
        lax: Callable[[complex], GradedOperator],
        lam: complex,
        N: int,
) -> GradedOperator:
    """T(λ) = L₀N(λ) ⋯ L₀₁(λ) on spaces (0, 1..N) for a two-space `lax`."""
    if N < 1:
        raise SpaceError("need at least one site, got N = {}".format(N))
    single = lax(lam)
    result = identity(single.grading(), N + 1)
    for k in range(N, 0, -1):
        result = result @ place(single, (0, k), N + 1)
    return result


def aux_generator_sum(N: int, grading: Grading) -> GradedOperator:
    """𝔓 = Σ_k P₀ₖ on (0, 1..N)."""
    P = permutation_P(grading)
    return functools.reduce(lambda x, y: x + y, [place(P, (0, k), N + 1) for k in range(1, N + 1)])


def monodromy_T(
        lam: complex,
        N: int,
        grading: Grading,
        normalize: bool = False,
) -> GradedOperator:
    result = monodromy(functools.partial(R_rational, grading=grading), lam, N)
    if normalize:
        result = result / lam ** N
    return result


class GeneratorSet(object):
    """Δ⁽ᴺ⁾(𝕡_ab) for all a, b on N sites, keyed by 0-based (a, b)."""

    __slots__ = ("_grading", "_N", "_generators")

    def __init__(
            self,
            grading: Grading,
            N: int,
            generators: Dict[Tuple[int, int], GradedOperator],
    ) -> None:
        self._grading = grading
        self._N = N
        self._generators = dict(generators)

    def grading(self) -> Grading:
        return self._grading

    def sites(self) -> int:
        return self._N

    def __getitem__(self, index: Tuple[int, int]) -> GradedOperator:
        return self._generators[index]

    def __iter__(self):
        return iter(sorted(self._generators))

    def __len__(self) -> int:
        return len(self._generators)

    def items(self):
        return sorted(self._generators.items())


def generator(grading: Grading, a: int, b: int) -> GradedOperator:
    """𝕡_ab in the fundamental representation, the coefficient of e_ab in
    P = Σ e_ab ⊗ 𝕡_ab: 𝕡_ab = (−1)^{[b]} e_ba."""
    return (-1) ** grading.parity(b) * unit(grading, b, a)


def coproduct(op: GradedOperator, N: int) -> GradedOperator:
    """Δ⁽ᴺ⁾ of a primitive single-site operator: Σ_k 𝕀 ⊗ … ⊗ op ⊗ … ⊗ 𝕀."""
    if N < 1:
        raise SpaceError("need at least one site, got N = {}".format(N))
    terms = [place(op, (k,), N) for k in range(N)]
    return functools.reduce(lambda x, y: x + y, terms)


def coproduct_generators(N: int, grading: Grading) -> GeneratorSet:
    d = grading.dim()
    generators = {
        (a, b): coproduct(generator(grading, a, b), N)
        for a in range(d)
        for b in range(d)
    }
    return GeneratorSet(grading, N, generators)


def opposite_coproduct_generators(N: int, grading: Grading) -> GeneratorSet:
    """Δ′⁽ᴺ⁾ built by iterating Δ′(x) = x ⊗ 𝕀 + 𝕀 ⊗ x from the last site."""
    d = grading.dim()
    generators = {}
    for a in range(d):
        for b in range(d):
            x = generator(grading, a, b)
            current = x
            for _ in range(N - 1):
                current = tensor_embed(current, identity(grading)) + tensor_embed(
                    identity(grading, current.num_spaces()), x
                )
            generators[(a, b)] = current
    return GeneratorSet(grading, N, generators)


def check_opposite_coproduct(
        N: int,
        grading: Grading,
        tolerance: float = _DEFAULT_ALGEBRA_TOLERANCE,
) -> VerificationReport:
    """Δ′ = Π∘Δ on the generators, Π the graded reversal of the sites."""
    report = VerificationReport("opposite-coproduct", tolerance)
    delta = coproduct_generators(N, grading)
    opposite = opposite_coproduct_generators(N, grading)
    reversal = list(range(N - 1, -1, -1))
    for index, op in delta.items():
        shifted = permute_spaces(op, reversal)
        report.add_residual(
            "p{}{}".format(index[0] + 1, index[1] + 1),
            relative_residual(opposite[index].entries(), shifted.entries()),
        )
    return report


def _gl_rhs(G: GeneratorSet, i: int, j: int, k: int, l: int) -> Tuple[str, GradedOperator]:
    p = G.grading().parity
    if k != j and i != l:
        return "disjoint", zero(G.grading(), G.sites())
    if k != j:
        return "left", (-1) ** p(i) * G[(k, j)]
    if i != l:
        sign = (-1) ** (p(i) * (p(j) + p(l)) + p(j) * p(l))
        return "right", -sign * G[(i, l)]
    return "diagonal", (-1) ** p(i) * (G[(j, j)] - G[(i, i)])


def check_gl_relations(
        G: GeneratorSet,
        tolerance: float = _DEFAULT_ALGEBRA_TOLERANCE,
) -> VerificationReport:
    """[𝕡_ij, 𝕡_kl} against the four relation families of gl(m|n).

    One residual per family, the worst over all index tuples.
    """
    report = VerificationReport("gl-relations", tolerance)
    worst = {}
    d = G.grading().dim()
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for l in range(d):
                    family, rhs = _gl_rhs(G, i, j, k, l)
                    lhs = super_commutator(G[(i, j)], G[(k, l)])
                    residual = norm(lhs.entries() - rhs.entries())
                    worst[family] = max(worst.get(family, 0.0), residual)
    for family in sorted(worst):
        report.add_residual(family, worst[family])
    logger.info("gl relations on %d sites: max residual %.3e",
                G.sites(), report.max_residual())
    return report


def ybe_residual(
        r_matrix: Callable[[complex], GradedOperator],
        lam1: complex,
        lam2: complex,
) -> float:
    """R₁₂(λ₁−λ₂)R₁₃(λ₁)R₂₃(λ₂) against R₂₃(λ₂)R₁₃(λ₁)R₁₂(λ₁−λ₂)."""
    r12 = place(r_matrix(lam1 - lam2), (0, 1), 3)
    r13 = place(r_matrix(lam1), (0, 2), 3)
    r23 = place(r_matrix(lam2), (1, 2), 3)
    lhs = (r12 @ r13 @ r23).entries()
    rhs = (r23 @ r13 @ r12).entries()
    return relative_residual(lhs, rhs)


def rtt_residual(
        r_matrix: Callable[[complex], GradedOperator],
        lax: Callable[[complex], GradedOperator],
        N: int,
        lam1: complex,
        lam2: complex,
) -> float:
    """R₁₂(λ₁−λ₂)T₁(λ₁)T₂(λ₂) against T₂(λ₂)T₁(λ₁)R₁₂(λ₁−λ₂).

    The two auxiliary spaces are factors 0 and 1, the sites follow.
    """
    total = N + 2
    sites = tuple(range(2, total))
    r12 = place(r_matrix(lam1 - lam2), (0, 1), total)
    t1 = place(monodromy(lax, lam1, N), (0,) + sites, total)
    t2 = place(monodromy(lax, lam2, N), (1,) + sites, total)
    lhs = (r12 @ t1 @ t2).entries()
    rhs = (t2 @ t1 @ r12).entries()
    return relative_residual(lhs, rhs)


def _ybe_rational(grading: Grading, pair: Tuple[complex, complex]) -> float:
    return ybe_residual(functools.partial(R_rational, grading=grading), *pair)


def _rtt_rational(grading: Grading, N: int, pair: Tuple[complex, complex]) -> float:
    r = functools.partial(R_rational, grading=grading)
    return rtt_residual(r, r, N, *pair)


def _sampled(
        report: VerificationReport,
        func: Callable,
        pairs: Sequence[Tuple[complex, complex]],
        mapper: Callable,
) -> VerificationReport:
    for index, residual in enumerate(mapper(func, pairs)):
        report.add_residual("sample{}".format(index), residual)
    return report


def check_ybe(
        grading: Grading,
        samples: int = _DEFAULT_SAMPLES,
        seed: Hashable = None,
        tolerance: float = _DEFAULT_YBE_TOLERANCE,
        mapper: Callable = map,
) -> VerificationReport:
    """Graded Yang-Baxter equation of R(λ) = λ + iP at seeded sample pairs."""
    pairs = rational_sampler(seed).pairs(samples)
    report = VerificationReport("ybe", tolerance)
    _sampled(report, functools.partial(_ybe_rational, grading), pairs, mapper)
    logger.info("rational YBE: max residual %.3e over %d samples",
                report.max_residual(), samples)
    return report


def check_rtt(
        grading: Grading,
        N: int = 1,
        samples: int = _DEFAULT_SAMPLES,
        seed: Hashable = None,
        tolerance: float = _DEFAULT_RTT_TOLERANCE,
        mapper: Callable = map,
) -> VerificationReport:
    pairs = rational_sampler(seed).pairs(samples)
    report = VerificationReport("rtt", tolerance)
    report.set_info("sites", N)
    report.set_info("normalized", False)
    _sampled(report, functools.partial(_rtt_rational, grading, N), pairs, mapper)
    logger.info("rational RTT on %d sites: max residual %.3e", N, report.max_residual())
    return report
