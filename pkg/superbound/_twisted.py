# coding: utf-8
"""The twisted super Yangian: crossed boundary objects, the osp charges that
fold gl(m|2k) and the twisted Casimir."""
import functools

import scipy.linalg

from superbound._boundary import scan_generators
from superbound._graded import *
from superbound._report import VerificationReport
from superbound._util import *
from superbound._yangian import *

_DEFAULT_SAMPLES = 20
_DEFAULT_TOLERANCE = 1e-10
_SPAN_RTOL = 1e-10


def _require_symmetric(grading: Grading) -> None:
    if grading.scheme != SYMMETRIC:
        raise GradingError("the twisted construction needs the symmetric grading")


def transpose_t(op: GradedOperator, space: int = 0) -> GradedOperator:
    return partial_transpose(op, space, "t", crossing_form(op.grading()))


def twisted_double_row(lam: complex, N: int, grading: Grading, K=None) -> GradedOperator:
    """𝕋̄(λ) = T(λ)K T^{t₀}(−λ−iρ); K defaults to 𝕀."""
    _require_symmetric(grading)
    rho = float(grading.rho())
    t = monodromy_T(lam, N, grading)
    t_crossed = transpose_t(monodromy_T(-lam - 1j * rho, N, grading))
    if K is None:
        return t @ t_crossed
    k = place(GradedOperator(grading, K, 1), (0,), N + 1)
    return t @ k @ t_crossed


def twisted_transfer(lam: complex, N: int, grading: Grading) -> GradedOperator:
    """t̄(λ) = str₀ 𝕋̄(λ) with K = K⁺ = 𝕀."""
    return partial_super_trace_aux(twisted_double_row(lam, N, grading))


def twisted_residual(grading: Grading, lam1: complex, lam2: complex, N: int = 0) -> float:
    """R₁₂(λ₁−λ₂)K₁(λ₁)R̄₁₂(λ₁+λ₂)K₂(λ₂) = K₂(λ₂)R̄₁₂(λ₁+λ₂)K₁(λ₁)R₁₂(λ₁−λ₂).

    N = 0 checks K = 𝕀 itself, N ≥ 1 the dressed 𝕋̄.
    """
    total = N + 2
    sites = tuple(range(2, total))
    r_minus = place(R_rational(lam1 - lam2, grading), (0, 1), total)
    rbar_plus = place(Rbar_rational(lam1 + lam2, grading), (0, 1), total)
    if N == 0:
        return relative_residual((r_minus @ rbar_plus).entries(), (rbar_plus @ r_minus).entries())
    k1 = place(twisted_double_row(lam1, N, grading), (0,) + sites, total)
    k2 = place(twisted_double_row(lam2, N, grading), (1,) + sites, total)
    lhs = r_minus @ k1 @ rbar_plus @ k2
    rhs = k2 @ rbar_plus @ k1 @ r_minus
    return relative_residual(lhs.entries(), rhs.entries())


def twisted_generator(grading: Grading, a: int, b: int) -> GradedOperator:
    """𝕢̄_ab = 𝕡_ab − (𝕡_ab)ᵗ on a single site."""
    p = generator(grading, a, b)
    return p - transpose_t(p)


def twisted_generators(N: int, grading: Grading) -> Dict[Tuple[int, int], GradedOperator]:
    _require_symmetric(grading)
    d = grading.dim()
    return {
        (a, b): coproduct(twisted_generator(grading, a, b), N)
        for a in range(d)
        for b in range(d)
    }


def osp_dimension(grading: Grading) -> int:
    """m(m−1)/2 + k(2k+1) + 2mk for gl(m|2k)."""
    m, k = grading.m, grading.n // 2
    return m * (m - 1) // 2 + k * (2 * k + 1) + 2 * m * k


def span_closure(operators: Iterable[GradedOperator]) -> Tuple[int, float]:
    """Rank of the linear span and the worst distance of a super-commutator
    of two spanning operators from that span."""
    operators = list(operators)
    columns = np.array([op.entries().reshape(-1) for op in operators]).T
    basis = scipy.linalg.orth(columns, rcond=_SPAN_RTOL)
    worst = 0.0
    for x in operators:
        for y in operators:
            v = super_commutator(x, y).entries().reshape(-1)
            outside = v - basis @ (basis.conj().T @ v)
            worst = max(worst, norm(outside) / max(1.0, norm(v)))
    return basis.shape[1], worst


def twisted_objects(N: int, grading: Grading) -> Dict:
    """V, the charge family 𝕢̄⁽⁰⁾, 𝕢̄⁽¹⁾ = 𝔓𝔓̂ and the twisted Casimir."""
    _require_symmetric(grading)
    return {
        "V": crossing_form(grading),
        "charges": twisted_generators(N, grading),
        "q1": twisted_q1(N, grading),
        "casimir": twisted_casimir(N, grading),
    }


def twisted_q1(N: int, grading: Grading) -> GradedOperator:
    """𝔓𝔓̂ with 𝔓̂ = Nρ − 𝔓^{t₀}."""
    big_p = aux_generator_sum(N, grading)
    hat = float(grading.rho()) * N * identity(grading, N + 1) - transpose_t(big_p)
    return big_p @ hat


def twisted_casimir(N: int, grading: Grading) -> GradedOperator:
    return partial_super_trace_aux(twisted_q1(N, grading))


def _twisted_sample(grading: Grading, N: int, pair: Tuple[complex, complex]) -> float:
    return twisted_residual(grading, pair[0], pair[1], N)


def check_twisted(
        grading: Grading,
        N: int = 0,
        samples: int = _DEFAULT_SAMPLES,
        seed: Hashable = None,
        tolerance: float = _DEFAULT_TOLERANCE,
        mapper: Callable = map,
) -> VerificationReport:
    """The twisted equation with K = 𝕀 and the osp closure of the charges.

    At N ≥ 1 the same pairs also check the dressed double row 𝕋̄(λ).
    """
    _require_symmetric(grading)
    sampler = rational_sampler(seed)
    pairs = sampler.pairs(samples)
    report = VerificationReport("twisted", tolerance)
    for index, residual in enumerate(mapper(functools.partial(_twisted_sample, grading, 0), pairs)):
        report.add_residual("sample{}".format(index), residual)
    if N >= 1:
        dressed = mapper(functools.partial(_twisted_sample, grading, N), pairs)
        for index, residual in enumerate(dressed):
            report.add_residual("dressed{}".format(index), residual)
        report.set_info("sites", N)
    charges = twisted_generators(1, grading).values()
    dimension, outside = span_closure(charges)
    report.add_residual("osp_closure", outside)
    report.set_info("osp_dimension", dimension)
    report.expect("osp_dimension", dimension == osp_dimension(grading))
    logger.info("twisted equation: max residual %.3e, osp span dimension %d",
                report.max_residual(), dimension)
    return report


def twisted_symmetry_scan(
        N: int,
        grading: Grading,
        samples: int = 4,
        seed: Hashable = None,
) -> VerificationReport:
    """[t̄(λ), 𝕢̄_ab] for all charges, [C, 𝕢̄_ab] for the twisted Casimir and a
    broken control Δ⁽ᴺ⁾(𝕡₁₁) that is outside the osp span."""
    _require_symmetric(grading)
    sampler = rational_sampler(seed)
    transfers = [twisted_transfer(z, N, grading) for z in sampler.points(samples)]
    charges = twisted_generators(N, grading)
    report = scan_generators(transfers, charges, frozenset(charges), "twisted-symmetry")
    casimir = twisted_casimir(N, grading).entries()
    for (a, b), q in sorted(charges.items()):
        report.add_residual(
            "casimir_vs_{}{}".format(a + 1, b + 1), commutator_residual(casimir, q.entries())
        )
    control = coproduct(generator(grading, 0, 0), N).entries()
    worst = max_or_zero(commutator_residual(t.entries(), control) for t in transfers)
    report.set_info("control_residual", worst)
    if N >= 2:
        report.expect("control_broken", worst > 1e-3)
    report.set_info("sites", N)
    return report
