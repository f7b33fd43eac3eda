# coding: utf-8
"""The `superbound` command-line driver."""
import argparse
import logging
import os
import sys
import time

from superbound._boundary import (
    casimir_report, check_commuting_transfer, check_reflection, check_series_against_point,
    extract_charges, series_double_row, symmetry_scan, transfer_matrix,
)
from superbound._config import (
    RATIONAL, TRIG, RunConfig, build_boundary, load_config,
)
from superbound._graded import SCHEMES, SYMMETRIC
from superbound._qboundary import (
    NonDiagBoundary, check_charges_commute, check_commuting_transfer_trig,
    check_nondiag_reflection, check_reflection_trig, open_transfer_trig, q_casimir_report,
    q_casimirs, q_symmetry_scan, q_twisted,
)
from superbound._qdeformed import (
    check_coassociativity, check_frt, check_L_pm, check_rtt_trig, check_uq_relations,
    check_ybe_trig, select_weight_convention, trig_sampler, uq_fundamental,
)
from superbound._report import VerificationReport
from superbound._twisted import check_twisted, twisted_symmetry_scan
from superbound._util import *
from superbound._yangian import check_rtt, check_ybe, rational_sampler

EQUATIONS = ("ybe", "rtt", "frt", "reflection", "twisted", "qtwisted", "uq-relations")

USAGE_EXIT_CODE = 64

_VERBOSITY = (logging.WARNING, logging.INFO, logging.DEBUG)

# spectrum clustering: gap threshold relative to the spectral scale, and the
# factor above it within which a gap is considered ambiguous
_CLUSTER_GAP = 1e-8
_AMBIGUITY_FACTOR = 10
_SPREAD_TOLERANCE = 1e-9


class _ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        raise ConfigError("arguments", message)


def _algebra(text: str) -> Tuple[int, int, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError("expected m,n[,scheme]")
    scheme = parts[2] if len(parts) == 3 else SCHEMES[0]
    try:
        return int(parts[0]), int(parts[1]), scheme
    except ValueError:
        raise argparse.ArgumentTypeError("expected integers m,n but got {!r}".format(text))


def _complex(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _common_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    parent.add_argument("--algebra", type=_algebra, metavar="M,N[,SCHEME]",
                        help="gl(m|n) and its grading scheme (distinguished or symmetric)")
    deformation = parent.add_mutually_exclusive_group()
    deformation.add_argument("--rational", dest="deformation", action="store_const", const=RATIONAL)
    deformation.add_argument("--trig", dest="deformation", action="store_const", const=TRIG)
    parent.add_argument("--mu", type=_complex, metavar="RE,IM", help="deformation q = exp(i·mu)")
    parent.add_argument("--boundary", metavar="SPEC", help="right boundary K")
    parent.add_argument("--boundary-plus", dest="boundary_plus", metavar="SPEC",
                        help="left boundary K+ (default 𝕀 rational, M trigonometric)")
    parent.add_argument("--sites", type=int, metavar="N")
    parent.add_argument("--seed", type=int, metavar="S")
    parent.add_argument("--samples", type=int, metavar="K")
    parent.add_argument("--tol", dest="tolerance", type=float, metavar="T")
    parent.add_argument("--order", type=int, metavar="P", help="series truncation order")
    parent.add_argument("--report", metavar="PATH", help="write the JSON report here")
    parent.add_argument("--config", metavar="PATH", help="JSON run configuration")
    parent.add_argument("-v", "--verbose", action="count")
    return parent


def make_parser() -> argparse.ArgumentParser:
    parent = _common_flags()
    parser = _ArgumentParser(prog="superbound",
                             description="Numerical verification of graded integrable structures.")
    commands = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)
    commands.required = True
    check = commands.add_parser("check", parents=[parent], help="verify one equation")
    check.add_argument("equation", choices=EQUATIONS)
    symmetry = commands.add_parser("symmetry", parents=[parent], help="preserved and broken generators")
    symmetry.add_argument("--twisted", action="store_true",
                          help="scan the twisted transfer matrix against the osp charges")
    commands.add_parser("casimir", parents=[parent], help="Casimir and higher charges")
    spectrum = commands.add_parser("spectrum", parents=[parent],
                                   help="degeneracy multiplets of t(λ)")
    spectrum.add_argument("--lambda", dest="lam", type=_complex, metavar="RE,IM",
                          default=argparse.SUPPRESS)
    return parser


def resolve_config(args: argparse.Namespace, environ: Mapping[str, str] = None) -> RunConfig:
    """Defaults, then the config file, then SUPERBOUND_SEED, then flags."""
    options = vars(args)
    config = load_config(options["config"]) if "config" in options else RunConfig()
    config.apply_environment(os.environ if environ is None else environ)
    flags = {}
    if "algebra" in options:
        flags["algebra"] = list(options["algebra"])
    for key in ("deformation", "boundary", "boundary_plus", "sites", "seed",
                "samples", "tolerance", "order", "report"):
        if key in options:
            flags[key] = options[key]
    for key in ("mu", "lam"):
        if key in options:
            flags[key] = [options[key].real, options[key].imag]
    config.update(flags)
    return config


def _tolerance(config: RunConfig) -> Dict:
    tolerance = config.get_tolerance()
    return {} if tolerance is None else {"tolerance": tolerance}


def _require_symmetric(config: RunConfig, equation: str) -> None:
    if config.get_algebra()[2] != SYMMETRIC:
        raise ConfigError("algebra", "{} needs the symmetric grading".format(equation))


def cmd_check(equation: str, config: RunConfig) -> VerificationReport:
    grading = config.get_grading()
    N, samples, seed = config.get_sites(), config.get_samples(), config.get_seed()
    tolerance = _tolerance(config)
    rational = config.get_deformation() == RATIONAL
    if equation == "ybe":
        if rational:
            return check_ybe(grading, samples, seed, **tolerance)
        return check_ybe_trig(config.get_qparams(), grading, samples, seed, **tolerance)
    if equation == "rtt":
        if rational:
            return check_rtt(grading, N, samples, seed, **tolerance)
        return check_rtt_trig(config.get_qparams(), grading, N, samples, seed, **tolerance)
    if equation == "frt":
        qp = config.get_qparams()
        report = check_frt(qp, grading, N, **tolerance)
        report.merge(check_L_pm(qp, grading, select_weight_convention(qp, grading), **tolerance), "lax.")
        return report
    if equation == "uq-relations":
        qp = config.get_qparams()
        convention = select_weight_convention(qp, grading)
        report = check_uq_relations(uq_fundamental(qp, grading, N, convention), **tolerance)
        report.merge(check_coassociativity(qp, grading, convention, **tolerance), "coassociativity.")
        return report
    if equation == "twisted":
        _require_symmetric(config, equation)
        if not rational:
            raise ConfigError("deformation", "the twisted equation is rational; use qtwisted")
        return check_twisted(grading, N, samples, seed, **tolerance)
    if equation == "qtwisted":
        _require_symmetric(config, equation)
        return q_twisted(config.get_qparams(), grading, N, samples, seed, **tolerance)
    return _check_reflection(config)


def _check_reflection(config: RunConfig) -> VerificationReport:
    N, samples, seed = config.get_sites(), config.get_samples(), config.get_seed()
    tolerance = _tolerance(config)
    B = build_boundary(config)
    B_plus = build_boundary(config, "boundary_plus")
    if config.get_deformation() == RATIONAL:
        report = check_reflection(B, N, samples, seed, **tolerance)
        report.merge(check_commuting_transfer(B, B_plus, N, seed=seed, **tolerance), "transfer.")
        return report
    qp = config.get_qparams()
    if isinstance(B, NonDiagBoundary):
        return check_nondiag_reflection(B, qp, samples, seed, **tolerance)
    report = check_reflection_trig(B, qp, N, samples, seed, **tolerance)
    report.merge(check_commuting_transfer_trig(B, N, qp, B_plus, seed=seed, **tolerance), "transfer.")
    return report


def cmd_symmetry(config: RunConfig, twisted: bool = False) -> VerificationReport:
    N, samples, seed = config.get_sites(), config.get_samples(), config.get_seed()
    if twisted:
        _require_symmetric(config, "the twisted scan")
        if config.get_deformation() != RATIONAL:
            raise ConfigError("deformation", "the twisted scan is rational")
        return twisted_symmetry_scan(N, config.get_grading(), samples, seed)
    B = build_boundary(config)
    B_plus = build_boundary(config, "boundary_plus")
    if config.get_deformation() == RATIONAL:
        return symmetry_scan(B, B_plus, N, samples, seed)
    return q_symmetry_scan(B, N, config.get_qparams(), samples, seed, K_plus=B_plus)


def cmd_casimir(config: RunConfig) -> VerificationReport:
    B = build_boundary(config)
    N, samples, seed = config.get_sites(), config.get_samples(), config.get_seed()
    tolerance = _tolerance(config)
    if config.get_deformation() == RATIONAL:
        report = casimir_report(B, N, config.get_order(), samples, seed, **tolerance)
        report.merge(check_series_against_point(B, N, config.get_order()), "series.")
        return report
    qp = config.get_qparams()
    report = q_casimir_report(B, N, qp, samples, seed, **tolerance)
    report.merge(check_charges_commute(B, N, qp, samples, seed, **tolerance), "charges.")
    return report


def cluster(values: Sequence[complex], threshold: float) -> Tuple[List[List[int]], bool]:
    """Single-linkage clusters of `values` at `threshold`, and whether some
    gap lies within the ambiguity factor above it."""
    count = len(values)
    parent = list(range(count))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(count):
        for j in range(i + 1, count):
            if abs(values[i] - values[j]) <= threshold:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(count):
        groups.setdefault(find(i), []).append(i)
    clusters = sorted(groups.values(), key=lambda g: (values[g[0]].real, values[g[0]].imag))
    roots = [find(i) for i in range(count)]
    ambiguous = any(
        roots[i] != roots[j] and abs(values[i] - values[j]) <= _AMBIGUITY_FACTOR * threshold
        for i in range(count) for j in range(i + 1, count)
    )
    return clusters, ambiguous


def multiplet_structure(t) -> Tuple[np.ndarray, np.ndarray, List[List[int]], bool]:
    eigenvalues, vectors = np.linalg.eig(t)
    scale = max(1.0, float(np.max(np.abs(eigenvalues)))) if len(eigenvalues) else 1.0
    clusters, ambiguous = cluster(list(eigenvalues), _CLUSTER_GAP * scale)
    return eigenvalues, vectors, clusters, ambiguous


def _casimir_spread(casimir, vectors, clusters) -> float:
    """Largest spread of the Casimir eigenvalues within one multiplet."""
    scale = max(1.0, float(np.max(np.abs(np.linalg.eigvals(casimir)))))
    worst = 0.0
    for members in clusters:
        basis = vectors[:, members]
        block = np.linalg.lstsq(basis, casimir @ basis, rcond=None)[0]
        values = np.linalg.eigvals(block)
        worst = max(worst, float(np.max(np.abs(values - values[0]))) / scale)
    return worst


def cmd_spectrum(config: RunConfig) -> VerificationReport:
    """Eigenvalues of t(λ₀) grouped into multiplets, the same structure at a
    second point, and the Casimir spread within each multiplet."""
    B = build_boundary(config)
    B_plus = build_boundary(config, "boundary_plus")
    N, seed = config.get_sites(), config.get_seed()
    rational = config.get_deformation() == RATIONAL
    qp = None if rational else config.get_qparams()
    sampler = rational_sampler(seed) if rational else trig_sampler(qp, seed)
    lam0 = config.get_lam()
    if lam0 is None:
        lam0 = sampler.point()
    elif not sampler.admissible(lam0):
        raise ConfigError("lam", "{} is an excluded spectral point".format(lam0))
    lam1 = sampler.point()
    while abs(lam1 - lam0) < 1e-3:
        lam1 = sampler.point()

    def transfer(lam):
        if rational:
            return transfer_matrix(lam, B, B_plus, N).entries()
        return open_transfer_trig(lam, B, N, qp, B_plus).entries()

    report = VerificationReport("spectrum", _tolerance(config).get("tolerance", _SPREAD_TOLERANCE))
    eigenvalues, vectors, clusters, ambiguous = multiplet_structure(transfer(lam0))
    _, _, clusters1, ambiguous1 = multiplet_structure(transfer(lam1))
    multiplicities = sorted(len(c) for c in clusters)
    multiplicities1 = sorted(len(c) for c in clusters1)
    report.set_info("lambda", lam0)
    report.set_info("second_lambda", lam1)
    report.add_table("eigenvalues", list(eigenvalues))
    report.add_table("multiplets", [
        {"eigenvalue": eigenvalues[c[0]], "multiplicity": len(c)} for c in clusters
    ])
    report.set_info("multiplicities", multiplicities)
    report.set_info("second_multiplicities", multiplicities1)
    report.expect("multiplicities_lambda_independent", multiplicities == multiplicities1)
    if ambiguous or ambiguous1:
        report.mark_inconclusive("an eigenvalue gap lies within {}x of the cluster threshold"
                                 .format(_AMBIGUITY_FACTOR))
    for name, casimir in _spectrum_casimirs(config, B, N, qp).items():
        report.add_residual("casimir_spread_" + name, _casimir_spread(casimir, vectors, clusters))
    return report


def _spectrum_casimirs(config: RunConfig, B, N: int, qp) -> Dict:
    """The Casimirs that commute with t(λ) for this pair of boundaries."""
    if config.get_boundary_plus() is not None:
        return {}
    if qp is None:
        charges = extract_charges(series_double_row(B, N, config.get_order()))
        return {"C": charges.casimir.entries()}
    return {"C" + label: c.entries() for label, c in q_casimirs(B, N, qp).items()}


def execute(args: argparse.Namespace, environ: Mapping[str, str] = None) -> Tuple[VerificationReport, RunConfig]:
    """Run the parsed command; the report is not yet written."""
    config = resolve_config(args, environ)
    start = time.perf_counter()
    try:
        if args.command == "check":
            report = cmd_check(args.equation, config)
        elif args.command == "symmetry":
            report = cmd_symmetry(config, getattr(args, "twisted", False))
        elif args.command == "casimir":
            report = cmd_casimir(config)
        else:
            report = cmd_spectrum(config)
    except GradingError as e:
        raise ConfigError("algebra", str(e))
    except BoundaryError as e:
        raise ConfigError("boundary", str(e))
    report.wall_time = time.perf_counter() - start
    report.set_config(config.to_dict())
    return report, config


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = make_parser().parse_args(argv)
        verbose = getattr(args, "verbose", 0)
        logging.basicConfig(level=_VERBOSITY[min(verbose, len(_VERBOSITY) - 1)],
                            format="%(levelname)s %(name)s: %(message)s")
        report, config = execute(args)
    except ConfigError as e:
        print("superbound: {}".format(e), file=sys.stderr)
        return USAGE_EXIT_CODE
    except SingularPointError as e:
        print("superbound: {}".format(e), file=sys.stderr)
        return 1
    if config.get_report() is None:
        print(report.to_json())
    else:
        report.write(config.get_report())
    logger.info("%r", report)
    return report.exit_code()
