# coding: utf-8
import copy
import json
import os

from superbound._boundary import BoundarySpec
from superbound._graded import SCHEMES, DISTINGUISHED, Grading
from superbound._qboundary import IdentityBoundary, KDiag, MBoundary, NonDiagBoundary
from superbound._qdeformed import QParams
from superbound._util import *

RATIONAL = "rational"
TRIG = "trig"
DEFORMATIONS = (RATIONAL, TRIG)

SEED_ENV = "SUPERBOUND_SEED"

_DEFAULT_M = 2
_DEFAULT_N = 1
_DEFAULT_SCHEME = DISTINGUISHED
_DEFAULT_DEFORMATION = RATIONAL
_DEFAULT_MU = 0.3 + 0.1j
_DEFAULT_BOUNDARY = "identity"
_DEFAULT_SITES = 2
_DEFAULT_SEED = 20240101
_DEFAULT_SAMPLES = 20
_DEFAULT_ORDER = 6

_RATIONAL_KINDS = ("identity", "kka", "linear")
_TRIG_KINDS = ("identity", "kdiag", "nondiag")
_MAX_SEED = 2 ** 64


class RunConfig(object):
    """The parameter class for one verification run."""

    __slots__ = ("_m", "_n", "_scheme", "_deformation", "_mu", "_boundary",
                 "_boundary_plus", "_sites", "_seed", "_samples", "_tolerance",
                 "_order", "_lam", "_report")

    def __init__(
            self,
            m: int = _DEFAULT_M,
            n: int = _DEFAULT_N,
            scheme: str = _DEFAULT_SCHEME,
            deformation: str = _DEFAULT_DEFORMATION,
            mu: complex = _DEFAULT_MU,
            boundary: str = _DEFAULT_BOUNDARY,
            boundary_plus: Optional[str] = None,
            sites: int = _DEFAULT_SITES,
            seed: int = _DEFAULT_SEED,
            samples: int = _DEFAULT_SAMPLES,
            tolerance: Optional[float] = None,
            order: int = _DEFAULT_ORDER,
            lam: Optional[complex] = None,
            report: Optional[str] = None,
    ):
        """`tolerance` None keeps the default of each check. `lam` is the
        spectral point of the spectrum command, `report` the output path
        (None writes to stdout)."""
        self.set_algebra(m, n, scheme)
        self.set_deformation(deformation)
        self.set_mu(mu)
        self.set_boundary(boundary)
        self.set_boundary_plus(boundary_plus)
        self.set_sites(sites)
        self.set_seed(seed)
        self.set_samples(samples)
        self.set_tolerance(tolerance)
        self.set_order(order)
        self.set_lam(lam)
        self.set_report(report)

    def __eq__(self, other) -> bool:
        return isinstance(other, RunConfig) and self.to_dict() == other.to_dict()

    def set_algebra(self, m: int, n: int, scheme: str = _DEFAULT_SCHEME) -> None:
        if scheme not in SCHEMES:
            raise ConfigError("algebra", "unknown scheme {!r}".format(scheme))
        try:
            Grading(m, n, scheme)
        except GradingError as e:
            raise ConfigError("algebra", str(e))
        self._m, self._n, self._scheme = m, n, scheme

    def set_deformation(self, deformation: str = _DEFAULT_DEFORMATION) -> None:
        if deformation not in DEFORMATIONS:
            raise ConfigError("deformation", "expected one of {}".format(DEFORMATIONS))
        self._deformation = deformation

    def set_mu(self, mu: complex = _DEFAULT_MU) -> None:
        try:
            QParams(mu)
        except (TypeError, ValueError) as e:
            raise ConfigError("mu", str(e))
        self._mu = complex(mu)

    def set_boundary(self, boundary: str = _DEFAULT_BOUNDARY) -> None:
        _check_boundary_syntax("boundary", boundary)
        self._boundary = boundary

    def set_boundary_plus(self, boundary_plus: Optional[str] = None) -> None:
        """None selects the natural left boundary: 𝕀 for the rational chain, M
        for the trigonometric one."""
        if boundary_plus is not None:
            _check_boundary_syntax("boundary_plus", boundary_plus)
        self._boundary_plus = boundary_plus

    def set_sites(self, sites: int = _DEFAULT_SITES) -> None:
        if not isinstance(sites, int) or sites < 1:
            raise ConfigError("sites", "need a positive integer, got {!r}".format(sites))
        self._sites = sites

    def set_seed(self, seed: int = _DEFAULT_SEED) -> None:
        if not isinstance(seed, int) or not 0 <= seed < _MAX_SEED:
            raise ConfigError("seed", "need an unsigned 64-bit integer, got {!r}".format(seed))
        self._seed = seed

    def set_samples(self, samples: int = _DEFAULT_SAMPLES) -> None:
        if not isinstance(samples, int) or samples < 1:
            raise ConfigError("samples", "need a positive integer, got {!r}".format(samples))
        self._samples = samples

    def set_tolerance(self, tolerance: Optional[float] = None) -> None:
        if tolerance is not None and not (isinstance(tolerance, (int, float)) and tolerance > 0):
            raise ConfigError("tolerance", "need a positive number, got {!r}".format(tolerance))
        self._tolerance = None if tolerance is None else float(tolerance)

    def set_order(self, order: int = _DEFAULT_ORDER) -> None:
        if not isinstance(order, int) or order < 2:
            raise ConfigError("order", "need an integer >= 2, got {!r}".format(order))
        self._order = order

    def set_lam(self, lam: Optional[complex] = None) -> None:
        self._lam = None if lam is None else complex(lam)

    def set_report(self, report: Optional[str] = None) -> None:
        self._report = report

    def get_algebra(self) -> Tuple[int, int, str]:
        return self._m, self._n, self._scheme

    def get_grading(self) -> Grading:
        return Grading(self._m, self._n, self._scheme)

    def get_deformation(self) -> str:
        return self._deformation

    def get_mu(self) -> complex:
        return self._mu

    def get_qparams(self) -> QParams:
        return QParams(self._mu)

    def get_boundary(self) -> str:
        return self._boundary

    def get_boundary_plus(self) -> Optional[str]:
        return self._boundary_plus

    def get_sites(self) -> int:
        return self._sites

    def get_seed(self) -> int:
        return self._seed

    def get_samples(self) -> int:
        return self._samples

    def get_tolerance(self) -> Optional[float]:
        return self._tolerance

    def get_order(self) -> int:
        return self._order

    def get_lam(self) -> Optional[complex]:
        return self._lam

    def get_report(self) -> Optional[str]:
        return self._report

    def copy(self) -> "RunConfig":
        return copy.copy(self)

    def to_dict(self) -> Dict:
        """JSON-ready form; complex values become [re, im]."""
        return {
            "algebra": [self._m, self._n, self._scheme],
            "deformation": self._deformation,
            "mu": [self._mu.real, self._mu.imag],
            "boundary": self._boundary,
            "boundary_plus": self._boundary_plus,
            "sites": self._sites,
            "seed": self._seed,
            "samples": self._samples,
            "tolerance": self._tolerance,
            "order": self._order,
            "lam": None if self._lam is None else [self._lam.real, self._lam.imag],
            "report": self._report,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "RunConfig":
        config = cls()
        config.update(data)
        return config

    def update(self, data: Mapping) -> None:
        """Apply the fields present in `data` (the `to_dict` layout)."""
        unknown = set(data) - set(self.to_dict())
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown configuration field")
        if "algebra" in data:
            algebra = list(data["algebra"])
            if len(algebra) == 2:
                algebra.append(DISTINGUISHED)
            if len(algebra) != 3:
                raise ConfigError("algebra", "expected [m, n] or [m, n, scheme]")
            self.set_algebra(*algebra)
        setters = {
            "deformation": self.set_deformation,
            "boundary": self.set_boundary,
            "boundary_plus": self.set_boundary_plus,
            "sites": self.set_sites,
            "seed": self.set_seed,
            "samples": self.set_samples,
            "tolerance": self.set_tolerance,
            "order": self.set_order,
            "report": self.set_report,
        }
        for key, setter in setters.items():
            if key in data:
                setter(data[key])
        for key, setter in (("mu", self.set_mu), ("lam", self.set_lam)):
            if key in data:
                setter(_complex_field(key, data[key]))

    def apply_environment(self, environ: Mapping[str, str] = os.environ) -> None:
        """Take the seed from SUPERBOUND_SEED when it is set."""
        if SEED_ENV in environ:
            try:
                seed = int(environ[SEED_ENV])
            except ValueError:
                raise ConfigError("seed", "{} is not an integer".format(SEED_ENV))
            self.set_seed(seed)

    def __repr__(self) -> str:
        return "RunConfig({})".format(self.to_dict())


def _complex_field(field: str, value) -> Optional[complex]:
    if value is None:
        return None
    if isinstance(value, str):
        try:
            return parse_complex(value)
        except ValueError as e:
            raise ConfigError(field, str(e))
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float, complex)):
        return complex(value)
    raise ConfigError(field, "expected [re, im], got {!r}".format(value))


def load_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, ValueError) as e:
        raise ConfigError("config", "cannot read {}: {}".format(path, e))
    if not isinstance(data, dict):
        raise ConfigError("config", "{} does not hold a JSON object".format(path))
    return RunConfig.from_dict(data)


def dump_config(config: RunConfig, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(config.to_dict(), f, sort_keys=True, indent=2)
        f.write("\n")


# boundary strings

_FIELD_COUNTS = {"identity": (0,), "kka": (1,), "linear": (2,), "kdiag": (1,), "nondiag": (1,)}


def _split_boundary(text: str) -> Tuple[str, List[str]]:
    kind, _, rest = text.partition(":")
    parts = rest.split(":") if rest else []
    return kind.strip(), parts


def _check_boundary_syntax(field: str, text: str) -> None:
    if not isinstance(text, str):
        raise ConfigError(field, "expected a boundary string")
    kind, parts = _split_boundary(text)
    if kind not in _FIELD_COUNTS:
        raise ConfigError(field, "unknown boundary kind {!r}".format(kind))
    if len(parts) not in _FIELD_COUNTS[kind]:
        raise ConfigError(field, "malformed boundary {!r}".format(text))


def build_boundary(config: RunConfig, field: str = "boundary"):
    """The boundary object named by `config.get_<field>()`.

    Rational: identity | kka:m1,m2,n1,n2 | linear:XI_RE,XI_IM:m1,m2,n1,n2.
    Trigonometric: identity | kdiag:ALPHA[,XI_RE,XI_IM] |
    nondiag:DIAGRAM,SECTOR,L,M_B,ZETA_RE,ZETA_IM.
    """
    text = config.get_boundary() if field == "boundary" else config.get_boundary_plus()
    grading = config.get_grading()
    rational = config.get_deformation() == RATIONAL
    if text is None:
        return BoundarySpec.identity(grading) if rational else MBoundary(config.get_qparams(), grading)
    kind, parts = _split_boundary(text)
    allowed = _RATIONAL_KINDS if rational else _TRIG_KINDS
    if kind not in allowed:
        raise ConfigError(field, "{} boundaries are not available for the {} chain".format(
            kind, config.get_deformation()))
    try:
        if rational:
            if kind == "identity":
                return BoundarySpec.identity(grading)
            if kind == "kka":
                return BoundarySpec.kka(grading, *_partition(parts[0]))
            return BoundarySpec.linear_kka(grading, parse_complex(parts[0]), *_partition(parts[1]))
        if kind == "identity":
            return IdentityBoundary(grading)
        fields = [p.strip() for p in parts[0].split(",")]
        if kind == "kdiag":
            if len(fields) not in (1, 3):
                raise ValueError("expected ALPHA[,XI_RE,XI_IM]")
            if len(fields) == 3:
                return KDiag(grading, int(fields[0]), complex(float(fields[1]), float(fields[2])))
            return KDiag(grading, int(fields[0]))
        if len(fields) != 6:
            raise ValueError("expected DIAGRAM,SECTOR,L,M_B,ZETA_RE,ZETA_IM")
        diagram, sector, L, m_b, zeta_re, zeta_im = fields
        return NonDiagBoundary(grading, config.get_qparams(), diagram, sector, int(L),
                               float(m_b), complex(float(zeta_re), float(zeta_im)))
    except (ValueError, TypeError, BoundaryError) as e:
        raise ConfigError(field, str(e))


def _partition(text: str) -> Tuple[int, int, int, int]:
    values = parse_ints(text)
    if len(values) != 4:
        raise ValueError("expected m1,m2,n1,n2")
    return values
