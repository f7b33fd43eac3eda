# coding: utf-8
import json
import math

from superbound._util import *

SCHEMA = "superbound-report/1"

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

_EXIT_CODES = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}

_DEFAULT_TOLERANCE = 1e-10


def _jsonable(value):
    """Complex numbers become [re, im]; matrices nested lists of such pairs."""
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "entries"):
        return _jsonable(value.entries())
    return value


class VerificationReport(object):
    """Outcome of one verification.

    Positive checks record residuals that must stay below `tolerance`.
    Negative checks record named expectations (a boolean each). A report with
    an inconclusive mark and no failure is inconclusive.
    """

    __slots__ = (
        "_equation", "_tolerance", "_residuals", "_expectations", "_tables",
        "_matrices", "_info", "_inconclusive", "_config", "wall_time",
    )

    def __init__(self, equation: str, tolerance: float = _DEFAULT_TOLERANCE) -> None:
        self._equation = equation
        self._tolerance = tolerance
        self._residuals = []
        self._expectations = {}
        self._tables = {}
        self._matrices = {}
        self._info = {}
        self._inconclusive = []
        self._config = {}
        self.wall_time = None

    def equation(self) -> str:
        return self._equation

    def tolerance(self) -> float:
        return self._tolerance

    def add_residual(self, label: str, value: float) -> None:
        value = float(value)
        logger.debug("%s[%s] residual %.3e", self._equation, label, value)
        self._residuals.append((label, value))

    def residuals(self) -> List[Tuple[str, float]]:
        return list(self._residuals)

    def max_residual(self) -> float:
        return max_or_zero(v for _, v in self._residuals)

    def expect(self, name: str, holds: bool) -> None:
        self._expectations[name] = bool(holds)

    def expectations(self) -> Dict[str, bool]:
        return dict(self._expectations)

    def add_table(self, name: str, table) -> None:
        self._tables[name] = table

    def table(self, name: str):
        return self._tables[name]

    def add_matrix(self, name: str, matrix) -> None:
        self._matrices[name] = matrix

    def matrix(self, name: str):
        return self._matrices[name]

    def set_info(self, name: str, value) -> None:
        self._info[name] = value

    def info(self, name: str, default=None):
        return self._info.get(name, default)

    def mark_inconclusive(self, reason: str) -> None:
        logger.info("%s inconclusive: %s", self._equation, reason)
        self._inconclusive.append(reason)

    def set_config(self, config: Dict) -> None:
        self._config = dict(config)

    def merge(self, other: "VerificationReport", prefix: str = "") -> None:
        """Fold the findings of `other` into this report.

        Residuals judged against a different tolerance are kept as info, and
        their verdict becomes the expectation `<prefix>within_tolerance`.
        """
        if other._tolerance == self._tolerance:
            for label, value in other._residuals:
                self._residuals.append((prefix + label, value))
        else:
            self._info[prefix + "residuals"] = {label: value for label, value in other._residuals}
            self._info[prefix + "tolerance"] = other._tolerance
            self._expectations[prefix + "within_tolerance"] = other.residuals_ok()
        for name, holds in other._expectations.items():
            self._expectations[prefix + name] = holds
        for name, table in other._tables.items():
            self._tables[prefix + name] = table
        for name, matrix in other._matrices.items():
            self._matrices[prefix + name] = matrix
        for name, value in other._info.items():
            self._info[prefix + name] = value
        for reason in other._inconclusive:
            self._inconclusive.append(prefix + reason)

    def residuals_ok(self) -> bool:
        worst = self.max_residual()
        return not math.isnan(worst) and worst < self._tolerance

    def status(self) -> str:
        if not self.residuals_ok() or not all(self._expectations.values()):
            return FAIL
        if self._inconclusive:
            return INCONCLUSIVE
        return PASS

    def passed(self) -> bool:
        return self.status() == PASS

    def exit_code(self) -> int:
        return _EXIT_CODES[self.status()]

    def to_dict(self, include_matrices: bool = True) -> Dict:
        result = {
            "schema": SCHEMA,
            "equation": self._equation,
            "config": _jsonable(self._config),
            "tolerance": self._tolerance,
            "residuals": [
                {"label": label, "value": _jsonable(value)}
                for label, value in self._residuals
            ],
            "max_residual": _jsonable(self.max_residual()),
            "expectations": self._expectations,
            "tables": _jsonable(self._tables),
            "info": _jsonable(self._info),
            "inconclusive": list(self._inconclusive),
            "status": self.status(),
            "wall_time": self.wall_time,
        }
        if include_matrices:
            result["matrices"] = _jsonable(self._matrices)
        return result

    def to_json(self, include_matrices: bool = True) -> str:
        return json.dumps(self.to_dict(include_matrices), sort_keys=True, indent=2)

    def write(self, path: str, include_matrices: bool = True) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_json(include_matrices))
            f.write("\n")

    def __repr__(self) -> str:
        return "VerificationReport({!r}, status={!r}, max_residual={:.3e})".format(
            self._equation, self.status(), self.max_residual()
        )
