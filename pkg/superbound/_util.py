# coding: utf-8
import logging
import math
from typing import *

import numpy as np

from superbound._exceptions import *

logger = logging.getLogger(__name__)

# Above this condition number an inversion at a sampled point is rejected.
_MAX_CONDITION = 1e12
_MAX_DRAWS = 10000
_SINGULAR_RETRIES = 10


def norm(matrix) -> float:
    return float(np.linalg.norm(matrix))


def relative_residual(lhs, rhs) -> float:
    """‖lhs − rhs‖ / max(1, ‖lhs‖) in the Frobenius norm."""
    return norm(lhs - rhs) / max(1.0, norm(lhs))


def commutator_residual(a, b) -> float:
    """Ordinary commutator norm, scaled by the sizes of both operands."""
    return norm(a @ b - b @ a) / (max(1.0, norm(a)) * max(1.0, norm(b)))


def safe_inverse(matrix):
    if np.linalg.cond(matrix) > _MAX_CONDITION:
        raise SingularPointError("matrix is numerically singular")
    return np.linalg.inv(matrix)


def retry_singular(func: Callable, draw: Callable, attempts: int = _SINGULAR_RETRIES):
    """Call `func(draw())`, drawing a fresh argument whenever it hits a
    singular point. Gives up after `attempts` draws."""
    for _ in range(attempts - 1):
        arg = draw()
        try:
            return func(arg)
        except SingularPointError:
            logger.debug("singular point %s, resampling", arg)
    return func(draw())


class SpectralSampler(object):
    """Seeded spectral points from the box [−w, w] × [−h, h]i that stay at
    least `radius` away from every point in `avoid`."""

    __slots__ = ("_rng", "_half_width", "_half_height", "_avoid", "_radius")

    def __init__(
            self,
            seed: Hashable = None,
            half_width: float = 2.0,
            half_height: float = 2.0,
            avoid: Iterable[complex] = (0, 1j, -1j),
            radius: float = 0.1,
    ) -> None:
        self._rng = np.random.default_rng(seed)
        self._half_width = half_width
        self._half_height = half_height
        self._avoid = tuple(complex(z) for z in avoid)
        self._radius = radius

    def admissible(self, z: complex) -> bool:
        return all(abs(z - a) >= self._radius for a in self._avoid)

    def _draw(self) -> complex:
        re = self._rng.uniform(-self._half_width, self._half_width)
        im = self._rng.uniform(-self._half_height, self._half_height)
        return complex(re, im)

    def point(self) -> complex:
        for _ in range(_MAX_DRAWS):
            z = self._draw()
            if self.admissible(z):
                return z
        raise SingularPointError("no admissible spectral point in the box")

    def points(self, count: int) -> List[complex]:
        return [self.point() for _ in range(count)]

    def pair(self) -> Tuple[complex, complex]:
        """Two points whose sum and difference are admissible as well."""
        for _ in range(_MAX_DRAWS):
            z1, z2 = self.point(), self.point()
            if self.admissible(z1 - z2) and self.admissible(z1 + z2):
                return z1, z2
        raise SingularPointError("no admissible spectral pair in the box")

    def pairs(self, count: int) -> List[Tuple[complex, complex]]:
        return [self.pair() for _ in range(count)]


def parse_complex(text: str) -> complex:
    """Parse "RE,IM" (or a bare real "RE") into a complex number."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError("expected RE,IM but got {!r}".format(text))


def parse_ints(text: str) -> Tuple[int, ...]:
    return tuple(int(p) for p in text.split(",") if p.strip())


def q_number(x: complex, q: complex) -> complex:
    """The symmetric q-number [x]_q = (q^x − q^−x) / (q − q^−1)."""
    return (q ** x - q ** -x) / (q - 1 / q)


def is_close_to_root_of_unity(q: complex, max_order: int = 8, gap: float = 1e-3) -> bool:
    return any(abs(q ** j - 1) <= gap for j in range(1, max_order + 1))


def max_or_zero(values: Iterable[float]) -> float:
    values = list(values)
    if not values:
        return 0.0
    if any(math.isnan(v) for v in values):
        return math.nan
    return max(values)
