# coding: utf-8
from superbound._graded import *
from superbound._util import *


class OperatorSeries(object):
    """A truncated series c₀ + c₁x + … + c_k x^k in x = 1/λ with operator
    coefficients on a fixed set of spaces. Immutable."""

    __slots__ = ("_coefficients",)

    def __init__(self, coefficients: Sequence[GradedOperator]) -> None:
        coefficients = tuple(coefficients)
        if not coefficients:
            raise ValueError("a series needs at least one coefficient")
        head = coefficients[0]
        for c in coefficients[1:]:
            if c.grading() != head.grading():
                raise GradingError("series coefficients carry different gradings")
            if c.num_spaces() != head.num_spaces():
                raise SpaceError("series coefficients act on different spaces")
        self._coefficients = coefficients

    @classmethod
    def constant(cls, op: GradedOperator, order: int) -> "OperatorSeries":
        z = zero(op.grading(), op.num_spaces())
        return cls([op] + [z] * order)

    def order(self) -> int:
        return len(self._coefficients) - 1

    def grading(self) -> Grading:
        return self._coefficients[0].grading()

    def num_spaces(self) -> int:
        return self._coefficients[0].num_spaces()

    def coefficient(self, k: int) -> GradedOperator:
        if k > self.order():
            raise ValueError(
                "coefficient {} is beyond the truncation order {}".format(k, self.order())
            )
        return self._coefficients[k]

    def coefficients(self) -> Tuple[GradedOperator, ...]:
        return self._coefficients

    def truncate(self, order: int) -> "OperatorSeries":
        return OperatorSeries(self._coefficients[:order + 1])

    def padded(self, order: int) -> "OperatorSeries":
        """Extend with zero coefficients up to `order`, or truncate down to it."""
        if order <= self.order():
            return self.truncate(order)
        z = zero(self.grading(), self.num_spaces())
        return OperatorSeries(self._coefficients + (z,) * (order - self.order()))

    def map(self, func: Callable[[GradedOperator], GradedOperator]) -> "OperatorSeries":
        return OperatorSeries([func(c) for c in self._coefficients])

    def _aligned(self, other: "OperatorSeries"):
        order = min(self.order(), other.order())
        return self._coefficients[:order + 1], other._coefficients[:order + 1]

    def __add__(self, other: "OperatorSeries") -> "OperatorSeries":
        a, b = self._aligned(other)
        return OperatorSeries([x + y for x, y in zip(a, b)])

    def __sub__(self, other: "OperatorSeries") -> "OperatorSeries":
        a, b = self._aligned(other)
        return OperatorSeries([x - y for x, y in zip(a, b)])

    def __neg__(self) -> "OperatorSeries":
        return self.map(lambda c: -c)

    def __mul__(self, scalar: complex) -> "OperatorSeries":
        return self.map(lambda c: c * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other: "OperatorSeries") -> "OperatorSeries":
        a, b = self._aligned(other)
        result = []
        for k in range(len(a)):
            term = a[0] @ b[k]
            for j in range(1, k + 1):
                term = term + a[j] @ b[k - j]
            result.append(term)
        return OperatorSeries(result)

    def inverse(self) -> "OperatorSeries":
        """B with B·A = A·B = 𝕀 + O(x^{k+1}); needs an invertible c₀."""
        a = self._coefficients
        grading, s = self.grading(), self.num_spaces()
        inv0 = GradedOperator(grading, safe_inverse(a[0].entries()), s)
        result = [inv0]
        for k in range(1, len(a)):
            acc = a[1] @ result[k - 1]
            for j in range(2, k + 1):
                acc = acc + a[j] @ result[k - j]
            result.append(-(inv0 @ acc))
        return OperatorSeries(result)

    def evaluate(self, lam: complex) -> GradedOperator:
        x = 1 / lam
        result = self._coefficients[-1]
        for c in reversed(self._coefficients[:-1]):
            result = c + x * result
        return result

    def __repr__(self) -> str:
        return "OperatorSeries(order={}, num_spaces={})".format(
            self.order(), self.num_spaces()
        )


def linear_series(constant: GradedOperator, slope: GradedOperator, order: int) -> OperatorSeries:
    """The series of constant + slope·x."""
    return OperatorSeries([constant, slope]).padded(order)
