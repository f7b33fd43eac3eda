# coding: utf-8
"""ℤ₂-graded tensor calculus on dense matrices.

Operators on an ordered product of s copies of ℂ^{m|n} are stored as
d^s × d^s complex matrices, with multi-indices flattened row-major (space 0 is
the most significant digit). The grading signs of the graded tensor product
are folded into `tensor_embed`, so products of embedded operators are plain
matrix products.
"""
import functools
from fractions import Fraction

from superbound._util import *

DISTINGUISHED = "distinguished"
SYMMETRIC = "symmetric"
SCHEMES = (DISTINGUISHED, SYMMETRIC)

# Entries below this magnitude (relative to the largest one) do not count when
# reading the parity of an operator.
_PARITY_RTOL = 1e-12


def _signs(exponent):
    return np.where(np.asarray(exponent) % 2, -1, 1)


@functools.lru_cache(maxsize=None)
def _multi_parities(parities: Tuple[int, ...], num_spaces: int):
    p = np.array(parities, dtype=int)
    result = np.zeros(1, dtype=int)
    for _ in range(num_spaces):
        result = ((result[:, None] + p[None, :]) % 2).reshape(-1)
    result.flags.writeable = False
    return result


class Grading(object):
    """The parity assignment [i] of gl(m|n) in one of the two schemes."""

    __slots__ = ("_m", "_n", "_scheme", "_parities")

    def __init__(self, m: int, n: int, scheme: str = DISTINGUISHED) -> None:
        if not (isinstance(m, int) and isinstance(n, int)):
            raise GradingError("m and n must be integers")
        if m < 0 or n < 0 or m + n < 1:
            raise GradingError(
                "need m >= 0, n >= 0 and m + n >= 1, got ({}, {})".format(m, n)
            )
        if scheme not in SCHEMES:
            raise GradingError("unknown grading scheme {!r}".format(scheme))
        if scheme == SYMMETRIC:
            if n % 2:
                raise GradingError("symmetric grading requires n = 2k")
            k = n // 2
            parities = (0,) * k + (1,) * m + (0,) * k
        else:
            parities = (0,) * m + (1,) * n
        self._m = m
        self._n = n
        self._scheme = scheme
        self._parities = parities

    @property
    def m(self) -> int:
        return self._m

    @property
    def n(self) -> int:
        return self._n

    @property
    def scheme(self) -> str:
        return self._scheme

    def parities(self) -> Tuple[int, ...]:
        return self._parities

    def parity(self, i: int) -> int:
        return self._parities[i]

    def dim(self) -> int:
        return self._m + self._n

    def signs(self):
        """(−1)^{[i]} for every basis direction."""
        return _signs(self._parities)

    def sdim(self) -> int:
        """Super-dimension: number of even minus number of odd directions."""
        return int(self.signs().sum())

    def rho(self) -> Fraction:
        return Fraction(self._n - self._m, 2)

    def multi_parities(self, num_spaces: int):
        """Total parities of all multi-indices on `num_spaces` factors."""
        return _multi_parities(self._parities, num_spaces)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Grading)
                and self._m == other._m
                and self._n == other._n
                and self._scheme == other._scheme)

    def __hash__(self) -> int:
        return hash((self._m, self._n, self._scheme))

    def __repr__(self) -> str:
        return "Grading(m={}, n={}, scheme={!r}, parities={})".format(
            self._m, self._n, self._scheme, self._parities
        )


def make_grading(m: int, n: int, scheme: str = DISTINGUISHED) -> Grading:
    return Grading(m, n, scheme)


class GradedOperator(object):
    """A dense operator on `num_spaces` copies of the graded space. Immutable."""

    __slots__ = ("_grading", "_entries", "_num_spaces")

    def __init__(self, grading: Grading, entries, num_spaces: Optional[int] = None) -> None:
        entries = np.array(entries, dtype=complex)
        d = grading.dim()
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise SpaceError("entries must be a square matrix")
        if num_spaces is None:
            num_spaces = max(1, int(round(math.log(entries.shape[0], d)))) if d > 1 else 1
        if num_spaces < 1 or entries.shape[0] != d ** num_spaces:
            raise SpaceError(
                "a {0}x{0} matrix does not act on {1} spaces of dimension {2}".format(
                    entries.shape[0], num_spaces, d
                )
            )
        if not np.all(np.isfinite(entries)):
            raise ValueError("operator entries must be finite")
        entries.flags.writeable = False
        self._grading = grading
        self._entries = entries
        self._num_spaces = num_spaces

    def grading(self) -> Grading:
        return self._grading

    def entries(self):
        return self._entries

    def num_spaces(self) -> int:
        return self._num_spaces

    def size(self) -> int:
        return self._entries.shape[0]

    def norm(self) -> float:
        return norm(self._entries)

    def parity(self) -> Optional[int]:
        return operator_parity(self)

    def _same_shape(self, other: "GradedOperator") -> None:
        if self._grading != other._grading:
            raise GradingError("operators carry different gradings")
        if self._num_spaces != other._num_spaces:
            raise SpaceError(
                "operators act on {} and {} spaces".format(
                    self._num_spaces, other._num_spaces
                )
            )

    def _new(self, entries) -> "GradedOperator":
        return GradedOperator(self._grading, entries, self._num_spaces)

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        self._same_shape(other)
        return self._new(self._entries @ other._entries)

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        self._same_shape(other)
        return self._new(self._entries + other._entries)

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        self._same_shape(other)
        return self._new(self._entries - other._entries)

    def __neg__(self) -> "GradedOperator":
        return self._new(-self._entries)

    def __mul__(self, scalar: complex) -> "GradedOperator":
        return self._new(self._entries * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> "GradedOperator":
        return self._new(self._entries / scalar)

    def allclose(self, other: "GradedOperator", atol: float = 1e-12) -> bool:
        self._same_shape(other)
        return bool(np.allclose(self._entries, other._entries, rtol=0, atol=atol))

    def __repr__(self) -> str:
        return "GradedOperator(num_spaces={}, grading={!r})".format(
            self._num_spaces, self._grading
        )


def identity(grading: Grading, num_spaces: int = 1) -> GradedOperator:
    return GradedOperator(grading, np.eye(grading.dim() ** num_spaces), num_spaces)


def zero(grading: Grading, num_spaces: int = 1) -> GradedOperator:
    size = grading.dim() ** num_spaces
    return GradedOperator(grading, np.zeros((size, size)), num_spaces)


def unit(grading: Grading, i: int, j: int) -> GradedOperator:
    """The matrix unit e_ij on one space (0-based indices)."""
    d = grading.dim()
    entries = np.zeros((d, d), dtype=complex)
    entries[i, j] = 1
    return GradedOperator(grading, entries, 1)


def diagonal(grading: Grading, values) -> GradedOperator:
    return GradedOperator(grading, np.diag(np.asarray(values, dtype=complex)), 1)


def _embed_pair(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    if a.grading() != b.grading():
        raise GradingError("cannot embed operators with different gradings")
    grading = a.grading()
    pa = grading.multi_parities(a.num_spaces())
    pb = grading.multi_parities(b.num_spaces())
    # axes: (row_a, row_b, col_a, col_b)
    product = np.einsum("ij,kl->ikjl", a.entries(), b.entries())
    exponent = pb[None, :, None, None] * (pa[:, None, None, None] + pa[None, None, :, None])
    size = len(pa) * len(pb)
    entries = (product * _signs(exponent)).reshape(size, size)
    return GradedOperator(grading, entries, a.num_spaces() + b.num_spaces())


def tensor_embed(*operators: GradedOperator) -> GradedOperator:
    """Graded tensor product A ⊗ B ⊗ ... realized as a plain matrix.

    Entry ((r_A, r_B), (c_A, c_B)) is A[r_A, c_A]·B[r_B, c_B]·(−1)^{[r_B]([r_A]+[c_A])}.
    The embedding is associative, so several factors fold from the left.
    """
    if not operators:
        raise SpaceError("nothing to embed")
    return functools.reduce(_embed_pair, operators)


def graded_permutation(grading: Grading, order: Sequence[int]) -> GradedOperator:
    """The signed permutation that puts input factor `order[j]` at position j.

    Every pair of factors that changes relative order contributes
    (−1)^{[a][b]}, so two factors reproduce the super-permutation P.
    """
    s = len(order)
    if sorted(order) != list(range(s)):
        raise SpaceError("{} is not a permutation of {} spaces".format(order, s))
    d = grading.dim()
    p = np.array(grading.parities(), dtype=int)
    indices = np.indices((d,) * s).reshape(s, -1)
    target = np.ravel_multi_index(indices[list(order)], (d,) * s)
    position = [0] * s
    for j, source in enumerate(order):
        position[source] = j
    exponent = np.zeros(indices.shape[1], dtype=int)
    for a in range(s):
        for b in range(a + 1, s):
            if position[a] > position[b]:
                exponent += p[indices[a]] * p[indices[b]]
    entries = np.zeros((d ** s, d ** s))
    entries[target, np.arange(d ** s)] = _signs(exponent)
    return GradedOperator(grading, entries, s)


def permute_spaces(op: GradedOperator, order: Sequence[int]) -> GradedOperator:
    pi = graded_permutation(op.grading(), order).entries()
    return GradedOperator(op.grading(), pi @ op.entries() @ pi.T, op.num_spaces())


def place(op: GradedOperator, positions: Sequence[int], num_spaces: int) -> GradedOperator:
    """Act with `op` on the factors `positions` of a `num_spaces`-fold product.

    The factors of `op` land in the given order, so place(R, (1, 0), 2) is R₂₁.
    """
    k = op.num_spaces()
    positions = tuple(positions)
    if len(positions) != k or len(set(positions)) != k:
        raise SpaceError("need {} distinct positions, got {}".format(k, positions))
    if any(not 0 <= pos < num_spaces for pos in positions):
        raise SpaceError("positions {} out of range for {} spaces".format(positions, num_spaces))
    if num_spaces > k:
        full = tensor_embed(op, identity(op.grading(), num_spaces - k))
    else:
        full = op
    others = [i for i in range(num_spaces) if i not in positions]
    order = [0] * num_spaces
    for u, pos in enumerate(positions):
        order[pos] = u
    for v, pos in enumerate(others):
        order[pos] = k + v
    return permute_spaces(full, order)


def super_trace(op: GradedOperator) -> complex:
    signs = _signs(op.grading().multi_parities(op.num_spaces()))
    return complex(np.sum(signs * np.diag(op.entries())))


def _aux_view(op: GradedOperator):
    if op.num_spaces() < 2:
        raise SpaceError("need an operator on at least two spaces")
    d = op.grading().dim()
    rest = op.size() // d
    return op.entries().reshape(d, rest, d, rest)


def partial_super_trace_aux(op: GradedOperator) -> GradedOperator:
    """str₀: (str₀ A)[r, c] = Σ_a (−1)^{[a]} A[(a, r), (a, c)]."""
    view = _aux_view(op)
    entries = np.einsum("a,arac->rc", op.grading().signs(), view)
    return GradedOperator(op.grading(), entries, op.num_spaces() - 1)


def _transpose_signs(grading: Grading):
    p = np.array(grading.parities(), dtype=int)
    return _signs(p[:, None] * p[None, :] + p[None, :])


def transpose_T(op: GradedOperator) -> GradedOperator:
    """(Aᵀ)[j, i] = (−1)^{[i][j]+[j]} A[i, j] on a single space."""
    if op.num_spaces() != 1:
        raise SpaceError("transpose_T acts on a single space")
    entries = (op.entries() * _transpose_signs(op.grading())).T
    return GradedOperator(op.grading(), entries, 1)


def _transpose_first(op: GradedOperator) -> GradedOperator:
    if op.num_spaces() == 1:
        return transpose_T(op)
    view = _aux_view(op)
    entries = np.einsum("ij,irjc->jric", _transpose_signs(op.grading()), view)
    return GradedOperator(op.grading(), entries.reshape(op.size(), op.size()), op.num_spaces())


def partial_transpose(
        op: GradedOperator,
        space: int = 0,
        mode: str = "T",
        V=None,
) -> GradedOperator:
    """Graded transposition of one tensor factor.

    Mode "T" applies the sign rule of `transpose_T` to factor `space`. Mode "t"
    also conjugates that factor, Aᵗ = V⁻¹ Aᵀ V, and needs the matrix `V`.
    """
    s = op.num_spaces()
    if not 0 <= space < s:
        raise SpaceError("space {} out of range for {} spaces".format(space, s))
    if mode not in ("T", "t"):
        raise ValueError("mode must be 'T' or 't', got {!r}".format(mode))
    if mode == "t" and V is None:
        raise ValueError("mode 't' needs the crossing matrix V")
    if space == 0:
        result = _transpose_first(op)
    else:
        order = [space] + [i for i in range(s) if i != space]
        back = [0] * s
        for j, source in enumerate(order):
            back[source] = j
        result = permute_spaces(_transpose_first(permute_spaces(op, order)), back)
    if mode == "t":
        grading = op.grading()
        v = place(GradedOperator(grading, V, 1), (space,), s).entries()
        result = GradedOperator(grading, np.linalg.solve(v, result.entries() @ v), s)
    return result


def operator_parity(op: GradedOperator) -> Optional[int]:
    """0 or 1 for homogeneous operators (the zero operator counts as even),
    None for mixed parity."""
    entries = op.entries()
    scale = np.abs(entries).max() if entries.size else 0.0
    if scale == 0:
        return 0
    rows, cols = np.nonzero(np.abs(entries) > _PARITY_RTOL * scale)
    mp = op.grading().multi_parities(op.num_spaces())
    found = np.unique((mp[rows] + mp[cols]) % 2)
    if len(found) > 1:
        return None
    return int(found[0])


def super_commutator(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    """[A, B} = AB − (−1)^{[A][B]} BA for homogeneous A and B."""
    pa, pb = operator_parity(a), operator_parity(b)
    if pa is None or pb is None:
        raise ParityError("super_commutator needs homogeneous operators")
    return a @ b - (-1) ** (pa * pb) * (b @ a)


def aux_components(op: GradedOperator) -> Dict[Tuple[int, int], GradedOperator]:
    """Split O on spaces (0, 1..N) as Σ e_ab ⊗ O_ab; returns {(a, b): O_ab}."""
    grading = op.grading()
    view = _aux_view(op)
    rest_parities = grading.multi_parities(op.num_spaces() - 1)
    p = grading.parities()
    d = grading.dim()
    components = {}
    for a in range(d):
        for b in range(d):
            signs = _signs(rest_parities * (p[a] + p[b]))
            components[(a, b)] = GradedOperator(
                grading, view[a, :, b, :] * signs[:, None], op.num_spaces() - 1
            )
    return components


def from_aux_components(
        grading: Grading,
        components: Mapping[Tuple[int, int], GradedOperator],
) -> GradedOperator:
    terms = [tensor_embed(unit(grading, a, b), x) for (a, b), x in components.items()]
    return functools.reduce(lambda x, y: x + y, terms)


def crossing_form(grading: Grading):
    """The matrix V of the t-transposition Aᵗ = V⁻¹ Aᵀ V.

    Symmetric scheme: antidiagonal with entries (1, ..., 1, −1, ..., −1), the
    first m + k of them positive. Distinguished scheme with even n: bosons are
    paired a ↔ m−1−a with +1, fermions a ↔ 2m+n−1−a with +1 on the first half
    and −1 on the second. Otherwise there is no such form and V = 𝕀.
    """
    m, n, d = grading.m, grading.n, grading.dim()
    V = np.zeros((d, d))
    if grading.scheme == SYMMETRIC:
        k = n // 2
        for a in range(d):
            V[a, d - 1 - a] = 1 if a < m + k else -1
    elif n % 2 == 0:
        for a in range(m):
            V[a, m - 1 - a] = 1
        for a in range(m, d):
            V[a, 2 * m + n - 1 - a] = 1 if a < m + n // 2 else -1
    else:
        V = np.eye(d)
    return V
