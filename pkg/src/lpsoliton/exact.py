"""Exact scalars, dense tensors with index variance, and rational linear algebra.

Scalars are :class:`fractions.Fraction` throughout. A :class:`Tensor` is an
immutable dense array over a single frame dimension ``n``; every slot is tagged
``"u"`` (contravariant) or ``"l"`` (covariant) and the slot order is part of the
tensor's identity.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

UPPER = "u"
LOWER = "l"

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class VarianceError(ValueError):
    """Slots passed to a contraction or index move have the wrong kind."""


class RankError(ValueError):
    """A matrix that must be invertible is singular."""


def Q(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a canonical Fraction.

    Strings must look like ``"k"`` or ``"p/q"``; floats are refused so that no
    rounded literal can leak into a computation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m is None:
            raise ValueError(f"not an exact rational literal: {value!r}")
        num, den = m.group(1), m.group(2)
        if den is not None and int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {value!r}")
        return Fraction(int(num), int(den) if den is not None else 1)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def fmt(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True)
class Tensor:
    variance: tuple[str, ...]
    dim: int
    data: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        for v in self.variance:
            if v not in (UPPER, LOWER):
                raise VarianceError(f"unknown index kind {v!r}")
        if len(self.data) != self.dim ** len(self.variance):
            raise ValueError(
                f"expected {self.dim ** len(self.variance)} components, got {len(self.data)}"
            )

    # -- construction -------------------------------------------------------

    @classmethod
    def build(cls, variance: str | Sequence[str], dim: int,
              fn: Callable[..., RationalLike]) -> "Tensor":
        """Tensor whose component at index tuple ``idx`` is ``fn(*idx)``."""
        variance = tuple(variance)
        data = tuple(Q(fn(*idx)) for idx in itertools.product(range(dim), repeat=len(variance)))
        return cls(variance, dim, data)

    @classmethod
    def zeros(cls, variance: str | Sequence[str], dim: int) -> "Tensor":
        variance = tuple(variance)
        return cls(variance, dim, (Fraction(0),) * dim ** len(variance))

    @classmethod
    def from_nested(cls, variance: str | Sequence[str], nested) -> "Tensor":
        variance = tuple(variance)
        flat: list[Fraction] = []

        def walk(obj, depth):
            if depth == len(variance):
                flat.append(Q(obj))
                return
            for item in obj:
                walk(item, depth + 1)

        walk(nested, 0)
        if not variance:
            return cls((), 1, tuple(flat))
        dim = len(nested)
        return cls(variance, dim, tuple(flat))

    @classmethod
    def vector(cls, comps: Iterable[RationalLike]) -> "Tensor":
        comps = tuple(Q(c) for c in comps)
        return cls((UPPER,), len(comps), comps)

    @classmethod
    def covector(cls, comps: Iterable[RationalLike]) -> "Tensor":
        comps = tuple(Q(c) for c in comps)
        return cls((LOWER,), len(comps), comps)

    @classmethod
    def identity(cls, dim: int) -> "Tensor":
        return cls.build("ul", dim, lambda i, j: 1 if i == j else 0)

    # -- access -------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.variance)

    def _offset(self, idx: tuple[int, ...]) -> int:
        off, d = 0, self.dim
        for i in idx:
            if not 0 <= i < d:
                raise IndexError(f"index {idx} out of range for dim {d}")
            off = off * d + i
        return off

    def __getitem__(self, idx) -> Fraction:
        if idx.__class__ is not tuple:
            idx = (idx,)
        if len(idx) != len(self.variance):
            raise IndexError(f"rank-{self.rank} tensor indexed with {len(idx)} indices")
        return self.data[self._offset(idx)]

    def indices(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.dim), repeat=self.rank)

    def items(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        return zip(self.indices(), self.data)

    def nonzero(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return [(idx, v) for idx, v in self.items() if v != 0]

    def is_zero(self) -> bool:
        return not any(self.data)

    def to_nested(self):
        if self.rank == 0:
            return self.data[0]

        def nest(prefix):
            if len(prefix) == self.rank:
                return self[prefix]
            return [nest(prefix + (i,)) for i in range(self.dim)]

        return nest(())

    def scalar(self) -> Fraction:
        if self.rank != 0:
            raise VarianceError("tensor is not a scalar")
        return self.data[0]

    # -- arithmetic ---------------------------------------------------------

    def _check_same(self, other: "Tensor") -> None:
        if not isinstance(other, Tensor):
            raise TypeError("expected a Tensor")
        if self.variance != other.variance or self.dim != other.dim:
            raise VarianceError(
                f"shape mismatch: {self.variance}/{self.dim} vs {other.variance}/{other.dim}"
            )

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check_same(other)
        return Tensor(self.variance, self.dim, tuple(x + y for x, y in zip(self.data, other.data)))

    def __sub__(self, other: "Tensor") -> "Tensor":
        self._check_same(other)
        return Tensor(self.variance, self.dim, tuple(x - y for x, y in zip(self.data, other.data)))

    def __neg__(self) -> "Tensor":
        return Tensor(self.variance, self.dim, tuple(-x for x in self.data))

    def __mul__(self, k: RationalLike) -> "Tensor":
        k = Q(k)
        return Tensor(self.variance, self.dim, tuple(k * x for x in self.data))

    __rmul__ = __mul__

    def permute(self, order: Sequence[int]) -> "Tensor":
        """Reorder slots: slot ``s`` of the result is slot ``order[s]`` of self."""
        if sorted(order) != list(range(self.rank)):
            raise ValueError(f"{order} is not a permutation of {self.rank} slots")
        inv = [order.index(s) for s in range(self.rank)]
        return Tensor.build(
            [self.variance[o] for o in order], self.dim,
            lambda *idx: self[tuple(idx[inv[s]] for s in range(self.rank))],
        )


def tensor_product(*ts: Tensor) -> Tensor:
    dim = ts[0].dim
    if any(t.dim != dim for t in ts):
        raise VarianceError("tensor product of different dimensions")
    variance = tuple(v for t in ts for v in t.variance)
    data = []
    for parts in itertools.product(*(t.data for t in ts)):
        prod = Fraction(1)
        for p in parts:
            prod *= p
        data.append(prod)
    return Tensor(variance, dim, tuple(data))


def tensor_contract(t: Tensor, upper_slot: int, lower_slot: int) -> Tensor:
    """Trace over one contravariant and one covariant slot."""
    for s in (upper_slot, lower_slot):
        if not 0 <= s < t.rank:
            raise VarianceError(f"slot {s} does not exist on a rank-{t.rank} tensor")
    if upper_slot == lower_slot:
        raise VarianceError("cannot contract a slot with itself")
    if t.variance[upper_slot] != UPPER or t.variance[lower_slot] != LOWER:
        raise VarianceError(
            f"slots ({upper_slot}, {lower_slot}) have variance "
            f"({t.variance[upper_slot]}, {t.variance[lower_slot]}); need (u, l)"
        )
    keep = [s for s in range(t.rank) if s not in (upper_slot, lower_slot)]
    n = t.dim

    def comp(*idx):
        full = [0] * t.rank
        for s, i in zip(keep, idx):
            full[s] = i
        total = Fraction(0)
        for m in range(n):
            full[upper_slot] = m
            full[lower_slot] = m
            total += t[tuple(full)]
        return total

    variance = tuple(t.variance[s] for s in keep)
    if not variance:
        return Tensor((), n, (comp(),))
    return Tensor.build(variance, n, comp)


def raise_lower(t: Tensor, slot: int, metric: Tensor, inverse_metric: Tensor) -> Tensor:
    """Flip the variance of ``slot`` using the metric or its inverse."""
    if metric.variance != (LOWER, LOWER) or inverse_metric.variance != (UPPER, UPPER):
        raise VarianceError("metric must be (l,l) and inverse metric (u,u)")
    if not 0 <= slot < t.rank:
        raise VarianceError(f"slot {slot} does not exist on a rank-{t.rank} tensor")
    n = t.dim
    for i in range(n):
        for j in range(n):
            if metric[i, j] != metric[j, i]:
                raise ValueError("metric is not symmetric")
            want = 1 if i == j else 0
            if sum(metric[i, m] * inverse_metric[m, j] for m in range(n)) != want:
                raise RankError("inverse_metric is not the inverse of metric")
    mat = metric if t.variance[slot] == UPPER else inverse_metric
    new_kind = LOWER if t.variance[slot] == UPPER else UPPER
    variance = t.variance[:slot] + (new_kind,) + t.variance[slot + 1:]

    def comp(*idx):
        total = Fraction(0)
        src = list(idx)
        for m in range(n):
            src[slot] = m
            total += mat[idx[slot], m] * t[tuple(src)]
        return total

    return Tensor.build(variance, n, comp)


# -- matrices ---------------------------------------------------------------

Matrix = tuple[tuple[Fraction, ...], ...]


def matrix(rows: Iterable[Iterable[RationalLike]]) -> Matrix:
    return tuple(tuple(Q(x) for x in row) for row in rows)


def rref(mat: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [list(row) for row in mat]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def matrix_rank(mat: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(mat)[1])


def invert(mat: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise RankError("cannot invert a non-square matrix")
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise RankError(f"matrix is singular (rank {len([p for p in pivots if p < n])} < {n})")
    return tuple(tuple(row[n:]) for row in red)


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    inner = len(b)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(len(b[0])))
        for i in range(len(a))
    )


def matvec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def transpose(a: Sequence[Sequence[Fraction]]) -> Matrix:
    return tuple(zip(*a)) if a else ()


@dataclass(frozen=True)
class LinearSystem:
    matrix: Matrix
    rhs: tuple[Fraction, ...]
    cols: int = -1

    def __post_init__(self) -> None:
        if len(self.rhs) != len(self.matrix):
            raise ValueError("rhs length does not match the number of rows")
        widths = {len(row) for row in self.matrix}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        width = widths.pop() if widths else 0
        if self.cols == -1:
            object.__setattr__(self, "cols", width)
        elif self.matrix and self.cols != width:
            raise ValueError(f"declared {self.cols} columns but rows have {width}")

    @classmethod
    def homogeneous(cls, rows: Iterable[Iterable[RationalLike]], cols: int = -1) -> "LinearSystem":
        mat = matrix(rows)
        return cls(mat, (Fraction(0),) * len(mat), cols)


def null_space(sys: LinearSystem) -> list[tuple[Fraction, ...]]:
    """Basis of ``{v : matrix @ v = 0}``, one vector per free column.

    Each basis vector has a 1 in its free column and zeros in the other free
    columns, which makes the basis canonical for a given matrix.
    """
    cols = sys.cols
    red, pivots = rref(sys.matrix)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return basis


def solve(sys: LinearSystem) -> tuple[Fraction, ...] | None:
    """One exact solution of ``matrix @ x = rhs`` (free variables set to 0), or None."""
    cols = sys.cols
    aug = [list(row) + [b] for row, b in zip(sys.matrix, sys.rhs)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return tuple(x)


def min_norm_solution(sys: LinearSystem) -> tuple[tuple[Fraction, ...], bool]:
    """Minimal sum-of-squares least-squares solution and whether it is exact.

    Solves the normal equations, then removes the kernel component so the
    result is orthogonal to ``null_space``; for a consistent system this is
    the unique exact solution of least norm.
    """
    a = sys.matrix
    at = transpose(a)
    ata = matmul(at, a)
    atb = matvec(at, sys.rhs)
    x0 = solve(LinearSystem(ata, atb))
    assert x0 is not None, "normal equations are always consistent"
    kernel = null_space(LinearSystem.homogeneous(ata, cols=sys.cols))
    if kernel:
        k = transpose(kernel)  # cols x d
        ktk = matmul(kernel, k)
        coeff = matvec(invert(ktk), matvec(kernel, x0))
        shift = matvec(k, coeff)
        x0 = tuple(x - s for x, s in zip(x0, shift))
    exact = matvec(a, x0) == tuple(sys.rhs)
    return x0, exact
