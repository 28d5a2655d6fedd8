"""Ordinary matrices inside the operator algebra, and their generalizations.

A square matrix ``m`` with entries ``m[a][b]`` becomes the operator
``sum m[a][b] th(a) d(b) P_1``, which sends ``theta^b`` to
``sum_a m[a][b] theta^a`` and kills every other rank.  Row index is the
upper index ``a``, column index is ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence, Tuple

from .grassmann import AlgebraSignature, State, indices, rank
from .operators import (
    DERIV,
    THETA,
    Operator,
    op_generator_deriv,
    op_generator_theta,
    op_zero,
    projector,
    word_operator,
)
from .scalars import JetScalar, as_jet

__all__ = [
    "MatrixDense",
    "NotAMatrixError",
    "embed_matrix",
    "extract_matrix",
    "embed_column",
    "embed_row",
    "generalized_matrix",
]


class NotAMatrixError(ValueError):
    """The operator does not belong to the embedded matrix subalgebra."""


@dataclass(frozen=True)
class MatrixDense:
    """Dense matrix of exact scalars."""

    entries: Tuple[Tuple[JetScalar, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(as_jet(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be at least 1")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> "MatrixDense":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "MatrixDense":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixDense":
        return cls(tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other):
        if isinstance(other, MatrixDense):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            return MatrixDense(tuple(
                tuple(sum((self.entries[i][k] * other.entries[k][j] for k in range(self.cols)),
                          JetScalar())
                      for j in range(other.cols))
                for i in range(self.rows)))
        vec = [as_jet(x) for x in other]
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} != {self.cols}")
        return tuple(sum((self.entries[i][k] * vec[k] for k in range(self.cols)), JetScalar())
                     for i in range(self.rows))

    def __add__(self, other: "MatrixDense") -> "MatrixDense":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return MatrixDense(tuple(tuple(a + b for a, b in zip(r, s))
                                 for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "MatrixDense") -> "MatrixDense":
        return self + other.scale(-1)

    def scale(self, lam) -> "MatrixDense":
        lam = as_jet(lam)
        return MatrixDense(tuple(tuple(lam * x for x in r) for r in self.entries))

    def __rmul__(self, lam):
        return self.scale(lam)

    @property
    def T(self) -> "MatrixDense":
        return MatrixDense(tuple(zip(*self.entries)))

    def conjugate(self) -> "MatrixDense":
        return MatrixDense(tuple(tuple(x.conjugate() for x in r) for r in self.entries))

    def pad(self, n: int) -> "MatrixDense":
        """Embed in the top-left corner of an ``n x n`` zero matrix."""
        if n < max(self.shape):
            raise ValueError(f"cannot pad {self.shape} to {n}x{n}")
        zero = JetScalar()
        return MatrixDense(tuple(
            tuple(self.entries[i][j] if i < self.rows and j < self.cols else zero for j in range(n))
            for i in range(n)))

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in r) for r in self.entries) + "]"


@lru_cache(maxsize=None)
def _unit_entry(sig: AlgebraSignature, alpha: int, beta: int) -> Operator:
    """``th(alpha) d(beta) P_1``."""
    return op_generator_theta(sig, alpha) @ op_generator_deriv(sig, beta) @ projector(sig, 1)


def embed_matrix(m: MatrixDense, sig: AlgebraSignature) -> Operator:
    """Operator ``sum_{a,b} m[a][b] th(a) d(b) P_1`` for an ``n_total`` square matrix."""
    n = sig.n_total
    if m.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got {m.rows}x{m.cols}")
    total = op_zero(sig)
    for a in range(n):
        for b in range(n):
            c = m.entries[a][b]
            if c:
                total = total + _unit_entry(sig, a + 1, b + 1).scale(c)
    return total


def extract_matrix(op: Operator) -> MatrixDense:
    """Inverse of :func:`embed_matrix` on its image.

    Raises :class:`NotAMatrixError` unless ``op`` maps rank one into rank one
    and annihilates every other rank.
    """
    sig = op.sig
    n = sig.n_total
    rows = [[JetScalar()] * n for _ in range(n)]
    for (out, inp), c in op.entries().items():
        if rank(inp) != 1:
            raise NotAMatrixError(f"operator acts on a rank-{rank(inp)} monomial")
        if rank(out) != 1:
            raise NotAMatrixError(f"operator maps rank one into rank {rank(out)}")
        a = out.bit_length()
        b = inp.bit_length()
        rows[a - 1][b - 1] = c
    return MatrixDense.from_rows(rows)


def _vector(v: Sequence[object], sig: AlgebraSignature):
    v = [as_jet(x) for x in v]
    if len(v) != sig.n_total:
        raise ValueError(f"expected length {sig.n_total}, got {len(v)}")
    return v


def embed_column(v: Sequence[object], sig: AlgebraSignature) -> Operator:
    """``sum_a v[a] th(a) P_0``: sends 1 to ``sum_a v[a] theta^a``."""
    v = _vector(v, sig)
    p0 = projector(sig, 0)
    total = op_zero(sig)
    for a, c in enumerate(v, start=1):
        if c:
            total = total + (op_generator_theta(sig, a) @ p0).scale(c)
    return total


def embed_row(w: Sequence[object], sig: AlgebraSignature) -> Operator:
    """``sum_b w[b] d(b) P_1``: sends ``theta^b`` to ``w[b]``."""
    w = _vector(w, sig)
    p1 = projector(sig, 1)
    total = op_zero(sig)
    for b, c in enumerate(w, start=1):
        if c:
            total = total + (op_generator_deriv(sig, b) @ p1).scale(c)
    return total


def column_state(v: Sequence[object], sig: AlgebraSignature) -> State:
    return State.linear(sig, _vector(v, sig))


def _check_multi_index(idx, sig: AlgebraSignature, size: int):
    idx = tuple(idx)
    if len(idx) != size:
        raise ValueError(f"multi-index {idx} should have {size} entries")
    for a in idx:
        sig.check_index(a)
    if any(x >= y for x, y in zip(idx, idx[1:])):
        raise ValueError(f"multi-index {idx} is not strictly increasing")
    return idx


def generalized_matrix(l: int, k: int,
                       coeffs: Mapping[Tuple[Tuple[int, ...], Tuple[int, ...]], object],
                       sig: AlgebraSignature) -> Operator:
    """Operator sending rank ``k`` into rank ``l``.

    ``coeffs`` maps ``(upper, lower)`` increasing multi-indices to the
    coefficient of ``th(u_1)...th(u_l) d(a_k)...d(a_1) P_k`` where ``lower``
    is ``(a_1, ..., a_k)``.
    """
    sig.check_rank(l)
    sig.check_rank(k)
    pk = projector(sig, k)
    total = op_zero(sig)
    for (upper, lower), c in coeffs.items():
        upper = _check_multi_index(upper, sig, l)
        lower = _check_multi_index(lower, sig, k)
        c = as_jet(c)
        if not c:
            continue
        letters = tuple((THETA, a) for a in upper) + tuple((DERIV, a) for a in reversed(lower))
        total = total + (word_operator(sig, letters) @ pk).scale(c)
    return total


def generalized_coefficients(op: Operator, l: int, k: int):
    """Read back ``(upper, lower) -> coefficient`` for an operator of type (l, k).

    The word for ``(upper, lower)`` sends ``theta^lower`` (canonical order) to
    ``theta^upper`` with sign +1, so coefficients are plain matrix entries.
    """
    out = {}
    for (o, i), c in op.entries().items():
        if rank(o) != l or rank(i) != k:
            raise NotAMatrixError(f"entry maps rank {rank(i)} to rank {rank(o)}")
        out[(indices(o), indices(i))] = c
    return out

