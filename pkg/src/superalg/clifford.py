"""Gamma matrices as operators on the primed generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .grassmann import AlgebraSignature, SignatureError
from .matrix_iso import MatrixDense, _unit_entry
from .operators import Operator, op_zero
from .scalars import JetScalar, QQi, as_jet

__all__ = [
    "GammaRep",
    "CliffordRelationError",
    "AnticommutationReport",
    "pauli_rep",
    "embed_gamma",
    "check_anticommutation",
    "primed_unit",
    "vector_coords",
]


class CliffordRelationError(ValueError):
    pass


def _anticommutator(a: MatrixDense, b: MatrixDense) -> MatrixDense:
    return a @ b + b @ a


@dataclass(frozen=True)
class GammaRep:
    """A concrete gamma-matrix representation with its metric and bilinear form.

    The Clifford relation ``g_m g_k + g_k g_m = 2 eta_mk`` is checked on
    construction.
    """

    gammas: Tuple[MatrixDense, ...]
    metric: Tuple[int, ...]
    conjugation_matrix: MatrixDense = None
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        gammas = tuple(g if isinstance(g, MatrixDense) else MatrixDense.from_rows(g)
                       for g in self.gammas)
        object.__setattr__(self, "gammas", gammas)
        object.__setattr__(self, "metric", tuple(self.metric))
        if not gammas:
            raise CliffordRelationError("at least one gamma matrix is required")
        dim = gammas[0].rows
        for g in gammas:
            if g.shape != (dim, dim):
                raise CliffordRelationError(f"gamma matrix of shape {g.shape}, expected {dim}x{dim}")
        if len(self.metric) != len(gammas):
            raise CliffordRelationError("number of metric entries differs from number of gammas")
        if any(e not in (1, -1) for e in self.metric):
            raise CliffordRelationError(f"metric must be diagonal +-1, got {self.metric}")
        c = self.conjugation_matrix
        if c is None:
            c = MatrixDense.identity(dim)
        elif not isinstance(c, MatrixDense):
            c = MatrixDense.from_rows(c)
        if c.shape != (dim, dim):
            raise CliffordRelationError(f"conjugation matrix shape {c.shape}, expected {dim}x{dim}")
        object.__setattr__(self, "conjugation_matrix", c)
        ident = MatrixDense.identity(dim)
        for m in range(len(gammas)):
            for k in range(m, len(gammas)):
                lhs = _anticommutator(gammas[m], gammas[k])
                rhs = ident.scale(2 * self.metric[m]) if m == k else MatrixDense.zeros(dim, dim)
                if lhs != rhs:
                    raise CliffordRelationError(
                        f"gammas {m + 1} and {k + 1} violate the Clifford relation")

    @property
    def dim(self) -> int:
        return self.gammas[0].rows


def pauli_rep() -> GammaRep:
    """Pauli matrices with ``C = [[0, 1], [-1, 0]]`` and Euclidean metric."""
    i = QQi(0, 1)
    return GammaRep(
        gammas=(
            MatrixDense.from_rows([[0, 1], [1, 0]]),
            MatrixDense.from_rows([[0, -i], [i, 0]]),
            MatrixDense.from_rows([[1, 0], [0, -1]]),
        ),
        metric=(1, 1, 1),
        conjugation_matrix=MatrixDense.from_rows([[0, 1], [-1, 0]]),
        name="pauli",
    )


def embed_gamma(rep: GammaRep, sig: AlgebraSignature) -> List[Operator]:
    """Operators ``sum_{a,b <= n_D} g[a][b] th(a) d(b) P_1``.

    ``P_1`` is the rank-one projector of the full algebra, so the result
    kills any monomial with an additional generator and every rank but one.
    """
    if rep.dim != sig.n_D:
        raise SignatureError(f"representation dimension {rep.dim} != n_D = {sig.n_D}")
    out = []
    for g in rep.gammas:
        total = op_zero(sig)
        for a in range(rep.dim):
            for b in range(rep.dim):
                c = g.entries[a][b]
                if c:
                    total = total + _unit_entry(sig, a + 1, b + 1).scale(c)
        out.append(total)
    return out


def primed_unit(sig: AlgebraSignature) -> Operator:
    """``sum_{a <= n_D} th(a) d(a) P_1``: the unit of the gamma subalgebra.

    Equal to ``P_1`` when every generator is primed; otherwise it also kills
    the rank-one additional generators, as every embedded gamma does.
    """
    total = op_zero(sig)
    for a in sig.primed:
        total = total + _unit_entry(sig, a, a)
    return total


@dataclass
class AnticommutationReport:
    pairs_checked: int = 0
    failures: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_anticommutation(gammas: Sequence[Operator], metric: Sequence[int],
                          sig: AlgebraSignature) -> AnticommutationReport:
    """Check ``G_m G_k + G_k G_m == 2 eta_mk U`` for all pairs ``m <= k``.

    ``U`` is :func:`primed_unit`, i.e. ``P_1`` restricted to the primed
    generators.
    """
    if len(gammas) != len(metric):
        raise ValueError("one metric entry per gamma operator is required")
    p1 = primed_unit(sig)
    zero = op_zero(sig)
    report = AnticommutationReport()
    for m in range(len(gammas)):
        for k in range(m, len(gammas)):
            lhs = gammas[m] @ gammas[k] + gammas[k] @ gammas[m]
            rhs = p1.scale(2 * metric[m]) if m == k else zero
            report.pairs_checked += 1
            if lhs != rhs:
                report.failures.append((m + 1, k + 1))
    return report


def vector_coords(xi_prime: Sequence[object], xi: Sequence[object], rep: GammaRep) -> List[JetScalar]:
    """Bilinears ``x_m = xi_prime^T C g_m xi``."""
    xi_prime = [as_jet(x) for x in xi_prime]
    xi = [as_jet(x) for x in xi]
    if len(xi_prime) != rep.dim or len(xi) != rep.dim:
        raise ValueError(f"spinors must have length {rep.dim}")
    left = rep.conjugation_matrix.T @ xi_prime  # (xi')^T C as a vector
    coords = []
    for g in rep.gammas:
        right = g @ xi
        coords.append(sum((l * r for l, r in zip(left, right)), JetScalar()))
    return coords
