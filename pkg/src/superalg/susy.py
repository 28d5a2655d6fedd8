"""Infinitesimal mixing of primed and additional generators.

Notation: ``params.coef(u, l)`` is the parameter with upper index ``u`` and
lower index ``l``, so ``delta theta^u = sum_l coef(u, l) theta^l``, where
``l`` ranges over the generators of the other class.  Under the
antisymmetry constraint ``coef(b, a) == -coef(a, b)`` and only one
orientation is stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .clifford import GammaRep, vector_coords
from .grassmann import (
    AlgebraSignature,
    SignatureError,
    State,
    derivative,
    indices,
    wedge,
)
from .operators import Operator, op_generator_deriv, op_generator_theta
from .scalars import JetScalar, QQi, as_jet

__all__ = [
    "MixParams",
    "make_params",
    "eps_id",
    "transform_generators",
    "transform_derivatives",
    "transform_coefficients",
    "delta_coords",
    "delta_coords_closed_form",
    "Superfield",
    "SupertranslationReport",
    "supertranslate_superfield",
]


def eps_id(upper: int, lower: int) -> str:
    return f"e_{upper}_{lower}"


@dataclass(frozen=True)
class MixParams:
    """Mixing parameters, keyed by ``(upper, lower)``.

    Build with :func:`make_params`; the constructor does not enforce the
    antisymmetry constraint and should not be called directly outside tests.
    """

    sig: AlgebraSignature
    table: Mapping[Tuple[int, int], JetScalar] = field(default_factory=dict)
    constrained: bool = True

    def coef(self, upper: int, lower: int) -> JetScalar:
        return self.table.get((upper, lower), JetScalar())

    def partners(self, alpha: int) -> range:
        """Generators that ``alpha`` mixes with."""
        if alpha <= self.sig.n_D:
            return self.sig.additional
        return self.sig.primed

    @property
    def is_identity(self) -> bool:
        return not any(self.table.values())


def _as_infinitesimal(value, ident: str) -> JetScalar:
    if value is None:
        return JetScalar.eps(ident)
    if isinstance(value, JetScalar):
        if not value.is_infinitesimal:
            raise ValueError(f"parameter {ident} must be infinitesimal, got {value}")
        return value
    # numeric-jet mode: a rational magnitude on its own epsilon unit
    return JetScalar.eps(ident, value)


def make_params(sig: AlgebraSignature, entries: Iterable[tuple] = (),
                transposed: Iterable[tuple] = ()) -> MixParams:
    """Mixing parameters with the antisymmetry constraint built in.

    ``entries`` holds ``(a, b, value)`` with ``a`` primed and ``b``
    additional, giving the parameter with upper ``a`` and lower ``b``.
    ``value`` is ``None`` for an independent symbolic unit, a rational for a
    numeric magnitude, or an infinitesimal :class:`JetScalar`.  The opposite
    orientation (upper ``b``, lower ``a``) is derived as its negative; it
    may also be given in ``transposed`` as ``(a, b, value)``, in which case
    it must be consistent.
    """
    table: Dict[Tuple[int, int], JetScalar] = {}
    given: Dict[Tuple[int, int], JetScalar] = {}
    for source, flip in ((entries, False), (transposed, True)):
        for entry in source:
            a, b, *rest = entry
            value = rest[0] if rest else None
            if not (isinstance(a, int) and 1 <= a <= sig.n_D):
                raise SignatureError(f"{a!r} is not a primed generator index (1..{sig.n_D})")
            if not (isinstance(b, int) and sig.n_D < b <= sig.n_total):
                raise SignatureError(
                    f"{b!r} is not an additional generator index ({sig.n_D + 1}..{sig.n_total})")
            key = (b, a) if flip else (a, b)
            if key in given:
                raise ValueError(f"duplicate parameter for pair {key}")
            given[key] = _as_infinitesimal(value, eps_id(*key))
    for (u, l), v in given.items():
        other = given.get((l, u))
        if other is not None and other != -v:
            raise ValueError(f"parameters {eps_id(u, l)} and {eps_id(l, u)} are not opposite")
        table[(u, l)] = v
        table[(l, u)] = -v
    return MixParams(sig, table, constrained=True)


def _unconstrained_params(sig: AlgebraSignature, table: Mapping[Tuple[int, int], object]) -> MixParams:
    """Test-only: arbitrary parameters in both orientations, no constraint."""
    out = {}
    for (u, l), v in table.items():
        sig.check_index(u)
        sig.check_index(l)
        if (u <= sig.n_D) == (l <= sig.n_D):
            raise ValueError(f"pair {(u, l)} does not mix the two classes")
        out[(u, l)] = _as_infinitesimal(v, eps_id(u, l))
    return MixParams(sig, out, constrained=False)


def transform_generators(params: MixParams) -> Dict[int, State]:
    """Each transformed generator as a state in the original basis."""
    sig = params.sig
    out = {}
    for a in range(1, sig.n_total + 1):
        coeffs = {1 << (a - 1): JetScalar(1)}
        for b in params.partners(a):
            c = params.coef(a, b)
            if c:
                coeffs[1 << (b - 1)] = c
        out[a] = State(sig, coeffs)
    return out


def transform_generator_ops(params: MixParams) -> Dict[int, Operator]:
    """Left multiplication by each transformed generator."""
    sig = params.sig
    out = {}
    for a in range(1, sig.n_total + 1):
        op = op_generator_theta(sig, a)
        for b in params.partners(a):
            c = params.coef(a, b)
            if c:
                op = op + op_generator_theta(sig, b).scale(c)
        out[a] = op
    return out


def transform_derivatives(params: MixParams) -> Dict[int, Operator]:
    """Derivatives with respect to the transformed generators.

    ``d/dtheta~^a = d/dtheta^a + sum_b coef(a, b) d/dtheta^b``: the transpose of
    multiplication by ``theta~^a``.
    """
    sig = params.sig
    out = {}
    for a in range(1, sig.n_total + 1):
        op = op_generator_deriv(sig, a)
        for b in params.partners(a):
            c = params.coef(a, b)
            if c:
                op = op + op_generator_deriv(sig, b).scale(c)
        out[a] = op
    return out


def transform_coefficients(xi: Sequence[object], params: MixParams
                           ) -> Tuple[List[JetScalar], List[JetScalar]]:
    """Coefficients of a rank-one state in the transformed basis.

    Returns ``(new, delta)`` with ``delta[a] = -sum_b coef(b, a) * xi[b]``
    (first order, using the untransformed ``xi`` on the right).
    """
    sig = params.sig
    xi = [as_jet(x) for x in xi]
    if len(xi) != sig.n_total:
        raise ValueError(f"expected {sig.n_total} coefficients, got {len(xi)}")
    deltas = []
    for a in range(1, sig.n_total + 1):
        d = JetScalar()
        for b in params.partners(a):
            c = params.coef(b, a)
            if c:
                d = d - c * xi[b - 1]
        deltas.append(d)
    return [x + d for x, d in zip(xi, deltas)], deltas


def rank_one_state(coeffs: Sequence[object], basis: Mapping[int, State]) -> State:
    """``sum_a coeffs[a] * basis[a]``."""
    keys = sorted(basis)
    total = State.zero(basis[keys[0]].sig)
    for a, c in zip(keys, coeffs):
        total = total + basis[a].scale(c)
    return total


def _check_coord_inputs(xi_prime, xi, params: MixParams, rep: Optional[GammaRep]):
    sig = params.sig
    if len(xi_prime) != sig.n_total or len(xi) != sig.n_total:
        raise ValueError(f"spinor coefficient vectors must have length {sig.n_total}")
    if rep is not None and rep.dim != sig.n_D:
        raise SignatureError(f"representation dimension {rep.dim} != n_D = {sig.n_D}")


def delta_coords(xi_prime: Sequence[object], xi: Sequence[object], params: MixParams,
                 rep: GammaRep) -> List[JetScalar]:
    """``dx_m = (d xi')^T C g_m xi + xi'^T C g_m d xi`` over the primed components."""
    _check_coord_inputs(xi_prime, xi, params, rep)
    nd = params.sig.n_D
    _, d_xi_prime = transform_coefficients(xi_prime, params)
    _, d_xi = transform_coefficients(xi, params)
    xi_prime = [as_jet(x) for x in xi_prime[:nd]]
    xi = [as_jet(x) for x in xi[:nd]]
    first = vector_coords(d_xi_prime[:nd], xi, rep)
    second = vector_coords(xi_prime, d_xi[:nd], rep)
    return [a + b for a, b in zip(first, second)]


def delta_coords_closed_form(xi_prime: Sequence[object], xi: Sequence[object],
                             params: MixParams) -> List[JetScalar]:
    """Coordinate shifts for two primed generators and one additional one, written out."""
    sig = params.sig
    if (sig.n_total, sig.n_D) != (3, 2):
        raise SignatureError("closed form is only defined for n_total = 3, n_D = 2")
    _check_coord_inputs(xi_prime, xi, params, None)
    p1, p2, p3 = (as_jet(x) for x in xi_prime)
    x1, x2, x3 = (as_jet(x) for x in xi)
    e31 = params.coef(1, 3)
    e32 = params.coef(2, 3)
    i = JetScalar(QQi(0, 1))
    s1 = p1 * x3 + p3 * x1
    s2 = p2 * x3 + p3 * x2
    return [
        e31 * s1 - e32 * s2,
        i * e31 * s1 + i * e32 * s2,
        -(e31 * s2) - e32 * s1,
    ]


# -- superfields -------------------------------------------------------------

@dataclass(frozen=True)
class Superfield:
    """Polynomial in commuting coordinates times Grassmann monomials.

    Stored as a :class:`State` whose coefficients are polynomials in the
    coordinate symbols ``coord_names``.
    """

    state: State
    coord_names: Tuple[str, ...] = ("x1", "x2", "x3")

    @classmethod
    def from_terms(cls, sig: AlgebraSignature, terms: Mapping[Tuple[Tuple[int, ...], int], object],
                   coord_names: Sequence[str] = ("x1", "x2", "x3")) -> "Superfield":
        """``terms`` maps ``(exponents, monomial_mask)`` to a coefficient."""
        coord_names = tuple(coord_names)
        coeffs: Dict[int, JetScalar] = {}
        for (exps, mask), c in terms.items():
            if len(exps) != len(coord_names):
                raise ValueError(f"exponent vector {exps} does not match {coord_names}")
            mono = tuple((s, k) for s, k in zip(coord_names, exps) if k)
            term = as_jet(c) * JetScalar.from_terms({(None, mono): 1})
            coeffs[mask] = coeffs.get(mask, JetScalar()) + term
        return cls(State(sig, coeffs), coord_names)

    def degree(self) -> int:
        return max((c.degree(self.coord_names) for _, c in self.state.items()), default=0)


@dataclass
class SupertranslationReport:
    direct: State
    taylor: State

    @property
    def consistent(self) -> bool:
        return self.direct == self.taylor


def supertranslate_superfield(f: Superfield, xi_prime: Sequence[object], xi: Sequence[object],
                              params: MixParams, rep: GammaRep, max_degree: int = 4
                              ) -> Tuple[State, SupertranslationReport]:
    """Shift ``f(x, theta)`` to ``f(x + dx, theta + dtheta)`` two ways.

    The direct path substitutes the shifted coordinates and multiplies out the
    shifted generators; the Taylor path adds ``dx_i df/dx_i`` and
    ``dtheta^a (d/dtheta^a f)``.  Both are exact to first order.
    """
    sig = params.sig
    if f.state.sig != sig:
        raise SignatureError("superfield and parameters use different signatures")
    if len(f.coord_names) != len(rep.gammas):
        raise ValueError(f"{len(rep.gammas)} coordinates expected, got {len(f.coord_names)}")
    if f.degree() > max_degree:
        raise ValueError(f"superfield degree {f.degree()} exceeds {max_degree}")
    for mask, _ in f.state.items():
        extra = [a for a in indices(mask) if a > sig.n_D]
        if extra:
            raise ValueError(f"superfield depends on additional generators {extra}")

    dx = delta_coords(xi_prime, xi, params, rep)
    shifted = {name: JetScalar.symbol(name) + d for name, d in zip(f.coord_names, dx)}
    thetas = transform_generators(params)

    direct = State.zero(sig)
    for mask, c in f.state.items():
        term = State(sig, {0: c.subs(shifted)})
        for a in indices(mask):
            term = wedge(term, thetas[a])
        direct = direct + term

    taylor = f.state
    for name, d in zip(f.coord_names, dx):
        grad = State(sig, {m: c.diff(name) for m, c in f.state.items()})
        taylor = taylor + grad.scale(d)
    for a in sig.primed:
        d_theta = thetas[a] - State.basis_state(sig, a)
        taylor = taylor + wedge(d_theta, derivative(a, f.state))
    return direct, SupertranslationReport(direct, taylor)
