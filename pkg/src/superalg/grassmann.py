"""Grassmann algebra over a finite set of anticommuting generators.

Monomials are plain ``int`` bitmasks: generator ``a`` (1-based) is bit
``a - 1`` and the monomial is read in increasing index order, so the mask
``0b101`` is ``theta^1 theta^3``.  The unit monomial is ``0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .scalars import JetScalar, as_jet

__all__ = [
    "MAX_GENERATORS",
    "AlgebraSignature",
    "SignatureError",
    "State",
    "monomial",
    "indices",
    "rank",
    "mono_mul",
    "left_mult_theta",
    "derivative",
    "rank_project_oracle",
    "conjugate_state",
    "wedge",
]

MAX_GENERATORS = 16


class SignatureError(ValueError):
    """Index or signature outside the declared algebra."""


@dataclass(frozen=True)
class AlgebraSignature:
    """Generator counts: ``n_total`` in all, the first ``n_D`` of them primed."""

    n_total: int
    n_D: int = 0

    def __post_init__(self):
        if not 1 <= self.n_total <= MAX_GENERATORS:
            raise SignatureError(
                f"n_total must lie in 1..{MAX_GENERATORS}, got {self.n_total}")
        if not 0 <= self.n_D <= self.n_total:
            raise SignatureError(f"n_D must lie in 0..{self.n_total}, got {self.n_D}")

    @property
    def n_add(self) -> int:
        return self.n_total - self.n_D

    @property
    def dim(self) -> int:
        return 1 << self.n_total

    @property
    def primed(self) -> range:
        return range(1, self.n_D + 1)

    @property
    def additional(self) -> range:
        return range(self.n_D + 1, self.n_total + 1)

    def check_index(self, alpha: int) -> int:
        if not isinstance(alpha, int) or not 1 <= alpha <= self.n_total:
            raise SignatureError(f"generator index {alpha!r} outside 1..{self.n_total}")
        return alpha

    def check_rank(self, k: int) -> int:
        if not isinstance(k, int) or not 0 <= k <= self.n_total:
            raise SignatureError(f"rank {k!r} outside 0..{self.n_total}")
        return k

    def basis(self) -> range:
        return range(self.dim)


def monomial(*alphas: int) -> int:
    """Bitmask of the canonical-ordered monomial over distinct generators."""
    mask = 0
    for a in alphas:
        if a < 1:
            raise SignatureError(f"generator index {a!r} must be positive")
        bit = 1 << (a - 1)
        if mask & bit:
            raise ValueError(f"repeated generator {a} in monomial")
        mask |= bit
    return mask


def indices(mask: int) -> Tuple[int, ...]:
    out = []
    a = 1
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return tuple(out)


def rank(mask: int) -> int:
    return bin(mask).count("1")


def _below(mask: int, alpha: int) -> int:
    """Number of generators in ``mask`` with index smaller than ``alpha``."""
    return bin(mask & ((1 << (alpha - 1)) - 1)).count("1")


def mono_mul(a: int, b: int) -> Optional[Tuple[int, int]]:
    """Product of two monomials as ``(sign, mask)``, or ``None`` when it vanishes."""
    if a & b:
        return None
    inversions = 0
    for beta in indices(b):
        # generators of a sitting to the right of beta once merged
        inversions += rank(a >> beta)
    return (-1 if inversions & 1 else 1), a | b


class State:
    """Element of the Grassmann algebra: sparse map monomial -> JetScalar."""

    __slots__ = ("sig", "_coeffs")

    def __init__(self, sig: AlgebraSignature, coeffs: Optional[Mapping[int, object]] = None):
        self.sig = sig
        out: Dict[int, JetScalar] = {}
        limit = sig.dim
        for m, c in (coeffs or {}).items():
            if not 0 <= m < limit:
                raise SignatureError(f"monomial {m:#b} uses generators beyond {sig.n_total}")
            c = as_jet(c)
            if c:
                out[m] = c
        self._coeffs = out

    @classmethod
    def _raw(cls, sig: AlgebraSignature, coeffs: Dict[int, JetScalar]) -> "State":
        obj = cls.__new__(cls)
        obj.sig = sig
        obj._coeffs = coeffs
        return obj

    @classmethod
    def basis_state(cls, sig: AlgebraSignature, *alphas: int, coeff=1) -> "State":
        for a in alphas:
            sig.check_index(a)
        return cls(sig, {monomial(*alphas): coeff})

    @classmethod
    def zero(cls, sig: AlgebraSignature) -> "State":
        return cls._raw(sig, {})

    @classmethod
    def linear(cls, sig: AlgebraSignature, coeffs: Iterable[object]) -> "State":
        """``sum_a coeffs[a-1] * theta^a``."""
        coeffs = list(coeffs)
        if len(coeffs) != sig.n_total:
            raise ValueError(f"expected {sig.n_total} coefficients, got {len(coeffs)}")
        return cls(sig, {1 << i: c for i, c in enumerate(coeffs)})

    @property
    def coeffs(self) -> Mapping[int, JetScalar]:
        return self._coeffs

    def __getitem__(self, mask: int) -> JetScalar:
        return self._coeffs.get(mask, JetScalar())

    def items(self):
        return self._coeffs.items()

    def _check(self, other: "State"):
        if not isinstance(other, State):
            raise TypeError(f"expected a State, got {type(other).__name__}")
        if other.sig != self.sig:
            raise SignatureError(f"signature mismatch: {self.sig} vs {other.sig}")

    def __add__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        self._check(other)
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return State._raw(self.sig, out)

    def __neg__(self):
        return State._raw(self.sig, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return self + (-other)

    def scale(self, lam) -> "State":
        lam = as_jet(lam)
        out = {}
        for m, c in self._coeffs.items():
            v = lam * c
            if v:
                out[m] = v
        return State._raw(self.sig, out)

    def __rmul__(self, lam):
        try:
            return self.scale(lam)
        except TypeError:
            return NotImplemented

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return self.sig == other.sig and self._coeffs == other._coeffs

    __hash__ = None

    def __repr__(self):
        return f"State(n={self.sig.n_total}, {self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for m in sorted(self._coeffs, key=lambda m: (rank(m), indices(m))):
            c = self._coeffs[m]
            mono = "*".join(f"th{a}" for a in indices(m))
            text = str(c)
            if " " in text:
                text = f"({text})"
            parts.append(text if not mono else mono if c == 1 else f"{text}*{mono}")
        return " + ".join(parts)


def left_mult_theta(alpha: int, psi: State) -> State:
    """Left multiplication by ``theta^alpha``."""
    psi.sig.check_index(alpha)
    bit = 1 << (alpha - 1)
    out = {}
    for m, c in psi._coeffs.items():
        if m & bit:
            continue
        out[m | bit] = -c if _below(m, alpha) & 1 else c
    return State._raw(psi.sig, out)


def derivative(alpha: int, psi: State) -> State:
    """Left derivative with respect to ``theta^alpha``."""
    psi.sig.check_index(alpha)
    bit = 1 << (alpha - 1)
    out = {}
    for m, c in psi._coeffs.items():
        if not m & bit:
            continue
        out[m ^ bit] = -c if _below(m, alpha) & 1 else c
    return State._raw(psi.sig, out)


def rank_project_oracle(k: int, psi: State) -> State:
    """Keep only the rank-``k`` component (reference for the projector family)."""
    psi.sig.check_rank(k)
    return State._raw(psi.sig, {m: c for m, c in psi._coeffs.items() if rank(m) == k})


def conjugate_state(psi: State) -> State:
    return State._raw(psi.sig, {m: c.conjugate() for m, c in psi._coeffs.items()})


def wedge(a: State, b: State) -> State:
    """Grassmann product ``a * b``; scalar coefficients are even and commute."""
    a._check(b)
    out: Dict[int, JetScalar] = {}
    for ma, ca in a._coeffs.items():
        for mb, cb in b._coeffs.items():
            prod = mono_mul(ma, mb)
            if prod is None:
                continue
            sign, m = prod
            v = ca * cb
            if sign < 0:
                v = -v
            s = out.get(m)
            out[m] = v if s is None else s + v
    return State._raw(a.sig, {m: c for m, c in out.items() if c})
