"""Operators on the Grassmann module, stored by their action on basis monomials.

Two operators are equal exactly when they act identically on every basis
monomial, so the canonical-basis matrix is a faithful normal form.  Symbolic
generator words (:class:`Word`) are only construction recipes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .grassmann import (
    AlgebraSignature,
    SignatureError,
    State,
    _below,
    indices,
    rank,
)
from .scalars import JetScalar, as_jet

__all__ = [
    "Operator",
    "Word",
    "op_generator_theta",
    "op_generator_deriv",
    "op_identity",
    "op_zero",
    "op_compose",
    "op_add",
    "op_scale",
    "op_apply",
    "op_transpose",
    "op_conjugate",
    "projector",
]

Columns = Dict[int, Dict[int, JetScalar]]


class Operator:
    """Linear map on the ``2**n`` dimensional Grassmann module.

    Stored column-wise: ``columns[in_mask][out_mask] = coefficient``.
    ``a @ b`` composes (``b`` acts first) and ``a @ psi`` applies to a State.
    """

    __slots__ = ("sig", "_cols")

    def __init__(self, sig: AlgebraSignature,
                 entries: Optional[Mapping[Tuple[int, int], object]] = None):
        self.sig = sig
        cols: Columns = {}
        limit = sig.dim
        for (out, inp), c in (entries or {}).items():
            if not (0 <= out < limit and 0 <= inp < limit):
                raise SignatureError(f"entry ({out}, {inp}) outside the {limit}-dim basis")
            c = as_jet(c)
            if c:
                cols.setdefault(inp, {})[out] = c
        self._cols = cols

    @classmethod
    def _raw(cls, sig, cols: Columns) -> "Operator":
        obj = cls.__new__(cls)
        obj.sig = sig
        obj._cols = cols
        return obj

    def entries(self) -> Dict[Tuple[int, int], JetScalar]:
        return {(out, inp): c for inp, col in self._cols.items() for out, c in col.items()}

    def column(self, inp: int) -> Mapping[int, JetScalar]:
        return self._cols.get(inp, {})

    def nnz(self) -> int:
        return sum(len(col) for col in self._cols.values())

    def _check(self, other):
        if other.sig != self.sig:
            raise SignatureError(f"signature mismatch: {self.sig} vs {other.sig}")

    # -- algebra ---------------------------------------------------------

    def apply(self, psi: State) -> State:
        if not isinstance(psi, State):
            raise TypeError(f"cannot apply an operator to {type(psi).__name__}")
        if psi.sig != self.sig:
            raise SignatureError(f"signature mismatch: {self.sig} vs {psi.sig}")
        out: Dict[int, JetScalar] = {}
        for m, c in psi.items():
            for o, v in self._cols.get(m, {}).items():
                p = v * c
                s = out.get(o)
                out[o] = p if s is None else s + p
        return State._raw(self.sig, {m: c for m, c in out.items() if c})

    def compose(self, other: "Operator") -> "Operator":
        """``self`` after ``other``."""
        self._check(other)
        cols: Columns = {}
        mine = self._cols
        for inp, col in other._cols.items():
            acc: Dict[int, JetScalar] = {}
            for mid, c in col.items():
                for out, v in mine.get(mid, {}).items():
                    p = v * c
                    s = acc.get(out)
                    acc[out] = p if s is None else s + p
            acc = {o: c for o, c in acc.items() if c}
            if acc:
                cols[inp] = acc
        return Operator._raw(self.sig, cols)

    def __matmul__(self, other):
        if isinstance(other, Operator):
            return self.compose(other)
        if isinstance(other, State):
            return self.apply(other)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        self._check(other)
        cols = {inp: dict(col) for inp, col in self._cols.items()}
        for inp, col in other._cols.items():
            target = cols.setdefault(inp, {})
            for out, c in col.items():
                s = target.get(out)
                s = c if s is None else s + c
                if s:
                    target[out] = s
                else:
                    target.pop(out, None)
            if not target:
                del cols[inp]
        return Operator._raw(self.sig, cols)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return self + (-other)

    def scale(self, lam) -> "Operator":
        lam = as_jet(lam)
        cols: Columns = {}
        for inp, col in self._cols.items():
            new = {}
            for out, c in col.items():
                v = lam * c
                if v:
                    new[out] = v
            if new:
                cols[inp] = new
        return Operator._raw(self.sig, cols)

    def __rmul__(self, lam):
        try:
            return self.scale(lam)
        except TypeError:
            return NotImplemented

    def __mul__(self, lam):
        if isinstance(lam, (Operator, State)):
            return NotImplemented
        try:
            return self.scale(lam)
        except TypeError:
            return NotImplemented

    def transpose(self) -> "Operator":
        """Matrix transpose in the monomial basis.

        With left derivatives this swaps ``theta^a`` and ``d/dtheta^a`` and
        reverses products, see :meth:`Word.transpose`.
        """
        cols: Columns = {}
        for inp, col in self._cols.items():
            for out, c in col.items():
                cols.setdefault(out, {})[inp] = c
        return Operator._raw(self.sig, cols)

    @property
    def T(self) -> "Operator":
        return self.transpose()

    def conjugate(self) -> "Operator":
        return Operator._raw(
            self.sig,
            {inp: {out: c.conjugate() for out, c in col.items()} for inp, col in self._cols.items()},
        )

    def __bool__(self):
        return bool(self._cols)

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return self.sig == other.sig and self._cols == other._cols

    __hash__ = None

    def __repr__(self):
        return f"Operator(n={self.sig.n_total}, nnz={self.nnz()})"

    def __str__(self):
        if not self._cols:
            return "0"
        lines = []
        for (out, inp), c in sorted(self.entries().items(),
                                    key=lambda kv: (rank(kv[0][1]), indices(kv[0][1]),
                                                    rank(kv[0][0]), indices(kv[0][0]))):
            lines.append(f"{_mono_str(inp)} -> {c} * {_mono_str(out)}")
        return "\n".join(lines)


def _mono_str(mask: int) -> str:
    return "*".join(f"th{a}" for a in indices(mask)) or "1"


# -- generators -------------------------------------------------------------

@lru_cache(maxsize=None)
def op_generator_theta(sig: AlgebraSignature, alpha: int) -> Operator:
    """Left multiplication by ``theta^alpha``."""
    sig.check_index(alpha)
    bit = 1 << (alpha - 1)
    one, minus = JetScalar(1), JetScalar(-1)
    cols = {m: {m | bit: minus if _below(m, alpha) & 1 else one}
            for m in sig.basis() if not m & bit}
    return Operator._raw(sig, cols)


@lru_cache(maxsize=None)
def op_generator_deriv(sig: AlgebraSignature, alpha: int) -> Operator:
    """Left derivative ``d/dtheta^alpha``."""
    sig.check_index(alpha)
    bit = 1 << (alpha - 1)
    one, minus = JetScalar(1), JetScalar(-1)
    cols = {m: {m ^ bit: minus if _below(m, alpha) & 1 else one}
            for m in sig.basis() if m & bit}
    return Operator._raw(sig, cols)


@lru_cache(maxsize=None)
def op_identity(sig: AlgebraSignature) -> Operator:
    one = JetScalar(1)
    return Operator._raw(sig, {m: {m: one} for m in sig.basis()})


def op_zero(sig: AlgebraSignature) -> Operator:
    return Operator._raw(sig, {})


def op_compose(a: Operator, b: Operator) -> Operator:
    return a.compose(b)


def op_add(a: Operator, b: Operator) -> Operator:
    return a + b


def op_scale(lam, a: Operator) -> Operator:
    return a.scale(lam)


def op_apply(a: Operator, psi: State) -> State:
    return a.apply(psi)


def op_transpose(a: Operator) -> Operator:
    return a.transpose()


def op_conjugate(a: Operator) -> Operator:
    return a.conjugate()


# -- symbolic words ---------------------------------------------------------

THETA = "th"
DERIV = "d"


@dataclass(frozen=True)
class Word:
    """``coeff * g_1 g_2 ... g_k`` with each letter ``("th", a)`` or ``("d", a)``."""

    letters: Tuple[Tuple[str, int], ...]
    coeff: JetScalar = JetScalar(1)

    def transpose(self) -> "Word":
        """Reverse the word and swap each ``theta^a`` with ``d/dtheta^a``."""
        swapped = tuple((DERIV if kind == THETA else THETA, a) for kind, a in reversed(self.letters))
        return Word(swapped, self.coeff)

    def to_operator(self, sig: AlgebraSignature) -> Operator:
        return word_operator(sig, self.letters).scale(self.coeff)

    def __str__(self):
        body = "*".join(f"{k}({a})" for k, a in self.letters) or "I"
        return body if self.coeff == 1 else f"{self.coeff}*{body}"


def _act(letters: Sequence[Tuple[str, int]], m: int) -> Optional[Tuple[int, int]]:
    """Apply a word to one basis monomial: ``(sign, mask)`` or ``None``."""
    mask, sign = m, 1
    for kind, a in reversed(letters):
        bit = 1 << (a - 1)
        if (kind == THETA) == bool(mask & bit):
            return None
        if _below(mask, a) & 1:
            sign = -sign
        mask ^= bit
    return sign, mask


def word_operator(sig: AlgebraSignature, letters: Sequence[Tuple[str, int]]) -> Operator:
    """Operator of a generator word, evaluated basis monomial by basis monomial."""
    for kind, a in letters:
        if kind not in (THETA, DERIV):
            raise ValueError(f"unknown generator kind {kind!r}")
        sig.check_index(a)
    one, minus = JetScalar(1), JetScalar(-1)
    cols: Columns = {}
    for m in sig.basis():
        hit = _act(letters, m)
        if hit is not None:
            cols[m] = {hit[1]: one if hit[0] > 0 else minus}
    return Operator._raw(sig, cols)


# -- projectors -------------------------------------------------------------

def _rank_word_sum(sig: AlgebraSignature, k: int) -> Operator:
    """sum over a_1<...<a_k of th(a_1)...th(a_k) d(a_k)...d(a_1).

    A word ending in ``d(a_1)...d(a_k)`` kills any monomial missing one of
    the ``a_j``, so each word is only evaluated on supersets of its indices.
    """
    full = sig.dim - 1
    acc: Dict[int, Dict[int, int]] = {}
    for alphas in combinations(range(1, sig.n_total + 1), k):
        letters = tuple((THETA, a) for a in alphas) + tuple((DERIV, a) for a in reversed(alphas))
        base = sum(1 << (a - 1) for a in alphas)
        rest = full & ~base
        sub = rest
        while True:
            m = base | sub
            hit = _act(letters, m)
            if hit is not None:
                col = acc.setdefault(m, {})
                col[hit[1]] = col.get(hit[1], 0) + hit[0]
            if not sub:
                break
            sub = (sub - 1) & rest
    cols: Columns = {}
    for m, col in acc.items():
        col = {o: JetScalar(c) for o, c in col.items() if c}
        if col:
            cols[m] = col
    return Operator._raw(sig, cols)


@lru_cache(maxsize=None)
def _projector_family(sig: AlgebraSignature) -> Tuple[Operator, ...]:
    n = sig.n_total
    family: Dict[int, Operator] = {}
    remainder = op_identity(sig)  # 1 - P_n - ... - P_{k+1}
    for k in range(n, -1, -1):
        if k == n:
            p = _rank_word_sum(sig, n)
        else:
            p = _rank_word_sum(sig, k).compose(remainder)
        family[k] = p
        remainder = remainder - p
    return tuple(family[k] for k in range(n + 1))


def projector(sig: AlgebraSignature, k: int) -> Operator:
    """Projector onto rank-``k`` monomials, built top-down from generator words.

    ``P_n`` is ``th(1)...th(n) d(n)...d(1)``; each lower ``P_k`` is the sum of
    the rank-``k`` words restricted by ``1 - P_n - ... - P_{k+1}``.
    """
    sig.check_rank(k)
    return _projector_family(sig)[k]


def projector_family(sig: AlgebraSignature) -> Tuple[Operator, ...]:
    return _projector_family(sig)


def operator_from_words(sig: AlgebraSignature, words: Iterable[Word]) -> Operator:
    total = op_zero(sig)
    for w in words:
        total = total + w.to_operator(sig)
    return total
