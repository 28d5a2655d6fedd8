"""Exact scalars: Gaussian rationals and first-order infinitesimal jets.

A :class:`JetScalar` is a finite sum of terms ``c * e * s1^k1 * s2^k2 ...``
where ``c`` is a Gaussian rational, ``e`` is at most one infinitesimal
parameter and the ``s`` are ordinary commuting symbols.  Any product of two
infinitesimals is dropped, so arithmetic is exact to first order.  A jet
without symbols is a complex number plus first-order epsilon terms; ordinary
symbols exist so that bilinear identities can be checked generically.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

__all__ = ["QQi", "JetScalar", "as_jet", "parse_fraction", "format_fraction"]


class QQi:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @classmethod
    def coerce(cls, value) -> "QQi":
        if isinstance(value, QQi):
            return value
        if isinstance(value, (int, Rational)):
            return cls(Fraction(value))
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        raise TypeError(f"cannot interpret {value!r} as an exact complex rational")

    def __add__(self, other):
        other = _qqi_or_none(other)
        if other is None:
            return NotImplemented
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _qqi_or_none(other)
        if other is None:
            return NotImplemented
        return QQi(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _qqi_or_none(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _qqi_or_none(other)
        if other is None:
            return NotImplemented
        return QQi(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _qqi_or_none(other)
        if other is None:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        num = self * other.conjugate()
        return QQi(num.re / norm, num.im / norm)

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _qqi_or_none(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"QQi({self})"

    def __str__(self):
        if not self.im:
            return format_fraction(self.re)
        imag = "i" if self.im == 1 else "-i" if self.im == -1 else f"{format_fraction(self.im)}i"
        if not self.re:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"({format_fraction(self.re)}{sign}{imag})"


def _qqi_or_none(value) -> Optional[QQi]:
    if isinstance(value, QQi):
        return value
    if isinstance(value, (int, Rational)):
        return QQi(Fraction(value))
    if isinstance(value, complex):
        return QQi.coerce(value)
    return None


def format_fraction(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` strictly (no floats)."""
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


# A term key: (infinitesimal id or None, sorted tuple of (symbol, power)).
Mono = Tuple[Tuple[str, int], ...]
Key = Tuple[Optional[str], Mono]

_ONE: Key = (None, ())


def _mul_mono(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    powers = dict(a)
    for name, k in b:
        powers[name] = powers.get(name, 0) + k
    return tuple(sorted(powers.items()))


class JetScalar:
    """Exact complex scalar with first-order infinitesimal terms.

    Instances are immutable.  ``JetScalar(3)``, ``JetScalar(QQi(0, 1))``,
    :meth:`eps` and :meth:`symbol` are the usual entry points.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, value=0):
        if isinstance(value, JetScalar):
            self._terms = value._terms
        else:
            c = QQi.coerce(value)
            self._terms = {_ONE: c} if c else {}
        self._hash = None

    @classmethod
    def _from_terms(cls, terms: Dict[Key, QQi]) -> "JetScalar":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def from_terms(cls, terms: Mapping[Key, object]) -> "JetScalar":
        out: Dict[Key, QQi] = {}
        for (eps, mono), c in terms.items():
            c = QQi.coerce(c)
            if c:
                out[(eps, tuple(sorted(mono)))] = c
        return cls._from_terms(out)

    @classmethod
    def eps(cls, ident: str, coeff=1) -> "JetScalar":
        """An infinitesimal parameter, optionally with a rational magnitude."""
        c = QQi.coerce(coeff)
        return cls._from_terms({(ident, ()): c} if c else {})

    @classmethod
    def symbol(cls, name: str) -> "JetScalar":
        """An ordinary commuting (finite, real) symbol."""
        return cls._from_terms({(None, ((name, 1),)): QQi(1)})

    # -- structure -----------------------------------------------------

    @property
    def terms(self) -> Mapping[Key, QQi]:
        return self._terms

    @property
    def body(self) -> QQi:
        """The finite numeric part (only meaningful when there are no symbols)."""
        return self._terms.get(_ONE, QQi(0))

    @property
    def eps_terms(self) -> Dict[str, QQi]:
        return {e: c for (e, mono), c in self._terms.items() if e is not None and not mono}

    @property
    def is_numeric(self) -> bool:
        """True when no ordinary symbols occur."""
        return all(not mono for _, mono in self._terms)

    @property
    def is_infinitesimal(self) -> bool:
        return all(e is not None for e, _ in self._terms)

    def symbols(self) -> set:
        return {name for _, mono in self._terms for name, _ in mono}

    def eps_ids(self) -> set:
        return {e for e, _ in self._terms if e is not None}

    def degree(self, names: Optional[Iterable[str]] = None) -> int:
        """Total degree in the given symbols (all symbols by default)."""
        names = None if names is None else set(names)
        best = 0
        for _, mono in self._terms:
            best = max(best, sum(k for s, k in mono if names is None or s in names))
        return best

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = _jet_or_none(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return JetScalar._from_terms(out)

    __radd__ = __add__

    def __neg__(self):
        return JetScalar._from_terms({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _jet_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _jet_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _jet_or_none(other)
        if other is None:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return JetScalar._from_terms({})
        # fast path: plain number times anything
        if len(a) == 1 and _ONE in a:
            c = a[_ONE]
            return JetScalar._from_terms({k: c * v for k, v in b.items()})
        if len(b) == 1 and _ONE in b:
            c = b[_ONE]
            return JetScalar._from_terms({k: v * c for k, v in a.items()})
        out: Dict[Key, QQi] = {}
        for (ea, ma), ca in a.items():
            for (eb, mb), cb in b.items():
                if ea is not None and eb is not None:
                    continue  # second-order infinitesimal
                key = (ea if ea is not None else eb, _mul_mono(ma, mb))
                s = out.get(key)
                out[key] = ca * cb if s is None else s + ca * cb
        return JetScalar._from_terms({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def conjugate(self) -> "JetScalar":
        """Conjugate every coefficient; parameters and symbols are unchanged."""
        return JetScalar._from_terms({k: c.conjugate() for k, c in self._terms.items()})

    # -- calculus on ordinary symbols ------------------------------------

    def diff(self, name: str) -> "JetScalar":
        out: Dict[Key, QQi] = {}
        for (e, mono), c in self._terms.items():
            powers = dict(mono)
            k = powers.get(name, 0)
            if not k:
                continue
            if k == 1:
                del powers[name]
            else:
                powers[name] = k - 1
            key = (e, tuple(sorted(powers.items())))
            out[key] = out.get(key, QQi(0)) + c * k
        return JetScalar._from_terms({k: c for k, c in out.items() if c})

    def subs(self, mapping: Mapping[str, object]) -> "JetScalar":
        """Substitute jets for ordinary symbols."""
        mapping = {k: as_jet(v) for k, v in mapping.items()}
        total = JetScalar()
        for (e, mono), c in self._terms.items():
            rest = []
            term = JetScalar._from_terms({(e, ()): c})
            for name, k in mono:
                if name in mapping:
                    for _ in range(k):
                        term = term * mapping[name]
                else:
                    rest.append((name, k))
            if rest:
                term = term * JetScalar._from_terms({(None, tuple(rest)): QQi(1)})
            total = total + term
        return total

    # -- comparison / display -------------------------------------------

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        other = _jet_or_none(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if not self._terms:
                self._hash = hash(0)
            elif len(self._terms) == 1 and _ONE in self._terms:
                self._hash = hash(self._terms[_ONE])
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"JetScalar({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for key in sorted(self._terms, key=_sort_key):
            e, mono = key
            c = self._terms[key]
            factors = ([e] if e is not None else []) + [
                s if k == 1 else f"{s}^{k}" for s, k in mono
            ]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _sort_key(key: Key):
    e, mono = key
    return (e is not None, e or "", tuple((s, -k) for s, k in mono))


def _jet_or_none(value) -> Optional[JetScalar]:
    if isinstance(value, JetScalar):
        return value
    if isinstance(value, (int, Rational, QQi, complex)):
        return JetScalar(value)
    return None


def as_jet(value) -> JetScalar:
    out = _jet_or_none(value)
    if out is None:
        raise TypeError(f"cannot interpret {value!r} as a scalar")
    return out
