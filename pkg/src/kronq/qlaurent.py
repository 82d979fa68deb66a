"""Exact arithmetic in Z[q^{±1/2}] and the two q-binomial families.

Elements are stored by exponent of ``v = q^{1/2}``; the exponent ``k`` stands
for ``q^{k/2}``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Union

IntLike = Union[int, "LaurentQ"]


def _clean(d: Mapping[int, int]) -> dict[int, int]:
    return {int(k): int(c) for k, c in d.items() if c}


class LaurentQ:
    """Immutable Laurent polynomial in v with integer coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, terms: Mapping[int, int] | int | None = None):
        if terms is None:
            self._c = {}
        elif isinstance(terms, int):
            self._c = {0: terms} if terms else {}
        else:
            self._c = _clean(terms)
        self._hash = None

    @classmethod
    def _raw(cls, d: dict[int, int]) -> "LaurentQ":
        obj = cls.__new__(cls)
        obj._c = d
        obj._hash = None
        return obj

    @classmethod
    def v(cls, k: int = 1, coeff: int = 1) -> "LaurentQ":
        """The monomial ``coeff * v^k`` (i.e. ``coeff * q^{k/2}``)."""
        return cls({k: coeff})

    @classmethod
    def q(cls, k: int = 1) -> "LaurentQ":
        """The monomial ``q^k``."""
        return cls({2 * k: 1})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, k: int) -> int:
        return self._c.get(k, 0)

    def degree(self) -> int:
        return max(self._c)

    def valuation(self) -> int:
        return min(self._c)

    def is_unit(self) -> bool:
        return len(self._c) == 1 and next(iter(self._c.values())) in (1, -1)

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._c.values())

    def at_one(self) -> int:
        """Specialize at v = 1."""
        return sum(self._c.values())

    def __call__(self, v):
        return sum(c * v**k for k, c in self._c.items())

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _lift(x) -> "LaurentQ":
        if isinstance(x, LaurentQ):
            return x
        if isinstance(x, int):
            return LaurentQ(x)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        r = dict(self._c)
        for k, c in other._c.items():
            s = r.get(k, 0) + c
            if s:
                r[k] = s
            else:
                r.pop(k, None)
        return LaurentQ._raw(r)

    __radd__ = __add__

    def __neg__(self):
        return LaurentQ._raw({k: -c for k, c in self._c.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        r: dict[int, int] = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                r[i + j] = r.get(i + j, 0) + a * b
        return LaurentQ._raw({k: c for k, c in r.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("negative powers are only defined for units")
            (k, c), = self._c.items()
            return LaurentQ({-k * -n: c ** -n})
        out = LaurentQ(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentQ":
        """Multiply by v^k."""
        if not k:
            return self
        return LaurentQ._raw({e + k: c for e, c in self._c.items()})

    def bar(self) -> "LaurentQ":
        """The involution v -> v^{-1}."""
        return LaurentQ._raw({-k: c for k, c in self._c.items()})

    def divexact(self, other: "LaurentQ") -> "LaurentQ":
        """Exact quotient ``self / other``; raises ``ArithmeticError`` if none exists."""
        other = self._lift(other)
        if not other:
            raise ZeroDivisionError("division by zero LaurentQ")
        if not self:
            return LaurentQ()
        top_b, low_b = other.degree(), other.valuation()
        lead = other._c[top_b]
        floor = self.valuation() - low_b
        rem = dict(self._c)
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            k = top - top_b
            if k < floor:
                raise ArithmeticError("not divisible")
            c, r = divmod(rem[top], lead)
            if r:
                raise ArithmeticError("not divisible")
            quot[k] = c
            for e, b in other._c.items():
                s = rem.get(e + k, 0) - c * b
                if s:
                    rem[e + k] = s
                else:
                    rem.pop(e + k, None)
        return LaurentQ._raw(quot)

    # -- comparison / hashing --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentQ(other)
        if not isinstance(other, LaurentQ):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- formatting -------------------------------------------------------
    def to_json(self) -> list:
        return [[k, str(c)] for k, c in sorted(self._c.items())]

    @classmethod
    def from_json(cls, data: Iterable) -> "LaurentQ":
        return cls({int(k): int(c) for k, c in data})

    def __repr__(self):
        return f"LaurentQ({dict(sorted(self._c.items()))})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c, reverse=True):
            c = self._c[k]
            mono = _qpow_str(k)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def _qpow_str(k: int) -> str:
    if k == 0:
        return "1"
    if k % 2 == 0:
        e = k // 2
        return "q" if e == 1 else f"q^{e}"
    return f"q^({k}/2)"


ZERO = LaurentQ()
ONE = LaurentQ(1)


def lq_mul(a: LaurentQ, b: LaurentQ) -> LaurentQ:
    return a * b


def lq_add(a: LaurentQ, b: LaurentQ) -> LaurentQ:
    return a + b


def lq_neg(a: LaurentQ) -> LaurentQ:
    return -a


def lq_bar(a: LaurentQ) -> LaurentQ:
    return a.bar()


@lru_cache(maxsize=None)
def bracket_binomial(n: int, k: int, t: int = 2) -> LaurentQ:
    """Balanced q-binomial with base ``x = v^t``.

    ``prod_{i<k} (x^{n-i} - x^{-(n-i)}) / (x^{i+1} - x^{-(i+1)})``; with
    ``t = 2`` this is the bracket in q itself.  Returns 0 for ``k < 0``.
    """
    if t <= 0:
        raise ValueError("base exponent t must be positive")
    if k < 0:
        return ZERO
    if k == 0:
        return ONE
    if n < 0:
        # each numerator factor flips sign: [n, k] = (-1)^k [k-n-1, k]
        r = bracket_binomial(k - n - 1, k, t)
        return -r if k % 2 else r
    if k > n:
        return ZERO
    # [N,k] = x^{-k} [N-1,k] + x^{N-k} [N-1,k-1]
    return bracket_binomial(n - 1, k, t).shift(-t * k) + bracket_binomial(n - 1, k - 1, t).shift(
        t * (n - k)
    )


class GrCountPoly:
    """Integer polynomial in the field-size variable ``w``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[int] | int | None = None):
        if coeffs is None:
            d = {}
        elif isinstance(coeffs, int):
            d = {0: coeffs}
        elif isinstance(coeffs, Mapping):
            d = dict(coeffs)
        else:
            d = dict(enumerate(coeffs))
        if any(k < 0 for k in d):
            raise ValueError("negative w-degree")
        self._c = _clean(d)

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def degree(self) -> int:
        return max(self._c) if self._c else 0

    def __bool__(self):
        return bool(self._c)

    def __call__(self, w: int) -> int:
        return sum(c * w**k for k, c in self._c.items())

    def __add__(self, other):
        if isinstance(other, int):
            other = GrCountPoly(other)
        r = dict(self._c)
        for k, c in other._c.items():
            r[k] = r.get(k, 0) + c
        return GrCountPoly(r)

    def __mul__(self, other):
        if isinstance(other, int):
            other = GrCountPoly(other)
        r: dict[int, int] = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                r[i + j] = r.get(i + j, 0) + a * b
        return GrCountPoly(r)

    __rmul__ = __mul__
    __radd__ = __add__

    def __eq__(self, other):
        if isinstance(other, int):
            other = GrCountPoly(other)
        if not isinstance(other, GrCountPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def to_json(self) -> list:
        return [[k, str(c)] for k, c in sorted(self._c.items())]

    def __repr__(self):
        return f"GrCountPoly({dict(sorted(self._c.items()))})"

    def __str__(self):
        if not self._c:
            return "0"
        out = []
        for k in sorted(self._c, reverse=True):
            c = self._c[k]
            mono = "" if k == 0 else ("w" if k == 1 else f"w^{k}")
            if not mono:
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            else:
                out.append(f"{c}*{mono}")
        return " + ".join(out).replace("+ -", "- ")


@lru_cache(maxsize=None)
def gauss_binomial(n: int, r: int) -> GrCountPoly:
    """Gaussian binomial ``(n choose r)_w``.

    Conventions: 1 for ``r = 0`` (any n), 0 for ``r < 0``, 0 for ``0 <= n < r``.
    Negative ``n`` with positive ``r`` has no polynomial value and raises.
    """
    if r < 0:
        return GrCountPoly()
    if r == 0:
        return GrCountPoly(1)
    if n < 0:
        raise ValueError(f"gauss_binomial({n}, {r}) is not a polynomial in w")
    if n < r:
        return GrCountPoly()
    # (n, r) = (n-1, r-1) + w^r (n-1, r)
    return gauss_binomial(n - 1, r - 1) + GrCountPoly({r: 1}) * gauss_binomial(n - 1, r)


def subst_w(p: GrCountPoly) -> LaurentQ:
    """Substitute w -> q^2 (v^4)."""
    return LaurentQ({4 * k: c for k, c in p.coeffs.items()})
