"""The based quantum torus for Lambda = ((0, 1), (-1, 0)).

Basis elements ``X^(c1, c2)`` multiply as ``X^e X^f = v^{e1 f2 - e2 f1} X^{e+f}``
with ``v = q^{1/2}``.  Internally an element is a flat mapping
``(c1, c2, k) -> int`` meaning ``int * v^k * X^(c1, c2)``.
"""
from __future__ import annotations

from typing import Iterator, Mapping, Union

import numpy as np

from .qlaurent import LaurentQ

ExpVec = tuple[int, int]

# products with fewer term pairs than this stay in pure Python
_NUMPY_THRESHOLD = 4096
# largest dense accumulator (cells) before switching to the sort-based path
_DENSE_LIMIT = 1 << 24
_INT64_SAFE = 1 << 62


class NotDivisible(ArithmeticError):
    """Raised when an exact one-sided quotient does not exist in the torus."""


def lam(e: ExpVec, f: ExpVec) -> int:
    """The skew form Lambda(e, f) = e1 f2 - e2 f1."""
    return e[0] * f[1] - e[1] * f[0]


def gl_key(e: ExpVec) -> tuple[int, int]:
    """Graded-lex key: total degree, then first coordinate."""
    return (e[0] + e[1], e[0])


def top_key(e: ExpVec) -> tuple[int, int]:
    """Lex key on (c2, c1); used for the upper triangularity bound in expansions."""
    return (e[1], e[0])


class TorusElem:
    __slots__ = ("_t", "_grouped", "_arrays", "_hash")

    def __init__(self, terms: Mapping[ExpVec, LaurentQ | int] | None = None):
        flat: dict[tuple[int, int, int], int] = {}
        for e, c in (terms or {}).items():
            c = LaurentQ._lift(c)
            for k, a in c.items():
                key = (int(e[0]), int(e[1]), k)
                flat[key] = flat.get(key, 0) + a
        self._t = {k: c for k, c in flat.items() if c}
        self._grouped = None
        self._arrays = None
        self._hash = None

    @classmethod
    def _raw(cls, flat: dict) -> "TorusElem":
        obj = cls.__new__(cls)
        obj._t = flat
        obj._grouped = None
        obj._arrays = None
        obj._hash = None
        return obj

    @classmethod
    def X(cls, c1: int, c2: int, coeff: LaurentQ | int = 1) -> "TorusElem":
        return cls({(c1, c2): coeff})

    @classmethod
    def scalar(cls, c: LaurentQ | int) -> "TorusElem":
        return cls({(0, 0): c})

    # -- views --------------------------------------------------------------
    @property
    def terms(self) -> dict[ExpVec, LaurentQ]:
        """Coefficients w.r.t. the basis X^(c), as ExpVec -> LaurentQ."""
        if self._grouped is None:
            g: dict[ExpVec, dict[int, int]] = {}
            for (c1, c2, k), a in self._t.items():
                g.setdefault((c1, c2), {})[k] = a
            self._grouped = {e: LaurentQ._raw(d) for e, d in g.items()}
        return dict(self._grouped)

    def coeff(self, e: ExpVec) -> LaurentQ:
        return self.terms.get(tuple(e), LaurentQ())

    def support(self) -> set[ExpVec]:
        return {(c1, c2) for c1, c2, _ in self._t}

    def flat_items(self) -> Iterator[tuple[tuple[int, int, int], int]]:
        return iter(self._t.items())

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __len__(self):
        return len(self.support())

    # -- ring operations ----------------------------------------------------
    @staticmethod
    def _lift(x) -> "TorusElem":
        if isinstance(x, TorusElem):
            return x
        if isinstance(x, (int, LaurentQ)):
            return TorusElem.scalar(x)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        r = dict(self._t)
        for key, c in other._t.items():
            s = r.get(key, 0) + c
            if s:
                r[key] = s
            else:
                r.pop(key, None)
        return TorusElem._raw(r)

    __radd__ = __add__

    def __neg__(self):
        return TorusElem._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, LaurentQ)):
            return self.scale(other)
        if not isinstance(other, TorusElem):
            return NotImplemented
        return t_mul(self, other)

    def __rmul__(self, other):
        # scalars are central
        if isinstance(other, (int, LaurentQ)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("only nonnegative powers")
        out = TorusElem.scalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def scale(self, c: LaurentQ | int) -> "TorusElem":
        if isinstance(c, int):
            if c == 0:
                return TorusElem()
            return TorusElem._raw({k: a * c for k, a in self._t.items()})
        if c.is_unit():
            ((s, sign),) = c.items()
            return TorusElem._raw({(c1, c2, k + s): a * sign for (c1, c2, k), a in self._t.items()})
        return t_mul(self, TorusElem.scalar(c))

    def shift_v(self, s: int) -> "TorusElem":
        """Multiply by v^s."""
        return TorusElem._raw({(c1, c2, k + s): a for (c1, c2, k), a in self._t.items()})

    def bar(self) -> "TorusElem":
        return t_bar(self)

    def __eq__(self, other):
        if isinstance(other, (int, LaurentQ)):
            other = TorusElem.scalar(other)
        if not isinstance(other, TorusElem):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # -- numpy view ---------------------------------------------------------
    def _as_arrays(self):
        if self._arrays is None:
            n = len(self._t)
            keys = np.fromiter((x for key in self._t for x in key), dtype=np.int64, count=3 * n)
            keys = keys.reshape(n, 3)
            vals = np.fromiter(self._t.values(), dtype=np.int64, count=n)
            self._arrays = (keys[:, 0].copy(), keys[:, 1].copy(), keys[:, 2].copy(), vals)
        return self._arrays

    def l1_norm(self) -> int:
        return sum(abs(c) for c in self._t.values())

    def max_abs_coeff(self) -> int:
        return max((abs(c) for c in self._t.values()), default=0)

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        terms = self.terms
        return {
            "terms": [
                {"e": [e[0], e[1]], "coeff": terms[e].to_json()}
                for e in sorted(terms, key=gl_key)
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TorusElem":
        return cls({tuple(t["e"]): LaurentQ.from_json(t["coeff"]) for t in data["terms"]})

    def __repr__(self):
        return f"TorusElem({self})"

    def __str__(self):
        terms = self.terms
        if not terms:
            return "0"
        parts = []
        for e in sorted(terms, key=gl_key):
            c = terms[e]
            mono = f"X^({e[0]},{e[1]})"
            if c == 1:
                parts.append(mono)
            elif len(c) == 1:
                parts.append(f"{c}*{mono}")
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# multiplication


def _mul_python(a: TorusElem, b: TorusElem) -> TorusElem:
    r: dict[tuple[int, int, int], int] = {}
    bt = list(b._t.items())
    for (e1, e2, i), x in a._t.items():
        for (f1, f2, j), y in bt:
            key = (e1 + f1, e2 + f2, i + j + e1 * f2 - e2 * f1)
            r[key] = r.get(key, 0) + x * y
    return TorusElem._raw({k: c for k, c in r.items() if c})


def _mul_numpy(a: TorusElem, b: TorusElem) -> TorusElem:
    a1, a2, ak, av = a._as_arrays()
    b1, b2, bk, bv = b._as_arrays()
    loop_over_a = len(av) <= len(bv)

    lo1 = int(a1.min() + b1.min())
    lo2 = int(a2.min() + b2.min())
    n1 = int(a1.max() + b1.max()) - lo1 + 1
    n2 = int(a2.max() + b2.max()) - lo2 + 1
    twist = int(np.abs(a1).max() * np.abs(b2).max() + np.abs(a2).max() * np.abs(b1).max())
    klo = int(ak.min() + bk.min()) - twist
    n3 = int(ak.max() + bk.max()) + twist - klo + 1
    s23 = n2 * n3

    def chunks():
        if loop_over_a:
            base = b1 * s23 + b2 * n3 + bk
            for e1, e2, i, x in zip(a1.tolist(), a2.tolist(), ak.tolist(), av.tolist()):
                off = (e1 - lo1) * s23 + (e2 - lo2) * n3 + i - klo
                yield base + (off + e1 * b2 - e2 * b1), bv * x
        else:
            base = a1 * s23 + a2 * n3 + ak
            for f1, f2, j, y in zip(b1.tolist(), b2.tolist(), bk.tolist(), bv.tolist()):
                off = (f1 - lo1) * s23 + (f2 - lo2) * n3 + j - klo
                yield base + (off + a1 * f2 - a2 * f1), av * y

    cells = n1 * s23
    if cells <= _DENSE_LIMIT:
        dense = np.zeros(cells, dtype=np.int64)
        # indices inside one chunk are distinct, so plain fancy-index += is exact
        for idx, vals in chunks():
            dense[idx] += vals
        nz = np.flatnonzero(dense)
        vals = dense[nz]
    else:
        parts = list(chunks())
        idx = np.concatenate([p[0] for p in parts])
        v = np.concatenate([p[1] for p in parts])
        order = np.argsort(idx, kind="stable")
        idx, v = idx[order], v[order]
        starts = np.flatnonzero(np.r_[True, idx[1:] != idx[:-1]])
        sums = np.add.reduceat(v, starts)
        keep = sums != 0
        nz, vals = idx[starts][keep], sums[keep]
    c1 = (nz // s23 + lo1).tolist()
    c2 = ((nz // n3) % n2 + lo2).tolist()
    k = (nz % n3 + klo).tolist()
    return TorusElem._raw(dict(zip(zip(c1, c2, k), vals.tolist())))


def t_mul(a: TorusElem, b: TorusElem) -> TorusElem:
    """Exact product in the quantum torus."""
    if not a._t or not b._t:
        return TorusElem()
    pairs = len(a._t) * len(b._t)
    if pairs >= _NUMPY_THRESHOLD and a.l1_norm() * b.l1_norm() < _INT64_SAFE:
        return _mul_numpy(a, b)
    return _mul_python(a, b)


def t_bar(a: TorusElem) -> TorusElem:
    """Bar involution: v -> v^{-1} on coefficients, each X^(c) fixed."""
    return TorusElem._raw({(c1, c2, -k): c for (c1, c2, k), c in a._t.items()})


# ---------------------------------------------------------------------------
# division


def _divide(a: TorusElem, b: TorusElem, right: bool, max_iter: int | None) -> TorusElem:
    if not b:
        raise ZeroDivisionError("division by zero torus element")
    if not a:
        return TorusElem()
    bterms = b.terms
    lead_b = max(bterms, key=gl_key)
    min_b = min(bterms, key=gl_key)
    lead_coeff = bterms[lead_b]
    aterms = a.terms
    min_a = min(aterms, key=gl_key)
    floor = gl_key((min_a[0] - min_b[0], min_a[1] - min_b[1]))
    if max_iter is None:
        max_iter = 10 * len(aterms) * (1 + len(bterms))

    residual = a
    quotient: dict[ExpVec, LaurentQ] = {}
    for _ in range(max_iter):
        if not residual:
            return TorusElem(quotient)
        rterms = residual.terms
        top = max(rterms, key=gl_key)
        e = (top[0] - lead_b[0], top[1] - lead_b[1])
        if gl_key(e) < floor:
            raise NotDivisible(f"quotient term {e} below the admissible bound")
        twist = lam(e, lead_b) if right else lam(lead_b, e)
        try:
            c = rterms[top].divexact(lead_coeff.shift(twist))
        except ArithmeticError as exc:
            raise NotDivisible(f"coefficient at {top} not divisible") from exc
        quotient[e] = c
        piece = TorusElem.X(*e, c)
        residual = residual - (t_mul(piece, b) if right else t_mul(b, piece))
    raise NotDivisible("iteration cap exceeded")


def t_rightdiv(a: TorusElem, b: TorusElem, max_iter: int | None = None) -> TorusElem:
    """Return c with c * b == a, or raise NotDivisible."""
    return _divide(a, b, right=True, max_iter=max_iter)


def t_leftdiv(a: TorusElem, b: TorusElem, max_iter: int | None = None) -> TorusElem:
    """Return c with b * c == a, or raise NotDivisible."""
    return _divide(a, b, right=False, max_iter=max_iter)


def minimal_terms(a: TorusElem) -> dict[ExpVec, LaurentQ]:
    """Support points that are minimal under the componentwise order, with coefficients."""
    if not a:
        raise ValueError("minimal_terms of zero")
    terms = a.terms
    pts = sorted(terms, key=gl_key)
    minimal: list[ExpVec] = []
    for p in pts:
        # anything below p in the partial order has a smaller gl key
        if not any(m[0] <= p[0] and m[1] <= p[1] for m in minimal):
            minimal.append(p)
    return {m: terms[m] for m in minimal}


def X1() -> TorusElem:
    return TorusElem.X(1, 0)


def X2() -> TorusElem:
    return TorusElem.X(0, 1)


def v_elem(k: int) -> TorusElem:
    """The scalar v^k = q^{k/2} as a torus element."""
    return TorusElem.scalar(LaurentQ.v(k))
