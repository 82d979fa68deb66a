"""Cluster variables X_m of the quantum Kronecker cluster algebra, and X_delta."""
from __future__ import annotations

import threading

from .qlaurent import LaurentQ, bracket_binomial
from .qtorus import ExpVec, TorusElem, t_leftdiv, t_rightdiv

_cache: dict[int, TorusElem] = {1: TorusElem.X(1, 0), 2: TorusElem.X(0, 1)}
_lock = threading.Lock()
_Q = LaurentQ.q(1)


def dim_V(m: int) -> ExpVec:
    """Dimension vector of the module V(m) attached to X_m (m not in {1, 2})."""
    if m >= 3:
        return (m - 2, m - 3)  # N(m-2)
    if m <= 0:
        return (-m, -m + 1)  # M(1-m)
    raise ValueError("V(m) is undefined for m in {1, 2}")


def module_of(m: int) -> tuple[str, int]:
    """(kind, n) of V(m): preinjective N(m-2) for m >= 3, preprojective M(1-m) for m <= 0."""
    if m >= 3:
        return ("preinj", m - 2)
    if m <= 0:
        return ("preproj", 1 - m)
    raise ValueError("V(m) is undefined for m in {1, 2}")


def xvar_rec(m: int) -> TorusElem:
    """X_m from the exchange relation X_{m-1} X_{m+1} = q X_m^2 + 1."""
    got = _cache.get(m)
    if got is not None:
        return got
    with _lock:
        if m >= 3:
            start = max(k for k in _cache if k >= 1) + 1
            for j in range(start, m + 1):
                num = (_cache[j - 1] * _cache[j - 1]).scale(_Q) + 1
                _cache[j] = t_leftdiv(num, _cache[j - 2])
        else:
            start = min(k for k in _cache if k <= 2) - 1
            for j in range(start, m - 1, -1):
                num = (_cache[j + 1] * _cache[j + 1]).scale(_Q) + 1
                _cache[j] = t_rightdiv(num, _cache[j + 2])
        return _cache[m]


def xvar_closed(m: int) -> TorusElem:
    """Closed-form Laurent expansion of X_m as a sum over p + r <= n of bracket products."""
    if m in (1, 2):
        return _cache[m]
    terms: dict[ExpVec, LaurentQ] = {}
    if m <= 0:
        n = -m
        terms[(n + 2, -n - 1)] = LaurentQ(1)
        pos = lambda p, r: (2 * r - n, 2 * p - n - 1)  # noqa: E731
    else:
        n = m - 3
        terms[(-n - 1, n + 2)] = LaurentQ(1)
        pos = lambda p, r: (2 * p - n - 1, 2 * r - n)  # noqa: E731
    for p in range(n + 1):
        for r in range(n + 1 - p):
            c = bracket_binomial(n - r, p) * bracket_binomial(n + 1 - p, r)
            e = pos(p, r)
            terms[e] = terms.get(e, LaurentQ()) + c
    return TorusElem(terms)


def xdelta() -> TorusElem:
    """X_delta = X^(-1,1) + X^(1,-1) + X^(-1,-1)."""
    return TorusElem({(-1, 1): 1, (1, -1): 1, (-1, -1): 1})


def min_exp_xvar(m: int) -> ExpVec:
    """Exponent of the unique minimal term of X_m (coefficient 1)."""
    if m == 1:
        return (1, 0)
    if m == 2:
        return (0, 1)
    d = dim_V(m)
    return (-d[0], -d[1])


def clear_cache() -> None:
    with _lock:
        for k in [k for k in _cache if k not in (1, 2)]:
            del _cache[k]
