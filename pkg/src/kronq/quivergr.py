"""Kronecker representations over prime fields and submodule-Grassmannian counts.

Representations are pairs of ``v2 x v1`` matrices ``A, B`` over F_p
(arrows 1 -> 2).  Counts are brute force: subspaces ``U1`` are enumerated as
reduced row-echelon matrices, and for each the admissible ``U2 ⊇ A U1 + B U1``
are counted by summing over RREF pivot profiles of the quotient.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .qlaurent import GrCountPoly, LaurentQ, gauss_binomial, subst_w
from .qtorus import TorusElem

Matrix = tuple[tuple[int, ...], ...]
INF = "inf"
MAX_CANDIDATES = 10**7


class InterpolationMismatch(ArithmeticError):
    """Counts at the check primes disagree with the interpolated polynomial."""


class EnumerationTooLarge(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class KroneckerRep:
    v1: int
    v2: int
    A: Matrix
    B: Matrix
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        for M in (self.A, self.B):
            if len(M) != self.v2 or any(len(row) != self.v1 for row in M):
                raise ValueError("matrix shape does not match the dimension vector")

    @property
    def dim(self) -> tuple[int, int]:
        return (self.v1, self.v2)


def _zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def _freeze(M: list[list[int]]) -> Matrix:
    return tuple(tuple(row) for row in M)


def kronecker_module(kind: str, n: int, lam=None, p: int = 2) -> KroneckerRep:
    """Coordinate model of M(n) ('preproj'), N(n) ('preinj') or R_lam(n) ('regular').

    ``lam`` is a field element or ``"inf"`` for regular modules; ignored otherwise.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if kind == "preproj":
        v1, v2 = n - 1, n
        A, B = _zeros(v2, v1), _zeros(v2, v1)
        for i in range(v1):
            A[i][i] = 1
            B[i + 1][i] = 1
    elif kind == "preinj":
        v1, v2 = n, n - 1
        A, B = _zeros(v2, v1), _zeros(v2, v1)
        for i in range(v2):
            A[i][i] = 1
            B[i][i + 1] = 1
    elif kind == "regular":
        if lam is None:
            lam = 1
        v1 = v2 = n
        ident = _zeros(n, n)
        jordan = _zeros(n, n)
        ev = 0 if lam == INF else int(lam) % p
        for i in range(n):
            ident[i][i] = 1
            jordan[i][i] = ev
            if i + 1 < n:
                jordan[i][i + 1] = 1
        A, B = (jordan, ident) if lam == INF else (ident, jordan)
    else:
        raise ValueError(f"unknown module kind {kind!r}")
    return KroneckerRep(v1, v2, _freeze(A), _freeze(B), p)


# ---------------------------------------------------------------------------
# linear algebra over F_p


def rank_mod_p(rows: Iterable[Sequence[int]], p: int) -> int:
    M = [list(r) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col] % p), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][col], -1, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col] % p:
                f = M[i][col]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank


def _free_slots(pivots: Sequence[int], n: int) -> list[tuple[int, int]]:
    pivset = set(pivots)
    return [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivset]


def count_subspaces(n: int, k: int, p: int) -> int:
    """Number of k-dim subspaces of F_p^n, summed over RREF pivot profiles."""
    if k < 0 or k > n:
        return 0
    return sum(p ** len(_free_slots(piv, n)) for piv in itertools.combinations(range(n), k))


def rref_subspaces(n: int, k: int, p: int):
    """Yield a basis (list of rows) for every k-dim subspace of F_p^n, one RREF each."""
    if k < 0 or k > n:
        return
    for piv in itertools.combinations(range(n), k):
        slots = _free_slots(piv, n)
        for values in itertools.product(range(p), repeat=len(slots)):
            rows = [[0] * n for _ in range(k)]
            for i, c in enumerate(piv):
                rows[i][c] = 1
            for (i, c), x in zip(slots, values):
                rows[i][c] = x
            yield rows


def _apply(M: Matrix, u: Sequence[int], p: int) -> list[int]:
    return [sum(a * x for a, x in zip(row, u)) % p for row in M]


@lru_cache(maxsize=None)
def _image_rank_histogram(rep: KroneckerRep, e1: int) -> dict[int, int]:
    """For e1-dim U1, histogram of dim(A U1 + B U1)."""
    n_cand = count_subspaces(rep.v1, e1, rep.p)
    if n_cand > MAX_CANDIDATES:
        raise EnumerationTooLarge(f"{n_cand} candidate subspaces exceed {MAX_CANDIDATES}")
    hist: dict[int, int] = {}
    for basis in rref_subspaces(rep.v1, e1, rep.p):
        img = [_apply(rep.A, u, rep.p) for u in basis] + [_apply(rep.B, u, rep.p) for u in basis]
        w = rank_mod_p(img, rep.p) if img and rep.v2 else 0
        hist[w] = hist.get(w, 0) + 1
    return hist


def subrep_count(rep: KroneckerRep, e: tuple[int, int]) -> int:
    """|Gr_e(rep)| over F_p: pairs U1, U2 of dims e with A U1, B U1 inside U2."""
    e1, e2 = e
    if not (0 <= e1 <= rep.v1 and 0 <= e2 <= rep.v2):
        return 0
    total = 0
    for w, mult in _image_rank_histogram(rep, e1).items():
        if w <= e2:
            total += mult * count_subspaces(rep.v2 - w, e2 - w, rep.p)
    return total


# ---------------------------------------------------------------------------
# counting polynomials


def interpolate(points: Sequence[tuple[int, int]]) -> GrCountPoly:
    """Unique polynomial of degree < len(points) through the points; must have integer coefficients."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        for t, b in enumerate(basis):
            coeffs[t] += yi * b / denom
    if any(c.denominator != 1 for c in coeffs):
        raise InterpolationMismatch("interpolant has non-integer coefficients")
    return GrCountPoly([int(c) for c in coeffs])


def ambient_degree(v: tuple[int, int], e: tuple[int, int]) -> int:
    return e[0] * (v[0] - e[0]) + e[1] * (v[1] - e[1])


@dataclass(frozen=True)
class GrPolyResult:
    poly: GrCountPoly
    counts: Mapping[int, int]
    nodes: tuple[int, ...]
    checks: tuple[int, ...]
    degree_bound: int

    @property
    def certified(self) -> bool:
        """True when the nodes alone meet the ambient-dimension degree bound."""
        return len(self.nodes) >= self.degree_bound + 1


def gr_poly_report(kind: str, n: int, e: tuple[int, int], primes: Sequence[int], lam=1) -> GrPolyResult:
    """Interpolate the counting polynomial from brute-force counts at several primes.

    Uses ``min(len(primes), D + 1)`` primes as nodes, where D bounds the degree
    (dimension of the ambient product of Grassmannians); leftover primes are checks.
    """
    primes = list(primes)
    if not primes:
        raise ValueError("need at least one prime")
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    reps = {p: kronecker_module(kind, n, lam, p) for p in primes}
    v = reps[primes[0]].dim
    bound = ambient_degree(v, e)
    counts = {p: subrep_count(reps[p], e) for p in primes}
    k = min(len(primes), bound + 1)
    nodes, checks = primes[:k], primes[k:]
    poly = interpolate([(p, counts[p]) for p in nodes])
    for p in checks:
        if poly(p) != counts[p]:
            raise InterpolationMismatch(f"count {counts[p]} at p={p} disagrees with {poly}")
    return GrPolyResult(poly, counts, tuple(nodes), tuple(checks), bound)


def gr_poly(kind: str, n: int, e: tuple[int, int], primes: Sequence[int], lam=1) -> GrCountPoly:
    return gr_poly_report(kind, n, e, primes, lam).poly


def szanto_count(n: int, e: tuple[int, int]) -> GrCountPoly:
    """|Gr_(a,b)(R_p(n))| = (n-a choose n-b)_{w} (b choose a)_{w}, with w = q^2."""
    a, b = e
    right = gauss_binomial(b, a)
    if not right:
        return GrCountPoly()
    return gauss_binomial(n - a, n - b) * right


def d_exponent(e: tuple[int, int], v: tuple[int, int]) -> int:
    e1, e2 = e
    v1, v2 = v
    return 2 * e1 * (v1 - e1) - 2 * (2 * e1 - e2) * (v2 - e2)


def cc_element(v: tuple[int, int], counts: Mapping[tuple[int, int], GrCountPoly | int]) -> TorusElem:
    """Quantum Caldero-Chapoton element: sum_e v^{-d_e} |Gr_e| X^(-v1+2v2-2e2, 2e1-v2)."""
    v1, v2 = v
    terms: dict[tuple[int, int], LaurentQ] = {}
    for e1 in range(v1 + 1):
        for e2 in range(v2 + 1):
            c = counts[(e1, e2)]
            if isinstance(c, int):
                c = GrCountPoly(c)
            if not c:
                continue
            ex = (-v1 + 2 * v2 - 2 * e2, 2 * e1 - v2)
            term = subst_w(c).shift(-d_exponent((e1, e2), v))
            terms[ex] = terms.get(ex, LaurentQ()) + term
    return TorusElem(terms)


def cc_from_counts(kind: str, n: int, primes: Sequence[int], lam=1) -> TorusElem:
    """X_V for V = kind(n), every count interpolated from brute force over ``primes``."""
    v = kronecker_module(kind, n, lam, primes[0]).dim
    counts = {
        (e1, e2): gr_poly(kind, n, (e1, e2), primes, lam)
        for e1 in range(v[0] + 1)
        for e2 in range(v[1] + 1)
    }
    return cc_element(v, counts)


def cc_regular_szanto(n: int) -> TorusElem:
    """X_{R_p(n)} with counts from the closed form."""
    return cc_element((n, n), {(a, b): szanto_count(n, (a, b)) for a in range(n + 1) for b in range(n + 1)})
