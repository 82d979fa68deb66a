"""Rank-2 compatible pairs and quantum seed mutation.

Mutation in direction k replaces the k-th cluster variable Y_k by
``M'(e_k) = sum_p [1, p] M(E e_k + p b^k)``.  Every such exponent has k-th
entry -1, so ``M'(e_k) = Y_k^{-1} P`` with P a polynomial in the other
variable; the new variable is the exact left quotient of P by Y_k.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .qlaurent import bracket_binomial
from .qtorus import TorusElem, t_leftdiv

Mat2 = tuple[tuple[int, int], tuple[int, int]]

KRONECKER_LAMBDA: Mat2 = ((0, 1), (-1, 0))
KRONECKER_B: Mat2 = ((0, 2), (-2, 0))


class Incompatible(ValueError):
    pass


def _mat(m) -> Mat2:
    return ((int(m[0][0]), int(m[0][1])), (int(m[1][0]), int(m[1][1])))


def _mul(a: Mat2, b: Mat2) -> Mat2:
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(2)) for j in range(2)) for i in range(2)
    )  # type: ignore[return-value]


def _transpose(a: Mat2) -> Mat2:
    return ((a[0][0], a[1][0]), (a[0][1], a[1][1]))


def check_compatible(Lambda: Mat2, Btilde: Mat2) -> tuple[int, int]:
    """Return the diagonal (d1, d2) of Btilde^T Lambda, or raise Incompatible."""
    Lambda, Btilde = _mat(Lambda), _mat(Btilde)
    if any(Lambda[i][j] != -Lambda[j][i] for i in range(2) for j in range(2)):
        raise Incompatible("Lambda is not skew-symmetric")
    P = _mul(_transpose(Btilde), Lambda)
    if P[0][1] or P[1][0]:
        raise Incompatible(f"Btilde^T Lambda = {P} is not diagonal")
    if P[0][0] <= 0 or P[1][1] <= 0:
        raise Incompatible(f"Btilde^T Lambda = {P} has a non-positive diagonal entry")
    return (P[0][0], P[1][1])


def e_matrix(Btilde: Mat2, k: int) -> Mat2:
    """The matrix E for direction k in {1, 2}."""
    if k not in (1, 2):
        raise ValueError("direction must be 1 or 2")
    Btilde = _mat(Btilde)
    kk = k - 1
    E = [[1 if i == j else 0 for j in range(2)] for i in range(2)]
    for i in range(2):
        E[i][kk] = -1 if i == kk else max(0, -Btilde[i][kk])
    return _mat(E)


def mutate_matrix(B: Mat2, k: int) -> Mat2:
    kk = k - 1
    out = [[0, 0], [0, 0]]
    for i in range(2):
        for j in range(2):
            if i == kk or j == kk:
                out[i][j] = -B[i][j]
            else:
                out[i][j] = B[i][j] + (abs(B[i][kk]) * B[kk][j] + B[i][kk] * abs(B[kk][j])) // 2
    return _mat(out)


@dataclass(frozen=True)
class CompatiblePair:
    Lambda: Mat2
    Btilde: Mat2
    D: tuple[int, int] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "Lambda", _mat(self.Lambda))
        object.__setattr__(self, "Btilde", _mat(self.Btilde))
        object.__setattr__(self, "D", check_compatible(self.Lambda, self.Btilde))


@dataclass(frozen=True)
class QuantumSeed:
    pair: CompatiblePair
    vars: tuple[TorusElem, TorusElem]
    history: tuple[int, ...] = ()

    def check_quasi_commute(self) -> bool:
        y1, y2 = self.vars
        lam12 = self.pair.Lambda[0][1]
        return y1 * y2 == (y2 * y1).shift_v(2 * lam12)


def initial_seed() -> QuantumSeed:
    return QuantumSeed(
        CompatiblePair(KRONECKER_LAMBDA, KRONECKER_B),
        (TorusElem.X(1, 0), TorusElem.X(0, 1)),
    )


def _lam(L: Mat2, c, d) -> int:
    return sum(c[i] * L[i][j] * d[j] for i in range(2) for j in range(2))


def mutate(seed: QuantumSeed, k: int) -> QuantumSeed:
    if k not in (1, 2):
        raise ValueError("direction must be 1 or 2")
    kk, other = k - 1, 2 - k
    L, B = seed.pair.Lambda, seed.pair.Btilde
    dk = seed.pair.D[kk]
    E = e_matrix(B, k)
    col_E = (E[0][kk], E[1][kk])
    col_B = (B[0][kk], B[1][kk])
    minus_ek = tuple(-1 if i == kk else 0 for i in range(2))
    yk, yo = seed.vars[kk], seed.vars[other]

    P = TorusElem()
    for p in range(2):
        c = tuple(col_E[i] + p * col_B[i] for i in range(2))
        rest = tuple(c[i] - minus_ek[i] for i in range(2))
        assert rest[kk] == 0 and rest[other] >= 0
        # M(c) = q^{-Lambda(-e_k, rest)/2} Y_k^{-1} M(rest); M(rest) = Y_other^n
        coeff = bracket_binomial(1, p, dk).shift(-_lam(L, minus_ek, rest))
        P = P + (yo ** rest[other]).scale(coeff)
    new_var = t_leftdiv(P, yk)

    new_L = _mat(_mul(_mul(_transpose(E), L), E))
    new_B = mutate_matrix(B, k)
    assert new_B == tuple(tuple(-x for x in row) for row in B)
    new_pair = CompatiblePair(new_L, new_B)
    vars_ = list(seed.vars)
    vars_[kk] = new_var
    return QuantumSeed(new_pair, (vars_[0], vars_[1]), seed.history + (k,))


def mutate_sequence(seed: QuantumSeed, steps) -> list[QuantumSeed]:
    """All seeds along the walk (excluding the start)."""
    out = []
    for k in steps:
        seed = mutate(seed, k)
        out.append(seed)
    return out


def seeds_equal(a: QuantumSeed, b: QuantumSeed) -> bool:
    """Same variables and matrices (history ignored)."""
    return a.pair == b.pair and a.vars == b.vars

