"""Chebyshev elements, the bases B/S/D (and primed versions), and basis expansions.

Every basis element has a unique minimal torus term (componentwise order) and
distinct elements have distinct minimal exponents.  ``expand_in_basis`` runs
that triangularity as a greedy elimination.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .cluster import min_exp_xvar, xdelta, xvar_rec
from .qlaurent import LaurentQ
from .qtorus import ExpVec, TorusElem, gl_key, top_key

FAMILIES = ("B", "S", "D")
_DIAG_KIND = {"B": "first", "S": "second", "D": "power"}


class NotInImage(ValueError):
    """The exponent is not the minimal exponent of any basis element."""


class NotInAlgebra(ValueError):
    """The element is not in the cluster algebra (expansion cannot terminate)."""


# ---------------------------------------------------------------------------
# labels


@dataclass(frozen=True, order=True)
class Mono:
    """Cluster monomial X_m^a X_{m+1}^b with a > 0 (canonical form)."""

    m: int
    a: int
    b: int

    def __post_init__(self):
        if self.a <= 0 or self.b < 0:
            raise ValueError("canonical monomial needs a > 0, b >= 0; use mono()")


@dataclass(frozen=True, order=True)
class Diag:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("diagonal labels start at n = 1")


@dataclass(frozen=True, order=True)
class Unit:
    pass


Label = Union[Mono, Diag, Unit]


def mono(m: int, a: int, b: int) -> Label:
    """Canonical label for X_m^a X_{m+1}^b."""
    if a < 0 or b < 0:
        raise ValueError("exponents must be nonnegative")
    if a == 0 and b == 0:
        return Unit()
    if a == 0:
        return Mono(m + 1, b, 0)
    return Mono(m, a, b)


def _label_sort_key(lab: Label):
    if isinstance(lab, Unit):
        return (0, 0, 0, 0)
    if isinstance(lab, Diag):
        return (1, lab.n, 0, 0)
    return (2, lab.m, lab.a, lab.b)


def label_to_json(lab: Label) -> dict:
    if isinstance(lab, Mono):
        return {"kind": "mono", "m": lab.m, "a": lab.a, "b": lab.b}
    if isinstance(lab, Diag):
        return {"kind": "diag", "n": lab.n}
    return {"kind": "unit"}


def label_from_json(d: Mapping) -> Label:
    kind = d["kind"]
    if kind == "mono":
        return mono(int(d["m"]), int(d["a"]), int(d["b"]))
    if kind == "diag":
        return Diag(int(d["n"]))
    if kind == "unit":
        return Unit()
    raise ValueError(f"unknown label kind {kind!r}")


# ---------------------------------------------------------------------------
# Chebyshev families


@lru_cache(maxsize=None)
def cheb_elem(family: str, n: int) -> TorusElem:
    """z_n (first kind), s_n (second kind) or z^n (power) evaluated at z = X_delta."""
    if n < 0:
        return TorusElem()
    z = xdelta()
    if n == 0:
        return TorusElem.scalar(1)
    if n == 1:
        return z
    if family == "power":
        return cheb_elem("power", n - 1) * z
    if family == "first":
        if n == 2:
            return z * z - 2
    elif family == "second":
        if n == 2:
            return z * z - 1
    else:
        raise ValueError(f"unknown Chebyshev family {family!r}")
    return cheb_elem(family, n - 1) * z - cheb_elem(family, n - 2)


@lru_cache(maxsize=None)
def _xpow(m: int, a: int) -> TorusElem:
    return xvar_rec(m) ** a


@lru_cache(maxsize=None)
def _mono_elem(m: int, a: int, b: int) -> TorusElem:
    return _xpow(m, a) * _xpow(m + 1, b)


def basis_element(label: Label, family: str = "B", primed: bool = False) -> TorusElem:
    if isinstance(label, Unit):
        return TorusElem.scalar(1)
    if isinstance(label, Diag):
        return cheb_elem(_DIAG_KIND[family], label.n)
    el = _mono_elem(label.m, label.a, label.b)
    if primed and label.a * label.b:
        el = el.shift_v(-label.a * label.b)
    return el


def min_exp_label(label: Label) -> ExpVec:
    if isinstance(label, Unit):
        return (0, 0)
    if isinstance(label, Diag):
        return (-label.n, -label.n)
    d0, d1 = min_exp_xvar(label.m), min_exp_xvar(label.m + 1)
    return (label.a * d0[0] + label.b * d1[0], label.a * d0[1] + label.b * d1[1])


def label_of_min_exp(c: ExpVec) -> Label:
    """Inverse of ``min_exp_label``."""
    c1, c2 = c
    if c1 == 0 and c2 == 0:
        return Unit()
    if c1 == c2 and c1 < 0:
        return Diag(-c1)
    bound = abs(c1) + abs(c2) + 3
    for m in range(-bound, bound + 1):
        d0, d1 = min_exp_xvar(m), min_exp_xvar(m + 1)
        det = d0[0] * d1[1] - d0[1] * d1[0]
        a_num = c1 * d1[1] - c2 * d1[0]
        b_num = d0[0] * c2 - d0[1] * c1
        if a_num % det or b_num % det:
            continue
        a, b = a_num // det, b_num // det
        if a >= 0 and b >= 0:
            return mono(m, a, b)
    raise NotInImage(f"{c} is not a minimal exponent of a basis element")


# ---------------------------------------------------------------------------
# expansions


@dataclass(frozen=True)
class BasisExpansion:
    family: str = "B"
    primed: bool = False
    terms: Mapping[Label, LaurentQ] = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")
        clean = {}
        for lab, c in self.terms.items():
            c = LaurentQ._lift(c)
            if c:
                clean[lab] = clean.get(lab, LaurentQ()) + c
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    def __eq__(self, other):
        if not isinstance(other, BasisExpansion):
            return NotImplemented
        return (self.family, self.primed, dict(self.terms)) == (
            other.family,
            other.primed,
            dict(other.terms),
        )

    def __hash__(self):
        return hash((self.family, self.primed, frozenset(self.terms.items())))

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "primed": self.primed,
            "terms": [
                {"label": label_to_json(lab), "coeff": self.terms[lab].to_json()}
                for lab in sorted(self.terms, key=_label_sort_key)
            ],
        }

    @classmethod
    def from_json(cls, d: Mapping) -> "BasisExpansion":
        return cls(
            d["family"],
            bool(d["primed"]),
            {label_from_json(t["label"]): LaurentQ.from_json(t["coeff"]) for t in d["terms"]},
        )

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for lab in sorted(self.terms, key=_label_sort_key):
            out.append(f"({self.terms[lab]})*{label_name(lab, self.family, self.primed)}")
        return " + ".join(out)


def label_name(lab: Label, family: str = "B", primed: bool = False) -> str:
    if isinstance(lab, Unit):
        return "1"
    if isinstance(lab, Diag):
        return {"B": f"z_{lab.n}", "S": f"s_{lab.n}", "D": f"z^{lab.n}"}[family]
    s = f"X_{lab.m}^{lab.a}"
    if lab.b:
        s += f" X_{lab.m + 1}^{lab.b}"
    if primed and lab.b:
        s = f"q^(-{lab.a * lab.b}/2) {s}"
    return s


def realize(e: BasisExpansion) -> TorusElem:
    total = TorusElem()
    for lab, c in e.terms.items():
        total = total + basis_element(lab, e.family, e.primed).scale(c)
    return total


def expand_in_basis(
    a: TorusElem, family: str = "B", primed: bool = False, max_steps: int = 10_000
) -> BasisExpansion:
    """Write ``a`` in the chosen basis by repeatedly cancelling its smallest term.

    Raises NotInAlgebra when ``a`` cannot be a finite combination: the smallest
    exponent does not strictly increase, a basis element would overshoot the
    top term of ``a`` (in the (c2, c1) lex order every basis element has a
    unique top term, distinct across labels, so no valid expansion uses such a
    label), or ``max_steps`` is exhausted.
    """
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}")
    out: dict[Label, LaurentQ] = {}
    if not a:
        return BasisExpansion(family, primed, out)
    a_top = top_key(max(a.support(), key=top_key))
    residual = a
    last = None
    for _ in range(max_steps):
        if not residual:
            return BasisExpansion(family, primed, out)
        rterms = residual.terms
        low = min(rterms, key=gl_key)
        if last is not None and gl_key(low) <= last:
            raise NotInAlgebra(f"minimal exponent {low} did not increase")
        last = gl_key(low)
        try:
            lab = label_of_min_exp(low)
        except NotInImage as exc:
            raise NotInAlgebra(str(exc)) from exc
        el = basis_element(lab, family, primed)
        if top_key(max(el.support(), key=top_key)) > a_top:
            raise NotInAlgebra(f"basis element {label_name(lab, family, primed)} overshoots the top term")
        try:
            c = rterms[low].divexact(el.coeff(low))
        except ArithmeticError as exc:
            raise NotInAlgebra(f"coefficient at {low} not divisible") from exc
        if lab in out:
            raise NotInAlgebra(f"label {lab} selected twice")
        out[lab] = c
        residual = residual - el.scale(c)
    raise NotInAlgebra("step limit exhausted")


def shift_expansion(e: BasisExpansion, t: int) -> BasisExpansion:
    """Apply sigma_1^t (X_m -> X_{m+t}); diagonal elements and 1 are fixed."""
    if t == 0:
        return e
    terms = {}
    for lab, c in e.terms.items():
        if isinstance(lab, Mono):
            lab = Mono(lab.m + t, lab.a, lab.b)
        terms[lab] = c
    return BasisExpansion(e.family, e.primed, terms)


def laurent_in_cluster(e: BasisExpansion, m: int) -> TorusElem:
    """Coefficients of the element in the cluster (X_m, X_{m+1}), as a torus element."""
    return realize(shift_expansion(e, 1 - m))


@dataclass(frozen=True)
class PositivityResult:
    positive: bool
    witness: tuple[int, ExpVec, LaurentQ] | None = None

    def __bool__(self):
        return self.positive


def is_positive(e: BasisExpansion, m_range: Iterable[int]) -> PositivityResult:
    """Check all Laurent coefficients in every cluster of ``m_range`` lie in N[q^{±1/2}]."""
    if not e.terms:
        raise ValueError("positivity is defined for nonzero elements")
    for m in m_range:
        for ex, c in sorted(laurent_in_cluster(e, m).terms.items(), key=lambda t: gl_key(t[0])):
            if not c.is_nonnegative():
                return PositivityResult(False, (m, ex, c))
    return PositivityResult(True)


def expansion_of(label: Label, family: str = "B", primed: bool = False) -> BasisExpansion:
    return BasisExpansion(family, primed, {label: LaurentQ(1)})
