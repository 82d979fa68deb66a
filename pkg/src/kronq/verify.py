"""Named verification suites: each identity checked exactly, case by case.

A suite is a generator of ``(inputs, lhs, rhs)`` triples; a case fails when
the two sides differ (or computing them raises).  Failures keep both sides
in serialized form so they can be printed or dumped as JSON.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

from . import bases, cluster, quivergr, seeds
from .bases import BasisExpansion, Diag, Mono, Unit, NotInAlgebra
from .qlaurent import LaurentQ, bracket_binomial, gauss_binomial, subst_w
from .qtorus import TorusElem, minimal_terms, t_bar

SUITES = (
    "closed-vs-rec",
    "cc-theorem",
    "szanto",
    "prop-products",
    "bar-invariance",
    "positivity",
    "bases-roundtrip",
    "mutation",
    "qbinom-identities",
)


class UnknownSuite(KeyError):
    pass


@dataclass
class Bounds:
    """Size knobs; ``None`` means the suite's default."""

    max_n: int | None = None
    primes: tuple[int, ...] | None = None
    samples: int = 50
    seed: int = 0

    def n(self, default: int) -> int:
        return default if self.max_n is None else self.max_n

    def ps(self, default: tuple[int, ...]) -> tuple[int, ...]:
        return default if self.primes is None else tuple(self.primes)


@dataclass
class Failure:
    index: int
    inputs: dict
    lhs: Any
    rhs: Any

    def to_json(self) -> dict:
        return {"index": self.index, "inputs": self.inputs, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class VerifyReport:
    suite: str
    cases: int = 0
    failures: list[Failure] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "passed": self.passed,
            "failures": [f.to_json() for f in self.failures],
        }


def _ser(x: Any) -> Any:
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, (list, tuple)):
        return [_ser(y) for y in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


Case = tuple[dict, Callable[[], Any], Callable[[], Any]]


def _run(name: str, cases: Iterator[Case]) -> VerifyReport:
    rep = VerifyReport(name)
    t0 = time.perf_counter()
    for i, (inputs, lhs_fn, rhs_fn) in enumerate(cases):
        rep.cases += 1
        try:
            lhs, rhs = lhs_fn(), rhs_fn()
        except Exception as exc:  # a raised error is a failed case, not a crash
            rep.failures.append(Failure(i, inputs, f"error: {type(exc).__name__}: {exc}", None))
            continue
        if lhs != rhs:
            rep.failures.append(Failure(i, inputs, _ser(lhs), _ser(rhs)))
    rep.seconds = time.perf_counter() - t0
    return rep


def _q(k2: int) -> LaurentQ:
    """q^{k2/2}."""
    return LaurentQ.v(k2)


X = cluster.xvar_rec


def z(n: int) -> TorusElem:
    """z_n with z_0 = 1 and z_n = 0 for n < 0."""
    return bases.cheb_elem("first", n)


def s(n: int) -> TorusElem:
    return bases.cheb_elem("second", n)


# ---------------------------------------------------------------------------
# suites


def _closed_vs_rec(b: Bounds) -> Iterator[Case]:
    n = b.n(10)
    for m in range(-n, n + 4):
        yield {"m": m}, (lambda m=m: cluster.xvar_closed(m)), (lambda m=m: X(m))
        yield (
            {"m": m, "check": "minimal term"},
            lambda m=m: sorted(minimal_terms(X(m)).items()),
            lambda m=m: [(cluster.min_exp_xvar(m), LaurentQ(1))],
        )


def _cc_theorem(b: Bounds) -> Iterator[Case]:
    primes = b.ps((2, 3, 5, 7, 11))
    nmax = b.n(4)
    for n in range(1, nmax + 1):
        for kind, m in (("preproj", 1 - n), ("preinj", n + 2)):
            yield (
                {"m": m, "module": kind, "n": n, "primes": list(primes)},
                lambda kind=kind, n=n: quivergr.cc_from_counts(kind, n, primes),
                lambda m=m: X(m),
            )
    for n in range(1, 2 * nmax + 1):
        yield {"regular": n}, (lambda n=n: quivergr.cc_regular_szanto(n)), (lambda n=n: s(n))


def _szanto(b: Bounds) -> Iterator[Case]:
    primes = b.ps((2, 3, 5, 7))
    for n in range(1, b.n(3) + 1):
        for p in primes:
            for lam in (0, 1, quivergr.INF):
                rep = quivergr.kronecker_module("regular", n, lam, p)
                for a in range(n + 1):
                    for bb in range(n + 1):
                        yield (
                            {"n": n, "p": p, "lambda": str(lam), "e": [a, bb]},
                            lambda rep=rep, a=a, bb=bb: quivergr.subrep_count(rep, (a, bb)),
                            lambda n=n, a=a, bb=bb, p=p: quivergr.szanto_count(n, (a, bb))(p),
                        )


def prop_even(n: int, m: int) -> tuple[TorusElem, TorusElem]:
    """Both sides of the X_n X_{n+2m} product formula."""
    rhs = (X(n + m) * X(n + m)).scale(_q(2 * m))
    for l in range(m):
        for k in range(l + 1, m + 1):
            rhs = rhs + z(2 * (m - k)).scale(_q(2 * (-m + 2 * l + 1)))
    return X(n) * X(n + 2 * m), rhs


def prop_odd(n: int, m: int) -> tuple[TorusElem, TorusElem]:
    """Both sides of the X_n X_{n+2m+1} product formula."""
    rhs = (X(n + m) * X(n + m + 1)).scale(_q(2 * m))
    for l in range(m):
        for k in range(l + 1, m + 1):
            rhs = rhs + z(2 * (m - k) + 1).scale(_q(2 * (-m + 2 * l) + 1))
    return X(n) * X(n + 2 * m + 1), rhs


def _pair(fn, *args):
    return (lambda: fn(*args)[0]), (lambda: fn(*args)[1])


def _reversed(fn, *args):
    """Reverse the product order on the left by applying the bar involution to both sides."""
    return (lambda: t_bar(fn(*args)[0])), (lambda: t_bar(fn(*args)[1]))


def _zz(n, m):
    return z(n) * z(m), z(m + n) + z(m - n) if n != m else z(2 * n) + 2


def _xz(n, m):
    return X(n) * z(m), X(n + m).scale(_q(m)) + X(n - m).scale(_q(-m))


def _xdelta(n):
    return X(n) * cluster.xdelta(), X(n - 1).scale(_q(-1)) + X(n + 1).scale(_q(1))


def _s_lemma(n):
    return s(n), (X(1) * X(n + 3)).scale(_q(n)) - (X(2) * X(n + 2)).scale(_q(n + 2))


def _prop_products(b: Bounds) -> Iterator[Case]:
    cases = []
    for n in range(1, 7):
        for m in range(n, 7):
            cases.append(("z_n z_m", _zz, (n, m)))
    for m in range(1, 6):
        for n in range(-4, 7):
            cases.append(("X_n z_m", _xz, (n, m)))
    for m in range(0, 5):
        for n in range(-4, 5):
            cases.append(("X_n X_n+2m", prop_even, (n, m)))
            cases.append(("X_n X_n+2m+1", prop_odd, (n, m)))
    for n in range(-6, 9):
        cases.append(("X_n X_delta", _xdelta, (n,)))
    for n in range(0, 9):
        cases.append(("s_n lemma", _s_lemma, (n,)))
    for name, fn, args in cases:
        yield {"identity": name, "args": list(args)}, *_pair(fn, *args)
        if name != "s_n lemma":
            yield {"identity": name + " (reversed)", "args": list(args)}, *_reversed(fn, *args)
    for n in range(2, 9):
        yield (
            {"identity": "z_n in family S", "n": n},
            lambda n=n: bases.expand_in_basis(z(n), "S"),
            lambda n=n: BasisExpansion("S", False, {Diag(n): 1, Diag(n - 2) if n > 2 else Unit(): -1}),
        )


def monomial_labels(mmax: int = 4, deg: int = 4) -> list[Mono]:
    return [Mono(m, a, d - a) for m in range(-mmax, mmax + 1) for d in range(1, deg + 1) for a in range(1, d + 1)]


def _bar_invariance(b: Bounds) -> Iterator[Case]:
    for m in range(-10, 14):
        yield {"X": m}, (lambda m=m: t_bar(X(m))), (lambda m=m: X(m))
    for n in range(0, b.n(8) + 1):
        yield {"z": n}, (lambda n=n: t_bar(z(n))), (lambda n=n: z(n))
        yield {"s": n}, (lambda n=n: t_bar(s(n))), (lambda n=n: s(n))
    for lab in monomial_labels():
        el = lambda lab=lab: bases.basis_element(lab, "B", True)  # noqa: E731
        yield {"primed": bases.label_to_json(lab)}, (lambda el=el: t_bar(el())), el
    for n in range(1, 7):
        el = lambda n=n: bases.basis_element(Diag(n), "D", True)  # noqa: E731
        yield {"primed": {"kind": "diag", "n": n}, "family": "D"}, (lambda el=el: t_bar(el())), el


def _positivity(b: Bounds) -> Iterator[Case]:
    clusters = range(-5, 7)
    mono_done = False
    for family in bases.FAMILIES:
        labels: list = [Diag(n) for n in range(1, b.n(6) + 1)]
        if not mono_done:
            labels = monomial_labels() + labels  # monomials do not depend on the family
            mono_done = True
        for lab in labels:
            e = bases.expansion_of(lab, family)
            yield (
                {"family": family, "label": bases.label_to_json(lab)},
                lambda e=e: bases.is_positive(e, clusters).witness,
                lambda: None,
            )


def random_expansion(rng: random.Random, family: str, primed: bool) -> BasisExpansion:
    """A random expansion with 1-4 labels and small coefficients."""
    terms = {}
    for _ in range(rng.randint(1, 4)):
        r = rng.random()
        if r < 0.1:
            lab = Unit()
        elif r < 0.35:
            lab = Diag(rng.randint(1, 4))
        else:
            lab = bases.mono(rng.randint(-3, 4), rng.randint(0, 3), rng.randint(0, 3))
        coeff = LaurentQ({rng.randint(-3, 3): rng.choice([-2, -1, 1, 2, 3]) for _ in range(rng.randint(1, 2))})
        terms[lab] = coeff
    return BasisExpansion(family, primed, terms)


def _roundtrip(b: Bounds) -> Iterator[Case]:
    rng = random.Random(b.seed)
    for family in bases.FAMILIES:
        for primed in (False, True):
            for i in range(b.samples):
                e = random_expansion(rng, family, primed)
                yield (
                    {"family": family, "primed": primed, "sample": i},
                    lambda e=e: bases.expand_in_basis(bases.realize(e), e.family, e.primed),
                    lambda e=e: e,
                )

    def non_member():
        try:
            bases.expand_in_basis(TorusElem.X(-1, 0))
        except NotInAlgebra:
            return "NotInAlgebra"
        return "expanded"

    yield {"element": "X^(-1,0)"}, non_member, lambda: "NotInAlgebra"


def _mutation(b: Bounds) -> Iterator[Case]:
    init = seeds.initial_seed()
    yield {"check": "D"}, (lambda: init.pair.D), (lambda: (2, 2))
    k = b.n(3)
    for start in (1, 2):
        walk = [start if i % 2 == 0 else 3 - start for i in range(k)]
        path = seeds.mutate_sequence(init, walk)
        for i, sd in enumerate(path):
            yield (
                {"walk": walk[: i + 1], "check": "q-commute and D"},
                lambda sd=sd: (sd.check_quasi_commute(), sd.pair.D),
                lambda: (True, (2, 2)),
            )
            yield (
                {"walk": walk[: i + 1], "check": "double mutation"},
                lambda sd=sd, i=i: seeds.seeds_equal(seeds.mutate(sd, walk[i]), path[i - 1] if i else init),
                lambda: True,
            )
            for j, var in enumerate(sd.vars):
                yield {"walk": walk[: i + 1], "check": f"bar of Y{j + 1}"}, (lambda v=var: t_bar(v)), (lambda v=var: v)

    def produced():
        out = set()
        for start in (1, 2):
            for sd in seeds.mutate_sequence(init, [start, 3 - start, start]):
                out.update(sd.vars)
        return {m for m in range(-5, 9) if X(m) in out} - {1, 2}

    yield {"check": "variables reached"}, produced, lambda: {0, 3, 4, -1, 5, -2}


def _qbinom(b: Bounds) -> Iterator[Case]:
    N = b.n(8)
    for t in (1, 2):
        for n in range(N + 1):
            for k in range(n + 1):
                bk = bracket_binomial(n, k, t)
                yield {"identity": "bar", "n": n, "k": k, "t": t}, (lambda bk=bk: bk.bar()), (lambda bk=bk: bk)
    for n in range(N + 1):
        for bb in range(n + 1):
            for a in range(bb + 1):
                yield (
                    {"identity": "rescaling", "b": bb, "a": a},
                    lambda a=a, bb=bb: bracket_binomial(bb, a, 2).shift(2 * a * (bb - a)),
                    lambda a=a, bb=bb: subst_w(gauss_binomial(bb, a)),
                )
    for n in range(N + 1):
        for p in range(n + 1):
            for r in range(n - p + 1):
                yield (
                    {"identity": "pascal", "n": n, "p": p, "r": r},
                    lambda n=n, p=p, r=r: bracket_binomial(n + 1 - p, r, 2).shift(2 * r),
                    lambda n=n, p=p, r=r: bracket_binomial(n - p, r, 2)
                    + bracket_binomial(n - p, r - 1, 2).shift(2 * (n - p + 1)),
                )


_SUITES: dict[str, Callable[[Bounds], Iterator[Case]]] = {
    "closed-vs-rec": _closed_vs_rec,
    "cc-theorem": _cc_theorem,
    "szanto": _szanto,
    "prop-products": _prop_products,
    "bar-invariance": _bar_invariance,
    "positivity": _positivity,
    "bases-roundtrip": _roundtrip,
    "mutation": _mutation,
    "qbinom-identities": _qbinom,
}


def run_verify(suite: str, bounds: Bounds | None = None) -> VerifyReport | list[VerifyReport]:
    """Run one suite (a report) or ``"all"`` (a list of reports, in suite order)."""
    bounds = bounds or Bounds()
    if suite == "all":
        return [run_verify(name, bounds) for name in SUITES]
    if suite not in _SUITES:
        raise UnknownSuite(suite)
    return _run(suite, _SUITES[suite](bounds))
