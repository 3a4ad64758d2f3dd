"""Permutation-invariance checks for the weighted q-Euler sums.

For odd weights ``w_1..w_n`` and a permutation ``sigma`` write
``u = (w_sigma(1), ..., w_sigma(n))``, ``prefix = u[:-1]``, ``last = u[-1]`` and
``W = prod(prefix)``.  For a mixed-radix index ``k`` over ``prefix`` let
``S(k) = sum_j (W / prefix_j) k_j``.  Two expressions are evaluated:

* the direct form (:func:`theorem2_value`)::

    [W]_q^m / [2]_{q^W} * sum_k (-1)^|k| q^(last S) E_{m,q^W}(last x + last S / W)

* the decomposed form (:func:`theorem3_value`)::

    1/[2]_{q^W} * sum_l C(m,l) [W]_q^l [last]_q^(m-l) E_{l,q^W}(last x)
                  * That_{m, q^last}(prefix | l)

Both must be the same rational for every ``sigma`` and must agree with each
other.  Certified mode samples enough points to turn pointwise agreement into
an identity of rational functions in ``q``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from typing import Callable, Iterator, Sequence

from .euler import QEulerCache, q_euler_poly
from .qcalc import QSample, Rational, format_rational, q_int, qsample, sample_points

SCHEMA_VERSION = 1
DEFAULT_BUDGET = 20_000_000


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class WeightVector:
    w: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", tuple(int(v) for v in self.w))
        if not self.w:
            raise ValueError("weight vector must be non-empty")
        bad = [v for v in self.w if v < 1 or v % 2 == 0]
        if bad:
            raise ValueError(f"weights must be odd positive integers, got {bad}")

    @property
    def n(self) -> int:
        return len(self.w)

    def permuted(self, sigma: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.w[i - 1] for i in sigma)


def check_permutation(sigma: Sequence[int], n: int) -> tuple[int, ...]:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{n}")
    return sigma


def all_permutations(n: int) -> list[tuple[int, ...]]:
    """S_n in lexicographic order, identity first, as 1-based image tuples."""
    return list(itertools.permutations(range(1, n + 1)))


def mixed_radix(bounds: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All ``k`` with ``0 <= k_i < bounds[i]``, little-endian odometer order."""
    k = [0] * len(bounds)
    if any(b < 1 for b in bounds):
        return
    while True:
        yield tuple(k)
        i = 0
        while i < len(k):
            k[i] += 1
            if k[i] < bounds[i]:
                break
            k[i] = 0
            i += 1
        else:
            return


def _split(wv: WeightVector, sigma: Sequence[int]) -> tuple[tuple[int, ...], int, int]:
    u = wv.permuted(check_permutation(sigma, wv.n))
    prefix, last = u[:-1], u[-1]
    return prefix, last, prod(prefix)


def _cofactor_sums(prefix: Sequence[int]) -> list[tuple[int, int]]:
    """``[(S(k), |k|)]`` over the mixed-radix range of ``prefix``."""
    W = prod(prefix)
    cof = [W // w for w in prefix]
    return [
        (sum(c * kj for c, kj in zip(cof, k)), sum(k)) for k in mixed_radix(prefix)
    ]


def theorem2_value(
    wv: WeightVector,
    sigma: Sequence[int],
    m: int,
    x: int,
    q: QSample,
    cache: QEulerCache | None = None,
) -> Rational:
    q = qsample(q)
    cache = QEulerCache() if cache is None else cache
    prefix, last, W = _split(wv, sigma)
    total = Fraction(0)
    for S, ksum in _cofactor_sums(prefix):
        arg = Fraction(last * (W * x + S), W)
        term = q ** (last * S) * q_euler_poly(m, arg, W, q, cache)
        total += -term if ksum % 2 else term
    return q_int(W, q) ** m / (1 + q**W) * total


def t_hat(m: int, l: int, prefix: Sequence[int], q_eff: QSample) -> Rational:
    """``sum_k q_eff^((l+1) S(k)) [S(k)]_{q_eff}^(m-l) (-1)^|k|``; ``0^0 = 1``."""
    if not 0 <= l <= m:
        raise ValueError(f"need 0 <= l <= m, got l={l}, m={m}")
    q_eff = qsample(q_eff)
    total = Fraction(0)
    for S, ksum in _cofactor_sums(prefix):
        term = q_eff ** ((l + 1) * S) * q_int(S, q_eff) ** (m - l)
        total += -term if ksum % 2 else term
    return total


THatFn = Callable[[int, int, Sequence[int], QSample], Rational]


def theorem3_value(
    wv: WeightVector,
    sigma: Sequence[int],
    m: int,
    x: int,
    q: QSample,
    cache: QEulerCache | None = None,
    t_hat_fn: THatFn = t_hat,
) -> Rational:
    q = qsample(q)
    cache = QEulerCache() if cache is None else cache
    prefix, last, W = _split(wv, sigma)
    bW, blast = q_int(W, q), q_int(last, q)
    q_eff = q**last
    total = Fraction(0)
    for l in range(m + 1):
        total += (
            comb(m, l)
            * bW**l
            * blast ** (m - l)
            * q_euler_poly(l, last * x, W, q, cache)
            * t_hat_fn(m, l, prefix, q_eff)
        )
    return total / (1 + q**W)


# -- degree tracking for certification -------------------------------------


@dataclass(frozen=True)
class _Deg:
    """Bound for a value ``N(q) / D(q)``.

    ``num`` bounds deg N; ``den`` is the exact multiset of factors of D, with
    ``('-', k)`` standing for ``1 - q^k`` and ``('+', k)`` for ``1 + q^k``.
    """

    num: int
    den: Counter = field(default_factory=Counter)

    @property
    def den_degree(self) -> int:
        return sum(k * e for (_, k), e in self.den.items())

    def __mul__(self, other: "_Deg") -> "_Deg":
        return _Deg(self.num + other.num, self.den + other.den)

    def __pow__(self, e: int) -> "_Deg":
        return _Deg(self.num * e, Counter({a: c * e for a, c in self.den.items()}))

    def __add__(self, other: "_Deg") -> "_Deg":
        common = self.den | other.den
        dc = _Deg(0, common).den_degree
        num = max(
            self.num + dc - self.den_degree, other.num + dc - other.den_degree
        )
        return _Deg(num, common)


_ONE = _Deg(0)


def _poly(d: int) -> _Deg:
    return _Deg(max(d, 0))


def _inv(sign: str, k: int) -> _Deg:
    return _Deg(0, Counter({(sign, k): 1}))


def _bracket_deg(s: int, W: int) -> _Deg:
    """``[s/W]_{q^W} = (1 - q^s) / (1 - q^W)`` for integer ``s >= 0``."""
    if s == 0:
        return _ONE
    if s % W == 0:
        return _poly(s - W)
    return _Deg(s, Counter({("-", W): 1}))


def _number_degs(n: int, W: int) -> list[_Deg]:
    degs = [_ONE]
    for k in range(1, n + 1):
        acc = degs[0]
        for l in range(1, k):
            acc = acc + _poly(W * l) * degs[l]
        degs.append(_poly(W) * acc * _inv("+", W * (k + 1)))
    return degs


def _poly_deg(m: int, s: int, W: int, numbers: list[_Deg]) -> _Deg:
    """Bound for ``E_{m,q^W}(s/W)``."""
    if s == 0:
        return numbers[m]
    b = _bracket_deg(s, W)
    total = None
    for l in range(m + 1):
        term = _poly(s * l) * numbers[l] * b ** (m - l)
        total = term if total is None else total + term
    return total


def _expression_degs(wv: WeightVector, m: int, x: int) -> list[_Deg]:
    out = []
    for sigma in all_permutations(wv.n):
        prefix, last, W = _split(wv, sigma)
        numbers = _number_degs(m, W)
        sums = _cofactor_sums(prefix)

        inner = None
        for S, _ in sums:
            term = _poly(last * S) * _poly_deg(m, last * (W * x + S), W, numbers)
            inner = term if inner is None else inner + term
        out.append(_poly((W - 1) * m) * _inv("+", W) * inner)

        outer = None
        for l in range(m + 1):
            th = None
            for S, _ in sums:
                b = _poly(last * (S - 1)) if S else _ONE
                term = _poly(last * (l + 1) * S) * b ** (m - l)
                th = term if th is None else th + term
            term = (
                _poly((W - 1) * l)
                * _poly((last - 1) * (m - l))
                * _poly_deg(l, last * W * x, W, numbers)
                * th
            )
            outer = term if outer is None else outer + term
        out.append(_inv("+", W) * outer)
    return out


def certify_bound(wv: WeightVector, m: int, x: int) -> int:
    """Degree bound ``D`` such that ``D + 1`` matching samples prove identity.

    Every expression value is tracked as ``N/D`` with explicit degree bounds.
    The returned number bounds ``deg(N_a D_b - N_b D_a)`` for every pair of
    expressions compared, so it is also a bound on each numerator and
    denominator degree.
    """
    if x < 0:
        raise ValueError("x must be >= 0")
    degs = _expression_degs(wv, m, x)
    return max(1, max(d.num for d in degs) + max(d.den_degree for d in degs))


# -- verification driver ----------------------------------------------------


@dataclass
class SymmetryReport:
    config: dict
    results: list[dict] = field(default_factory=list)
    verdicts: dict[str, bool] = field(default_factory=dict)
    witnesses: list[dict] = field(default_factory=list)
    samples: dict[int, list[Fraction]] = field(default_factory=dict)
    euler_evaluations: int = 0

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "samples": {
                str(m): [format_rational(q) for q in qs]
                for m, qs in sorted(self.samples.items())
            },
            "results": [
                {
                    "m": r["m"],
                    "q": format_rational(r["q"]),
                    "sigma": list(r["sigma"]),
                    "theorem2": format_rational(r["theorem2"]),
                    "theorem3": format_rational(r["theorem3"]),
                }
                for r in self.results
            ],
            "verdicts": {k: ("PASS" if v else "FAIL") for k, v in self.verdicts.items()},
            "verdict": self.verdict,
            "witnesses": self.witnesses,
        }


def _witness(kind: str, m: int, q: Fraction, a: tuple, b: tuple, va, vb) -> dict:
    return {
        "kind": kind,
        "m": m,
        "q": format_rational(q),
        "sigma_a": list(a[0]),
        "route_a": a[1],
        "value_a": format_rational(va),
        "sigma_b": list(b[0]),
        "route_b": b[1],
        "value_b": format_rational(vb),
    }


def verify_invariance(
    wv: WeightVector,
    m_max: int,
    x: int = 0,
    q_count: int = 8,
    mode: str = "sampled",
    seed: int | None = None,
    cache: QEulerCache | None = None,
    budget: int = DEFAULT_BUDGET,
    t_hat_fn: THatFn = t_hat,
) -> SymmetryReport:
    """Evaluate both expressions over S_n for ``m = 0..m_max`` and compare.

    In ``certified`` mode the sample count for each ``m`` is raised to
    ``certify_bound(wv, m, x) + 1``.
    """
    if mode not in ("sampled", "certified"):
        raise ValueError(f"unknown mode {mode!r}")
    if m_max < 0 or x < 0:
        raise ValueError("m_max and x must be >= 0")
    cache = QEulerCache() if cache is None else cache
    perms = all_permutations(wv.n)

    counts = {}
    for m in range(m_max + 1):
        counts[m] = certify_bound(wv, m, x) + 1 if mode == "certified" else q_count
    cost = factorial(wv.n) * prod(wv.w) * sum(counts.values())
    if cost > budget:
        raise BudgetExceeded(f"configuration cost {cost} exceeds budget {budget}")

    report = SymmetryReport(
        config={
            "weights": list(wv.w),
            "m_max": m_max,
            "x": x,
            "q_count": q_count,
            "mode": mode,
            "seed": seed,
        }
    )
    thm2_ok = thm3_ok = routes_ok = True
    before = cache.evaluations
    for m in range(m_max + 1):
        qs = sample_points(counts[m], seed=seed)
        report.samples[m] = qs
        for q in qs:
            row = []
            for sigma in perms:
                v2 = theorem2_value(wv, sigma, m, x, q, cache)
                v3 = theorem3_value(wv, sigma, m, x, q, cache, t_hat_fn)
                row.append((sigma, v2, v3))
                report.results.append(
                    {"m": m, "q": q, "sigma": sigma, "theorem2": v2, "theorem3": v3}
                )
            ref_sigma, ref2, ref3 = row[0]
            for kind, idx in (("theorem2", 1), ("theorem3", 2)):
                ref = row[0][idx]
                bad = next((r for r in row if r[idx] != ref), None)
                if bad is not None:
                    if kind == "theorem2":
                        thm2_ok = False
                    else:
                        thm3_ok = False
                    report.witnesses.append(
                        _witness(
                            kind, m, q, (ref_sigma, kind), (bad[0], kind), ref, bad[idx]
                        )
                    )
            bad = next((r for r in row if r[1] != r[2]), None)
            if bad is not None:
                routes_ok = False
                report.witnesses.append(
                    _witness(
                        "routes", m, q, (bad[0], "theorem2"), (bad[0], "theorem3"),
                        bad[1], bad[2],
                    )
                )
    report.verdicts = {
        "theorem2_invariance": thm2_ok,
        "theorem3_invariance": thm3_ok,
        "routes_agree": routes_ok,
    }
    report.euler_evaluations = cache.evaluations - before
    return report
