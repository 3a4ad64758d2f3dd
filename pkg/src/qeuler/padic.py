"""Truncated p-adic integers and the fermionic q-integral as a partial sum.

Values live in Z/p^K Z.  Division is only allowed by units; there is no
valuation tracking, so any formula that would divide by p is a usage error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .euler import QEulerCache, q_euler_poly
from .qcalc import RationalLike, as_rational

DEFAULT_PRECISION = 8
MAX_TERMS = 200_000


class PadicError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_prime(p: int) -> None:
    if p % 2 == 0 or not is_prime(p):
        raise PadicError(f"p={p} must be an odd prime")


@dataclass(frozen=True)
class PadicInt:
    p: int
    K: int
    residue: int

    def __post_init__(self) -> None:
        _check_prime(self.p)
        if self.K < 1:
            raise PadicError("precision K must be >= 1")
        if not 0 <= self.residue < self.modulus:
            raise PadicError(f"residue {self.residue} outside [0, {self.p}^{self.K})")

    @property
    def modulus(self) -> int:
        return self.p**self.K

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def valuation(self) -> int:
        """p-adic valuation of the residue, capped at K (zero has valuation K)."""
        r, v = self.residue, 0
        if r == 0:
            return self.K
        while r % self.p == 0:
            r //= self.p
            v += 1
        return v

    def _coerce(self, other: "PadicInt | int") -> int:
        if isinstance(other, int):
            return other
        if (other.p, other.K) != (self.p, self.K):
            raise PadicError(
                f"mismatched rings: ({self.p}, {self.K}) vs ({other.p}, {other.K})"
            )
        return other.residue

    def _make(self, r: int) -> "PadicInt":
        return PadicInt(self.p, self.K, r % self.modulus)

    def __add__(self, other: "PadicInt | int") -> "PadicInt":
        return self._make(self.residue + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: "PadicInt | int") -> "PadicInt":
        return self._make(self.residue - self._coerce(other))

    def __rsub__(self, other: int) -> "PadicInt":
        return self._make(other - self.residue)

    def __mul__(self, other: "PadicInt | int") -> "PadicInt":
        return self._make(self.residue * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self) -> "PadicInt":
        return self._make(-self.residue)

    def __pow__(self, e: int) -> "PadicInt":
        if e < 0:
            return self._make(1) / self._make(pow(self.residue, -e, self.modulus))
        return self._make(pow(self.residue, e, self.modulus))

    def __truediv__(self, other: "PadicInt | int") -> "PadicInt":
        b = self._coerce(other)
        if b % self.p == 0:
            raise PadicError(f"division by non-unit {b} mod {self.p}")
        return self._make(self.residue * pow(b, -1, self.modulus))

    def to_json(self) -> dict:
        return {"p": self.p, "K": self.K, "residue": self.residue}


def padic_normalize(p: int, K: int, v: RationalLike) -> PadicInt:
    """Reduce a rational with p-free denominator into Z/p^K."""
    _check_prime(p)
    v = as_rational(v)
    if v.denominator % p == 0:
        raise PadicError(f"{v} is not a p-adic integer for p={p}")
    M = p**K
    return PadicInt(p, K, v.numerator * pow(v.denominator, -1, M) % M)


_OPS = {
    "add": PadicInt.__add__,
    "sub": PadicInt.__sub__,
    "mul": PadicInt.__mul__,
    "div": PadicInt.__truediv__,
}


def padic_arith(a: PadicInt, b: PadicInt, op: str) -> PadicInt:
    try:
        fn = _OPS[op]
    except KeyError:
        raise PadicError(f"unknown op {op!r}; expected one of {sorted(_OPS)}") from None
    return fn(a, b)


@dataclass(frozen=True)
class PadicQ:
    """An admissible p-adic q: an integer in Z/p^K with q = 1 (mod p)."""

    value: PadicInt

    def __post_init__(self) -> None:
        if self.value.residue % self.value.p != 1 % self.value.p:
            raise PadicError(f"q={self.value.residue} is not 1 mod {self.value.p}")

    @classmethod
    def from_t(cls, p: int, K: int = DEFAULT_PRECISION, t: int = 1) -> "PadicQ":
        """The point ``q = 1 + p t``."""
        return cls(PadicInt(p, K, (1 + p * t) % p**K))

    @property
    def p(self) -> int:
        return self.value.p

    @property
    def K(self) -> int:
        return self.value.K

    def as_rational(self) -> Fraction:
        """The integer representative, used as the exact-rational q."""
        return Fraction(self.value.residue)


@dataclass(frozen=True)
class FSpec:
    """Integrand ``f(y) = [y + a]_q^m``."""

    m: int
    a: int = 0

    def __post_init__(self) -> None:
        if self.m < 0 or self.a < 0:
            raise ValueError("FSpec needs m >= 0 and a >= 0")


def partial_sum(p: int, K: int, N: int, f: FSpec, q: PadicQ) -> PadicInt:
    """``(1+q)/(1+q^(p^N)) * sum_{x<p^N} [x+a]_q^m (-q)^x`` modulo p^K.

    ``[x]_q`` is accumulated as ``1 + q + ... + q^(x-1)``, never as a quotient
    by the non-unit ``1 - q``.
    """
    if (q.p, q.K) != (p, K):
        raise PadicError("q lives in a different ring")
    if N < 1:
        raise ValueError("N must be >= 1")
    P = p**N
    if P > MAX_TERMS:
        raise ValueError(f"p^N = {P} exceeds the iteration budget {MAX_TERMS}")
    M = p**K
    qv = q.value.residue
    # [a]_q and q^a
    bracket, qa = 0, 1
    for _ in range(f.a):
        bracket = (bracket + qa) % M
        qa = qa * qv % M
    sign_q = 1  # (-q)^x
    neg_q = (-qv) % M
    total = 0
    m = f.m
    for _ in range(P):
        total = (total + pow(bracket, m, M) * sign_q) % M
        bracket = (bracket + qa) % M
        qa = qa * qv % M
        sign_q = sign_q * neg_q % M
    denom = (1 + pow(qv, P, M)) % M
    return PadicInt(p, K, total * (1 + qv) * pow(denom, -1, M) % M)


def integral_target(
    f: FSpec, q: PadicQ, cache: QEulerCache | None = None
) -> PadicInt:
    """The exact ``E_{m,q}(a)`` reduced into Z/p^K."""
    exact = q_euler_poly(f.m, f.a, 1, q.as_rational(), cache)
    return padic_normalize(q.p, q.K, exact)


def convergence_profile(
    p: int,
    K: int,
    f: FSpec,
    q: PadicQ,
    N_max: int,
    cache: QEulerCache | None = None,
) -> list[tuple[int, int]]:
    """``[(N, v_p(S_N - E_{m,q}(a)))]`` for ``N = 1..N_max``, valuations capped at K."""
    if N_max < 2:
        raise ValueError("N_max must be >= 2")
    target = integral_target(f, q, cache)
    return [
        (N, (partial_sum(p, K, N, f, q) - target).valuation())
        for N in range(1, N_max + 1)
    ]


def truncated_shift_defect(
    p: int, K: int, N: int, f: FSpec, n: int, q: PadicQ
) -> PadicInt:
    """``q^n S_N(f_n) + (-1)^(n-1) S_N(f) - [2]_q sum_{l<n} (-1)^(n-1-l) q^l f(l)``.

    ``f_n`` is ``f`` shifted by ``n``.  The exact identity makes this vanish in
    the limit; at level N it should be divisible by a growing power of p.
    """
    qv = q.value
    shifted = FSpec(f.m, f.a + n)
    lhs = qv**n * partial_sum(p, K, N, shifted, q) + (-1) ** (n - 1) * partial_sum(
        p, K, N, f, q
    )
    rhs = PadicInt(p, K, 0)
    for l in range(n):
        bracket = sum((qv**i for i in range(l + f.a)), PadicInt(p, K, 0))
        rhs = rhs + (-1) ** (n - 1 - l) * qv**l * bracket**f.m
    return lhs - (1 + qv) * rhs
