"""Exact scalars: rationals, roots of unity, and integer cyclotomic sums.

Everything in the library reduces to Fraction arithmetic.  A root of unity
is stored as its angle theta in Q/Z (the number is e^{2 pi i theta}); sums
of roots of unity live in Z[zeta_N] as coefficient vectors reduced mod the
N-th cyclotomic polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class UnitPhase:
    """e^{2 pi i theta} with theta an exact rational mod 1."""

    __slots__ = ("theta",)

    def __init__(self, theta=0):
        object.__setattr__(self, "theta", _frac(theta) % 1)

    def __setattr__(self, *a):
        raise AttributeError("UnitPhase is immutable")

    def __mul__(self, other: "UnitPhase") -> "UnitPhase":
        return UnitPhase(self.theta + other.theta)

    def __truediv__(self, other: "UnitPhase") -> "UnitPhase":
        return UnitPhase(self.theta - other.theta)

    def __pow__(self, n: int) -> "UnitPhase":
        return UnitPhase(self.theta * n)

    def inv(self) -> "UnitPhase":
        return UnitPhase(-self.theta)

    def conj(self) -> "UnitPhase":
        return UnitPhase(-self.theta)

    def sqrt(self) -> "UnitPhase":
        # principal branch: theta already lies in [0, 1)
        return UnitPhase(self.theta / 2)

    @property
    def is_one(self) -> bool:
        return self.theta == 0

    def to_fraction(self):
        """The phase as a rational number, when it is one (+1 or -1)."""
        if self.theta == 0:
            return Fraction(1)
        if self.theta == Fraction(1, 2):
            return Fraction(-1)
        return None

    def __eq__(self, other):
        return isinstance(other, UnitPhase) and self.theta == other.theta

    def __hash__(self):
        return hash(("UnitPhase", self.theta))

    def __repr__(self):
        return f"phase({self.theta})"


ONE = UnitPhase(0)
MINUS_ONE = UnitPhase(Fraction(1, 2))


def phase(theta) -> UnitPhase:
    return UnitPhase(_frac(theta))


def phase_mul(*phases: UnitPhase) -> UnitPhase:
    t = Fraction(0)
    for p in phases:
        t += p.theta
    return UnitPhase(t)


def phase_sqrt(p: UnitPhase) -> UnitPhase:
    return p.sqrt()


class Scaled:
    """A nonnegative rational magnitude times a root of unity.

    Closed under multiplication, which is all the structure constants need;
    sums only ever happen inside CyclotomicSum.
    """

    __slots__ = ("mag", "ph")

    def __init__(self, mag, ph: UnitPhase = ONE):
        mag = _frac(mag)
        th = ph.theta
        if mag < 0:
            mag, th = -mag, th + Fraction(1, 2)
        if mag == 0:
            th = Fraction(0)
        object.__setattr__(self, "mag", mag)
        object.__setattr__(self, "ph", UnitPhase(th))

    def __setattr__(self, *a):
        raise AttributeError("Scaled is immutable")

    @classmethod
    def one(cls) -> "Scaled":
        return cls(1)

    @classmethod
    def zero(cls) -> "Scaled":
        return cls(0)

    @classmethod
    def from_phase(cls, p: UnitPhase) -> "Scaled":
        return cls(1, p)

    def __mul__(self, other):
        if isinstance(other, Scaled):
            return Scaled(self.mag * other.mag, self.ph * other.ph)
        if isinstance(other, UnitPhase):
            return Scaled(self.mag, self.ph * other)
        return Scaled(self.mag * _frac(other), self.ph)

    __rmul__ = __mul__

    def __neg__(self):
        return Scaled(self.mag, self.ph * MINUS_ONE)

    def inv(self) -> "Scaled":
        if self.mag == 0:
            raise ZeroDivisionError("inverting zero Scaled")
        return Scaled(1 / self.mag, self.ph.inv())

    @property
    def is_zero(self) -> bool:
        return self.mag == 0

    def to_fraction(self):
        """Exact rational value if the phase is +-1, else None."""
        if self.mag == 0:
            return Fraction(0)
        s = self.ph.to_fraction()
        return None if s is None else s * self.mag

    def __eq__(self, other):
        if not isinstance(other, Scaled):
            other = Scaled(other)
        return self.mag == other.mag and self.ph == other.ph

    def __hash__(self):
        return hash(("Scaled", self.mag, self.ph))

    def __repr__(self):
        if self.ph.is_one:
            return f"Scaled({self.mag})"
        return f"Scaled({self.mag}, {self.ph!r})"


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    # (x^n - 1) / prod of Phi_d over proper divisors d
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_div_exact(num, cyclotomic_poly(d))
    return tuple(num)


def _poly_div_exact(num: list[int] | tuple[int, ...], den: tuple[int, ...]) -> list[int]:
    # exact division of integer polynomials, low-first coefficient lists
    num = list(num)
    dn = len(den) - 1
    while den[dn] == 0:
        dn -= 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1 - dn, -1, -1):
        c = num[i + dn]
        if c == 0:
            continue
        q, r = divmod(c, den[dn])
        if r:
            raise ArithmeticError("non-exact polynomial division")
        out[i] = q
        for k in range(dn + 1):
            num[i + k] -= q * den[k]
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


class CyclotomicSum:
    """An element of Q[zeta_N]: sum of rational multiples of N-th roots of unity.

    Stored reduced mod Phi_N so equality and rationality tests are exact.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Iterable[Fraction] | None = None):
        if n < 1:
            raise ValueError("order must be positive")
        vec = [Fraction(0)] * n
        if coeffs is not None:
            for i, c in enumerate(coeffs):
                vec[i % n] += _frac(c)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", tuple(_reduce_mod_cyclotomic(vec, n)))

    def __setattr__(self, *a):
        raise AttributeError("CyclotomicSum is immutable")

    @classmethod
    def zero(cls, n: int) -> "CyclotomicSum":
        return cls(n)

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[tuple[Fraction, UnitPhase]]) -> "CyclotomicSum":
        """Sum of mag * e^{2 pi i theta}; every theta must have denominator dividing n."""
        vec = [Fraction(0)] * n
        for mag, ph in terms:
            k = ph.theta * n
            if k.denominator != 1:
                raise ValueError(f"phase {ph} is not an order-{n} root of unity")
            vec[int(k) % n] += _frac(mag)
        return cls(n, vec)

    def __add__(self, other: "CyclotomicSum") -> "CyclotomicSum":
        if self.n != other.n:
            raise ValueError("mismatched cyclotomic orders")
        return CyclotomicSum(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "CyclotomicSum") -> "CyclotomicSum":
        if self.n != other.n:
            raise ValueError("mismatched cyclotomic orders")
        return CyclotomicSum(self.n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if isinstance(other, CyclotomicSum):
            if self.n != other.n:
                raise ValueError("mismatched cyclotomic orders")
            vec = [Fraction(0)] * self.n
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for k, b in enumerate(other.coeffs):
                    if b != 0:
                        vec[(i + k) % self.n] += a * b
            return CyclotomicSum(self.n, vec)
        return CyclotomicSum(self.n, [c * _frac(other) for c in self.coeffs])

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_fraction(self):
        """Exact rational value, or None if the sum is irrational."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, CyclotomicSum):
            return self.n == other.n and self.coeffs == other.coeffs
        r = self.to_fraction()
        return r is not None and r == other

    def __hash__(self):
        return hash(("CyclotomicSum", self.n, self.coeffs))

    def __repr__(self):
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return f"CyclotomicSum({self.n}: {' + '.join(terms) or '0'})"


def _reduce_mod_cyclotomic(vec: list[Fraction], n: int) -> list[Fraction]:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    out = list(vec)
    for i in range(len(out) - 1, deg - 1, -1):
        c = out[i]
        if c == 0:
            continue
        # phi is monic
        for k in range(deg + 1):
            out[i - deg + k] -= c * phi[k]
    return out[:deg]


def cyclo_trace_reduce(n: int, terms: Iterable[tuple[Fraction, UnitPhase]]):
    """Reduce a finite sum of scaled roots of unity; rational value or the sum."""
    s = CyclotomicSum.from_terms(n, terms)
    r = s.to_fraction()
    return r if r is not None else s
