"""Exact arithmetic in the cyclotomic fields Q(zeta_n).

An element is stored as a vector of rationals over the power basis
1, z, ..., z^(phi(n)-1) of Q[z]/(Phi_n(z)), where Phi_n is the n-th
cyclotomic polynomial and n is called the conductor.  Conductors are
never reduced behind the caller's back; equality across conductors is
decided after embedding both operands into Q(zeta_lcm).

No floating point appears anywhere: coefficients are `fractions.Fraction`
and every operation is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of n, ascending.

    >>> prime_factors(60)
    (2, 3, 5)
    """
    if n < 1:
        raise ValueError(f"positive integer required, got {n}")
    out = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return tuple(out)


def is_prime(n: int) -> bool:
    return n > 1 and prime_factors(n) == (n,)


def prime_power_split(n: int) -> tuple[int, int] | None:
    """(r, k) with n = r**k if n > 1 is a prime power, else None."""
    ps = prime_factors(n)
    if len(ps) != 1:
        return None
    r = ps[0]
    k = 0
    while n % r == 0:
        n //= r
        k += 1
    return (r, k) if n == 1 else None


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    phi = n
    for p in prime_factors(n):
        phi = phi // p * (p - 1)
    return phi


@lru_cache(maxsize=None)
def moebius(n: int) -> int:
    m = n
    count = 0
    for p in prime_factors(n):
        if m % (p * p) == 0:
            return 0
        m //= p
        count += 1
    return -1 if count % 2 else 1


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return tuple(out)


def _poly_div_exact(num: tuple[int, ...], den: tuple[int, ...]) -> tuple[int, ...]:
    # Exact division by a monic divisor; remainder is checked to be zero.
    num_l = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num_l[i]
        if c:
            quot[i - dd] = c
            for j, cd in enumerate(den):
                num_l[i - dd + j] -= c * cd
    if any(num_l):
        raise ArithmeticError("inexact polynomial division")
    return tuple(quot)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending degree; monic of degree phi(n).

    Computed by dividing x^n - 1 by the product of Phi_d over proper
    divisors d of n.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError(f"positive integer required, got {n}")
    num = tuple([-1] + [0] * (n - 1) + [1])  # x^n - 1
    den = (1,)
    for d in divisors(n)[:-1]:
        den = _poly_mul(den, cyclotomic_polynomial(d))
    return _poly_div_exact(num, den)


@lru_cache(maxsize=None)
def trace_of_root_power(n: int, e: int) -> int:
    """Tr over Q of zeta_n^e, taken from Q(zeta_n).

    Equals mu(m) * phi(n) / phi(m) where m = n / gcd(n, e); this closed
    form is cross-checked against the plain Galois-orbit sum by the
    brute-force oracle.
    """
    m = n // gcd(n, e % n)
    return moebius(m) * euler_phi(n) // euler_phi(m)


def _reduce(n: int, dense: list[Fraction]) -> tuple[Fraction, ...]:
    # Reduce a dense coefficient vector (any length) mod Phi_n.
    phi_poly = cyclotomic_polynomial(n)
    deg = len(phi_poly) - 1
    if len(dense) < deg:
        dense = dense + [Fraction(0)] * (deg - len(dense))
    for i in range(len(dense) - 1, deg - 1, -1):
        c = dense[i]
        if c:
            for j, pc in enumerate(phi_poly):
                dense[i - deg + j] -= c * pc
    return tuple(dense[:deg])


class CyclotomicNumber:
    """An element of Q(zeta_n) in the power basis of Q[z]/(Phi_n(z)).

    Instances are immutable; all operations return new values, so
    sharing across threads is safe.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        deg = euler_phi(conductor)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != deg:
            raise ValueError(
                f"conductor {conductor} needs {deg} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> CyclotomicNumber:
        """The root of unity zeta_n^k.

        >>> CyclotomicNumber.zeta(4) * CyclotomicNumber.zeta(4) == -1
        True
        """
        k %= n
        dense = [Fraction(0)] * (k + 1)
        dense[k] = Fraction(1)
        return cls(n, _reduce(n, dense))

    @classmethod
    def from_rational(cls, x, conductor: int = 1) -> CyclotomicNumber:
        dense = [Fraction(x)]
        return cls(conductor, _reduce(conductor, dense))

    @classmethod
    def from_terms(cls, n: int, terms) -> CyclotomicNumber:
        """Sum of c * zeta_n^e over (c, e) pairs."""
        dense = [Fraction(0)] * n
        for c, e in terms:
            dense[e % n] += Fraction(c)
        return cls(n, _reduce(n, dense))

    # -- basic queries -----------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_integer(self) -> bool:
        return self.is_rational() and self.coeffs[0].denominator == 1

    def exponent_terms(self, level: int | None = None) -> list[tuple[int, Fraction]]:
        """Nonzero terms as (exponent, coefficient) pairs for zeta_level.

        `level` must be a multiple of the conductor (default: the
        conductor itself).  No reduction mod Phi_level is performed; the
        terms simply rewrite the stored basis monomials.
        """
        n = self.conductor
        if level is None:
            level = n
        if level % n:
            raise ValueError(f"level {level} is not a multiple of conductor {n}")
        s = level // n
        return [(i * s, c) for i, c in enumerate(self.coeffs) if c]

    # -- arithmetic --------------------------------------------------

    def embed(self, n: int) -> CyclotomicNumber:
        """Image in Q(zeta_n) under zeta_m -> zeta_n^(n/m); m must divide n."""
        if n == self.conductor:
            return self
        if n % self.conductor:
            raise ValueError(f"conductor {self.conductor} does not divide {n}")
        dense = [Fraction(0)] * n
        for e, c in self.exponent_terms(n):
            dense[e] += c
        return CyclotomicNumber(n, _reduce(n, dense))

    def _common(self, other) -> tuple[CyclotomicNumber, CyclotomicNumber]:
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.from_rational(other)
        n = lcm(self.conductor, other.conductor)
        return self.embed(n), other.embed(n)

    def __add__(self, other) -> CyclotomicNumber:
        if isinstance(other, (int, Fraction)):
            coeffs = list(self.coeffs)
            coeffs[0] += Fraction(other)
            return CyclotomicNumber(self.conductor, coeffs)
        a, b = self._common(other)
        return CyclotomicNumber(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> CyclotomicNumber:
        return CyclotomicNumber(self.conductor, [-c for c in self.coeffs])

    def __sub__(self, other) -> CyclotomicNumber:
        return self + (-other if isinstance(other, CyclotomicNumber) else -Fraction(other))

    def __rsub__(self, other) -> CyclotomicNumber:
        return (-self) + other

    def __mul__(self, other) -> CyclotomicNumber:
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CyclotomicNumber(self.conductor, [c * f for c in self.coeffs])
        a, b = self._common(other)
        n = a.conductor
        dense = [Fraction(0)] * (2 * len(a.coeffs))
        for i, ca in enumerate(a.coeffs):
            if ca:
                for j, cb in enumerate(b.coeffs):
                    if cb:
                        dense[i + j] += ca * cb
        return CyclotomicNumber(n, _reduce(n, dense))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CyclotomicNumber:
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = CyclotomicNumber.from_rational(1, self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    __hash__ = None  # cross-conductor equality makes hashing a trap

    # -- Galois ------------------------------------------------------

    def galois(self, k: int) -> CyclotomicNumber:
        """Apply zeta -> zeta^k; k must be invertible mod the conductor."""
        n = self.conductor
        k %= n
        if gcd(k, n) != 1:
            raise ValueError(f"{k} is not coprime to conductor {n}")
        dense = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            if c:
                dense[(i * k) % n] += c
        return CyclotomicNumber(n, _reduce(n, dense))

    def conjugate(self) -> CyclotomicNumber:
        return self.galois(-1)

    def trace_to_Q(self) -> Fraction:
        """Absolute trace: the sum of all Galois conjugates over Q."""
        n = self.conductor
        return sum(
            (c * trace_of_root_power(n, i) for i, c in enumerate(self.coeffs) if c),
            Fraction(0),
        )

    # -- presentation ------------------------------------------------

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyc({self.coeffs[0]})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "z" if i == 1 else f"z^{i}"
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return f"Cyc[{self.conductor}]({' + '.join(terms)})"


def trace_to_Q(a: CyclotomicNumber) -> Fraction:
    return a.trace_to_Q()


# -- serialization ---------------------------------------------------
#
# The wire form shared with the table format: either a bare integer or
#   {"conductor": n, "terms": [[num, den, exp], ...]}
# meaning the sum of (num/den) * zeta_n^exp.

def value_to_obj(a: CyclotomicNumber):
    if a.is_integer():
        return int(a.coeffs[0])
    return {
        "conductor": a.conductor,
        "terms": [
            [c.numerator, c.denominator, e]
            for e, c in a.exponent_terms()
        ],
    }


def value_from_obj(obj) -> CyclotomicNumber:
    if isinstance(obj, bool):
        raise ValueError(f"not a cyclotomic value: {obj!r}")
    if isinstance(obj, int):
        return CyclotomicNumber.from_rational(obj)
    if isinstance(obj, dict):
        try:
            n = obj["conductor"]
            terms = obj["terms"]
        except KeyError as exc:
            raise ValueError(f"cyclotomic value missing key {exc}") from None
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"bad conductor {n!r}")
        parsed = []
        for term in terms:
            if len(term) != 3:
                raise ValueError(f"bad term {term!r}")
            num, den, exp = term
            if not all(isinstance(v, int) for v in (num, den, exp)) or den == 0:
                raise ValueError(f"bad term {term!r}")
            parsed.append((Fraction(num, den), exp))
        return CyclotomicNumber.from_terms(n, parsed)
    raise ValueError(f"not a cyclotomic value: {obj!r}")
