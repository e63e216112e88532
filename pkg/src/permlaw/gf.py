"""Small finite fields GF(p^f) as polynomials over GF(p).

Elements are encoded as integers in [0, q): the base-p digits of the
code are the polynomial coefficients, constant term first.  The modulus
is the lexicographically least monic irreducible of degree f, "least"
meaning smallest code of its non-leading coefficient vector; the choice
is deterministic and documented here rather than following any table.
"""

from __future__ import annotations

from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """q = p^f with p prime, else ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                raise ValueError(f"{q} is not a prime power")
            f = 0
            m = q
            while m % p == 0:
                m //= p
                f += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, f
    raise ValueError(f"{q} is not a prime power")


class GF:
    """Arithmetic in GF(p^f) on integer-coded elements."""

    def __init__(self, q: int):
        p, f = factor_prime_power(q)
        self.q = q
        self.p = p
        self.f = f
        self.modulus = _least_irreducible(p, f)  # coefficient tuple, degree f, monic

    # -- coding -------------------------------------------------------------

    def coeffs(self, code: int) -> list[int]:
        out = []
        for _ in range(self.f):
            out.append(code % self.p)
            code //= self.p
        return out

    def code(self, coeffs: list[int]) -> int:
        out = 0
        for c in reversed(coeffs[: self.f]):
            out = out * self.p + (c % self.p)
        return out

    # -- arithmetic -----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.code([(x + y) % self.p for x, y in zip(ca, cb)])

    def neg(self, a: int) -> int:
        return self.code([(-x) % self.p for x in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.f - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        # reduce modulo the defining polynomial
        for i in range(len(prod) - 1, self.f - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(self.f):
                    prod[i - self.f + j] = (prod[i - self.f + j] - c * self.modulus[j]) % self.p
        return self.code(prod[: self.f])

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.pow(a, self.q - 2)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return self.code([1] + [0] * (self.f - 1))

    def elements(self) -> range:
        return range(self.q)

    def multiplicative_generator(self) -> int:
        """Least element code generating the multiplicative group."""
        if self.q == 2:
            return 1
        factors = _prime_factors(self.q - 1)
        for cand in range(1, self.q):
            if all(self.pow(cand, (self.q - 1) // r) != self.one for r in factors):
                return cand
        raise AssertionError("no multiplicative generator found")


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


def _least_irreducible(p: int, f: int) -> tuple[int, ...]:
    """Coefficients (constant first) of the least monic irreducible of
    degree f over GF(p); for f == 1 the polynomial is x."""
    if f == 1:
        return (0,)
    lower: list[tuple[int, ...]] = []
    for deg in range(1, f // 2 + 1):
        for code in range(p ** deg):
            lower.append(_decode_poly(code, deg, p))
    for code in range(p ** f):
        cand = _decode_poly(code, f, p)
        if all(not _divides(d, cand, p) for d in lower):
            return cand[:-1]  # drop the leading 1; callers know it is monic
    raise AssertionError("no irreducible polynomial found")


def _decode_poly(code: int, deg: int, p: int) -> tuple[int, ...]:
    # monic of degree `deg`: low coefficients from the code, leading 1
    out = []
    for _ in range(deg):
        out.append(code % p)
        code //= p
    out.append(1)
    return tuple(out)


def _divides(d: tuple[int, ...], a: tuple[int, ...], p: int) -> bool:
    """Polynomial divisibility over GF(p), both monic, deg d <= deg a."""
    rem = list(a)
    dd = len(d) - 1
    while len(rem) - 1 >= dd:
        lead = rem[-1]
        if lead:
            shift = len(rem) - 1 - dd
            for i, c in enumerate(d):
                rem[shift + i] = (rem[shift + i] - lead * c) % p
        rem.pop()
    return all(c == 0 for c in rem)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
