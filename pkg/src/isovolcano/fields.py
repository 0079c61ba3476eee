"""Small finite fields F_{p^k} with a deterministic modulus.

Fields are capped so that full-field scans stay cheap. Prime fields use
plain ints; extensions use coefficient tuples (low degree first) reduced by
the lexicographically smallest monic irreducible modulus.
"""

from __future__ import annotations

from itertools import product

from .arith import require_prime
from .errors import CapExceeded

FIELD_CAP = 2 * 10**5


def _pf_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pf_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pf_trim(out)


def _pf_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    _pf_trim(a)
    while len(a) - 1 >= df:
        shift = len(a) - 1 - df
        c = a[-1] * inv_lead % p
        for i in range(df + 1):
            a[shift + i] = (a[shift + i] - c * f[i]) % p
        _pf_trim(a)
    return a


def _pf_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = a[:], b[:]
    while _pf_trim(b):
        a, b = b, _pf_mod(a, b, p)
    return a


def _pf_powmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pf_mod(base, f, p)
    while e:
        if e & 1:
            result = _pf_mod(_pf_mul(result, base, p), f, p)
        base = _pf_mod(_pf_mul(base, base, p), f, p)
        e >>= 1
    return result


def _pf_irreducible(f: list[int], p: int) -> bool:
    """f monic of degree k: irreducible iff gcd(x^(p^i) - x, f) = 1 for i <= k/2
    and x^(p^k) = x mod f."""
    k = len(f) - 1
    xq = [0, 1]
    for i in range(1, k + 1):
        xq = _pf_powmod(xq, p, f, p)
        if i <= k // 2:
            diff = xq + [0] * max(0, 2 - len(xq))
            diff = _pf_trim([(c - (1 if n == 1 else 0)) % p for n, c in enumerate(diff)])
            if len(_pf_gcd(f, diff, p)) - 1 > 0:
                return False
    want = _pf_mod([0, 1], f, p)
    return xq == want


class FieldCtx:
    """Arithmetic context for F_{p^k}; elements are ints (k=1) or tuples."""

    def __init__(self, p: int, k: int = 1, cap: int = FIELD_CAP):
        require_prime(p)
        if k < 1:
            raise ValueError("k must be >= 1")
        if p**k > cap:
            raise CapExceeded(f"field size {p}^{k} exceeds cap {cap}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = None if k == 1 else self._find_modulus()
        self.zero = 0 if k == 1 else (0,) * k
        self.one = 1 if k == 1 else (1,) + (0,) * (k - 1)

    def _find_modulus(self) -> list[int]:
        p, k = self.p, self.k
        # scan monic polynomials by ascending coefficient vector
        for rest in product(range(p), repeat=k):
            f = list(reversed(rest)) + [1]
            if f[0] == 0:
                continue
            if _pf_irreducible(f, p):
                return f
        raise AssertionError("no irreducible polynomial found")

    def from_int(self, n: int):
        n %= self.p
        if self.k == 1:
            return n
        return (n,) + (0,) * (self.k - 1)

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        p = self.p
        if self.k == 1:
            return a * b % p
        out = [0] * (2 * self.k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        f = self.modulus
        for i in range(len(out) - 1, self.k - 1, -1):
            c = out[i] % p
            if c:
                for t in range(self.k):
                    out[i - self.k + t] -= c * f[t]
            out[i] = 0
        return tuple(x % p for x in out[: self.k])

    def pow(self, a, e: int):
        if a == self.zero:
            return self.zero if e else self.one
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def elements(self):
        if self.k == 1:
            yield from range(self.p)
        else:
            for rest in product(range(self.p), repeat=self.k):
                yield rest

    def eval_poly(self, coeffs, x):
        """Horner evaluation; coeffs[i] is the coefficient of Y^i."""
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc
