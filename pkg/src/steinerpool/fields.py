"""Small finite fields GF(p^n) as lookup tables.

Elements are the integers 0..q-1; element ``x`` stands for the polynomial
whose coefficient vector is the base-p digits of ``x`` (constant term first).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .cyclic import is_prime
from .errors import NotPrime, PreconditionViolated


def _digits(x: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        x, d = divmod(x, p)
        out.append(d)
    return out


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial mod (coefficients low to high)."""
    a = a[:]
    n = len(mod) - 1
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i] % p
        if c:
            for j in range(n + 1):
                a[i - n + j] = (a[i - n + j] - c * mod[j]) % p
    return [c % p for c in a[:n]] + [0] * max(0, n - len(a))


def _is_irreducible(mod: list[int], p: int) -> bool:
    n = len(mod) - 1
    for deg in range(1, n // 2 + 1):
        for tail in product(range(p), repeat=deg):
            divisor = list(tail) + [1]
            if not any(_poly_mod(mod, divisor, p)):
                return False
    return True


@dataclass(frozen=True)
class FiniteField:
    p: int
    n: int
    modulus: tuple[int, ...]
    _add: tuple = field(repr=False, compare=False, default=())
    _mul: tuple = field(repr=False, compare=False, default=())

    @property
    def q(self) -> int:
        return self.p**self.n

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._add[a].index(0)

    def elements(self) -> range:
        return range(self.q)


def field_make(p: int, n: int = 1) -> FiniteField:
    """GF(p^n) with the least monic irreducible modulus of degree n.

    Candidates are ordered by the base-p value of their non-leading
    coefficients, constant term least significant.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not 1 <= n <= 4:
        raise PreconditionViolated(f"degree {n} outside 1..4")
    q = p**n
    for code in range(p**n):
        mod = _digits(code, p, n) + [1]
        if n == 1 or _is_irreducible(mod, p):
            break
    else:  # pragma: no cover - irreducibles exist in every degree
        raise ArithmeticError("no irreducible polynomial found")
    vecs = [_digits(x, p, n) for x in range(q)]

    def encode(coeffs: list[int]) -> int:
        return sum(c * p**i for i, c in enumerate(coeffs))

    add = tuple(
        tuple(encode([(a + b) % p for a, b in zip(vecs[x], vecs[y])]) for y in range(q))
        for x in range(q)
    )
    mul_rows = []
    for x in range(q):
        row = []
        for y in range(q):
            prod = [0] * (2 * n - 1)
            for i, a in enumerate(vecs[x]):
                if a:
                    for j, b in enumerate(vecs[y]):
                        prod[i + j] += a * b
            row.append(encode(_poly_mod(prod, mod, p)))
        mul_rows.append(tuple(row))
    F = FiniteField(p, n, tuple(mod), add, tuple(mul_rows))
    _check_field(F)
    return F


def _check_field(F: FiniteField) -> None:
    # some element must generate the whole multiplicative group
    q = F.q
    for g in range(1, q):
        x, order = g, 1
        while x != 1:
            x = F.mul(x, g)
            order += 1
        if order == q - 1:
            return
    if q > 2:
        raise ArithmeticError(f"GF({q}) tables have no generator")


def prime_power(q: int) -> tuple[int, int] | None:
    """(p, n) with q = p^n, or None when q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            n = 0
            while q % p == 0:
                q //= p
                n += 1
            return (p, n) if q == 1 else None
    return None
