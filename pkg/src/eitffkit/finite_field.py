"""Arithmetic in GF(2^k) with a canonical modulus and generator.

Elements are ints whose bits are the polynomial coefficients (bit t is the
coefficient of x^t).  The modulus is the smallest degree-k irreducible with
nonzero constant term, and the generator is the smallest element of full
multiplicative order, so every table below is reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import OutOfRange, ZeroElement

MAX_DEGREE = 16


def _degree(a: int) -> int:
    return a.bit_length() - 1


def poly_mod(a: int, m: int) -> int:
    """Remainder of a modulo m over GF(2)."""
    dm = _degree(m)
    while a and _degree(a) >= dm:
        a ^= m << (_degree(a) - dm)
    return a


def clmul(a: int, b: int) -> int:
    """Carryless product of two GF(2) polynomials."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def is_irreducible(f: int) -> bool:
    k = _degree(f)
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for g in range(1 << d, 1 << (d + 1)):
            if poly_mod(f, g) == 0:
                return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldSpec:
    k: int
    modulus: int
    generator: int
    exp_table: tuple = field(repr=False)
    log_table: tuple = field(repr=False)  # log_table[0] is unused

    @property
    def q(self) -> int:
        return 1 << self.k

    def elements(self) -> range:
        return range(self.q)

    def to_json(self) -> dict:
        return {"k": self.k, "modulus_bits": self.modulus, "generator_bits": self.generator}


def _pow(a: int, e: int, modulus: int) -> int:
    result = 1
    while e:
        if e & 1:
            result = poly_mod(clmul(result, a), modulus)
        a = poly_mod(clmul(a, a), modulus)
        e >>= 1
    return result


def field_build(k: int) -> FieldSpec:
    if not isinstance(k, int) or not 1 <= k <= MAX_DEGREE:
        raise OutOfRange(f"extension degree k={k!r} outside [1, {MAX_DEGREE}]")
    # constant term 1 excludes f = x, which matters only for k = 1
    modulus = next(f for f in range((1 << k) + 1, 1 << (k + 1), 2) if is_irreducible(f))
    order = (1 << k) - 1
    factors = _prime_factors(order)
    generator = next(
        g for g in range(1, 1 << k) if all(_pow(g, order // p, modulus) != 1 for p in factors)
    )
    exp = [1] * order
    for t in range(1, order):
        exp[t] = poly_mod(clmul(exp[t - 1], generator), modulus)
    log = [-1] * (1 << k)
    for t, x in enumerate(exp):
        log[x] = t
    return FieldSpec(k, modulus, generator, tuple(exp), tuple(log))


def add(a: int, b: int) -> int:
    return a ^ b


def mul(spec: FieldSpec, a: int, b: int) -> int:
    return poly_mod(clmul(a, b), spec.modulus)


def power(spec: FieldSpec, t: int) -> int:
    """generator ** t, for any integer t."""
    return spec.exp_table[t % (spec.q - 1)]


def dlog(spec: FieldSpec, x: int) -> int:
    if x == 0:
        raise ZeroElement("discrete log of zero is undefined")
    return spec.log_table[x]


def symplectic(spec: FieldSpec, u: tuple, v: tuple) -> int:
    """The alternating form u1*v2 + u2*v1 on GF(q)^2."""
    return mul(spec, u[0], v[1]) ^ mul(spec, u[1], v[0])
