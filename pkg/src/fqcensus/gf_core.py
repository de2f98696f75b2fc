"""Finite fields F_q, q = p^e, with elements stored as integer codes.

An element code ``c`` in ``[0, q)`` encodes the coefficient vector
``(c_0, ..., c_{e-1})`` in base ``p`` (``c_0`` is the least significant
digit) and stands for ``sum(c_i * alpha**i)`` where ``alpha`` is a root of
the field modulus.  All arithmetic is done through precomputed tables, so a
``FieldCtx`` is immutable once built and can be shared freely between
processes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

MAX_FIELD_SIZE = 256


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, e)`` with ``q == p**e``; raise if not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


# -- polynomials over the prime field, used only to build extension fields --

def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    r = list(a)
    _fp_trim(r)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    while len(r) - 1 >= db:
        c = r[-1] * inv_lead % p
        shift = len(r) - 1 - db
        for i, bi in enumerate(b):
            r[shift + i] = (r[shift + i] - c * bi) % p
        _fp_trim(r)
    return r


def _fp_is_irreducible(f: Sequence[int], p: int) -> bool:
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _fp_mod(f, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``e`` over F_p.

    Candidates are ordered by their coefficient tuple ``(c_0, ..., c_{e-1})``
    compared lexicographically, low degree first.
    """
    if e == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=e):
        f = low + (1,)
        if low[0] != 0 and _fp_is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _encode(coeffs: Sequence[int], p: int) -> int:
    code = 0
    for c in reversed(coeffs):
        code = code * p + c
    return code


def _decode(code: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        code, c = divmod(code, p)
        out.append(c)
    return out


@dataclass(frozen=True)
class FieldCtx:
    p: int
    e: int
    modulus: tuple[int, ...]
    add_table: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    sub_table: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    mul_table: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    neg_table: tuple[int, ...] = field(repr=False, compare=False)
    inv_table: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p**self.e

    def __reduce__(self):
        # rebuild from (p, e, modulus) in worker processes rather than shipping tables
        return (make_field, (self.p, self.e, self.modulus))

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.sub_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.q)
        return self.inv_table[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        r = 1
        while k:
            if k & 1:
                r = self.mul_table[r][a]
            a = self.mul_table[a][a]
            k >>= 1
        return r

    def elements(self) -> Iterator["FieldElement"]:
        return enumerate_elements(self)

    def __call__(self, code: int) -> "FieldElement":
        return FieldElement(code % self.q if code < 0 else code, self)

    def describe(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}


def make_field(
    p: int,
    e: int = 1,
    modulus: Sequence[int] | None = None,
    max_q: int = MAX_FIELD_SIZE,
) -> FieldCtx:
    """Build F_{p^e}.

    The modulus defaults to the smallest monic irreducible of degree ``e``;
    an explicit ``modulus`` (coefficients low-to-high) can be passed for
    cross-checking and is validated.
    """
    return _build_field(p, e, None if modulus is None else tuple(modulus), max_q)


@lru_cache(maxsize=None)
def _build_field(p: int, e: int, modulus: tuple[int, ...] | None, max_q: int) -> FieldCtx:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"characteristic {p!r} is not prime")
    if e < 1:
        raise ValueError(f"extension degree must be >= 1, got {e}")
    q = p**e
    if q > max_q:
        raise ValueError(f"field size {q} exceeds bound {max_q}")
    if modulus is None:
        modulus = smallest_irreducible(p, e)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus {modulus} is not monic of degree {e}")
        if e == 1:
            modulus = (0, 1)
        elif not _fp_is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")

    if e == 1:
        add = tuple(tuple((a + b) % p for b in range(p)) for a in range(p))
        sub = tuple(tuple((a - b) % p for b in range(p)) for a in range(p))
        mul = tuple(tuple(a * b % p for b in range(p)) for a in range(p))
    else:
        vecs = [_decode(c, p, e) for c in range(q)]
        add = tuple(
            tuple(_encode([(x + y) % p for x, y in zip(va, vb)], p) for vb in vecs)
            for va in vecs
        )
        sub = tuple(
            tuple(_encode([(x - y) % p for x, y in zip(va, vb)], p) for vb in vecs)
            for va in vecs
        )
        rows = []
        for va in vecs:
            row = []
            for vb in vecs:
                prod = [0] * (2 * e - 1)
                for i, x in enumerate(va):
                    if x:
                        for j, y in enumerate(vb):
                            prod[i + j] = (prod[i + j] + x * y) % p
                red = _fp_mod(prod, modulus, p)
                row.append(_encode(red + [0] * (e - len(red)), p))
            rows.append(tuple(row))
        mul = tuple(rows)
    neg = tuple(sub[0][a] for a in range(q))
    inv = [0] * q
    for a in range(1, q):
        inv[a] = next(b for b in range(1, q) if mul[a][b] == 1)
    return FieldCtx(p, e, tuple(modulus), add, sub, mul, neg, tuple(inv))


def field_of_order(q: int) -> FieldCtx:
    p, e = prime_power(q)
    return make_field(p, e)


def enumerate_elements(ctx: FieldCtx) -> Iterator["FieldElement"]:
    for code in range(ctx.q):
        yield FieldElement(code, ctx)


@dataclass(frozen=True)
class FieldElement:
    """A field element with operator overloading; the hot paths use raw codes."""

    code: int
    ctx: FieldCtx

    def __post_init__(self):
        if not 0 <= self.code < self.ctx.q:
            raise ValueError(f"code {self.code} out of range for F_{self.ctx.q}")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("elements belong to different fields")
            return other.code
        if isinstance(other, int):
            # integers map into the prime subfield, whose codes are residues mod p
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx.add(self.code, b), self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx.sub(self.code, b), self.ctx)

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx.sub(b, self.code), self.ctx)

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx.mul(self.code, b), self.ctx)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.ctx.neg(self.code), self.ctx)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx.inv(self.code), self.ctx)

    def __truediv__(self, other):
        b = self._other(other)
        return self * FieldElement(self.ctx.inv(b), self.ctx)

    def __pow__(self, k: int):
        return FieldElement(self.ctx.power(self.code, k), self.ctx)

    def __int__(self) -> int:
        return self.code

    def __repr__(self) -> str:
        return f"F{self.ctx.q}({self.code})"

