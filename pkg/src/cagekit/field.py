"""Exact arithmetic in GF(q) for prime powers q.

Elements are plain integers in ``[0, q)``.  The integer ``v`` stands for the
polynomial ``sum(c_i x^i)`` where ``c_i`` are the base-``p`` digits of ``v``
(least significant digit first), reduced modulo a fixed monic irreducible
polynomial of degree ``n``.  For prime ``q`` this is ordinary mod-``p``
arithmetic.

The modulus is the smallest monic irreducible of degree ``n`` when its
low-order coefficients ``(c_0, ..., c_{n-1})`` are compared as tuples, so two
builds for the same ``q`` always agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

TABLE_LIMIT = 512
MAX_ORDER = 1 << 16


class NotPrimePower(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, n)`` with ``q == p**n``, or raise :class:`NotPrimePower`."""
    if not isinstance(q, int) or isinstance(q, bool) or q < 2:
        raise NotPrimePower(f"{q!r} is not a prime power")
    p = next(d for d in itertools.count(2) if d * d > q or q % d == 0)
    if q % p:
        p = q  # q itself is prime
    n, rest = 0, q
    while rest % p == 0:
        rest //= p
        n += 1
    if rest != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, n


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except NotPrimePower:
        return False
    return True


# -- polynomials over F_p, coefficient lists low degree first ---------------

def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mod(f: list[int], g: list[int], p: int) -> list[int]:
    f = _trim(list(f))
    lead_inv = pow(g[-1], p - 2, p)
    dg = len(g) - 1
    while len(f) - 1 >= dg:
        coef = f[-1] * lead_inv % p
        shift = len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - coef * gi) % p
        _trim(f)
    return f


def is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    n = len(poly) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(list(poly), list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible; coefficients low first."""
    # itertools.product enumerates (c_0, ..., c_{n-1}) in lexicographic order
    for low in itertools.product(range(p), repeat=n):
        poly = low + (1,)
        if is_irreducible(poly, p):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {n} over F_{p}")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The field GF(p^n) together with its arithmetic.

    All operations act on integer encodings.  For ``q <= 512`` addition and
    multiplication go through precomputed ``q x q`` tables.
    """

    p: int
    n: int
    modulus: tuple[int, ...]
    q: int = field(init=False)
    _add: np.ndarray | None = field(init=False, repr=False)
    _mul: np.ndarray | None = field(init=False, repr=False)
    _neg: tuple[int, ...] = field(init=False, repr=False)
    _inv: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        q = self.p**self.n
        if len(self.modulus) != self.n + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{self.p}")
        object.__setattr__(self, "q", q)
        if q <= TABLE_LIMIT:
            add = np.empty((q, q), dtype=np.int64)
            mul = np.empty((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(q):
                    add[a, b] = self._poly_add(a, b)
                    mul[a, b] = self._poly_mul(a, b)
            add.flags.writeable = False
            mul.flags.writeable = False
        else:
            add = mul = None
        object.__setattr__(self, "_add", add)
        object.__setattr__(self, "_mul", mul)
        neg = tuple(self._poly_sub(0, a) for a in range(q))
        object.__setattr__(self, "_neg", neg)
        object.__setattr__(self, "_inv", self._inverse_table())

    # -- encoding helpers ---------------------------------------------------

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.n):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def pack(self, coeffs) -> int:
        v = 0
        for c in reversed(list(coeffs)):
            v = v * self.p + c % self.p
        return v

    def _poly_add(self, a: int, b: int) -> int:
        return self.pack(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def _poly_sub(self, a: int, b: int) -> int:
        return self.pack(x - y for x, y in zip(self.digits(a), self.digits(b)))

    def _poly_mul(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        rem = _poly_mod([c % self.p for c in prod], list(self.modulus), self.p)
        return self.pack(rem + [0] * (self.n - len(rem)))

    def _inverse_table(self) -> tuple[int, ...]:
        # a^(q-2) via square-and-multiply; exhaustively checked in tests
        inv = [0] * self.q
        for a in range(1, self.q):
            inv[a] = self.pow(a, self.q - 2)
        return tuple(inv)

    # -- arithmetic -----------------------------------------------------------

    @property
    def order(self) -> int:
        return self.q

    def elements(self) -> list[int]:
        return list(range(self.q))

    def check(self, a) -> int:
        if not isinstance(a, (int, np.integer)) or isinstance(a, bool) or not 0 <= a < self.q:
            raise TypeError(f"{a!r} is not an element of GF({self.q})")
        return int(a)

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return int(self._add[a, b])
        return self._poly_add(a, b)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return int(self._mul[a, b])
        return self._poly_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.q})")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def scalar(self, k: int) -> int:
        """The image of the integer k in the prime subfield."""
        return k % self.p

    def __call__(self, value: int) -> FieldElem:
        return FieldElem(self, self.check(value))

    @property
    def add_table(self) -> np.ndarray:
        if self._add is None:
            raise ValueError(f"no tables for q={self.q} > {TABLE_LIMIT}")
        return self._add

    @property
    def mul_table(self) -> np.ndarray:
        if self._mul is None:
            raise ValueError(f"no tables for q={self.q} > {TABLE_LIMIT}")
        return self._mul

    def modulus_str(self) -> str:
        if self.n == 1:
            return f"Z/{self.p}"
        terms = []
        for i in range(self.n, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
        return " + ".join(terms)

    def to_json(self) -> dict:
        return {"q": self.q, "p": self.p, "n": self.n,
                "modulus": list(self.modulus), "modulus_str": self.modulus_str()}

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.n, self.modulus) == (
            other.p, other.n, other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        return f"FieldSpec(q={self.q}, modulus={self.modulus_str()!r})"


@dataclass(frozen=True)
class FieldElem:
    """A field element bound to its field, with operator overloading.

    Convenient for writing proof formulas; the graph builders use the raw
    integer methods on :class:`FieldSpec` instead.
    """

    field: FieldSpec
    value: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return FieldElem(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return FieldElem(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return FieldElem(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return FieldElem(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def __truediv__(self, other):
        b = self._coerce(other)
        return FieldElem(self.field, self.field.div(self.value, b))

    def inv(self) -> FieldElem:
        return FieldElem(self.field, self.field.inv(self.value))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"GF{self.field.q}({self.value})"


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    """Build GF(q).  Raises :class:`NotPrimePower` for anything else."""
    p, n = factor_prime_power(q)
    if q > MAX_ORDER:
        raise ValueError(f"q={q} exceeds the supported maximum {MAX_ORDER}")
    modulus = (0, 1) if n == 1 else smallest_irreducible(p, n)
    return FieldSpec(p, n, modulus)


def elements(spec: FieldSpec) -> list[int]:
    return spec.elements()
