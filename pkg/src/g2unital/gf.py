"""Small finite fields F_q with table-driven arithmetic.

Elements are encoded as integers ``0 .. q-1``: the coefficient vector of the
element over the prime field, read as a base-``p`` number with the constant
term in the least significant digit.  The prime field therefore occupies the
values ``0 .. p-1`` in every field.

All arithmetic goes through precomputed ``q x q`` tables; fields are built once
per ``q`` and shared (see :func:`field`).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

# Monic defining polynomials, little-endian coefficients (constant first).
MODULI = {
    2: (0, 1),
    3: (0, 1),
    4: (1, 1, 1),  # t^2 + t + 1
    8: (1, 1, 0, 1),  # t^3 + t + 1
    9: (1, 0, 1),  # t^2 + 1
    16: (1, 1, 0, 0, 1),  # t^4 + t + 1
}

SUPPORTED_Q = tuple(sorted(MODULI))


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


def _factor_prime_power(q):
    for p in (2, 3, 5, 7):
        if q % p == 0:
            deg = 0
            n = q
            while n % p == 0:
                n //= p
                deg += 1
            if n != 1:
                break
            return p, deg
    raise ValueError(f"unsupported field order {q}")


def _digits(v, p, n):
    out = []
    for _ in range(n):
        out.append(v % p)
        v //= p
    return out


def _undigits(ds, p):
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


class FieldSpec:
    """The field F_q together with its arithmetic tables.

    Attributes
    ----------
    q, p, deg : int
        Order, characteristic and degree over the prime field.
    modulus : tuple of int
        Defining polynomial (little-endian, monic).
    add, sub, mul : ndarray (q, q)
        Operation tables indexed by element codes.
    neg, inv : ndarray (q,)
        Additive and multiplicative inverses; ``inv[0]`` is 0 and must not be used.
    primitive : int
        Least generator of the multiplicative group.
    exp, log : ndarray
        ``exp[k] = primitive**k`` for ``0 <= k < q-1``; ``log`` inverts it
        (``log[0]`` is -1).
    """

    def __init__(self, q: int):
        if q not in MODULI:
            raise ValueError(f"unsupported field order {q}; supported: {SUPPORTED_Q}")
        p, deg = _factor_prime_power(q)
        self.q = q
        self.p = p
        self.deg = deg
        self.modulus = MODULI[q]

        add = np.zeros((q, q), dtype=np.uint8)
        mul = np.zeros((q, q), dtype=np.uint8)
        digits = [_digits(v, p, deg) for v in range(q)]
        for a in range(q):
            for b in range(q):
                add[a, b] = _undigits([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
                mul[a, b] = _undigits(self._polymul(digits[a], digits[b]), p)
        neg = np.array([_undigits([(-x) % p for x in digits[a]], p) for a in range(q)], dtype=np.uint8)
        sub = add[:, neg]

        inv = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            (b,) = np.nonzero(mul[a] == 1)[0]
            inv[a] = b

        for g in range(2 if q > 2 else 1, q):
            powers = [1]
            while len(powers) < q - 1:
                powers.append(int(mul[powers[-1], g]))
            if len(set(powers)) == q - 1:
                break
        self.primitive = g
        self.exp = np.array(powers, dtype=np.uint8)
        log = np.full(q, -1, dtype=np.int16)
        log[self.exp] = np.arange(q - 1)
        self.log = log

        for t in (add, sub, mul, neg, inv, self.exp, self.log):
            t.setflags(write=False)
        self.add, self.sub, self.mul, self.neg, self.inv = add, sub, mul, neg, inv

    def _polymul(self, a, b):
        p, deg, m = self.p, self.deg, self.modulus
        prod = [0] * (2 * deg - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(len(prod) - 1, deg - 1, -1):
            c = prod[k]
            if c:
                for i in range(deg + 1):
                    prod[k - deg + i] = (prod[k - deg + i] - c * m[i]) % p
        return prod[:deg]

    # scalar helpers on raw codes -------------------------------------------

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if n == 0 else 0
        return int(self.exp[(int(self.log[a]) * n) % (self.q - 1)])

    def frobenius(self, a: int) -> int:
        """The map ``x -> x**p``."""
        return self.pow(a, self.p)

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.q)
        return int(self.mul[a, self.inv[b]])

    def elements(self):
        return range(self.q)

    def __call__(self, value: int) -> "FieldElem":
        return FieldElem(self, value)

    def __repr__(self):
        return f"FieldSpec(q={self.q})"

    def __reduce__(self):
        return (field, (self.q,))


@functools.lru_cache(maxsize=None)
def field(q: int) -> FieldSpec:
    """Return the shared :class:`FieldSpec` for ``F_q``."""
    return FieldSpec(q)


@dataclass(frozen=True)
class FieldElem:
    """An element of a :class:`FieldSpec`, with operator overloads."""

    spec: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.spec.q:
            raise ValueError(f"{self.value} is not an element code of F_{self.spec.q}")
        object.__setattr__(self, "value", int(self.value))

    def _other(self, other):
        if isinstance(other, int):
            if other not in (0, 1):
                raise TypeError("only the integers 0 and 1 coerce into a field")
            return other
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.spec is not self.spec:
            raise FieldMismatchError(f"F_{self.spec.q} element combined with F_{other.spec.q} element")
        return other.value

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.spec, int(self.spec.add[self.value, b]))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.spec, int(self.spec.sub[self.value, b]))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.spec, int(self.spec.mul[self.value, b]))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.spec, self.spec.div(self.value, b))

    def __neg__(self):
        return FieldElem(self.spec, int(self.spec.neg[self.value]))

    def __pow__(self, n: int):
        return FieldElem(self.spec, self.spec.pow(self.value, n))

    def inverse(self) -> "FieldElem":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return FieldElem(self.spec, int(self.spec.inv[self.value]))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other and other < self.spec.p
        if isinstance(other, FieldElem):
            return self.spec is other.spec and self.value == other.value
        return NotImplemented

    def __hash__(self):
        # consistent with equality against the ints 0 and 1
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"F{self.spec.q}({self.value})"


def field_arith(a: FieldElem, b: FieldElem | None, op: str) -> FieldElem:
    """Dispatch one of ``add sub mul div inv neg pow`` (``b`` is the exponent for pow)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown field operation {op!r}")


class QuadraticExtension:
    """F_{q^2} over F_q, with an explicit embedding of the base field."""

    def __init__(self, base_q: int):
        self.base = field(base_q)
        self.big = field(base_q * base_q)
        base, big = self.base, self.big
        if base.deg == 1:
            emb = list(range(base.q))
        else:
            # image of the base generator t: least root in big of the base modulus
            m = base.modulus

            def ev(r):
                acc = 0
                for c in reversed(m):
                    acc = int(big.add[big.mul[acc, r], c])
                return acc

            r = next(x for x in range(big.q) if ev(x) == 0)
            emb = []
            for v in range(base.q):
                acc, power = 0, 1
                for d in _digits(v, base.p, base.deg):
                    acc = int(big.add[acc, big.mul[d, power]])
                    power = int(big.mul[power, r])
                emb.append(acc)
        self.embed = np.array(emb, dtype=np.uint8)
        restrict = np.full(big.q, -1, dtype=np.int16)
        restrict[self.embed] = np.arange(base.q)
        self.restrict = restrict

    def conj(self, x: int) -> int:
        """Generator of the Galois group: ``x -> x**q``."""
        return self.big.pow(x, self.base.q)

    def norm_trace(self, x: int) -> tuple[int, int]:
        """Norm and trace of ``x`` as base-field codes."""
        big = self.big
        xc = self.conj(x)
        n = int(big.mul[x, xc])
        t = int(big.add[x, xc])
        if self.restrict[n] < 0 or self.restrict[t] < 0:
            raise AssertionError("norm/trace left the base field")
        return int(self.restrict[n]), int(self.restrict[t])


@functools.lru_cache(maxsize=None)
def quadratic_extension(big_q: int) -> QuadraticExtension:
    """The registered extension whose top field is ``F_{big_q}``."""
    base = {4: 2, 9: 3, 16: 4}.get(big_q)
    if base is None:
        raise ValueError(f"F_{big_q} is not a registered quadratic extension")
    return QuadraticExtension(base)


def ext_norm_trace(x: FieldElem) -> tuple[FieldElem, FieldElem]:
    """Return ``(x * x**q, x + x**q)`` as elements of the base field F_q."""
    ext = quadratic_extension(x.spec.q)
    n, t = ext.norm_trace(x.value)
    return FieldElem(ext.base, n), FieldElem(ext.base, t)


@functools.lru_cache(maxsize=None)
def find_delta(q: int) -> FieldElem:
    """Least ``delta`` such that ``x^2 - x - delta`` has no root in F_q."""
    F = field(q)
    for d in range(q):
        if all(F.sub[F.sub[F.mul[r, r], r], d] != 0 for r in range(q)):
            return FieldElem(F, d)
    raise AssertionError("no irreducible x^2 - x - delta found")
