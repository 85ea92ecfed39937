# src/field.py
"""
Exact arithmetic in GF(p^r).

Elements are coefficient vectors (constant term first) reduced modulo the
lexicographically smallest monic irreducible polynomial of degree r.  Every
element also has an integer label c0 + c1*p + ... + c_{r-1}*p^(r-1); the label
order is the element order returned by `elements` and is what the
projective-line code uses as point indices.
"""
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import List, NamedTuple, Tuple

import numpy as np

import src.config as config
from src.errors import FieldError
from src.utils import is_prime, setup_logger

logger = setup_logger("Field")

Poly = Tuple[int, ...]


# --- Polynomials over GF(p) ---

def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Poly, m: Poly, p: int) -> List[int]:
    """Remainder of a modulo the monic polynomial m."""
    rem = _trim(list(a))
    dm = len(m) - 1
    while len(rem) - 1 >= dm:
        lead = rem[-1]
        shift = len(rem) - 1 - dm
        for i, c in enumerate(m):
            rem[shift + i] = (rem[shift + i] - lead * c) % p
        _trim(rem)
    return rem


def _has_root(m: Poly, p: int) -> bool:
    for x in range(p):
        acc = 0
        for c in reversed(m):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


def _is_irreducible(m: Poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(m)//2."""
    r = len(m) - 1
    if r <= 1:
        return True
    if _has_root(m, p):
        return False
    for d in range(2, r // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(m, low + (1,), p):
                return False
    return True


def _smallest_irreducible(p: int, r: int) -> Poly:
    if r == 1:
        return (0, 1)
    # itertools.product walks (c0, ..., c_{r-1}) in lex order, low degree first
    for low in itertools.product(range(p), repeat=r):
        candidate = low + (1,)
        if _is_irreducible(candidate, p):
            return candidate
    raise FieldError(f"no irreducible polynomial of degree {r} over GF({p})")


# --- Field context ---

@dataclass(frozen=True)
class FieldSpec:
    p: int
    r: int
    modulus: Poly
    q: int

    def __repr__(self):
        return f"GF({self.q})"


@dataclass(frozen=True)
class FieldElem:
    spec: FieldSpec
    coeffs: Tuple[int, ...]

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, neg(other))

    def __mul__(self, other):
        return mul(self, other)

    def __truediv__(self, other):
        return mul(self, inv(other))

    def __neg__(self):
        return neg(self)

    def __pow__(self, n: int):
        return power(self, n)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(coef + mono)
        return "+".join(reversed(terms)) or "0"


def field_new(p: int, r: int = 1) -> FieldSpec:
    """
    Builds GF(p^r) with the deterministic (lex-smallest) modulus.
    Raises FieldError for a non-prime p, r < 1 or p^r above the configured bound.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if r < 1:
        raise FieldError(f"exponent must be positive, got {r}")
    q = p ** r
    if q > config.FIELD_ORDER_BOUND:
        raise FieldError(f"field order {q} exceeds bound {config.FIELD_ORDER_BOUND}")
    return _field_cached(p, r)


@lru_cache(maxsize=None)
def _field_cached(p: int, r: int) -> FieldSpec:
    modulus = _smallest_irreducible(p, r)
    logger.debug(f"GF({p}^{r}) modulus {modulus}")
    return FieldSpec(p=p, r=r, modulus=modulus, q=p ** r)


def elem(spec: FieldSpec, coeffs) -> FieldElem:
    coeffs = tuple(int(c) % spec.p for c in coeffs)
    if len(coeffs) > spec.r:
        coeffs = tuple(_poly_mod(coeffs, spec.modulus, spec.p))
    return FieldElem(spec, coeffs + (0,) * (spec.r - len(coeffs)))


def zero(spec: FieldSpec) -> FieldElem:
    return FieldElem(spec, (0,) * spec.r)


def one(spec: FieldSpec) -> FieldElem:
    return elem(spec, (1,))


def _check_same(a: FieldElem, b: FieldElem):
    if a.spec != b.spec:
        raise FieldError(f"field mismatch: {a.spec} vs {b.spec}")


# --- Arithmetic ---

def add(a: FieldElem, b: FieldElem) -> FieldElem:
    _check_same(a, b)
    p = a.spec.p
    return FieldElem(a.spec, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))


def neg(a: FieldElem) -> FieldElem:
    p = a.spec.p
    return FieldElem(a.spec, tuple((-x) % p for x in a.coeffs))


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    _check_same(a, b)
    spec = a.spec
    prod = [0] * (2 * spec.r - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                prod[i + j] = (prod[i + j] + x * y) % spec.p
    return elem(spec, _poly_mod(tuple(prod), spec.modulus, spec.p))


def power(a: FieldElem, n: int) -> FieldElem:
    if n < 0:
        return power(inv(a), -n)
    result = one(a.spec)
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        base = mul(base, base)
        n >>= 1
    return result


def inv(a: FieldElem) -> FieldElem:
    if a.is_zero():
        raise FieldError("inverse of zero")
    # a^(q-1) = 1 on the multiplicative group
    return power(a, a.spec.q - 2)


def is_square(a: FieldElem) -> bool:
    """True iff a is a nonzero square; defined for odd q only."""
    if a.spec.p == 2:
        raise FieldError("is_square is only defined for odd q")
    if a.is_zero():
        raise FieldError("is_square called with zero")
    return power(a, (a.spec.q - 1) // 2) == one(a.spec)


def frobenius_map(a: FieldElem) -> FieldElem:
    """a -> a^p"""
    return power(a, a.spec.p)


# --- Labels ---

def label(a: FieldElem) -> int:
    p = a.spec.p
    return sum(c * p ** i for i, c in enumerate(a.coeffs))


def from_label(spec: FieldSpec, n: int) -> FieldElem:
    if not 0 <= n < spec.q:
        raise FieldError(f"label {n} outside GF({spec.q})")
    coeffs = []
    for _ in range(spec.r):
        n, c = divmod(n, spec.p)
        coeffs.append(c)
    return FieldElem(spec, tuple(coeffs))


def elements(spec: FieldSpec) -> List[FieldElem]:
    """All q elements in label order: [0, 1, ..., p-1, x, x+1, ...]."""
    return [from_label(spec, n) for n in range(spec.q)]


class FieldTables(NamedTuple):
    add: np.ndarray      # (q, q) labels
    mul: np.ndarray      # (q, q) labels
    neg: np.ndarray      # (q,)
    inv: np.ndarray      # (q,) with inv[0] = -1
    square: np.ndarray   # (q,) bool, True for nonzero squares


@lru_cache(maxsize=None)
def tables(spec: FieldSpec) -> FieldTables:
    """
    Operation tables over labels, used for vectorized Mobius evaluation.
    Only built for fields small enough to materialize a permutation group.
    """
    if spec.q > config.GROUP_Q_BOUND:
        raise FieldError(f"tables requested for q={spec.q} > {config.GROUP_Q_BOUND}")
    p, r, q = spec.p, spec.r, spec.q
    weights = p ** np.arange(r)
    coeffs = np.array([from_label(spec, n).coeffs for n in range(q)], dtype=np.int64)

    add_t = ((coeffs[:, None, :] + coeffs[None, :, :]) % p) @ weights
    neg_t = ((-coeffs) % p) @ weights

    # Multiplication by a is GF(p)-linear; column j of its matrix is a*x^j.
    basis = [elem(spec, (0,) * j + (1,)) for j in range(r)]
    mul_t = np.empty((q, q), dtype=np.int64)
    for n in range(q):
        a = from_label(spec, n)
        matrix = np.array([mul(a, e).coeffs for e in basis], dtype=np.int64)  # rows = images
        mul_t[n] = ((coeffs @ matrix) % p) @ weights

    inv_t = np.full(q, -1, dtype=np.int64)
    nz = np.arange(1, q)
    ones = mul_t[nz] == 1
    inv_t[nz] = ones.argmax(axis=1)

    square_t = np.zeros(q, dtype=bool)
    square_t[mul_t[nz, nz]] = True
    square_t[0] = False

    return FieldTables(add_t, mul_t, neg_t, inv_t, square_t)
