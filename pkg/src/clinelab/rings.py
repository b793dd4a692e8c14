"""Ring contexts, ring elements, and the basic element predicates.

Two ring families are supported:

* square matrices over an exact field (rationals, or a prime field), and
* enumerable finite rings (integers mod n, and square matrices over them).

Elements are immutable and hashable; arithmetic always returns canonical
payloads, so structural equality coincides with ring equality.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .errors import BudgetExceeded, ContextMismatch, InputError
from .linalg import ModularDomain, QQ, is_probable_prime

DEFAULT_ENUMERATION_BUDGET = 2**20


def enumeration_budget() -> int:
    """Active element-enumeration budget (CLINE_LAB_BUDGET overrides)."""
    raw = os.environ.get("CLINE_LAB_BUDGET")
    if raw is None:
        return DEFAULT_ENUMERATION_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"CLINE_LAB_BUDGET must be an integer, got {raw!r}")


@dataclass(frozen=True)
class NilpotencyWitness:
    """Outcome of a nilpotency test.

    index is the smallest k >= 1 with x^k = 0 (None when not nilpotent);
    the zero element has index 1 since x^0 = 1 by convention.
    """

    is_nilpotent: bool
    index: int | None = None


class RingElem:
    """An element of a RingContext; payload is canonical and immutable."""

    __slots__ = ("ctx", "payload")

    def __init__(self, ctx: "RingContext", payload):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, name, value):
        raise AttributeError("RingElem is immutable")

    def __eq__(self, other):
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.ctx is other.ctx and self.payload == other.payload

    def __hash__(self):
        return hash((id(self.ctx), self.payload))

    def _coerce(self, other) -> "RingElem":
        if isinstance(other, RingElem):
            if other.ctx is not self.ctx:
                raise ContextMismatch(
                    f"operands live in different rings: {self.ctx} vs {other.ctx}"
                )
            return other
        if isinstance(other, int):
            return self.ctx.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RingElem(self.ctx, self.ctx._add(self.payload, other.payload))

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.ctx, self.ctx._neg(self.payload))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RingElem(self.ctx, self.ctx._mul(self.payload, other.payload))

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InputError("powers must be non-negative integers")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    @property
    def is_zero(self) -> bool:
        return self.payload == self.ctx.zero().payload

    @property
    def is_one(self) -> bool:
        return self.payload == self.ctx.one().payload

    def __repr__(self):
        return f"RingElem({self.ctx.label}, {self.payload!r})"


class RingContext:
    """Common interface of the supported ring families."""

    is_matrix_over_field = False
    is_finite_ring = False
    element_count: int | None = None
    label = "?"

    def __init__(self):
        self._cache: dict = {}
        self._zero: RingElem | None = None
        self._one: RingElem | None = None

    def cached(self, key, fn):
        try:
            return self._cache[key]
        except KeyError:
            value = fn()
            self._cache[key] = value
            return value

    # payload-level arithmetic, provided by subclasses
    def _canon(self, payload):
        raise NotImplementedError

    def _add(self, x, y):
        raise NotImplementedError

    def _neg(self, x):
        raise NotImplementedError

    def _mul(self, x, y):
        raise NotImplementedError

    def _zero_payload(self):
        raise NotImplementedError

    def _one_payload(self):
        raise NotImplementedError

    def elem(self, payload) -> RingElem:
        return RingElem(self, self._canon(payload))

    def zero(self) -> RingElem:
        if self._zero is None:
            self._zero = RingElem(self, self._zero_payload())
        return self._zero

    def one(self) -> RingElem:
        if self._one is None:
            self._one = RingElem(self, self._one_payload())
        return self._one

    def scalar(self, k: int) -> RingElem:
        """The image of the integer k under the unital ring map Z -> R."""
        result = self.zero()
        one = self.one()
        if k < 0:
            one = -one
            k = -k
        step = one
        while k:
            if k & 1:
                result = result + step
            k >>= 1
            if k:
                step = step + step
        return result

    # enumeration interface (finite rings only)
    def elements(self):
        raise BudgetExceeded(f"{self.label} is not enumerable")

    def element_by_index(self, i: int) -> RingElem:
        raise BudgetExceeded(f"{self.label} is not enumerable")

    def index_of(self, x: RingElem) -> int:
        raise BudgetExceeded(f"{self.label} is not enumerable")

    def __repr__(self):
        return self.label


class MatrixContext(RingContext):
    """n-by-n matrices over an exact field (rationals or a prime field)."""

    is_matrix_over_field = True

    def __init__(self, domain, n: int, label: str):
        super().__init__()
        if n < 1:
            raise InputError("matrix size must be >= 1")
        self.domain = domain
        self.n = n
        self.label = label

    def _canon(self, payload):
        rows = tuple(tuple(row) for row in payload)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise InputError(f"{self.label} expects a {self.n}x{self.n} matrix")
        return linalg.mat_canon(self.domain, rows)

    def _add(self, x, y):
        return linalg.mat_add(self.domain, x, y)

    def _neg(self, x):
        return linalg.mat_neg(self.domain, x)

    def _mul(self, x, y):
        return linalg.mat_mul(self.domain, x, y)

    def _zero_payload(self):
        return linalg.zeros(self.domain, self.n)

    def _one_payload(self):
        return linalg.identity(self.domain, self.n)


class ZModContext(RingContext):
    """The ring of integers modulo n; payloads are ints in [0, n)."""

    is_finite_ring = True

    def __init__(self, n: int):
        super().__init__()
        if n < 2:
            raise InputError("modulus must be >= 2")
        self.n = n
        self.element_count = n
        self.label = f"Z/{n}"

    def _canon(self, payload):
        if isinstance(payload, Fraction):
            if payload.denominator != 1:
                raise InputError("Z/n payload must be an integer")
            payload = payload.numerator
        if not isinstance(payload, int):
            raise InputError("Z/n payload must be an integer")
        return payload % self.n

    def _add(self, x, y):
        return (x + y) % self.n

    def _neg(self, x):
        return (-x) % self.n

    def _mul(self, x, y):
        return (x * y) % self.n

    def _zero_payload(self):
        return 0

    def _one_payload(self):
        return 1 % self.n

    def elements(self):
        return self.cached(
            ("elements",), lambda: tuple(RingElem(self, i) for i in range(self.n))
        )

    def element_by_index(self, i: int) -> RingElem:
        if not 0 <= i < self.n:
            raise InputError("index out of range")
        return RingElem(self, i)

    def index_of(self, x: RingElem) -> int:
        return x.payload


class MatrixRingContext(RingContext):
    """m-by-m matrices over Z/n, treated as one enumerable finite ring."""

    is_finite_ring = True

    def __init__(self, n: int, size: int):
        super().__init__()
        if n < 2:
            raise InputError("modulus must be >= 2")
        if size < 1:
            raise InputError("matrix size must be >= 1")
        self.n = n
        self.size = size
        self.domain = ModularDomain(n)
        self.element_count = n ** (size * size)
        self.label = f"M{size}(Z/{n})"

    def _canon(self, payload):
        rows = tuple(tuple(row) for row in payload)
        if len(rows) != self.size or any(len(r) != self.size for r in rows):
            raise InputError(f"{self.label} expects a {self.size}x{self.size} matrix")
        return linalg.mat_canon(self.domain, rows)

    def _add(self, x, y):
        return linalg.mat_add(self.domain, x, y)

    def _neg(self, x):
        return linalg.mat_neg(self.domain, x)

    def _mul(self, x, y):
        return linalg.mat_mul(self.domain, x, y)

    def _zero_payload(self):
        return linalg.zeros(self.domain, self.size)

    def _one_payload(self):
        return linalg.identity(self.domain, self.size)

    def element_by_index(self, i: int) -> RingElem:
        if not 0 <= i < self.element_count:
            raise InputError("index out of range")
        cells = self.size * self.size
        digits = []
        for _ in range(cells):
            i, d = divmod(i, self.n)
            digits.append(d)
        digits.reverse()  # first entry is the most significant digit
        return RingElem(self, linalg.mat_unflatten(tuple(digits), self.size, self.size))

    def index_of(self, x: RingElem) -> int:
        i = 0
        for v in linalg.mat_flatten(x.payload):
            i = i * self.n + v
        return i

    def elements(self):
        if self.element_count <= 2**16:
            return self.cached(
                ("elements",),
                lambda: tuple(
                    self.element_by_index(i) for i in range(self.element_count)
                ),
            )
        return (self.element_by_index(i) for i in range(self.element_count))


@lru_cache(maxsize=None)
def rationals_matrix(n: int) -> MatrixContext:
    """Context of n-by-n matrices over the rationals."""
    return MatrixContext(QQ, n, f"M{n}(Q)")


@lru_cache(maxsize=None)
def prime_field_matrix(p: int, n: int) -> MatrixContext:
    """Context of n-by-n matrices over the field with p elements."""
    if not is_probable_prime(p):
        raise InputError(f"{p} is not prime")
    return MatrixContext(ModularDomain(p), n, f"M{n}(F{p})")


@lru_cache(maxsize=None)
def zmod(n: int) -> ZModContext:
    return ZModContext(n)


@lru_cache(maxsize=None)
def matrix_ring(n: int, size: int) -> MatrixRingContext:
    return MatrixRingContext(n, size)


def to_matrix_over_field(x: RingElem) -> RingElem:
    """Reinterpret a matrix over Z/p (p prime) as a matrix over F_p.

    The two contexts share payloads and arithmetic; this only switches
    which algorithms (elimination vs enumeration) apply.
    """
    ctx = x.ctx
    if isinstance(ctx, MatrixContext):
        return x
    if not isinstance(ctx, MatrixRingContext) or not ctx.domain.is_field:
        raise ContextMismatch(f"{ctx.label} is not a matrix ring over a prime modulus")
    return RingElem(prime_field_matrix(ctx.n, ctx.size), x.payload)


def to_matrix_ring(x: RingElem) -> RingElem:
    """Inverse of to_matrix_over_field (prime-field matrices only)."""
    ctx = x.ctx
    if isinstance(ctx, MatrixRingContext):
        return x
    if not isinstance(ctx, MatrixContext) or not isinstance(ctx.domain, ModularDomain):
        raise ContextMismatch(f"{ctx.label} has no finite-ring counterpart")
    return RingElem(matrix_ring(ctx.domain.n, ctx.n), x.payload)


def _require_budget(ctx: RingContext, budget: int | None):
    limit = enumeration_budget() if budget is None else budget
    if ctx.element_count is None:
        raise BudgetExceeded(f"{ctx.label} is not enumerable")
    if ctx.element_count > limit:
        raise BudgetExceeded(
            f"{ctx.label} has {ctx.element_count} elements, over the budget {limit}"
        )


def is_unit(x: RingElem, budget: int | None = None) -> bool:
    """Whether x has a two-sided multiplicative inverse.

    Matrices over a field: full rank.  Matrices over Z/n: unit determinant
    (equivalent to invertibility over a commutative base).  Z/n itself:
    enumeration with early exit, falling back to a gcd test only when the
    modulus exceeds the enumeration budget.
    """
    ctx = x.ctx
    if isinstance(ctx, MatrixContext):
        return ctx.cached(
            ("unit", x.payload),
            lambda: linalg.rank(ctx.domain, x.payload) == ctx.n,
        )
    if isinstance(ctx, MatrixRingContext):
        def compute():
            d = linalg.det_int(x.payload) % ctx.n
            return math.gcd(d, ctx.n) == 1

        return ctx.cached(("unit", x.payload), compute)
    if isinstance(ctx, ZModContext):
        def compute():
            limit = enumeration_budget() if budget is None else budget
            if ctx.n > limit:
                return math.gcd(x.payload, ctx.n) == 1
            one = ctx.one()
            for u in ctx.elements():
                if x * u == one and u * x == one:
                    return True
            return False

        return ctx.cached(("unit", x.payload), compute)
    raise ContextMismatch(f"unsupported context {ctx.label}")


def try_inverse(x: RingElem) -> RingElem | None:
    """The two-sided inverse of x, or None when x is not a unit."""
    ctx = x.ctx
    if isinstance(ctx, MatrixContext):
        inv = linalg.inverse(ctx.domain, x.payload)
        return None if inv is None else RingElem(ctx, inv)
    if isinstance(ctx, MatrixRingContext):
        if not is_unit(x):
            return None
        if ctx.domain.is_field:
            return RingElem(ctx, linalg.inverse(ctx.domain, x.payload))
        return RingElem(ctx, _adjugate_inverse(x.payload, ctx.n))
    if isinstance(ctx, ZModContext):
        try:
            return RingElem(ctx, pow(x.payload, -1, ctx.n))
        except ValueError:
            return None
    raise ContextMismatch(f"unsupported context {ctx.label}")


def _adjugate_inverse(rows, n: int):
    """Inverse of an integer matrix mod n via adjugate / determinant."""
    m = len(rows)
    det = linalg.det_int(rows) % n
    det_inv = pow(det, -1, n)
    if m == 1:
        return ((det_inv % n,),)
    adj = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            minor = [
                [rows[r][c] for c in range(m) if c != j]
                for r in range(m)
                if r != i
            ]
            cof = linalg.det_int(minor)
            if (i + j) % 2:
                cof = -cof
            adj[j][i] = (cof * det_inv) % n
    return tuple(tuple(r) for r in adj)


def nilpotency(x: RingElem) -> NilpotencyWitness:
    """Nilpotency test with exact index.

    Matrices over a field stop at exponent n (the index bound); finite
    rings stop at the first repeated power.
    """
    ctx = x.ctx

    def compute():
        if isinstance(ctx, MatrixContext):
            zero = ctx.zero()
            p = x
            for k in range(1, ctx.n + 1):
                if p == zero:
                    return NilpotencyWitness(True, k)
                p = p * x
            return NilpotencyWitness(False, None)
        zero = ctx.zero()
        seen = {x.payload}
        p = x
        k = 1
        while True:
            if p == zero:
                return NilpotencyWitness(True, k)
            p = p * x
            k += 1
            if p.payload in seen:
                return NilpotencyWitness(False, None)
            seen.add(p.payload)

    return ctx.cached(("nilpotency", x.payload), compute)


def _commutant_basis_matrix(ctx: MatrixContext, x: RingElem):
    """Basis of {y : xy = yx} as a linear space of matrices.

    Solves the entrywise linear system directly: the commutator map sends
    the unit matrix E_kl to the matrix with column l equal to column k of
    x minus row k equal to row l of x.
    """
    n = ctx.n
    dom = ctx.domain
    xm = x.payload
    cols = []
    for k in range(n):
        for l in range(n):
            col = []
            for i in range(n):
                for j in range(n):
                    v = dom.zero
                    if j == l:
                        v = v + xm[i][k]
                    if i == k:
                        v = v - xm[l][j]
                    col.append(dom.canon(v))
            cols.append(col)
    system = tuple(tuple(cols[c][r] for c in range(n * n)) for r in range(n * n))
    basis = linalg.nullspace_basis(dom, system)
    return tuple(RingElem(ctx, linalg.mat_unflatten(v, n, n)) for v in basis)


def commutant(x: RingElem, budget: int | None = None):
    """comm(x): exact element set for finite rings, a linear basis for
    matrices over a field (the set is infinite there)."""
    ctx = x.ctx
    if isinstance(ctx, MatrixContext):
        return ctx.cached(
            ("commutant", x.payload), lambda: _commutant_basis_matrix(ctx, x)
        )
    _require_budget(ctx, budget)

    def compute():
        return tuple(y for y in ctx.elements() if x * y == y * x)

    return ctx.cached(("commutant", x.payload), compute)


def in_double_commutant(b: RingElem, a: RingElem, budget: int | None = None) -> bool:
    """Whether b commutes with everything that commutes with a."""
    if b.ctx is not a.ctx:
        raise ContextMismatch("double-commutant test needs a common ring")
    return all(b * y == y * b for y in commutant(a, budget))


def is_quasinilpotent(x: RingElem, budget: int | None = None) -> bool:
    """Whether 1 + yx is a unit for every y commuting with x.

    Finite rings decide the quantifier by enumeration; for matrices over a
    field this is equivalent to nilpotency and answered that way.
    """
    ctx = x.ctx
    if isinstance(ctx, MatrixContext):
        return nilpotency(x).is_nilpotent
    _require_budget(ctx, budget)

    def compute():
        one = ctx.one()
        return all(is_unit(one + y * x) for y in commutant(x, budget))

    return ctx.cached(("qnil", x.payload), compute)
