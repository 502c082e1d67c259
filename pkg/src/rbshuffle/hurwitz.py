"""Weighted Hurwitz series over an algebra, at explicit finite precision.

A series is the prefix (f(0), ..., f(N)) of a sequence with values in the
inner algebra; N is the precision.  The product carries binomial weights and
a weight-power correction:

    (fg)(n) = sum_{k=0}^{n} sum_{j=0}^{n-k} C(n,k) C(n-k,j) w^k f(n-j) g(k+j)

which at weight 0 collapses to the classical binomial convolution.  Every
operation records its exact output precision: products take the minimum,
the shift loses one, the Rota-Baxter lift gains one, comultiplication fills
the triangle m+n <= N.  Comparisons are relative to the common precision.
"""

from __future__ import annotations

from math import comb
from typing import Sequence

from . import algebra
from .algebra import (Derivation, Handle, HandleMismatchError, Hom,
                      HurwitzHandle, RBOperator, check_same_handle)
from .coeffs import Scalar


class PrecisionError(ValueError):
    """An operation needs more known values than the operand carries."""


def _lambda_power(lam: Scalar, k: int) -> Scalar:
    """w**k with w**0 = 1, including at weight 0."""
    return lam.pow_nat(k)


class Series:
    """Value prefix of a sequence in the inner algebra; immutable."""

    __slots__ = ("handle", "values", "_hash")

    def __init__(self, handle: HurwitzHandle, values: Sequence):
        if not values:
            raise ValueError("a series stores at least the index-0 value")
        for v in values:
            if v.handle != handle.inner:
                raise HandleMismatchError(f"value over {v.handle}, expected {handle.inner}")
        self.handle = handle
        self.values = tuple(values)
        self._hash = None

    @property
    def precision(self) -> int:
        return len(self.values) - 1

    @classmethod
    def zero(cls, handle: HurwitzHandle, precision: int | None = None) -> Series:
        n = handle.precision if precision is None else precision
        z = algebra.zero(handle.inner)
        return cls(handle, (z,) * (n + 1))

    @classmethod
    def one(cls, handle: HurwitzHandle, precision: int | None = None) -> Series:
        n = handle.precision if precision is None else precision
        z = algebra.zero(handle.inner)
        return cls(handle, (algebra.unit(handle.inner),) + (z,) * n)

    @classmethod
    def constant(cls, a, handle: HurwitzHandle, precision: int | None = None) -> Series:
        """Embed an inner element as (a, 0, 0, ...)."""
        n = handle.precision if precision is None else precision
        z = algebra.zero(handle.inner)
        return cls(handle, (a,) + (z,) * n)

    @property
    def is_zero(self) -> bool:
        return all(v.is_zero for v in self.values)

    def truncate(self, n: int) -> Series:
        if n > self.precision:
            raise PrecisionError(f"cannot extend precision {self.precision} to {n}")
        return Series(self.handle, self.values[: n + 1])

    def __add__(self, other: Series) -> Series:
        check_same_handle(self, other)
        n = min(self.precision, other.precision)
        return Series(self.handle,
                      tuple(a + b for a, b in zip(self.values[: n + 1], other.values[: n + 1])))

    def __neg__(self) -> Series:
        return Series(self.handle, tuple(-v for v in self.values))

    def __sub__(self, other: Series) -> Series:
        return self + (-other)

    def scale(self, c: Scalar) -> Series:
        return Series(self.handle, tuple(v.scale(c) for v in self.values))

    def __mul__(self, other: Series) -> Series:
        check_same_handle(self, other)
        ring = self.handle.ring
        lam = self.handle.weight
        n_out = min(self.precision, other.precision)
        values = []
        for n in range(n_out + 1):
            acc = algebra.zero(self.handle.inner)
            for k in range(n + 1):
                wk = _lambda_power(lam, k)
                if wk.is_zero:
                    continue
                for j in range(n - k + 1):
                    c = ring.from_int(comb(n, k) * comb(n - k, j)) * wk
                    if c.is_zero:
                        continue
                    acc = acc + (self.values[n - j] * other.values[k + j]).scale(c)
            values.append(acc)
        return Series(self.handle, values)

    def __eq__(self, other) -> bool:
        # strict: same precision and identical values (hash-compatible);
        # use algebra.alg_eq for precision-relative comparison
        return (isinstance(other, Series) and self.handle == other.handle
                and self.values == other.values)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.handle, self.values))
        return self._hash

    def basis_expansion(self) -> list[tuple[Scalar, Series]]:
        # sequence carriers expose no basis: nonzero factors stay whole,
        # while a zero factor annihilates its tensor
        if self.is_zero:
            return []
        return [(self.handle.ring.one(), self)]

    def __str__(self) -> str:
        return "[" + "; ".join(str(v) for v in self.values) + "]"

    def __repr__(self) -> str:
        return f"Series({self})"

    def to_json(self) -> dict:
        return {"precision": self.precision, "values": [v.to_json() for v in self.values]}


# --------------------------------------------------------------------------
# Derivation, counit, comultiplication


def shift(f: Series) -> Series:
    """Drop the index-0 value; the canonical weighted derivation on series."""
    if f.precision < 1:
        raise PrecisionError("cannot shift a precision-0 series")
    return Series(f.handle, f.values[1:])


def shift_derivation(handle: HurwitzHandle) -> Derivation:
    return Derivation(handle, shift, name="shift")


def counit(f: Series):
    """The index-0 value."""
    return f.values[0]


def counit_hom(handle: HurwitzHandle) -> Hom:
    return Hom(handle, handle.inner, counit, name="counit")


def comult(f: Series) -> Series:
    """Re-index over two coordinates: value (m)(n) = f(m+n).

    The result is a series of series filling the triangle m+n <= precision;
    the inner value at m has precision N-m.
    """
    outer = HurwitzHandle(f.handle, f.handle.precision)
    rows = [Series(f.handle, f.values[m:]) for m in range(f.precision + 1)]
    return Series(outer, rows)


def comult_hom(handle: HurwitzHandle) -> Hom:
    return Hom(handle, HurwitzHandle(handle, handle.precision), comult, name="comult")


# --------------------------------------------------------------------------
# The Rota-Baxter lift


def rb_lift_apply(f: Series, rb: RBOperator) -> Series:
    """Shift values up one slot and close index 0 with the base operator."""
    if rb.handle != f.handle.inner:
        raise HandleMismatchError(f"base operator on {rb.handle} cannot lift over {f.handle}")
    return Series(f.handle, (rb(f.values[0]),) + f.values)


def lifted_rb(handle: HurwitzHandle, rb: RBOperator) -> RBOperator:
    return RBOperator(handle, lambda f: rb_lift_apply(f, rb), name=f"lift({rb.name})")


# --------------------------------------------------------------------------
# Pointwise maps


def map_pointwise(h: Hom, f: Series) -> Series:
    """Apply a homomorphism to every value; precision is preserved."""
    if f.handle.inner != h.src:
        raise HandleMismatchError(f"map from {h.src} cannot act on {f.handle}")
    target = HurwitzHandle(h.dst, f.handle.precision)
    return Series(target, tuple(h(v) for v in f.values))


def pointwise_hom(h: Hom, precision: int) -> Hom:
    src = HurwitzHandle(h.src, precision)
    dst = HurwitzHandle(h.dst, precision)
    return Hom(src, dst, lambda f: map_pointwise(h, f), name=f"{h.name}^seq")


# --------------------------------------------------------------------------
# Iterated derivations


def derivation_series(a, d: Derivation, n: int) -> Series:
    """(a, d(a), d^2(a), ..., d^n(a)): the series a derivation attaches to a."""
    if a.handle != d.handle:
        raise HandleMismatchError(f"derivation on {d.handle} cannot act on {a.handle}")
    values = [a]
    for _ in range(n):
        values.append(d(values[-1]))
    return Series(HurwitzHandle(d.handle, n), values)


def costructure_hom(d: Derivation, n: int) -> Hom:
    """The map a -> (d^k(a))_k into series at precision n."""
    return Hom(d.handle, HurwitzHandle(d.handle, n),
               lambda a: derivation_series(a, d, n), name=f"iter({d.name})")


def higher_leibniz(x, y, d: Derivation, n: int):
    """Closed form for the n-th derivative of a product:

        sum_{k=0}^{n} sum_{j=0}^{n-k} C(n,k) C(n-k,j) w^k d^(n-j)(x) d^(k+j)(y)

    Contract: equals d applied n times to x*y.
    """
    if x.handle != d.handle or y.handle != d.handle:
        raise HandleMismatchError("operands must live on the derivation's handle")
    ring = x.handle.ring
    lam = x.handle.weight
    dx = [x]
    dy = [y]
    for _ in range(n):
        dx.append(d(dx[-1]))
        dy.append(d(dy[-1]))
    acc = algebra.zero(x.handle)
    for k in range(n + 1):
        wk = _lambda_power(lam, k)
        if wk.is_zero:
            continue
        for j in range(n - k + 1):
            c = ring.from_int(comb(n, k) * comb(n - k, j)) * wk
            if c.is_zero:
                continue
            acc = acc + (dx[n - j] * dy[k + j]).scale(c)
    return acc
