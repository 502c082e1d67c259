"""Commutative unital algebras: carriers, handles, and concrete operators.

A handle names an algebra: a base polynomial algebra over the coefficient
ring, the tensor carrier ``sha(A)`` of an inner handle, or the sequence
carrier ``hur(A, N)`` of an inner handle.  Handles carry the ring and the
weight; every element points back at its handle and all operations require
matching handles.

Elements are immutable, hashable, and kept in canonical form: polynomials
as sparse exponent-vector maps with no zero coefficients, tensors as linear
combinations of tuples of basis factors, series as value prefixes of
explicit precision.  Canonical form makes equality a syntactic check
(precision-bounded for series).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence, Union

from .coeffs import RATIONALS, Ring, RingError, Scalar

# Constructor nesting above the base polynomial algebra (sha/hur layers).
MAX_NESTING = 3


class HandleMismatchError(ValueError):
    """Operands belong to different algebras."""


class WeightError(ValueError):
    """The operation constrains the weight (e.g. needs a nonzero one)."""


@dataclass(frozen=True)
class PolyHandle:
    """Multivariate polynomial algebra over the coefficient ring."""

    variables: tuple[str, ...]
    ring: Ring
    weight: Scalar

    def __post_init__(self) -> None:
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variables in {self.variables}")
        if self.weight.ring != self.ring:
            raise RingError("weight must live in the coefficient ring")

    @property
    def depth(self) -> int:
        return 0

    def __str__(self) -> str:
        return f"poly({','.join(self.variables)})"


@dataclass(frozen=True)
class ShaHandle:
    """Tensor carrier of the inner algebra: direct sum of its tensor powers."""

    inner: Handle

    def __post_init__(self) -> None:
        if self.depth > MAX_NESTING:
            raise ValueError(f"handle nesting deeper than {MAX_NESTING}")

    @property
    def ring(self) -> Ring:
        return self.inner.ring

    @property
    def weight(self) -> Scalar:
        return self.inner.weight

    @property
    def depth(self) -> int:
        return self.inner.depth + 1

    def __str__(self) -> str:
        return f"sha({self.inner})"


@dataclass(frozen=True)
class HurwitzHandle:
    """Sequence carrier of the inner algebra at a default working precision."""

    inner: Handle
    precision: int

    def __post_init__(self) -> None:
        if self.precision < 0:
            raise ValueError("precision must be >= 0")
        if self.depth > MAX_NESTING:
            raise ValueError(f"handle nesting deeper than {MAX_NESTING}")

    @property
    def ring(self) -> Ring:
        return self.inner.ring

    @property
    def weight(self) -> Scalar:
        return self.inner.weight

    @property
    def depth(self) -> int:
        return self.inner.depth + 1

    def __str__(self) -> str:
        return f"hur({self.inner},{self.precision})"


Handle = Union[PolyHandle, ShaHandle, HurwitzHandle]


def poly_handle(variables: Sequence[str], ring: Ring = RATIONALS,
                weight: Scalar | None = None) -> PolyHandle:
    if weight is None:
        weight = ring.zero()
    return PolyHandle(tuple(variables), ring, weight)


def sha(inner: Handle) -> ShaHandle:
    return ShaHandle(inner)


def hurwitz(inner: Handle, precision: int) -> HurwitzHandle:
    return HurwitzHandle(inner, precision)


def check_same_handle(x, y) -> None:
    if x.handle != y.handle:
        raise HandleMismatchError(f"handle mismatch: {x.handle} vs {y.handle}")


# --------------------------------------------------------------------------
# Polynomials


def _sort_key(exps: tuple[int, ...]):
    # graded lexicographic, used for printing and serialization order
    return (sum(exps), exps)


class Poly:
    """Sparse multivariate polynomial: exponent vector -> nonzero scalar."""

    __slots__ = ("handle", "terms", "_hash")

    def __init__(self, handle: PolyHandle, terms: Mapping[tuple[int, ...], Scalar]):
        self.handle = handle
        self.terms = {m: c for m, c in terms.items() if not c.is_zero}
        self._hash = None

    @classmethod
    def zero(cls, handle: PolyHandle) -> Poly:
        return cls(handle, {})

    @classmethod
    def one(cls, handle: PolyHandle) -> Poly:
        return cls.constant(handle, handle.ring.one())

    @classmethod
    def constant(cls, handle: PolyHandle, c: Scalar) -> Poly:
        return cls(handle, {(0,) * len(handle.variables): c})

    @classmethod
    def monomial(cls, handle: PolyHandle, exps: Sequence[int],
                 coeff: Scalar | None = None) -> Poly:
        if coeff is None:
            coeff = handle.ring.one()
        exps = tuple(exps)
        if len(exps) != len(handle.variables) or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps} for {handle}")
        return cls(handle, {exps: coeff})

    @classmethod
    def variable(cls, handle: PolyHandle, name: str) -> Poly:
        if name not in handle.variables:
            raise ValueError(f"unknown variable {name!r} in {handle}")
        exps = tuple(1 if v == name else 0 for v in handle.variables)
        return cls.monomial(handle, exps)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def __add__(self, other: Poly) -> Poly:
        check_same_handle(self, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            out[m] = c if s is None else s + c
        return Poly(self.handle, out)

    def __neg__(self) -> Poly:
        return Poly(self.handle, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        check_same_handle(self, other)
        out: dict[tuple[int, ...], Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                s = out.get(m)
                out[m] = c if s is None else s + c
        return Poly(self.handle, out)

    def scale(self, c: Scalar) -> Poly:
        return Poly(self.handle, {m: c * v for m, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.handle == other.handle
                and self.terms == other.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.handle, frozenset(self.terms.items())))
        return self._hash

    def basis_expansion(self) -> list[tuple[Scalar, Poly]]:
        """Decompose into (coefficient, monic basis monomial) pairs."""
        return [(c, Poly.monomial(self.handle, m))
                for m, c in sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))]

    def substitute(self, images: Mapping[str, Poly]) -> Poly:
        """Evaluate at variable -> polynomial (same handle), exactly."""
        out = Poly.zero(self.handle)
        for m, c in self.terms.items():
            term = Poly.constant(self.handle, c)
            for name, e in zip(self.handle.variables, m):
                if e == 0:
                    continue
                img = images.get(name, Poly.variable(self.handle, name))
                for _ in range(e):
                    term = term * img
            out = out + term
        return out

    def _monomial_str(self, exps: tuple[int, ...]) -> str:
        parts = []
        for name, e in zip(self.handle.variables, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        chunks: list[str] = []
        for m, c in sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]), reverse=True):
            mono = self._monomial_str(m)
            cs = c.render_bare()
            negative = cs.startswith("-")
            body = cs[1:] if negative else cs
            if mono:
                body = mono if body == "1" else f"{body}*{mono}"
            sign = " - " if negative else " + "
            if not chunks:
                chunks.append(("-" if negative else "") + body)
            else:
                chunks.append(sign + body)
        return "".join(chunks)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def to_json(self) -> list:
        return [{"exponents": list(m), "coeff": str(c)}
                for m, c in sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))]


# --------------------------------------------------------------------------
# Generic dispatch over handle kinds

# Element is Poly | freerb.Tensor | hurwitz.Series; spelled loosely to avoid
# import cycles (the concrete modules import this one).
Element = object


def unit(handle: Handle):
    """Multiplicative identity of the algebra named by the handle."""
    if isinstance(handle, PolyHandle):
        return Poly.one(handle)
    from . import freerb, hurwitz as hur
    if isinstance(handle, ShaHandle):
        return freerb.Tensor.one(handle)
    return hur.Series.one(handle)


def zero(handle: Handle):
    if isinstance(handle, PolyHandle):
        return Poly.zero(handle)
    from . import freerb, hurwitz as hur
    if isinstance(handle, ShaHandle):
        return freerb.Tensor.zero(handle)
    return hur.Series.zero(handle)


def alg_add(x, y):
    check_same_handle(x, y)
    return x + y


def alg_mul(x, y):
    check_same_handle(x, y)
    return x * y


def alg_scale(c: Scalar, x):
    return x.scale(c)


def alg_eq(x, y) -> bool:
    """Equality of canonical forms; series compare up to the smaller precision."""
    if x.handle != y.handle:
        return False
    if isinstance(x.handle, HurwitzHandle):
        n = min(x.precision, y.precision)
        return all(alg_eq(x.values[i], y.values[i]) for i in range(n + 1))
    return x == y


# --------------------------------------------------------------------------
# Named linear maps and operator structures


@dataclass(frozen=True)
class Hom:
    """Algebra homomorphism between handles, as a checked callable."""

    src: Handle
    dst: Handle
    fn: Callable
    name: str = ""

    def __call__(self, x):
        if x.handle != self.src:
            raise HandleMismatchError(f"{self.name or 'hom'} expects {self.src}, got {x.handle}")
        return self.fn(x)

    def then(self, other: Hom) -> Hom:
        if self.dst != other.src:
            raise HandleMismatchError(f"cannot compose {other.name} after {self.name}")
        return Hom(self.src, other.dst, lambda x: other.fn(self.fn(x)),
                   name=f"{other.name}.{self.name}")

    @staticmethod
    def identity(handle: Handle) -> Hom:
        return Hom(handle, handle, lambda x: x, name="id")


@dataclass(frozen=True)
class RBOperator:
    """Linear endomorphism asserted to satisfy the Rota-Baxter identity.

    The identity itself, P(x)P(y) = P(xP(y)) + P(yP(x)) + w*P(xy) with w the
    handle weight, is enforced by the law suites, not by construction.
    """

    handle: Handle
    fn: Callable
    name: str = ""

    def __call__(self, x):
        if x.handle != self.handle:
            raise HandleMismatchError(f"{self.name or 'operator'} expects {self.handle}")
        return self.fn(x)


@dataclass(frozen=True)
class Derivation:
    """Linear endomorphism asserted to satisfy the weighted Leibniz rule.

    The rule, d(xy) = d(x)y + xd(y) + w*d(x)d(y) together with d(1) = 0, is
    enforced by the law suites.
    """

    handle: Handle
    fn: Callable
    name: str = ""

    def __call__(self, x):
        if x.handle != self.handle:
            raise HandleMismatchError(f"{self.name or 'derivation'} expects {self.handle}")
        return self.fn(x)

    def power(self, x, n: int):
        """Apply the derivation n times."""
        for _ in range(n):
            x = self(x)
        return x


# --------------------------------------------------------------------------
# Concrete operators on polynomial carriers


def poly_derivative(f: Poly, var: str) -> Poly:
    """Formal partial derivative; a weight-0 derivation."""
    handle = f.handle
    if var not in handle.variables:
        raise ValueError(f"unknown variable {var!r} in {handle}")
    i = handle.variables.index(var)
    out: dict[tuple[int, ...], Scalar] = {}
    for m, c in f.terms.items():
        if m[i] == 0:
            continue
        d = list(m)
        d[i] -= 1
        out[tuple(d)] = c * handle.ring.from_int(m[i])
    return Poly(handle, out)


def derivative_on(handle: PolyHandle, var: str) -> Derivation:
    return Derivation(handle, lambda f: poly_derivative(f, var), name=f"d/d{var}")


def difference_quotient(f: Poly, var: str) -> Poly:
    """(f(x + w) - f(x)) / w for the handle weight w, exactly.

    Requires a nonzero weight; at weight 0 use ``poly_derivative``.
    """
    handle = f.handle
    lam = handle.weight
    if lam.is_zero:
        raise WeightError("difference quotient needs a nonzero weight")
    if var not in handle.variables:
        raise ValueError(f"unknown variable {var!r} in {handle}")
    shifted = f.substitute({var: Poly.variable(handle, var) + Poly.constant(handle, lam)})
    diff = shifted - f
    return Poly(handle, {m: c.exact_div(lam) for m, c in diff.terms.items()})


def difference_quotient_on(handle: PolyHandle, var: str) -> Derivation:
    return Derivation(handle, lambda f: difference_quotient(f, var), name=f"diffq({var})")


def zero_derivation(handle: Handle) -> Derivation:
    return Derivation(handle, lambda f: zero(handle), name="0")


def poly_integrate(f: Poly, var: str) -> Poly:
    """Antiderivative in ``var`` with zero constant term; weight-0 operator.

    Needs rational coefficients for the 1/(n+1) scaling.
    """
    handle = f.handle
    if not handle.ring.is_rational:
        raise RingError("integration needs the rational coefficient ring")
    if var not in handle.variables:
        raise ValueError(f"unknown variable {var!r} in {handle}")
    i = handle.variables.index(var)
    out: dict[tuple[int, ...], Scalar] = {}
    for m, c in f.terms.items():
        u = list(m)
        u[i] += 1
        out[tuple(u)] = c.exact_div(handle.ring.from_int(u[i]))
    return Poly(handle, out)


def integration_on(handle: PolyHandle, var: str) -> RBOperator:
    return RBOperator(handle, lambda f: poly_integrate(f, var), name=f"int({var})")


def scaled_identity(x):
    """Multiply by the negated handle weight; a weight-w operator on any carrier."""
    return x.scale(-x.handle.weight)


def scaled_identity_on(handle: Handle) -> RBOperator:
    return RBOperator(handle, scaled_identity, name="-w*id")


def subst_hom(handle: PolyHandle, images: Mapping[str, Poly]) -> Hom:
    """Substitution endomorphism variable -> polynomial on one handle."""
    for name, img in images.items():
        if name not in handle.variables:
            raise ValueError(f"unknown variable {name!r} in {handle}")
        if img.handle != handle:
            raise HandleMismatchError("substitution images must share the handle")
    frozen = dict(images)
    label = ",".join(f"{k}->{v}" for k, v in sorted(frozen.items()))
    return Hom(handle, handle, lambda f: f.substitute(frozen), name=f"subst({label})")


# --------------------------------------------------------------------------
# Exponential-span example: the span of e_k (k >= 1) with e_j * e_k = e_{j+k}
# and the decay operator e_k -> -(1/k) e_k.  The carrier is non-unital, so it
# stays outside the handle system; it exists as a concrete weight-0 test bed.


class ExpSpan:
    """Finite combination of decay modes e_k, k >= 1, over the rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Scalar]):
        for k in terms:
            if k < 1:
                raise ValueError("decay modes are indexed by k >= 1")
        self.terms = {k: c for k, c in terms.items() if not c.is_zero}

    @classmethod
    def mode(cls, k: int, coeff: Scalar | None = None) -> ExpSpan:
        if coeff is None:
            coeff = RATIONALS.one()
        return cls({k: coeff})

    def __add__(self, other: ExpSpan) -> ExpSpan:
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            out[k] = c if s is None else s + c
        return ExpSpan(out)

    def __mul__(self, other: ExpSpan) -> ExpSpan:
        out: dict[int, Scalar] = {}
        for j, cj in self.terms.items():
            for k, ck in other.terms.items():
                c = cj * ck
                s = out.get(j + k)
                out[j + k] = c if s is None else s + c
        return ExpSpan(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExpSpan) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*e{k}" for k, c in sorted(self.terms.items()))


def exp_span_rb(f: ExpSpan) -> ExpSpan:
    """Decay integration e_k -> -(1/k) e_k, extended linearly; weight 0."""
    return ExpSpan({k: -c.exact_div(RATIONALS.from_int(k)) for k, c in f.terms.items()})


# --------------------------------------------------------------------------
# Deterministic random elements


@dataclass(frozen=True)
class SampleBudget:
    """Size bounds for random elements; identical (budget, seed) pins the output."""

    max_degree: int = 2
    max_terms: int = 3
    coeff_lo: int = -3
    coeff_hi: int = 3
    max_tensor_len: int = 3
    precision: int = 4

    def with_(self, **kw) -> SampleBudget:
        d = {f: getattr(self, f) for f in self.__dataclass_fields__}
        d.update(kw)
        return SampleBudget(**d)


def _random_coeff(handle: Handle, budget: SampleBudget, rng: random.Random) -> Scalar:
    return handle.ring.from_int(rng.randint(budget.coeff_lo, budget.coeff_hi))


def _random_monomial(handle: PolyHandle, budget: SampleBudget, rng: random.Random) -> tuple[int, ...]:
    total = rng.randint(0, budget.max_degree)
    exps = [0] * len(handle.variables)
    for _ in range(total):
        if not exps:
            break
        exps[rng.randrange(len(exps))] += 1
    return tuple(exps)


def random_element(handle: Handle, budget: SampleBudget, seed) -> Element:
    """Pseudo-random element within the budget; pure in (handle, budget, seed)."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if isinstance(handle, PolyHandle):
        out = Poly.zero(handle)
        for _ in range(rng.randint(0, budget.max_terms)):
            m = _random_monomial(handle, budget, rng)
            out = out + Poly.monomial(handle, m, _random_coeff(handle, budget, rng))
        return out
    from . import freerb, hurwitz as hur
    if isinstance(handle, ShaHandle):
        out = freerb.Tensor.zero(handle)
        for _ in range(rng.randint(0, budget.max_terms)):
            length = rng.randint(1, budget.max_tensor_len)
            factors = tuple(random_basis_factor(handle.inner, budget, rng)
                            for _ in range(length))
            out = out + freerb.Tensor.from_factors(handle, factors,
                                                   _random_coeff(handle, budget, rng))
        return out
    values = tuple(random_element(handle.inner, budget.with_(max_terms=2), rng)
                   for _ in range(budget.precision + 1))
    return hur.Series(handle, values)


def random_basis_factor(handle: Handle, budget: SampleBudget, rng: random.Random) -> Element:
    """Random tensor factor: a basis monomial where the carrier has a basis,
    otherwise (sequence carriers) a small random element."""
    if isinstance(handle, PolyHandle):
        return Poly.monomial(handle, _random_monomial(handle, budget, rng))
    from . import freerb
    if isinstance(handle, ShaHandle):
        length = rng.randint(1, budget.max_tensor_len)
        factors = tuple(random_basis_factor(handle.inner, budget, rng)
                        for _ in range(length))
        return freerb.Tensor.from_factors(handle, factors)
    return random_element(handle, budget.with_(max_terms=2), rng)


def random_subst_hom(handle: PolyHandle, budget: SampleBudget, rng: random.Random) -> Hom:
    """Random substitution homomorphism on a polynomial handle."""
    images = {name: random_element(handle, budget, rng) for name in handle.variables}
    return subst_hom(handle, images)
