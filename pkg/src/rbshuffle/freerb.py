"""Free commutative Rota-Baxter carrier on an algebra: tensors and products.

Elements of ``sha(A)`` are finite linear combinations of pure tensors
(tuples of at least one factor from A).  The product interleaves two pure
tensors recursively: heads multiply in A, and the tails combine in three
branches, two shuffle-style and one weighted merge.  The weight-w branch is
what distinguishes this from the plain shuffle product.

Canonical form: factors are expanded to basis monomials of A wherever A has
a basis (polynomial and tensor carriers); factors over sequence carriers are
kept as canonical series values.  Coefficients are collected on equal factor
tuples and zeros dropped, so equality is syntactic.
"""

from __future__ import annotations

from typing import Iterator, Mapping

from . import algebra
from .algebra import (Derivation, Handle, HandleMismatchError, Hom, RBOperator,
                      ShaHandle, check_same_handle)
from .coeffs import Scalar


def _merge_weight(handle: ShaHandle) -> Scalar:
    """Coefficient of the merged-tails branch in the recursive product."""
    return handle.weight


def _acc(out: dict, key, c: Scalar) -> None:
    s = out.get(key)
    s = c if s is None else s + c
    if s.is_zero:
        out.pop(key, None)
    else:
        out[key] = s


def _diamond_pure(a: tuple, b: tuple, handle: ShaHandle, memo: dict) -> dict:
    """Product of two pure tensors, as tensor-tuple -> coefficient.

    Base cases merge the heads in A and keep the remaining tail; otherwise
    recurse on strictly smaller tail pairs.  Factors may come out composite;
    callers normalize afterwards.
    """
    key = (a, b)
    hit = memo.get(key)
    if hit is not None:
        return hit
    one_c = handle.ring.one()
    head = a[0] * b[0]
    if head.is_zero:
        memo[key] = {}
        return {}
    if len(a) == 1 or len(b) == 1:
        tail = b[1:] if len(a) == 1 else a[1:]
        out = {(head,) + tail: one_c}
        memo[key] = out
        return out
    one_a = algebra.unit(handle.inner)
    ta, tb = a[1:], b[1:]
    lam = _merge_weight(handle)
    acc: dict = {}
    for t, c in _diamond_pure(ta, (one_a,) + tb, handle, memo).items():
        _acc(acc, t, c)
    for t, c in _diamond_pure((one_a,) + ta, tb, handle, memo).items():
        _acc(acc, t, c)
    if not lam.is_zero:
        for t, c in _diamond_pure(ta, tb, handle, memo).items():
            _acc(acc, t, c * lam)
    out = {(head,) + t: c for t, c in acc.items()}
    memo[key] = out
    return out


def _expand_tensor(factors: tuple) -> list[tuple[Scalar, tuple]]:
    """Multilinear expansion of a factor tuple into canonical factor tuples."""
    ring = factors[0].handle.ring
    expansions = [f.basis_expansion() for f in factors]
    out = [(ring.one(), ())]
    for exp in expansions:
        out = [(c * ci, t + (m,)) for c, t in out for ci, m in exp]
    return out


class Tensor:
    """Linear combination of pure tensors over the inner algebra."""

    __slots__ = ("handle", "terms", "_hash")

    def __init__(self, handle: ShaHandle, terms: Mapping[tuple, Scalar]):
        self.handle = handle
        self.terms = {t: c for t, c in terms.items() if not c.is_zero}
        self._hash = None

    @classmethod
    def zero(cls, handle: ShaHandle) -> Tensor:
        return cls(handle, {})

    @classmethod
    def one(cls, handle: ShaHandle) -> Tensor:
        return cls(handle, {(algebra.unit(handle.inner),): handle.ring.one()})

    @classmethod
    def from_factors(cls, handle: ShaHandle, factors: tuple,
                     coeff: Scalar | None = None) -> Tensor:
        """Pure tensor with arbitrary factors, normalized to canonical form."""
        if coeff is None:
            coeff = handle.ring.one()
        if not factors:
            raise ValueError("pure tensors have at least one factor")
        for f in factors:
            if f.handle != handle.inner:
                raise HandleMismatchError(f"factor over {f.handle}, expected {handle.inner}")
        out: dict = {}
        for c, t in _expand_tensor(tuple(factors)):
            _acc(out, t, c * coeff)
        return cls(handle, out)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: Tensor) -> Tensor:
        check_same_handle(self, other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            _acc(out, t, c)
        return Tensor(self.handle, out)

    def __neg__(self) -> Tensor:
        return Tensor(self.handle, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other: Tensor) -> Tensor:
        return self + (-other)

    def scale(self, c: Scalar) -> Tensor:
        return Tensor(self.handle, {t: c * v for t, v in self.terms.items()})

    def __mul__(self, other: Tensor) -> Tensor:
        """The interleaving product, extended bilinearly from pure tensors."""
        check_same_handle(self, other)
        memo: dict = {}
        expansion_cache: dict = {}
        out: dict = {}
        for ta, ca in self.terms.items():
            for tb, cb in other.terms.items():
                scale = ca * cb
                for t, c in _diamond_pure(ta, tb, self.handle, memo).items():
                    expanded = expansion_cache.get(t)
                    if expanded is None:
                        expanded = _expand_tensor(t)
                        expansion_cache[t] = expanded
                    for ci, tt in expanded:
                        _acc(out, tt, scale * c * ci)
        return Tensor(self.handle, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Tensor) and self.handle == other.handle
                and self.terms == other.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.handle, frozenset(self.terms.items())))
        return self._hash

    def basis_expansion(self) -> list[tuple[Scalar, Tensor]]:
        """Decompose into (coefficient, single pure tensor) pairs."""
        return [(c, Tensor(self.handle, {t: self.handle.ring.one()}))
                for t, c in self._ordered_terms()]

    def lengths(self) -> dict[int, int]:
        """Term counts grouped by tensor length."""
        out: dict[int, int] = {}
        for t in self.terms:
            out[len(t)] = out.get(len(t), 0) + 1
        return out

    def _ordered_terms(self) -> list[tuple[tuple, Scalar]]:
        return sorted(self.terms.items(),
                      key=lambda kv: (len(kv[0]), tuple(str(f) for f in kv[0])))

    def __str__(self) -> str:
        """Canonical text: factors joined by '#', one parenthesized chunk per
        term ('#' binds loosest in the expression grammar), inner-tensor
        factors wrapped in eta(...) to mark their level."""
        if self.is_zero:
            return "0"

        def factor_str(f) -> str:
            if isinstance(f, Tensor):
                return f"eta({f})"
            return str(f)

        chunks: list[str] = []
        for t, c in self._ordered_terms():
            body = " # ".join(factor_str(f) for f in t)
            cs = c.render_bare()
            negative = cs.startswith("-")
            mag = cs[1:] if negative else cs
            plain = mag == "1"
            if len(t) > 1 and not (plain and len(self.terms) == 1 and not negative):
                body = f"({body})"
            if not plain:
                body = f"{mag}*{body}"
            if not chunks:
                chunks.append(("-" if negative else "") + body)
            else:
                chunks.append((" - " if negative else " + ") + body)
        return "".join(chunks)

    def __repr__(self) -> str:
        return f"Tensor({self})"

    def to_json(self) -> list:
        return [{"coeff": str(c), "factors": [f.to_json() for f in t]}
                for t, c in self._ordered_terms()]


# --------------------------------------------------------------------------
# Structure maps


def eta(a, handle: ShaHandle | None = None) -> Tensor:
    """Embed an algebra element as a length-1 tensor."""
    if handle is None:
        handle = ShaHandle(a.handle)
    elif handle.inner != a.handle:
        raise HandleMismatchError(f"cannot embed {a.handle} into {handle}")
    return Tensor.from_factors(handle, (a,))


def eta_hom(inner: Handle) -> Hom:
    h = ShaHandle(inner)
    return Hom(inner, h, lambda a: eta(a, h), name="eta")


def rb_prepend(u: Tensor) -> Tensor:
    """The free Rota-Baxter operator: prepend the inner unit to every tensor."""
    one_a = algebra.unit(u.handle.inner)
    return Tensor(u.handle, {(one_a,) + t: c for t, c in u.terms.items()})


def free_rb_operator(handle: ShaHandle) -> RBOperator:
    return RBOperator(handle, rb_prepend, name="P")


def sha_map(f: Hom, u: Tensor) -> Tensor:
    """Apply a homomorphism factorwise; the functor action on tensors."""
    if u.handle.inner != f.src:
        raise HandleMismatchError(f"map from {f.src} cannot act on {u.handle}")
    target = ShaHandle(f.dst)
    out = Tensor.zero(target)
    for t, c in u.terms.items():
        out = out + Tensor.from_factors(target, tuple(f(x) for x in t), c)
    return out


def sha_hom(f: Hom) -> Hom:
    return Hom(ShaHandle(f.src), ShaHandle(f.dst), lambda u: sha_map(f, u),
               name=f"sha({f.name})")


def induced_rb_hom(phi: Hom, rb: RBOperator, u: Tensor):
    """Evaluate a tensor in a Rota-Baxter algebra through phi.

    A pure tensor (a_0, ..., a_n) maps to phi(a_0) * P(phi(a_1) * P(... *
    P(phi(a_n)) ...)), extended linearly; this is the homomorphism the
    universal property induces from phi.
    """
    if phi.src != u.handle.inner:
        raise HandleMismatchError(f"phi maps {phi.src}, tensor is over {u.handle.inner}")
    if rb.handle != phi.dst:
        raise HandleMismatchError("operator must live on phi's target")
    out = algebra.zero(phi.dst)
    for t, c in u.terms.items():
        v = phi(t[-1])
        for x in reversed(t[:-1]):
            v = phi(x) * rb(v)
        out = out + v.scale(c)
    return out


def induced_hom(phi: Hom, rb: RBOperator) -> Hom:
    return Hom(ShaHandle(phi.src), phi.dst,
               lambda u: induced_rb_hom(phi, rb, u), name=f"induced({phi.name})")


def counit_eval(u: Tensor, rb: RBOperator):
    """Evaluate a tensor over (R, P) back into R: nested operator application."""
    return induced_rb_hom(Hom.identity(u.handle.inner), rb, u)


def structure_hom(rb: RBOperator) -> Hom:
    """The evaluation structure sha(R) -> R attached to a Rota-Baxter operator."""
    return Hom(ShaHandle(rb.handle), rb.handle,
               lambda u: counit_eval(u, rb), name=f"eval({rb.name})")


def mu(u: Tensor) -> Tensor:
    """Flatten one tensor level: evaluation with the free operator inside."""
    inner = u.handle.inner
    if not isinstance(inner, ShaHandle):
        raise HandleMismatchError(f"flattening needs a doubly-tensored handle, got {u.handle}")
    return counit_eval(u, free_rb_operator(inner))


def mu_hom(inner: ShaHandle) -> Hom:
    return Hom(ShaHandle(inner), inner, mu, name="mu")


# --------------------------------------------------------------------------
# The free derivation


def _free_derivation_terms(factors: tuple, d: Derivation, lam: Scalar) -> list:
    """Raw (weight, factors) terms of the free derivation on one pure tensor.

    Degree one: differentiate the only factor.  Longer tensors: differentiate
    the head, or merge the first two factors, or do both at weight lam.
    """
    one = lam.ring.one()
    x0 = factors[0]
    rest = factors[1:]
    if not rest:
        return [(one, (d(x0),))]
    rest2 = rest[1:]
    out = [(one, (d(x0),) + rest),
           (one, (x0 * rest[0],) + rest2)]
    if not lam.is_zero:
        out.append((lam, (d(x0) * rest[0],) + rest2))
    return out


def free_derivation_apply(u: Tensor, d: Derivation) -> Tensor:
    """The derivation on sha(A) induced by a derivation d on A."""
    if d.handle != u.handle.inner:
        raise HandleMismatchError(f"derivation on {d.handle} cannot act on {u.handle}")
    lam = u.handle.weight
    out = Tensor.zero(u.handle)
    for t, c in u.terms.items():
        for w, factors in _free_derivation_terms(t, d, lam):
            out = out + Tensor.from_factors(u.handle, factors, c * w)
    return out


def free_derivation(handle: ShaHandle, d: Derivation) -> Derivation:
    return Derivation(handle, lambda u: free_derivation_apply(u, d),
                      name=f"free({d.name})")


# --------------------------------------------------------------------------
# Brute-force oracle for the weight-0 stratum


def interleavings(xs: tuple, ys: tuple) -> Iterator[tuple]:
    """All order-preserving interleavings of two tuples."""
    if not xs:
        yield ys
        return
    if not ys:
        yield xs
        return
    for rest in interleavings(xs[1:], ys):
        yield (xs[0],) + rest
    for rest in interleavings(xs, ys[1:]):
        yield (ys[0],) + rest
