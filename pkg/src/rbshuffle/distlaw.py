"""The distributive map from tensors-of-series to series-of-tensors.

For an inner algebra A, an element of ``sha(hur(A))`` is a combination of
tensors whose factors are series; the map sends it into ``hur(sha(A))``,
a series whose values are tensors.  On a length-1 tensor [f] the output at
index n is the embedded value [f(n)]; longer tensors evaluate head-first:

    [f_0 | t]  ->  beta([f_0]) * lift(beta(t))

with the product taken in the series-of-tensors algebra and ``lift`` the
Rota-Baxter lift of the prepend operator.  This is the induced-homomorphism
evaluation through the pointwise embedding, so a single audited evaluator
drives it.  Output precision is the minimum factor precision, capped at the
handle's working precision; an explicit target precision must not exceed it.
"""

from __future__ import annotations

import time

from . import algebra, freerb, hurwitz
from .algebra import (Handle, HandleMismatchError, Hom, HurwitzHandle,
                      ShaHandle, alg_eq)
from .freerb import Tensor
from .hurwitz import PrecisionError, Series
from .reports import LawReport


def beta(u: Tensor, n_out: int | None = None) -> Series:
    """Swap the carrier order: tensors of series to a series of tensors."""
    hur_h = u.handle.inner
    if not isinstance(hur_h, HurwitzHandle):
        raise HandleMismatchError(f"expected tensors over a series carrier, got {u.handle}")
    sha_a = ShaHandle(hur_h.inner)
    target = HurwitzHandle(sha_a, hur_h.precision)
    nat = min((f.precision for t in u.terms for f in t), default=hur_h.precision)
    cap = min(nat, hur_h.precision)
    if n_out is None:
        n_out = cap
    elif n_out > cap:
        raise PrecisionError(f"requested precision {n_out} exceeds available {cap}")

    def embed(f: Series) -> Series:
        return Series(target, tuple(freerb.eta(v, sha_a) for v in f.values))

    phi = Hom(hur_h, target, embed, name="embed^seq")
    lifted = hurwitz.lifted_rb(target, freerb.free_rb_operator(sha_a))
    out = freerb.induced_rb_hom(phi, lifted, u)
    return out.truncate(n_out) if out.precision > n_out else out


def beta_hom(src: ShaHandle, n_out: int | None = None) -> Hom:
    if not isinstance(src.inner, HurwitzHandle):
        raise HandleMismatchError(f"expected tensors over a series carrier, got {src}")
    dst = HurwitzHandle(ShaHandle(src.inner.inner), src.inner.precision)
    return Hom(src, dst, lambda u: beta(u, n_out), name="beta")


# --------------------------------------------------------------------------
# Lifted structures


def lift_t_structure(h: Hom, precision: int) -> Hom:
    """Lift an evaluation structure sha(A) -> A to the series carrier.

    The lifted structure on hur(A) sends a tensor of series through beta and
    then applies h pointwise.
    """
    if not isinstance(h.src, ShaHandle) or h.src.inner != h.dst:
        raise HandleMismatchError(f"not an evaluation structure: {h.src} -> {h.dst}")
    hur_a = HurwitzHandle(h.dst, precision)
    return Hom(ShaHandle(hur_a), hur_a,
               lambda u: hurwitz.map_pointwise(h, beta(u)),
               name=f"lift({h.name})")


def lift_costructure(f: Hom, u: Tensor, n_out: int | None = None) -> Series:
    """Lift a costructure A -> hur(A) across the tensor carrier at u.

    Computes beta applied to the factorwise image of u; the resulting
    assignment sha(A) -> hur(sha(A)) is the lifted costructure.
    """
    if not isinstance(f.dst, HurwitzHandle) or f.dst.inner != f.src:
        raise HandleMismatchError(f"not a costructure: {f.src} -> {f.dst}")
    return beta(freerb.sha_map(f, u), n_out)


def lift_costructure_hom(f: Hom, n_out: int | None = None) -> Hom:
    if not isinstance(f.dst, HurwitzHandle) or f.dst.inner != f.src:
        raise HandleMismatchError(f"not a costructure: {f.src} -> {f.dst}")
    dst = HurwitzHandle(ShaHandle(f.src), f.dst.precision)
    return Hom(ShaHandle(f.src), dst,
               lambda u: lift_costructure(f, u, n_out), name=f"lift({f.name})")


# --------------------------------------------------------------------------
# Compatibility of a structure/costructure pair


def check_mixed_compat(h: Hom, f: Hom, samples, seed: str = "-") -> LawReport:
    """Check f(h(u)) = pointwise-h(beta(factorwise-f(u))) on each sample.

    This is the defining square for a carrier holding both an evaluation
    structure and a costructure compatibly; failures are report content,
    not errors.
    """
    started = time.perf_counter()
    count = 0
    for i, u in enumerate(samples):
        count += 1
        lhs = f(h(u))
        rhs = hurwitz.map_pointwise(h, beta(freerb.sha_map(f, u)))
        if not alg_eq(lhs, rhs):
            return LawReport(
                law="mixed-compatibility", samples=count, seed=seed, passed=False,
                counterexample={"index": i, "input": str(u),
                                "lhs": str(lhs), "rhs": str(rhs)},
                wall_ms=(time.perf_counter() - started) * 1e3)
    return LawReport(law="mixed-compatibility", samples=count, seed=seed,
                     passed=True, wall_ms=(time.perf_counter() - started) * 1e3)


def phi_swap(pair):
    """Swap the roles in a nested pair ((carrier, h), f) -> ((carrier, f), h)."""
    (carrier, h), f = pair
    return ((carrier, f), h)
