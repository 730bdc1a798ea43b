"""Derivations on Q[x, 1/x][y, z, u, t] given by their values on generators.

x and c are constants for every derivation here.  ``exp_derivation`` sums
``D^k(g)/k!`` on each generator and refuses to guess when the series does not
terminate within ``max_iter`` steps.
"""

from __future__ import annotations

from math import factorial
from typing import Mapping, Sequence

from .arith import MultiPoly, VenlabError, var
from .maps import PolyMap, apply, compose, determinant, verify_inverse_pair

GENERATORS = ("y", "z", "u", "t")
DEFAULT_MAX_ITER = 64


class NotNilpotentWithinBound(VenlabError, RuntimeError):
    def __init__(self, generator: str, max_iter: int):
        super().__init__(f"D^k({generator}) still nonzero after {max_iter} steps")
        self.generator = generator
        self.max_iter = max_iter


class NotInversePair(VenlabError, ValueError):
    pass


class Derivation:
    __slots__ = ("images",)

    def __init__(self, images: Mapping[str, MultiPoly] = None):
        clean = {}
        for name, image in (images or {}).items():
            if name not in GENERATORS:
                raise ValueError(f"derivations here only move {GENERATORS}, not {name!r}")
            if not isinstance(image, MultiPoly):
                image = MultiPoly.const(image)
            if image:
                clean[name] = image
        self.images = clean

    @classmethod
    def partial(cls, name: str) -> "Derivation":
        return cls({name: MultiPoly.one()})

    def __getitem__(self, name: str) -> MultiPoly:
        return self.images.get(name, MultiPoly.zero())

    def __call__(self, p: MultiPoly) -> MultiPoly:
        return apply_derivation(self, p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(frozenset(self.images.items()))

    def __add__(self, other: "Derivation") -> "Derivation":
        names = set(self.images) | set(other.images)
        return Derivation({n: self[n] + other[n] for n in names})

    def __neg__(self) -> "Derivation":
        return Derivation({n: -img for n, img in self.images.items()})

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + (-other)

    def scaled(self, factor) -> "Derivation":
        """The derivation ``factor * D`` (factor a polynomial or scalar)."""
        return Derivation({n: img * factor for n, img in self.images.items()})

    __rmul__ = scaled

    def is_zero(self) -> bool:
        return not self.images

    def __repr__(self) -> str:
        body = " + ".join(f"({img}) d/d{n}" for n, img in sorted(self.images.items()))
        return f"Derivation({body or '0'})"


def apply_derivation(D: Derivation, p: MultiPoly) -> MultiPoly:
    total = MultiPoly.zero()
    for name, image in D.images.items():
        dp = p.partial(name)
        if dp:
            total = total + dp * image
    return total


def jacobian_derivation(f: MultiPoly, g: MultiPoly,
                        vars: Sequence[str] = ("y", "z", "u")) -> Derivation:
    """h -> det d(f, g, h)/d(vars), stored by its values on the generators."""
    vars = list(vars)
    if len(vars) != 3:
        raise ValueError("J(f, g, .) needs exactly three variables")
    row_f = [f.partial(n) for n in vars]
    row_g = [g.partial(n) for n in vars]
    images = {}
    for k, name in enumerate(vars):
        unit = [MultiPoly.one() if j == k else MultiPoly.zero() for j in range(3)]
        images[name] = determinant([row_f, row_g, unit])
    return Derivation(images)


def derivation_power_series(D: Derivation, g: MultiPoly, max_iter: int = DEFAULT_MAX_ITER,
                            label: str = "?") -> MultiPoly:
    total = g
    term = g
    for k in range(1, max_iter + 1):
        term = apply_derivation(D, term)
        if not term:
            return total
        total = total + term.scale(1) / factorial(k)
    if apply_derivation(D, term):
        raise NotNilpotentWithinBound(label, max_iter)
    return total


def exp_derivation(D: Derivation, max_iter: int = DEFAULT_MAX_ITER) -> PolyMap:
    if max_iter < 1:
        raise ValueError("max_iter must be positive")
    images = {}
    for name in GENERATORS:
        if not D.images:
            break
        images[name] = derivation_power_series(D, var(name), max_iter, name)
    return PolyMap(images)


def conjugate_derivation(D: Derivation, f: PolyMap, f_inv: PolyMap,
                         vars: Sequence[str] = ("y", "z", "u")) -> Derivation:
    """The derivation g -> f(D(f_inv(g))).

    Its exponential is ``compose(f_inv, compose(exp(D), f))`` in tuple notation.
    """
    if not verify_inverse_pair(f, f_inv, vars):
        raise NotInversePair("f and f_inv do not compose to the identity")
    return Derivation({name: apply(f, apply_derivation(D, apply(f_inv, var(name))))
                       for name in vars})


def conjugated_exponential(D: Derivation, f: PolyMap, f_inv: PolyMap,
                           max_iter: int = DEFAULT_MAX_ITER) -> PolyMap:
    """f_inv o exp(D) o f, the map that exp(conjugate_derivation(D, f, f_inv)) must equal."""
    return compose(f_inv, compose(exp_derivation(D, max_iter), f))
