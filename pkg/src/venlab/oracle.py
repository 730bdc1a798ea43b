"""Random-point evaluation, used as an independent route to map identities.

A composition f o g is checked at a point P by evaluating g's images at P and
then f's images at those values.  No symbolic substitution is involved.
"""

from __future__ import annotations

import random
from typing import Dict, Iterable, Mapping, Sequence

from .arith import VARS, Coeff, MultiPoly, to_coeff
from .maps import PolyMap

BOUND = 7


def random_rational(rng: random.Random, bound: int = BOUND, nonzero: bool = False) -> Coeff:
    while True:
        num = rng.randint(-bound, bound)
        den = rng.randint(1, bound)
        if num or not nonzero:
            return to_coeff(f"{num}/{den}")


def random_point(rng: random.Random, names: Iterable[str] = VARS, bound: int = BOUND) -> Dict[str, Coeff]:
    """Rational values with |numerator|, denominator <= bound; x is never 0."""
    return {n: random_rational(rng, bound, nonzero=(n == "x")) for n in names}


def eval_map(m: PolyMap, point: Mapping[str, Coeff]) -> Dict[str, Coeff]:
    """Values of every variable's image at the point (fixed variables keep their value)."""
    return {n: (m.images[n].eval(point) if n in m.images else point[n]) for n in point}


def eval_composition(maps: Sequence[PolyMap], point: Mapping[str, Coeff]) -> Dict[str, Coeff]:
    """Values of compose_all(*maps) at the point: the last map is evaluated first."""
    values = dict(point)
    for m in reversed(maps):
        values = eval_map(m, values)
    return values


def maps_agree_at_points(lhs: PolyMap, maps: Sequence[PolyMap], n: int = 100,
                         seed: int = 0, names: Sequence[str] = ("y", "z", "u")) -> bool:
    """lhs == compose_all(*maps) on the listed coordinates at n random points."""
    rng = random.Random(seed)
    for _ in range(n):
        pt = random_point(rng)
        want = eval_composition(maps, pt)
        got = eval_map(lhs, pt)
        if any(got[k] != want[k] for k in names):
            return False
    return True


def polys_agree_at_points(a: MultiPoly, b: MultiPoly, n: int = 100, seed: int = 0) -> bool:
    rng = random.Random(seed)
    for _ in range(n):
        pt = random_point(rng)
        if a.eval(pt) != b.eval(pt):
            return False
    return True
