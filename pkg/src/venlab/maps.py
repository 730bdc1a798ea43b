"""Ring endomorphisms given by generator images, and (p, v, w) frames.

Composition follows the tuple convention used for automorphisms written as
image lists: ``compose(f, g)`` substitutes g's images into f's formulas, so
``(y + x^4 z, z, u) o psi == (y + x^3 v, v/x, w/x^2)``.  As ring maps this
means ``apply(compose(f, g), h) == apply(g, apply(f, h))``.

Polynomials "in the (y, v, w) presentation" reuse the y, z, u, t slots for the
abstract symbols Y, V, W, T; :func:`frame_expand` turns them into honest
(y, z, u, t) polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Sequence

from .arith import VARS, MultiPoly, NotIntegral, substitute, var

x, y, z, u, t, c = (var(n) for n in VARS)

# abstract generators of the (y, v, w[, t]) presentation
Y, V, W, T = y, z, u, t


class PolyMap:
    """Endomorphism of Q[x, 1/x][y, z, u, t, c]; unlisted variables are fixed."""

    __slots__ = ("images",)

    def __init__(self, images: Mapping[str, MultiPoly] = None):
        clean: Dict[str, MultiPoly] = {}
        for name, image in (images or {}).items():
            if name not in VARS:
                raise ValueError(f"unknown variable {name!r}")
            if not isinstance(image, MultiPoly):
                image = MultiPoly.const(image)
            if image != var(name):
                clean[name] = image
        self.images = clean

    @classmethod
    def identity(cls) -> "PolyMap":
        return cls()

    @classmethod
    def from_tuple(cls, *images, vars: Sequence[str] = ("y", "z", "u")) -> "PolyMap":
        if len(images) != len(vars):
            raise ValueError("need one image per variable")
        return cls(dict(zip(vars, images)))

    def __getitem__(self, name: str) -> MultiPoly:
        return self.images.get(name, var(name))

    def __call__(self, p: MultiPoly) -> MultiPoly:
        return apply(self, p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(frozenset(self.images.items()))

    def is_identity(self, vars: Iterable[str] = VARS) -> bool:
        return all(name not in self.images for name in vars)

    def is_r_linear(self) -> bool:
        return "x" not in self.images

    def moved(self) -> set:
        return set(self.images)

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self.images.items()))
        return f"PolyMap({{{body}}})"


def apply(m: PolyMap, p: MultiPoly) -> MultiPoly:
    return substitute(p, m.images)


def compose(f: PolyMap, g: PolyMap) -> PolyMap:
    """``f o g`` in tuple convention: each image of f with g substituted in."""
    names = set(f.images) | set(g.images)
    return PolyMap({name: apply(g, f[name]) for name in names})


def compose_all(*maps: PolyMap) -> PolyMap:
    out = maps[0]
    for m in maps[1:]:
        out = compose(out, m)
    return out


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = MultiPoly.zero()
    for j, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = entry * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def determinant(rows) -> MultiPoly:
    return _det([list(r) for r in rows])


def jacobian_matrix(m: PolyMap, vars: Sequence[str]):
    return [[m[a].partial(b) for b in vars] for a in vars]


def jacobian_det(m: PolyMap, vars: Sequence[str]) -> MultiPoly:
    vars = list(vars)
    if not vars or len(set(vars)) != len(vars):
        raise ValueError("variable list must be nonempty and distinct")
    return determinant(jacobian_matrix(m, vars))


def is_integral_map(m: PolyMap, vars: Iterable[str] = ("y", "z", "u"),
                    allow_c: bool = True) -> bool:
    for name in vars:
        image = m[name]
        if not image.is_integral():
            return False
        if not allow_c and "c" in image.variables():
            return False
    return True


def reduce_map_mod_x(m: PolyMap, vars: Iterable[str] = None) -> PolyMap:
    names = set(m.images) if vars is None else set(vars)
    for name in names:
        if not m[name].is_integral():
            raise NotIntegral(f"image of {name} is not integral")
    return PolyMap({name: m[name].reduce_mod_x(1) for name in names if name != "x"})


def verify_inverse_pair(f: PolyMap, g: PolyMap, vars: Iterable[str] = ("y", "z", "u")) -> bool:
    vars = list(vars)
    fg = compose(f, g)
    gf = compose(g, f)
    return all(fg[n] == var(n) and gf[n] == var(n) for n in vars)


# frames ---------------------------------------------------------------------

@dataclass(frozen=True)
class Frame:
    """A (p, v, w) triple with z, u and p recoverable by exact x-shifts:

    z = (v - y p) x^-e_z,   u = (w + 2 v p - y p^2) x^-e_u,   p = (y w + v^2) x^-e_p.
    """

    name: str
    p: MultiPoly
    v: MultiPoly
    w: MultiPoly
    e_z: int
    e_u: int
    e_p: int

    def inversion_residuals(self) -> Dict[str, MultiPoly]:
        p, v, w = self.p, self.v, self.w
        return {
            "z": (v - y * p).shift_x(-self.e_z) - z,
            "u": (w + 2 * v * p - y * p * p).shift_x(-self.e_u) - u,
            "p": (y * w + v * v).shift_x(-self.e_p) - p,
        }

    def is_consistent(self) -> bool:
        return all(r.is_zero() for r in self.inversion_residuals().values())

    def expand(self, F: MultiPoly) -> MultiPoly:
        """Read F as a polynomial in (Y, V, W, T) and rewrite it in (y, z, u, t)."""
        return substitute(F, {"z": self.v, "u": self.w})


def _standard_frame() -> Frame:
    p = y * u + z * z
    v = x * z + y * p
    w = x * x * u - 2 * x * z * p - y * p * p
    return Frame("standard", p, v, w, 1, 2, 2)


def _zero_frame() -> Frame:
    p0 = x * y * u + z * z
    v0 = z + y * p0
    w0 = x * u - 2 * v0 * p0 + y * p0 * p0
    return Frame("zero", p0, v0, w0, 0, 1, 0)


STANDARD_FRAME = _standard_frame()
ZERO_FRAME = _zero_frame()

# the frame polynomials themselves, for convenience
p = STANDARD_FRAME.p
v = STANDARD_FRAME.v
w = STANDARD_FRAME.w


def frame_expand(fr: Frame, F: MultiPoly) -> MultiPoly:
    return fr.expand(F)


def extend_from_frame(fr: Frame, F_y: MultiPoly, F_v: MultiPoly, F_w: MultiPoly,
                      F_t: MultiPoly = None) -> PolyMap:
    """The (y, z, u[, t]) endomorphism induced by Y -> F_y, V -> F_v, W -> F_w.

    The F's are read in the frame's (Y, V, W, T) presentation.  z and u images
    come from the frame's inversion formulas; they may be Laurent in x.
    """
    fy = fr.expand(F_y)
    fv = fr.expand(F_v)
    fw = fr.expand(F_w)
    fp = (fy * fw + fv * fv).shift_x(-fr.e_p)
    images = {
        "y": fy,
        "z": (fv - fy * fp).shift_x(-fr.e_z),
        "u": (fw + 2 * fv * fp - fy * fp * fp).shift_x(-fr.e_u),
    }
    if F_t is not None:
        images["t"] = fr.expand(F_t)
    return PolyMap(images)


def frame_image_of_p(fr: Frame, F_y: MultiPoly, F_v: MultiPoly, F_w: MultiPoly) -> MultiPoly:
    """phi(p) for the map of :func:`extend_from_frame`, without building z, u images."""
    fy, fv, fw = fr.expand(F_y), fr.expand(F_v), fr.expand(F_w)
    return (fy * fw + fv * fv).shift_x(-fr.e_p)
