"""Sparse multivariate polynomials over Q, Laurent in x.

The variable universe is fixed to ``x, y, z, u, t, c``; only ``x`` may carry a
negative exponent, so every polynomial lives in ``Q[x, 1/x][y, z, u, t, c]``.

A :class:`MultiPoly` is stored as ``x**shift * P`` where ``P`` is a FLINT
``fmpq_mpoly`` not divisible by ``x``; ``shift`` is therefore the x-valuation
and the pair is canonical.  The FLINT context orders monomials by graded lex
with ``x < c < y < z < u < t``, which is also the rendering order.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterator, Mapping, NamedTuple, Tuple, Union

import flint

Coeff = flint.fmpq

VARS = ("x", "y", "z", "u", "t", "c")
VAR_INDEX = {name: i for i, name in enumerate(VARS)}

# FLINT variable order: most significant first under deglex.
_CTX_NAMES = ("t", "u", "z", "y", "c", "x")
_CTX = flint.fmpq_mpoly_ctx.get(_CTX_NAMES, "deglex")
# same variables plus xi standing for 1/x, used while substituting Laurent images
_CTX_XI = flint.fmpq_mpoly_ctx.get(_CTX_NAMES + ("xi",), "deglex")
_POS = {name: i for i, name in enumerate(_CTX_NAMES)}
_XPOS = _POS["x"]
_GENS = dict(zip(_CTX_NAMES, _CTX.gens()))
_TO_CTX = tuple(VAR_INDEX[name] for name in _CTX_NAMES)   # ctx slot -> VARS index
_FROM_CTX = tuple(_POS[name] for name in VARS)            # VARS index -> ctx slot


class VenlabError(Exception):
    """Base class of every error raised by this package."""


class NonInvertibleXImage(VenlabError, ValueError):
    pass


class NotIntegral(VenlabError, ValueError):
    pass


class DivideByZero(VenlabError, ZeroDivisionError):
    pass


class MissingAssignment(VenlabError, KeyError):
    pass


class ZeroAtPole(VenlabError, ZeroDivisionError):
    pass


class Monomial(NamedTuple):
    x: int = 0
    y: int = 0
    z: int = 0
    u: int = 0
    t: int = 0
    c: int = 0


def order_key(mono: Monomial) -> tuple:
    """Sort key for graded lex with x < c < y < z < u < t."""
    return (sum(mono), mono.t, mono.u, mono.z, mono.y, mono.c, mono.x)


def _to_ctx(mono) -> tuple:
    return tuple(mono[i] for i in _TO_CTX)


def _from_ctx(exps, shift: int = 0) -> Monomial:
    vals = [exps[j] for j in _FROM_CTX]
    vals[0] += shift
    return Monomial(*vals)


def to_coeff(value) -> Coeff:
    if isinstance(value, flint.fmpq):
        return value
    if isinstance(value, int):
        return flint.fmpq(value)
    if isinstance(value, Fraction):
        return flint.fmpq(value.numerator, value.denominator)
    if isinstance(value, flint.fmpz):
        return flint.fmpq(value)
    if isinstance(value, str):
        f = Fraction(value)
        return flint.fmpq(f.numerator, f.denominator)
    raise TypeError(f"cannot use {type(value).__name__} as a rational coefficient")


def to_fraction(value: Coeff) -> Fraction:
    value = to_coeff(value)
    return Fraction(int(value.p), int(value.q))


Scalar = Union[int, Fraction, Coeff]
_SCALARS = (int, Fraction, flint.fmpq, flint.fmpz)


def _x_valuation_of(poly) -> int:
    if poly.is_zero():
        return 0
    return int(poly.term_content().degrees()[_XPOS])


class MultiPoly:
    """An immutable Laurent-in-x polynomial, canonical as ``x**shift * P``."""

    __slots__ = ("_p", "_s", "_hash")

    def __init__(self, poly=None, shift: int = 0):
        if poly is None:
            poly = _CTX.from_dict({})
        if poly.is_zero():
            shift = 0
        else:
            m = _x_valuation_of(poly)
            if m:
                poly = poly // _GENS["x"] ** m
                shift += m
        self._p = poly
        self._s = shift
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPoly":
        return _ZERO

    @classmethod
    def one(cls) -> "MultiPoly":
        return _ONE

    @classmethod
    def const(cls, value: Scalar) -> "MultiPoly":
        return cls(_CTX.constant(to_coeff(value)))

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        try:
            return cls(_GENS[name])
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    @classmethod
    def monomial(cls, coeff: Scalar = 1, **exps: int) -> "MultiPoly":
        unknown = set(exps) - set(VARS)
        if unknown:
            raise ValueError(f"unknown variables {sorted(unknown)}")
        return cls.from_terms({Monomial(**exps): coeff})

    @classmethod
    def from_terms(cls, terms: Mapping[Tuple[int, ...], Scalar]) -> "MultiPoly":
        """Build from ``{(ex, ey, ez, eu, et, ec): coeff}``."""
        if not terms:
            return _ZERO
        monos = [Monomial(*m) for m in terms]
        for mono in monos:
            if len(mono) != len(VARS):
                raise ValueError("exponent tuples need one entry per variable")
            if any(e < 0 for e in mono[1:]):
                raise ValueError("only x may carry a negative exponent")
        shift = min(m.x for m in monos)
        out: Dict[tuple, Coeff] = {}
        for mono, coeff in zip(monos, terms.values()):
            key = _to_ctx(mono._replace(x=mono.x - shift))
            out[key] = out.get(key, 0) + to_coeff(coeff)
        return cls(_CTX.from_dict({k: v for k, v in out.items() if v != 0}), shift)

    # inspection ---------------------------------------------------------

    def items(self) -> Iterator[Tuple[Monomial, Coeff]]:
        """Terms in descending monomial order."""
        shift = self._s
        for exps, coeff in self._p.terms():
            yield _from_ctx([int(e) for e in exps], shift), coeff

    def to_dict(self) -> Dict[Monomial, Coeff]:
        return dict(self.items())

    def __len__(self) -> int:
        return len(self._p)

    def __bool__(self) -> bool:
        return not self._p.is_zero()

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def is_constant(self) -> bool:
        return self._s == 0 and self._p.is_constant()

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        if self._p.is_zero():
            return flint.fmpq(0)
        return self._p.coefficient(0)

    def variables(self) -> set:
        if self._p.is_zero():
            return set()
        degs = self._p.degrees()
        found = {name for name, d in zip(_CTX_NAMES, degs) if d}
        if self._s:
            found.add("x")
        return found

    def degree(self, var: str):
        """Largest exponent of ``var``; -inf for the zero polynomial."""
        if self._p.is_zero():
            return -math.inf
        d = int(self._p.degrees()[_POS[var]])
        return d + self._s if var == "x" else d

    def total_degree(self):
        if self._p.is_zero():
            return -math.inf
        return int(self._p.total_degree()) + self._s

    def leading_term(self) -> Tuple[Monomial, Coeff]:
        if self._p.is_zero():
            raise ValueError("zero polynomial has no leading term")
        return next(self.items())

    def coefficient(self, var: str, k: int) -> "MultiPoly":
        """The coefficient of ``var**k``, as a polynomial free of ``var``."""
        pos = _POS[var]
        shift = self._s
        if var == "x":
            k -= self._s
            shift = 0
        out = {}
        for exps, coeff in self._p.terms():
            if exps[pos] == k:
                exps = list(exps)
                exps[pos] = 0
                out[tuple(exps)] = coeff
        return MultiPoly(_CTX.from_dict(out), shift)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self._s == other._s and self._p == other._p
        if isinstance(other, _SCALARS):
            return self == MultiPoly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._s, tuple(self._p.terms())))
        return self._hash

    # arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self._p.is_zero():
            return other
        if other._p.is_zero():
            return self
        s = min(self._s, other._s)
        x = _GENS["x"]
        a = self._p if self._s == s else self._p * x ** (self._s - s)
        b = other._p if other._s == s else other._p * x ** (other._s - s)
        return MultiPoly(a + b, s)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(-self._p, self._s)

    def __sub__(self, other) -> "MultiPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, factor: Scalar) -> "MultiPoly":
        factor = to_coeff(factor)
        if factor == 0:
            return _ZERO
        return MultiPoly(self._p * factor, self._s)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, _SCALARS):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return MultiPoly(self._p * other._p, self._s + other._s)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, _SCALARS):
            other = to_coeff(other)
            if other == 0:
                raise DivideByZero("division by zero scalar")
            return self.scale(1 / other)
        return NotImplemented

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int):
            return NotImplemented
        if n >= 0:
            return MultiPoly(self._p ** n, self._s * n)
        if self._p.is_constant() and not self._p.is_zero():
            return MultiPoly(_CTX.constant(self._p.coefficient(0) ** n), self._s * n)
        raise ValueError("negative powers only exist for monomials in x")

    def shift_x(self, k: int) -> "MultiPoly":
        """Multiply by ``x**k`` (k may be negative)."""
        if k == 0 or self._p.is_zero():
            return self
        return MultiPoly(self._p, self._s + k)

    # calculus and structure ---------------------------------------------

    def partial(self, var: str) -> "MultiPoly":
        if var not in _POS:
            raise ValueError(f"unknown variable {var!r}")
        d = MultiPoly(self._p.derivative(_POS[var]), self._s)
        if var == "x" and self._s:
            d = d + MultiPoly(self._p * self._s, self._s - 1)
        return d

    def x_valuation(self):
        if self._p.is_zero():
            return math.inf
        return self._s

    def is_integral(self) -> bool:
        return self._p.is_zero() or self._s >= 0

    def truncate_x(self, k: int) -> "MultiPoly":
        """Keep only the terms with x-exponent below ``k`` (no integrality check)."""
        if self._p.is_zero():
            return self
        limit = k - self._s
        if limit <= 0:
            return _ZERO
        if self._p.degrees()[_XPOS] < limit:
            return self
        out = {exps: coeff for exps, coeff in self._p.terms() if exps[_XPOS] < limit}
        return MultiPoly(_CTX.from_dict(out), self._s)

    def reduce_mod_x(self, k: int = 1) -> "MultiPoly":
        if k < 1:
            raise ValueError("modulus exponent must be positive")
        if not self.is_integral():
            raise NotIntegral(f"x-valuation {self.x_valuation()} < 0")
        return self.truncate_x(k)

    def substitute(self, images: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        return substitute(self, images)

    def exact_divide(self, divisor: "MultiPoly"):
        return exact_divide(self, divisor)

    def eval(self, point: Mapping[str, Scalar]) -> Coeff:
        return evaluate(self, point)

    # rendering ----------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"MultiPoly({render(self, 12)!r})"


def _coerce(value):
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, _SCALARS):
        return MultiPoly.const(value)
    return None


_ZERO = MultiPoly()
_ONE = MultiPoly(_CTX.constant(1))


def var(name: str) -> MultiPoly:
    return MultiPoly.var(name)


def const(value: Scalar) -> MultiPoly:
    return MultiPoly.const(value)


def add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p + q


def mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p * q


def partial(p: MultiPoly, var_name: str) -> MultiPoly:
    return p.partial(var_name)


def x_valuation(p: MultiPoly):
    return p.x_valuation()


def is_integral(p: MultiPoly) -> bool:
    return p.is_integral()


def reduce_mod_x(p: MultiPoly, k: int = 1) -> MultiPoly:
    return p.reduce_mod_x(k)


# substitution ---------------------------------------------------------------

def _x_image_inverse(image: MultiPoly) -> MultiPoly:
    """(q x)^-1 for a monomial x-image q*x; anything else has no Laurent inverse here."""
    if len(image) == 1 and image._s == 1 and image._p.is_constant():
        return MultiPoly(_CTX.constant(1 / image._p.coefficient(0)), -1)
    raise NonInvertibleXImage(
        f"x-image {render(image, 6)} is not q*x with q a nonzero rational; "
        "cannot substitute into negative powers of x")


def substitute(p: MultiPoly, images: Mapping[str, MultiPoly]) -> MultiPoly:
    """Apply the ring homomorphism sending each listed variable to its image.

    Unlisted variables are fixed.  If p has negative powers of x, the x-image
    must be ``q*x`` for a nonzero rational q.
    """
    moved: Dict[str, MultiPoly] = {}
    for name, image in images.items():
        if name not in _POS:
            raise ValueError(f"unknown variable {name!r}")
        image = _coerce(image)
        if image is None:
            raise TypeError(f"image of {name} is not a polynomial")
        if not (image._s == 0 and image._p == _GENS[name]) and not (
                name == "x" and image._s == 1 and image._p.is_one()):
            moved[name] = image
    if not moved or p._p.is_zero():
        return p

    x_image = moved.get("x", MultiPoly.var("x"))
    if p._s >= 0:
        scale = x_image ** p._s
    else:
        scale = _x_image_inverse(x_image) ** (-p._s)

    laurent = any(img._s < 0 for img in moved.values())
    if not laurent:
        args = []
        for name in _CTX_NAMES:
            img = moved.get(name)
            if img is None:
                args.append(_GENS[name])
            else:
                args.append(img._p * _GENS["x"] ** img._s)
        return MultiPoly(p._p.compose(*args), 0) * scale

    if "x" not in moved:
        return _substitute_cleared(p, moved) * scale

    # Laurent images with a moved x: compose into a ring with xi = 1/x, then fold.
    gens_xi = _CTX_XI.gens()
    x_xi, xi = gens_xi[_XPOS], gens_xi[-1]
    args = []
    for i, name in enumerate(_CTX_NAMES):
        img = moved.get(name)
        if img is None:
            args.append(gens_xi[i])
            continue
        lifted = img._p.compose(*gens_xi[:len(_CTX_NAMES)], ctx=_CTX_XI)
        if img._s >= 0:
            args.append(lifted * x_xi ** img._s)
        else:
            args.append(lifted * xi ** (-img._s))
    raw = p._p.compose(*args, ctx=_CTX_XI)
    folded: Dict[tuple, Coeff] = {}
    terms = []
    low = 0
    for exps, coeff in raw.terms():
        ex = int(exps[_XPOS] - exps[-1])
        if ex < low:
            low = ex
        terms.append((exps, ex, coeff))
    for exps, ex, coeff in terms:
        key = exps[:_XPOS] + (ex - low,)
        prev = folded.get(key)
        folded[key] = coeff if prev is None else prev + coeff
    poly = _CTX.from_dict({k: v for k, v in folded.items() if v != 0})
    return MultiPoly(poly, low) * scale


def _substitute_cleared(p: MultiPoly, moved: Dict[str, MultiPoly]) -> MultiPoly:
    """Substitution with Laurent images and x fixed.

    Writing each image as P_i / x^k_i, every term of p is multiplied by
    x^(N - sum k_i e_i) so that one integral composition suffices; dividing by
    x^N afterwards restores the result.  Cancellation happens inside a single
    polynomial ring, which keeps intermediate sizes down.
    """
    weights = [0] * len(_CTX_NAMES)
    args = []
    for i, name in enumerate(_CTX_NAMES):
        img = moved.get(name)
        if img is None:
            args.append(_GENS[name])
        elif img._s >= 0:
            args.append(img._p * _GENS["x"] ** img._s)
        else:
            weights[i] = -img._s
            args.append(img._p)
    terms = list(p._p.terms())
    loads = [sum(w * int(e) for w, e in zip(weights, exps)) for exps, _ in terms]
    top = max(loads)
    lifted = {}
    for (exps, coeff), load in zip(terms, loads):
        exps = list(exps)
        exps[_XPOS] += top - load
        lifted[tuple(exps)] = coeff
    raw = _CTX.from_dict(lifted).compose(*args)
    return MultiPoly(raw, -top)


# division -------------------------------------------------------------------

def exact_divide(p: MultiPoly, q: MultiPoly):
    """Return r with ``p == q * r`` in Q[x, 1/x][y, z, u, t, c], or None.

    Both operands are stored with their x-content removed, so divisibility in
    the Laurent ring reduces to polynomial divisibility of the stored parts.
    That is decided by single-divisor reduction under graded lex: a single
    polynomial is a Groebner basis of its ideal, so the remainder vanishes
    exactly when q divides p.
    """
    if q._p.is_zero():
        raise DivideByZero("exact_divide by the zero polynomial")
    if p._p.is_zero():
        return _ZERO
    quo, rem = divmod(p._p, q._p)
    if not rem.is_zero():
        return None
    return MultiPoly(quo, p._s - q._s)


# evaluation -----------------------------------------------------------------

def evaluate(p: MultiPoly, point: Mapping[str, Scalar]) -> Coeff:
    for name in point:
        if name not in _POS:
            raise ValueError(f"unknown variable {name!r}")
    if p._p.is_zero():
        return flint.fmpq(0)
    needed = p.variables()
    missing = needed - set(point)
    if missing:
        raise MissingAssignment(f"no value given for {', '.join(sorted(missing))}")
    vals = [to_coeff(point.get(name, 0)) for name in _CTX_NAMES]
    value = p._p(*vals)
    if p._s:
        xv = vals[_XPOS]
        if p._s < 0 and xv == 0:
            raise ZeroAtPole("x = 0 at a negative power of x")
        value = value * xv ** p._s
    return value


# rendering ------------------------------------------------------------------

def format_coeff(value: Scalar) -> str:
    value = to_coeff(value)
    if value.q == 1:
        return str(value.p)
    return f"{value.p}/{value.q}"


def render_monomial(mono: Monomial, names: Mapping[str, str] = None) -> str:
    parts = []
    for name in ("x", "c", "y", "z", "u", "t"):
        e = getattr(mono, name)
        label = names.get(name, name) if names else name
        if e == 1:
            parts.append(label)
        elif e:
            parts.append(f"{label}^{e}")
    return "*".join(parts)


def render(p: MultiPoly, max_terms: int = None, names: Mapping[str, str] = None) -> str:
    """Text form, leading term first; ``max_terms`` truncates with a term count.

    ``names`` relabels variables, e.g. {"z": "v", "u": "w"} for polynomials
    read in the (Y, V, W) presentation.
    """
    if p.is_zero():
        return "0"
    pieces = []
    for i, (mono, coeff) in enumerate(p.items()):
        if max_terms is not None and i >= max_terms:
            pieces.append(f" + ... ({len(p)} terms)")
            break
        negative = coeff < 0
        mag = -coeff if negative else coeff
        body = render_monomial(mono, names)
        if not body:
            text = format_coeff(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{format_coeff(mag)}*{body}"
        if i == 0:
            pieces.append(("-" if negative else "") + text)
        else:
            pieces.append(f" {'-' if negative else '+'} {text}")
    return "".join(pieces)


def mul_trunc(p: MultiPoly, q: MultiPoly, k: int) -> MultiPoly:
    """(p * q) with every term of x-exponent >= k dropped, computed without the tail."""
    if p.is_zero() or q.is_zero():
        return _ZERO
    vp, vq = p.x_valuation(), q.x_valuation()
    if vp + vq >= k:
        return _ZERO
    return (p.truncate_x(k - vq) * q.truncate_x(k - vp)).truncate_x(k)
