"""Stably-tame automorphisms with y + xQ(v, w) as first coordinate.

Given Q = sum alpha[a,b,r] v^a (-w)^b x^r, this module computes the
coefficient table, solves the alternating moment systems, assembles the
triangular map phi' on (Y, V, W, T), conjugates it into phi on (y, z, u, t)
and checks that phi is integral, has Jacobian 1 and reduces mod x to a
Nagata-type map followed by t -> t - P1.

Expansion strategy.  phi' only involves T through xT, so it is stored as a
polynomial in S = xT (held in the t slot).  After conjugation S becomes
xT + (YW + V^2)/x^2, which in (y, z, u, t) is the integral xt + p.  All heavy
substitutions therefore have integral images.  The z- and u-images of phi are
large; the checks only need them mod x, so numerators are formed with
truncated products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .arith import Coeff, MultiPoly, VenlabError, mul_trunc, render, to_coeff
from .certificate import Certificate, timed
from .derivations import Derivation, apply_derivation
from .maps import (STANDARD_FRAME, PolyMap, T, V, W, Y, compose, determinant,
                   jacobian_det, p, t, u, v, w, x, y, z)

Key = Tuple[int, int, int]
Pair = Tuple[Key, Key]

NAGATA_D = Derivation({"z": y, "u": -2 * z})


class ConstantTermUnsupported(VenlabError, ValueError):
    pass


class InconsistentMoments(VenlabError, ArithmeticError):
    pass


class ExactDivisionByYFailed(VenlabError, ArithmeticError):
    pass


# Q -------------------------------------------------------------------------

@dataclass(frozen=True)
class QSpec:
    """Q = sum alpha[(a, b, r)] * v^a * (-w)^b * x^r."""

    alpha: Mapping[Key, Coeff]

    def __post_init__(self):
        clean = {}
        for key, coeff in dict(self.alpha).items():
            a, b, r = (int(k) for k in key)
            if min(a, b, r) < 0:
                raise ValueError(f"negative exponent in {key}")
            coeff = to_coeff(coeff)
            if coeff != 0:
                clean[(a, b, r)] = clean.get((a, b, r), to_coeff(0)) + coeff
        object.__setattr__(self, "alpha", {k: c for k, c in sorted(clean.items()) if c != 0})

    @classmethod
    def from_poly(cls, q: MultiPoly) -> "QSpec":
        """Read a polynomial in x, V (z slot), W (u slot) as a QSpec."""
        extra = q.variables() - {"x", "z", "u"}
        if extra:
            raise ValueError(f"Q may only involve x, v, w; found {sorted(extra)}")
        if not q.is_integral():
            raise ValueError("Q must be polynomial in x")
        alpha = {}
        for mono, coeff in q.items():
            sign = -1 if mono.u % 2 else 1
            alpha[(mono.z, mono.u, mono.x)] = coeff * sign
        return cls(alpha)

    def poly(self) -> MultiPoly:
        """Q in the (Y, V, W) presentation."""
        out = MultiPoly.zero()
        for (a, b, r), coeff in self.alpha.items():
            out = out + (V ** a * (-W) ** b * x ** r).scale(coeff)
        return out

    def label(self) -> str:
        return render(self.poly(), names={"z": "v", "u": "w"})

    def __hash__(self):
        return hash(tuple(self.alpha.items()))


def exponent_split(a: int, b: int) -> Tuple[int, int, int]:
    """(m, delta, epsilon) with m maximal such that delta, epsilon >= 0."""
    m = min(a + b, (a + 2 * b + 1) // 2)
    return m, a + b - m, a + 2 * b + 1 - 2 * m


# coefficient table ---------------------------------------------------------

@dataclass
class StableCoeffTable:
    alpha: Dict[Key, Coeff]
    m: Dict[Tuple[int, int], int] = field(default_factory=dict)
    delta: Dict[Tuple[int, int], int] = field(default_factory=dict)
    epsilon: Dict[Tuple[int, int], int] = field(default_factory=dict)
    rho: Dict[Key, Coeff] = field(default_factory=dict)
    mu: Dict[Key, Coeff] = field(default_factory=dict)
    sigma: Dict[Key, Coeff] = field(default_factory=dict)
    tau: Dict[Key, Coeff] = field(default_factory=dict)
    nu: Dict[Pair, Coeff] = field(default_factory=dict)
    kappa: Dict[Pair, Coeff] = field(default_factory=dict)
    lam: Dict[Pair, Coeff] = field(default_factory=dict)
    zeta: Dict[Tuple[Key, int], Coeff] = field(default_factory=dict)
    eta: Dict[Tuple[Pair, int], Coeff] = field(default_factory=dict)

    def keys(self):
        return list(self.alpha)

    def pairs(self):
        return [(k1, k2) for k1 in self.alpha for k2 in self.alpha]

    def quick_check_residuals(self) -> Dict[str, Coeff]:
        """Left minus right side of the four closed-form identities, per key."""
        out = {}
        for key, al in self.alpha.items():
            a, b, _ = key
            m, eps = self.m[a, b], self.epsilon[a, b]
            rho, sig, tau = self.rho[key], self.sigma[key], self.tau[key]
            n = a + 2 * b + 2
            binom = Fraction(n * (n - 1), 2)
            out[f"m*rho-sigma{key}"] = m * rho - sig - al * to_coeff(Fraction(n * (eps + 2 * m), 4 * (2 * m + 1)))
            out[f"m*sigma-tau{key}"] = m * sig - tau
            out[f"eps*rho+2sigma{key}"] = eps * rho + 2 * sig - al * to_coeff(binom * Fraction(-eps, 2 * m + 1))
            out[f"eps*sigma+2tau{key}"] = eps * sig + 2 * tau - al * to_coeff(binom * Fraction(-eps, 2))
        return out

    def moment_residuals(self) -> Dict[str, Coeff]:
        """Residuals of the alternating moment equations for zeta and eta."""
        out = {}
        for key in self.alpha:
            m = self.m[key[0], key[1]]
            moments = [to_coeff(0)] * 3
            for j in range(m + 1):
                zj = self.zeta.get((key, j), to_coeff(0))
                sign = 1 if (m - j) % 2 == 0 else -1
                for k in range(3):
                    moments[k] += sign * j ** k * zj
            out[f"rho{key}"] = moments[0] - self.rho[key]
            out[f"sigma{key}"] = moments[1] - self.sigma[key]
            out[f"tau{key}"] = moments[2] - self.tau[key]
        for pair in self.pairs():
            m = self.m[pair[0][0], pair[0][1]]
            m0, m1 = to_coeff(0), to_coeff(0)
            for j in range(m + 1):
                ej = self.eta.get((pair, j), to_coeff(0))
                sign = 1 if (m - j) % 2 == 0 else -1
                m0 += sign * ej
                m1 += sign * j * ej
            out[f"kappa{pair}"] = m0 - self.kappa[pair]
            out[f"lambda{pair}"] = m1 - self.lam[pair]
        return out


def build_coeff_table(q: QSpec) -> StableCoeffTable:
    tab = StableCoeffTable(dict(q.alpha))
    for key, al in q.alpha.items():
        a, b, _ = key
        m, delta, eps = exponent_split(a, b)
        if m < 1:
            raise ConstantTermUnsupported(
                f"term {key} is constant in (v, w); absorb x-polynomial shifts of y first")
        tab.m[a, b], tab.delta[a, b], tab.epsilon[a, b] = m, delta, eps
        n = a + 2 * b + 2
        tab.rho[key] = al * to_coeff(Fraction(n * (1 - eps), 2 * (2 * m + 1)))
        tab.mu[key] = al * to_coeff(Fraction((a + 2 * b + 1) * eps, 2 * m + 1))
        tab.sigma[key] = al * to_coeff(Fraction(-n * eps, 4))
        tab.tau[key] = al * to_coeff(Fraction(-n * m * eps, 4))
    for k1, k2 in tab.pairs():
        a, b, _ = k1
        c, d, _ = k2
        al1, al2 = q.alpha[k1], q.alpha[k2]
        nu = -tab.mu[k1] * (a + b) * al2 - (tab.rho[k1] - al1) * (tab.rho[k2] - al2)
        kappa = -(tab.sigma[k1] + tab.delta[a, b] * tab.rho[k1]) * al2
        lam = -((c + 2 * d) * (nu + 2 * kappa)
                + 4 * (a + b) * tab.sigma[k1] * al2
                + (a + 2 * b + 2) * tab.rho[k1] * (tab.rho[k2] - al2)) / 4
        tab.nu[k1, k2], tab.kappa[k1, k2], tab.lam[k1, k2] = nu, kappa, lam
    return tab


def _alternating_solve(m: int, rho: Coeff, sigma: Coeff, tau: Coeff) -> Dict[int, Coeff]:
    """zeta on {m-2, m-1, m} with sum (-1)^(m-j) j^k zeta_j = (rho, sigma, tau)[k]."""
    if m == 1:
        if sigma != tau:
            raise InconsistentMoments(f"m = 1 needs sigma == tau, got {sigma} and {tau}")
        return {0: sigma - rho, 1: sigma}
    nodes = (m - 2, m - 1, m)
    out = {}
    for j in nodes:
        others = [i for i in nodes if i != j]
        # Lagrange: signed weight at j reproducing the moments 1, j, j^2
        num = tau - (others[0] + others[1]) * sigma + others[0] * others[1] * rho
        den = (j - others[0]) * (j - others[1])
        sign = 1 if (m - j) % 2 == 0 else -1
        out[j] = sign * num / den
    return out


def solve_moments(tab: StableCoeffTable) -> StableCoeffTable:
    tab.zeta, tab.eta = {}, {}
    for key in tab.alpha:
        m = tab.m[key[0], key[1]]
        for j, zj in _alternating_solve(m, tab.rho[key], tab.sigma[key], tab.tau[key]).items():
            if zj != 0:
                tab.zeta[key, j] = zj
    for pair in tab.pairs():
        m = tab.m[pair[0][0], pair[0][1]]
        kappa, lam = tab.kappa[pair], tab.lam[pair]
        for j, ej in ((m - 1, lam - m * kappa), (m, lam - (m - 1) * kappa)):
            if ej != 0:
                tab.eta[pair, j] = ej
    bad = {k: r for k, r in tab.moment_residuals().items() if r != 0}
    if bad:
        raise InconsistentMoments(f"moment equations fail: {sorted(bad)[:3]}")
    return tab


# construction --------------------------------------------------------------

S = t  # S = xT, held in the t slot while assembling phi'


def phi_prime_in_S(tab: StableCoeffTable) -> Tuple[MultiPoly, MultiPoly]:
    """The V- and W-images of phi' as polynomials in (Y, V, W, S)."""
    dv = MultiPoly.zero()
    dw = MultiPoly.zero()
    for key in tab.alpha:
        a, b, r = key
        m, delta, eps = tab.m[a, b], tab.delta[a, b], tab.epsilon[a, b]
        for j in range(m + 1):
            zj = tab.zeta.get((key, j))
            if zj:
                dv = dv + (x ** (1 + r) * Y ** (j + delta) * S ** (2 * j + eps) * W ** (m - j)).scale(zj)
        if tab.mu[key]:
            dw = dw + (x ** (1 + r) * Y ** (a + b) * S ** (a + 2 * b + 2)).scale(tab.mu[key])
    for pair in tab.pairs():
        (a, b, r), (c, d, s) = pair
        m, delta, eps = tab.m[a, b], tab.delta[a, b], tab.epsilon[a, b]
        xs = x ** (2 + r + s)
        for j in range(m + 1):
            ej = tab.eta.get((pair, j))
            if ej:
                dv = dv + (xs * Y ** (c + d - 1 + j + delta) * S ** (c + 2 * d + 2 * j + eps)
                           * W ** (m - j)).scale(ej)
        if tab.nu[pair]:
            dw = dw + (xs * Y ** (a + b + c + d - 1) * S ** (a + 2 * b + c + 2 * d + 2)).scale(tab.nu[pair])
    return V + dv, W + dw


@dataclass
class StableConstruction:
    """phi for one Q, kept as its (y, v, w, t)-images plus the abstract factors.

    fy, fv, fw are phi(y), phi(v), phi(w) written in (y, z, u, t); fp = phi(p)
    and ft = phi(t).  The z- and u-images are derived on demand.
    """

    q: QSpec
    table: StableCoeffTable
    phi_prime: PolyMap          # abstract, on (Y, V, W, T)
    factors: List[Tuple[str, PolyMap]]
    fy: MultiPoly
    fv: MultiPoly
    fw: MultiPoly
    fp: MultiPoly
    ft: MultiPoly
    abstract_images: Dict[str, MultiPoly]   # phi(Y), phi(V), phi(W), T + (YW+V^2)/x^3

    def q_expanded(self) -> MultiPoly:
        return STANDARD_FRAME.expand(self.q.poly())

    def z_numerator(self, k: Optional[int] = None) -> MultiPoly:
        """x * phi(z) = phi(v) - phi(y) phi(p), optionally mod x^k."""
        if k is None:
            return self.fv - self.fy * self.fp
        return self.fv.truncate_x(k) - mul_trunc(self.fy, self.fp, k)

    def u_numerator(self, k: Optional[int] = None) -> MultiPoly:
        """x^2 * phi(u) = phi(w) + 2 phi(v) phi(p) - phi(y) phi(p)^2, optionally mod x^k."""
        if k is None:
            return self.fw + 2 * self.fv * self.fp - self.fy * self.fp * self.fp
        vy = self.fy.x_valuation()
        fp2 = mul_trunc(self.fp, self.fp, k - vy if vy != float("inf") else k)
        return (self.fw.truncate_x(k) + 2 * mul_trunc(self.fv, self.fp, k)
                - mul_trunc(self.fy, fp2, k))

    def phi(self) -> PolyMap:
        """The full map on (y, z, u, t).  Can be large."""
        fr = STANDARD_FRAME
        return PolyMap({
            "y": self.fy,
            "z": self.z_numerator().shift_x(-fr.e_z),
            "u": self.u_numerator().shift_x(-fr.e_u),
            "t": self.ft,
        })

    def images_mod_x(self, k: int = 1) -> Tuple[Dict[str, MultiPoly], Dict[str, int]]:
        """phi's images mod x^k, and their x-valuations as seen through that window.

        A reported valuation is exact when negative; otherwise it only certifies >= 0.
        """
        fr = STANDARD_FRAME
        nz = self.z_numerator(k + fr.e_z).shift_x(-fr.e_z)
        nu_ = self.u_numerator(k + fr.e_u).shift_x(-fr.e_u)
        nt = self.ft.truncate_x(k)
        images = {"y": self.fy.truncate_x(k), "z": nz, "u": nu_, "t": nt}
        vals = {n: (img.x_valuation() if img else k) for n, img in images.items()}
        return images, vals

    def jacobian(self, route: str = "presentation") -> MultiPoly:
        """J(phi), computed in one of two ways.

        Both use that phi(t) - (t + p/x) is a function of phi(y), phi(v), phi(w),
        so the t-row may be replaced by d(t + p/x) without changing the determinant.

        "expanded": det d(phi(y), phi(v), phi(w), .)/d(y, z, u, t) in (y, z, u, t);
        this is x^3 J(phi) by the chain rule.
        "presentation": the same determinant taken in (Y, V, W, T).  The change of
        generators has Jacobian x^3, which phi fixes, so the two agree.
        """
        names = ["y", "z", "u", "t"]
        if route == "expanded":
            tp = t + p.shift_x(-1)
            rows = [[f.partial(n) for n in names] for f in (self.fy, self.fv, self.fw, tp)]
            return determinant(rows).shift_x(-3)
        if route == "presentation":
            a = self.abstract_images
            rows = [[a[k].partial(n) for n in names] for k in ("y", "z", "u", "t")]
            return determinant(rows)
        raise ValueError(f"unknown route {route!r}")


def _construct(q: QSpec) -> StableConstruction:
    tab = solve_moments(build_coeff_table(q))
    gv, gw = phi_prime_in_S(tab)
    to_T = {"t": x * T}
    phi_prime = PolyMap({"z": gv.substitute(to_T), "u": gw.substitute(to_T)})

    qpoly = q.poly()
    yw_v2 = Y * W + V * V
    a_plus = PolyMap({"t": T + yw_v2.shift_x(-3)})
    a_minus = PolyMap({"t": T - yw_v2.shift_x(-3)})
    b_shift = PolyMap({"y": Y + x * qpoly})
    e_w = PolyMap({"u": W + (gw - W).substitute(to_T)})
    e_v = PolyMap({"z": V + (gv - V).substitute(to_T)})
    factors = [("t-shift back", a_minus), ("w-shift", e_w), ("v-shift", e_v),
               ("y-shift", b_shift), ("t-shift", a_plus)]

    abstract_inner = {"y": Y + x * qpoly, "t": x * T + yw_v2.shift_x(-2)}
    abstract_images = {"y": Y + x * qpoly, "z": gv.substitute(abstract_inner),
                       "u": gw.substitute(abstract_inner), "t": T + yw_v2.shift_x(-3)}

    fr = STANDARD_FRAME
    fy = fr.expand(Y + x * qpoly)
    # (B o A+) sends xT to xT + (YW + V^2)/x^2, which is xt + p in (y, z, u, t)
    inner = {"y": fy, "z": v, "u": w, "t": x * t + p}
    fv = gv.substitute(inner)
    fw = gw.substitute(inner)
    fp = (fy * fw + fv * fv).shift_x(-fr.e_p)
    ft = t - (fp - p).shift_x(-1)
    return StableConstruction(q, tab, phi_prime, factors, fy, fv, fw, fp, ft, abstract_images)


_CACHE: Dict[QSpec, StableConstruction] = {}


def construct(q: QSpec) -> StableConstruction:
    if q not in _CACHE:
        _CACHE[q] = _construct(q)
    return _CACHE[q]


def build_phi(q: QSpec) -> PolyMap:
    return construct(q).phi()


# P-series --------------------------------------------------------------------

@dataclass(frozen=True)
class PSeries:
    P_minus1: MultiPoly
    P_0: MultiPoly
    P_1: MultiPoly
    P_tilde: MultiPoly
    valuation: float    # x-valuation of x * (phi(p) - p)


def extract_p_series(q: QSpec, cons: StableConstruction = None) -> PSeries:
    """Coefficients of x^0, x^1, x^2 in x*(phi(p) - p), and P~ = (V0 - p Q0 - y P1)/y."""
    cons = cons or construct(q)
    series = cons.fp - p     # x * series has the P's as its first coefficients
    shifted = series.shift_x(1)
    pm1, p0, p1 = (shifted.coefficient("x", k) for k in range(3))
    v0 = (cons.fv - v).coefficient("x", 1)
    q0 = cons.q_expanded().coefficient("x", 0)
    ptilde = (v0 - p * q0 - y * p1).exact_divide(y)
    if ptilde is None:
        raise ExactDivisionByYFailed("V0 - p Q0 - y P1 is not divisible by y")
    return PSeries(pm1, p0, p1, ptilde, shifted.x_valuation())


def in_kernel_of_nagata(h: MultiPoly) -> bool:
    """h in C[y, p]: free of x, t, c and killed by y d/dz - 2z d/du."""
    if h.variables() & {"x", "t", "c"}:
        return False
    return apply_derivation(NAGATA_D, h).is_zero()


def nagata_triple(ptilde: MultiPoly, p1: MultiPoly) -> PolyMap:
    """(y, z + y P~, u - 2z P~ - y P~^2, t - P1)."""
    return PolyMap({"z": z + y * ptilde, "u": u - 2 * z * ptilde - y * ptilde * ptilde,
                    "t": t - p1})


def _is_elementary(m: PolyMap, names=("y", "z", "u", "t")) -> bool:
    moved = [n for n in names if m[n] != MultiPoly.var(n)]
    if len(moved) > 1:
        return False
    if not moved:
        return True
    n = moved[0]
    rest = m[n] - MultiPoly.var(n)
    return n not in rest.variables()


EXPANDED_JACOBIAN_LIMIT = 10_000


def verify_stable(q: QSpec, direct_jacobian: bool = False,
                  expanded_jacobian: Optional[bool] = None) -> Certificate:
    """All checks for one Q.

    The Jacobian is always taken in the (Y, V, W, T) presentation.  The
    (y, z, u, t)-expanded route runs too when phi(v) has fewer than 10k terms
    (or when forced); ``direct_jacobian`` adds the plain 4x4 determinant of
    the fully expanded map, which is only practical for small Q.
    """
    cert = Certificate(f"stable[{q.label() or '0'}]")
    with timed(cert):
        cons = construct(q)
        tab = cons.table
        cert.check("coefficient quick-checks",
                   all(r == 0 for r in tab.quick_check_residuals().values()))
        cert.check("moment equations", all(r == 0 for r in tab.moment_residuals().values()))
        cert.check_zero("phi(y) = y + xQ", cons.fy - cons.q_expanded() * x - y)

        ps = extract_p_series(q, cons)
        cert.check("x(phi(p) - p) has no negative x-powers", ps.valuation >= 0,
                   None if ps.valuation >= 0 else f"valuation {ps.valuation}")
        cert.check_zero("P_-1 = 0", ps.P_minus1)
        cert.check_zero("P_0 = 0", ps.P_0)
        cert.check("P_1 in C[y,p]", in_kernel_of_nagata(ps.P_1), ps.P_1)

        bar, vals = cons.images_mod_x(1)
        for n in ("z", "u", "t"):
            cert.check(f"phi({n}) integral", vals[n] >= 0, None if vals[n] >= 0 else bar[n])
        if all(vals[n] >= 0 for n in "zut"):
            want = nagata_triple(ps.P_tilde, ps.P_1)
            for n in ("y", "z", "u", "t"):
                cert.check_zero(f"phi({n}) mod x", bar[n] - want[n])
            cert.check("P~ keeps p fixed",
                       want(p) == p)

        cert.check_zero("J(phi) = 1", cons.jacobian("presentation") - 1)
        if expanded_jacobian is None:
            expanded_jacobian = len(cons.fv) < EXPANDED_JACOBIAN_LIMIT
        if expanded_jacobian:
            cert.check_zero("J(phi) = 1 in (y,z,u,t)", cons.jacobian("expanded") - 1)
        if direct_jacobian:
            cert.check_zero("J(phi) = 1 by direct expansion",
                            jacobian_det(cons.phi(), ["y", "z", "u", "t"]) - 1)

        for name, factor in cons.factors:
            cert.check(f"factor {name} elementary", _is_elementary(factor))
        e_w = dict(cons.factors)["w-shift"]
        e_v = dict(cons.factors)["v-shift"]
        cert.check("phi' = w-shift o v-shift", compose(e_w, e_v) == cons.phi_prime)
    return cert


def low_p_coefficients_at(cons: StableConstruction, point: Mapping[str, Coeff]) -> Tuple[Coeff, Coeff]:
    """P_-1 and P_0 at a point, specializing y, z, u, t before any multiplication.

    phi(y), phi(v), phi(w) are first reduced to polynomials in x alone; the
    x^0 and x^1 coefficients of x * (phi(p) - p) are then read off.
    """
    at = {n: MultiPoly.const(point[n]) for n in ("y", "z", "u", "t")}
    fy, fv, fw = (h.substitute(at) for h in (cons.fy, cons.fv, cons.fw))
    series = (fy * fw + fv * fv).shift_x(-1) - x * p.substitute(at)
    return (series.coefficient("x", 0).constant_value(),
            series.coefficient("x", 1).constant_value())
