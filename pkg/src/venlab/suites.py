"""The shipped corpus and the runners that turn it into certificates."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, List, Sequence, Tuple

from .arith import MultiPoly, render, to_coeff
from .certificate import Certificate, timed
from .derivations import DEFAULT_MAX_ITER, exp_derivation
from .maps import V, W, Y, x
from .oracle import maps_agree_at_points, random_point
from .stable import QSpec, construct, low_p_coefficients_at, verify_stable
from . import venereau as ven

# corpus ---------------------------------------------------------------------

THETA_NS = (1, 2, 3, 4, 5)
PHI_NS = (1, 2, 3, 4)
ALPHA_NS = (1, 2, 3)

COORDINATE_PAIRS: Tuple[Tuple[MultiPoly, MultiPoly], ...] = (
    (MultiPoly.zero(), MultiPoly.one()),
    (W, MultiPoly.zero()),
    (x * W, MultiPoly.zero()),
    (MultiPoly.zero(), W * W),
    (V * W, MultiPoly.zero()),
)

HYPERPLANE_Q0S = (MultiPoly.zero(), V, W, V * V * W)
CUSP_QS = (MultiPoly.zero(), V)

STABLE_CORPUS: Tuple[QSpec, ...] = (
    QSpec({(1, 0, 0): 1}),                                        # v
    QSpec({(0, 1, 0): 1}),                                        # -w
    QSpec({(1, 1, 0): 1}),                                        # v(-w)
    QSpec({(3, 0, 0): 1}),                                        # v^3
    QSpec({(2, 0, 2): 1}),                                        # x^2 v^2
    QSpec({(1, 0, 0): 1, (0, 1, 1): 2, (2, 1, 0): "-1/3"}),       # mixed
    QSpec({(1, 1, 2): "3/2"}),
)

LEMMA_RANDOM_CASES = 200
ORACLE_POINTS = 100


@dataclass
class SuiteConfig:
    max_iter: int = DEFAULT_MAX_ITER
    seed: int = 0
    oracle_points: int = ORACLE_POINTS
    lemma_random_cases: int = LEMMA_RANDOM_CASES
    stable_corpus: Sequence[QSpec] = field(default_factory=lambda: STABLE_CORPUS)


# lemma sweep -------------------------------------------------------------------

def lemma_monomials(max_degree: int = 4) -> List[MultiPoly]:
    out = []
    for total in range(max_degree + 1):
        for a in range(total + 1):
            for b in range(total - a + 1):
                out.append(Y ** a * V ** b * W ** (total - a - b))
    return out


def random_lemma_inputs(count: int, seed: int) -> List[MultiPoly]:
    """Low-degree h in C[Y, V, W]; about half are multiples of YW + V^2."""
    rng = random.Random(seed)
    monos = lemma_monomials(3)
    out = []
    for i in range(count):
        h = MultiPoly.zero()
        for _ in range(rng.randint(1, 4)):
            coeff = to_coeff(f"{rng.randint(-5, 5)}/{rng.randint(1, 4)}")
            h = h + rng.choice(monos).scale(coeff)
        if i % 2 == 0:
            h = (Y * W + V * V) * (h if h else MultiPoly.one())
        if h.is_zero():
            h = V
        out.append(h)
    return out


def lemma_sweep(count: int = LEMMA_RANDOM_CASES, seed: int = 0) -> Certificate:
    cert = Certificate("lemma_ideal_sweep")
    with timed(cert):
        for h in lemma_monomials(4) + random_lemma_inputs(count, seed):
            flags, single = ven.lemma_ideal_oracle(h)
            if not single.verified:
                cert.check(f"h = {render(h, 8, names={'y': 'Y', 'z': 'V', 'u': 'W'})}", False,
                           str(flags))
        cert.check(f"{len(lemma_monomials(4))} monomials and {count} random h agree",
                   not cert.details)
    return cert


# random-point oracle -----------------------------------------------------------

def oracle_certificate(cfg: SuiteConfig) -> Certificate:
    cert = Certificate("random_point_oracle")
    with timed(cert):
        n, seed = cfg.oracle_points, cfg.seed
        ps, psi_inv = ven.psi(cfg.max_iter), ven.psi_inv(cfg.max_iter)
        for k in THETA_NS:
            shift = exp_derivation(ven.y_shift_derivation(k), cfg.max_iter)
            cert.check(f"theta[n={k}] = psi^-1 o shift o psi pointwise",
                       maps_agree_at_points(ven.theta(k), [psi_inv, shift, ps], n, seed + k))
        for k in PHI_NS:
            twist = exp_derivation(ven.twisted_derivation(k), cfg.max_iter)
            cert.check(f"phi[n={k}] = psi^-1 o exp(E') o psi pointwise",
                       maps_agree_at_points(ven.phi(k), [psi_inv, twist, ps], n, seed + k))
        for k in ALPHA_NS:
            cert.check(f"alpha_phi[n={k}] = alpha o phi pointwise",
                       maps_agree_at_points(ven.alpha_phi(k), [ven.alpha(k), ven.phi(k)], n, seed + k))
        rng = random.Random(seed)
        for q in cfg.stable_corpus[:2]:
            cons = construct(q)
            ok = all(low_p_coefficients_at(cons, random_point(rng)) == (0, 0) for _ in range(n))
            cert.check(f"stable[{q.label()}] P_-1 = P_0 = 0 pointwise", ok)
    return cert


# runners -----------------------------------------------------------------------

def venereau_certificates(cfg: SuiteConfig) -> List[Callable[[], Certificate]]:
    jobs: List[Callable[[], Certificate]] = [lambda: ven.verify_identities(cfg.max_iter)]
    jobs += [lambda k=k: ven.verify_theta(k, cfg.max_iter) for k in THETA_NS]
    jobs += [lambda k=k: ven.verify_phi(k, cfg.max_iter) for k in PHI_NS]
    jobs += [lambda k=k: ven.verify_alpha_phi(k, cfg.max_iter, cfg.seed) for k in ALPHA_NS]
    jobs += [lambda k=k: ven.verify_fg_equivalence(k, cfg.max_iter) for k in ALPHA_NS]
    jobs += [lambda a=a, b=b: ven.coordinate_from_Q(a, b)[1] for a, b in COORDINATE_PAIRS]
    jobs += [lambda q=q: ven.hyperplane_check(q, cfg.max_iter) for q in HYPERPLANE_Q0S]
    jobs += [lambda q=q: ven.verify_cusp(q, cfg.max_iter) for q in CUSP_QS]
    jobs.append(lambda: lemma_sweep(cfg.lemma_random_cases, cfg.seed))
    return jobs


def stable_certificates(cfg: SuiteConfig) -> List[Callable[[], Certificate]]:
    return [lambda q=q: verify_stable(q) for q in cfg.stable_corpus]


def run_all(cfg: SuiteConfig = None, progress: Callable[[Certificate], None] = None) -> List[Certificate]:
    cfg = cfg or SuiteConfig()
    jobs = venereau_certificates(cfg) + stable_certificates(cfg)
    jobs.append(lambda: oracle_certificate(cfg))
    out = []
    for job in jobs:
        cert = job()
        out.append(cert)
        if progress:
            progress(cert)
    return out
