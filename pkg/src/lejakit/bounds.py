"""Machine-checkable inequalities and identities over computed quantities.

Each predicate yields a :class:`BoundCheck`.  An inequality passes when
``lhs <= rhs * (1 + REL_TOL)``; identities compare ``|lhs - rhs|`` against a
per-check tolerance.  A check whose inputs come from an inconclusive
sup-search is reported ``inconclusive`` and never ``pass``.

Severity classes: ``hard`` checks decide the suite outcome, ``exploratory``
ones (the ``3k`` growth conjecture on [-1, 1]) are reported but do not.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .binary import binary_stats
from .disc import leja_section
from .interval import project_from_disc
from .lebesgue import (
    LebesgueReport, SectionEvaluator, diff_norm_interval, disc_report, gamma, gamma_bound,
    interval_indices, interval_report, roots_of_unity_bound, sup_lebesgue,
)
from .search import SearchConfig

REL_TOL = 1e-9
EXACT_L2P_MAX = 8
PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
HARD, EXPLORATORY, SPOT = "hard", "exploratory", "spot"


@dataclass
class BoundCheck:
    id: str
    k: int
    lhs: float
    rhs: float
    margin: float
    status: str
    severity: str = HARD
    anchor: str = ""
    aux: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return asdict(self)


def _le(cid, k, lhs, rhs, anchor, ok=True, severity=HARD, **aux) -> BoundCheck:
    """``lhs <= rhs`` up to ``REL_TOL`` relative slack."""
    if not ok or not (math.isfinite(lhs) and math.isfinite(rhs)):
        status = INCONCLUSIVE
    else:
        status = PASS if lhs <= rhs * (1.0 + REL_TOL) else FAIL
    return BoundCheck(cid, k, lhs, rhs, rhs - lhs, status, severity, anchor, aux)


def _eq(cid, k, lhs, rhs, tol, anchor, ok=True, severity=HARD, **aux) -> BoundCheck:
    """``|lhs - rhs| <= tol * max(1, |rhs|)``."""
    if not ok or not (math.isfinite(lhs) and math.isfinite(rhs)):
        status = INCONCLUSIVE
    else:
        status = PASS if abs(lhs - rhs) <= tol * max(1.0, abs(rhs)) else FAIL
    return BoundCheck(cid, k, lhs, rhs, abs(lhs - rhs), status, severity, anchor,
                      dict(aux, tol=tol))


def _all(cid, k, lhs, rhs, parts, anchor, severity=HARD, **aux) -> BoundCheck:
    """Combine sub-checks: fail beats inconclusive beats pass."""
    statuses = [p.status for p in parts]
    status = FAIL if FAIL in statuses else INCONCLUSIVE if INCONCLUSIVE in statuses else PASS
    aux["parts"] = [{"lhs": p.lhs, "rhs": p.rhs, "status": p.status, **p.aux} for p in parts]
    return BoundCheck(cid, k, lhs, rhs, min(p.margin for p in parts), status, severity,
                      anchor, aux)


class ReportCache:
    """Memoised reports shared between suites and the CLI."""

    def __init__(self, cfg: SearchConfig | None = None):
        self.cfg = cfg or SearchConfig()
        self._disc: dict[int, LebesgueReport] = {}
        self._interval: dict[int, LebesgueReport] = {}
        self._l2p: dict[int, tuple[float, str, bool]] = {}

    def disc(self, k: int) -> LebesgueReport:
        if k not in self._disc:
            self._disc[k] = disc_report(k, self.cfg)
        return self._disc[k]

    def interval(self, k: int) -> LebesgueReport:
        if k not in self._interval:
            self._interval[k] = interval_report(k, self.cfg)
        return self._interval[k]

    def l2p(self, p: int) -> tuple[float, str, bool]:
        """``(value, source, ok)`` for the roots-of-unity constant of order ``2**p``.

        Searched for ``p <= EXACT_L2P_MAX``, the closed-form bound above.
        """
        if p not in self._l2p:
            if p <= EXACT_L2P_MAX:
                res = sup_lebesgue(leja_section(1 << p), self.cfg)
                self._l2p[p] = (res.value, "computed", res.ok)
            else:
                self._l2p[p] = (roots_of_unity_bound(p), "closed-form", True)
        return self._l2p[p]


def _ok(*reports) -> bool:
    return all(r.status == "ok" for r in reports)


# --- disc suite -------------------------------------------------------------

def _disc_checks_for_k(k: int, cache: ReportCache, rng: np.random.Generator) -> list[BoundCheck]:
    s = binary_stats(k)
    rep = cache.disc(k)
    ok = _ok(rep)
    L, L2, lam_k = rep.L, rep.L2, rep.lambda_at_next
    q = 2.0 ** s.sigma1 - 1.0
    p = s.p
    l2p, l2p_src, l2p_ok = cache.l2p(p)
    out = []

    lower = _le("B1", k, 1.0, L2 / math.sqrt(q), "quadratic sandwich, lower side", ok)
    upper = _le("B1", k, L2 / math.sqrt(q), 3.0, "quadratic sandwich, upper side", ok)
    out.append(_all("B1", k, L2 / math.sqrt(q), 3.0, [lower, upper],
                    "quadratic Lebesgue constant within [1, 3] times sqrt(2^s1 - 1)"))

    out.append(_le("B2", k, L, 3.0 * math.sqrt(k * q), "Lebesgue constant vs 3 sqrt(k(2^s1-1))",
                   ok, sigma1=s.sigma1))
    sec = leja_section(k)
    lam2_at_argmax = float(SectionEvaluator(sec).lam2(np.exp(1j * rep.argmax_angle))[0])
    out.append(_le("B2cs", k, L, math.sqrt(k) * max(L2, lam2_at_argmax),
                   "Cauchy-Schwarz between the two Lebesgue constants", ok))
    out.append(_le("B3", k, L, 2.0 * k, "linear bound 2k", ok))

    lo = _le("B4", k, q, lam_k, "2^s1 - 1 <= lambda(e_k)")
    hi = _le("B4", k, lam_k, L, "lambda(e_k) <= Lebesgue constant", ok)
    out.append(_all("B4", k, q, lam_k, [lo, hi], "lower bound at the next node",
                    sigma1=s.sigma1))

    l_odd = k >> p
    l_rep = cache.disc(l_odd)
    rhs5 = l2p * (l_rep.L if l_odd > 1 else 1.0)
    out.append(_le("B5", k, L, rhs5, "binary submultiplicativity L_{2^p l} <= L_{2^p} L_l",
                   ok and l2p_ok and _ok(l_rep), p=p, l=l_odd, L2p=l2p, L2p_source=l2p_src))

    core = math.sqrt((k >> p) * q) * l2p
    out.append(_le("B6", k, L, 3.0 * core, "divisibility-refined bound", ok and l2p_ok,
                   p=p, L2p=l2p, L2p_source=l2p_src))
    if s.sigma0 >= 5:
        out.append(_le("B7", k, L, float(k), "at least five zero bits gives L <= k", ok,
                       sigma0=s.sigma0))
    out.append(_le("B8", k, 1.0 + lam_k, 1.0 + core, "difference-operator norm bound",
                   l2p_ok, p=p, L2p=l2p, L2p_source=l2p_src))

    # seeded spot checks at random boundary points
    z = np.exp(2j * math.pi * rng.random(64))
    if k % 2 == 0:
        half = SectionEvaluator(leja_section(k // 2))
        full = SectionEvaluator(sec)
        lam_f, lam2_f = full.both(z)
        lam_h, lam2_h = half.both(z * z)
        err = float(np.max(np.abs(lam2_f - lam2_h)))
        out.append(_eq("S1", k, err, 0.0, 1e-10, "quadratic function halving identity",
                       severity=SPOT))
        out.append(_le("S2", k, float(np.max(lam_h - lam_f)), 1e-10,
                       "Lebesgue function monotone under halving", severity=SPOT))
    out.extend(_growth_check(k, leja_section(k + 1).nodes, z, leja=True))
    return out


def _growth_check(k: int, nodes: np.ndarray, z: np.ndarray, leja: bool) -> list[BoundCheck]:
    """``lambda_{Z_{k+1},2}(z) <= lambda_{Z_k,2}(z) + |L_k(z)| (lambda_{Z_k,2}(z_k) + 1)``.

    ``L_k(z) = w_{Z_k}(z) / w_{Z_k}(z_k)``.  For a Leja sequence ``|L_k| <= 1`` and
    the factor is dropped; R-Leja sequences lack that property, so there the
    factor is evaluated.
    """
    cur = SectionEvaluator(nodes[:k])
    nxt = SectionEvaluator(nodes[: k + 1])
    zk = nodes[k : k + 1]
    lam2_next_pt = float(cur.lam2(zk)[0])
    if leja:
        factor = 1.0
    else:
        factor = np.exp(cur.log_w(z) - cur.log_w(zk)[0])
    excess = nxt.lam2(z) - cur.lam2(z) - factor * (lam2_next_pt + 1.0)
    return [_le("S3", k, float(np.max(excess)), 1e-9, "quadratic function growth per step",
                severity=SPOT, leja_form=leja)]


def l2p_checks(pmax: int, cache: ReportCache) -> list[BoundCheck]:
    """Searched roots-of-unity constants against their closed forms."""
    out = []
    for p in range(pmax + 1):
        if p <= EXACT_L2P_MAX:
            value, _, ok = cache.l2p(p)
        else:
            res = sup_lebesgue(leja_section(1 << p), cache.cfg)
            value, ok = res.value, res.ok
        bound = roots_of_unity_bound(p)
        if p <= 1:
            out.append(_eq("L2P", 1 << p, value, bound, 1e-9, "roots-of-unity constant, exact",
                           ok, p=p))
        else:
            out.append(_le("L2P", 1 << p, value, bound, "roots-of-unity constant, log bound",
                           ok, p=p))
    return out


def check_disc_suite(kmax: int, cfg: SearchConfig | None = None, seed: int = 0,
                     cache: ReportCache | None = None) -> list[BoundCheck]:
    if not 1 <= kmax <= 1024:
        raise ValueError("kmax must be in [1, 1024]")
    cache = cache or ReportCache(cfg)
    rng = np.random.default_rng(seed)
    out = l2p_checks(kmax.bit_length() - 1, cache)
    for k in range(1, kmax + 1):
        out.extend(_disc_checks_for_k(k, cache, rng))
    return out


# --- interval suite ---------------------------------------------------------

def _interval_checks_for_k(k: int, cache: ReportCache, rng: np.random.Generator) -> list[BoundCheck]:
    n, l, _ = interval_indices(k)
    rep = cache.interval(k)
    ok = _ok(rep)
    L = rep.L
    out = []
    log2n = n * math.log(2.0)
    if l == 0:
        out.append(_le("R1", k, L, 1.0 + 2.0 / math.pi * log2n, "Gauss-Lobatto logarithmic bound",
                       ok, n=n))
    else:
        sl = binary_stats(l)
        l2p, src, l2p_ok = cache.l2p(sl.p)
        rhs2 = 6.0 * math.sqrt(5.0) * 2.0 ** (n + sl.sigma1 - sl.p) * l2p
        out.append(_le("R2", k, L, rhs2, "main bound for R-Leja sections", ok and l2p_ok,
                       n=n, l=l, p=sl.p, sigma1=sl.sigma1, L2p=l2p, L2p_source=src))
        rhs4 = 12.0 * math.sqrt(3.0) * 2.0 ** ((3 * n - 3 * sl.p + sl.sigma1) / 2.0) * l2p
        out.append(_le("R4", k, L, rhs4, "coarse bound for R-Leja sections", ok and l2p_ok,
                       n=n, l=l, p=sl.p, L2p=l2p, L2p_source=src))
        pf = n - sl.p  # smallest p >= 1 with 2^(n-p) dividing l
        rhs5 = 6.0 * math.sqrt(5.0) * 4.0 ** pf * 2.0 / math.pi * (log2n + 2.25)
        out.append(_le("R5", k, L, rhs5, "logarithmic family bound", ok, n=n, p=pf,
                       kprime=l >> sl.p))
    out.append(_le("R3", k, L, 8.0 * math.sqrt(2.0) * k * k, "quadratic bound 8 sqrt2 k^2", ok))

    if k & (k - 1) == 0:
        m = k.bit_length() - 1
        exact = _eq("R6", k, rep.lambda_at_next, float(k - 1), 1e-6,
                    "lambda(r_k) = k - 1 at k = 2^n")
        lower = _le("R6", k, float(k - 1), L, "Lebesgue constant at least k - 1", ok)
        out.append(_all("R6", k, L, float(k - 1), [exact, lower],
                        "lower bound for Gauss-Lobatto minus one abscissa", n=m))
        nxt = cache.interval(k + 1)
        dk = rep.D
        gl = 1.0 + 2.0 / math.pi * m * math.log(2.0)
        chain = gl + 2.0 ** (m + 1)
        parts = [
            _le("R9", k, L, chain, "L_{R_k} <= 1 + (2/pi) log 2^n + 2^{n+1}", ok),
            _le("R9", k, chain, 3.0 * k, "chain constant <= 3k"),
            _le("R9", k, L, nxt.L + dk, "L_{R_k} <= L_{R_{k+1}} + D_k", _ok(rep, nxt)),
        ]
        out.append(_all("R9", k, L, chain, parts, "3k bound at powers of two", n=m,
                        shifted_rhs=1.0 + 2.0 / math.pi * (m - 1) * math.log(2.0) + 2.0 ** m))

    out.append(_le("R7", k, L, 3.0 * k, "conjectured 3k growth", ok, severity=EXPLORATORY))

    nd = k.bit_length() - 1  # 2^nd <= k < 2^(nd+1)
    s = binary_stats(k)
    out.append(_le("R8", k, rep.D, 2.0 ** (s.sigma1 + nd), "difference-operator norm bound",
                   ok, n=nd, sigma1=s.sigma1))

    dn = diff_norm_interval(k, cache.cfg)
    w_ok = dn.search.ok
    if k == 2 << n:
        out.append(_le("R11", k, dn.sup_W, 2.0 ** (n + 3), "sup|W| bound at k = 2^(n+1)", w_ok,
                       n=n))
    else:
        out.append(_le("R11", k, dn.sup_W, 2.0 ** (2 * s.sigma1 + s.p - 1), "sup|W| bound",
                       w_ok, n=n, sigma1=s.sigma1, p=s.p))
    if k & (k - 1) == 0:
        out.append(_eq("BETA", k, dn.beta, 0.25, 1e-9, "beta equals 1/4 at powers of two"))
    else:
        out.append(_le("BETA", k, dn.beta, 2.0 ** (s.sigma0 - s.p - 1), "beta bound",
                       sigma0=s.sigma0, p=s.p))

    z = np.exp(2j * math.pi * rng.random(64)).real
    out.extend(_growth_check(k, project_from_disc(k + 1).nodes, z, leja=False))
    return out


def gamma_checks(mmax: int = 10) -> list[BoundCheck]:
    out = []
    for m in range(1, mmax + 1):
        for l in range(1, (1 << (m - 1)) + 1):
            s = binary_stats(l)
            out.append(_le("R10", (1 << m) + l, gamma(m, l), gamma_bound(l),
                           "gamma bound 5 / 2^(s1(l) + p(l) + 1)", m=m, l=l,
                           sigma1=s.sigma1, p=s.p))
    return out


def conjecture_status(checks: list[BoundCheck]) -> str:
    """Summary of the exploratory ``3k`` checks: ``holds up to K`` or the first violation."""
    r7 = sorted((c for c in checks if c.id == "R7"), key=lambda c: c.k)
    if not r7:
        return "not checked"
    bad = [c for c in r7 if c.status == FAIL]
    if bad:
        return f"violated at k={bad[0].k}"
    if any(c.status == INCONCLUSIVE for c in r7):
        return "inconclusive"
    return f"holds up to {r7[-1].k}"


def check_interval_suite(kmax: int, cfg: SearchConfig | None = None, seed: int = 0,
                         cache: ReportCache | None = None, mmax: int = 10) -> list[BoundCheck]:
    if not 2 <= kmax <= 1024:
        raise ValueError("kmax must be in [2, 1024]")
    cache = cache or ReportCache(cfg)
    rng = np.random.default_rng(seed)
    out = []
    for k in range(3, kmax + 1):
        out.extend(_interval_checks_for_k(k, cache, rng))
    out.extend(gamma_checks(mmax))
    return out


def suite_outcome(checks: list[BoundCheck]) -> str:
    """``fail`` if a non-exploratory check failed, else ``inconclusive`` if any was, else ``pass``."""
    decisive = [c for c in checks if c.severity != EXPLORATORY]
    if any(c.status == FAIL for c in decisive):
        return FAIL
    if any(c.status == INCONCLUSIVE for c in decisive):
        return INCONCLUSIVE
    return PASS


# --- figure -----------------------------------------------------------------

@dataclass
class FigureRow:
    k: int
    L_disc: float
    disc_estimate: float
    L_interval: float
    interval_estimate: float
    status: str


def figure_data(kmax: int, cfg: SearchConfig | None = None,
                cache: ReportCache | None = None) -> list[FigureRow]:
    """Lebesgue constants of both sequences next to ``3 sqrt(k(2^s1-1))`` and ``3k``."""
    if kmax < 3:
        raise ValueError("kmax must be >= 3")
    cache = cache or ReportCache(cfg)
    rows = []
    for k in range(1, kmax + 1):
        d, r = cache.disc(k), cache.interval(k)
        s = binary_stats(k)
        rows.append(FigureRow(k, d.L, 3.0 * math.sqrt(k * (2.0 ** s.sigma1 - 1.0)), r.L, 3.0 * k,
                              "ok" if _ok(d, r) else "inconclusive"))
    return rows
