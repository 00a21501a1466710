"""Two-layer background Green's function G0 and its gradient, evaluated by
branch-aware Sommerfeld integrals.

The medium has wavenumber k1 above the flat interface {x2 = 0} and k2 below
it.  With beta_j(xi) = sqrt(kj^2 - xi^2) on the radiation branch
(Re >= 0, Im >= 0), the spectral representations fold onto [0, inf):

  same side s (field and source on side s, ka = k_s, kb = other):
      G0 = Phi_{ka}(|x - y|) + PsiR(d, h)
      PsiR = (i/2pi) * int (ka^2-kb^2)/(ba+bb)^2 / ba * e^{i ba h} cos(xi d) dxi
      with d = x1 - y1 and h = |x2| + |y2|
  opposite sides (source side a, field side b):
      G0 = PsiT(d, ha, hb)
      PsiT = (i/pi) * int e^{i(ba ha + bb hb)}/(ba+bb) * cos(xi d) dxi
      with ha = |y2|, hb = |x2|

The quotient (ba-bb)/(ba+bb) is evaluated as (ka^2-kb^2)/(ba+bb)^2, which is
exact (difference of squares) and avoids cancellation at large xi.

Quadrature: the half-line is split at the branch points k_lo and k_hi.  On
each piece a sine or cosh substitution makes the integrand analytic
(beta = k cos(u) or i k sinh(u) exactly), so composite Gauss-Legendre panels
converge spectrally; panels are doubled per segment until the probe
integrals settle to tolerance.  The tail beyond xi_max decays like
e^{-s h_eff}; xi_max is placed where that envelope reaches e^{-decay_cutoff}
(capped, with the remainder added to the error estimate).

Rules are shared: a rule built for the worst (largest |d|, smallest height)
member of a batch is valid for the whole batch, and identical height pairs
share the spectral factor, which is what makes dense pairwise assembly and
sampling-grid sweeps affordable.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .errors import AccuracyError, SingularityError
from . import specfun

__all__ = ["beta", "WaveNumbers", "SommerfeldConfig", "LayeredGreens"]


def beta(xi, kappa):
    """Vertical spectral wavenumber on the radiation branch.

    beta = sqrt(kappa^2 - xi^2) for |xi| < kappa, i*sqrt(xi^2 - kappa^2)
    otherwise; Re(beta) >= 0 and Im(beta) >= 0, beta(kappa) = 0.
    """
    xia = np.asarray(xi, dtype=float)
    diff = kappa * kappa - xia * xia
    out = np.where(
        diff >= 0.0,
        np.sqrt(np.maximum(diff, 0.0)) + 0.0j,
        1j * np.sqrt(np.maximum(-diff, 0.0)),
    )
    return complex(out) if np.ndim(xi) == 0 else out


@dataclass(frozen=True)
class WaveNumbers:
    """Wavenumbers of the upper (k1) and lower (k2) half-plane."""

    k1: float = 1.0
    k2: float = 2.0

    def __post_init__(self):
        if self.k1 <= 0 or self.k2 <= 0:
            raise ValueError("wavenumbers must be positive")

    @property
    def eta(self):
        """Contrast k1^2 - k2^2 driving the difference formulation."""
        return self.k1**2 - self.k2**2

    def side_of(self, x2):
        """+1 for the upper half-plane (x2 >= 0), -1 below."""
        return np.where(np.asarray(x2) >= 0.0, 1, -1)

    def kappa_of_side(self, side):
        return self.k1 if side > 0 else self.k2


@dataclass(frozen=True)
class SommerfeldConfig:
    """Accuracy and truncation knobs for the spectral quadrature."""

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    xi_max_cap: float = 6000.0
    branch_split_pad: float = 0.5  # split position between the branch points
    max_subdivisions: int = 14
    decay_cutoff: float = 36.0  # tail dropped once e^{-s h} < e^{-cutoff}
    gl_order: int = 16

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if not 0.05 <= self.branch_split_pad <= 0.95:
            raise ValueError("branch_split_pad must lie in (0.05, 0.95)")


# ---------------------------------------------------------------------------
# quadrature rule construction
# ---------------------------------------------------------------------------
class _Segment:
    """One substituted piece of the half-line with its own panel count.

    The segment reports both vertical wavenumbers analytically in the
    substitution variable: the branch whose point sits at a segment
    endpoint is kref*cos(u) or i*kref*sinh(u) exactly, and the other one
    is assembled from sums of positive quantities.  Forming beta from the
    raw sqrt(k^2 - xi^2) would lose all precision next to the branch
    points and put a ~1e-12 noise floor under the whole rule.
    """

    def __init__(self, kind, kref, kother, u0, u1, panels):
        self.kind = kind  # "sin" or "cosh"
        self.kref = kref
        self.kother = kother
        self.u0 = u0
        self.u1 = u1
        self.panels = max(1, panels)

    def nodes(self, gl_x, gl_w):
        edges = np.linspace(self.u0, self.u1, self.panels + 1)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        u = (mid[:, None] + half[:, None] * gl_x[None, :]).ravel()
        w = (half[:, None] * gl_w[None, :]).ravel()
        kr, ko = self.kref, self.kother
        gap = ko * ko - kr * kr  # sign tells which branch point is nearer
        if self.kind == "sin":
            s, c = np.sin(u), np.cos(u)
            xi = kr * s
            jac = kr * c
            b_ref = kr * c + 0.0j
            if abs(gap) < 1e-14 * kr * kr:
                b_oth = b_ref
            elif gap > 0:  # kref = k_lo: other branch still propagating
                b_oth = np.sqrt(gap + (kr * c) ** 2) + 0.0j
            else:  # kref = k_hi: other branch evanescent on (xi_mid, k_hi)
                b_oth = 1j * np.sqrt(np.maximum(-gap - (kr * c) ** 2, 0.0))
        else:
            sh, ch = np.sinh(u), np.cosh(u)
            xi = kr * ch
            jac = kr * sh
            b_ref = 1j * kr * sh
            if abs(gap) < 1e-14 * kr * kr:
                b_oth = b_ref
            elif gap > 0:  # kref = k_lo, xi <= xi_mid < k_hi
                b_oth = np.sqrt(np.maximum(gap - (kr * sh) ** 2, 0.0)) + 0.0j
            else:  # kref = k_hi, xi >= k_hi > k_lo
                b_oth = 1j * np.sqrt(-gap + (kr * sh) ** 2)
        b_lo = b_ref if kr <= ko else b_oth
        b_hi = b_oth if kr <= ko else b_ref
        return xi, w * jac, b_lo, b_hi


@dataclass
class _Rule:
    """Concatenated quadrature nodes, weights and analytic branch values."""

    xi: np.ndarray
    w: np.ndarray
    b_lo: np.ndarray
    b_hi: np.ndarray
    err_est: float
    tail_bound: float

    def betas(self, ka, kb):
        """(beta_a, beta_b) matching the (ka, kb) ordering of a family."""
        if ka <= kb:
            return self.b_lo, self.b_hi
        return self.b_hi, self.b_lo


def _probe_sums(xi, w, f, d_probes):
    """Weighted integrals and the absolute mass sum for the noise floor."""
    fw = f * w
    vals = np.array([np.sum(fw * np.cos(xi * d)) for d in d_probes])
    return vals, float(np.sum(np.abs(fw)))


class _RuleBuilder:
    """Adaptive panel-doubling on the substituted segments."""

    def __init__(self, config):
        self.cfg = config
        self.gl_x, self.gl_w = np.polynomial.legendre.leggauss(config.gl_order)

    def xi_max_for(self, k_hi, h_decay):
        cfg = self.cfg
        s_cut = cfg.decay_cutoff / max(h_decay, 1e-300)
        xi_max = float(np.hypot(k_hi, s_cut))
        capped = xi_max > cfg.xi_max_cap
        return (cfg.xi_max_cap if capped else xi_max), capped

    def segments(self, k_lo, k_hi, xi_max, d_max, h_phase):
        cfg = self.cfg
        per = 6.0 * np.pi  # target phase per initial panel (~3 periods)

        def count(phase):
            return int(np.ceil(phase / per)) + 2

        segs = [
            _Segment("sin", k_lo, 0.0, 0.5 * np.pi, count(k_lo * d_max + k_hi * h_phase))
        ]
        if k_hi > k_lo * (1.0 + 1e-12):
            xi_mid = k_lo + cfg.branch_split_pad * (k_hi - k_lo)
            u2 = float(np.arccosh(xi_mid / k_lo))
            segs.append(
                _Segment("cosh", k_lo, 0.0, u2, count((xi_mid - k_lo) * d_max + k_hi * h_phase))
            )
            u3 = float(np.arcsin(min(xi_mid / k_hi, 1.0)))
            segs.append(
                _Segment("sin", k_hi, u3, 0.5 * np.pi, count((k_hi - xi_mid) * d_max + k_hi * h_phase))
            )
        if xi_max > k_hi * (1.0 + 1e-12):
            u4 = float(np.arccosh(xi_max / k_hi))
            segs.append(
                _Segment("cosh", k_hi, 0.0, u4, count((xi_max - k_hi) * d_max + cfg.decay_cutoff))
            )
        return segs

    def build(self, factor_fn, k_lo, k_hi, h_decay, h_phase, d_max):
        """Refine segments until the probe integrals converge.

        factor_fn(xi) must evaluate the d-independent spectral factor for
        the hardest (slowest-decaying) member of the intended batch.
        """
        cfg = self.cfg
        xi_max, capped = self.xi_max_for(k_hi, h_decay)
        segs = self.segments(k_lo, k_hi, xi_max, d_max, h_phase)
        d_probes = np.array([0.0, 0.37 * d_max, d_max]) if d_max > 0 else np.array([0.0])

        with np.errstate(under="ignore"):
            vals = []
            for s in segs:
                xi, w = s.nodes(self.gl_x, self.gl_w)
                vals.append(_probe_integrals(xi, w, factor_fn, d_probes))
            seg_err = [np.inf] * len(segs)
            total = np.sum(vals, axis=0)

            for _ in range(cfg.max_subdivisions):
                scale = max(np.max(np.abs(total)), cfg.abs_tol / cfg.rel_tol)
                tol_seg = max(cfg.abs_tol, cfg.rel_tol * scale) / (2.0 * len(segs))
                pending = [i for i in range(len(segs)) if seg_err[i] > tol_seg]
                if not pending:
                    break
                for i in pending:
                    segs[i].panels *= 2
                    xi, w = segs[i].nodes(self.gl_x, self.gl_w)
                    new = _probe_integrals(xi, w, factor_fn, d_probes)
                    seg_err[i] = float(np.max(np.abs(new - vals[i])))
                    vals[i] = new
                total = np.sum(vals, axis=0)

            # tail: |F(xi_max)| * int e^{-h(s - s0)} dxi <= |F(xi_max)|/h
            tail = float(np.abs(factor_fn(np.array([xi_max])))[0]) / max(h_decay, 1e-300)

        scale = max(np.max(np.abs(total)), cfg.abs_tol / cfg.rel_tol)
        err = float(np.sum([e for e in seg_err if np.isfinite(e)])) + tail
        if err > max(cfg.abs_tol, cfg.rel_tol * scale) * 4.0:
            raise AccuracyError(
                f"Sommerfeld quadrature did not reach tolerance "
                f"(achieved ~{err:.2e}, requested rel {cfg.rel_tol:.1e}"
                f"{', xi_max capped' if capped else ''})",
                achieved=err,
                requested=cfg.rel_tol * scale,
            )

        xi_all, w_all = [], []
        for s in segs:
            xi, w = s.nodes(self.gl_x, self.gl_w)
            xi_all.append(xi)
            w_all.append(w)
        return _Rule(np.concatenate(xi_all), np.concatenate(w_all), err, tail)


# ---------------------------------------------------------------------------
# spectral factors
# ---------------------------------------------------------------------------
def _factor_reflection(xi, ka, kb, h):
    ba = beta(xi, ka)
    bb = beta(xi, kb)
    return (0.5j / np.pi) * (ka * ka - kb * kb) / ((ba + bb) ** 2 * ba) * np.exp(1j * ba * h)


def _factor_transmission(xi, ka, kb, ha, hb):
    ba = beta(xi, ka)
    bb = beta(xi, kb)
    return (1j / np.pi) * np.exp(1j * (ba * ha + bb * hb)) / (ba + bb)


_EVAL_CHUNK = 2_000_000  # max nodes x items entries touched at once


def _sweep(xi, wf, d, kind="val"):
    """sum_q wf_q cos(xi_q d_i) (or the -xi sin variant) over an offset array."""
    d = np.asarray(d, dtype=float)
    out = np.empty(d.shape, dtype=complex)
    flat = d.ravel()
    step = max(1, _EVAL_CHUNK // max(len(xi), 1))
    for i0 in range(0, len(flat), step):
        blk = flat[i0 : i0 + step]
        arg = blk[:, None] * xi[None, :]
        if kind == "val":
            out.ravel()[i0 : i0 + step] = np.cos(arg) @ wf
        else:  # d/d(x1): derivative of cos(xi(x1-y1)) wrt x1
            out.ravel()[i0 : i0 + step] = -(np.sin(arg) * xi[None, :]) @ wf
    return out


@dataclass
class SpectralProfile:
    """Quadrature rule with the spectral factor frozen at fixed heights.

    Evaluating along an array of horizontal offsets d = x1 - y1 is then a
    single weighted cosine sum, which is how measurement-line and
    sampling-grid sweeps stay cheap.
    """

    xi: np.ndarray
    wf: np.ndarray  # w * factor(xi), complex
    beta_a: np.ndarray
    beta_b: np.ndarray
    err_est: float

    def values(self, d):
        return _sweep(self.xi, self.wf, d)

    def deriv_x1(self, d):
        """Derivative with respect to the first point's x1 (d = x1 - y1)."""
        return _sweep(self.xi, self.wf, d, kind="dx1")

    def deriv_ha(self, d):
        """Derivative with respect to the source-side height argument."""
        return _sweep(self.xi, self.wf * (1j * self.beta_a), d)

    def deriv_hb(self, d):
        """Derivative with respect to the field-side height argument."""
        return _sweep(self.xi, self.wf * (1j * self.beta_b), d)


class LayeredGreens:
    """Evaluator for G0, its scattered part, and its gradient.

    Immutable after construction apart from an internal rule/profile cache
    (guarded by a lock); concurrent evaluation is safe.
    """

    def __init__(self, wavenumbers, config=None, cache=True):
        self.wn = wavenumbers if isinstance(wavenumbers, WaveNumbers) else WaveNumbers(*wavenumbers)
        self.config = config or SommerfeldConfig()
        self._builder = _RuleBuilder(self.config)
        self._cache_enabled = bool(cache)
        self._cache = {}
        self._lock = threading.Lock()

    # -- rule/profile management -------------------------------------------
    @staticmethod
    def _d_bucket(d_max):
        """Quantize d_max so sweeps with similar extent share one rule."""
        if d_max <= 1e-12:
            return 0.0
        return float(2.0 ** np.ceil(np.log2(d_max)))

    def _kappas(self, side):
        ka = self.wn.kappa_of_side(side)
        kb = self.wn.kappa_of_side(-side)
        return ka, kb

    def _rule(self, family, side, h_decay, h_phase, d_max, factor_fn):
        key = (family, side, float(h_decay), float(h_phase), self._d_bucket(d_max))
        if self._cache_enabled:
            with self._lock:
                hit = self._cache.get(key)
            if hit is not None:
                return hit
        ka, kb = self._kappas(side)
        rule = self._builder.build(
            factor_fn, min(ka, kb), max(ka, kb), h_decay, h_phase, self._d_bucket(d_max)
        )
        if self._cache_enabled:
            with self._lock:
                self._cache[key] = rule
        return rule

    def clear_cache(self):
        with self._lock:
            self._cache.clear()

    # -- profiles (fixed heights, swept over d) ------------------------------
    def reflection_profile(self, side, h, d_max):
        """Profile of the same-side reflected part PsiR at total height h."""
        if h <= 0:
            raise ValueError("reflection profile needs h = |x2| + |y2| > 0")
        ka, kb = self._kappas(side)
        fac = lambda xi: _factor_reflection(xi, ka, kb, h)
        rule = self._rule("R", side, h, h, d_max, fac)
        with np.errstate(under="ignore"):
            return SpectralProfile(
                rule.xi, rule.w * fac(rule.xi), beta(rule.xi, ka), beta(rule.xi, kb), rule.err_est
            )

    def transmission_profile(self, source_side, h_source, h_field, d_max):
        """Profile of the cross-side transmitted field PsiT.

        h_source = |y2| (side source_side), h_field = |x2| (opposite side).
        """
        if h_source < 0 or h_field < 0 or h_source + h_field <= 0:
            raise ValueError("transmission profile needs nonnegative heights, not both zero")
        ka, kb = self._kappas(source_side)
        fac = lambda xi: _factor_transmission(xi, ka, kb, h_source, h_field)
        rule = self._rule(
            "T", source_side, h_source + h_field, h_source + h_field, d_max, fac
        )
        with np.errstate(under="ignore"):
            return SpectralProfile(
                rule.xi, rule.w * fac(rule.xi), beta(rule.xi, ka), beta(rule.xi, kb), rule.err_est
            )

    # -- batched pairwise evaluation -----------------------------------------
    def _family_batch(self, family, side, d, ha, hb, weights=("val",)):
        """Evaluate PsiR/PsiT and requested derivative weights pointwise.

        d, ha, hb: equal-length 1-D arrays (for "R", the total height is
        ha + hb).  Returns {weight: values}.  Heights are bucketed by
        octave so shallow (slowly decaying) members do not inflate the
        rule used for everyone, and identical height pairs share the
        spectral factor.
        """
        d = np.asarray(d, dtype=float)
        ha = np.broadcast_to(np.asarray(ha, dtype=float), d.shape).copy()
        hb = np.broadcast_to(np.asarray(hb, dtype=float), d.shape).copy()
        out = {k: np.empty(d.shape, dtype=complex) for k in weights}
        if d.size == 0:
            return out
        h_eff = ha + hb
        if np.any(h_eff <= 0):
            raise ValueError("effective height must be positive for spectral evaluation")

        ka, kb = self._kappas(side)
        octave = np.floor(np.log2(h_eff)).astype(int)
        with np.errstate(under="ignore"):
            for oc in np.unique(octave):
                sel = np.nonzero(octave == oc)[0]
                h_min = float(h_eff[sel].min())
                h_max = float(h_eff[sel].max())
                d_max = float(np.max(np.abs(d[sel])))
                if family == "R":
                    fac_probe = lambda xi: _factor_reflection(xi, ka, kb, h_min)
                else:
                    has = ha[sel]
                    i_min = int(np.argmin(h_eff[sel]))
                    fac_probe = lambda xi: _factor_transmission(
                        xi, ka, kb, float(has[i_min]), float(hb[sel][i_min])
                    )
                rule = self._rule(family, side, h_min, h_max, d_max, fac_probe)
                self._eval_classes(family, ka, kb, rule, d, ha, hb, sel, out, weights)
        return out

    def _eval_classes(self, family, ka, kb, rule, d, ha, hb, sel, out, weights):
        """Group identical (ha, hb) pairs so the factor is computed once."""
        xi, w = rule.xi, rule.w
        ba = beta(xi, ka)
        bb = beta(xi, kb)
        pairs = np.stack([ha[sel], hb[sel]], axis=1)
        uniq, inv = np.unique(pairs, axis=0, return_inverse=True)
        for ci in range(len(uniq)):
            items = sel[inv == ci]
            h_a, h_b = uniq[ci]
            if family == "R":
                f = _factor_reflection(xi, ka, kb, h_a + h_b)
            else:
                f = _factor_transmission(xi, ka, kb, h_a, h_b)
            wf = w * f
            for kind in weights:
                if kind == "val":
                    out[kind][items] = _sweep(xi, wf, d[items])
                elif kind == "dx1":
                    out[kind][items] = _sweep(xi, wf, d[items], kind="dx1")
                elif kind == "dha":
                    out[kind][items] = _sweep(xi, wf * (1j * ba), d[items])
                elif kind == "dhb":
                    out[kind][items] = _sweep(xi, wf * (1j * bb), d[items])
                else:
                    raise ValueError(f"unknown weight kind {kind!r}")

    # -- public pointwise API -------------------------------------------------
    @staticmethod
    def _split(x, y):
        xa = np.asarray(x, dtype=float).reshape(-1, 2)
        ya = np.asarray(y, dtype=float).reshape(-1, 2)
        n = max(len(xa), len(ya))
        xa = np.broadcast_to(xa, (n, 2))
        ya = np.broadcast_to(ya, (n, 2))
        return xa, ya

    def psi1(self, x, y):
        """Reflected part for field and source both in the upper half-plane."""
        xa, ya = self._split(x, y)
        if np.any(xa[:, 1] <= 0) or np.any(ya[:, 1] <= 0):
            raise ValueError("psi1 requires x2 > 0 and y2 > 0")
        res = self._family_batch("R", +1, xa[:, 0] - ya[:, 0], xa[:, 1], ya[:, 1])["val"]
        return complex(res[0]) if res.size == 1 and np.ndim(x) == 1 else res

    def psi2(self, x, y):
        """Transmitted field: source y in the upper, field x in the lower plane."""
        xa, ya = self._split(x, y)
        if np.any(xa[:, 1] >= 0) or np.any(ya[:, 1] <= 0):
            raise ValueError("psi2 requires x2 < 0 and y2 > 0")
        res = self._family_batch(
            "T", +1, xa[:, 0] - ya[:, 0], ya[:, 1], -xa[:, 1]
        )["val"]
        return complex(res[0]) if res.size == 1 and np.ndim(x) == 1 else res

    def _g0_flat(self, xa, ya, want_grad=False):
        """Pairwise G0 over pre-flattened equal-length point arrays."""
        d = xa[:, 0] - ya[:, 0]
        r = np.linalg.norm(xa - ya, axis=1)
        side_x = np.where(xa[:, 1] >= 0.0, 1, -1)
        side_y = np.where(ya[:, 1] >= 0.0, 1, -1)
        same = side_x == side_y
        if np.any(same & (r < 1e-12)):
            raise SingularityError("G0 evaluated at coincident points")

        val = np.empty(len(xa), dtype=complex)
        grad = np.empty((len(xa), 2), dtype=complex) if want_grad else None
        weights = ("val", "dx1", "dhb") if want_grad else ("val",)
        hx = np.abs(xa[:, 1])
        hy = np.abs(ya[:, 1])

        for side in (+1, -1):
            m = same & (side_x == side)
            if np.any(m):
                kap = self.wn.kappa_of_side(side)
                res = self._family_batch("R", side, d[m], hx[m], hy[m], weights)
                val[m] = specfun.phi(xa[m], ya[m], kap) + res["val"]
                if want_grad:
                    g = specfun.grad_phi(xa[m], ya[m], kap)
                    grad[m, 0] = g[:, 0] + res["dx1"]
                    # reflection height is |x2| + |y2|; chain rule in x2
                    grad[m, 1] = g[:, 1] + side * res["dhb"]
        for side in (+1, -1):
            # source y on `side`, field x on the opposite side
            m = (~same) & (side_y == side)
            if np.any(m):
                res = self._family_batch("T", side, d[m], hy[m], hx[m], weights)
                val[m] = res["val"]
                if want_grad:
                    grad[m, 0] = res["dx1"]
                    grad[m, 1] = -side * res["dhb"]
        return (val, grad) if want_grad else val

    def g0(self, x, y):
        """Full two-layer fundamental solution G0(x, y), any side combination.

        Points exactly on the interface are treated as upper-side limits
        (G0 is continuous across x2 = 0).
        """
        xa, ya = self._split(x, y)
        res = self._g0_flat(xa, ya)
        return complex(res[0]) if res.size == 1 and np.ndim(x) == 1 else res

    def g0_scattered(self, x, y):
        """G0^s = G0 - Phi_{k1}: the background response to an upper source."""
        xa, ya = self._split(x, y)
        if np.any(ya[:, 1] <= 0):
            raise ValueError("g0_scattered requires the source in the upper half-plane")
        upper = xa[:, 1] >= 0.0
        out = np.empty(len(xa), dtype=complex)
        if np.any(upper):
            out[upper] = self._family_batch(
                "R", +1, xa[upper, 0] - ya[upper, 0], xa[upper, 1], ya[upper, 1]
            )["val"]
        low = ~upper
        if np.any(low):
            out[low] = self._family_batch(
                "T", +1, xa[low, 0] - ya[low, 0], ya[low, 1], -xa[low, 1]
            )["val"] - specfun.phi(xa[low], ya[low], self.wn.k1)
        return complex(out[0]) if out.size == 1 and np.ndim(x) == 1 else out

    def grad_g0(self, x, y):
        """Gradient of G0 with respect to the field point x, shape (..., 2)."""
        xa, ya = self._split(x, y)
        _, grad = self._g0_flat(xa, ya, want_grad=True)
        return grad[0] if len(grad) == 1 and np.ndim(x) == 1 else grad

    # -- pairwise blocks ------------------------------------------------------
    def g0_block(self, x_pts, y_pts):
        """Matrix G0(x_i, y_j), shape (len(x_pts), len(y_pts))."""
        xa = np.asarray(x_pts, dtype=float).reshape(-1, 2)
        ya = np.asarray(y_pts, dtype=float).reshape(-1, 2)
        xi = np.repeat(xa, len(ya), axis=0)
        yi = np.tile(ya, (len(xa), 1))
        return self._g0_flat(xi, yi).reshape(len(xa), len(ya))

    def grad1_g0_block(self, x_pts, y_pts):
        """Gradient w.r.t. the first argument, shape (len(x), len(y), 2)."""
        xa = np.asarray(x_pts, dtype=float).reshape(-1, 2)
        ya = np.asarray(y_pts, dtype=float).reshape(-1, 2)
        xi = np.repeat(xa, len(ya), axis=0)
        yi = np.tile(ya, (len(xa), 1))
        _, grad = self._g0_flat(xi, yi, want_grad=True)
        return grad.reshape(len(xa), len(ya), 2)

    def g0_scattered_block(self, x_pts, y_pts):
        """Matrix G0^s(x_i, y_j) for upper-half-plane sources y_j."""
        xa = np.asarray(x_pts, dtype=float).reshape(-1, 2)
        ya = np.asarray(y_pts, dtype=float).reshape(-1, 2)
        xi = np.repeat(xa, len(ya), axis=0)
        yi = np.tile(ya, (len(xa), 1))
        return self.g0_scattered(xi, yi).reshape(len(xa), len(ya))
