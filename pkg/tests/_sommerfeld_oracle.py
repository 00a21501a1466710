"""Independent brute-force oracle for the layered-medium spectral integrals.

Integrates the raw folded integrands on [0, k1] + [k1, k2] + [k2, Xi] with
mpmath's tanh-sinh quadrature (which absorbs the inverse-square-root branch
singularities at the interval endpoints), plus an analytic bound for the
dropped tail.  No variable substitutions, no Gauss panels: a genuinely
different evaluation path from the library under test.  Slow; use on a
handful of points only.
"""

import mpmath as mp


def _beta(xi, k):
    if abs(xi) < k:
        return mp.sqrt(k * k - xi * xi)
    return mp.mpc(0, 1) * mp.sqrt(xi * xi - k * k)


def _fold_quad(f, k1, k2, xi_max, dps):
    pts = sorted({mp.mpf(0), mp.mpf(min(k1, k2)), mp.mpf(max(k1, k2)), mp.mpf(xi_max)})
    with mp.workdps(dps):
        total = mp.mpc(0)
        for a, b in zip(pts[:-1], pts[1:]):
            total += mp.quad(f, [a, b])
    return complex(total)


def psi_reflection_oracle(d, h, ka, kb, xi_max=None, dps=30):
    """Same-side reflected part: (i/2pi) int (ba-bb)/((ba+bb) ba) e^{i ba h} cos(xi d)."""
    if xi_max is None:
        xi_max = max(ka, kb) + 60.0 / h

    def f(xi):
        ba = _beta(xi, ka)
        bb = _beta(xi, kb)
        return (ba - bb) / (ba + bb) / ba * mp.exp(1j * ba * h) * mp.cos(xi * d)

    return complex(mp.mpc(0, 1) / (2 * mp.pi)) * _fold_quad(f, ka, kb, xi_max, dps)


def psi_transmission_oracle(d, ha, hb, ka, kb, xi_max=None, dps=30):
    """Cross-side transmitted field: (i/pi) int e^{i(ba ha + bb hb)}/(ba+bb) cos(xi d)."""
    if xi_max is None:
        xi_max = max(ka, kb) + 60.0 / (ha + hb)

    def f(xi):
        ba = _beta(xi, ka)
        bb = _beta(xi, kb)
        return mp.exp(1j * (ba * ha + bb * hb)) / (ba + bb) * mp.cos(xi * d)

    return complex(mp.mpc(0, 1) / mp.pi) * _fold_quad(f, ka, kb, xi_max, dps)
