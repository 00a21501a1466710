"""Slow, high-precision Bessel/Hankel oracle used only by the test suite.

Everything here is computed from the ascending power series in mpmath
arbitrary-precision arithmetic, independently of the fast implementation
under test.  The series cancels like e^{2x}, so the working precision and
term count scale with the argument; the oracle is limited to x <= 300
(large arguments are checked in the tests against the leading-order
asymptotic form instead).
"""

import mpmath as mp

_EULER = mp.euler
ORACLE_MAX_X = 300.0


def _dps_for(x):
    return 60 + int(0.9 * float(x))


def _nterms_for(x):
    return 80 + int(3.0 * float(x))


def j0_series(x, nterms):
    q = mp.mpf(x) ** 2 / 4
    term = mp.mpf(1)
    s = term
    for k in range(1, nterms):
        term = -term * q / k**2
        s += term
    return s


def y0_series(x, nterms):
    x = mp.mpf(x)
    q = x**2 / 4
    term = mp.mpf(1)
    s = mp.mpf(0)
    h = mp.mpf(0)
    for k in range(1, nterms):
        term = -term * q / k**2
        h += mp.mpf(1) / k
        s -= h * term
    return (2 / mp.pi) * ((mp.log(x / 2) + _EULER) * j0_series(x, nterms) + s)


def j1_series(x, nterms):
    x = mp.mpf(x)
    q = x**2 / 4
    term = x / 2
    s = term
    for k in range(1, nterms):
        term = -term * q / (k * (k + 1))
        s += term
    return s


def y1_series(x, nterms):
    x = mp.mpf(x)
    q = x**2 / 4
    term = x / 2
    s = (-2 * _EULER + 1) * term
    hk = mp.mpf(0)
    hk1 = mp.mpf(1)
    for k in range(1, nterms):
        term = -term * q / (k * (k + 1))
        hk += mp.mpf(1) / k
        hk1 += mp.mpf(1) / (k + 1)
        s += (-2 * _EULER + hk + hk1) * term
    return (2 / mp.pi) * mp.log(x / 2) * j1_series(x, nterms) - (2 / (mp.pi * x)) - s / mp.pi


def hankel1_0_oracle(x):
    """H0^(1)(x) as an mpmath complex from the series; x <= 300."""
    if x > ORACLE_MAX_X:
        raise ValueError("series oracle limited to x <= 300")
    with mp.workdps(_dps_for(x)):
        n = _nterms_for(x)
        return mp.mpc(j0_series(x, n), y0_series(x, n))


def hankel1_1_oracle(x):
    """H1^(1)(x) as an mpmath complex from the series; x <= 300."""
    if x > ORACLE_MAX_X:
        raise ValueError("series oracle limited to x <= 300")
    with mp.workdps(_dps_for(x)):
        n = _nterms_for(x)
        return mp.mpc(j1_series(x, n), y1_series(x, n))
