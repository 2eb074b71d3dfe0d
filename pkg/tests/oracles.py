"""Independent oracles for test expectations.

These deliberately avoid the library's code paths: extended-precision
special functions via mpmath, and a plain bisection root finder. The
frozen literals in the test modules were produced by these oracles; the
checks in test_oracles keep the chain honest.
"""

import mpmath as mp

mp.mp.dps = 40


def mp_normal_cdf(y) -> float:
    return float(mp.ncdf(mp.mpf(y)))


def mp_log_normal_sf(y) -> float:
    return float(mp.log(mp.ncdf(-mp.mpf(y))))


def mp_normal_pdf(y) -> float:
    return float(mp.npdf(mp.mpf(y)))


def mp_reg_inc_beta(x, a, b) -> float:
    return float(mp.betainc(mp.mpf(a), mp.mpf(b), 0, mp.mpf(x), regularized=True))


def mp_log_reg_inc_beta(x, a, b) -> float:
    return float(mp.log(mp.betainc(mp.mpf(a), mp.mpf(b), 0, mp.mpf(x), regularized=True)))


def mp_steutel_normal(y) -> float:
    y = mp.mpf(y)
    return float(-(mp.log(2) + mp.log(mp.ncdf(-y))) / (y * mp.log(y)))


def mp_quad(fn, lo, hi) -> float:
    return float(mp.quad(fn, [lo, hi]))


def bisect(fn, lo, hi, iters=100):
    """Plain bisection, the reference for the packaged root finder."""
    f_lo = fn(lo)
    assert f_lo * fn(hi) <= 0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_lo * f_mid <= 0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)
