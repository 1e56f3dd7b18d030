"""Complex Gamma function and the Gauss hypergeometric function at unit argument.

Values are plain Python ``complex`` numbers. ``ln_gamma`` uses a Lanczos
approximation (g = 607/128, 15 terms) on the right half plane and the
reflection formula on the left one.
"""

import cmath
import math

import numpy as np

from .errors import DomainError, PoleError

__all__ = ["POLE_TOL", "ln_gamma", "gamma", "is_gamma_pole", "gauss_2f1_unit",
           "hyp2f1_partial_sum"]

POLE_TOL = 1e-12

_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEFFS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)


def _check_finite(z):
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z!r}")


def is_gamma_pole(z, tol=POLE_TOL):
    """True when ``z`` lies within ``tol`` of 0, -1, -2, ..."""
    z = complex(z)
    if z.real > tol:
        return False
    n = round(z.real)
    return abs(z - n) <= tol


def _wrap_phase(w):
    # principal value: Im in (-pi, pi]
    im = math.remainder(w.imag, 2.0 * math.pi)
    if im == -math.pi:
        im = math.pi
    return complex(w.real, im)


def _ln_gamma_right(z):
    # Re z >= 0.5
    zm1 = z - 1.0
    coeffs = _LANCZOS_COEFFS
    acc = complex(coeffs[0])
    for k in range(1, len(coeffs)):
        acc += coeffs[k] / (zm1 + k)
    t = zm1 + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (zm1 + 0.5) * cmath.log(t) - t + cmath.log(acc)


def _log_sin_pi(z):
    """Some branch of log(sin(pi z)), stable for large |Im z|."""
    n = round(z.real)
    w = z - n  # exact shift; sin(pi z) = (-1)^n sin(pi w)
    sign_term = 1j * math.pi if n % 2 else 0.0
    if abs(w.imag) < 5.0:
        return cmath.log(cmath.sin(math.pi * w)) + sign_term
    if w.imag > 0:
        # sin(pi w) = (i/2) e^{-i pi w} (1 - e^{2 i pi w})
        tail = cmath.exp(2j * math.pi * w)
        return (-1j * math.pi * w + complex(-math.log(2.0), math.pi / 2)
                + cmath.log(1.0 - tail) + sign_term)
    return _log_sin_pi(w.conjugate()).conjugate() + sign_term


def ln_gamma(z):
    """Principal value of ``log(Gamma(z))`` for complex ``z``.

    The imaginary part is reduced to (-pi, pi], so ``exp(ln_gamma(z))`` is
    Gamma(z) and sums of several values may be exponentiated safely.

    Raises
    ------
    PoleError
        If ``z`` is within ``POLE_TOL`` of a non-positive integer.
    """
    z = complex(z)
    _check_finite(z)
    if is_gamma_pole(z):
        raise PoleError(f"Gamma has a pole at {z!r}")
    if z.real >= 0.5:
        return _wrap_phase(_ln_gamma_right(z))
    # reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    w = _LOG_PI - _log_sin_pi(z) - _ln_gamma_right(1.0 - z)
    return _wrap_phase(w)


def gamma(z):
    """Complex Gamma function, ``exp(ln_gamma(z))``."""
    return cmath.exp(ln_gamma(z))


def gauss_2f1_unit(a, b, c):
    """Evaluate 2F1(a, b; c; 1) with Gauss's summation theorem.

    ``Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))``. A pole of either
    denominator Gamma gives exactly ``0``, which is the analytic limit.
    Purely real parameters yield a result with zero imaginary part.
    """
    a, b, c = complex(a), complex(b), complex(c)
    s = c - a - b
    if not s.real > 0.0:
        raise DomainError(f"Gauss theorem needs Re(c - a - b) > 0, got {s.real!r}")
    if is_gamma_pole(c):
        raise PoleError(f"Gamma(c) has a pole at c = {c!r}")
    if is_gamma_pole(c - a) or is_gamma_pole(c - b):
        return 0j
    log_val = ln_gamma(c) + ln_gamma(s) - ln_gamma(c - a) - ln_gamma(c - b)
    val = cmath.exp(log_val)
    if a.imag == 0.0 and b.imag == 0.0 and c.imag == 0.0:
        return complex(val.real, 0.0)
    return val


def hyp2f1_partial_sum(a, b, c, z, n_terms, chunk=1 << 20):
    """Truncated hypergeometric series ``sum_{n < n_terms} (a)_n (b)_n / ((c)_n n!) z^n``.

    Independent of the Gamma machinery; used as a cross-check only. Terms
    are generated in numpy chunks so tens of millions of terms stay cheap.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    total = 0j
    last = 1.0 + 0j  # term n = start
    start = 0
    while start < n_terms:
        stop = min(start + chunk, n_terms)
        n = np.arange(start, stop - 1, dtype=float)
        ratios = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
        terms = last * np.concatenate(([1.0 + 0j], np.cumprod(ratios)))
        total += terms.sum()
        if stop == n_terms:
            break
        n_last = stop - 1.0
        last = terms[-1] * (a + n_last) * (b + n_last) / ((c + n_last) * (n_last + 1.0)) * z
        if last == 0:
            break
        start = stop
    return complex(total)
