"""Scalar special functions backing the closed-form degree expressions.

Self-contained implementations of the gamma function and the Gauss
hypergeometric function 2F1, tuned for the parameter regime the antenna
integrals produce: a = 1/2, b = -2/eta in [-1, 0), c = 1 and real
argument z <= 1.  Outside that regime the routines are best effort and
the tested accuracy statements below do not apply.

Evaluation strategy for hyp2f1:

* terminating polynomial when a or b is a nonpositive integer,
* direct power series for moderate argument (|z| <= 0.9),
* Pfaff transformation z -> z/(z-1) for z < 0 (DLMF 15.8.1),
* connection formula in 1-z near the endpoint (DLMF 15.8.4, with the
  logarithmic variant DLMF 15.8.10 when c-a-b is a nonnegative integer),
* Gauss summation at z = 1 exactly (DLMF 15.4.20), which converges
  because c-a-b = 1/2 + 2/eta > 0 in the supported regime.

Accuracy degrades to roughly 1e-8 when c-a-b sits within ~1e-9 of an
integer without being one; no physically chosen path-loss exponent hits
that sliver.
"""

import math

__all__ = ["NumericalError", "gamma", "digamma", "hyp2f1"]

# Iteration cap and relative tail cutoff for all series in this module.
MAX_SERIES_TERMS = 100_000
SERIES_RELTOL = 1e-16

# Hand off from the direct power series to the 1-z connection formula.
Z_SWITCH = 0.9

_SNAP = 1e-9  # c-a-b closer than this to an integer uses the log branch


class NumericalError(ArithmeticError):
    """An iterative evaluation failed to converge within its cap."""


# Lanczos approximation, g = 7, nine coefficients.  Relative error is a
# few ulp over the positive real axis, far inside the 1e-12 budget.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _is_nonpositive_integer(x):
    return x <= 0.0 and x == math.floor(x)


def _gamma_positive(x):
    # Caller guarantees x > 0.
    if x < 0.5:
        # Reflection keeps the Lanczos sum on x >= 0.5 where it is best.
        return math.pi / (math.sin(math.pi * x) * _gamma_positive(1.0 - x))
    x -= 1.0
    acc = _LANCZOS[0]
    for i, coef in enumerate(_LANCZOS[1:], start=1):
        acc += coef / (x + i)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (x + 0.5) * math.exp(-t) * acc


def _gamma_real(x):
    """Gamma on the real line, poles excluded.  Internal helper."""
    if _is_nonpositive_integer(x):
        raise ValueError(f"gamma pole at x={x!r}")
    if x > 0.0:
        return _gamma_positive(x)
    # Reflection formula; 1-x > 1 here.
    return math.pi / (math.sin(math.pi * x) * _gamma_positive(1.0 - x))


def gamma(x):
    """Gamma function for real x > 0.

    Relative error is below 1e-12 across [0.1, 10], the range the degree
    formulas exercise.  Raises ValueError for x <= 0 or non-finite x.
    """
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise ValueError(f"gamma requires finite x > 0, got {x!r}")
    return _gamma_positive(x)


def digamma(x):
    """Logarithmic derivative of gamma for real x off the poles."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise ValueError(f"digamma pole at x={x!r}")
    if x < 0.0:
        # psi(x) = psi(1-x) - pi*cot(pi*x)
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    w = 1.0 / (x * x)
    # Asymptotic series; Bernoulli-number coefficients.
    tail = w * (1.0 / 12.0 - w * (1.0 / 120.0 - w * (1.0 / 252.0 - w * (
        1.0 / 240.0 - w * (1.0 / 132.0 - w * (691.0 / 32760.0 - w / 12.0))))))
    return acc + math.log(x) - 0.5 / x - tail


def _series(a, b, c, z, cap=MAX_SERIES_TERMS):
    """Power series sum_k (a)_k (b)_k / ((c)_k k!) z^k."""
    term = 1.0
    total = 1.0
    quiet = 0
    for k in range(cap):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        total += term
        if abs(term) <= SERIES_RELTOL * abs(total):
            quiet += 1
            if quiet >= 2:
                return total
        else:
            quiet = 0
    raise NumericalError(
        "hypergeometric series stalled: a=%r b=%r c=%r z=%r after %d terms, "
        "last |term/total|=%.3e" % (a, b, c, z, cap, abs(term) / abs(total)))


def _terminating(a, b, c, z, m):
    """Finite sum when a or b is the nonpositive integer -m."""
    term = 1.0
    total = 1.0
    for k in range(m):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        total += term
    return total


def _near_one_generic(a, b, c, s, u):
    # DLMF 15.8.4: valid for non-integer s = c-a-b, u = 1-z in (0, 1).
    coef_a = _gamma_real(c) * _gamma_real(s) / (_gamma_real(c - a) * _gamma_real(c - b))
    coef_b = _gamma_real(c) * _gamma_real(-s) / (_gamma_real(a) * _gamma_real(b))
    f1 = _series(a, b, a + b - c + 1.0, u)
    f2 = _series(c - a, c - b, c - a - b + 1.0, u)
    return coef_a * f1 + coef_b * u ** s * f2


def _near_one_log(a, b, m, u):
    # DLMF 15.8.10 with c = a + b + m, m a nonnegative integer.
    c = a + b + m
    front = _gamma_real(c)
    part1 = 0.0
    if m > 0:
        term = 1.0
        acc = 1.0
        for k in range(1, m):
            term *= (a + k - 1.0) * (b + k - 1.0) / ((k - m) * k) * u
            acc += term
        part1 = _gamma_real(m) * front / (_gamma_real(a + m) * _gamma_real(b + m)) * acc

    log_u = math.log(u)
    coef = 1.0 / math.factorial(m)
    psi_k1 = digamma(1.0)
    psi_km1 = digamma(m + 1.0)
    psi_a = digamma(a + m)
    psi_b = digamma(b + m)
    total = coef * (log_u - psi_k1 - psi_km1 + psi_a + psi_b)
    quiet = 0
    for k in range(10_000):
        coef *= (a + m + k) * (b + m + k) / ((k + 1.0) * (k + m + 1.0)) * u
        psi_k1 += 1.0 / (k + 1.0)
        psi_km1 += 1.0 / (k + m + 1.0)
        psi_a += 1.0 / (a + m + k)
        psi_b += 1.0 / (b + m + k)
        term = coef * (log_u - psi_k1 - psi_km1 + psi_a + psi_b)
        total += term
        if abs(term) <= SERIES_RELTOL * abs(total):
            quiet += 1
            if quiet >= 2:
                break
        else:
            quiet = 0
    else:
        raise NumericalError(
            "logarithmic connection series stalled: a=%r b=%r m=%d u=%r" % (a, b, m, u))
    part2 = -front / (_gamma_real(a) * _gamma_real(b)) * (-1.0) ** m * u ** m * total
    return part1 + part2


def hyp2f1(a, b, c, z):
    """Gauss hypergeometric function 2F1(a, b; c; z) for real z <= 1.

    Parameters
    ----------
    a, b, c : float
        Function parameters.  c must not be a nonpositive integer unless
        the series terminates before the pole.
    z : float
        Argument, z <= 1.

    Returns
    -------
    float

    Raises
    ------
    ValueError
        For z > 1 or a parameter pole.
    NumericalError
        When a series fails to converge within the iteration cap, or at
        z = 1 with c - a - b <= 0 where the function diverges.
    """
    a = float(a)
    b = float(b)
    c = float(c)
    z = float(z)
    if math.isnan(z) or z > 1.0:
        raise ValueError(f"hyp2f1 requires z <= 1, got z={z!r}")

    m_term = None
    for p in (a, b):
        if _is_nonpositive_integer(p):
            m = int(-p)
            m_term = m if m_term is None else min(m_term, m)
    if _is_nonpositive_integer(c) and (m_term is None or m_term > int(-c)):
        raise ValueError(f"hyp2f1 pole: c={c!r} is a nonpositive integer")

    if m_term is not None:
        return _terminating(a, b, c, z, m_term)

    if z == 1.0:
        s = c - a - b
        if s <= 0.0:
            raise NumericalError(
                f"hyp2f1 diverges at z=1 for c-a-b={s!r} <= 0")
        return _gamma_real(c) * _gamma_real(s) / (_gamma_real(c - a) * _gamma_real(c - b))

    if z < 0.0:
        # Pfaff transformation.  Keeping the smaller parameter in first
        # position lands the recursive call back in the well-conditioned
        # regime (new c-a-b = |a-b| >= 0).
        lo, hi = (a, b) if a <= b else (b, a)
        return (1.0 - z) ** (-lo) * hyp2f1(lo, c - hi, c, z / (z - 1.0))

    if z <= Z_SWITCH:
        return _series(a, b, c, z)

    u = 1.0 - z
    s = c - a - b
    nearest = round(s)
    if abs(s - nearest) <= _SNAP:
        if nearest >= 0:
            return _near_one_log(a, b, int(nearest), u)
        # Divergent-at-1 family; the plain series still converges for z < 1.
        return _series(a, b, c, z)
    return _near_one_generic(a, b, c, s, u)
