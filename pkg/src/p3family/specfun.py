"""Special functions used by the closed-form distribution expressions.

Covers log-gamma, regularized incomplete gammas, the truncated gamma-type
integrals ``int_0^T x^(a-1) exp(-s x) dx`` (valid for any real rate ``s``,
including negative, with no complex intermediates), the Lerch transcendent
on ``z in [-1, 0]``, generalized binomial coefficients, and Pochhammer
symbols.
"""

import math

from scipy import special as _sp

from .errors import ConvergenceError, DomainError
from .series import DEFAULT_CONTROL, SeriesControl, sum_alternating, sum_series

__all__ = [
    "ln_gamma",
    "reg_lower_gamma",
    "reg_upper_gamma",
    "gamma_integral_lower",
    "gamma_integral_upper",
    "gamma_integral_lower_scaled",
    "gamma_integral_upper_scaled",
    "lerch_phi",
    "neg_binom_coeff",
    "pochhammer",
]


def ln_gamma(a: float) -> float:
    """Natural log of the gamma function for a > 0."""
    if a <= 0:
        raise DomainError(f"ln_gamma requires a > 0, got a={a}")
    return math.lgamma(a)


def reg_lower_gamma(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x) in [0, 1]."""
    if a <= 0 or x < 0:
        raise DomainError(f"reg_lower_gamma requires a > 0, x >= 0, got a={a}, x={x}")
    return float(_sp.gammainc(a, x))


def reg_upper_gamma(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x)."""
    if a <= 0 or x < 0:
        raise DomainError(f"reg_upper_gamma requires a > 0, x >= 0, got a={a}, x={x}")
    return float(_sp.gammaincc(a, x))


def gamma_integral_lower(a: float, s: float, T: float,
                         ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Evaluate int_0^T x^(a-1) exp(-s x) dx for any real rate s.

    For s > 0 this is s^(-a) * gamma_lower(a, s T); for s = 0 it is T^a / a;
    for s < 0 a convergent all-positive power series is used, keeping the
    arithmetic real throughout.
    """
    if a <= 0:
        raise DomainError(f"gamma_integral_lower requires a > 0, got a={a}")
    if T < 0:
        raise DomainError(f"gamma_integral_lower requires T >= 0, got T={T}")
    if T == 0.0:
        return 0.0
    if s > 0:
        return math.exp(math.lgamma(a) - a * math.log(s)) * float(_sp.gammainc(a, s * T))
    if s == 0.0:
        return T ** a / a

    # s < 0: expand exp(|s| x) and integrate termwise.
    r = -s * T

    def _terms():
        c = T ** a  # |s|^k T^(a+k) / k!
        k = 0
        while True:
            yield c / (a + k)
            k += 1
            c *= r / k

    return sum_series(_terms(), ctl)


def gamma_integral_upper(a: float, s: float, T: float) -> float:
    """Evaluate int_T^inf x^(a-1) exp(-s x) dx = s^(-a) Gamma(a, s T).

    Divergent unless s > 0.
    """
    if a <= 0:
        raise DomainError(f"gamma_integral_upper requires a > 0, got a={a}")
    if T < 0:
        raise DomainError(f"gamma_integral_upper requires T >= 0, got T={T}")
    if s <= 0:
        raise DomainError(f"gamma_integral_upper diverges for s <= 0, got s={s}")
    return math.exp(math.lgamma(a) - a * math.log(s)) * float(_sp.gammaincc(a, s * T))


# Beyond this value of |s| T the direct scaled evaluations hit double
# overflow/underflow and the Watson-lemma tail expansion takes over.
_WATSON_CUTOFF = 600.0


def _watson_tail(a: float, sT: float, T: float) -> float:
    """Asymptotic value of exp(s T) * int_T^inf x^(a-1) exp(-s x) dx.

    Watson's lemma about the endpoint x = T: substituting x = T + t and
    expanding (T + t)^(a-1) gives T^(a-1)/s * sum_j prod_{i<=j}(a-i)/(sT)^j.
    The same series with sT < 0 covers the lower integral's endpoint
    (substitute x = T - t). Truncated at the smallest term; for
    |sT| >= _WATSON_CUTOFF the truncation error is far below double
    precision.
    """
    s = sT / T
    term = T ** (a - 1.0) / abs(s)
    total = term
    j = 1
    while True:
        nxt = term * (a - j) / sT
        if abs(nxt) >= abs(term) or abs(nxt) <= 1e-18 * abs(total):
            return total + nxt
        total += nxt
        term = nxt
        j += 1


def gamma_integral_lower_scaled(a: float, s: float, T: float,
                                ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Evaluate exp(s T) * int_0^T x^(a-1) exp(-s x) dx without overflow.

    The unscaled integral grows like exp(-s T) when s is very negative;
    multiplying by exp(s T) keeps the value O(T^(a-1)/|s|), so series over
    large negative rates stay inside double range.
    """
    if a <= 0:
        raise DomainError(f"gamma_integral_lower_scaled requires a > 0, got a={a}")
    if T < 0:
        raise DomainError(f"gamma_integral_lower_scaled requires T >= 0, got T={T}")
    if T == 0.0:
        return 0.0
    r = -s * T
    if r < _WATSON_CUTOFF:
        return math.exp(s * T) * gamma_integral_lower(a, s, T, ctl)
    return _watson_tail(a, s * T, T)


def gamma_integral_upper_scaled(a: float, s: float, T: float) -> float:
    """Evaluate exp(s T) * int_T^inf x^(a-1) exp(-s x) dx; requires s > 0.

    The unscaled integral decays like exp(-s T); the scaled form stays
    O(T^(a-1)/s) for arbitrarily large rates.
    """
    if a <= 0:
        raise DomainError(f"gamma_integral_upper_scaled requires a > 0, got a={a}")
    if T < 0:
        raise DomainError(f"gamma_integral_upper_scaled requires T >= 0, got T={T}")
    if s <= 0:
        raise DomainError(f"gamma_integral_upper_scaled diverges for s <= 0, got s={s}")
    sT = s * T
    if sT < _WATSON_CUTOFF:
        return math.exp(sT) * gamma_integral_upper(a, s, T)
    return _watson_tail(a, sT, T)


def lerch_phi(z: float, s: float, alpha: float,
              ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Lerch transcendent Phi(z, s, alpha) = sum_k z^k / (k + alpha)^s.

    Restricted to z in [-1, 0] (the alternating regime), s > 0, alpha > 0.
    Evaluated with Euler acceleration, which remains accurate at the
    conditionally convergent endpoint z = -1.
    """
    if not (-1.0 <= z <= 0.0):
        raise DomainError(f"lerch_phi requires z in [-1, 0], got z={z}")
    if s <= 0 or alpha <= 0:
        raise DomainError(f"lerch_phi requires s > 0 and alpha > 0, got s={s}, alpha={alpha}")
    if z == 0.0:
        return alpha ** (-s)

    def _terms():
        zk = 1.0
        k = 0
        while True:
            yield zk / (k + alpha) ** s
            k += 1
            zk *= z

    try:
        return sum_alternating(_terms(), ctl)
    except ConvergenceError as exc:
        raise ConvergenceError(
            f"lerch_phi(z={z}, s={s}, alpha={alpha}) failed to converge"
        ) from exc


def neg_binom_coeff(n: int, l: int) -> float:
    """Binomial coefficient C(n + l - 1, l) from the negative-exponent
    binomial expansion, computed in log space when the exact integer would
    overflow a double."""
    if n < 1 or l < 0:
        raise DomainError(f"neg_binom_coeff requires n >= 1, l >= 0, got n={n}, l={l}")
    if n + l - 1 <= 1000:
        return float(math.comb(n + l - 1, l))
    return math.exp(math.lgamma(n + l) - math.lgamma(l + 1) - math.lgamma(n))


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = Gamma(a + k) / Gamma(a)."""
    if k < 0:
        raise DomainError(f"pochhammer requires k >= 0, got k={k}")
    return float(_sp.poch(a, k))
