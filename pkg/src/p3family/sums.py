"""Sums of independent Pearson type III variates with integer shapes.

A sum with a common inverse scale collapses to a single Pearson III
density. With pairwise-distinct inverse scales the density is a finite
mixture of Pearson III densities whose weights come from the partial
fraction expansion of the product of the component Laplace transforms;
the weights are available both as a nested closed-form sum and through a
numerically gentler recursion. The log and logit transforms of the sum
reuse the same weights.

Weights use the 1-based index convention of the mixture: ``i`` selects the
component whose inverse scale is ``b_i`` and ``k`` in ``1..a_i`` its
effective shape.
"""

import json
import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction

from .errors import DomainError, MomentDivergenceError, SupportError
from .logitp3 import ltp3_cdf, ltp3_moment, ltp3_pdf, ltp3_support
from .logp3 import lp3_cdf, lp3_moment, lp3_pdf, lp3_support
from .pearson3 import Pearson3Params, p3_cdf, p3_moment, p3_pdf
from .series import DEFAULT_CONTROL, SeriesControl

__all__ = [
    "EQUAL_RATES",
    "DISTINCT_RATES",
    "SumSpec",
    "xi0_closed",
    "xi0_recursive",
    "xi_shifted",
    "sum_pdf",
    "sum_cdf",
    "sum_moment",
    "logsum_pdf",
    "logsum_cdf",
    "logsum_moment",
    "logitsum_pdf",
    "logitsum_cdf",
    "logitsum_moment",
    "spec_to_json",
    "spec_from_json",
]

EQUAL_RATES = "equal_rates"
DISTINCT_RATES = "distinct_rates"

# Rates closer than this (relative) are treated as exactly equal.
_EQUAL_TOL = 1e-9


def _rel_gap(x: float, y: float) -> float:
    return abs(x - y) / max(abs(x), abs(y))


@dataclass(frozen=True)
class SumSpec:
    """Ordered component parameters of SX_L = X_1 + ... + X_L.

    Shapes must be positive integers and the inverse scales must share one
    sign. Rates within ``snap_tol`` (relative) of each other are snapped to
    the equal-rate regime (flagged via ``snapped``); partially coincident
    rates are rejected, since the weight machinery covers only the
    all-equal and all-distinct regimes.
    """

    terms: tuple
    snap_tol: float = 1e-6
    regime: str = field(init=False)
    snapped: bool = field(init=False)

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if len(terms) < 1:
            raise DomainError("a sum needs at least one component")
        for t in terms:
            if not isinstance(t, Pearson3Params):
                raise DomainError(f"components must be Pearson3Params, got {t!r}")
            if abs(t.a - round(t.a)) > 1e-9 or round(t.a) < 1:
                raise DomainError(f"component shapes must be positive integers, got a={t.a}")
        signs = {t.b > 0 for t in terms}
        if len(signs) > 1:
            raise DomainError("component inverse scales must all share one sign")

        bs = [t.b for t in terms]
        L = len(terms)
        max_gap = max(
            (_rel_gap(bs[i], bs[j]) for i in range(L) for j in range(i + 1, L)),
            default=0.0,
        )
        min_gap = min(
            (_rel_gap(bs[i], bs[j]) for i in range(L) for j in range(i + 1, L)),
            default=0.0,
        )
        if max_gap <= self.snap_tol:
            object.__setattr__(self, "regime", EQUAL_RATES)
            object.__setattr__(self, "snapped", max_gap > _EQUAL_TOL)
        elif min_gap <= self.snap_tol:
            pair = next(
                (i, j)
                for i in range(L)
                for j in range(i + 1, L)
                if _rel_gap(bs[i], bs[j]) <= self.snap_tol
            )
            raise DomainError(
                f"mixed rates: components {pair[0] + 1} and {pair[1] + 1} have "
                f"coincident inverse scales ({bs[pair[0]]}, {bs[pair[1]]}) while "
                "others are distinct; only all-equal or all-distinct rates are supported"
            )
        else:
            object.__setattr__(self, "regime", DISTINCT_RATES)
            object.__setattr__(self, "snapped", False)

        object.__setattr__(self, "_shapes", tuple(int(round(t.a)) for t in terms))
        if self.regime == DISTINCT_RATES:
            fracs = _weights_recursive(self._shapes, bs)
            object.__setattr__(self, "_weights_frac", fracs)
            object.__setattr__(
                self, "_weights", [[float(v) for v in row] for row in fracs]
            )
            object.__setattr__(
                self,
                "_weight_scale",
                max(abs(v) for row in self._weights for v in row),
            )
        else:
            object.__setattr__(self, "_weights_frac", None)
            object.__setattr__(self, "_weights", None)
            object.__setattr__(self, "_weight_scale", 0.0)

    @property
    def L(self) -> int:
        return len(self.terms)

    @property
    def sa(self) -> int:
        """Total shape, sum of the component shapes."""
        return sum(self._shapes)

    @property
    def sm(self) -> float:
        """Total shift, sum of the component shifts."""
        return math.fsum(t.m for t in self.terms)

    @property
    def reduced(self) -> Pearson3Params:
        """Single-density parameters in the equal-rate regime."""
        if self.regime != EQUAL_RATES:
            raise DomainError("reduced parameters exist only in the equal-rate regime")
        b = math.fsum(t.b for t in self.terms) / self.L
        return Pearson3Params(float(self.sa), b, self.sm)

    def support(self):
        """Open support of the sum."""
        if self.terms[0].b > 0:
            return (self.sm, math.inf)
        return (-math.inf, self.sm)

    def shape(self, i: int) -> int:
        return self._shapes[i - 1]

    def rate(self, i: int) -> float:
        return self.terms[i - 1].b


def _check_indices(spec: SumSpec, i: int, k: int):
    if spec.regime != DISTINCT_RATES:
        raise DomainError("mixture weights are defined only in the distinct-rate regime")
    if not (1 <= i <= spec.L):
        raise DomainError(f"component index i={i} out of range 1..{spec.L}")
    if not (1 <= k <= spec.shape(i)):
        raise DomainError(f"stage index k={k} out of range 1..{spec.shape(i)}")


def _weights_recursive(shapes, bs):
    """All mixture weights by the base-case product plus descent recursion.

    Returns exact Fraction values w[i][k-1] for 0-based component i. The
    recursion runs in rational arithmetic (the float inputs are exact
    rationals), so each weight is correctly rounded even when
    alternating-sign cancellation is severe.
    """
    L = len(shapes)
    bq = [Fraction(b) for b in bs]
    rate_prod = Fraction(1)
    for a, b in zip(shapes, bq):
        rate_prod *= b ** a
    weights = []
    for i in range(L):
        ai, bi = shapes[i], bq[i]
        # Base case k = a_i: prod_w b_w^a_w / b_i^a_i * prod_{j!=i} (b_j - b_i)^(-a_j)
        base = rate_prod / bi ** ai
        for j in range(L):
            if j != i:
                base *= (bq[j] - bi) ** (-shapes[j])
        w = [Fraction(0)] * ai
        w[ai - 1] = base
        # Descent: w(i, a_i - k) from the k previously computed values.
        ratios = [
            (shapes[q], bi / (bi - bq[q])) for q in range(L) if q != i
        ]
        for k in range(1, ai):
            w[ai - 1 - k] = (
                sum(
                    sum(aq * r ** j for aq, r in ratios) * w[ai - 1 - k + j]
                    for j in range(1, k + 1)
                )
                / k
            )
        weights.append(w)
    return weights


# Above this weight magnitude the float mixture loses enough digits to
# alternating-sign cancellation that the Decimal path takes over.
_HP_WEIGHT_SCALE = 1e6


def _hp_context_prec(scale: float) -> int:
    return 30 + max(0, int(math.log10(max(scale, 1.0))) + 1)


def _mixture_reg_lower(spec, g: float) -> float:
    """Sum_{i,k} Xi(i,k) P(k, |b_i| g) for g >= 0: the mixture CDF in the
    gamma direction. Near-coincident rates make the weights huge with
    alternating signs; the exact-rational weights are then combined in
    Decimal arithmetic wide enough to absorb the cancellation.
    """
    if g <= 0.0:
        return 0.0
    if spec._weight_scale <= _HP_WEIGHT_SCALE:
        from .specfun import reg_lower_gamma

        return math.fsum(
            spec._weights[i][k] * reg_lower_gamma(float(k + 1), abs(spec.terms[i].b) * g)
            for i in range(spec.L)
            for k in range(spec._shapes[i])
        )
    with localcontext() as ctx:
        ctx.prec = _hp_context_prec(spec._weight_scale)
        gd = Decimal(g)
        total = Decimal(0)
        for i, row in enumerate(spec._weights_frac):
            u = Decimal(abs(spec.terms[i].b)) * gd
            eu = (-u).exp()
            # Q(k+1, u) = e^-u sum_{j<=k} u^j/j!; accumulate the inner
            # polynomial against the cumulative weight rows.
            pow_term = Decimal(1)
            s_k = Decimal(1)
            inner = Decimal(0)
            for k, wf in enumerate(row):
                if k > 0:
                    pow_term = pow_term * u / k
                    s_k += pow_term
                inner += Decimal(wf.numerator) / Decimal(wf.denominator) * s_k
            total += eu * inner
        return min(1.0, max(0.0, float(1 - total)))


def _mixture_gamma_pdf(spec, g: float) -> float:
    """Sum_{i,k} Xi(i,k) |b_i| gammapdf(k, |b_i| g): the mixture density in
    the gamma direction, with the same Decimal fallback as the CDF."""
    if spec._weight_scale <= _HP_WEIGHT_SCALE:
        return math.fsum(
            spec._weights[i][k]
            * p3_pdf(Pearson3Params(float(k + 1), abs(spec.terms[i].b), 0.0), g)
            for i in range(spec.L)
            for k in range(spec._shapes[i])
        )
    with localcontext() as ctx:
        ctx.prec = _hp_context_prec(spec._weight_scale)
        gd = Decimal(g)
        total = Decimal(0)
        for i, row in enumerate(spec._weights_frac):
            b_abs = Decimal(abs(spec.terms[i].b))
            u = b_abs * gd
            eu = (-u).exp()
            pow_term = Decimal(1)  # u^k / k!
            inner = Decimal(0)
            for k, wf in enumerate(row):
                if k > 0:
                    pow_term = pow_term * u / k
                inner += Decimal(wf.numerator) / Decimal(wf.denominator) * pow_term
            total += eu * b_abs * inner
        return max(0.0, float(total))


def xi0_recursive(spec: SumSpec, i: int, k: int) -> float:
    """Mixture weight for component i at stage k, from the recursion."""
    _check_indices(spec, i, k)
    return spec._weights[i - 1][k - 1]


def xi0_closed(spec: SumSpec, i: int, k: int) -> float:
    """Mixture weight for component i at stage k, from the nested closed form.

    Retained as a cross-check of the recursion; the nested sums chain a
    nonincreasing index from a_i down to k, consuming one alien component
    per stage.
    """
    if spec.regime == EQUAL_RATES and spec.L == 1:
        return 1.0 if k == spec.shape(1) else 0.0
    _check_indices(spec, i, k)
    L = spec.L
    ai = spec.shape(i)
    bi = spec.rate(i)
    others = [q for q in range(1, L + 1) if q != i]

    def G(u: int, v: int, w: int) -> float:
        aw = spec.shape(w)
        d = bi - spec.rate(w)
        return (
            math.factorial(u + aw - v - 1)
            / (math.factorial(aw - 1) * math.factorial(u - v))
            * d ** (v - u - aw)
        )

    # Chain j_0 = a_i >= j_1 >= ... >= j_(L-1) = k; one factor per stage.
    f = {ai: 1.0}
    for w in others[:-1]:
        nxt = {}
        for v in range(k, ai + 1):
            nxt[v] = math.fsum(f[u] * G(u, v, w) for u in f if u >= v)
        f = nxt
    total = math.fsum(f[u] * G(u, k, others[-1]) for u in f if u >= k)

    pref = (-1.0) ** (spec.sa - ai) / bi ** k
    for q in range(1, L + 1):
        pref *= spec.rate(q) ** spec.shape(q)
    return pref * total


def xi_shifted(spec: SumSpec, i: int, k: int, l: int) -> float:
    """Weight of the shift-expanded mixture over the original components.

    Expands each sum-shift density back onto components anchored at their
    own shifts m_i; reduces to the unshifted weights when every m_i = 0.
    """
    _check_indices(spec, i, k)
    if not (1 <= l <= k):
        raise DomainError(f"inner index l={l} out of range 1..{k}")
    mi = spec.terms[i - 1].m
    bi = spec.rate(i)
    sm = spec.sm
    shift = (
        math.exp((sm - mi) * bi)
        * (mi - sm) ** (k - l)
        / math.factorial(k - l)
        * bi ** (k - l)
    )
    return shift * xi0_recursive(spec, i, k)


def _mixture(spec: SumSpec, component_fn):
    """Weighted sum over (i, k) of component_fn(Pearson3Params(k, b_i, sm))."""
    sm = spec.sm
    return math.fsum(
        spec._weights[i][k] * component_fn(Pearson3Params(float(k + 1), spec.terms[i].b, sm))
        for i in range(spec.L)
        for k in range(spec._shapes[i])
    )


def sum_pdf(spec: SumSpec, x: float) -> float:
    """Density of the sum at an interior point."""
    lo, hi = spec.support()
    if not (lo < x < hi):
        raise SupportError(f"x={x} is outside the open support ({lo}, {hi}) of the sum")
    if spec.regime == EQUAL_RATES:
        return p3_pdf(spec.reduced, x)
    return _mixture_gamma_pdf(spec, abs(x - spec.sm))


def sum_cdf(spec: SumSpec, x: float) -> float:
    """CDF of the sum; saturates outside the support."""
    if spec.regime == EQUAL_RATES:
        return p3_cdf(spec.reduced, x)
    lo, hi = spec.support()
    if x <= lo:
        return 0.0
    if x >= hi:
        return 1.0
    if spec.terms[0].b > 0:
        return _mixture_reg_lower(spec, x - spec.sm)
    return 1.0 - _mixture_reg_lower(spec, spec.sm - x)


def sum_moment(spec: SumSpec, n: int) -> float:
    """Raw moment E[(X_1 + ... + X_L)^n]."""
    if n < 0:
        raise DomainError(f"moment order must be nonnegative, got n={n}")
    if spec.regime == EQUAL_RATES:
        return p3_moment(spec.reduced, n)
    return _mixture(spec, lambda p: p3_moment(p, n))


def logsum_cdf(spec: SumSpec, y: float) -> float:
    """CDF of exp(SX_L)."""
    if y <= 0:
        raise DomainError(f"logsum_cdf requires y > 0, got y={y}")
    return sum_cdf(spec, math.log(y))


def logsum_pdf(spec: SumSpec, y: float) -> float:
    """Density of exp(SX_L) at an interior point."""
    if spec.regime == EQUAL_RATES:
        return lp3_pdf(spec.reduced, y)
    lo, hi = lp3_support(Pearson3Params(1.0, spec.terms[0].b, spec.sm))
    if not (lo < y < hi):
        raise SupportError(f"y={y} is outside the open support ({lo}, {hi})")
    return sum_pdf(spec, math.log(y)) / y


def logsum_moment(spec: SumSpec, n: int) -> float:
    """Raw moment E[exp(SX_L)^n]; positive rates must all exceed n."""
    if n < 0:
        raise DomainError(f"moment order must be nonnegative, got n={n}")
    if n == 0:
        return 1.0
    if spec.terms[0].b > 0:
        bad = [t.b for t in spec.terms if t.b <= n]
        if bad:
            raise MomentDivergenceError(
                f"moment of order n={n} diverges: requires b_i > n for every "
                f"component, offending rates {bad}"
            )
    if spec.regime == EQUAL_RATES:
        return lp3_moment(spec.reduced, n)
    return _mixture(spec, lambda p: lp3_moment(p, n))


def logitsum_cdf(spec: SumSpec, z: float) -> float:
    """CDF of logistic(SX_L)."""
    if not (0.0 < z < 1.0):
        raise DomainError(f"logitsum_cdf requires z in (0, 1), got z={z}")
    return sum_cdf(spec, math.log(z / (1.0 - z)))


def logitsum_pdf(spec: SumSpec, z: float) -> float:
    """Density of logistic(SX_L) at an interior point."""
    if spec.regime == EQUAL_RATES:
        return ltp3_pdf(spec.reduced, z)
    if not (0.0 < z < 1.0):
        raise DomainError(f"logitsum_pdf requires z in (0, 1), got z={z}")
    lo, hi = ltp3_support(Pearson3Params(1.0, spec.terms[0].b, spec.sm))
    if not (lo < z < hi):
        raise SupportError(f"z={z} is outside the open support ({lo}, {hi})")
    return sum_pdf(spec, math.log(z / (1.0 - z))) / (z * (1.0 - z))


def logitsum_moment(spec: SumSpec, n: int,
                    ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Raw moment E[logistic(SX_L)^n]; requires every b_i > 0."""
    if n < 0:
        raise DomainError(f"moment order must be nonnegative, got n={n}")
    if n == 0:
        return 1.0
    if spec.terms[0].b < 0:
        raise DomainError("logit-sum moments require positive rates on every component")
    if spec.regime == EQUAL_RATES:
        return ltp3_moment(spec.reduced, n, ctl)
    return _mixture(spec, lambda p: ltp3_moment(p, n, ctl))


def spec_to_json(spec: SumSpec) -> str:
    """Serialize as {"terms": [{"a": int, "b": num, "m": num}, ...]}."""
    return json.dumps(
        {"terms": [{"a": int(round(t.a)), "b": t.b, "m": t.m} for t in spec.terms]}
    )


def spec_from_json(doc: str) -> SumSpec:
    """Parse the JSON document produced by spec_to_json."""
    try:
        payload = json.loads(doc)
        terms = tuple(
            Pearson3Params(float(t["a"]), float(t["b"]), float(t.get("m", 0.0)))
            for t in payload["terms"]
        )
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise DomainError(f"malformed sum spec document: {exc}") from exc
    return SumSpec(terms)
