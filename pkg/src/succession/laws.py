"""Laws of succession: conditional next-symbol probabilities from counts.

Every law is a function of the frequency statistics only. Each one is
described by three quantities:

* the probability of an attested symbol with count ``c``;
* the probability of each novel (unseen) symbol;
* the escape mass, i.e. the total probability of all novel symbols.

With ``exact=True`` the arithmetic is carried out in :class:`fractions.Fraction`
and parameters are converted with ``Fraction(value)``; pass ``Fraction``
parameters to keep decimal values such as 0.3 exact.

Conventions for corners the closed forms leave open:

* ``n == 0``: every law predicts the uniform ``1/k``.
* Methods A, C, D and the discounting models with ``q == k``: the mass the
  formula would give to novel symbols is spread uniformly over all ``k``.
* Method B with ``q' == k``: the leftover ``q/n`` goes uniformly to all symbols.
* Good-Turing is returned verbatim and need not sum to one.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

from .freq import FrequencyVector

Number = float | Fraction


class Kind(enum.Enum):
    LAPLACE = "laplace"
    LIDSTONE = "lidstone"
    SUBSETS = "subsets"
    NATURAL = "natural"
    SHARP_SUBSETS = "sharp-subsets"
    SHARP_NATURAL = "sharp-natural"
    METHOD_A = "a"
    METHOD_B = "b"
    METHOD_C = "c"
    METHOD_D = "d"
    GOOD_TURING = "gt"
    ABSOLUTE = "abs"
    LINEAR = "lin"


_PARAM_OF = {Kind.LIDSTONE: "lam", Kind.ABSOLUTE: "delta", Kind.LINEAR: "alpha"}


@dataclass(frozen=True)
class SuccessionLaw:
    """An estimation rule together with its parameter, if it takes one."""

    kind: Kind
    lam: Real | None = None
    delta: Real | None = None
    alpha: Real | None = None

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        wanted = _PARAM_OF.get(kind)
        for name in ("lam", "delta", "alpha"):
            value = getattr(self, name)
            if name == wanted:
                if value is None:
                    raise ValueError(f"{kind.value} requires parameter {name}")
                if not math.isfinite(value):
                    raise ValueError(f"{name} must be finite")
            elif value is not None:
                raise ValueError(f"{kind.value} takes no parameter {name}")
        if kind is Kind.LIDSTONE and not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if kind is Kind.ABSOLUTE and not 0 < self.delta < 1:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if kind is Kind.LINEAR and not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")

    @property
    def param(self) -> Real | None:
        name = _PARAM_OF.get(self.kind)
        return getattr(self, name) if name else None

    @property
    def name(self) -> str:
        """Flag spelling, e.g. ``natural``, ``jp``, ``lidstone:0.25``, ``abs:0.5``."""
        if self.kind is Kind.LIDSTONE:
            if self.lam == Fraction(1, 2):
                return "jp"
            return f"lidstone:{_fmt_param(self.lam)}"
        if self.param is not None:
            return f"{self.kind.value}:{_fmt_param(self.param)}"
        return self.kind.value

    def __str__(self) -> str:
        return self.name

    @property
    def is_sharpened(self) -> bool:
        return self.kind in (Kind.SHARP_SUBSETS, Kind.SHARP_NATURAL)


def _fmt_param(value: Real) -> str:
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return format(float(value), "g")


LAPLACE = SuccessionLaw(Kind.LAPLACE)
JEFFREYS_PERKS = SuccessionLaw(Kind.LIDSTONE, lam=Fraction(1, 2))
SUBSETS = SuccessionLaw(Kind.SUBSETS)
NATURAL = SuccessionLaw(Kind.NATURAL)
SHARP_SUBSETS = SuccessionLaw(Kind.SHARP_SUBSETS)
SHARP_NATURAL = SuccessionLaw(Kind.SHARP_NATURAL)
METHOD_A = SuccessionLaw(Kind.METHOD_A)
METHOD_B = SuccessionLaw(Kind.METHOD_B)
METHOD_C = SuccessionLaw(Kind.METHOD_C)
METHOD_D = SuccessionLaw(Kind.METHOD_D)
GOOD_TURING = SuccessionLaw(Kind.GOOD_TURING)

# Column order of the Calgary comparison table.
TABLE_LAWS = (NATURAL, SUBSETS, LAPLACE, JEFFREYS_PERKS,
              METHOD_A, METHOD_B, METHOD_C, METHOD_D)


def lidstone(lam: Real) -> SuccessionLaw:
    return SuccessionLaw(Kind.LIDSTONE, lam=lam)


def absolute(delta: Real) -> SuccessionLaw:
    return SuccessionLaw(Kind.ABSOLUTE, delta=delta)


def linear(alpha: Real) -> SuccessionLaw:
    return SuccessionLaw(Kind.LINEAR, alpha=alpha)


def _parse_number(text: str) -> Real:
    if "/" in text:
        return Fraction(text)
    return float(text)


def parse_law(spelling: str) -> SuccessionLaw:
    """Parse a flag spelling such as ``natural``, ``jp``, ``lidstone:0.25``, ``abs:1/2``."""
    text = spelling.strip().lower()
    head, _, arg = text.partition(":")
    if head == "jp":
        if arg:
            raise ValueError("jp takes no parameter")
        return JEFFREYS_PERKS
    try:
        kind = Kind(head)
    except ValueError:
        raise ValueError(f"unknown law {spelling!r}") from None
    name = _PARAM_OF.get(kind)
    if name is None:
        if arg:
            raise ValueError(f"{head} takes no parameter")
        return SuccessionLaw(kind)
    if not arg:
        if kind is Kind.LIDSTONE:
            return JEFFREYS_PERKS
        raise ValueError(f"{head} needs an explicit parameter, e.g. {head}:0.5")
    try:
        value = _parse_number(arg)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad parameter in {spelling!r}") from None
    return SuccessionLaw(kind, **{name: value})


def parse_laws(text: str) -> list[SuccessionLaw]:
    return [parse_law(part) for part in text.split(",") if part.strip()]


# --- core -------------------------------------------------------------------

@dataclass
class _Parts:
    attested: Callable[[int], Number]
    novel: Number
    escape: Number


def _num(x, exact: bool) -> Number:
    return Fraction(x) if exact else float(x)


def _parts(law: SuccessionLaw, fv: FrequencyVector, exact: bool) -> _Parts:
    n, q, q2, k = fv.n, fv.q, fv.q_prime, fv.k
    one = _num(1, exact)
    kind = law.kind

    if n == 0:
        u = one / k
        return _Parts(lambda c: u, u, one)

    if kind is Kind.LAPLACE or (kind is Kind.NATURAL and q == k):
        den = n + k
        return _Parts(lambda c: (c + one) / den, one / den, (k - q) * one / den)

    if kind is Kind.LIDSTONE:
        lam = _num(law.lam, exact)
        den = n + k * lam
        return _Parts(lambda c: (c + lam) / den, lam / den, (k - q) * lam / den)

    if kind in (Kind.SUBSETS, Kind.SHARP_SUBSETS):
        d = (n + q) * (n + 1 - q) + q * (k - q)
        novel = q * one / d
        if kind is Kind.SUBSETS:
            att = lambda c: (c + 1) * (n + 1 - q) * one / d
        else:
            att = lambda c: c * one / n * ((n + q) * (n + 1 - q)) / d
        return _Parts(att, novel, (k - q) * novel)

    if kind is Kind.NATURAL:
        e = n * n + n + 2 * q
        escape = q * (q + 1) * one / e
        return _Parts(lambda c: (c + 1) * (n + 1 - q) * one / e,
                      escape / (k - q), escape)

    if kind is Kind.SHARP_NATURAL:
        if q == k:
            return _Parts(lambda c: c * one / n, one * 0, one * 0)
        e = n * n + n + 2 * q
        escape = q * (q + 1) * one / e
        keep = (n * (n + 1) + q * (1 - q)) * one / e
        return _Parts(lambda c: c * one / n * keep, escape / (k - q), escape)

    if kind is Kind.METHOD_B:
        if q2 == k:
            return _Parts(lambda c: c * one / n, one * 0, one * 0)
        low = q * one / (n * (k - q2))
        return _Parts(lambda c: (c - 1) * one / n if c >= 2 else low,
                      low, (k - q) * low)

    if kind is Kind.GOOD_TURING:
        f0 = k - q
        novel = one * fv.fof(1) / (n * f0) if f0 else one * 0
        return _Parts(lambda c: (c + 1) * one / n * fv.fof(c + 1) / fv.fof(c),
                      novel, fv.fof(1) * one / n)

    # Laws whose novel symbols share an explicit escape mass.
    if kind is Kind.METHOD_A:
        escape = one / (n + 1)
        att = lambda c: c * one / (n + 1)
    elif kind is Kind.METHOD_C:
        escape = q * one / (n + q)
        att = lambda c: c * one / (n + q)
    elif kind is Kind.METHOD_D:
        escape = q * one / (2 * n)
        att = lambda c: (2 * c - 1) * one / (2 * n)
    elif kind is Kind.ABSOLUTE:
        delta = _num(law.delta, exact)
        escape = q * delta / n
        att = lambda c: (c - delta) / n
    elif kind is Kind.LINEAR:
        alpha = _num(law.alpha, exact)
        escape = alpha * one
        att = lambda c: (1 - alpha) * c / n
    else:  # pragma: no cover
        raise AssertionError(kind)
    if q < k:
        return _Parts(att, escape / (k - q), escape)
    spread = escape / k
    return _Parts(lambda c: att(c) + spread, one * 0, one * 0)


def conditional(fv: FrequencyVector, i: int, law: SuccessionLaw,
                exact: bool = False) -> Number:
    """``p(i | {n_i}, n)`` under ``law``.

    Sharpened laws fall back to the uniform base case at ``n == 0``; call
    :func:`sharpened_conditional` directly to get the strict behaviour.
    """
    c = fv.count(i)
    parts = _parts(law, fv, exact)
    if c == 0:
        if law.kind is Kind.GOOD_TURING and fv.n and fv.q == fv.k:
            raise ValueError("Good-Turing is undefined for novel symbols when q == k")
        return parts.novel
    return parts.attested(c)


class _Stats:
    __slots__ = ("k", "n", "q", "q_prime")

    def __init__(self, k, n, q, q_prime):
        self.k, self.n, self.q, self.q_prime = k, n, q, q_prime


def conditional_from_stats(law: SuccessionLaw, count: int, n: int, q: int, k: int,
                           q_prime: int = 0, exact: bool = False) -> Number:
    """Like :func:`conditional` but from summary statistics alone.

    Useful when the alphabet is too large to hold counts, e.g. ``k = 2**32``.
    Good-Turing needs the full frequency-of-frequencies and is not supported.
    """
    if law.kind is Kind.GOOD_TURING:
        raise ValueError("Good-Turing needs a FrequencyVector")
    if not 0 <= q_prime <= q <= min(k, n) or count > n:
        raise ValueError("inconsistent statistics")
    parts = _parts(law, _Stats(k, n, q, q_prime), exact)
    return parts.attested(count) if count else parts.novel


def distribution(fv: FrequencyVector, law: SuccessionLaw,
                 exact: bool = False) -> list[Number]:
    """The conditional for every symbol of the alphabet, in symbol order."""
    parts = _parts(law, fv, exact)
    probs = [parts.novel] * fv.k
    cache: dict[int, Number] = {}
    for i, c in fv.nonzero():
        if c not in cache:
            cache[c] = parts.attested(c)
        probs[i] = cache[c]
    return probs


def escape_mass(fv: FrequencyVector, law: SuccessionLaw,
                exact: bool = False) -> Number:
    """Total probability given to symbols not yet observed.

    For Good-Turing this is ``f_1 / n``, which need not match the summed
    per-symbol values because that estimate is not normalized.
    """
    return _parts(law, fv, exact).escape


def mass_deviation(fv: FrequencyVector, law: SuccessionLaw = GOOD_TURING,
                   exact: bool = False) -> Number:
    """``|1 - sum_i p(i)|``; nonzero only for laws that are not normalized."""
    parts = _parts(law, fv, exact)
    total = (fv.k - fv.q) * parts.novel if fv.q < fv.k else 0 * parts.novel
    if exact:
        total += sum((f * parts.attested(j) for j, f in fv.fof_items()), Fraction(0))
    else:
        total += math.fsum(f * parts.attested(j) for j, f in fv.fof_items())
    return abs(1 - total)


# --- named operations -------------------------------------------------------

def laplace_conditional(fv: FrequencyVector, i: int, exact: bool = False) -> Number:
    return conditional(fv, i, LAPLACE, exact)


def lidstone_conditional(fv: FrequencyVector, i: int, lam: Real,
                         exact: bool = False) -> Number:
    return conditional(fv, i, lidstone(lam), exact)


def interpolation_weight(fv: FrequencyVector, lam: Real) -> float:
    """Weight ``mu = n / (n + k*lam)`` on the maximum-likelihood estimate."""
    return fv.n / (fv.n + fv.k * lam)


def subsets_conditional(fv: FrequencyVector, i: int, exact: bool = False) -> Number:
    return conditional(fv, i, SUBSETS, exact)


def natural_conditional(fv: FrequencyVector, i: int, exact: bool = False) -> Number:
    return conditional(fv, i, NATURAL, exact)


def sharpened_conditional(fv: FrequencyVector, i: int, variant: str = "cardinality",
                          exact: bool = False) -> Number:
    """Sharpened subsets (``variant='subsets'``) or cardinality law.

    Undefined before any observation; raises ``ValueError`` when ``n == 0``.
    """
    if fv.n == 0:
        raise ValueError("sharpened laws are undefined for n == 0")
    law = {"subsets": SHARP_SUBSETS, "cardinality": SHARP_NATURAL,
           "natural": SHARP_NATURAL}[variant]
    return conditional(fv, i, law, exact)


_METHODS = {"a": METHOD_A, "b": METHOD_B, "c": METHOD_C, "d": METHOD_D}


def ppm_method_conditional(fv: FrequencyVector, i: int, method: str,
                           exact: bool = False) -> Number:
    return conditional(fv, i, _METHODS[method.lower()], exact)


def good_turing_conditional(fv: FrequencyVector, i: int, exact: bool = False) -> Number:
    return conditional(fv, i, GOOD_TURING, exact)


def discount_conditional(fv: FrequencyVector, i: int, model: str, param: Real,
                         exact: bool = False) -> Number:
    """``model`` is ``'absolute'`` (param is delta) or ``'linear'`` (param is alpha)."""
    law = {"absolute": absolute, "linear": linear}[model](param)
    return conditional(fv, i, law, exact)
