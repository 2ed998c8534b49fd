"""Hilbert series of free metabelian algebras and their multiplicity series.

Series in three variables use the layout ``(t1, t2, z)``.  A Hilbert series in
``z_1, ..., z_d`` becomes a GL_2 character through :func:`gl2_substitute`;
its multiplicity series (the bigraded series of the constants) is computed
either degree by degree (:func:`multiplicity_series_truncated`, the oracle)
or in closed form with Elliott's partial-fraction reduction of the
Omega operator (:func:`multiplicity_series_closed`).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .polyarith import (
    ArityError,
    Monomial,
    NiceRational,
    Polynomial,
    TruncatedSeries,
    divide_one_minus,
    mono_key,
    nice_expand,
)

T1, T2, Z = 0, 1, 2
Z_WEIGHTS = (0, 0, 1)
TZ_NAMES = ("t1", "t2", "z")


class OmegaReductionError(RuntimeError):
    """Elliott reduction exceeded its step budget or met an unsupported input."""


class NotSymmetricError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Hilbert series in z_1..z_d


def hilbert_polynomial_ring(d: int) -> NiceRational:
    """prod 1/(1 - z_j): the Hilbert series of K[X_d]."""
    if d < 1:
        raise ValueError("need at least one variable")
    return NiceRational(Polynomial.one(d), [(tuple(int(i == j) for i in range(d)), 1) for j in range(d)])


def hilbert_free_metabelian(d: int, commutator_only: bool = False) -> NiceRational:
    """``1 + S + (S - 1) prod 1/(1 - z_j)`` with ``S = z_1 + ... + z_d``.

    With ``commutator_only`` the summand ``S`` of the generators is dropped,
    leaving the series of the commutator ideal.
    """
    if d < 2:
        raise ValueError("the free metabelian Lie algebra needs d >= 2")
    s = sum((Polynomial.var(i, d) for i in range(1, d)), Polynomial.var(0, d))
    one = Polynomial.one(d)
    head = one if commutator_only else one + s
    return hilbert_polynomial_ring(d) * (s - one) + head


def _partition_images(partition: Sequence[int]) -> list[Monomial]:
    images = []
    for p in partition:
        if p < 0:
            raise ValueError("cell sizes must be non-negative")
        images.extend((p - k, k, 1) for k in range(p + 1))
    return images


def gl2_substitute(h: NiceRational | Polynomial, partition: Sequence[int]) -> NiceRational:
    """Replace the variables of each cell of size ``p+1`` by ``t1^(p-k) t2^k z``."""
    images = _partition_images(partition)
    if len(images) != h.arity:
        raise ArityError(f"partition {tuple(partition)} covers {len(images)} variables, series has {h.arity}")
    if isinstance(h, Polynomial):
        h = NiceRational(h)
    return h.substitute_monomials(images, 3)


def gl2_substitute_polynomial(p: Polynomial, partition: Sequence[int]) -> Polynomial:
    images = _partition_images(partition)
    if len(images) != p.arity:
        raise ArityError("partition and polynomial disagree on the number of variables")
    return p.substitute_monomials(images, 3)


# ---------------------------------------------------------------------------
# Schur multiplicities in two variables


def swap_t(p: Polynomial) -> Polynomial:
    """Exchange the first two variables."""
    return Polynomial(p.arity, {(m[1], m[0]) + m[2:]: c for m, c in p.terms.items()}, _trusted=True)


def is_symmetric(p: Polynomial) -> bool:
    return swap_t(p) == p


def schur_polynomial(lam1: int, lam2: int, arity: int = 2) -> Polynomial:
    """S_(lam1, lam2)(t1, t2) = sum of t1^i t2^(lam1+lam2-i) for lam2 <= i <= lam1."""
    if lam1 < lam2 or lam2 < 0:
        raise ValueError("need lam1 >= lam2 >= 0")
    pad = (0,) * (arity - 2)
    return Polynomial(arity, {(i, lam1 + lam2 - i) + pad: 1 for i in range(lam2, lam1 + 1)})


def schur_decompose(p: Polynomial) -> list[tuple[tuple[int, int], int]]:
    """Multiplicities ``m(l1, l2) = [t1^l1 t2^l2]p - [t1^(l1+1) t2^(l2-1)]p``.

    ``p`` is a symmetric polynomial in (t1, t2); sorted nonzero pairs are returned.
    """
    if p.arity != 2:
        raise ArityError("schur_decompose expects a polynomial in t1, t2")
    if not is_symmetric(p):
        raise NotSymmetricError("input is not symmetric in t1, t2")
    # (a, b) can carry a multiplicity when either t1^a t2^b or t1^(a+1) t2^(b-1) occurs
    support = set()
    for a, b in p.terms:
        if a >= b:
            support.add((a, b))
        if a - 1 >= b + 1:
            support.add((a - 1, b + 1))
    out = []
    for a, b in support:
        m = p.coefficient((a, b)) - (p.coefficient((a + 1, b - 1)) if b > 0 else 0)
        if m:
            out.append(((a, b), m))
    return sorted(out)


def schur_reconstruct(mults: Iterable[tuple[tuple[int, int], object]]) -> Polynomial:
    out = Polynomial.zero(2)
    for (a, b), m in mults:
        out = out + schur_polynomial(a, b).scale(m)
    return out


def _leading_terms(slice3: Polynomial) -> dict:
    """Multiplicity part of one z-slice of a (t1, t2, z) series."""
    by_z: dict = {}
    for (a, b, n), c in slice3.terms.items():
        by_z.setdefault(n, {})[(a, b)] = c
    out = {}
    for n, terms in by_z.items():
        for (a, b), m in schur_decompose(Polynomial(2, terms)):
            out[(a, b, n)] = m
    return out


def multiplicity_series_truncated(h: NiceRational, order: int) -> TruncatedSeries:
    """Multiplicity series of ``h`` through z-degree ``order``, one Schur decomposition per slice."""
    if h.arity != 3:
        raise ArityError("expected a series in (t1, t2, z)")
    series = nice_expand(h, order, Z_WEIGHTS)
    return TruncatedSeries(3, order, _leading_terms(series.to_polynomial()), Z_WEIGHTS)


def multiplicities(series: TruncatedSeries) -> dict:
    """``{(l1, l2, n): m}`` for every nonzero coefficient."""
    return dict(series.terms)


# ---------------------------------------------------------------------------
# Specialisation t1 = t2 = 1


def specialize(series: TruncatedSeries | NiceRational):
    """Set t1 = t2 = 1.  Series give coefficient lists in z; closed forms give univariate NiceRationals."""
    if isinstance(series, TruncatedSeries):
        out = [0] * (series.order + 1)
        for (_, _, n), c in series.terms.items():
            out[n] += c
        return out
    return series.substitute_monomials([(0,), (0,), (1,)], 1)


def coefficients(f: NiceRational, order: int) -> list:
    """z^0..z^order coefficients of a univariate nice rational function."""
    return nice_expand(f, order).coefficients_1d()


# ---------------------------------------------------------------------------
# Omega calculus


Factor = tuple  # (monomial at xi = 1, xi-exponent)


@dataclass(frozen=True)
class XiLaurent:
    """``sum_k N_k xi^k / prod (1 - m xi^e)``.

    ``numerator`` maps a xi-exponent to a polynomial; ``factors`` lists
    ``(m, e)`` pairs with repetition.
    """

    numerator: Mapping
    factors: tuple

    @classmethod
    def from_nice(cls, f: NiceRational, xi_weights: Sequence[int] = (1, -1, 0)) -> "XiLaurent":
        """Substitute ``v -> v * xi^w`` for each variable ``v`` with weight ``w``."""
        if len(xi_weights) != f.arity:
            raise ArityError("one xi-weight per variable is required")

        def e_of(m):
            return sum(a * w for a, w in zip(m, xi_weights))

        num: dict = {}
        for m, c in f.num.terms.items():
            num.setdefault(e_of(m), {})[m] = c
        factors = []
        for m, k in f.den:
            factors.extend([(m, e_of(m))] * k)
        return cls({k: Polynomial(f.arity, t) for k, t in num.items()}, tuple(sorted(factors, key=_fkey)))

    @property
    def arity(self) -> int:
        for p in self.numerator.values():
            return p.arity
        return len(self.factors[0][0]) if self.factors else 0

    def at_xi_one(self) -> NiceRational:
        num = Polynomial.zero(self.arity)
        for p in self.numerator.values():
            num = num + p
        return NiceRational(num, Counter(m for m, _ in self.factors))

    def max_exponent(self) -> int:
        es = [abs(e) for _, e in self.factors] + [abs(k) for k in self.numerator]
        return max(es, default=0)


def _fkey(f: Factor):
    return (f[1], mono_key(f[0]))


def _mono_pow(m: Monomial, k: int) -> Monomial:
    return tuple(a * k for a in m)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _den_key(ms: Iterable[Monomial]) -> tuple:
    c = Counter(ms)
    return tuple(sorted(c.items(), key=lambda t: mono_key(t[0])))


def _bounded_sum(factors: Sequence[Factor], bound: int, arity: int, strict: bool) -> Polynomial:
    """Sum of prod m_i^n_i over n with sum n_i |e_i| < bound (or <= bound)."""
    out: dict = {}
    limit = bound - 1 if strict else bound

    def rec(i: int, left: int, mono: Monomial):
        if i == len(factors):
            out[mono] = out.get(mono, 0) + 1
            return
        m, e = factors[i]
        w = abs(e)
        n = 0
        cur = mono
        while n * w <= left:
            rec(i + 1, left - n * w, cur)
            cur = _mono_mul(cur, m)
            n += 1

    if limit >= 0:
        rec(0, limit, (0,) * arity)
    return Polynomial(arity, out)


class _Elliott:
    def __init__(self, arity: int, budget: int):
        self.arity = arity
        self.budget = budget
        self.steps = 0
        self.memo: dict = {}

    def omega(self, k: int, factors: tuple) -> dict:
        key = (k, factors)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.steps += 1
        if self.steps > self.budget:
            raise OmegaReductionError(f"Elliott reduction exceeded {self.budget} steps")
        pos = [f for f in factors if f[1] > 0]
        neg = [f for f in factors if f[1] < 0]
        if not neg or not pos:
            result = self._base(k, factors, pos, neg)
        else:
            y = min(neg, key=lambda f: (-f[1], mono_key(f[0])))
            big = [f for f in pos if f[1] >= -y[1]]
            if big:
                # kills y in one branch, shrinks x in the other
                x = min(big, key=lambda f: (f[1], mono_key(f[0])))
            else:
                x = max(pos, key=lambda f: (f[1], mono_key(f[0])))
            xy = (_mono_mul(x[0], y[0]), x[1] + y[1])
            rest = list(factors)
            rest.remove(y)
            rest.append(xy)
            first = self.omega(k, tuple(sorted(rest, key=_fkey)))
            rest = list(factors)
            rest.remove(x)
            rest.append(xy)
            second = self.omega(k + y[1], tuple(sorted(rest, key=_fkey)))
            result = dict(first)
            for den, num in second.items():
                shifted = num.mul_monomial(y[0])
                prev = result.get(den)
                result[den] = shifted if prev is None else prev + shifted
            result = {d: p for d, p in result.items() if not p.is_zero()}
        self.memo[key] = result
        return result

    def _base(self, k: int, factors: tuple, pos: list, neg: list) -> dict:
        zero = [f[0] for f in factors if f[1] == 0]
        one = Polynomial.one(self.arity)
        if not neg:
            full = _den_key(f[0] for f in factors)
            if k >= 0:
                return {full: one}
            low = _bounded_sum(pos, -k, self.arity, strict=True)
            out = {full: one}
            zk = _den_key(zero)
            if zk == full:
                out[full] = one - low
            else:
                out[zk] = -low
            return {d: p for d, p in out.items() if not p.is_zero()}
        if k < 0:
            return {}
        return {_den_key(zero): _bounded_sum(neg, k, self.arity, strict=False)}


_SHIFT = 24


def _pack(m: Monomial) -> int:
    return sum(e << (_SHIFT * i) for i, e in enumerate(m))


def _unpack(key: int, arity: int) -> Monomial:
    mask = (1 << _SHIFT) - 1
    return tuple((key >> (_SHIFT * i)) & mask for i in range(arity))


def _times_one_minus(terms: dict, step: int) -> dict:
    """Multiply packed terms by ``1 - m`` where ``step`` is the packed ``m``."""
    out = dict(terms)
    get = out.get
    for key, c in terms.items():
        k = key + step
        v = get(k, 0) - c
        if v:
            out[k] = v
        else:
            del out[k]
    return out


def _pool(parts: Mapping[tuple, Polynomial], arity: int) -> NiceRational:
    """Bring all parts over the least common multiple of their denominators."""
    lcm: Counter = Counter()
    for den in parts:
        lcm |= Counter(dict(den))
    total: dict = {}
    for den, num in parts.items():
        have = dict(den)
        terms = {_pack(m): c for m, c in num.terms.items()}
        for m, k in lcm.items():
            step = _pack(m)
            for _ in range(k - have.get(m, 0)):
                terms = _times_one_minus(terms, step)
        for key, c in terms.items():
            total[key] = total.get(key, 0) + c
    num = Polynomial(arity, {_unpack(k, arity): c for k, c in total.items() if c})
    return NiceRational(num, lcm)


def omega_nonneg(f: XiLaurent, budget: int = 200_000) -> NiceRational:
    """Omega_>=: keep the non-negative xi-powers of ``f`` and set xi = 1."""
    arity = f.arity
    engine = _Elliott(arity, budget)
    parts: dict = {}
    for k in sorted(f.numerator):
        num = f.numerator[k]
        if num.is_zero():
            continue
        for den, p in engine.omega(k, f.factors).items():
            q = num * p
            parts[den] = parts[den] + q if den in parts else q
    return _pool(parts, arity)


def skew(h: NiceRational) -> NiceRational:
    """(t1 - t2) * h."""
    return h * (Polynomial.var(T1, 3) - Polynomial.var(T2, 3))


def _divide_t1(p: Polynomial) -> Polynomial:
    out = {}
    for m, c in p.terms.items():
        if m[T1] == 0:
            raise OmegaReductionError("numerator is not divisible by t1")
        out[(m[0] - 1,) + m[1:]] = c
    return Polynomial(p.arity, out)


def shrink_denominator(f: NiceRational) -> NiceRational:
    """Trade a factor ``1 - r^g`` for ``1 - r^j`` (j | g) when the numerator allows it.

    ``(1 - r^g) / (1 - r^j)`` is a polynomial, so the swap is legal exactly
    when ``num * (1 - r^j)`` is divisible by ``1 - r^g``.
    """
    num, den = f.num, f.den_counter()
    for m in sorted(den, key=mono_key, reverse=True):
        g = math.gcd(*m)
        root = tuple(e // g for e in m)
        while den[m] > 0:
            for j in (j for j in range(1, g) if g % j == 0):
                small = _mono_pow(root, j)
                lifted = num - num.mul_monomial(small)
                q = divide_one_minus(lifted, m)
                if q is not None:
                    num = q
                    den[m] -= 1
                    den[small] += 1
                    break
            else:
                break
    return NiceRational(num, den).cancel()


def multiplicity_series_closed(h: NiceRational, budget: int = 200_000, cancel: bool = True) -> NiceRational:
    """Closed form of the multiplicity series: ``(1/t1) Omega_>= (t1 - t2) h(t1 xi, t2/xi, z)``."""
    if h.arity != 3:
        raise ArityError("expected a series in (t1, t2, z)")
    lau = XiLaurent.from_nice(skew(h))
    res = omega_nonneg(lau, budget)
    res = NiceRational(_divide_t1(res.num), res.den)
    return shrink_denominator(res.cancel()) if cancel else res


# ---------------------------------------------------------------------------
# Fallback: rational reconstruction from the truncated oracle


def candidate_denominator(h: NiceRational, xi_weights: Sequence[int] = (1, -1, 0)) -> Counter:
    """Extreme rays of the cone cut out by non-negative xi-degree."""
    factors = [(m, sum(a * w for a, w in zip(m, xi_weights))) for m, _ in h.den]
    den: Counter = Counter()
    for m, e in factors:
        if e >= 0:
            den[m] = 1
    for (mi, ei), (mj, ej) in product(factors, factors):
        if ei > 0 and ej < 0:
            g = math.gcd(ei, -ej)
            den[_mono_mul(_mono_pow(mi, -ej // g), _mono_pow(mj, ei // g))] = 1
    return den


def reconstruct(h: NiceRational, den: Counter | None = None, max_order: int = 60) -> NiceRational:
    """Fit a numerator over ``den`` to the oracle series and confirm at a higher order."""
    den = den if den is not None else candidate_denominator(h)
    dpoly = NiceRational(Polynomial.one(3), den).denominator_polynomial()
    dz = dpoly.degree(Z_WEIGHTS)
    for order in range(dz + 2, max_order + 1, 2):
        check = order + dz + 2
        oracle = multiplicity_series_truncated(h, check)
        prod_series = oracle * TruncatedSeries.from_polynomial(dpoly, check, Z_WEIGHTS)
        full = prod_series.to_polynomial()
        if full.degree(Z_WEIGHTS) <= order:
            out = NiceRational(full, den)
            if nice_expand(out, check, Z_WEIGHTS) == oracle:
                return out.cancel()
    raise OmegaReductionError("rational reconstruction did not stabilise")


def multiplicity_series(h: NiceRational, budget: int = 200_000) -> tuple[NiceRational, str]:
    """Closed form by Elliott reduction, falling back to reconstruction; returns (form, method)."""
    try:
        return multiplicity_series_closed(h, budget), "elliott"
    except OmegaReductionError:
        return reconstruct(h), "reconstruction"


def constants_series(partition: Sequence[int], space: str = "lie") -> NiceRational:
    """GL_2 character whose multiplicity series is the bigraded series of the constants."""
    d = sum(p + 1 for p in partition)
    if space == "lie":
        h = hilbert_free_metabelian(d)
    elif space == "commutator":
        h = hilbert_free_metabelian(d, commutator_only=True)
    elif space == "poly":
        h = hilbert_polynomial_ring(d)
    else:
        raise ValueError(f"unknown space {space!r}")
    return gl2_substitute(h, partition)


def format_series_json(series: TruncatedSeries) -> list[dict]:
    out = []
    for (a, b, n), c in sorted(series.terms.items(), key=lambda t: (t[0][2], -t[0][0], t[0][1])):
        out.append({"coeff": str(c), "t1": a, "t2": b, "z": n})
    return out
