"""Exact rational arithmetic on sparse multivariate polynomials and "nice"
rational functions (polynomial over a product of ``(1 - monomial)`` factors).

Coefficients are :class:`fractions.Fraction` values; integral coefficients are
stored as plain ``int`` (an exact subset of the rationals) because integer
arithmetic dominates every computation in this package and is much faster.

Monomials are exponent tuples.  The canonical order is graded lexicographic
with ``x1 < x2 < ... < xd``: total degree first, then the exponent of the
highest-index variable, and so on downwards.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Monomial = tuple  # tuple[int, ...] of non-negative exponents
Coeff = Union[int, Fraction]


class ArityError(ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


class NotInvertibleError(ValueError):
    """A denominator factor cannot be inverted as a power series."""


def rational(value) -> Coeff:
    """Coerce ``value`` to an exact rational; integral values come back as ``int``."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return rational(Fraction(value))
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not supported")
    num, den = getattr(value, "numerator", None), getattr(value, "denominator", None)
    if num is not None and den is not None:
        return rational(Fraction(int(num), int(den)))
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def format_rational(c: Coeff) -> str:
    c = rational(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def mono_degree(m: Monomial, weights: Sequence[int] | None = None) -> int:
    if weights is None:
        return sum(m)
    return sum(w * e for w, e in zip(weights, m))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_key(m: Monomial):
    """Sort key for the canonical graded-lex order (x1 < x2 < ... < xd)."""
    return (sum(m), m[::-1])


def format_monomial(m: Monomial, names: Sequence[str] | None = None) -> str:
    if names is None:
        names = [f"x{i + 1}" for i in range(len(m))]
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def default_names(arity: int) -> list[str]:
    return [f"x{i + 1}" for i in range(arity)]


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[Monomial, Coeff] | None = None, *, _trusted: bool = False):
        if arity < 0:
            raise ValueError("arity must be non-negative")
        self.arity = arity
        self._hash = None
        if _trusted:
            self._terms = terms
            return
        clean: dict[Monomial, Coeff] = {}
        if terms:
            for m, c in terms.items():
                m = tuple(int(e) for e in m)
                if len(m) != arity:
                    raise ArityError(f"monomial {m} has {len(m)} exponents, expected {arity}")
                if any(e < 0 for e in m):
                    raise ValueError(f"negative exponent in {m}")
                c = rational(c)
                if c:
                    clean[m] = rational(clean.get(m, 0) + c)
                    if not clean[m]:
                        del clean[m]
        self._terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, arity: int) -> "Polynomial":
        return cls(arity, {}, _trusted=True)

    @classmethod
    def constant(cls, c, arity: int) -> "Polynomial":
        c = rational(c)
        return cls(arity, {(0,) * arity: c} if c else {}, _trusted=True)

    @classmethod
    def one(cls, arity: int) -> "Polynomial":
        return cls.constant(1, arity)

    @classmethod
    def var(cls, i: int, arity: int) -> "Polynomial":
        """The variable with 0-based index ``i``."""
        if not 0 <= i < arity:
            raise ValueError(f"variable index {i} out of range for arity {arity}")
        e = [0] * arity
        e[i] = 1
        return cls(arity, {tuple(e): 1}, _trusted=True)

    @classmethod
    def monomial(cls, exps: Monomial, coeff=1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): coeff})

    # -- basic access -----------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Coeff]:
        return self._terms

    def items(self) -> list[tuple[Monomial, Coeff]]:
        """Terms in descending canonical order."""
        return sorted(self._terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def coefficient(self, m: Monomial) -> Coeff:
        return self._terms.get(tuple(m), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self, weights: Sequence[int] | None = None) -> int:
        if not self._terms:
            return -1
        return max(mono_degree(m, weights) for m in self._terms)

    def min_degree(self, weights: Sequence[int] | None = None) -> int:
        if not self._terms:
            return -1
        return min(mono_degree(m, weights) for m in self._terms)

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        return len({mono_degree(m, weights) for m in self._terms}) <= 1

    def homogeneous_part(self, n: int, weights: Sequence[int] | None = None) -> "Polynomial":
        return Polynomial(self.arity, {m: c for m, c in self._terms.items() if mono_degree(m, weights) == n}, _trusted=True)

    def constant_term(self) -> Coeff:
        return self._terms.get((0,) * self.arity, 0)

    def leading(self) -> tuple[Monomial, Coeff]:
        """Largest term in the canonical order."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=mono_key)
        return m, self._terms[m]

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Polynomial") -> None:
        if self.arity != other.arity:
            raise ArityError(f"arity mismatch: {self.arity} vs {other.arity}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(other, self.arity)

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = rational(v)
            else:
                out.pop(m, None)
        return Polynomial(self.arity, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.arity, {m: -c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = rational(c)
        if not c:
            return Polynomial.zero(self.arity)
        return Polynomial(self.arity, {m: rational(v * c) for m, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: dict[Monomial, Coeff] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.arity, {m: rational(c) for m, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = Polynomial.one(self.arity)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, m: Monomial, c=1) -> "Polynomial":
        c = rational(c)
        if not c:
            return Polynomial.zero(self.arity)
        return Polynomial(
            self.arity,
            {tuple(a + b for a, b in zip(k, m)): rational(v * c) for k, v in self._terms.items()},
            _trusted=True,
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.arity == other.arity and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Polynomial.constant(other, self.arity)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution ---------------------------------------
    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                k = list(m)
                k[i] -= 1
                out[tuple(k)] = rational(c * e)
        return Polynomial(self.arity, out, _trusted=True)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        return poly_substitute(self, images)

    def substitute_monomials(self, images: Sequence[Monomial], arity: int) -> "Polynomial":
        """Ring map sending variable ``i`` to the monomial ``images[i]`` (an exponent tuple)."""
        if len(images) != self.arity:
            raise ArityError(f"expected {self.arity} images, got {len(images)}")
        out: dict[Monomial, Coeff] = {}
        for m, c in self._terms.items():
            k = [0] * arity
            for e, img in zip(m, images):
                if e:
                    for j, x in enumerate(img):
                        k[j] += e * x
            k = tuple(k)
            out[k] = out.get(k, 0) + c
        return Polynomial(arity, {m: rational(c) for m, c in out.items() if c}, _trusted=True)

    def extend(self, arity: int, offset: int = 0) -> "Polynomial":
        """Embed into a ring with more variables, shifting variable indices by ``offset``."""
        if arity < self.arity + offset:
            raise ArityError("target ring too small")
        pad_after = arity - self.arity - offset
        return Polynomial(
            arity,
            {(0,) * offset + m + (0,) * pad_after: c for m, c in self._terms.items()},
            _trusted=True,
        )

    def restrict(self, arity: int) -> "Polynomial":
        """Drop trailing variables that do not occur."""
        for m in self._terms:
            if any(m[arity:]):
                raise ArityError("polynomial involves variables beyond the requested arity")
        return Polynomial(arity, {m[:arity]: c for m, c in self._terms.items()}, _trusted=True)

    def evaluate(self, values: Sequence) -> Coeff:
        total = 0
        for m, c in self._terms.items():
            v = c
            for x, e in zip(values, m):
                if e:
                    v = v * x**e
            total += v
        return rational(total)

    # -- normalisation ----------------------------------------------------
    def primitive(self) -> "Polynomial":
        """Integer coefficients with content 1 and positive leading coefficient."""
        if not self._terms:
            return self
        den = 1
        for c in self._terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        ints = {m: int(c * den) for m, c in self._terms.items()}
        g = 0
        for v in ints.values():
            g = math.gcd(g, v)
        _, lead = self.leading()
        if lead < 0:
            g = -g
        return Polynomial(self.arity, {m: v // g for m, v in ints.items()}, _trusted=True)

    # -- rendering --------------------------------------------------------
    def format(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        out = []
        for idx, (m, c) in enumerate(self.items()):
            neg = c < 0
            a = -c if neg else c
            mono = format_monomial(m, names)
            if mono == "1":
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            if idx == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self.arity}, {self.format()!r})"

    def to_json(self) -> list:
        return [[format_rational(c), list(m)] for m, c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable, arity: int) -> "Polynomial":
        return cls(arity, {tuple(m): Fraction(c) for c, m in data})


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.arity != b.arity:
        raise ArityError(f"arity mismatch: {a.arity} vs {b.arity}")
    return a * b


def poly_substitute(p: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Ring homomorphism sending variable ``i`` of ``p`` to ``images[i]``."""
    if len(images) != p.arity:
        raise ArityError(f"expected {p.arity} images, got {len(images)}")
    if not images:
        return p
    target = images[0].arity
    if any(img.arity != target for img in images):
        raise ArityError("substitution images live in different rings")
    powers: list[list[Polynomial]] = [[Polynomial.one(target)] for _ in images]

    def power(i: int, e: int) -> Polynomial:
        cache = powers[i]
        while len(cache) <= e:
            cache.append(cache[-1] * images[i])
        return cache[e]

    out = Polynomial.zero(target)
    for m, c in p.terms.items():
        term = Polynomial.constant(c, target)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# Truncated power series


class TruncatedSeries:
    """Power series known through weighted degree ``order``.

    ``weights`` selects the grading used for truncation: all ones gives total
    degree, ``(0, 0, 1)`` on ``(t1, t2, z)`` truncates on the z-degree only.
    """

    __slots__ = ("arity", "order", "weights", "_terms")

    def __init__(self, arity: int, order: int, terms: Mapping[Monomial, Coeff] | None = None,
                 weights: Sequence[int] | None = None):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        self.arity = arity
        self.order = order
        self.weights = tuple(weights) if weights is not None else (1,) * arity
        if len(self.weights) != arity:
            raise ArityError("weight vector length differs from arity")
        clean = {}
        for m, c in (terms or {}).items():
            c = rational(c)
            if c and mono_degree(m, self.weights) <= order:
                clean[tuple(m)] = c
        self._terms = clean

    @classmethod
    def from_polynomial(cls, p: Polynomial, order: int, weights=None) -> "TruncatedSeries":
        return cls(p.arity, order, p.terms, weights)

    @property
    def terms(self) -> Mapping[Monomial, Coeff]:
        return self._terms

    def coefficient(self, m: Monomial) -> Coeff:
        m = tuple(m)
        if mono_degree(m, self.weights) > self.order:
            raise ValueError(f"coefficient of {m} lies beyond the truncation order {self.order}")
        return self._terms.get(m, 0)

    def slice(self, n: int) -> Polynomial:
        """Weighted-degree-``n`` part as a polynomial."""
        if n > self.order:
            raise ValueError("slice beyond truncation order")
        return Polynomial(self.arity, {m: c for m, c in self._terms.items() if mono_degree(m, self.weights) == n},
                          _trusted=True)

    def to_polynomial(self) -> Polynomial:
        return Polynomial(self.arity, dict(self._terms), _trusted=True)

    def _compatible(self, other: "TruncatedSeries") -> int:
        if self.arity != other.arity:
            raise ArityError("arity mismatch")
        if self.weights != other.weights:
            raise ValueError("series use different gradings")
        return min(self.order, other.order)

    def _wrap(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, Polynomial):
            return TruncatedSeries.from_polynomial(other, self.order, self.weights)
        return TruncatedSeries(self.arity, self.order, {(0,) * self.arity: other}, self.weights)

    def __add__(self, other) -> "TruncatedSeries":
        other = self._wrap(other)
        order = self._compatible(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return TruncatedSeries(self.arity, order, out, self.weights)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.arity, self.order, {m: -c for m, c in self._terms.items()}, self.weights)

    def __sub__(self, other) -> "TruncatedSeries":
        return self + (-self._wrap(other))

    def __rsub__(self, other) -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other) -> "TruncatedSeries":
        other = self._wrap(other)
        order = self._compatible(other)
        w = self.weights
        out: dict[Monomial, Coeff] = {}
        b_items = [(m, c, mono_degree(m, w)) for m, c in other._terms.items()]
        for m1, c1 in self._terms.items():
            d1 = mono_degree(m1, w)
            for m2, c2, d2 in b_items:
                if d1 + d2 <= order:
                    m = tuple(a + b for a, b in zip(m1, m2))
                    out[m] = out.get(m, 0) + c1 * c2
        return TruncatedSeries(self.arity, order, out, w)

    __rmul__ = __mul__

    def divide_by_one_minus(self, m: Monomial) -> "TruncatedSeries":
        """Multiply by the geometric series ``1/(1 - m)``."""
        step = mono_degree(m, self.weights)
        if step <= 0:
            raise NotInvertibleError(f"factor (1 - {format_monomial(m)}) has non-positive degree in this grading")
        out = dict(self._terms)
        power = m
        k = 1
        while k * step <= self.order:
            for base, c in self._terms.items():
                if mono_degree(base, self.weights) + k * step <= self.order:
                    key = tuple(a + b for a, b in zip(base, power))
                    out[key] = out.get(key, 0) + c
            power = tuple(a + b for a, b in zip(power, m))
            k += 1
        return TruncatedSeries(self.arity, self.order, out, self.weights)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return TruncatedSeries(self.arity, order, self._terms, self.weights)

    def substitute_monomials(self, images: Sequence[Monomial], arity: int, weights: Sequence[int]) -> "TruncatedSeries":
        """Monomial substitution; ``weights`` must give each image the degree of its source variable."""
        for i, img in enumerate(images):
            if mono_degree(img, weights) != self.weights[i]:
                raise ValueError("substitution does not preserve the truncation grading")
        p = self.to_polynomial().substitute_monomials(images, arity)
        return TruncatedSeries(arity, self.order, p.terms, weights)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        order = self._compatible(other)
        a = {m: c for m, c in self._terms.items() if mono_degree(m, self.weights) <= order}
        b = {m: c for m, c in other._terms.items() if mono_degree(m, self.weights) <= order}
        return a == b

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, {self.to_polynomial().format()!r})"

    def coefficients_1d(self) -> list[Coeff]:
        """Coefficient list for a univariate series."""
        if self.arity != 1:
            raise ArityError("coefficients_1d needs a univariate series")
        return [self._terms.get((n,), 0) for n in range(self.order + 1)]


# ---------------------------------------------------------------------------
# Nice rational functions


def _factor_key(factors: Mapping[Monomial, int]) -> tuple:
    return tuple(sorted(((m, k) for m, k in factors.items() if k), key=lambda t: mono_key(t[0])))


class NiceRational:
    """``numerator / prod (1 - m)^k`` with monomials ``m`` and positive ``k``.

    No polynomial gcd is ever taken.  Equality is decided by cross
    multiplication, so two different factored forms of the same function
    compare equal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        if isinstance(den, Mapping):
            items = den.items()
        else:
            items = den
        acc: Counter = Counter()
        for m, k in items:
            m = tuple(m)
            if len(m) != num.arity:
                raise ArityError("denominator monomial arity differs from numerator")
            if not any(m):
                raise NotInvertibleError("denominator factor (1 - 1) is not invertible")
            if k < 0:
                raise ValueError("negative factor multiplicity")
            acc[m] += k
        self.num = num
        self.den = _factor_key(acc)

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "NiceRational":
        return cls(p, ())

    @classmethod
    def geometric(cls, m: Monomial, arity: int | None = None) -> "NiceRational":
        m = tuple(m)
        return cls(Polynomial.one(len(m)), [(m, 1)])

    @property
    def arity(self) -> int:
        return self.num.arity

    def den_counter(self) -> Counter:
        return Counter(dict(self.den))

    def denominator_polynomial(self) -> Polynomial:
        out = Polynomial.one(self.arity)
        for m, k in self.den:
            out = out * (Polynomial.one(self.arity) - Polynomial.monomial(m)) ** k
        return out

    def _coerce(self, other) -> "NiceRational":
        if isinstance(other, NiceRational):
            if other.arity != self.arity:
                raise ArityError("arity mismatch")
            return other
        if isinstance(other, Polynomial):
            if other.arity != self.arity:
                raise ArityError("arity mismatch")
            return NiceRational(other)
        return NiceRational(Polynomial.constant(other, self.arity))

    @staticmethod
    def _lift(num: Polynomial, have: Counter, want: Counter) -> Polynomial:
        one = Polynomial.one(num.arity)
        for m, k in want.items():
            extra = k - have.get(m, 0)
            if extra > 0:
                num = num * (one - Polynomial.monomial(m)) ** extra
        return num

    def _common(self, other: "NiceRational"):
        a, b = self.den_counter(), other.den_counter()
        lcm = a | b
        return self._lift(self.num, a, lcm), self._lift(other.num, b, lcm), lcm

    def __add__(self, other) -> "NiceRational":
        other = self._coerce(other)
        x, y, den = self._common(other)
        return NiceRational(x + y, den)

    __radd__ = __add__

    def __neg__(self) -> "NiceRational":
        return NiceRational(-self.num, self.den)

    def __sub__(self, other) -> "NiceRational":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "NiceRational":
        return (-self) + other

    def __mul__(self, other) -> "NiceRational":
        other = self._coerce(other)
        return NiceRational(self.num * other.num, self.den_counter() + other.den_counter())

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "NiceRational":
        if n < 0:
            raise ValueError("negative powers are not nice")
        return NiceRational(self.num**n, {m: k * n for m, k in self.den})

    def divide_by_one_minus(self, m: Monomial, k: int = 1) -> "NiceRational":
        c = self.den_counter()
        c[tuple(m)] += k
        return NiceRational(self.num, c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (NiceRational, Polynomial, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        x, y, _ = self._common(other)
        return x == y

    __hash__ = None  # equality is semantic; no canonical form to hash

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def expand(self, order: int, weights: Sequence[int] | None = None) -> TruncatedSeries:
        return nice_expand(self, order, weights)

    def substitute_monomials(self, images: Sequence[Monomial], arity: int) -> "NiceRational":
        num = self.num.substitute_monomials(images, arity)
        one = Polynomial.one(arity)
        den: Counter = Counter()
        for m, k in self.den:
            img = Polynomial.monomial(m + ()).substitute_monomials(images, arity)
            (mm, _), = img.terms.items()
            if not any(mm):
                raise NotInvertibleError("substitution turns a denominator factor into (1 - 1)")
            den[mm] += k
        return NiceRational(num, den)

    def cancel(self) -> "NiceRational":
        """Divide out every denominator factor that divides the numerator exactly."""
        num = self.num
        den = self.den_counter()
        changed = True
        while changed:
            changed = False
            for m in sorted(den, key=mono_key):
                while den[m] > 0:
                    q = divide_one_minus(num, m)
                    if q is None:
                        break
                    num = q
                    den[m] -= 1
                    changed = True
        return NiceRational(num, den)

    def format(self, names: Sequence[str] | None = None) -> str:
        num = self.num.format(names)
        if not self.den:
            return num
        parts = []
        for m, k in self.den:
            f = f"(1-{format_monomial(m, names)})"
            parts.append(f if k == 1 else f"{f}^{k}")
        return f"({num}) / ({'*'.join(parts)})"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"NiceRational({self.format()!r})"

    def to_json(self) -> dict:
        return {"numerator": self.num.to_json(), "denominator": [[list(m), k] for m, k in self.den]}

    @classmethod
    def from_json(cls, data: Mapping, arity: int) -> "NiceRational":
        return cls(Polynomial.from_json(data["numerator"], arity), [(tuple(m), k) for m, k in data["denominator"]])


def divide_one_minus(p: Polynomial, m: Monomial) -> Polynomial | None:
    """Exact quotient ``p / (1 - m)``, or ``None`` when it is not a polynomial.

    Along each line ``base + j*m`` the quotient is the running sum of the
    coefficients of ``p``; division is exact iff every line sums to zero.
    """
    if p.is_zero():
        return p
    support = [i for i, e in enumerate(m) if e]
    if not support:
        raise NotInvertibleError("cannot divide by 1 - 1")
    lines: dict = {}
    for c, v in p.terms.items():
        t = min(c[i] // m[i] for i in support)
        base = tuple(a - t * b for a, b in zip(c, m))
        lines.setdefault(base, []).append((t, v))
    out: dict = {}
    for base, pts in lines.items():
        pts.sort()
        run = 0
        for (t, v), nxt in zip(pts, pts[1:] + [(None, None)]):
            run += v
            if nxt[0] is None:
                if run:
                    return None
                break
            if run:
                for j in range(t, nxt[0]):
                    out[tuple(a + j * b for a, b in zip(base, m))] = run
    return Polynomial(p.arity, out)


def nice_expand(f: NiceRational, order: int, weights: Sequence[int] | None = None) -> TruncatedSeries:
    """Power-series expansion of ``f`` through weighted degree ``order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    s = TruncatedSeries.from_polynomial(f.num, order, weights)
    for m, k in f.den:
        for _ in range(k):
            s = s.divide_by_one_minus(m)
    return s


def nice_arith(a: NiceRational, b: NiceRational, op: str) -> NiceRational:
    if a.arity != b.arity:
        raise ArityError(f"arity mismatch: {a.arity} vs {b.arity}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def variables(arity: int) -> list[Polynomial]:
    return [Polynomial.var(i, arity) for i in range(arity)]


def iter_monomials(arity: int, degree: int) -> Iterator[Monomial]:
    """All exponent tuples of the given total degree, ascending in the canonical order."""
    def rec(i: int, left: int):
        if i == arity - 1:
            yield (left,)
            return
        for e in range(left + 1):
            for rest in rec(i + 1, left - e):
                yield (e,) + rest
    if arity == 0:
        if degree == 0:
            yield ()
        return
    yield from sorted(rec(0, degree), key=mono_key)
