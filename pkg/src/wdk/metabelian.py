"""The free metabelian Lie algebra and its abelian wreath-product model.

Elements of the commutator ideal are spanned by left-normed normal forms
``[x_j1, x_j2, x_j3, ..., x_jk]`` with ``j1 > j2 <= j3 <= ... <= jk``.  The
embedding ``x_j -> a_j + b_j`` into the abelian wreath product sends such a
word to ``(a_j1 x_j2 - a_j2 x_j1) * x_j3 ... x_jk``: the a-coordinates are
ordinary polynomials, so all algebra here is polynomial arithmetic.

Indices are 1-based in words (matching the bracket notation) and 0-based in
coordinate tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Sequence

from .parsing import ParseError, evaluate, parse
from .polyarith import ArityError, Coeff, Monomial, Polynomial, format_rational, rational


class NotInImageError(ValueError):
    """A wreath element that is not the image of a Lie element."""


@dataclass(frozen=True, order=True)
class LieMonomial:
    """Normal-form left-normed commutator of degree >= 2."""

    word: tuple

    def __post_init__(self):
        w = tuple(int(j) for j in self.word)
        object.__setattr__(self, "word", w)
        if len(w) < 2:
            raise ValueError("a commutator has at least two letters")
        if any(j < 1 for j in w):
            raise ValueError("letters are 1-based indices")
        j1, j2, tail = w[0], w[1], w[2:]
        if not j1 > j2:
            raise ValueError(f"{self} is not in normal form: need j1 > j2")
        if any(t < j2 for t in tail) or list(tail) != sorted(tail):
            raise ValueError(f"{self} is not in normal form: tail must be sorted and >= j2")

    @property
    def degree(self) -> int:
        return len(self.word)

    def multidegree(self, d: int) -> tuple:
        out = [0] * d
        for j in self.word:
            out[j - 1] += 1
        return tuple(out)

    def sort_key(self):
        return (self.word[0], self.word[1], self.word[2:])

    def __str__(self) -> str:
        return "[" + ",".join(f"x{j}" for j in self.word) + "]"


def basis_slice(d: int, degree: int | None = None, multidegree: Sequence[int] | None = None) -> list[LieMonomial]:
    """Normal forms of the given total degree or multidegree, in canonical order."""
    if (degree is None) == (multidegree is None):
        raise ValueError("give exactly one of degree and multidegree")
    out = []
    if multidegree is not None:
        mu = tuple(multidegree)
        if len(mu) != d:
            raise ArityError("multidegree length differs from d")
        if sum(mu) < 2:
            return []
        support = [j + 1 for j in range(d) if mu[j]]
        for j2 in support:
            for j1 in support:
                if j1 <= j2:
                    continue
                rest = list(mu)
                rest[j1 - 1] -= 1
                rest[j2 - 1] -= 1
                if rest[j1 - 1] < 0 or rest[j2 - 1] < 0:
                    continue
                tail = []
                for j in range(1, d + 1):
                    tail.extend([j] * rest[j - 1])
                if tail and tail[0] < j2:
                    continue
                out.append(LieMonomial((j1, j2) + tuple(tail)))
    else:
        if degree < 2:
            return []
        for j2 in range(1, d + 1):
            for j1 in range(j2 + 1, d + 1):
                for tail in combinations_with_replacement(range(j2, d + 1), degree - 2):
                    out.append(LieMonomial((j1, j2) + tail))
    out.sort(key=LieMonomial.sort_key)
    return out


def commutator_dimension(d: int, n: int) -> int:
    """Closed-form count of normal forms of degree n (used only as a test oracle aid)."""
    from math import comb
    return (n - 1) * comb(n + d - 2, n) if n >= 2 else 0


@dataclass(frozen=True)
class WreathElement:
    """``sum a_i f_i + sum beta_j b_j`` in the abelian wreath product."""

    a: tuple
    b: tuple

    def __post_init__(self):
        a = tuple(self.a)
        b = tuple(rational(x) for x in self.b)
        if len(a) != len(b):
            raise ArityError("a- and b-coordinates disagree on d")
        d = len(a)
        for f in a:
            if not isinstance(f, Polynomial) or f.arity != d:
                raise ArityError("a-coordinates must be polynomials in d variables")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def arity(self) -> int:
        return len(self.a)

    @classmethod
    def zero(cls, d: int) -> "WreathElement":
        return cls(tuple(Polynomial.zero(d) for _ in range(d)), (0,) * d)

    @classmethod
    def from_a(cls, a: Sequence[Polynomial]) -> "WreathElement":
        return cls(tuple(a), (0,) * len(a))

    def _check(self, other: "WreathElement") -> None:
        if self.arity != other.arity:
            raise ArityError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "WreathElement") -> "WreathElement":
        self._check(other)
        return WreathElement(tuple(x + y for x, y in zip(self.a, other.a)),
                             tuple(x + y for x, y in zip(self.b, other.b)))

    def __neg__(self) -> "WreathElement":
        return WreathElement(tuple(-x for x in self.a), tuple(-x for x in self.b))

    def __sub__(self, other: "WreathElement") -> "WreathElement":
        return self + (-other)

    def scale(self, c) -> "WreathElement":
        c = rational(c)
        return WreathElement(tuple(x.scale(c) for x in self.a), tuple(x * c for x in self.b))

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return module_action(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.a) and not any(self.b)

    def has_zero_b(self) -> bool:
        return not any(self.b)

    def coordinates(self) -> dict:
        """Sparse vector ``(i, monomial) -> coeff`` of the a-part (0-based ``i``)."""
        out = {}
        for i, f in enumerate(self.a):
            for m, c in f.terms.items():
                out[(i, m)] = c
        return out

    @classmethod
    def from_coordinates(cls, d: int, coords: Mapping) -> "WreathElement":
        buckets = [dict() for _ in range(d)]
        for (i, m), c in coords.items():
            if c:
                buckets[i][m] = c
        return cls.from_a([Polynomial(d, t) for t in buckets])

    def multidegrees(self) -> set:
        """Multidegrees (as Lie elements) of the homogeneous components present."""
        d = self.arity
        out = set()
        for i, f in enumerate(self.a):
            for m in f.terms:
                mu = list(m)
                mu[i] += 1
                out.add(tuple(mu))
        for j, x in enumerate(self.b):
            if x:
                mu = [0] * d
                mu[j] = 1
                out.add(tuple(mu))
        return out

    def format(self) -> str:
        parts = []
        for i, f in enumerate(self.a):
            if not f.is_zero():
                parts.append(f"a{i + 1}*({f.format()})")
        for j, x in enumerate(self.b):
            if x:
                parts.append(f"{format_rational(x)}*b{j + 1}")
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.format()


def embed_word(word: Sequence[int], d: int) -> WreathElement:
    """Image of an arbitrary left-normed word (not necessarily in normal form)."""
    word = tuple(word)
    if any(not 1 <= j <= d for j in word):
        raise ValueError(f"word {word} uses letters outside x1..x{d}")
    if len(word) == 1:
        j = word[0] - 1
        a = [Polynomial.zero(d)] * d
        a[j] = Polynomial.one(d)
        b = [0] * d
        b[j] = 1
        return WreathElement(tuple(a), tuple(b))
    j1, j2 = word[0] - 1, word[1] - 1
    tail = [0] * d
    for j in word[2:]:
        tail[j - 1] += 1
    a = [dict() for _ in range(d)]

    def add(i, extra, c):
        m = list(tail)
        m[extra] += 1
        m = tuple(m)
        a[i][m] = a[i].get(m, 0) + c

    add(j1, j2, 1)
    add(j2, j1, -1)
    return WreathElement.from_a([Polynomial(d, t) for t in a])


@dataclass(frozen=True)
class LieElement:
    """Element of the free metabelian Lie algebra in normal-form coordinates."""

    arity: int
    linear: tuple = ()
    terms: Mapping = field(default_factory=dict)

    def __post_init__(self):
        lin = tuple(rational(c) for c in self.linear) if self.linear else (0,) * self.arity
        if len(lin) != self.arity:
            raise ArityError("linear part has the wrong length")
        clean = {}
        for w, c in dict(self.terms).items():
            mono = w if isinstance(w, LieMonomial) else LieMonomial(tuple(w))
            if max(mono.word) > self.arity:
                raise ArityError(f"{mono} uses letters beyond x{self.arity}")
            c = rational(c)
            if c:
                clean[mono] = rational(clean.get(mono, 0) + c)
                if not clean[mono]:
                    del clean[mono]
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def generator(cls, j: int, d: int) -> "LieElement":
        lin = [0] * d
        lin[j - 1] = 1
        return cls(d, tuple(lin), {})

    @classmethod
    def word(cls, word: Sequence[int], d: int, coeff=1) -> "LieElement":
        """Any left-normed word, rewritten into normal form."""
        return lie_from_wreath(embed_word(word, d).scale(coeff))

    @classmethod
    def parse(cls, text: str, d: int) -> "LieElement":
        return lie_from_wreath(parse_wreath(text, d))

    def __add__(self, other: "LieElement") -> "LieElement":
        if self.arity != other.arity:
            raise ArityError("arity mismatch")
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return LieElement(self.arity, tuple(x + y for x, y in zip(self.linear, other.linear)), terms)

    def __neg__(self) -> "LieElement":
        return LieElement(self.arity, tuple(-x for x in self.linear), {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, c) -> "LieElement":
        c = rational(c)
        return LieElement(self.arity, tuple(x * c for x in self.linear), {w: v * c for w, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms and not any(self.linear)

    def items(self) -> list:
        return sorted(self.terms.items(), key=lambda t: (t[0].degree, t[0].sort_key()))

    def format(self) -> str:
        parts = []
        for j, c in enumerate(self.linear):
            if c:
                parts.append((c, f"x{j + 1}"))
        for w, c in self.items():
            parts.append((c, str(w)))
        if not parts:
            return "0"
        out = []
        for i, (c, s) in enumerate(parts):
            neg = c < 0
            a = -c if neg else c
            body = s if a == 1 else f"{format_rational(a)}{s}"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __str__(self) -> str:
        return self.format()

    def to_json(self) -> dict:
        return {
            "linear": [format_rational(c) for c in self.linear],
            "terms": [{"coeff": format_rational(c), "word": list(w.word)} for w, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LieElement":
        lin = tuple(Fraction(c) for c in data["linear"])
        terms = {LieMonomial(tuple(t["word"])): Fraction(t["coeff"]) for t in data["terms"]}
        return cls(len(lin), lin, terms)


def parse_wreath(text: str, d: int) -> WreathElement:
    """Evaluate a linear combination of (left-normed) brackets and letters."""

    def leaf(node):
        if node[0] == "bracket":
            word = []
            for name, idx in node[1]:
                if name != "x" or idx is None:
                    raise ParseError(f"unknown letter {name}{idx}")
                word.append(idx)
            return embed_word(word, d)
        name, idx = node[1], node[2]
        if name == "x" and idx is not None:
            return embed_word((idx,), d)
        raise ParseError(f"unknown symbol {name}{idx}")

    value = evaluate(parse(text), leaf)
    if not isinstance(value, WreathElement):
        raise ParseError(f"{text!r} is not a Lie element")
    return value


def embed(e: LieElement) -> WreathElement:
    """The embedding x_j -> a_j + b_j, extended to the whole algebra."""
    d = e.arity
    a = [dict() for _ in range(d)]
    for j, c in enumerate(e.linear):
        if c:
            a[j][(0,) * d] = c
    for w, c in e.terms.items():
        j1, j2 = w.word[0] - 1, w.word[1] - 1
        tail = [0] * d
        for j in w.word[2:]:
            tail[j - 1] += 1
        m1 = list(tail)
        m1[j2] += 1
        m1 = tuple(m1)
        m2 = list(tail)
        m2[j1] += 1
        m2 = tuple(m2)
        a[j1][m1] = a[j1].get(m1, 0) + c
        a[j2][m2] = a[j2].get(m2, 0) - c
    return WreathElement(tuple(Polynomial(d, t) for t in a), e.linear)


def wreath_bracket(u: WreathElement, v: WreathElement) -> WreathElement:
    """[u, v] with [C, C] = [B, B] = 0 and [a_j f, b_i] = a_j f x_i."""
    u._check(v)
    d = u.arity
    xs = [Polynomial.var(i, d) for i in range(d)]
    lin_v = Polynomial.zero(d)
    lin_u = Polynomial.zero(d)
    for j in range(d):
        if v.b[j]:
            lin_v = lin_v + xs[j].scale(v.b[j])
        if u.b[j]:
            lin_u = lin_u + xs[j].scale(u.b[j])
    a = tuple(f * lin_v - g * lin_u for f, g in zip(u.a, v.a))
    return WreathElement(a, (0,) * d)


def module_action(u: WreathElement, p: Polynomial) -> WreathElement:
    """u * p(ad x_1, ..., ad x_d) for u in the commutator part."""
    if not u.has_zero_b():
        raise ValueError("the polynomial action is defined on elements with zero b-part only")
    if p.arity != u.arity:
        raise ArityError("polynomial and element disagree on d")
    return WreathElement.from_a([f * p for f in u.a])


def in_commutator_ideal(u: WreathElement) -> bool:
    if not u.has_zero_b():
        return False
    d = u.arity
    total = Polynomial.zero(d)
    for i, f in enumerate(u.a):
        if not f.is_zero():
            total = total + f.mul_monomial(tuple(1 if k == i else 0 for k in range(d)))
    return total.is_zero()


def lie_from_wreath(u: WreathElement) -> LieElement:
    """Inverse of :func:`embed` on its image.

    Each normal form ``[x_j1, x_j2, tail]`` contributes exactly one a-term
    whose monomial has smallest letter below the coordinate index (namely
    ``a_j1 * x_j2 * tail``); every other a-term of an image has smallest
    letter at or above its index.  Reading those coefficients off is a
    triangular solve, and the result is verified by re-embedding.
    """
    d = u.arity
    lin = u.b
    rest = [dict(f.terms) for f in u.a]
    zero = (0,) * d
    for j, c in enumerate(lin):
        if c:
            v = rest[j].get(zero, 0) - c
            if v:
                rest[j][zero] = v
            else:
                rest[j].pop(zero, None)
    terms = {}
    for i in range(d):
        for m, c in rest[i].items():
            low = next((k for k, e in enumerate(m) if e), None)
            if low is None or low >= i:
                continue
            tail = list(m)
            tail[low] -= 1
            word = (i + 1, low + 1) + tuple(k + 1 for k in range(d) for _ in range(tail[k]))
            terms[LieMonomial(word)] = c
    result = LieElement(d, lin, terms)
    if embed(result) != u:
        raise NotInImageError("element is not the image of a metabelian Lie element")
    return result
