"""Weitzenböck derivations given by Jordan cell sizes.

A partition ``(p_1, ..., p_s)`` lays out cells of sizes ``p_i + 1`` on
consecutive variables.  Inside a cell ``x_j, ..., x_{j+p}`` the derivation
sends ``x_j`` to 0 and ``x_{j+k}`` to ``x_{j+k-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Sequence

from .metabelian import LieElement, WreathElement, embed, lie_from_wreath
from .polyarith import ArityError, Polynomial, rational


def parse_partition(text: str | Sequence[int]) -> tuple[int, ...]:
    if isinstance(text, str):
        try:
            parts = tuple(int(s) for s in text.replace(" ", "").split(",") if s != "")
        except ValueError:
            raise ValueError(f"bad partition {text!r}: expected comma-separated integers") from None
    else:
        parts = tuple(int(p) for p in text)
    if not parts:
        raise ValueError("empty partition")
    if any(p < 0 for p in parts):
        raise ValueError(f"partition {parts} has negative entries")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"partition {parts} is not non-increasing")
    return parts


@dataclass(frozen=True)
class Derivation:
    """A linear nilpotent derivation ``delta(x_j) = sum_i alpha[i][j] x_i``."""

    alpha: tuple
    partition: tuple | None = None

    def __post_init__(self):
        rows = tuple(tuple(rational(v) for v in row) for row in self.alpha)
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise ValueError("alpha must be a non-empty square matrix")
        object.__setattr__(self, "alpha", rows)

    @classmethod
    def from_partition(cls, *parts) -> "Derivation":
        if len(parts) == 1 and not isinstance(parts[0], int):
            parts = parts[0]
        parts = parse_partition(parts)
        d = sum(p + 1 for p in parts)
        alpha = [[0] * d for _ in range(d)]
        start = 0
        for p in parts:
            for k in range(1, p + 1):
                alpha[start + k - 1][start + k] = 1
            start += p + 1
        return cls(tuple(map(tuple, alpha)), parts)

    @property
    def arity(self) -> int:
        return len(self.alpha)

    def __str__(self) -> str:
        if self.partition is not None:
            return "delta(" + ",".join(map(str, self.partition)) + ")"
        return f"Derivation(d={self.arity})"

    def cells(self) -> list[range]:
        if self.partition is None:
            raise ValueError("cell structure is only known for derivations built from a partition")
        out, start = [], 0
        for p in self.partition:
            out.append(range(start, start + p + 1))
            start += p + 1
        return out

    @cached_property
    def _images(self) -> tuple:
        d = self.arity
        return tuple(
            tuple((i, self.alpha[i][j]) for i in range(d) if self.alpha[i][j]) for j in range(d)
        )

    def image_of_variable(self, j: int) -> Polynomial:
        """delta(x_{j+1}) for 0-based ``j``."""
        d = self.arity
        return Polynomial(d, {tuple(1 if k == i else 0 for k in range(d)): c for i, c in self._images[j]})

    def _check(self, arity: int) -> None:
        if arity != self.arity:
            raise ArityError(f"derivation acts on {self.arity} variables, got {arity}")

    def apply_poly(self, p: Polynomial) -> Polynomial:
        self._check(p.arity)
        images = self._images
        out: dict = {}
        for m, c in p.terms.items():
            for j, e in enumerate(m):
                if not e or not images[j]:
                    continue
                for i, a in images[j]:
                    n = list(m)
                    n[j] -= 1
                    n[i] += 1
                    n = tuple(n)
                    out[n] = out.get(n, 0) + c * e * a
        return Polynomial(p.arity, out)

    def apply_wreath(self, u: WreathElement) -> WreathElement:
        self._check(u.arity)
        d = self.arity
        a = [self.apply_poly(f) for f in u.a]
        for j, f in enumerate(u.a):
            if f.is_zero():
                continue
            for i, c in self._images[j]:
                a[i] = a[i] + f.scale(c)
        b = [0] * d
        for j, beta in enumerate(u.b):
            if beta:
                for i, c in self._images[j]:
                    b[i] += c * beta
        return WreathElement(tuple(a), tuple(b))

    def apply_lie(self, e: LieElement) -> LieElement:
        return lie_from_wreath(self.apply_wreath(embed(e)))

    def __call__(self, x):
        if isinstance(x, Polynomial):
            return self.apply_poly(x)
        if isinstance(x, WreathElement):
            return self.apply_wreath(x)
        if isinstance(x, LieElement):
            return self.apply_lie(x)
        raise TypeError(f"cannot apply a derivation to {type(x).__name__}")

    def power(self, k: int):
        """Matrix of delta^k acting on the span of the variables."""
        d = self.arity
        m = [[int(i == j) for j in range(d)] for i in range(d)]
        for _ in range(k):
            m = [[sum(self.alpha[i][t] * m[t][j] for t in range(d)) for j in range(d)] for i in range(d)]
        return m

    def is_nilpotent(self) -> bool:
        return all(v == 0 for row in self.power(self.arity) for v in row)

    def nilpotency_index(self) -> int:
        for k in range(self.arity + 1):
            if all(v == 0 for row in self.power(k) for v in row):
                return k
        raise ValueError("derivation is not nilpotent")

    def position_weights(self) -> tuple:
        """Position ``k`` of each variable inside its cell (the t2-weight)."""
        out = []
        for cell in self.cells():
            out.extend(range(len(cell)))
        return tuple(out)

    def bidegree_assignment(self) -> tuple:
        """``(p - k, k)`` for the variable in position ``k`` of a cell of size ``p + 1``."""
        out = []
        for cell in self.cells():
            p = len(cell) - 1
            out.extend((p - k, k) for k in range(p + 1))
        return tuple(out)

    def cell_index(self) -> tuple:
        out = []
        for c, cell in enumerate(self.cells()):
            out.extend([c] * len(cell))
        return tuple(out)

    def exp_poly(self, p: Polynomial, t=1) -> Polynomial:
        """exp(t*delta) applied to ``p``; a finite sum since delta is locally nilpotent."""
        t = rational(t)
        out = Polynomial.zero(p.arity)
        term = p
        k = 0
        while not term.is_zero():
            out = out + term.scale(Fraction(t) ** k / factorial(k))
            term = self.apply_poly(term)
            k += 1
        return out

    def exp_wreath(self, u: WreathElement, t=1) -> WreathElement:
        t = rational(t)
        out = WreathElement.zero(u.arity)
        term = u
        k = 0
        while not term.is_zero():
            out = out + term.scale(Fraction(t) ** k / factorial(k))
            term = self.apply_wreath(term)
            k += 1
        return out


def from_partition(*parts) -> Derivation:
    return Derivation.from_partition(*parts)
