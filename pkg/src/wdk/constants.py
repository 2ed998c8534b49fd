"""Constants of a Weitzenböck derivation: kernels, generators and relations.

Every computation is split along a grading that the derivation respects.
A monomial (or a wreath coordinate ``a_i * M``) has a cell-degree vector,
counting letters per Jordan cell, and a weight ``w = sum k * mu_j`` where
``k`` is the position of ``x_j`` inside its cell.  The derivation keeps the
cell degrees and lowers ``w`` by one, so each kernel is a union of small
independent nullspace problems.  The bidegree of a class is
``(sum p_c * n_c - w, w)``.
"""

from __future__ import annotations

import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .linalg import CoordinateIndex, Echelon, dependencies
from .metabelian import (
    LieElement,
    LieMonomial,
    WreathElement,
    basis_slice,
    embed,
    embed_word,
    in_commutator_ideal,
    lie_from_wreath,
    module_action,
)
from .parsing import ParseError, evaluate, parse, parse_equation
from .polyarith import ArityError, Polynomial, format_rational, iter_monomials, mono_key, rational
from .weitzenbock import Derivation

SPACES = {
    "poly": "poly",
    "polynomial": "poly",
    "commutator": "commutator",
    "lie": "lie",
    "whole_lie": "lie",
}


def _space(name: str) -> str:
    try:
        return SPACES[name]
    except KeyError:
        raise ValueError(f"unknown space {name!r}; expected poly, commutator or lie") from None


def threads() -> int:
    """Worker count from ``WDK_THREADS`` (default 1, i.e. no pool)."""
    try:
        return max(1, int(os.environ.get("WDK_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# gradings


def grading_class(delta: Derivation, multidegree: Sequence[int]) -> tuple:
    """``(cell degrees..., weight)`` of a multidegree."""
    cells = delta.cells()
    pos = delta.position_weights()
    out = [sum(multidegree[j] for j in cell) for cell in cells]
    out.append(sum(k * e for k, e in zip(pos, multidegree)))
    return tuple(out)


def class_bidegree(delta: Derivation, cls: Sequence[int]) -> tuple[int, int]:
    w = cls[-1]
    top = sum((len(cell) - 1) * n for cell, n in zip(delta.cells(), cls[:-1]))
    return (top - w, w)


def bidegree_of(delta: Derivation, multidegree: Sequence[int]) -> tuple[int, int]:
    bd = delta.bidegree_assignment()
    return (sum(b[0] * e for b, e in zip(bd, multidegree)), sum(b[1] * e for b, e in zip(bd, multidegree)))


def poly_class(delta: Derivation, p: Polynomial) -> tuple:
    classes = {grading_class(delta, m) for m in p.terms}
    if len(classes) != 1:
        raise ValueError("polynomial is not homogeneous for the cell grading")
    return classes.pop()


def wreath_class(delta: Derivation, u: WreathElement) -> tuple:
    classes = {grading_class(delta, mu) for mu in u.multidegrees()}
    if len(classes) != 1:
        raise ValueError("element is not homogeneous for the cell grading")
    return classes.pop()


def _add(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def class_order(cls: Sequence[int]) -> tuple:
    """Sort key for grading classes: earlier cells first, then by weight."""
    return tuple(-c for c in cls[:-1]) + (cls[-1],)


def _ordered(classes: Mapping) -> list:
    return sorted(classes.items(), key=lambda kv: class_order(kv[0]))


# ---------------------------------------------------------------------------
# normalisation


def normalize_poly(p: Polynomial) -> Polynomial:
    return p.primitive()


def normalize_lie(e: LieElement) -> LieElement:
    """Integer coefficients with content 1 and a positive coefficient on the last basis word."""
    items = e.items()
    if not items:
        return e
    from math import gcd, lcm

    den = 1
    for _, c in items:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(c * den) for _, c in items]
    g = 0
    for v in ints:
        g = gcd(g, v)
    scale = Fraction(den, g)
    if ints[-1] < 0:
        scale = -scale
    return e.scale(scale)


# ---------------------------------------------------------------------------
# kernels


@dataclass(frozen=True)
class KernelSlice:
    """Basis of the constants in one degree (optionally one bidegree)."""

    space: str
    degree: int
    bidegree: tuple | None
    basis: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def lie_basis(self) -> list[LieElement]:
        if self.space == "poly":
            raise TypeError("polynomial slices have no Lie basis")
        return [lie_from_wreath(u) for u in self.basis]


def _group(items: Iterable, key) -> dict:
    out: dict = defaultdict(list)
    for it in items:
        out[key(it)].append(it)
    return out


@lru_cache(maxsize=None)
def _poly_kernel(delta: Derivation, degree: int) -> dict:
    """class -> list of kernel polynomials (echelon basis, normalised)."""
    d = delta.arity
    groups = _group(iter_monomials(d, degree), lambda m: grading_class(delta, m))
    out = {}
    for cls, monos in _ordered(groups):
        vectors = [delta.apply_poly(Polynomial.monomial(m)).terms for m in monos]
        basis = []
        for rel in dependencies(vectors):
            basis.append(normalize_poly(Polynomial(d, {monos[i]: c for i, c in rel.items()})))
        out[cls] = basis
    return out


def _word_class(delta: Derivation, w: LieMonomial) -> tuple:
    return grading_class(delta, w.multidegree(delta.arity))


def _commutator_class_kernel(args) -> tuple:
    delta, cls, words = args
    vectors = [delta.apply_wreath(embed_word(w.word, delta.arity)).coordinates() for w in words]
    basis = []
    for rel in dependencies(vectors):
        e = LieElement(delta.arity, (), {words[i]: c for i, c in rel.items()})
        basis.append(normalize_lie(e))
    return cls, basis


@lru_cache(maxsize=None)
def _commutator_kernel(delta: Derivation, degree: int) -> dict:
    """class -> list of LieElements spanning the constants of that class."""
    groups = _group(basis_slice(delta.arity, degree), lambda w: _word_class(delta, w))
    jobs = [(delta, cls, words) for cls, words in _ordered(groups)]
    n = threads()
    if n > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(_commutator_class_kernel, jobs))
    else:
        results = [_commutator_class_kernel(j) for j in jobs]
    return dict(results)


def _linear_kernel(delta: Derivation) -> dict:
    d = delta.arity
    out = {}
    for cls, polys in _poly_kernel(delta, 1).items():
        out[cls] = [embed(LieElement(d, tuple(p.coefficient(tuple(int(i == j) for i in range(d))) for j in range(d)), {}))
                    for p in polys]
    return out


def kernel_classes(delta: Derivation, space: str, degree: int) -> dict:
    """``class -> basis`` for one degree; bases are Polynomials or WreathElements."""
    space = _space(space)
    if degree < 1:
        raise ValueError("degree must be at least 1")
    if space == "poly":
        return _poly_kernel(delta, degree)
    if degree == 1:
        if space == "commutator":
            return {}
        return _linear_kernel(delta)
    return {cls: [embed(e) for e in basis] for cls, basis in _commutator_kernel(delta, degree).items()}


def kernel_slice(delta: Derivation, space: str, degree: int, bidegree: Sequence[int] | None = None) -> KernelSlice:
    space = _space(space)
    if space == "commutator" and degree < 2:
        raise ValueError("commutator slices start in degree 2")
    basis = []
    for cls, vecs in kernel_classes(delta, space, degree).items():
        if bidegree is not None and class_bidegree(delta, cls) != tuple(bidegree):
            continue
        basis.extend(vecs)
    return KernelSlice(space, degree, tuple(bidegree) if bidegree is not None else None, tuple(basis))


def _class_dims(delta: Derivation, space: str, degree: int) -> dict:
    space = _space(space)
    if space == "poly":
        return {cls: len(b) for cls, b in _poly_kernel(delta, degree).items()}
    if degree == 1:
        return {} if space == "commutator" else {cls: len(b) for cls, b in _poly_kernel(delta, 1).items()}
    return {cls: len(b) for cls, b in _commutator_kernel(delta, degree).items()}


def kernel_dimensions(delta: Derivation, space: str, max_degree: int) -> list[int]:
    """Dimensions of the constants in degrees 1..max_degree."""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    return [sum(_class_dims(delta, space, n).values()) for n in range(1, max_degree + 1)]


def bigraded_dimensions(delta: Derivation, space: str, max_degree: int) -> dict:
    """``{(l1, l2, n): dim}`` for every nonzero bihomogeneous slice up to ``max_degree``."""
    out: dict = defaultdict(int)
    for n in range(1, max_degree + 1):
        for cls, k in _class_dims(delta, space, n).items():
            if k:
                out[class_bidegree(delta, cls) + (n,)] += k
    return dict(out)


# ---------------------------------------------------------------------------
# products of generators


def _exponent_vectors(classes: Sequence[tuple], degrees: Sequence[int], target: tuple, degree: int):
    """Exponent vectors ``e`` with ``sum e_i * classes[i] == target`` (degree ``degree``)."""
    k = len(classes)

    def rec(i: int, rest: tuple, left: int, acc: list):
        if left == 0:
            if not any(rest):
                yield tuple(acc) + (0,) * (k - i)
            return
        if i == k:
            return
        c, dg = classes[i], degrees[i]
        e = 0
        cur = rest
        while e * dg <= left and all(v >= 0 for v in cur):
            yield from rec(i + 1, cur, left - e * dg, acc + [e])
            e += 1
            cur = _sub(cur, c)

    if degree < 0 or any(v < 0 for v in target):
        return
    yield from rec(0, tuple(target), degree, [])


class _Powers:
    """Cached products ``prod f_i^e_i``."""

    def __init__(self, polys: Sequence[Polynomial], arity: int):
        self.polys = list(polys)
        self.arity = arity
        self.cache: dict = {(0,) * len(self.polys): Polynomial.one(arity)}

    def __call__(self, e: tuple) -> Polynomial:
        hit = self.cache.get(e)
        if hit is not None:
            return hit
        i = max(j for j, v in enumerate(e) if v)
        prev = list(e)
        prev[i] -= 1
        val = self(tuple(prev)) * self.polys[i]
        self.cache[e] = val
        return val


def _poly_meta(delta: Derivation, polys: Sequence[Polynomial]) -> tuple[list, list]:
    classes, degrees = [], []
    for f in polys:
        if f.is_zero() or not f.is_homogeneous():
            raise ValueError(f"{f} is not a nonzero homogeneous polynomial")
        if not delta.apply_poly(f).is_zero():
            raise ValueError(f"{f} is not a constant of {delta}")
        classes.append(poly_class(delta, f))
        degrees.append(f.degree())
    return classes, degrees


def invariant_generators(delta: Derivation, max_degree: int) -> list[Polynomial]:
    """Homogeneous generators of the polynomial constants, complete through ``max_degree``.

    At each degree and class the products of earlier generators are put in
    echelon form and every kernel vector outside their span becomes a new
    generator.
    """
    d = delta.arity
    gens: list[Polynomial] = []
    classes: list = []
    degrees: list = []
    powers = _Powers([], d)
    for n in range(1, max_degree + 1):
        found = []
        for cls, basis in _ordered(_poly_kernel(delta, n)):
            if not basis:
                continue
            index = CoordinateIndex()
            ech = Echelon()
            for e in _exponent_vectors(classes, degrees, cls, n):
                ech.insert(index.row(powers(e).terms))
            for v in basis:
                if ech.insert(index.row(v.terms)):
                    found.append((cls, v))
        for cls, v in found:
            gens.append(v)
            classes.append(cls)
            degrees.append(n)
        powers = _Powers(gens, d)
    return gens


def algebra_relations(delta: Derivation, polys: Sequence[Polynomial], max_degree: int) -> dict:
    """``class -> relation vectors`` (dict exponent -> coeff) among products of ``polys``."""
    classes, degrees = _poly_meta(delta, polys)
    powers = _Powers(polys, delta.arity)
    out: dict = {}
    for n in range(1, max_degree + 1):
        targets = {_add_many(classes, e) for e in _all_exponents(degrees, n)}
        for cls in sorted(targets, key=class_order):
            exps = list(_exponent_vectors(classes, degrees, cls, n))
            rels = dependencies([powers(e).terms for e in exps])
            if rels:
                out[cls] = [{exps[i]: c for i, c in r.items()} for r in rels]
    return out


def _add_many(classes: Sequence[tuple], e: tuple) -> tuple:
    acc = tuple(0 for _ in classes[0]) if classes else ()
    for c, k in zip(classes, e):
        if k:
            acc = _add(acc, tuple(k * v for v in c))
    return acc


def _all_exponents(degrees: Sequence[int], n: int):
    k = len(degrees)

    def rec(i, left, acc):
        if left == 0:
            yield tuple(acc) + (0,) * (k - i)
            return
        if i == k:
            return
        e = 0
        while e * degrees[i] <= left:
            yield from rec(i + 1, left - e * degrees[i], acc + [e])
            e += 1

    yield from rec(0, n, [])


# ---------------------------------------------------------------------------
# builtin invariant generators


class NotTabulatedError(LookupError):
    pass


def nowicki_generators(cells: int) -> list[Polynomial]:
    """x_{2j-1} and x_{2k-1} x_{2l} - x_{2k} x_{2l-1} for delta(1,...,1)."""
    d = 2 * cells
    x = [Polynomial.var(i, d) for i in range(d)]
    out = [x[2 * j] for j in range(cells)]
    for k in range(cells):
        for l in range(k + 1, cells):
            out.append(x[2 * k] * x[2 * l + 1] - x[2 * k + 1] * x[2 * l])
    return out


def _tabulated(core: tuple) -> list[Polynomial] | None:
    from .catalog import INVARIANTS
    from .parsing import parse_polynomial

    if core and all(p == 1 for p in core):
        return nowicki_generators(len(core))
    key = ",".join(map(str, core))
    if key in INVARIANTS:
        d = sum(p + 1 for p in core)
        return [parse_polynomial(s, d) for s in INVARIANTS[key]]
    return None


def builtin_invariants(partition: Sequence[int]) -> list[Polynomial]:
    """Known generating set of the polynomial constants.

    Trailing cells of size one each contribute their own variable.  Raises
    :class:`NotTabulatedError` for other shapes.
    """
    partition = tuple(partition)
    core = partition
    while core and core[-1] == 0:
        core = core[:-1]
    zeros = len(partition) - len(core)
    d = sum(p + 1 for p in partition)
    d_core = sum(p + 1 for p in core)
    if core:
        base = _tabulated(core)
        if base is None:
            raise NotTabulatedError(f"no tabulated invariants for delta({','.join(map(str, partition))})")
    else:
        base = []
    out = [f.extend(d) for f in base] + [Polynomial.var(d_core + i, d) for i in range(zeros)]
    delta = Derivation.from_partition(partition)
    for f in out:
        if not delta.apply_poly(f).is_zero():
            raise AssertionError(f"tabulated invariant {f} is not a constant")
    return out


def polynomial_constants(delta: Derivation, max_degree: int, compute: bool = True) -> list[Polynomial]:
    """Builtin generators when tabulated, otherwise (if allowed) computed ones."""
    try:
        return builtin_invariants(delta.partition)
    except NotTabulatedError:
        if not compute:
            raise
        return invariant_generators(delta, max_degree)


# ---------------------------------------------------------------------------
# module generators and relations


@dataclass(frozen=True)
class ModuleGenerator:
    element: LieElement
    degree: int
    bidegree: tuple

    @property
    def wreath(self) -> WreathElement:
        return embed(self.element)

    def to_json(self) -> dict:
        out = self.element.to_json()
        out["bidegree"] = list(self.bidegree)
        out["degree"] = self.degree
        return out


@dataclass(frozen=True)
class Relation:
    """``sum coeff * c_j * f^e = 0`` with 1-based generator index ``j``."""

    terms: tuple  # ((j, exponents, coeff), ...)
    label: str = ""

    @classmethod
    def from_dict(cls, data: Mapping, label: str = "") -> "Relation":
        items = sorted(((j, tuple(e), rational(c)) for (j, e), c in data.items() if c),
                       key=lambda t: (t[0], mono_key(t[1])))
        return cls(tuple(items), label)

    def as_dict(self) -> dict:
        return {(j, e): c for j, e, c in self.terms}

    @classmethod
    def parse(cls, text: str, n_algebra: int, label: str = "") -> "Relation":
        """Parse ``c1f3=-c3f2+c4f1^2`` style text (``=`` optional)."""
        node = parse_equation(text) if "=" in text else parse(text)

        def leaf(n):
            if n[0] != "sym" or n[2] is None:
                raise ParseError(f"unexpected symbol in relation {text!r}")
            name, idx = n[1], n[2]
            if name == "c":
                return _Formal({(idx, (0,) * n_algebra): 1})
            if name == "f":
                if not 1 <= idx <= n_algebra:
                    raise ParseError(f"f{idx} is outside f1..f{n_algebra}")
                return _Formal({(None, tuple(int(i == idx - 1) for i in range(n_algebra))): 1})
            raise ParseError(f"unknown symbol {name}{idx}")

        value = evaluate(node, leaf)
        if not isinstance(value, _Formal) or any(j is None for j, _ in value.terms):
            raise ParseError(f"{text!r} is not linear in the module generators")
        return cls.from_dict(value.terms, label)

    def generators_used(self) -> set:
        return {j for j, _, _ in self.terms}

    def evaluate(self, module: Sequence[WreathElement], algebra: Sequence[Polynomial]) -> WreathElement:
        if not module:
            raise ValueError("no module generators")
        d = module[0].arity
        powers = _Powers(algebra, d)
        out = WreathElement.zero(d)
        for j, e, c in self.terms:
            if not 1 <= j <= len(module):
                raise IndexError(f"relation uses c{j} but only c1..c{len(module)} exist")
            if len(e) != len(algebra):
                raise ValueError("relation exponent length differs from the algebra generator count")
            out = out + module_action(module[j - 1], powers(e)).scale(c)
        return out

    def format(self) -> str:
        parts = []
        for j, e, c in self.terms:
            mono = "".join(f"f{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            body = f"c{j}{mono}"
            a = -c if c < 0 else c
            if a != 1:
                body = f"{format_rational(a)}{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0 = 0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text + " = 0"

    def __str__(self) -> str:
        return self.format()

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "lhs": [{"coeff": format_rational(c), "generator": j, "f": list(e)} for j, e, c in self.terms],
            "certified_zero": True,
        }


class _Formal:
    """Formal sums of ``c_j * f^e`` (``j`` None for pure f-monomials) used by the relation parser."""

    def __init__(self, terms: Mapping):
        self.terms = {k: v for k, v in terms.items() if v}

    def _coerce(self, other):
        if isinstance(other, _Formal):
            return other
        n = len(next(iter(self.terms))[1]) if self.terms else 0
        return _Formal({(None, (0,) * n): rational(other)})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return _Formal(out)

    __radd__ = __add__

    def __neg__(self):
        return _Formal({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for (j1, e1), v1 in self.terms.items():
            for (j2, e2), v2 in other.terms.items():
                if j1 is not None and j2 is not None:
                    raise ParseError("product of two module generators")
                key = (j1 if j1 is not None else j2, _add(e1, e2))
                out[key] = out.get(key, 0) + v1 * v2
        return _Formal(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self._coerce(1)
        for _ in range(k):
            out = out * self
        return out


@dataclass
class GeneratorSet:
    """Algebra generators ``f`` and module generators ``c`` with their relations."""

    derivation: Derivation
    algebra: list
    module: list
    relations: list = field(default_factory=list)
    certified_degree: int | None = None
    relation_module: object = field(default=None, repr=False, compare=False)

    def module_wreath(self) -> list[WreathElement]:
        return [g.wreath for g in self.module]

    def bidegrees(self) -> list[tuple]:
        return [g.bidegree for g in self.module]

    def to_json(self) -> dict:
        out = {
            "partition": list(self.derivation.partition) if self.derivation.partition is not None else None,
            "algebra": [f.to_json() for f in self.algebra],
            "module": [g.to_json() for g in self.module],
            "relations": [r.to_json() for r in self.relations],
        }
        if self.certified_degree is not None:
            out["certified_degree"] = self.certified_degree
        return out


def make_generator(delta: Derivation, element: LieElement | WreathElement) -> ModuleGenerator:
    u = element if isinstance(element, WreathElement) else embed(element)
    e = element if isinstance(element, LieElement) else lie_from_wreath(element)
    degrees = {sum(mu) for mu in u.multidegrees()}
    if len(degrees) != 1:
        raise ValueError("module generators must be homogeneous")
    cls = wreath_class(delta, u)
    return ModuleGenerator(e, degrees.pop(), class_bidegree(delta, cls))


def _product_space(delta: Derivation, gens: Sequence[ModuleGenerator], gen_classes: Sequence[tuple],
                   f_classes: Sequence[tuple], f_degrees: Sequence[int], cls: tuple, degree: int):
    """Formal products ``(j, e)`` landing in ``cls`` at ``degree``."""
    out = []
    for j, (g, gc) in enumerate(zip(gens, gen_classes), start=1):
        rest = _sub(cls, gc)
        for e in _exponent_vectors(f_classes, f_degrees, rest, degree - g.degree):
            out.append((j, e))
    return out


class _RelationModule:
    """Formal products ``c_j f^e`` and the relations already known among them."""

    def __init__(self, delta, algebra, f_classes, f_degrees):
        self.delta = delta
        self.f_classes = f_classes
        self.f_degrees = f_degrees
        self.powers = _Powers(algebra, delta.arity)
        self.gens: list[ModuleGenerator] = []
        self.gen_classes: list[tuple] = []
        self.gen_wreath: list[WreathElement] = []
        self.relations: list[Relation] = []
        self.rel_classes: list[tuple] = []
        self._alg: dict = {}

    def add_generator(self, g: ModuleGenerator, cls: tuple) -> None:
        self.gens.append(g)
        self.gen_classes.append(cls)
        self.gen_wreath.append(g.wreath)

    def algebra_kernel(self, cls, degree):
        key = (cls, degree)
        if key not in self._alg:
            exps = list(_exponent_vectors(self.f_classes, self.f_degrees, cls, degree))
            deps = dependencies([self.powers(e).terms for e in exps]) if exps else []
            self._alg[key] = [{exps[i]: c for i, c in r.items()} for r in deps]
        return self._alg[key]

    def formal(self, cls, degree) -> list:
        return _product_space(self.delta, self.gens, self.gen_classes, self.f_classes, self.f_degrees, cls, degree)

    def rows(self, formal, index: CoordinateIndex) -> list:
        return [index.row(module_action(self.gen_wreath[j - 1], self.powers(e)).coordinates()) for j, e in formal]

    def relation_degree(self, r: Relation) -> int:
        j, e, _ = r.terms[0]
        return self.gens[j - 1].degree + sum(k * dg for k, dg in zip(e, self.f_degrees))

    def implied(self, formal, cls, degree) -> Echelon:
        """Span of trivial relations (c_j times algebra relations) and of earlier relations times f-monomials."""
        position = {key: i for i, key in enumerate(formal)}
        ech = Echelon()
        for j, (g, gc) in enumerate(zip(self.gens, self.gen_classes), start=1):
            rest = _sub(cls, gc)
            if any(v < 0 for v in rest) or degree - g.degree <= 0:
                continue
            for ar in self.algebra_kernel(rest, degree - g.degree):
                ech.insert({position[(j, e)]: c for e, c in ar.items()})
        for r, rc in zip(self.relations, self.rel_classes):
            for e in _exponent_vectors(self.f_classes, self.f_degrees, _sub(cls, rc), degree - self.relation_degree(r)):
                ech.insert({position[(j, _add(ex, e))]: c for j, ex, c in r.terms})
        return ech

    def new_relations(self, formal, rows, cls, degree) -> list[Relation]:
        implied = self.implied(formal, cls, degree)
        out = []
        for dep in dependencies(rows):
            if implied.insert(dep):
                out.append(_normalize_relation({formal[i]: c for i, c in dep.items()}))
        return out

    def contains(self, relation: Relation) -> bool:
        """Whether ``relation`` follows from the stored relations and the algebra relations."""
        j, e, _ = relation.terms[0]
        cls = _add(self.gen_classes[j - 1], _add_many(self.f_classes, e))
        degree = self.relation_degree(relation)
        formal = self.formal(cls, degree)
        position = {key: i for i, key in enumerate(formal)}
        try:
            row = {position[(j, e)]: c for j, e, c in relation.terms}
        except KeyError:
            raise ValueError("relation is not homogeneous") from None
        return self.implied(formal, cls, degree).contains(row)


def module_generators(delta: Derivation, algebra: Sequence[Polynomial], max_degree: int,
                      relations: bool = True, module: Sequence | None = None) -> GeneratorSet:
    """Discover module generators (and new relations) of the commutator constants degree by degree.

    Guarantees that the output generates every commutator kernel slice of
    degree <= ``max_degree``; nothing is claimed beyond that bound.  With
    ``module`` given, that generating set is used as is (a ``ValueError`` is
    raised if it falls short) and only relations are discovered.
    """
    f_classes, f_degrees = _poly_meta(delta, algebra)
    rm = _RelationModule(delta, algebra, f_classes, f_degrees)
    fixed = module is not None
    for c in module or ():
        g = make_generator(delta, c)
        if not delta(g.wreath).is_zero():
            raise ValueError(f"{g.element.format()} is not a constant")
        rm.add_generator(g, wreath_class(delta, g.wreath))
    for n in range(2, max_degree + 1):
        new_here = []
        for cls, basis in _ordered(_commutator_kernel(delta, n)):
            if not basis:
                continue
            formal = rm.formal(cls, n)
            index = CoordinateIndex()
            rows = rm.rows(formal, index)
            ech = Echelon()
            for r in rows:
                ech.insert(r)
            for e in basis:
                if ech.insert(index.row(embed(e).coordinates())):
                    if fixed:
                        raise ValueError(f"the given generators miss constants in degree {n}, bidegree "
                                         f"{class_bidegree(delta, cls)}")
                    new_here.append((cls, e))
            if relations and formal:
                for r in rm.new_relations(formal, rows, cls, n):
                    rm.relations.append(r)
                    rm.rel_classes.append(cls)
        for cls, e in new_here:
            rm.add_generator(make_generator(delta, e), cls)
    rels = [Relation(r.terms, f"R{i}") for i, r in enumerate(rm.relations, start=1)]
    return GeneratorSet(delta, list(algebra), rm.gens, rels, max_degree, rm)


def relation_follows(gens: GeneratorSet, relation: Relation) -> bool:
    """Whether ``relation`` is a consequence of ``gens.relations`` (requires a set built by module_generators)."""
    rm = gens.relation_module
    if rm is None:
        raise ValueError("generator set carries no relation data; build it with module_generators")
    return rm.contains(relation)


def _normalize_relation(terms: Mapping) -> Relation:
    from math import gcd

    r = Relation.from_dict(terms)
    g = 0
    for _, _, c in r.terms:
        g = gcd(g, int(c))
    sign = 1 if r.terms[0][2] > 0 else -1
    return Relation(tuple((j, e, c * sign // g) for j, e, c in r.terms))


# ---------------------------------------------------------------------------
# span checks


def span_report(delta: Derivation, module: Sequence[WreathElement], algebra: Sequence[Polynomial],
                max_degree: int) -> list[dict]:
    """Per degree and class: rank of ``c_j * f^e`` products vs. kernel dimension."""
    f_classes, f_degrees = _poly_meta(delta, algebra)
    powers = _Powers(algebra, delta.arity)
    gens = [make_generator(delta, u) for u in module]
    gen_classes = [wreath_class(delta, u) for u in module]
    report = []
    for n in range(2, max_degree + 1):
        for cls, basis in _ordered(_commutator_kernel(delta, n)):
            formal = _product_space(delta, gens, gen_classes, f_classes, f_degrees, cls, n)
            index = CoordinateIndex()
            ech = Echelon()
            for j, e in formal:
                ech.insert(index.row(module_action(module[j - 1], powers(e)).coordinates()))
            span = ech.rank
            for e in basis:
                ech.insert(index.row(embed(e).coordinates()))
            report.append({
                "degree": n,
                "bidegree": class_bidegree(delta, cls),
                "class": cls,
                "span": span,
                "kernel": len(basis),
                "joint": ech.rank,
            })
    return report


def span_equals_kernel(delta: Derivation, module: Sequence[WreathElement], algebra: Sequence[Polynomial],
                       max_degree: int) -> bool:
    return all(r["span"] == r["kernel"] == r["joint"] for r in span_report(delta, module, algebra, max_degree))


def is_constant(delta: Derivation, x) -> bool:
    return delta(x).is_zero()


def verify_relation(relation: Relation, gens: GeneratorSet | Sequence[WreathElement],
                    algebra: Sequence[Polynomial] | None = None) -> bool:
    """True iff the relation evaluates to the zero element."""
    if isinstance(gens, GeneratorSet):
        module, algebra = gens.module_wreath(), gens.algebra
    else:
        module = list(gens)
        if algebra is None:
            raise ValueError("algebra generators are required")
    return relation.evaluate(module, algebra).is_zero()


# ---------------------------------------------------------------------------
# the pi map and lifting along a trivial cell


def pi_map(p: Polynomial, d: int | None = None) -> WreathElement:
    """``pi(x_j1...x_jn) = sum_k [x_d, x_jk] * prod_{i != k} x_ji`` in wreath coordinates.

    In coordinates this reads ``a_d * deg(M) * M - x_d * sum_j a_j dM/dx_j``.
    """
    d = d if d is not None else p.arity + 1
    if p.arity == d:
        if any(m[d - 1] for m in p.terms):
            raise ValueError("pi is defined on polynomials in x1..x_{d-1}")
        p = p.restrict(d - 1)
    if p.arity != d - 1:
        raise ArityError(f"expected a polynomial in {d - 1} variables")
    if p.constant_term():
        raise ValueError("pi is defined on polynomials without constant term")
    q = p.extend(d)
    a = [Polynomial.zero(d) for _ in range(d)]
    last = tuple(int(i == d - 1) for i in range(d))
    euler = Polynomial(d, {m: c * sum(m) for m, c in q.terms.items()})
    a[d - 1] = euler
    for j in range(d - 1):
        a[j] = -q.derivative(j).mul_monomial(last)
    return WreathElement.from_a(a)


def lift_generators(delta: Derivation, module: Sequence[WreathElement | LieElement],
                    algebra: Sequence[Polynomial]) -> list[WreathElement]:
    """Generators in d variables from generators for the first d-1 (trailing 1x1 cell)."""
    d = delta.arity
    if delta.partition is None or delta.partition[-1] != 0:
        raise ValueError("lifting needs a derivation whose last Jordan cell has size one")
    if not delta.image_of_variable(d - 1).is_zero():
        raise ValueError("the last variable must be a constant")
    out = []
    for c in module:
        u = c if isinstance(c, WreathElement) else embed(c)
        if u.arity != d - 1:
            raise ArityError("module generators must live in d-1 variables")
        out.append(WreathElement.from_a([f.extend(d) for f in u.a] + [Polynomial.zero(d)]))
    for f in algebra:
        out.append(pi_map(f, d))
    return out
