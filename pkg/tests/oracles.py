"""Independent oracles used to derive frozen test values.

Nothing here uses the package's series, kernel or Omega code: closed forms
are expanded by sympy, and kernel dimensions come from sympy ranks of the
derivation written out through the Leibniz rule on brackets.
"""

from __future__ import annotations

import re
from itertools import combinations_with_replacement

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

T1, T2, Z = sympy.symbols("t1 t2 z")
_TRANSFORMS = standard_transformations + (convert_xor,)


def sym(text: str):
    # juxtaposition means multiplication: "3t1z(1-z)" -> "3*t1*z*(1-z)"
    text = re.sub(r"(?<=[\dz)])(?=[tz(])", "*", text.replace(" ", ""))
    return parse_expr(text, local_dict={"t1": T1, "t2": T2, "z": Z}, transformations=_TRANSFORMS)


def graded_coefficients(text: str, order: int) -> list[int]:
    """z^1..z^order coefficients of a closed form in z."""
    s = sympy.series(sym(text), Z, 0, order + 1).removeO()
    poly = sympy.Poly(sympy.expand(s), Z)
    return [int(poly.coeff_monomial(Z**k)) for k in range(1, order + 1)]


def bigraded_coefficients(text: str, order: int) -> dict:
    """``{(a, b, n): c}`` for z-degree 1..order of a closed form in t1, t2, z."""
    s = sympy.series(sym(text), Z, 0, order + 1).removeO()
    poly = sympy.Poly(sympy.expand(s), T1, T2, Z)
    return {m: int(c) for m, c in zip(poly.monoms(), poly.coeffs()) if 1 <= m[2] <= order}


# ---------------------------------------------------------------------------
# Metabelian kernels via Leibniz on brackets


def partition_images(partition) -> dict:
    """0-based variable -> 0-based image variable (or None)."""
    images, start = {}, 0
    for p in partition:
        images[start] = None
        for k in range(1, p + 1):
            images[start + k] = start + k - 1
        start += p + 1
    return images


def normal_words(d: int, n: int) -> list[tuple]:
    out = []
    for j1 in range(2, d + 1):
        for j2 in range(1, j1):
            for tail in combinations_with_replacement(range(j2, d + 1), n - 2):
                out.append((j1, j2) + tail)
    return out


def normalize_word(word: tuple) -> dict:
    """Left-normed word -> combination of normal words, using only the metabelian identities.

    In the metabelian algebra the letters after position 2 commute, and
    [x_a, x_b, x_c, ...] with c < b rewrites by Jacobi as
    [x_a, x_c, x_b, ...] - [x_b, x_c, x_a, ...].
    """
    if len(word) < 2:
        raise ValueError("expected a commutator")
    a, b = word[0], word[1]
    tail = sorted(word[2:])
    if a == b:
        return {}
    if a < b:
        return {k: -v for k, v in normalize_word((b, a) + tuple(tail)).items()}
    if not tail or b <= tail[0]:
        return {(a, b) + tuple(tail): 1}
    c, rest = tail[0], tuple(tail[1:])
    out: dict = {}
    for w, s in ((( a, c, b) + rest, 1), ((b, c, a) + rest, -1)):
        for k, v in normalize_word(w).items():
            out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v}


def metabelian_kernel_dim(partition, n: int) -> int:
    d = sum(p + 1 for p in partition)
    images = partition_images(partition)
    words = normal_words(d, n)
    index = {w: i for i, w in enumerate(words)}
    mat = sympy.zeros(len(words), len(words))
    for col, w in enumerate(words):
        for k, letter in enumerate(w):
            img = images[letter - 1]
            if img is None:
                continue
            new = list(w)
            new[k] = img + 1
            for nw, c in normalize_word(tuple(new)).items():
                mat[index[nw], col] += c
    return len(words) - mat.rank()


def linear_kernel_dim(partition) -> int:
    return len(partition)


def polynomial_kernel_dim(partition, n: int) -> int:
    d = sum(p + 1 for p in partition)
    images = partition_images(partition)
    xs = sympy.symbols(f"x1:{d + 1}")
    monos = [sympy.Mul(*[xs[i] for i in c]) for c in combinations_with_replacement(range(d), n)]
    delta = lambda m: sum(sympy.diff(m, xs[j]) * xs[images[j]] for j in range(d) if images[j] is not None)
    targets = [sympy.Mul(*[xs[i] for i in c]) for c in combinations_with_replacement(range(d), n)]
    mat = sympy.Matrix([[sympy.Poly(delta(m), *xs).coeff_monomial(t) if delta(m) != 0 else 0 for m in monos]
                        for t in targets])
    return len(monos) - mat.rank()
