"""Reference data: worked examples of constants in the free metabelian Lie algebra.

Everything here is typed in by hand and therefore treated as untrusted:
the corpus builder checks each item against independent computations
before it is written to the golden files.
"""

from __future__ import annotations

# Known generating sets of K[X_d]^delta, keyed by the partition without trailing zeros.
# delta(1,...,1) is handled by a formula.
INVARIANTS = {
    "1": ["x1"],
    "2": ["x1", "x2^2 - 2x1x3"],
    "3": [
        "x1",
        "x2^2 - 2x1x3",
        "x2^3 - 3x1x2x3 + 3x1^2x4",
        "x2^2x3^2 - 2x2^3x4 + 6x1x2x3x4 - 8/3*x1x3^3 - 3x1^2x4^2",
    ],
}

# Graded series H((L_d/L_d'')^delta, z) of the constants, one entry per partition.
GRADED_SERIES = {
    (1,): "z + z^2/(1-z)",
    (2,): "z + z^2/(1-z)^2",
    (3,): "z + z^2(2 + z^2 + z^3 - z^4)/((1-z)^2(1-z^4))",
    (1, 1): "2z + z^2(4 - z^2)/((1-z)^2(1-z^2))",
    (4,): "z + z^2(2 + 2z + z^2 - 2z^4 + z^5)/((1-z)^2(1-z^2)(1-z^3))",
    (2, 1): "2z + z^2(4 + 2z^2 - 3z^3 + z^4)/((1-z)^3(1-z^3))",
    (5,): "z + z^2(3 + 3z + 7z^2 + 10z^3 + 11z^4 + 14z^5 + 13z^6 + 16z^7 + 12z^8 + 8z^9 + 10z^10"
          " + 3z^11 + 5z^12 - z^13 + z^14 - z^16 + 2z^17 - z^18)/((1-z)^2(1-z^4)(1-z^6)(1-z^8))",
    (3, 1): "2z + z^2(5 + 6z + 8z^2 + 11z^3 + 5z^4 - 2z^5 + 3z^6 - 2z^7 + 2z^9 - z^10)"
            "/((1-z)^2(1-z^2)(1-z^4)^2)",
    (2, 2): "2z + z^2(5 + 8z - 6z^3 + 2z^4 + 2z^5 - z^6)/((1-z)^2(1-z^2)^3)",
    (1, 1, 1): "3z + z^2(9 + 9z - 6z^3 + 2z^4 + 2z^5 - z^6)/((1-z)^2(1-z^2)^3)",
}

# Bigraded series in t1, t2, z.  The (1,1,1) numerator had an unbalanced
# closing parenthesis in the source; it is dropped here and the result is
# checked against the truncation oracle before use.
BIGRADED_SERIES = {
    (1,): "t1z + t1t2z^2/(1-t1z)",
    (2,): "t1^2z + t1^3t2z^2/((1-t1^2z)(1-t1t2z))",
    (3,): "t1^3z + t1^3t2z^2(t1^2 + t2^2 + t1^4t2^4z^2 + t1^5t2^6z^3 - t1^8t2^6z^4)"
          "/((1-t1^3z)(1-t1^2t2z)(1-t1^6t2^6z^4))",
    (1, 1): "2t1z + t1z^2(t1 + 3t2 - t1^2t2z^2)/((1-t1z)^2(1-t1t2z^2))",
    (1, 1, 1): "3t1z + t1z^2(3(t1 + 2t2) + t1(-t1 + t2)z - 9t1^2t2z^2 + 3t1^2t2(-3t2 + t1)z^3"
               " + t1^2t2^2(9t1 - t2)z^4 + 3t1^3t2^2(t2 - t1)z^5 - 3t1^4t2^3z^6 + t1^5t2^3z^7)"
               "/((1-t1z)^3(1-t1t2z^2)^3)",
}

# Module generators c_j and relations.  Relations are written lhs = rhs.
EXAMPLES = {
    "5.1": {
        "partition": (2,),
        "max_degree": 8,
        "algebra": INVARIANTS["2"],
        "module": [
            "[x2,x1]",
            "[x3,x1,x1] - [x2,x1,x2]",
        ],
        "bidegrees": [(3, 1), (4, 2)],
        "relations": [],
    },
    "5.2": {
        "partition": (3,),
        "max_degree": 8,
        "algebra": INVARIANTS["3"],
        "algebra_relations": ["f3^2 = f2^3 - 3f1^2f4"],
        "module": [
            "[x2,x1]",
            "[x4,x1] - [x3,x2]",
            "[x3,x1,x1] - [x2,x1,x2]",
            "3[x2,x1,x4] - 2[x3,x1,x3] + [x3,x2,x2]",
            "3(-[x3,x1,x1,x4] + [x2,x1,x2,x4] + [x3,x1,x2,x3]) - 4[x2,x1,x3,x3] - [x3,x2,x2,x2]",
            "-9[x2,x1,x1,x4,x4] + 18[x3,x1,x1,x3,x4] - 12[x4,x1,x1,x3,x3] - 9[x3,x1,x2,x2,x4]"
            " + 12[x4,x1,x2,x2,x3] + 4[x2,x1,x3,x3,x3] - 6[x3,x1,x2,x3,x3] - 3[x4,x2,x2,x2,x2]"
            " + 3[x3,x2,x2,x2,x3]",
            "-18[x3,x1,x1,x1,x4,x4] + 18[x4,x1,x1,x1,x3,x4] + 18[x2,x1,x1,x2,x4,x4]"
            " - 9[x4,x1,x1,x2,x2,x4] - 18[x2,x1,x1,x3,x3,x4] + 18[x3,x1,x1,x2,x3,x4]"
            " - 18[x4,x1,x1,x2,x3,x3] + 8[x3,x1,x1,x3,x3,x3] - 9[x2,x1,x2,x2,x3,x4]"
            " - 3[x3,x1,x2,x2,x2,x4] + 15[x4,x1,x2,x2,x2,x3] + 10[x2,x1,x2,x3,x3,x3]"
            " - 12[x3,x1,x2,x2,x3,x3] - 3[x4,x2,x2,x2,x2,x2] + 3[x3,x2,x2,x2,x2,x3]",
        ],
        "bidegrees": [(5, 1), (3, 3), (7, 2), (5, 4), (7, 5), (8, 7), (10, 8)],
        "relations": [
            "c1f3 = -c3f2 + c4f1^2",
            "c3f3 = -(c1f2^2 + c5f1^2)",
            "c4f3 = -(3c1f4 + c5f2)",
            "c6f1 = 3(c1f4 - c2f2^2 + c5f2)",
            "c5f3 = 3c3f4 - c4f2^2",
            "c7f1 = 3(-c2f2f3 + 2c3f4 - c4f2^2)",
            "c6f3 = 3c4f1f4 + c7f2",
            "c7f3 = 9c2f1f2f4 - 6c5f1f4 + c6f2^2",
        ],
    },
    "5.3": {
        "partition": (1, 1),
        "max_degree": 8,
        "algebra": ["x1", "x3", "x1x4 - x2x3"],
        "module": [
            "[x3,x1]",
            "[x2,x1]",
            "[x4,x3]",
            "[x4,x1] - [x3,x2]",
        ],
        "relations": ["c1f3 + c2f2^2 + c3f1^2 - c4f1f2 = 0"],
    },
    "5.4": {
        "partition": (1, 1, 1),
        "max_degree": 6,
        "algebra": ["x1", "x3", "x5", "x1x4 - x2x3", "x1x6 - x2x5", "x3x6 - x4x5"],
        "algebra_relations": ["f1f6 - f2f5 + f3f4 = 0"],
        "module": [
            "[x3,x1]",
            "[x5,x1]",
            "[x5,x3]",
            "[x2,x1]",
            "[x4,x3]",
            "[x6,x5]",
            "[x4,x1] - [x3,x2]",
            "[x6,x1] - [x5,x2]",
            "[x6,x3] - [x5,x4]",
            "[x3,x2,x5] - [x5,x2,x3] - [x4,x1,x5] + [x5,x1,x4]",
        ],
        "relations": [
            "c3f1 = -c1f3 + c2f2",
            "c1f4 = -c4f2^2 - c5f1^2 + c7f1f2",
            "c1f5 = -c2f4 - 2c4f2f3 + c7f1f3 + c8f1f2 - c9f1^2",
            "c3f4 = -c1f6 + 2c5f1f3 - c7f2f3 + c8f2^2 - c9f1f2",
            "c3f5 = -c2f6 - 2c6f1f2 - c7f3^2 + c8f2f3 + c9f1f3",
            "c3f6 = -c5f3^2 - c6f2^2 + c9f2f3",
            "c2f5 = -c4f3^2 - c6f1^2 + c8f1f3",
            "c10f1 = -c1f5 - c4f2f3 + c8f1f2 - c9f1^2",
            "c10f2 = -c1f6 + c5f1f3 - c7f2f3 + c8f2^2 - c9f1f2",
            "c10f3 = -c2f6 - c6f1f2 - c7f3^2 + c8f2f3",
            "c1f1f6 = -c2f2f4 - c4f2^2f3 + c5f1^2f3 + c8f1f2^2 - c9f1^2f2",
            "c1f3f6 = c2f2f6 + c5f1f3^2 + c6f1f2^2 - c9f1f2f3",
            "c2f1f6 = -c2f3f4 - c4f2f3^2 - c6f1^2f2 + c8f1f2f3",
            "c10f4 = c4f2f6 + c5f1f5 - c7(f1f6 + f3f4) + c8f2f4 - c9f1f4",
            "c10f5 = c4f3f6 - c6f1f4 - c7f3f5 + c8f3f4",
            "c10f6 = -c5f3f5 - c6f2f4 + c9f3f4",
            "c1f6^2 = c5f3(f3f4 + 2f1f6) + c6f2^2f4 - c7f2f3f6 + c8f2^2f6 - c9f2(f3f4 + f1f6)",
            "c2f4^2 = c4f2(-f3f4 + f1f6) + c5f1^2f5 - c7f1^2f6 + c8f1f2f4 - c9f1^2f4",
            "c2f4f6 = -c4f2f3f6 - c5f1f3f5 - c6f1f2f4 + c7f1f3f6 + c9f1f3f4",
            "c2f6^2 = c5f3^2f5 + c6f2(f3f4 - f1f6) - c7f3^2f6 + c8f2f3f6 - c9f3^2f4",
            "c4f6^2 = -c5f5^2 - c6f4^2 + c7f5f6 - c8f4f6 + c9f4f5",
        ],
    },
    # Lifting along a trailing 1x1 cell: the delta(2) generators plus pi of its invariants.
    "4.5": {
        "partition": (2, 0),
        "max_degree": 8,
        "algebra": ["x1", "x2^2 - 2x1x3", "x4"],
        "lifted_from": "5.1",
        "module": [
            "[x2,x1]",
            "[x3,x1,x1] - [x2,x1,x2]",
            "[x4,x1]",
            "2([x4,x2,x2] - [x4,x1,x3] - [x4,x3,x1])",
        ],
        "pi": [
            ("x1", "[x4,x1]"),
            ("x2^2 - 2x1x3", "2([x4,x2,x2] - [x4,x1,x3] - [x4,x3,x1])"),
        ],
        "relations": [],
    },
}

# Example ids understood by the corpus; "3.4" covers the series tables above.
EXAMPLE_IDS = ("3.4", "4.5", "5.1", "5.2", "5.3", "5.4")
