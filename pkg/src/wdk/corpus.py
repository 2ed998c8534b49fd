"""Golden corpus: reference examples frozen as JSON next to the package.

``build(example_id)`` derives every stored number from the truncation
oracle (series expansion plus Schur subtraction), which shares no code
with the kernel solver.  ``verify(example_id)`` then reruns the kernel
solver, the generator checks and the relation checks against the stored
file.  ``rebuild()`` rewrites the shipped files; a test keeps them in sync.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import catalog, omega
from .constants import (
    Relation,
    bigraded_dimensions,
    kernel_dimensions,
    lift_generators,
    make_generator,
    module_generators,
    pi_map,
    relation_follows,
    span_report,
)
from .metabelian import LieElement, embed, in_commutator_ideal
from .parsing import TZ, Z, parse_nice, parse_polynomial
from .polyarith import format_rational, nice_expand
from .weitzenbock import Derivation


class UnknownExampleError(KeyError):
    pass


def default_max_degree(d: int) -> int:
    return 8 if d <= 5 else 6


def _check_id(example_id: str) -> str:
    if example_id not in catalog.EXAMPLE_IDS:
        raise UnknownExampleError(f"unknown example {example_id!r}; known: {', '.join(catalog.EXAMPLE_IDS)}")
    return example_id


def corpus_dir() -> Path:
    return Path(str(resources.files("wdk") / "corpus"))


def filename(example_id: str) -> str:
    return f"example_{example_id}.json"


# ---------------------------------------------------------------------------
# oracle values


def oracle_graded(partition, space: str, order: int) -> list:
    """Dimensions in degrees 1..order from the truncated multiplicity series."""
    series = omega.multiplicity_series_truncated(omega.constants_series(partition, space), order)
    return [int(c) for c in omega.specialize(series)[1:]]


def oracle_bigraded(partition, space: str, order: int) -> dict:
    series = omega.multiplicity_series_truncated(omega.constants_series(partition, space), order)
    return {k: int(v) for k, v in series.terms.items() if v and k[2] >= 1}


def _bigraded_json(table: dict) -> list:
    return [{"t1": a, "t2": b, "z": n, "dim": m} for (a, b, n), m in sorted(table.items(), key=lambda t: (t[0][2], t[0]))]


def _bigraded_from_json(rows: list) -> dict:
    return {(r["t1"], r["t2"], r["z"]): r["dim"] for r in rows}


# ---------------------------------------------------------------------------
# building


def _build_series() -> dict:
    entries = []
    for partition, text in catalog.GRADED_SERIES.items():
        d = sum(p + 1 for p in partition)
        n = default_max_degree(d)
        entry = {
            "partition": list(partition),
            "d": d,
            "max_degree": n,
            "graded_closed_form": text,
            "graded": oracle_graded(partition, "lie", n),
            "bigraded": _bigraded_json(oracle_bigraded(partition, "lie", n)),
        }
        if partition in catalog.BIGRADED_SERIES:
            entry["bigraded_closed_form"] = catalog.BIGRADED_SERIES[partition]
        entries.append(entry)
    return {"id": "3.4", "series": entries}


def _build_example(example_id: str) -> dict:
    data = catalog.EXAMPLES[example_id]
    delta = Derivation.from_partition(data["partition"])
    d = delta.arity
    algebra = [parse_polynomial(s, d) for s in data["algebra"]]
    module = [LieElement.parse(s, d) for s in data["module"]]
    relations = [Relation.parse(s, len(algebra), f"R{i}") for i, s in enumerate(data["relations"], start=1)]
    n = data["max_degree"]
    out = {
        "id": example_id,
        "partition": list(data["partition"]),
        "d": d,
        "max_degree": n,
        "algebra": [{"text": f.format(), "terms": f.to_json()} for f in algebra],
        "module": [dict(make_generator(delta, c).to_json(), text=c.format()) for c in module],
        "relations": [dict(r.to_json(), text=r.format()) for r in relations],
        "commutator_dimensions": oracle_graded(data["partition"], "commutator", n)[1:],
    }
    if "pi" in data:
        out["pi"] = [{"f": f, "image": img} for f, img in data["pi"]]
        out["lifted_from"] = data["lifted_from"]
    return out


def build(example_id: str) -> dict:
    if _check_id(example_id) == "3.4":
        return _build_series()
    return _build_example(example_id)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def rebuild(directory: Path | None = None) -> list[Path]:
    directory = Path(directory) if directory is not None else corpus_dir()
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for example_id in catalog.EXAMPLE_IDS:
        path = directory / filename(example_id)
        path.write_text(dumps(build(example_id)))
        written.append(path)
    return written


def load(example_id: str) -> dict:
    path = corpus_dir() / filename(_check_id(example_id))
    return json.loads(path.read_text())


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _series_checks(doc: dict, omega_check: bool) -> list[Check]:
    out = []
    for entry in doc["series"]:
        part = tuple(entry["partition"])
        delta = Derivation.from_partition(part)
        n = entry["max_degree"]
        tag = "delta(" + ",".join(map(str, part)) + ")"
        dims = kernel_dimensions(delta, "lie", n)
        closed = [int(c) for c in nice_expand(parse_nice(entry["graded_closed_form"], 1, Z), n).coefficients_1d()[1:]]
        out.append(Check(f"{tag} graded kernel = oracle", dims == entry["graded"], f"{dims} vs {entry['graded']}"))
        out.append(Check(f"{tag} graded closed form = oracle", closed == entry["graded"], f"{closed} vs {entry['graded']}"))
        stored = _bigraded_from_json(entry["bigraded"])
        big = bigraded_dimensions(delta, "lie", n)
        out.append(Check(f"{tag} bigraded kernel = oracle", big == stored, f"{len(big)} vs {len(stored)} slices"))
        if "bigraded_closed_form" in entry:
            f = parse_nice(entry["bigraded_closed_form"], 3, TZ)
            ser = {k: int(v) for k, v in nice_expand(f, n, omega.Z_WEIGHTS).terms.items() if v}
            out.append(Check(f"{tag} bigraded closed form = oracle", ser == stored, ""))
        if omega_check:
            h = omega.constants_series(part, "lie")
            try:
                closed3 = omega.multiplicity_series_closed(h)
                a = nice_expand(closed3, 12, omega.Z_WEIGHTS).terms
                b = omega.multiplicity_series_truncated(h, 12).terms
                out.append(Check(f"{tag} Omega closed form = truncation to z^12", dict(a) == dict(b), ""))
            except omega.OmegaReductionError as exc:
                out.append(Check(f"{tag} Omega closed form = truncation to z^12", False, str(exc)))
    return out


def _example_checks(doc: dict) -> list[Check]:
    part = tuple(doc["partition"])
    delta = Derivation.from_partition(part)
    d = delta.arity
    n = doc["max_degree"]
    algebra = [parse_polynomial(f["text"], d) for f in doc["algebra"]]
    module = [LieElement.from_json(c) for c in doc["module"]]
    wreath = [embed(c) for c in module]
    out = []
    for i, f in enumerate(algebra, start=1):
        out.append(Check(f"f{i} is a constant", delta(f).is_zero(), f.format()))
    for i, (c, u, stored) in enumerate(zip(module, wreath, doc["module"]), start=1):
        ok = delta(u).is_zero() and in_commutator_ideal(u)
        out.append(Check(f"c{i} is a constant in the commutator ideal", ok, c.format()))
        bd = make_generator(delta, u).bidegree
        out.append(Check(f"c{i} bidegree", list(bd) == stored["bidegree"], f"{bd}"))
    relations = []
    for stored in doc["relations"]:
        r = Relation.parse(stored["text"], len(algebra), stored["label"])
        relations.append(r)
        out.append(Check(f"{r.label} evaluates to zero", r.evaluate(wreath, algebra).is_zero(), r.format()))
    dims = kernel_dimensions(delta, "commutator", n)[1:]
    out.append(Check(f"commutator kernel dimensions = oracle to degree {n}", dims == doc["commutator_dimensions"],
                     f"{dims}"))
    report = span_report(delta, wreath, algebra, n)
    bad = [r for r in report if not r["span"] == r["kernel"] == r["joint"]]
    detail = "" if not bad else f"first gap: degree {bad[0]['degree']}, bidegree {bad[0]['bidegree']}"
    out.append(Check(f"module span = kernel to degree {n}", not bad, detail))
    if relations:
        gens = module_generators(delta, algebra, max(n, max(_relation_degree(r, module, algebra) for r in relations)),
                                 module=module)
        for r in relations:
            out.append(Check(f"{r.label} follows from a minimal relation set", relation_follows(gens, r), ""))
    if "pi" in doc:
        for item in doc["pi"]:
            f = parse_polynomial(item["f"], d - 1)
            img = embed(LieElement.parse(item["image"], d))
            out.append(Check(f"pi({item['f']})", pi_map(f, d) == img, item["image"]))
        src = catalog.EXAMPLES[doc["lifted_from"]]
        d0 = d - 1
        lifted = lift_generators(delta, [LieElement.parse(s, d0) for s in src["module"]],
                                 [parse_polynomial(s, d0) for s in src["algebra"]])
        out.append(Check("lifted generators = stored list", lifted == wreath, ""))
    return out


def _relation_degree(r: Relation, module, algebra) -> int:
    j, e, _ = r.terms[0]
    word = next(iter(module[j - 1].terms))
    return word.degree + sum(k * f.degree() for k, f in zip(e, algebra))


def verify(example_id: str, omega_check: bool = True) -> list[Check]:
    doc = load(example_id)
    checks = []
    rebuilt = build(example_id)
    checks.append(Check("shipped corpus file = rebuilt", rebuilt == doc, filename(example_id)))
    if example_id == "3.4":
        checks.extend(_series_checks(doc, omega_check))
    else:
        checks.extend(_example_checks(doc))
    return checks
