"""Deterministic command-line frontend: every table and claim, machine-readable.

Output contract: identical invocations produce identical bytes.  Exit code 0
means every checked claim passed (or the command is purely informational),
1 means a claim failed and the report names the first witness, 2 means a
usage or resource-guard violation.  Wall-clock timing goes to stderr only.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import dataclass, field

from . import algebra, endo, mackey, structure, treegroup
from .algebra import AlgebraElement
from .structure import VerificationError
from .treegroup import (
    LevelMismatch,
    LevelTooLarge,
    SubgroupSpec,
    full_group,
    group_order,
)

MAX_LISTED_ELEMENTS = 1024
MAX_LISTED_VECTORS = 64
MAX_TABLE_DIMENSION = 12
MAX_CLASS_COUNT_LEVEL = 30
DEFAULT_SEED = 2024

GUARD_ERRORS = (LevelTooLarge, endo.HomSpaceEmpty, LevelMismatch, ValueError)


@dataclass
class Report:
    subcommand: str
    parameters: dict
    verdict: str  # PASS | FAIL | INFO
    payload: dict
    columns: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    timing_ms: float = 0.0


def frac_str(c) -> str:
    return f"{c.numerator}/{c.denominator}"


def element_json(g) -> dict:
    return {"word": g.word_string(), "cycles": g.cycle_string()}


def algebra_json(x: AlgebraElement) -> list:
    return [[g.cycle_string(), frac_str(c)] for g, c in x.canonical_terms()]


def algebra_text(x: AlgebraElement) -> str:
    if x.is_zero():
        return "0"
    return " + ".join(f"{frac_str(c)}*{g.cycle_string()}"
                      for g, c in x.canonical_terms())


# --- subcommand handlers -----------------------------------------------------

def _cmd_enumerate(args) -> Report:
    n = args.n
    elements = full_group(n)
    expected = group_order(n)
    chain_ok = all(
        group_order(m) == 2 * group_order(m - 1) ** 2 for m in range(1, n + 1))
    ok = len(elements) == expected and chain_ok
    payload = {
        "level": n,
        "size": len(elements),
        "expected_size": expected,
        "doubling_square_chain": chain_ok,
    }
    columns = ["word", "cycles"]
    if len(elements) <= MAX_LISTED_ELEMENTS:
        payload["elements"] = [element_json(g) for g in elements]
        rows = [[g.word_string(), g.cycle_string()] for g in elements]
    else:
        rows = [[f"<{len(elements)} elements>", ""]]
    return Report("enumerate", {"n": n}, "PASS" if ok else "FAIL",
                  payload, columns, rows)


def _cmd_center(args) -> Report:
    n = args.n
    computed = structure.center(n)
    expected = structure.center_closed_form(n)
    ok = computed == expected
    payload = {
        "level": n,
        "computed": [element_json(g) for g in computed],
        "expected": [element_json(g) for g in expected],
        "match": ok,
    }
    rows = [[g.word_string(), g.cycle_string()] for g in computed]
    return Report("center", {"n": n}, "PASS" if ok else "FAIL",
                  payload, ["word", "cycles"], rows)


def _cmd_classes(args) -> Report:
    n = args.n
    decomp = structure.conjugacy_classes(n, allow_large=args.allow_large)
    predicted = structure.class_count(n)
    ok = decomp.count == predicted
    payload = {
        "level": n,
        "count": decomp.count,
        "predicted": predicted,
        "sizes": [o.size for o in decomp.orbits],
    }
    rows = [[o.representative.cycle_string(), o.size] for o in decomp.orbits]
    return Report("classes", {"n": n}, "PASS" if ok else "FAIL",
                  payload, ["representative", "size"], rows)


def _cmd_class_count(args) -> Report:
    n = args.n
    if n > MAX_CLASS_COUNT_LEVEL:
        raise ValueError(f"class-count capped at n = {MAX_CLASS_COUNT_LEVEL}")
    values = [structure.class_count(m) for m in range(n + 1)]
    payload = {"level": n, "value": values[-1],
               "sequence": [str(v) for v in values]}
    rows = [[m, str(v)] for m, v in enumerate(values)]
    return Report("class-count", {"n": n}, "INFO", payload, ["n", "count"], rows)


def _cmd_right_cosets(args) -> Report:
    n, l = args.n, args.l
    system = structure.right_coset_reps(n, l)
    expected = group_order(system.ambient_level) // group_order(n)
    payload = {
        "base_level": n,
        "ambient_level": system.ambient_level,
        "count": system.count,
        "expected_count": expected,
        "coset_size": group_order(n),
        "partition_verified": True,
    }
    columns = ["stated_rep", "canonical_rep", "size"]
    if system.count <= MAX_LISTED_ELEMENTS:
        rows = [[r.cycle_string(), m.cycle_string(), s]
                for r, m, s in zip(system.stated_representatives,
                                   system.representatives, system.sizes)]
        payload["stated_representatives"] = [
            element_json(r) for r in system.stated_representatives]
    else:
        rows = [[f"<{system.count} cosets>", "", group_order(n)]]
    ok = system.count == expected
    return Report("right-cosets", {"n": n, "l": l},
                  "PASS" if ok else "FAIL", payload, columns, rows)


def _cmd_double_cosets(args) -> Report:
    n = args.n
    system = structure.double_cosets(n)
    order = group_order(n)
    expected_sizes = sorted([order] * order + [order * order])
    ok = (system.count == order + 1
          and sorted(system.sizes) == expected_sizes)
    payload = {
        "base_level": n,
        "ambient_level": system.ambient_level,
        "count": system.count,
        "expected_count": order + 1,
        "sizes": list(system.sizes),
        "stated_representatives": [
            element_json(r) for r in system.stated_representatives],
        "partition_verified": True,
    }
    rows = [[r.cycle_string(), m.cycle_string(), s]
            for r, m, s in zip(system.stated_representatives,
                               system.representatives, system.sizes)]
    return Report("double-cosets", {"n": n}, "PASS" if ok else "FAIL",
                  payload, ["stated_rep", "canonical_rep", "size"], rows)


def _cmd_orbits(args) -> Report:
    n, k = args.n, args.k
    decomp = structure.orbit_decomposition(n, k, allow_large=args.allow_large)
    corrected = structure.predicted_orbit_count(n, k)
    literal = structure.predicted_orbit_count_literal(n, k)
    payload = {
        "base_level": n,
        "offset": k,
        "count": decomp.count,
        "predicted_corrected": corrected,
        "predicted_literal": literal,
        "matches_corrected": decomp.count == corrected,
        "matches_literal": decomp.count == literal,
        "labeling_verified": True,
    }
    ok = decomp.count == corrected
    columns = ["representative", "size", "label"]
    if decomp.count <= MAX_LISTED_ELEMENTS:
        rows = []
        for orbit_, label in zip(decomp.orbits, decomp.labels):
            if label.kind == "class":
                text = f"class({label.base.cycle_string()})*{label.shift.cycle_string()}"
            else:
                names = " ".join(f"b{j}" for j in reversed(label.indices))
                text = f"orbit({names})*{label.shift.cycle_string()}"
            rows.append([orbit_.representative.cycle_string(), orbit_.size, text])
    else:
        rows = [[f"<{decomp.count} orbits>", "", ""]]
    return Report("orbits", {"n": n, "k": k}, "PASS" if ok else "FAIL",
                  payload, columns, rows)


def _cmd_centralizer_basis(args) -> Report:
    n, k = args.n, args.k
    basis = structure.centralizer_algebra_basis(n, k, allow_large=args.allow_large)
    sub = SubgroupSpec.embedded(n)
    all_central = all(algebra.centralizes(v, sub) for v in basis)
    closure = None
    if (n, k) == (1, 1):
        closure = all(
            structure.expand_in_orbit_basis(a * b, basis) is not None
            for a in basis for b in basis)
    ok = all_central and closure is not False
    payload = {
        "base_level": n,
        "offset": k,
        "dimension": len(basis),
        "all_centralize": all_central,
        "closure_checked": closure,
    }
    listed = len(basis) <= MAX_LISTED_VECTORS
    if listed:
        payload["vectors"] = [algebra_json(v) for v in basis]
    rows = [[i, len(v.terms),
             algebra_text(v) if listed else f"<{len(v.terms)} terms>"]
            for i, v in enumerate(basis)]
    return Report("centralizer-basis", {"n": n, "k": k},
                  "PASS" if ok else "FAIL", payload,
                  ["index", "terms", "vector"], rows)


def _cmd_presentation(args) -> Report:
    n = args.n
    report = structure.check_presentation(n)
    counts = report.family_counts()
    failures = [[inst.family, list(inst.params)]
                for inst in report.instances if not inst.holds]
    payload = {
        "level": n,
        "instances_checked": len(report.instances),
        "family_counts": {str(f): c for f, c in counts.items()},
        "failures": failures,
        "untestable": [list(t) for t in report.untestable],
        "generator_indexing": "root-first",
    }
    rows = [[inst.family, " ".join(map(str, inst.params)),
             "ok" if inst.holds else "FAIL"] for inst in report.instances]
    rows += [[3, " ".join(map(str, t)), "untestable"] for t in report.untestable]
    return Report("presentation", {"n": n},
                  "PASS" if report.all_pass else "FAIL",
                  payload, ["family", "params", "status"], rows)


def _cmd_mackey(args) -> Report:
    n = args.n
    summands = mackey.mackey_decomposition(n)
    order = group_order(n)
    payload = {
        "level": n,
        "summands": [{
            "rep": element_json(s.coset_rep),
            "intersection_order": len(s.intersection),
            "type": s.kind,
            "dimension": s.bimodule_dimension,
        } for s in summands],
        "id_multiplicity": sum(1 for s in summands if s.kind == "Id"),
        "expected_id_multiplicity": order,
        "dimension_total": sum(s.bimodule_dimension for s in summands),
        "expected_dimension_total": group_order(n + 1),
    }
    rows = [[s.coset_rep.cycle_string(), len(s.intersection), s.kind,
             s.bimodule_dimension] for s in summands]
    return Report("mackey", {"n": n}, "PASS", payload,
                  ["rep", "intersection_order", "type", "dimension"], rows)


def _cmd_tensor_basis(args) -> Report:
    n, k, l = args.n, args.k, args.l
    basis = endo.tensor_basis(n, k, l)
    expected = (group_order(n + k - l) * group_order(n)) // group_order(n - l)
    payload = {
        "n": n, "k": k, "l": l,
        "size": len(basis),
        "expected_size": expected,
        "left_level": n + k - l,
        "coset_base_level": n - l,
    }
    columns = ["left", "coset_b", "indices"]
    if len(basis) <= MAX_LISTED_ELEMENTS:
        rows = [[t.left.cycle_string(), t.coset_b.cycle_string(),
                 " ".join(map(str, t.coset_indices)) or "-"] for t in basis]
        payload["elements"] = [{
            "left": element_json(t.left),
            "coset_b": element_json(t.coset_b),
            "indices": list(t.coset_indices),
        } for t in basis]
    else:
        rows = [[f"<{len(basis)} tensors>", "", ""]]
    ok = len(basis) == expected
    return Report("tensor-basis", {"n": n, "k": k, "l": l},
                  "PASS" if ok else "FAIL", payload, columns, rows)


def _cmd_end_basis(args) -> Report:
    n, k, l = args.n, args.k, args.l
    eb = endo.end_ind_res_basis(n, k, l)
    payload = {
        "n": n, "k": k, "l": l,
        "dimension": eb.dimension,
        "acting_level": eb.acting_level,
        "index_change_count": eb.index_change_count,
    }
    ok = True
    if l == 0:
        reference = structure.centralizer_algebra_basis(n, k)
        ok = tuple(eb.vectors) == tuple(reference)
        payload["matches_centralizer_basis"] = ok
    elif eb.dimension <= MAX_LISTED_VECTORS:
        # computed and reported, never asserted
        closed, _ = endo.end_basis_closure(eb)
        payload["products_within_span"] = closed
    columns = ["index", "support", "vector"]
    rows = []
    if eb.dimension <= MAX_LISTED_VECTORS:
        vectors_json = []
        for i, vec in enumerate(eb.vectors):
            if l == 0:
                vectors_json.append(algebra_json(vec))
                rows.append([i, len(vec.terms), algebra_text(vec)])
            else:
                vectors_json.append([{
                    "left": element_json(t.left),
                    "coset_b": element_json(t.coset_b),
                    "indices": list(t.coset_indices),
                    "coefficient": "1/1",
                } for t in vec])
                text = " + ".join(
                    f"{t.left.cycle_string()}(x){t.coset_rep().cycle_string()}"
                    for t in vec)
                rows.append([i, len(vec), text])
        payload["vectors"] = vectors_json
    else:
        rows = [[f"<{eb.dimension} vectors>", "", ""]]
    return Report("end-basis", {"n": n, "k": k, "l": l},
                  "PASS" if ok else "FAIL", payload, columns, rows)


def _cmd_d_gens(args) -> Report:
    n, m = args.n, args.m
    table = endo.d_generator_table(n, m)
    swap_gens = [elt for label, elt in table if label.startswith("b")]
    orbit_single = [elt for label, elt in table if label == f"o(b{n + 1})"]
    shift_zero = [elt for label, elt in table
                  if label.startswith("b") and label.endswith("^(0)")]
    commute_ok = all(o * g == g * o
                     for o in orbit_single for g in shift_zero)
    payload = {
        "base_level": n,
        "ambient_level": m,
        "count": len(table),
        "swap_generators": len(swap_gens),
        "orbit_sums": len(table) - len(swap_gens),
        "all_centralize": True,
        "orbit_sum_commutes_with_shifted_gens": commute_ok,
        "generators": [{"label": label, "element": algebra_json(elt)}
                       for label, elt in table],
    }
    rows = [[label, algebra_text(elt)] for label, elt in table]
    return Report("d-gens", {"n": n, "m": m},
                  "PASS" if commute_ok else "FAIL",
                  payload, ["label", "element"], rows)


def _cmd_power_table(args) -> Report:
    n, max_k = args.n, args.max_k
    powers = endo.power_table(n, max_k)
    base = powers[0]
    entries = []
    rows = []
    for k, p in enumerate(powers, start=1):
        collapses = p == base.scaled(1 << (k - 1))
        entries.append({
            "k": k,
            "terms": len(p.terms),
            "collapses_to_multiple": collapses,
            "element": algebra_json(p) if len(p.terms) <= MAX_LISTED_ELEMENTS
            else None,
        })
        if collapses:
            rows.append([k, f"{1 << (k - 1)}/1 * o"])
        else:
            rows.append([k, algebra_text(p) if len(p.terms) <= 64
                         else f"<{len(p.terms)} terms>"])
    payload = {"base_level": n, "max_k": max_k, "powers": entries}
    verdict = "PASS" if n == 1 else "INFO"
    return Report("power-table", {"n": n, "max_k": max_k}, verdict,
                  payload, ["k", "expansion"], rows)


def _cmd_opposite_check(args) -> Report:
    n, k = args.n, args.k
    report = endo.opposite_check(n, k)
    ok = report.closure_ok and report.transpose_ok
    payload = {
        "n": n, "k": k,
        "dimension": report.dimension,
        "closure_ok": report.closure_ok,
        "transpose_ok": report.transpose_ok,
    }
    if report.dimension <= MAX_TABLE_DIMENSION and report.closure_ok:
        payload["left_constants"] = [
            [[frac_str(c) for c in cell] for cell in row]
            for row in report.left_constants]
        payload["right_constants"] = [
            [[frac_str(c) for c in cell] for cell in row]
            for row in report.right_constants]
    rows = [[report.dimension, report.closure_ok, report.transpose_ok]]
    return Report("opposite-check", {"n": n, "k": k},
                  "PASS" if ok else "FAIL", payload,
                  ["dimension", "closure", "transpose"], rows)


# --- the full desk-scale battery ----------------------------------------------

def _check_group_sizes(allow_large, rng):
    sizes = [len(full_group(n)) for n in range(1, 5)]
    chain = all(sizes[i] == 2 * (sizes[i - 1] if i else 1) ** 2
                for i in range(len(sizes)))
    ok = sizes == [2, 8, 128, 32768] and chain
    return ok, {"sizes": sizes, "doubling_square_chain": chain}


def _check_presentation(allow_large, rng):
    detail = {}
    ok = True
    for n in range(1, 5):
        rep = structure.check_presentation(n)
        ok = ok and rep.all_pass
        detail[f"n={n}"] = {
            "instances": len(rep.instances),
            "untestable": len(rep.untestable),
            "all_pass": rep.all_pass,
        }
    return ok, detail


def _check_centers(allow_large, rng):
    levels = [1, 2, 3] + ([4] if allow_large else [])
    detail = {}
    ok = True
    for n in levels:
        match = structure.center(n) == structure.center_closed_form(n)
        ok = ok and match
        detail[f"n={n}"] = match
    return ok, detail


def _check_centralizers(allow_large, rng):
    detail = {}
    ok = True
    for n in (1, 2, 3):
        ambient = n + 1
        computed = structure.group_centralizer(n, 1)
        hat = SubgroupSpec.hat(n).elements(ambient)
        product = tuple(sorted(
            treegroup.embed_to(z, ambient) * b
            for z in structure.center_closed_form(n) for b in hat))
        match = computed == product and len(computed) == 2 * group_order(n)
        ok = ok and match
        detail[f"n={n}"] = {"size": len(computed), "matches_product_set": match}
    return ok, detail


def _check_class_counts(allow_large, rng):
    expected = {1: 2, 2: 5, 3: 20, 4: 230}
    levels = [1, 2, 3] + ([4] if allow_large else [])
    detail = {}
    ok = True
    for n in levels:
        count = structure.conjugacy_classes(n, allow_large=allow_large).count
        match = count == expected[n] == structure.class_count(n)
        ok = ok and match
        detail[f"n={n}"] = count
    return ok, detail


def _check_right_cosets(allow_large, rng):
    detail = {}
    ok = True
    for n, l in [(1, 0), (2, 0), (3, 0), (1, 1), (2, 1), (1, 2)]:
        system = structure.right_coset_reps(n, l)
        expected = group_order(n + l + 1) // group_order(n)
        match = system.count == expected
        ok = ok and match
        detail[f"(n={n},l={l})"] = system.count
    return ok, detail


def _check_double_cosets(allow_large, rng):
    detail = {}
    ok = True
    for n in (1, 2, 3):
        system = structure.double_cosets(n)
        order = group_order(n)
        match = (system.count == order + 1
                 and sorted(system.sizes) == sorted([order] * order + [order ** 2]))
        ok = ok and match
        detail[f"n={n}"] = {"count": system.count, "sizes_ok": match}
    return ok, detail


def _check_orbit_counts(allow_large, rng):
    detail = {}
    ok = True
    for n, k, expected in [(1, 1, 6), (2, 1, 48)]:
        decomp = structure.orbit_decomposition(n, k)
        match = decomp.count == expected == structure.predicted_orbit_count(n, k)
        ok = ok and match
        detail[f"(n={n},k={k})"] = decomp.count
    decomp = structure.orbit_decomposition(1, 2)
    corrected = structure.predicted_orbit_count(1, 2)
    literal = structure.predicted_orbit_count_literal(1, 2)
    detail["(n=1,k=2)"] = {
        "computed": decomp.count,
        "predicted_corrected": corrected,
        "predicted_literal": literal,
        "matches_corrected": decomp.count == corrected,
        "matches_literal": decomp.count == literal,
    }
    ok = ok and decomp.count == corrected
    return ok, detail


def _check_centralizer_basis(allow_large, rng):
    detail = {}
    ok = True
    for n, k in [(1, 1), (2, 1), (1, 2)]:
        basis = structure.centralizer_algebra_basis(n, k)
        sub = SubgroupSpec.embedded(n)
        central = all(algebra.centralizes(v, sub) for v in basis)
        entry = {"dimension": len(basis), "all_centralize": central}
        if (n, k) == (1, 1):
            entry["closed_under_product"] = all(
                structure.expand_in_orbit_basis(a * b, basis) is not None
                for a in basis for b in basis)
            ok = ok and entry["closed_under_product"]
        ok = ok and central
        detail[f"(n={n},k={k})"] = entry
    return ok, detail


def _check_mackey(allow_large, rng):
    detail = {}
    ok = True
    for n in (1, 2, 3):
        summands = mackey.mackey_decomposition(n)
        ids = sum(1 for s in summands if s.kind == "Id")
        total = sum(s.bimodule_dimension for s in summands)
        match = ids == group_order(n) and total == group_order(n + 1)
        ok = ok and match
        detail[f"n={n}"] = {"id_summands": ids, "dimension_total": total}
    return ok, detail


def _check_power_identity(allow_large, rng):
    powers = endo.power_table(1, 7)
    o = powers[0]
    odd_ok = all(powers[k - 1] == o.scaled(1 << (k - 1)) for k in (3, 5, 7))
    e = AlgebraElement.one(2)
    flip = AlgebraElement.of(
        treegroup.TreeAutomorphism.from_word((0, 1, 1)))
    square_ok = powers[1] == e.scaled(2) + flip.scaled(2)
    return odd_ok and square_ok, {
        "odd_identity_k": [3, 5, 7],
        "odd_ok": odd_ok,
        "square": algebra_json(powers[1]),
        "square_ok": square_ok,
    }


def _check_orbit_stability(allow_large, rng):
    detail = {}
    ok = True
    for n in (1, 2, 3):
        root = treegroup.beta(n + 1, n + 1)
        small = algebra.orbit(root, SubgroupSpec.embedded(n))
        big = algebra.orbit(root, SubgroupSpec.full())
        stable = small.elements == big.elements
        central = algebra.centralizes(
            algebra.orbit_sum(root, SubgroupSpec.embedded(n)),
            SubgroupSpec.full())
        ok = ok and stable and central
        detail[f"n={n}"] = {"orbits_equal": stable, "sum_central": central}
    return ok, detail


def _check_end_bases(allow_large, rng):
    detail = {}
    ok = True
    for n, k in [(1, 1), (2, 1), (1, 2)]:
        eb = endo.end_ind_res_basis(n, k, 0)
        ref = structure.centralizer_algebra_basis(n, k)
        match = tuple(eb.vectors) == tuple(ref)
        ok = ok and match
        detail[f"End({n},Ind^{k})"] = {"dimension": eb.dimension, "matches": match}
    sizes_ok = (len(endo.tensor_basis(1, 1, 1)) == 4
                and len(endo.tensor_basis(2, 1, 1)) == 32)
    ok = ok and sizes_ok
    detail["tensor_sizes_ok"] = sizes_ok
    try:
        endo.tensor_basis(1, 1, 2)
        rejected = False
    except endo.HomSpaceEmpty:
        rejected = True
    ok = ok and rejected
    detail["over_restriction_rejected"] = rejected
    return ok, detail


def _check_opposite(allow_large, rng):
    detail = {}
    ok = True
    for n, k in [(1, 0), (1, 1)]:
        report = endo.opposite_check(n, k)
        good = report.closure_ok and report.transpose_ok
        ok = ok and good
        detail[f"(n={n},k={k})"] = {
            "dimension": report.dimension,
            "closure_ok": report.closure_ok,
            "transpose_ok": report.transpose_ok,
        }
    return ok, detail


def _check_d_generators(allow_large, rng):
    detail = {}
    table12 = endo.d_generator_table(1, 2)
    labels12 = [label for label, _ in table12]
    detail["labels(1,2)"] = labels12
    ok = labels12 == ["b1^(0)", "o(b2)"]
    detail["count(2,4)"] = len(endo.d_generator_table(2, 4))
    ok = ok and detail["count(2,4)"] == 8
    for n in (1, 2):
        table = endo.d_generator_table(n, n + 1)
        orbit_sums = [elt for label, elt in table if label.startswith("o(")]
        gens = [elt for label, elt in table if label.startswith("b")]
        commute = all(o * g == g * o for o in orbit_sums for g in gens)
        ok = ok and commute
        detail[f"commutators_vanish(n={n})"] = commute
    return ok, detail


def _check_axioms_spot(allow_large, rng):
    detail = {}
    ok = True
    for n in (3, 4):
        group = full_group(n)
        order = len(group)
        e = treegroup.identity(n)
        trials = 200
        good = True
        for _ in range(trials):
            a = group[rng.randrange(order)]
            b = group[rng.randrange(order)]
            c = group[rng.randrange(order)]
            if (a * b) * c != a * (b * c):
                good = False
            if a * a.inverse() != e:
                good = False
        ok = ok and good
        detail[f"n={n}"] = {"triples": trials, "ok": good}
    return ok, detail


_CHECKS = [
    ("group-sizes", _check_group_sizes),
    ("presentation", _check_presentation),
    ("center", _check_centers),
    ("centralizer", _check_centralizers),
    ("class-counts", _check_class_counts),
    ("right-cosets", _check_right_cosets),
    ("double-cosets", _check_double_cosets),
    ("orbit-counts", _check_orbit_counts),
    ("centralizer-basis", _check_centralizer_basis),
    ("mackey", _check_mackey),
    ("power-identity", _check_power_identity),
    ("orbit-stability", _check_orbit_stability),
    ("end-bases", _check_end_bases),
    ("opposite-algebra", _check_opposite),
    ("d-generators", _check_d_generators),
    ("group-axioms-spot", _check_axioms_spot),
]


def _cmd_verify_all(args) -> Report:
    rng = random.Random(args.seed)
    results = []
    all_ok = True
    for name, fn in _CHECKS:
        try:
            ok, detail = fn(args.allow_large, rng)
        except VerificationError as exc:
            ok, detail = False, {"error": str(exc)}
        results.append({"check": name, "passed": ok, "detail": detail})
        all_ok = all_ok and ok
    payload = {
        "allow_large": bool(args.allow_large),
        "seed": args.seed,
        "checks": results,
        "passed": sum(1 for r in results if r["passed"]),
        "failed": sum(1 for r in results if not r["passed"]),
    }
    rows = [[r["check"], "PASS" if r["passed"] else "FAIL"] for r in results]
    return Report("verify-all",
                  {"seed": args.seed, "allow_large": bool(args.allow_large)},
                  "PASS" if all_ok else "FAIL", payload,
                  ["check", "status"], rows)


# --- rendering and dispatch ----------------------------------------------------

def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        blob = {
            "subcommand": report.subcommand,
            "parameters": report.parameters,
            "verdict": report.verdict,
            "payload": report.payload,
        }
        return json.dumps(blob, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(report.columns)
        for row in report.rows:
            writer.writerow([str(cell) for cell in row])
        return buf.getvalue()
    lines = [f"{report.verdict} {report.subcommand} "
             + " ".join(f"{k}={v}" for k, v in report.parameters.items())]
    if report.columns:
        lines.append("  " + " | ".join(report.columns))
        for row in report.rows:
            lines.append("  " + " | ".join(str(cell) for cell in row))
    return "\n".join(lines) + "\n"


_HANDLERS = {
    "enumerate": _cmd_enumerate,
    "center": _cmd_center,
    "classes": _cmd_classes,
    "class-count": _cmd_class_count,
    "right-cosets": _cmd_right_cosets,
    "double-cosets": _cmd_double_cosets,
    "orbits": _cmd_orbits,
    "centralizer-basis": _cmd_centralizer_basis,
    "presentation": _cmd_presentation,
    "mackey": _cmd_mackey,
    "tensor-basis": _cmd_tensor_basis,
    "end-basis": _cmd_end_basis,
    "d-gens": _cmd_d_gens,
    "power-table": _cmd_power_table,
    "opposite-check": _cmd_opposite_check,
    "verify-all": _cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iterwreath",
        description="Exact verification tables for the binary-tree "
                    "automorphism tower.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, positionals=(), allow_large=False, seed=False):
        p = sub.add_parser(name, help=help_text)
        for arg in positionals:
            p.add_argument(arg, type=int)
        p.add_argument("--format", choices=("json", "csv", "text"),
                       default="text")
        p.add_argument("--out", default=None,
                       help="write the report to this path instead of stdout")
        if allow_large:
            p.add_argument("--allow-large", action="store_true",
                           dest="allow_large",
                           help="unlock the level-4 exhaustive runs")
        if seed:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        return p

    add("enumerate", "list a full level and check its order", ["n"])
    add("center", "brute-force center against the closed form", ["n"])
    add("classes", "conjugacy classes against the class-count recursion",
        ["n"], allow_large=True)
    add("class-count", "class-count recursion values", ["n"])
    add("right-cosets", "verified right-coset transversal", ["n", "l"])
    add("double-cosets", "verified two-sided coset decomposition", ["n"])
    add("orbits", "conjugation orbits with structured labels",
        ["n", "k"], allow_large=True)
    add("centralizer-basis", "orbit-sum basis of the centralizer algebra",
        ["n", "k"], allow_large=True)
    add("presentation", "defining relations in the permutation representation",
        ["n"])
    add("mackey", "double-coset summand census and dimension audit", ["n"])
    add("tensor-basis", "tensor basis of the endomorphism bimodule",
        ["n", "k", "l"])
    add("end-basis", "orbit-sum basis of the endomorphism space",
        ["n", "k", "l"])
    add("d-gens", "generators of the non-central centralizer block",
        ["n", "m"])
    add("power-table", "exact powers of the root-swap orbit sum",
        ["n", "max_k"])
    add("opposite-check", "left/right composition tables are transposed",
        ["n", "k"])
    add("verify-all", "run the whole desk-scale battery", [],
        allow_large=True, seed=True)
    return parser


def dispatch(args) -> Report:
    started = time.perf_counter()
    report = _HANDLERS[args.command](args)
    report.timing_ms = (time.perf_counter() - started) * 1000.0
    return report


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = dispatch(args)
    except GUARD_ERRORS as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        report = Report(args.command, {}, "FAIL", {"error": str(exc)},
                        ["error"], [[str(exc)]])
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"# elapsed_ms={report.timing_ms:.1f}", file=sys.stderr)
    return 0 if report.verdict in ("PASS", "INFO") else 1


if __name__ == "__main__":
    sys.exit(main())
