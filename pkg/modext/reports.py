"""Machine-readable reports and their re-validation.

Every report is a plain dict with a ``kind`` key, serialized with sorted keys
so identical inputs give byte-identical JSON. Morphisms are stored as
generator-image tables: the image of each canonical generator of the source
middle group. ``revalidate_report`` rebuilds every stored witness from the
specification file and checks it again.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Mapping, Sequence
from typing import Any

import networkx as nx

from modext.data import ClassLabel, DecisionMethod
from modext.engine.caps import Caps
from modext.engine.classes import predicate, same_class, split_criteria
from modext.engine.decision import DecisionReport, decide
from modext.engine.digraph import (
    BipartiteDigraph,
    HallResult,
    KSRelabeling,
    hall_condition,
    ks_relabel,
    out_neighborhood,
)
from modext.engine.endomorphisms import analyze, crt_check, ideal_inclusions, module_type
from modext.engine.extensions import ExtMorphism, ExtObject, direct_sum, element_images, is_iso_in_E, is_split
from modext.engine.groups import Hom
from modext.exceptions import ModextError
from modext.spec_file import ObjectSpecFile

logger = logging.getLogger(__name__)

__all__ = [
    "check_report",
    "decision_report",
    "digraph_report",
    "endoring_report",
    "invariants_report",
    "render_text",
    "revalidate_report",
    "to_json",
]

Report = dict[str, Any]


def to_json(report: Mapping[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _morphism(m: ExtMorphism | None) -> list[list[int]] | None:
    if m is None:
        return None
    return [list(image) for image in element_images(m)]


def _rebuild(X: ExtObject, Y: ExtObject, images: Sequence[Sequence[int]]) -> ExtMorphism:
    return ExtMorphism(X, Y, Hom.from_images(X.B, Y.B, [tuple(image) for image in images]))


def object_summary(name: str, X: ExtObject, caps: Caps | None = None) -> Report:
    summary = {
        "name": name,
        "B": list(X.B.factors),
        "A_generators": [list(g) for g in X.A.basis],
        "A": list(X.a_type.factors),
        "C": list(X.c_type.factors),
        "flags": X.scope_flags,
        "in_scope": X.in_scope,
    }
    if X.in_u:
        summary["split"] = is_split(X, caps)
    return summary


def check_report(spec: ObjectSpecFile, caps: Caps | None = None) -> Report:
    """Summary of every declaration in a specification file."""
    return {
        "kind": "check",
        "objects": [object_summary(name, X, caps) for name, X in spec.objects.items()],
        "lists": {name: list(members) for name, members in spec.lists.items()},
        "digraphs": {
            name: {"X": list(D.X), "Y": list(D.Y), "edges": [list(edge) for edge in sorted(D.edges)]}
            for name, D in spec.digraphs.items()
        },
    }


def invariants_report(spec: ObjectSpecFile, first: str, second: str, caps: Caps | None = None) -> Report:
    """The four class comparisons of two declared extensions, with witnesses."""
    X, Y = spec.object(first), spec.object(second)
    comparisons = []
    for label in ClassLabel:
        result = same_class(X, Y, label, caps)
        comparisons.append(
            {
                "label": label.key,
                "same": result.same,
                "forward": _morphism(result.forward),
                "backward": _morphism(result.backward),
            }
        )
    return {
        "kind": "invariants",
        "first": first,
        "second": second,
        "comparisons": comparisons,
        "isomorphic": all(c["same"] for c in comparisons) if X.in_u and Y.in_u else None,
    }


def endoring_report(spec: ObjectSpecFile, name: str, caps: Caps | None = None) -> Report:
    """Endomorphism ring analysis of a declared extension."""
    X = spec.object(name)
    analysis = analyze(X, caps, strict=False)
    crt = crt_check(analysis)
    bound = module_type(X.a_type, caps) + module_type(X.c_type, caps)
    criteria = split_criteria(X, caps)
    return {
        "kind": "endoring",
        "name": name,
        "size": analysis.size,
        "ideal_sizes": {label.key: size for label, size in analysis.ideal_sizes().items()},
        "maximal_labels": sorted(label.key for label in analysis.maximal_labels),
        "type": analysis.type_count,
        "radical_size": len(analysis.radical),
        "automorphisms": len(analysis.automorphisms),
        "exhaustive": analysis.exhaustive,
        "violations": list(analysis.violations),
        "crt": {
            "quotient_sizes": list(crt.quotient_sizes),
            "radical_quotient_size": crt.radical_quotient_size,
            "division_rings": crt.division_rings,
            "holds": crt.holds,
        },
        "type_bound": {"bound": bound, "holds": analysis.type_count <= bound},
        "inclusions": {
            f"{small.key}<={big.key}": held for (small, big), held in ideal_inclusions(analysis).items()
        },
        "split": {
            "retraction": criteria.retraction,
            "lower": criteria.lower,
            "upper": criteria.upper,
            "agree": criteria.agree,
        },
    }


def _pairs(pairing: Mapping[ClassLabel, Sequence[tuple[int, int]]]) -> dict[str, list[list[int]]]:
    return {label.key: [list(pair) for pair in pairs] for label, pairs in pairing.items()}


def decision_result(result: DecisionReport) -> Report:
    failure = None
    if result.failure is not None:
        failure = {
            "label": result.failure.label.key if result.failure.label else None,
            "left_block": list(result.failure.left_block),
            "right_block": list(result.failure.right_block),
            "reason": result.failure.reason,
        }
    return {
        "verdict": result.verdict,
        "witnesses": _pairs(result.witnesses),
        "attempted": _pairs(result.attempted),
        "failure": failure,
        "index_sets": {key: list(value) for key, value in result.index_sets.items()},
        "isomorphism": _morphism(result.isomorphism),
    }


def decision_report(
    spec: ObjectSpecFile,
    left: str,
    right: str,
    results: Mapping[DecisionMethod, DecisionReport],
) -> Report:
    """Decision results of one or more methods on two declared lists."""
    verdicts = {result.verdict for result in results.values()}
    return {
        "kind": "decide",
        "left": left,
        "right": right,
        "left_members": list(spec.list_names(left)),
        "right_members": list(spec.list_names(right)),
        "results": {str(method): decision_result(result) for method, result in results.items()},
        "agree": len(verdicts) == 1,
        "verdict": all(verdicts),
    }


def _hall(result: HallResult | None) -> Report | None:
    if result is None:
        return None
    return {"holds": result.holds, "witness": sorted(result.witness) if result.witness else None}


def digraph_report(
    name: str,
    D: BipartiteDigraph,
    brute: HallResult | None,
    matching: HallResult,
    relabeling: KSRelabeling,
) -> Report:
    """Hall-condition results in both modes and the mutual-reachability pairing."""
    return {
        "kind": "digraph",
        "name": name,
        "hall_brute": _hall(brute),
        "hall_matching": _hall(matching),
        "agree": brute is None or brute.holds == matching.holds,
        "pairing": [list(pair) for pair in relabeling.pairing],
        "witness": sorted(relabeling.witness) if relabeling.witness else None,
    }


def render_text(report: Mapping[str, Any]) -> str:
    """Indented human-readable rendering of a report."""
    lines: list[str] = []

    def scalar(value: Any) -> str:
        if value is None:
            return "-"
        if isinstance(value, bool):
            return "yes" if value else "no"
        return str(value)

    def flat(value: Any) -> bool:
        return not isinstance(value, (dict, list)) or (
            isinstance(value, list) and all(not isinstance(v, dict) for v in value)
        )

    def walk(value: Any, depth: int) -> None:
        pad = "  " * depth
        if isinstance(value, dict):
            for key in sorted(value):
                item = value[key]
                if flat(item):
                    lines.append(f"{pad}{key}: {json.dumps(item) if isinstance(item, list) else scalar(item)}")
                else:
                    lines.append(f"{pad}{key}:")
                    walk(item, depth + 1)
        else:
            for item in value:
                lines.append(f"{pad}-")
                walk(item, depth + 1)

    walk(report, 0)
    return "\n".join(lines) + "\n"


def _revalidate_check(report: Report, spec: ObjectSpecFile, caps: Caps | None) -> list[str]:
    problems = []
    for entry in report.get("objects", []):
        fresh = object_summary(entry["name"], spec.object(entry["name"]), caps)
        if fresh != entry:
            problems.append(f"{entry['name']}: stored summary differs from a fresh check")
    return problems


def _revalidate_invariants(report: Report, spec: ObjectSpecFile, caps: Caps | None) -> list[str]:
    X, Y = spec.object(report["first"]), spec.object(report["second"])
    problems = []
    for entry in report["comparisons"]:
        label = ClassLabel.parse(entry["label"])
        if not entry["same"]:
            if same_class(X, Y, label, caps):
                problems.append(f"{label}: classes are equal, report says they differ")
            continue
        for key, source, target in (("forward", X, Y), ("backward", Y, X)):
            try:
                m = _rebuild(source, target, entry[key])
            except ModextError as exc:
                problems.append(f"{label} {key} witness is not a morphism: {exc}")
                continue
            if not predicate(m, label):
                problems.append(f"{label} {key} witness fails the predicate")
    return problems


def _revalidate_endoring(report: Report, spec: ObjectSpecFile, caps: Caps | None) -> list[str]:
    fresh = endoring_report(spec, report["name"], caps)
    return [f"{key} differs from a fresh analysis" for key in sorted(fresh) if fresh[key] != report.get(key)]


def _expected_sets(result: Report, label: ClassLabel, n: int, m: int) -> tuple[set[int], set[int]]:
    sets = result["index_sets"]
    if f"X_{label.key}" in sets:
        return set(sets[f"X_{label.key}"]), set(sets[f"Y_{label.key}"])
    if "X_l" in sets:
        side = label.b.value
        return set(sets[f"X_{side}"]), set(sets[f"X'_{side}"])
    return set(range(n)), set(range(m))


def _revalidate_decide(report: Report, spec: ObjectSpecFile, caps: Caps | None) -> list[str]:
    left, right = spec.object_list(report["left"]), spec.object_list(report["right"])
    problems = []
    for method_name, result in report["results"].items():
        method = DecisionMethod(method_name)
        fresh = decide(method, left, right, caps)
        if fresh.verdict != result["verdict"]:
            problems.append(f"{method}: verdict {result['verdict']} does not reproduce")
        for key, pairs in result["witnesses"].items():
            label = ClassLabel.parse(key)
            xs, ys = _expected_sets(result, label, len(left), len(right))
            if sorted(i for i, _ in pairs) != sorted(xs) or sorted(j for _, j in pairs) != sorted(ys):
                problems.append(f"{method} {label}: witness is not a bijection of the index sets")
                continue
            for i, j in pairs:
                if not same_class(left[i], right[j], label, caps):
                    problems.append(f"{method} {label}: pair ({i}, {j}) does not preserve the class")
        if result.get("isomorphism") is not None:
            S, T = direct_sum(left, caps).obj, direct_sum(right, caps).obj
            try:
                iso = _rebuild(S, T, result["isomorphism"])
            except ModextError as exc:
                problems.append(f"{method}: isomorphism is not a morphism: {exc}")
                continue
            if not is_iso_in_E(iso):
                problems.append(f"{method}: stored map is not an isomorphism of extensions")
    return problems


def _revalidate_digraph(report: Report, spec: ObjectSpecFile, caps: Caps | None) -> list[str]:
    D = spec.digraph(report["name"])
    graph = D.to_networkx()
    problems = []
    for x, y in report["pairing"]:
        if not (nx.has_path(graph, x, y) and nx.has_path(graph, y, x)):
            problems.append(f"Pair ({x}, {y}) is not mutually reachable")
    if report["pairing"] and sorted(x for x, _ in report["pairing"]) != sorted(D.X):
        problems.append("Pairing does not cover X")
    if report["witness"] is not None:
        T = set(report["witness"])
        if len(T) <= len(out_neighborhood(D, T)):
            problems.append(f"Witness {sorted(T)} does not violate the Hall condition")
    if bool(ks_relabel(D)) != (report["witness"] is None):
        problems.append("Pairing outcome does not reproduce")
    if report["hall_brute"] is not None and hall_condition(D, "brute", caps).holds != report["hall_brute"]["holds"]:
        problems.append("Brute-force Hall verdict does not reproduce")
    return problems


REVALIDATORS = {
    "check": _revalidate_check,
    "invariants": _revalidate_invariants,
    "endoring": _revalidate_endoring,
    "decide": _revalidate_decide,
    "digraph": _revalidate_digraph,
}


def revalidate_report(report: Mapping[str, Any], spec: ObjectSpecFile, caps: Caps | None = None) -> list[str]:
    """Re-check every verdict and witness of a stored report against a specification file.

    Returns:
        list[str]: Problems found; empty when the report re-validates.

    Raises:
        SpecFileError: If the report names something the file does not declare.
    """
    kind = report.get("kind")
    if kind not in REVALIDATORS:
        return [f"Reports of kind {kind!r} cannot be re-validated"]
    problems = REVALIDATORS[kind](dict(report), spec, caps)
    logger.info(f"Re-validated {kind} report: {len(problems)} problems")
    return problems
