"""JSON wire formats: state files, move scripts, plan and verify reports.

All formats are UTF-8 JSON with fixed key order, so identical inputs
produce byte-identical files.  Parsing is strict: unknown fields,
missing fields, malformed identifiers and histories that do not replay
to the stored component list are all rejected with
:class:`StateFormatError`.

A state file looks like::

    {
      "version": 1,
      "label": "from-heegaard(genus=2)",
      "genera": {"g12": 2, "g13": 0, "g23": 0},
      "link": {"components": ["c0"], "next_id": 1},
      "history": []
    }

A move script is a bare JSON array of move records such as::

    {"op": "stab", "handlebody": 3, "arc": {"same": "c0"},
     "created": ["c1", "c2"], "removed": ["c0"]}

State histories hold only ``stab`` and ``destab`` records (a compound
fake Heegaard stabilization stores its two constituents); scripts may
also hold ``fake_stab`` records, replayed as the compound move.
"""

from __future__ import annotations

import json
import re

from .core import (
    GenealogyEvent,
    LinkComponentSet,
    SurfaceGenera,
    TrisectionState,
)
from .explorer import MoveGraphNode, PropertyResult, VerificationReport
from .moves import (
    Arc,
    DistinctComponents,
    MoveRecord,
    MoveScript,
    SameComponent,
)
from .planner import PlanReport, PlanSteps

FORMAT_VERSION = 1

_ID_PATTERN = re.compile(r"^c(0|[1-9][0-9]*)$")

_STEP_NAMES = (
    "step1_balance",
    "step2_build",
    "step3_fake",
    "step4_s12_to_disk",
    "step5_s13_to_disk",
)


class StateFormatError(Exception):
    """A JSON document does not follow the wire format."""


def canonical_dumps(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _loads(text: str, context: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as error:
        raise StateFormatError(f"{context}: not valid JSON ({error})") from error


# ---------------------------------------------------------------------------
# payload builders


def arc_to_payload(arc: Arc) -> dict:
    if isinstance(arc, SameComponent):
        return {"same": arc.component}
    return {"distinct": [arc.first, arc.second]}


def record_to_payload(record: MoveRecord) -> dict:
    return {
        "op": record.op,
        "handlebody": record.handlebody,
        "arc": arc_to_payload(record.arc),
        "created": list(record.created),
        "removed": list(record.removed),
    }


def script_to_payload(script: MoveScript) -> list:
    return [record_to_payload(record) for record in script]


def state_to_payload(state: TrisectionState) -> dict:
    return {
        "version": FORMAT_VERSION,
        "label": state.label,
        "genera": {
            "g12": state.genera.g12,
            "g13": state.genera.g13,
            "g23": state.genera.g23,
        },
        "link": {
            "components": list(state.link.components),
            "next_id": state.link.next_id,
        },
        "history": script_to_payload(state.history),
    }


def plan_report_to_payload(report: PlanReport) -> dict:
    def steps(side: PlanSteps) -> dict:
        return {
            "steps": {name: script_to_payload(getattr(side, name)) for name in _STEP_NAMES}
        }

    return {
        "version": FORMAT_VERSION,
        "rs_bound": report.rs_bound,
        "final_profile": list(report.final_profile.as_tuple()),
        "final_genera": {
            "g12": report.final_genera.g12,
            "g13": report.final_genera.g13,
            "g23": report.final_genera.g23,
        },
        "a": steps(report.a),
        "b": steps(report.b),
    }


def node_to_payload(node: MoveGraphNode) -> dict:
    return {"g12": node.g12, "g13": node.g13, "g23": node.g23, "b": node.b}


def verification_report_to_payload(report: VerificationReport) -> dict:
    def entry(result: PropertyResult) -> dict:
        range_payload = {"max_sum": result.max_sum}
        if result.slack is not None:
            range_payload["slack"] = result.slack
        return {
            "property": result.name,
            "range": range_payload,
            "pass": result.passed,
            "counterexamples": [node_to_payload(n) for n in result.counterexamples],
        }

    return {
        "version": FORMAT_VERSION,
        "max_sum": report.max_sum,
        "entries": [entry(result) for result in report.entries],
    }


def state_to_text(state: TrisectionState) -> str:
    return canonical_dumps(state_to_payload(state))


def script_to_text(script: MoveScript) -> str:
    return canonical_dumps(script_to_payload(script))


def plan_report_to_text(report: PlanReport) -> str:
    return canonical_dumps(plan_report_to_payload(report))


def verification_report_to_text(report: VerificationReport) -> str:
    return canonical_dumps(verification_report_to_payload(report))


# ---------------------------------------------------------------------------
# strict parsing


def _as_object(value, context: str, keys: tuple[str, ...]) -> dict:
    if not isinstance(value, dict):
        raise StateFormatError(f"{context}: expected an object")
    unknown = set(value) - set(keys)
    if unknown:
        raise StateFormatError(f"{context}: unknown field(s) {sorted(unknown)}")
    missing = set(keys) - set(value)
    if missing:
        raise StateFormatError(f"{context}: missing field(s) {sorted(missing)}")
    return value


def _as_int(value, context: str, minimum: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise StateFormatError(f"{context}: expected an integer")
    if minimum is not None and value < minimum:
        raise StateFormatError(f"{context}: must be >= {minimum}, got {value}")
    return value


def _as_string(value, context: str) -> str:
    if not isinstance(value, str):
        raise StateFormatError(f"{context}: expected a string")
    return value


def _as_id(value, context: str) -> str:
    label = _as_string(value, context)
    if _ID_PATTERN.match(label) is None:
        raise StateFormatError(f"{context}: component identifiers look like 'c12', got {label!r}")
    return label


def _id_number(label: str) -> int:
    return int(label[1:])


def _parse_arc(payload, context: str) -> Arc:
    if not isinstance(payload, dict) or len(payload) != 1:
        raise StateFormatError(f"{context}: an arc is one of {{'same': id}} or {{'distinct': [id, id]}}")
    if "same" in payload:
        return SameComponent(_as_id(payload["same"], f"{context}.same"))
    if "distinct" in payload:
        pair = payload["distinct"]
        if not isinstance(pair, list) or len(pair) != 2:
            raise StateFormatError(f"{context}.distinct: expected a list of two identifiers")
        first = _as_id(pair[0], f"{context}.distinct[0]")
        second = _as_id(pair[1], f"{context}.distinct[1]")
        if first == second:
            raise StateFormatError(f"{context}.distinct: the two components must differ")
        return DistinctComponents(first, second)
    raise StateFormatError(f"{context}: unknown arc kind {sorted(payload)}")


def _parse_id_list(payload, context: str) -> tuple[str, ...]:
    if not isinstance(payload, list):
        raise StateFormatError(f"{context}: expected a list of identifiers")
    labels = tuple(_as_id(item, f"{context}[{n}]") for n, item in enumerate(payload))
    if len(set(labels)) != len(labels):
        raise StateFormatError(f"{context}: identifiers must be unique")
    return labels


def parse_record(payload, context: str, allow_fake: bool) -> MoveRecord:
    obj = _as_object(payload, context, ("op", "handlebody", "arc", "created", "removed"))
    op = _as_string(obj["op"], f"{context}.op")
    if op not in ("stab", "destab", "fake_stab"):
        raise StateFormatError(f"{context}.op: unknown op {op!r}")
    if op == "fake_stab" and not allow_fake:
        raise StateFormatError(
            f"{context}: state histories store the two constituent moves of a "
            "compound fake_stab, never the compound record itself"
        )
    handlebody = _as_int(obj["handlebody"], f"{context}.handlebody")
    if handlebody not in (1, 2, 3):
        raise StateFormatError(f"{context}.handlebody: must be 1, 2 or 3")
    arc = _parse_arc(obj["arc"], f"{context}.arc")
    created = _parse_id_list(obj["created"], f"{context}.created")
    removed = _parse_id_list(obj["removed"], f"{context}.removed")
    if op in ("stab", "destab"):
        if isinstance(arc, SameComponent):
            if removed != (arc.component,) or len(created) != 2:
                raise StateFormatError(
                    f"{context}: a one-component arc removes exactly the named "
                    "component and creates two"
                )
        else:
            if removed != (arc.first, arc.second) or len(created) != 1:
                raise StateFormatError(
                    f"{context}: a two-component arc removes exactly the named "
                    "pair and creates one component"
                )
    else:
        if len(created) != len(removed) or len(created) not in (1, 2):
            raise StateFormatError(
                f"{context}: a fake_stab record nets one-for-one or two-for-two components"
            )
    return MoveRecord(op, handlebody, arc, created, removed)


def parse_script(payload, context: str = "script") -> MoveScript:
    if not isinstance(payload, list):
        raise StateFormatError(f"{context}: expected a JSON array of move records")
    return tuple(
        parse_record(item, f"{context}[{n}]", allow_fake=True)
        for n, item in enumerate(payload)
    )


def script_from_text(text: str) -> MoveScript:
    return parse_script(_loads(text, "script"))


def _rebuild_link(
    components: tuple[str, ...], next_id: int, history: MoveScript, context: str
) -> LinkComponentSet:
    # Recover the initial component set by undoing the history, then
    # replay it forwards.  The forward pass pins every fresh label to the
    # sequential counter, rebuilds the genealogy, and must land exactly
    # on the stored component list.
    current = set(components)
    for index in range(len(history) - 1, -1, -1):
        record = history[index]
        for label in record.created:
            if label not in current:
                raise StateFormatError(
                    f"{context}: history step {index + 1} creates {label!r} which "
                    "later steps neither keep nor remove"
                )
            current.remove(label)
        for label in record.removed:
            if label in current:
                raise StateFormatError(
                    f"{context}: history step {index + 1} removes {label!r} which "
                    "still exists afterwards"
                )
            current.add(label)
    initial = sorted(current, key=_id_number)
    if initial != [f"c{n}" for n in range(len(initial))]:
        raise StateFormatError(
            f"{context}: the initial components implied by the history must be "
            f"c0..c{max(len(initial) - 1, 0)}, got {initial}"
        )

    ordered = list(initial)
    counter = len(initial)
    genealogy = [GenealogyEvent("genesis", (), tuple(initial))]
    for step, record in enumerate(history, start=1):
        for label in record.removed:
            if label not in ordered:
                raise StateFormatError(
                    f"{context}: history step {step} removes missing component {label!r}"
                )
            ordered.remove(label)
        expected = tuple(f"c{counter + n}" for n in range(len(record.created)))
        if record.created != expected:
            raise StateFormatError(
                f"{context}: history step {step} must create {list(expected)}, "
                f"got {list(record.created)}"
            )
        counter += len(record.created)
        ordered.extend(record.created)
        kind = "split" if len(record.created) == 2 else "merge"
        genealogy.append(GenealogyEvent(kind, record.removed, record.created))
    if tuple(ordered) != components:
        raise StateFormatError(
            f"{context}: stored components {list(components)} do not match the "
            f"history replay {ordered}"
        )
    if counter != next_id:
        raise StateFormatError(
            f"{context}: next_id is {next_id} but the history consumed labels up to c{counter - 1}"
        )
    return LinkComponentSet(components, next_id, tuple(genealogy))


def parse_state(payload) -> TrisectionState:
    obj = _as_object(payload, "state", ("version", "label", "genera", "link", "history"))
    version = _as_int(obj["version"], "state.version")
    if version != FORMAT_VERSION:
        raise StateFormatError(f"state.version: expected {FORMAT_VERSION}, got {version}")
    label = _as_string(obj["label"], "state.label")
    genera_obj = _as_object(obj["genera"], "state.genera", ("g12", "g13", "g23"))
    genera = SurfaceGenera(
        _as_int(genera_obj["g12"], "state.genera.g12", minimum=0),
        _as_int(genera_obj["g13"], "state.genera.g13", minimum=0),
        _as_int(genera_obj["g23"], "state.genera.g23", minimum=0),
    )
    link_obj = _as_object(obj["link"], "state.link", ("components", "next_id"))
    components = _parse_id_list(link_obj["components"], "state.link.components")
    if not components:
        raise StateFormatError("state.link.components: the boundary link is never empty")
    next_id = _as_int(link_obj["next_id"], "state.link.next_id", minimum=1)
    history_payload = obj["history"]
    if not isinstance(history_payload, list):
        raise StateFormatError("state.history: expected a list of move records")
    history = tuple(
        parse_record(item, f"state.history[{n}]", allow_fake=False)
        for n, item in enumerate(history_payload)
    )
    link = _rebuild_link(components, next_id, history, "state")
    return TrisectionState(genera, link, history, label)


def state_from_text(text: str) -> TrisectionState:
    return parse_state(_loads(text, "state"))
