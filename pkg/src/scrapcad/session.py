"""Document root: command application with monotone sequencing, undo and
redo, deterministic replay, and persistence.

Commands mutate a snapshot; on any error the previous document is kept
(atomicity).  Undo and redo are themselves logged commands, so replaying
the command log from an empty document reproduces the exact state.
"""

from __future__ import annotations

import copy
import hashlib
import json
import os
from typing import Optional

from . import assembly, cutplan, inventory, parts
from .errors import (IoFailure, MalformedCommand, NothingToRedo,
                     NothingToUndo, ScrapCadError, SchemaViolation)
from .model import AUTO_RESOLVE, MANUAL, Document

ENV_KERF = "SCRAPCAD_KERF_MM"


def canonical_json(obj) -> str:
    """Canonical serialization: keys sorted, floats as shortest
    round-trip decimals (Python repr)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def state_digest(doc: Document) -> str:
    """Hash of (parts, placements, violations); the replay oracle."""
    payload = {
        "parts": {str(k): v.to_dict() for k, v in sorted(doc.parts.items())},
        "placements": {str(sid): plan.to_dict()
                       for sid, plan in sorted(doc.plans.items())},
        "violations": [v.to_dict() for v in cutplan.detect_violations(doc)],
    }
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


def _diff_collections(before: dict, after: dict) -> dict:
    """Entity-level delta between two serialized documents."""
    delta = {}
    for key in ("scraps", "parts", "plans", "link_groups"):
        b, a = before[key], after[key]
        added = {k: a[k] for k in a if k not in b}
        removed = sorted(k for k in b if k not in a)
        changed = {k: a[k] for k in a if k in b and a[k] != b[k]}
        if added or removed or changed:
            delta[key] = {"added": added, "removed": removed, "changed": changed}
    for key in ("settings", "scene_mesh"):
        if before[key] != after[key]:
            delta[key] = after[key]
    return delta


class Session:
    """Single-writer command applier over one document."""

    def __init__(self, doc: Optional[Document] = None,
                 kerf_override: Optional[float] = None):
        self.doc = doc or Document()
        env_kerf = os.environ.get(ENV_KERF)
        kerf = kerf_override if kerf_override is not None else (
            float(env_kerf) if env_kerf else None)
        if kerf is not None:
            self.doc.settings.kerf_blade_mm = kerf
            for plan in self.doc.plans.values():
                plan.kerf_blade_mm = kerf
        self.seq = 0
        self.command_log: list = []
        self._undo_stack: list = []  # snapshots taken before each command
        self._redo_stack: list = []

    # -- command handlers ------------------------------------------------

    def _cmd_register_scrap(self, args):
        grain = None
        if args.get("grain"):
            from .model import GrainSpec
            grain = GrainSpec.from_dict(args["grain"])
        scrap = inventory.register_scrap(
            self.doc,
            dims=(args["length_mm"], args["width_mm"], args["thickness_mm"]),
            material_kind=args.get("material_kind", "wood"),
            tag=args.get("tag"), grain=grain,
            color_rgb=tuple(args.get("color_rgb", (0.8, 0.7, 0.5))))
        return {"scrap_id": scrap.id}

    def _cmd_update_scrap(self, args):
        scrap = inventory.update_scrap(self.doc, args["id"], args["patch"])
        return {"scrap_id": scrap.id}

    def _cmd_delete_scrap(self, args):
        inventory.delete_scrap(self.doc, args["id"])
        return {}

    def _cmd_spawn_part(self, args):
        part = parts.spawn_part(self.doc, scrap_id=args.get("scrap_id"),
                                dims=args.get("dims"), group=args.get("group"))
        return {"part_id": part.id}

    def _cmd_push_pull_face(self, args):
        part = parts.push_pull_face(self.doc, args["part_id"], args["face"],
                                    float(args["delta_mm"]))
        return {"part_id": part.id}

    def _cmd_move_edge(self, args):
        part = parts.move_edge(self.doc, args["part_id"],
                               tuple(args["edge"]), args["axis"],
                               float(args["delta_mm"]))
        return {"part_id": part.id}

    def _cmd_duplicate_part(self, args):
        part = parts.duplicate_part(self.doc, args["part_id"],
                                    join_link_group=args.get("join_link_group", False))
        return {"part_id": part.id}

    def _cmd_set_link_group(self, args):
        group = parts.set_link_group(self.doc, args["part_ids"])
        return {"group_id": group.id}

    def _cmd_unlink(self, args):
        parts.unlink(self.doc, args["part_id"])
        return {}

    def _cmd_delete_part(self, args):
        parts.delete_part(self.doc, args["part_id"])
        return {}

    def _cmd_set_part_group(self, args):
        part = self.doc.part(args["part_id"])
        part.group = args.get("group")
        return {"part_id": part.id}

    def _cmd_set_plan_mode(self, args):
        mode = args["mode"]
        if mode not in (AUTO_RESOLVE, MANUAL):
            raise MalformedCommand(f"unknown plan mode {mode!r}")
        self.doc.scrap(args["scrap_id"])  # raises UnknownScrap
        self.doc.plans[args["scrap_id"]].mode = mode
        return {}

    def _cmd_move_cut(self, args):
        placement = cutplan.move_cut(self.doc, args["part_id"],
                                     tuple(args["position_mm"]))
        return {"placement": placement.to_dict()}

    def _cmd_rotate_cut(self, args):
        placement = cutplan.rotate_cut(self.doc, args["part_id"])
        return {"placement": placement.to_dict()}

    def _cmd_auto_resolve(self, args):
        cutplan.auto_resolve(self.doc, args["scrap_id"])
        return {}

    def _cmd_reassign(self, args):
        placement = cutplan.reassign(self.doc, args["part_id"],
                                     args.get("scrap_id"))
        return {"placement": placement.to_dict() if placement else None}

    def _cmd_propose_move(self, args):
        pose = assembly.pose_from_euler(args["translation"],
                                        args["euler_deg"],
                                        snap=self.doc.settings.rotation_snap)
        resolved = assembly.propose_move(self.doc, args["part_id"], pose)
        return {"pose": resolved.to_dict()}

    def _cmd_snap_to_surface(self, args):
        pose = assembly.snap_to_surface(self.doc, args["part_id"], args["face"])
        return {"pose": pose.to_dict()}

    def _cmd_load_scene_mesh(self, args):
        mesh = assembly.load_scene_mesh(self.doc, args["triangles"],
                                        args.get("tags"))
        return {"triangle_count": len(mesh.triangles)}

    def _cmd_set_settings(self, args):
        s = self.doc.settings
        for key in ("kerf_blade_mm", "resaw_allowed", "rotation_snap",
                    "scene_collision"):
            if key in args:
                setattr(s, key, args[key])
        if "kerf_blade_mm" in args:
            for plan in self.doc.plans.values():
                plan.kerf_blade_mm = float(args["kerf_blade_mm"])
        return {}

    HANDLERS = {
        "register_scrap": _cmd_register_scrap,
        "update_scrap": _cmd_update_scrap,
        "delete_scrap": _cmd_delete_scrap,
        "spawn_part": _cmd_spawn_part,
        "push_pull_face": _cmd_push_pull_face,
        "move_edge": _cmd_move_edge,
        "duplicate_part": _cmd_duplicate_part,
        "set_link_group": _cmd_set_link_group,
        "unlink": _cmd_unlink,
        "delete_part": _cmd_delete_part,
        "set_part_group": _cmd_set_part_group,
        "set_plan_mode": _cmd_set_plan_mode,
        "move_cut": _cmd_move_cut,
        "rotate_cut": _cmd_rotate_cut,
        "auto_resolve": _cmd_auto_resolve,
        "reassign": _cmd_reassign,
        "propose_move": _cmd_propose_move,
        "snap_to_surface": _cmd_snap_to_surface,
        "load_scene_mesh": _cmd_load_scene_mesh,
        "set_settings": _cmd_set_settings,
    }

    MUTATES_PLANS = {"spawn_part", "push_pull_face", "move_edge",
                     "duplicate_part", "move_cut", "rotate_cut", "reassign",
                     "update_scrap", "set_plan_mode", "set_settings"}

    # -- application -----------------------------------------------------

    def _auto_resolve_pass(self):
        """Plans in auto-resolve mode separate overlapping cuts after any
        mutation that can create overlap."""
        for scrap_id in sorted(self.doc.plans):
            plan = self.doc.plans[scrap_id]
            if plan.mode != AUTO_RESOLVE or not plan.placements:
                continue
            violations = [v for v in cutplan.detect_violations(self.doc)
                          if v.kind == "Overlap2D" and v.scrap_id == scrap_id]
            if violations:
                cutplan.auto_resolve(self.doc, scrap_id)

    def apply_command(self, command: dict) -> dict:
        """Apply one command atomically and return its Event."""
        name = command.get("name")
        args = command.get("args", {}) or {}
        if name == "undo":
            return self.undo()
        if name == "redo":
            return self.redo()
        handler = self.HANDLERS.get(name)
        if handler is None:
            return self._error_event(name, MalformedCommand(
                f"unknown command {name!r}"))
        snapshot = copy.deepcopy(self.doc)
        before = snapshot.to_dict()
        try:
            result = handler(self, args)
            if name in self.MUTATES_PLANS:
                self._auto_resolve_pass()
        except ScrapCadError as exc:
            self.doc = snapshot
            return self._error_event(name, exc)
        except (KeyError, TypeError, ValueError) as exc:
            self.doc = snapshot
            return self._error_event(name, MalformedCommand(str(exc)))
        self.seq += 1
        self._undo_stack.append(snapshot)
        self._redo_stack.clear()
        self.command_log.append({"seq": self.seq, "name": name, "args": args})
        return self._event(name, result, before)

    def _event(self, name, result, before) -> dict:
        after = self.doc.to_dict()
        return {
            "seq": self.seq,
            "name": name,
            "error": None,
            "result": result,
            "delta": _diff_collections(before, after),
            "violations": [v.to_dict() for v in cutplan.detect_violations(self.doc)],
        }

    def _error_event(self, name, exc) -> dict:
        return {
            "seq": None,
            "name": name,
            "error": {"type": type(exc).__name__, "message": str(exc)},
            "result": None,
            "delta": {},
            "violations": [v.to_dict() for v in cutplan.detect_violations(self.doc)],
        }

    def undo(self) -> dict:
        if not self._undo_stack:
            return self._error_event("undo", NothingToUndo("history is empty"))
        before = self.doc.to_dict()
        self._redo_stack.append(copy.deepcopy(self.doc))
        self.doc = self._undo_stack.pop()
        self.seq += 1
        self.command_log.append({"seq": self.seq, "name": "undo", "args": {}})
        return self._event("undo", {}, before)

    def redo(self) -> dict:
        if not self._redo_stack:
            return self._error_event("redo", NothingToRedo("nothing to redo"))
        before = self.doc.to_dict()
        self._undo_stack.append(copy.deepcopy(self.doc))
        self.doc = self._redo_stack.pop()
        self.seq += 1
        self.command_log.append({"seq": self.seq, "name": "redo", "args": {}})
        return self._event("redo", {}, before)

    # -- persistence -----------------------------------------------------

    def save(self, path: str) -> None:
        payload = {"document": self.doc.to_dict(),
                   "command_log": self.command_log}
        try:
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, indent=1, sort_keys=True)
        except OSError as exc:
            raise IoFailure(f"cannot write {path}: {exc}") from exc

    @classmethod
    def load(cls, path: str, kerf_override: Optional[float] = None) -> "Session":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                payload = json.load(fh)
        except OSError as exc:
            raise IoFailure(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SchemaViolation(f"not a valid document file: {exc}") from exc
        if not isinstance(payload, dict) or "document" not in payload:
            raise SchemaViolation("missing document payload")
        session = cls(Document.from_dict(payload["document"]),
                      kerf_override=kerf_override)
        session.command_log = list(payload.get("command_log", []))
        session.seq = (session.command_log[-1]["seq"]
                       if session.command_log else 0)
        return session


def replay(script_path: str) -> tuple:
    """Apply a command script to a fresh document.

    Returns (session, digest).  Deterministic: identical digests across
    runs and platforms; errors in the script propagate.
    """
    try:
        with open(script_path, "r", encoding="utf-8") as fh:
            commands = json.load(fh)
    except OSError as exc:
        raise IoFailure(f"cannot read {script_path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"not a valid command script: {exc}") from exc
    if isinstance(commands, dict):
        commands = commands.get("commands", [])
    session = Session()
    for command in commands:
        event = session.apply_command(command)
        if event["error"] is not None:
            raise MalformedCommand(
                f"script command {command.get('name')!r} failed: "
                f"{event['error']['message']}")
    return session, state_digest(session.doc)
