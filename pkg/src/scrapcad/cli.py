"""Headless command-line interface.

Kerf precedence: --kerf flag > SCRAPCAD_KERF_MM environment variable >
document settings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import cutplan, exports, inventory
from .errors import ScrapCadError
from .session import ENV_KERF, Session, replay, state_digest


def _effective_kerf(flag_value):
    if flag_value is not None:
        return float(flag_value)
    env = os.environ.get(ENV_KERF)
    return float(env) if env else None


def _load(path: str, kerf_flag=None) -> Session:
    return Session.load(path, kerf_override=_effective_kerf(kerf_flag))


def cmd_serve(args) -> int:
    import uvicorn
    from .service import create_app
    if args.doc and os.path.exists(args.doc):
        session = _load(args.doc, args.kerf)
    else:
        session = Session(kerf_override=_effective_kerf(args.kerf))
    app = create_app(session)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_validate(args) -> int:
    session = _load(args.file, args.kerf)
    violations = cutplan.detect_violations(session.doc)
    if not violations:
        print("OK: no violations")
        return 0
    print(f"{'kind':<16} {'parts':<12} {'scrap':<6} detail")
    for v in violations:
        parts = ",".join(str(p) for p in v.part_ids)
        scrap = v.scrap_id if v.scrap_id is not None else "-"
        print(f"{v.kind:<16} {parts:<12} {scrap!s:<6} {v.detail}")
    return 1


def cmd_replay(args) -> int:
    session, digest = replay(args.script)
    print(f"applied {len(session.command_log)} commands")
    if args.digest:
        print(digest)
    return 0


def cmd_export(args) -> int:
    session = _load(args.file, args.kerf)
    doc = session.doc
    did = False
    if args.cutlist:
        with open(args.cutlist, "w", encoding="utf-8") as fh:
            fh.write(exports.export_cutlist(doc))
        print(f"wrote {args.cutlist}")
        did = True
    for flag, fn, suffix in ((args.svg, exports.export_svg, "plan"),
                             (args.overlay, exports.export_overlay, "overlay")):
        if not flag:
            continue
        os.makedirs(flag, exist_ok=True)
        for scrap_id in sorted(doc.scraps):
            out = os.path.join(flag, f"scrap-{scrap_id}-{suffix}.svg")
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(fn(doc, scrap_id))
            print(f"wrote {out}")
        did = True
    if not did:
        print("nothing to export: pass --cutlist, --svg, or --overlay",
              file=sys.stderr)
        return 2
    return 0


def cmd_usage(args) -> int:
    session = _load(args.file, args.kerf)
    report = inventory.usage_report(session.doc)
    for scrap_id in sorted(report.per_scrap):
        print(f"scrap #{scrap_id}: {report.per_scrap[scrap_id] * 100:.2f}%")
    for group, frac in sorted(report.totals.items()):
        print(f"{group}: {frac * 100:.2f}%")
    print(f"overall: {report.overall * 100:.2f}%")
    return 0


def cmd_digest(args) -> int:
    session = _load(args.file, args.kerf)
    print(state_digest(session.doc))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scrapcad",
        description="scrap-wood assembly design engine (headless)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the local design service")
    p.add_argument("--port", type=int, default=8400)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--doc", default=None, help="document file to open")
    p.add_argument("--kerf", type=float, default=None)
    p.set_defaults(fn=cmd_serve)

    p = sub.add_parser("validate", help="exit 0 iff the document has no violations")
    p.add_argument("file")
    p.add_argument("--kerf", type=float, default=None)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("replay", help="apply a command script to a fresh document")
    p.add_argument("script")
    p.add_argument("--digest", action="store_true",
                   help="print the deterministic state digest")
    p.set_defaults(fn=cmd_replay)

    p = sub.add_parser("export", help="write fabrication exports")
    p.add_argument("file")
    p.add_argument("--cutlist", metavar="OUT.csv")
    p.add_argument("--svg", metavar="OUTDIR")
    p.add_argument("--overlay", metavar="OUTDIR")
    p.add_argument("--kerf", type=float, default=None)
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("usage", help="print the material usage report")
    p.add_argument("file")
    p.add_argument("--kerf", type=float, default=None)
    p.set_defaults(fn=cmd_usage)

    p = sub.add_parser("digest", help="print the state digest of a document")
    p.add_argument("file")
    p.add_argument("--kerf", type=float, default=None)
    p.set_defaults(fn=cmd_digest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ScrapCadError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
