"""Local HTTP/WebSocket service driving one design session.

Endpoints:
  GET  /inventory            -- scrap list with free-area accounting
  GET  /document             -- full document snapshot
  POST /command              -- apply one DesignCommand, returns its Event
  WS   /session              -- snapshot on connect, then ordered Events
  GET  /export/cutlist       -- CSV cut list
  GET  /export/svg?scrap=N   -- per-scrap SVG plan
  GET  /export/overlay?scrap=N -- 1:1 overlay SVG
  GET  /usage                -- material usage report
"""

from __future__ import annotations

import asyncio

from fastapi import FastAPI, Query, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse, Response

from . import cutplan, exports, inventory
from .errors import ScrapCadError
from .session import Session, state_digest


def create_app(session: Session) -> FastAPI:
    app = FastAPI(title="scrapcad", version="0.1.0")
    app.state.session = session
    app.state.lock = asyncio.Lock()
    app.state.subscribers: list = []

    def snapshot_message():
        return {"type": "snapshot", "seq": session.seq,
                "document": session.doc.to_dict(),
                "violations": [v.to_dict()
                               for v in cutplan.detect_violations(session.doc)]}

    async def broadcast(event: dict):
        message = {"type": "event", **event}
        for queue in list(app.state.subscribers):
            await queue.put(message)

    @app.get("/inventory")
    async def get_inventory():
        entries = inventory.query_inventory(session.doc)
        return {"scraps": [{**e["scrap"].to_dict(),
                            "free_area_mm2": e["free_area_mm2"]}
                           for e in entries]}

    @app.get("/document")
    async def get_document():
        return snapshot_message()

    @app.get("/usage")
    async def get_usage():
        return inventory.usage_report(session.doc).to_dict()

    @app.get("/digest")
    async def get_digest():
        return {"seq": session.seq, "digest": state_digest(session.doc)}

    @app.post("/command")
    async def post_command(command: dict):
        async with app.state.lock:
            event = session.apply_command(command)
            if event["error"] is None:
                await broadcast(event)
        return JSONResponse(event)

    @app.get("/export/cutlist")
    async def export_cutlist():
        return Response(exports.export_cutlist(session.doc),
                        media_type="text/csv")

    @app.get("/export/svg")
    async def export_svg(scrap: int = Query(...)):
        try:
            svg = exports.export_svg(session.doc, scrap)
        except ScrapCadError as exc:
            return JSONResponse({"error": str(exc)}, status_code=404)
        return Response(svg, media_type="image/svg+xml")

    @app.get("/export/overlay")
    async def export_overlay(scrap: int = Query(...)):
        try:
            svg = exports.export_overlay(session.doc, scrap)
        except ScrapCadError as exc:
            return JSONResponse({"error": str(exc)}, status_code=404)
        return Response(svg, media_type="image/svg+xml")

    @app.websocket("/session")
    async def session_channel(ws: WebSocket):
        await ws.accept()
        queue: asyncio.Queue = asyncio.Queue()
        app.state.subscribers.append(queue)
        try:
            # late joiners get a full snapshot, then the ordered tail
            await ws.send_json(snapshot_message())
            while True:
                message = await queue.get()
                await ws.send_json(message)
        except WebSocketDisconnect:
            pass
        finally:
            app.state.subscribers.remove(queue)

    return app
