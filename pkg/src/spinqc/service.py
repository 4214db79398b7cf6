"""HTTP debug service: load sets and programs, run/step/pause, inspect state.

JSON over HTTP plus a server-sent-event stream per session.  One lock per
session serializes its commands; distinct sessions are independent.  The
service delegates all physics to the program executor, so any run through
this interface produces exactly the in-process result.
"""
from __future__ import annotations

import itertools
import json
import threading

from fastapi import FastAPI, HTTPException
from fastapi.responses import HTMLResponse, PlainTextResponse, StreamingResponse
from pydantic import BaseModel

from . import algolib, model, program as prog
from .errors import EmulatorError, ProgramError, ValidationError
from .propagate import CLOCK_MODES, EvolutionConfig

EVENT_POLL_SECONDS = 0.2
EVENT_IDLE_TIMEOUT_SECONDS = 30.0


class SessionEntry:
    def __init__(self, session_id: str, session: prog.Session):
        self.id = session_id
        self.session = session
        self.lock = threading.Lock()
        self.events: list[dict] = []
        self.changed = threading.Condition()

    def emit(self, event_type: str) -> dict:
        sess = self.session
        rec = sess.trace[-1] if sess.trace else None
        event = {
            "type": event_type,
            "pc": sess.pc,
            "clock": sess.clock,
            "status": sess.status,
            "readouts": rec.readouts if rec else prog.readout_all(sess.state),
        }
        if sess.error:
            event["message"] = sess.error
        with self.changed:
            self.events.append(event)
            self.changed.notify_all()
        return event


class ControlRequest(BaseModel):
    action: str


class CreateSessionRequest(BaseModel):
    set: str | dict
    program: str | dict
    library: dict | None = None
    clock: str = "global"
    delta: float | None = None


def _classify_event(sess: prog.Session) -> str:
    if sess.status == prog.PAUSED:
        return "breakpoint"
    if sess.status == prog.FINISHED:
        return "finished"
    if sess.status == prog.ERROR:
        return "error"
    return "step"


def create_app() -> FastAPI:
    app = FastAPI(title="spinqc debug service")
    sessions: dict[str, SessionEntry] = {}
    counter = itertools.count(1)
    registry_lock = threading.Lock()
    builtin_programs = algolib.builtin_library()

    def get_entry(session_id: str) -> SessionEntry:
        entry = sessions.get(session_id)
        if entry is None:
            raise HTTPException(status_code=404, detail=f"no session {session_id!r}")
        return entry

    def handle(session_id: str) -> dict:
        entry = get_entry(session_id)
        sess = entry.session
        return {
            "id": entry.id,
            "status": sess.status,
            "set": sess.iset.name,
            "program": sess.program.name,
            "pc": sess.pc,
            "steps": list(sess.flat),
            "clock": sess.clock,
            "num_qubits": sess.iset.num_qubits,
            "error": sess.error,
        }

    @app.get("/sets")
    def list_sets():
        return {
            "sets": [
                model.set_to_dict(model.builtin_set(sid))
                for sid in model.BUILTIN_SET_IDS
            ]
        }

    @app.get("/programs")
    def list_programs():
        return {
            "programs": [
                prog.program_to_dict(p) for p in builtin_programs.values()
            ]
        }

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest):
        try:
            if isinstance(req.set, str):
                iset = model.builtin_set(req.set)
            else:
                iset = model.set_from_dict(req.set)
            library = dict(builtin_programs)
            for name, pd in (req.library or {}).items():
                library[name] = prog.program_from_dict(pd)
            if isinstance(req.program, str):
                if req.program not in library:
                    raise ValidationError(f"unknown program {req.program!r}")
                qp = library[req.program]
            else:
                qp = prog.program_from_dict(req.program)
            if req.clock not in CLOCK_MODES:
                raise ValidationError(f"clock must be one of {CLOCK_MODES}")
            config = EvolutionConfig(clock=req.clock, delta_max=req.delta)
            session = prog.new_session(iset, qp, library, config)
        except EmulatorError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        session_id = f"s{next(counter)}"
        with registry_lock:
            sessions[session_id] = SessionEntry(session_id, session)
        return handle(session_id)

    @app.get("/sessions")
    def list_sessions():
        return {"sessions": [handle(sid) for sid in list(sessions)]}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return handle(session_id)

    @app.post("/sessions/{session_id}/control")
    def control(session_id: str, req: ControlRequest):
        entry = get_entry(session_id)
        sess = entry.session
        with entry.lock:
            before = len(sess.trace)
            try:
                if req.action == "run":
                    if sess.status == prog.FINISHED:
                        raise ProgramError("session already finished")
                    # drive by single steps so every MI emits an event
                    prog.step(sess)
                    entry.emit(_classify_event(sess))
                    while sess.status not in (prog.PAUSED, prog.FINISHED):
                        prog.step(sess)
                        entry.emit(_classify_event(sess))
                elif req.action == "step":
                    if sess.status == prog.FINISHED:
                        raise ProgramError("session already finished")
                    prog.step(sess)
                    entry.emit(_classify_event(sess))
                elif req.action == "reset":
                    prog.reset(sess)
                    with entry.changed:
                        entry.events.clear()
                        entry.changed.notify_all()
                else:
                    raise HTTPException(
                        status_code=400, detail=f"unknown action {req.action!r}"
                    )
            except ProgramError as exc:
                if sess.status == prog.ERROR:
                    entry.emit("error")
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            except EmulatorError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            new_trace = [r.to_dict() for r in sess.trace[before:]]
        out = handle(session_id)
        out["new_trace"] = new_trace
        return out

    @app.get("/sessions/{session_id}/snapshot")
    def snapshot(session_id: str, detail: str = "readouts"):
        entry = get_entry(session_id)
        with entry.lock:
            sess = entry.session
            doc = {
                "id": entry.id,
                "status": sess.status,
                "pc": sess.pc,
                "clock": sess.clock,
                "readouts": prog.readout_all(sess.state),
            }
            if detail == "amplitudes":
                num_qubits = sess.state.num_qubits
                doc["amplitudes"] = [
                    {
                        "basis": "|" + format(n, f"0{num_qubits}b")[::-1] + ">",
                        "re": float(a.real),
                        "im": float(a.imag),
                    }
                    for n, a in enumerate(sess.state.amplitudes)
                ]
            elif detail != "readouts":
                raise HTTPException(
                    status_code=400,
                    detail="detail must be 'readouts' or 'amplitudes'",
                )
        return doc

    @app.get("/events/{session_id}")
    def events(session_id: str, start: int = 0):
        entry = get_entry(session_id)

        def stream():
            index = start
            idle = 0.0
            while True:
                with entry.changed:
                    pending = entry.events[index:]
                    if not pending:
                        entry.changed.wait(EVENT_POLL_SECONDS)
                        pending = entry.events[index:]
                for event in pending:
                    idle = 0.0
                    index += 1
                    yield f"data: {json.dumps(event)}\n\n"
                    # the stream ends at any pause point; clients reconnect
                    # with ?start=<index> after resuming
                    if event["type"] in ("finished", "error", "breakpoint"):
                        return
                if not pending:
                    idle += EVENT_POLL_SECONDS
                    if idle >= EVENT_IDLE_TIMEOUT_SECONDS:
                        return

        return StreamingResponse(stream(), media_type="text/event-stream")

    @app.get("/", response_class=HTMLResponse, include_in_schema=False)
    def index():
        return _ui_asset("index.html") or (
            "<html><body><h1>spinqc debug service</h1>"
            "<p>No bundled UI; the JSON API lives under /sets, /programs, "
            "/sessions.</p></body></html>"
        )

    @app.get("/ui/app.js", include_in_schema=False)
    def ui_bundle():
        bundle = _ui_asset("app.js")
        if bundle is None:
            raise HTTPException(status_code=404, detail="frontend not built")
        return PlainTextResponse(bundle, media_type="text/javascript")

    return app


def _ui_asset(name: str) -> str | None:
    from importlib import resources

    try:
        ref = resources.files("spinqc").joinpath("data", "ui", name)
        return ref.read_text(encoding="utf-8")
    except (FileNotFoundError, ModuleNotFoundError):
        return None


def serve(host: str = "127.0.0.1", port: int = 8750) -> None:
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port, log_level="warning")
