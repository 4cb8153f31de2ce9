"""HTTP surface: one POST endpoint per command, documents in, reports out.

The request bodies are exactly the file formats (pydantic-validated), the
responses are the structured reports.  Computational mismatches are reported
with pass=false and HTTP 200; malformed or inconsistent input data is HTTP
400 (422 when the schema itself is violated).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel, Field

from . import engine
from .arrangement import ArrangementError, GysinError
from .complexes import ComplexError
from .covers import CoverError
from .documents import (
    ArrangementDoc,
    ComplexDoc,
    DocumentError,
    DoubleComplexDoc,
    GraphDoc,
    SimplicialDoc,
)
from .groups import GroupError
from .simplicial import SimplicialError
from .spectral import FiltrationError

INPUT_ERRORS = (
    ArrangementError,
    ComplexError,
    CoverError,
    DocumentError,
    FiltrationError,
    GroupError,
    GysinError,
    SimplicialError,
    ValueError,
)


class Report(BaseModel):
    command: str
    pass_: bool | None = Field(default=None, alias="pass")
    convention: dict[str, str]
    sections: list[dict]
    seed: int | None = None
    notes: list[str] | None = None

    model_config = {"populate_by_name": True}

    @classmethod
    def from_dict(cls, rep: dict) -> "Report":
        return cls(
            command=rep["command"],
            pass_=rep.get("pass"),
            convention=rep.get("convention", {}),
            sections=rep.get("sections", []),
            seed=rep.get("seed"),
            notes=rep.get("notes"),
        )

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "pass": self.pass_,
            "convention": self.convention,
            "sections": self.sections,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.notes:
            out["notes"] = self.notes
        return out


def _guard(fn, *args, **kwargs) -> Report:
    try:
        return Report.from_dict(fn(*args, **kwargs))
    except INPUT_ERRORS as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


app = FastAPI(
    title="l2mhs",
    description="Exact weight/Hodge spectral sequences, mixed Hodge numbers and "
                "l2-dimensions for normal-crossing divisor complements.",
)


@app.get("/v1/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/v1/weights", response_model=Report, response_model_exclude_none=True)
def weights(doc: ArrangementDoc) -> Report:
    return _guard(engine.run_weights, doc)


@app.post("/v1/hodge", response_model=Report, response_model_exclude_none=True)
def hodge(doc: ArrangementDoc) -> Report:
    return _guard(engine.run_hodge, doc)


@app.post("/v1/euler", response_model=Report, response_model_exclude_none=True)
def euler(doc: ArrangementDoc) -> Report:
    return _guard(engine.run_euler, doc)


@app.post("/v1/graph", response_model=Report, response_model_exclude_none=True)
def graph(doc: ArrangementDoc | GraphDoc) -> Report:
    return _guard(engine.run_graph, doc)


@app.post("/v1/ss", response_model=Report, response_model_exclude_none=True)
def ss(doc: ComplexDoc, pages: int | None = Query(default=None, ge=1, le=16)) -> Report:
    return _guard(engine.run_ss, doc, pages)


@app.post("/v1/froelicher", response_model=Report, response_model_exclude_none=True)
def froelicher_endpoint(doc: DoubleComplexDoc) -> Report:
    return _guard(engine.run_froelicher, doc)


@app.post("/v1/oracle", response_model=Report, response_model_exclude_none=True)
def oracle(doc: SimplicialDoc, subdivide: int = Query(default=1, ge=1, le=2)) -> Report:
    return _guard(engine.run_oracle, doc, subdivide)


@app.post("/v1/check", response_model=Report, response_model_exclude_none=True)
def check(doc: ArrangementDoc) -> Report:
    return _guard(engine.run_check, doc)


@app.post("/v1/selftest", response_model=Report, response_model_exclude_none=True)
def selftest(seed: int = Query(default=0), rounds: int = Query(default=25, ge=1, le=500)) -> Report:
    return _guard(engine.run_selftest, seed, rounds)
