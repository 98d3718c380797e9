"""Request and response shapes for the HTTP service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

from ..tracebacks import ParsedError


class EnhanceRequest(BaseModel):
    stderr_text: str
    source_path: str | None = None
    source_text: str = ""
    source: Literal["so", "doc"] = "so"
    max_sentences: int = Field(default=4, ge=1)


class ParsedErrorModel(BaseModel):
    kind: str
    description: str
    file: str
    line_number: int
    offending_line: str
    caret_column: int | None
    imports: list[str]

    @classmethod
    def from_parsed(cls, err: ParsedError) -> "ParsedErrorModel":
        return cls(
            kind=err.kind,
            description=err.description,
            file=err.file,
            line_number=err.line_number,
            offending_line=err.offending_line,
            caret_column=err.caret_column,
            imports=list(err.imports),
        )


class EnhanceResponse(BaseModel):
    enhanced: bool
    error: ParsedErrorModel | None = None
    sentences: list[str] = Field(default_factory=list)
    code: str | None = None
    source_url: str | None = None
    query: str | None = None
    selection_reason: str | None = None
    note: str | None = None


class ParseRequest(BaseModel):
    stderr_text: str
    source_path: str | None = None
    source_text: str = ""


class HealthResponse(BaseModel):
    status: str
    version: str
