"""Batch dispatch of instructions with retry, backoff and resume.

Exchanges are appended to a JSONL store as they complete, so an
interrupted run can resume: ids whose latest stored status is ok are
skipped, failed ones are retried. The effective store content is the
latest record per instruction id.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

from .transport import (
    AuthenticationError,
    ChatTransport,
    GenerationConfig,
    TransportError,
    build_messages,
)

logger = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_ERROR = "error"
STATUS_TRUNCATED = "truncated"


@dataclass(frozen=True)
class ChatExchange:
    instruction_id: str
    model_id: str
    request: dict
    response_text: str
    status: str
    started_at: float
    finished_at: float
    attempt_count: int
    error: str | None = None

    def __post_init__(self) -> None:
        if (self.response_text == "") != (self.status == STATUS_ERROR):
            raise ValueError("response_text must be empty iff status is error")

    def to_dict(self) -> dict:
        return {
            "instruction_id": self.instruction_id,
            "model_id": self.model_id,
            "request": self.request,
            "response_text": self.response_text,
            "status": self.status,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "attempt_count": self.attempt_count,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, record: dict) -> "ChatExchange":
        return cls(**record)


class ExchangeStore:
    """Append-only JSONL store collapsing to the latest record per id."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def load(self) -> dict[str, ChatExchange]:
        exchanges: dict[str, ChatExchange] = {}
        if not self.path.exists():
            return exchanges
        with open(self.path, encoding="utf-8") as fp:
            for line in fp:
                line = line.strip()
                if line:
                    exchange = ChatExchange.from_dict(json.loads(line))
                    exchanges[exchange.instruction_id] = exchange
        return exchanges

    def append(self, exchange: ChatExchange) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fp:
            fp.write(json.dumps(exchange.to_dict(), ensure_ascii=False, sort_keys=True))
            fp.write("\n")


@dataclass
class RetryPolicy:
    max_attempts: int = 3
    initial_backoff: float = 1.0
    backoff_factor: float = 2.0
    sleep: object = field(default=time.sleep, repr=False)
    clock: object = field(default=time.time, repr=False)


def dispatch(
    instructions: list[tuple[str, str]],
    config: GenerationConfig,
    transport: ChatTransport,
    store: ExchangeStore,
    retry: RetryPolicy | None = None,
) -> list[ChatExchange]:
    """Send (instruction_id, text) pairs through the transport.

    One exchange per instruction; completed ids in the store are skipped.
    Retryable failures back off exponentially up to the attempt cap, then
    the exchange is recorded with status=error. Authentication failures
    abort the run.
    """
    if not instructions:
        raise ValueError("instructions must be non-empty")
    retry = retry or RetryPolicy()
    done = {
        iid: ex for iid, ex in store.load().items() if ex.status != STATUS_ERROR
    }

    results: dict[str, ChatExchange] = dict(done)
    for instruction_id, text in instructions:
        if instruction_id in done:
            continue
        messages = build_messages(text, config)
        request = {"messages": messages, "temperature": config.temperature,
                   "max_tokens": config.max_tokens, "model": config.model_id}
        started = float(retry.clock())  # type: ignore[operator]
        attempt = 0
        error: str | None = None
        result = None
        while attempt < retry.max_attempts:
            attempt += 1
            try:
                result = transport.complete(instruction_id, messages, config)
                break
            except AuthenticationError:
                raise
            except TransportError as err:
                error = str(err)
                logger.warning(
                    "attempt %d/%d failed for %s: %s",
                    attempt, retry.max_attempts, instruction_id, err,
                )
                if attempt < retry.max_attempts:
                    backoff = retry.initial_backoff * retry.backoff_factor ** (attempt - 1)
                    retry.sleep(backoff)  # type: ignore[operator]

        if result is not None and result.text:
            status = STATUS_TRUNCATED if result.truncated else STATUS_OK
            exchange = ChatExchange(
                instruction_id=instruction_id,
                model_id=config.model_id,
                request=request,
                response_text=result.text,
                status=status,
                started_at=started,
                finished_at=float(retry.clock()),  # type: ignore[operator]
                attempt_count=attempt,
                error=None,
            )
        else:
            if result is not None:
                error = "empty response text"
            exchange = ChatExchange(
                instruction_id=instruction_id,
                model_id=config.model_id,
                request=request,
                response_text="",
                status=STATUS_ERROR,
                started_at=started,
                finished_at=float(retry.clock()),  # type: ignore[operator]
                attempt_count=attempt,
                error=error,
            )
        store.append(exchange)
        results[instruction_id] = exchange

    return [results[iid] for iid, _ in sorted(instructions, key=lambda p: p[0])]
