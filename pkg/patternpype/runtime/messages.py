"""
Messages exchanged between workers.

REQUEST, REJECT and GIVE are basic messages: they are counted by the
termination detection and carry the sender's clock. CONTROL_DOWN, CONTROL_UP
and FINISH are control messages and are not counted.
"""

from enum import StrEnum
from typing import Self

from pydantic import BaseModel, ConfigDict, model_validator

from patternpype.dtd.wave import WaveCommand, WaveReport
from patternpype.mining.node import WireNode


class MessageKind(StrEnum):
    REQUEST = "request"
    REJECT = "reject"
    GIVE = "give"
    CONTROL_UP = "control-up"
    CONTROL_DOWN = "control-down"
    FINISH = "finish"

    @property
    def is_basic(self) -> bool:
        return self in _BASIC_KINDS


_BASIC_KINDS = frozenset({MessageKind.REQUEST, MessageKind.REJECT, MessageKind.GIVE})


class Message(BaseModel):
    """
    Attributes:
        kind (MessageKind): Message type
        source (int): Sending worker
        dest (int): Receiving worker
        timestamp (int): Sender clock, meaningful for basic messages
        request_id (int | None): Id of a REQUEST, unique per sender
        reply_to (int | None): Request answered by a REJECT or GIVE; ``None``
            for a GIVE pushed along a lifeline without a pending request
        lifeline (bool): Whether a REQUEST travels along a lifeline
        nodes (tuple[WireNode, ...]): Work carried by a GIVE
        command (WaveCommand | None): CONTROL_DOWN payload
        report (WaveReport | None): CONTROL_UP payload
    """

    model_config = ConfigDict(frozen=True)

    kind: MessageKind
    source: int
    dest: int
    timestamp: int = 0
    request_id: int | None = None
    reply_to: int | None = None
    lifeline: bool = False
    nodes: tuple[WireNode, ...] = ()
    command: WaveCommand | None = None
    report: WaveReport | None = None

    @model_validator(mode="after")
    def validate_payload(self) -> Self:
        if self.source == self.dest:
            raise ValueError(f"Worker {self.source} cannot message itself")
        if self.kind == MessageKind.GIVE and not self.nodes:
            raise ValueError("GIVE must carry at least one node")
        if self.kind == MessageKind.REQUEST and self.request_id is None:
            raise ValueError("REQUEST needs a request id")
        if self.kind == MessageKind.REJECT and self.reply_to is None:
            raise ValueError("REJECT must answer a request")
        if self.kind == MessageKind.CONTROL_DOWN and self.command is None:
            raise ValueError("CONTROL_DOWN needs a wave command")
        if self.kind == MessageKind.CONTROL_UP and self.report is None:
            raise ValueError("CONTROL_UP needs a wave report")
        return self

    @property
    def is_basic(self) -> bool:
        return self.kind.is_basic

    def describe(self) -> str:
        """One-line rendering used by traces and debug logs."""
        text = f"{self.kind} {self.source}->{self.dest}"
        if self.is_basic:
            text += f" ts={self.timestamp}"
        if self.request_id is not None:
            text += f" id={self.request_id}"
        if self.reply_to is not None:
            text += f" re={self.reply_to}"
        if self.lifeline:
            text += " lifeline"
        if self.nodes:
            text += f" nodes={len(self.nodes)}"
        if self.command is not None:
            text += f" wave={self.command.wave_id} lambda={self.command.lambda_}"
        if self.report is not None:
            text += f" wave={self.report.wave_id} balance={self.report.balance}"
        return text
