"""Parsing of semi-structured CATI-style server log lines.

Two timestamp dialects are recognized at the start of a line::

    20140604 103903.913 Error: ProntoEventServer. PE_Client removed on ...
    06/04 142452.865|02488|error | CAlarmFilter |general |onXmlRead> ...

Lines that do not start with a timestamp are continuations of the previous
event (wrapped messages) and are folded into its content.
"""

from __future__ import annotations

import codecs
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

__all__ = [
    "Timestamp",
    "LogEvent",
    "LabeledEvent",
    "EventStart",
    "Continuation",
    "Malformed",
    "ParseStats",
    "LogReadError",
    "parse_line",
    "iter_events",
    "parse_stream",
    "label_event",
    "iter_lines",
    "read_events",
]


@dataclass(frozen=True)
class Timestamp:
    month: int
    day: int
    hour: int
    minute: int
    second: int
    millisecond: int
    year: Optional[int] = None

    def __str__(self) -> str:
        date = f"{self.month:02d}-{self.day:02d}"
        if self.year is not None:
            date = f"{self.year:04d}-{date}"
        return (f"{date} {self.hour:02d}:{self.minute:02d}:{self.second:02d}"
                f".{self.millisecond:03d}")


@dataclass(frozen=True)
class LogEvent:
    timestamp: Timestamp
    message_type: Optional[str]
    content: str
    source_line: int = 0


@dataclass(frozen=True)
class LabeledEvent:
    event: LogEvent
    is_error: bool


@dataclass(frozen=True)
class EventStart:
    event: LogEvent


@dataclass(frozen=True)
class Continuation:
    text: str


@dataclass(frozen=True)
class Malformed:
    reason: str


ParseResult = Union[EventStart, Continuation, Malformed]


@dataclass
class ParseStats:
    lines: int = 0
    events: int = 0
    continuations: int = 0
    malformed: int = 0
    orphans: int = 0

    def render(self) -> str:
        return "".join(f"{k}: {v}\n" for k, v in vars(self).items())


class LogReadError(OSError):
    """Raised when a log source cannot be read; carries file and line."""

    def __init__(self, path, line, cause):
        super().__init__(f"{path}:{line}: cannot read log input: {cause}")
        self.path = path
        self.line = line


# YYYYMMDD HHMMSS.ttt
_FORMAT_A = re.compile(
    r"(\d{4})(\d{2})(\d{2}) (\d{2})(\d{2})(\d{2})\.(\d{3})(?=\s|$)")
# MM/DD HHMMSS.ttt|
_FORMAT_B = re.compile(r"(\d{2})/(\d{2}) (\d{2})(\d{2})(\d{2})\.(\d{3})\|")
_SEQUENCE = re.compile(r"\d{5}(?=\s|$)")
# alphabetic token, optionally followed by " :" or ":"
_TYPE_TOKEN = re.compile(r"([^\W\d_]+)(?: ?:)?(?=\s|$)")


def _timestamp(year, month, day, hour, minute, second, ms) -> Optional[Timestamp]:
    ts = Timestamp(month=int(month), day=int(day), hour=int(hour),
                   minute=int(minute), second=int(second),
                   millisecond=int(ms),
                   year=None if year is None else int(year))
    if not (1 <= ts.month <= 12 and 1 <= ts.day <= 31 and ts.hour <= 23
            and ts.minute <= 59 and ts.second <= 59):
        return None
    return ts


def _parse_format_a(m: re.Match, line: str) -> ParseResult:
    ts = _timestamp(*m.groups())
    if ts is None:
        return Malformed("timestamp out of range")
    rest = line[m.end():].lstrip()
    prefix = ""
    seq = _SEQUENCE.match(rest)
    if seq:
        # the sequence number's meaning is unknown; it stays in the content
        prefix = seq.group(0) + " "
        rest = rest[seq.end():].lstrip()
    message_type = None
    typ = _TYPE_TOKEN.match(rest)
    if typ:
        message_type = typ.group(1)
        rest = rest[typ.end():].lstrip()
    content = (prefix + rest).rstrip()
    return EventStart(LogEvent(ts, message_type, content))


def _parse_format_b(m: re.Match, line: str) -> ParseResult:
    ts = _timestamp(None, *m.groups())
    if ts is None:
        return Malformed("timestamp out of range")
    fields = line[m.end():].split("|", 2)
    message_type = None
    if len(fields) >= 2:
        message_type = fields[1].strip() or None
    content = fields[2] if len(fields) == 3 else ""
    return EventStart(LogEvent(ts, message_type, content.rstrip()))


def parse_line(raw: str) -> ParseResult:
    """Classify a single physical line.

    Returns an :class:`EventStart` when the line begins with a recognized
    timestamp, a :class:`Continuation` when it does not, and a
    :class:`Malformed` for blank lines or impossible timestamps.
    """
    line = raw.rstrip("\r\n")
    if not line.strip():
        return Malformed("blank")
    m = _FORMAT_A.match(line)
    if m:
        return _parse_format_a(m, line)
    m = _FORMAT_B.match(line)
    if m:
        return _parse_format_b(m, line)
    return Continuation(line.strip())


def iter_events(lines: Iterable[str], stats: Optional[ParseStats] = None,
                first_line: int = 1) -> Iterator[LogEvent]:
    """Stream events from lines in file order, folding continuations.

    Only the event under construction is held in memory. Events whose
    content is still empty once complete are counted as malformed.
    """
    if stats is None:
        stats = ParseStats()
    pending: Optional[LogEvent] = None
    parts: list = []

    def finish():
        content = " ".join(p for p in parts if p)
        if not content:
            # continuations are never blank, so this is a lone empty header
            stats.malformed += 1
            return None
        stats.events += 1
        return LogEvent(pending.timestamp, pending.message_type, content,
                        pending.source_line)

    for lineno, raw in enumerate(lines, start=first_line):
        stats.lines += 1
        result = parse_line(raw)
        if isinstance(result, EventStart):
            if pending is not None:
                done = finish()
                if done is not None:
                    yield done
            ev = result.event
            pending = LogEvent(ev.timestamp, ev.message_type, ev.content, lineno)
            parts = [ev.content]
        elif isinstance(result, Continuation):
            if pending is None:
                stats.orphans += 1
            else:
                parts.append(result.text)
                stats.continuations += 1
        else:
            stats.malformed += 1
    if pending is not None:
        done = finish()
        if done is not None:
            yield done


def parse_stream(lines: Iterable[str]) -> tuple:
    """Parse a whole line sequence; returns ``(events, stats)``."""
    stats = ParseStats()
    events = list(iter_events(lines, stats))
    return events, stats


def label_event(event: LogEvent) -> LabeledEvent:
    """Step-2 rule: an event is an error iff its type contains "error"."""
    typ = event.message_type
    return LabeledEvent(event, typ is not None and "error" in typ.lower())


def iter_lines(chunks: Iterable[bytes]) -> Iterator[str]:
    """Reassemble text lines from arbitrary byte chunks.

    Decodes UTF-8 incrementally (invalid sequences replaced) and accepts
    LF or CRLF endings. Yielded lines carry no terminator.
    """
    decoder = codecs.getincrementaldecoder("utf-8")(errors="replace")
    buf = ""
    for chunk in chunks:
        buf += decoder.decode(chunk)
        *complete, buf = buf.split("\n")
        for line in complete:
            yield line[:-1] if line.endswith("\r") else line
    buf += decoder.decode(b"", final=True)
    if buf:
        yield buf[:-1] if buf.endswith("\r") else buf


def _file_lines(path) -> Iterator[str]:
    lineno = 0
    try:
        with open(path, "rb") as fh:
            for line in iter_lines(iter(lambda: fh.read(1 << 16), b"")):
                lineno += 1
                yield line
    except OSError as exc:
        raise LogReadError(path, lineno, exc.strerror or exc) from exc


def read_events(paths: Iterable, stats: Optional[ParseStats] = None
                ) -> Iterator[tuple]:
    """Yield ``(path, LabeledEvent)`` for every event of every file, in order."""
    for path in paths:
        for ev in iter_events(_file_lines(path), stats):
            yield path, label_event(ev)
