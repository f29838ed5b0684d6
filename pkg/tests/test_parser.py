
import pytest
from hypothesis import given, strategies as st

from rarelog.parser import (
    Continuation, EventStart, LogReadError, Malformed, Timestamp, iter_events,
    iter_lines, label_event, parse_line, parse_stream, read_events, LogEvent,
)

from conftest import PAPER_LABELS, PAPER_LOG


def test_format_a_typed():
    r = parse_line("20140604 103903.913 Error: ProntoEventServer. PE_Client removed on "
                   "Duration 8453ms Timeout 502ms StackSize 90")
    assert isinstance(r, EventStart)
    ev = r.event
    assert ev.timestamp == Timestamp(year=2014, month=6, day=4, hour=10, minute=39,
                                     second=3, millisecond=913)
    assert ev.message_type == "Error"
    assert ev.content.startswith("ProntoEventServer. PE_Client removed on")
    assert ev.content.endswith("StackSize 90")


def test_format_b_pipe_fields():
    r = parse_line('06/04 142452.865|02488|error | CAlarmFilter |general '
                   '|onXmlRead> xml element "alarms" is ignored')
    ev = r.event
    assert ev.timestamp.year is None
    assert (ev.timestamp.month, ev.timestamp.day) == (6, 4)
    assert str(ev.timestamp) == "06-04 14:24:52.865"
    assert ev.message_type == "error"
    assert ev.content == ' CAlarmFilter |general |onXmlRead> xml element "alarms" is ignored'


def test_format_a_untyped_with_sequence():
    ev = parse_line("20140604 144846.946 04776 A:006 line 5 still in dialing mode. "
                    "Sending error 27 to dial command before ending the session").event
    assert ev.message_type is None
    assert ev.content.startswith("04776 A:006 line 5 still in dialing mode.")


def test_type_with_space_before_colon():
    ev = parse_line("20140604 063402.441 ERROR : dcb_open(dcbB1D1,NULL)=success (#=0)").event
    assert ev.message_type == "ERROR"
    assert ev.content == "dcb_open(dcbB1D1,NULL)=success (#=0)"


def test_hex_prefix_is_not_a_type():
    ev = parse_line("20140604 064238.541 11DE6B80: LineCallSpecificLine(1) return").event
    assert ev.message_type is None
    assert ev.content == "11DE6B80: LineCallSpecificLine(1) return"


def test_sequence_stays_in_content_when_typed():
    ev = parse_line("20140604 144846.946 04776 Info: hello").event
    assert ev.message_type == "Info"
    assert ev.content == "04776 hello"


@pytest.mark.parametrize("line", ["", "   ", "\t\r\n"])
def test_blank_is_malformed(line):
    assert parse_line(line) == Malformed("blank")


def test_continuation_and_bad_timestamps():
    assert parse_line("Duration 8453ms Timeout 502ms") == Continuation("Duration 8453ms Timeout 502ms")
    assert isinstance(parse_line("20141304 103903.913 Error: x"), Malformed)
    # digits glued to the timestamp are not a timestamp
    assert isinstance(parse_line("20140604 103903.9131 x"), Continuation)


def test_fold_continuation():
    lines = ["20140604 103903.913 Error: a", "x", "20140604 103904.000 Info: b"]
    events, stats = parse_stream(lines)
    assert [e.content for e in events] == ["a x", "b"]
    assert [e.source_line for e in events] == [1, 3]
    assert stats.continuations == 1


def test_orphans_dropped():
    events, stats = parse_stream(["x", "20140604 103903.913 Error: a"])
    assert len(events) == 1 and stats.orphans == 1


def test_empty_header_without_continuation_is_malformed():
    events, stats = parse_stream(["20140604 103903.913", "20140604 103904.000 Info: b"])
    assert len(events) == 1 and stats.malformed == 1
    events, _ = parse_stream(["20140604 103903.913", "wrapped text"])
    assert events[0].content == "wrapped text"


def test_paper_messages_fold_to_events():
    events, stats = parse_stream(PAPER_LOG.splitlines())
    assert [(e.message_type, label_event(e).is_error) for e in events] == PAPER_LABELS
    assert stats.lines == stats.events + stats.continuations + stats.malformed + stats.orphans
    assert events[2].content.endswith(r"FileName=.\DialogicDeviceConference.cpp LineNumber=138")
    assert events[5].content == "11DE6B80: LineCallSpecificLine(1) return ADVR_NO_ERROR"


@pytest.mark.parametrize("typ,expected", [
    ("CriticalError", True), ("error", True), ("ERROR", True), ("debug", False),
    ("Warning", False), (None, False),
])
def test_label_uses_type_only(typ, expected):
    ev = LogEvent(Timestamp(6, 4, 0, 0, 0, 0), typ, "No Error; Sending error 27")
    assert label_event(ev).is_error is expected


def test_iter_lines_handles_crlf_and_bad_utf8():
    data = b"a\r\nb\xff\nc"
    assert list(iter_lines([data])) == ["a", "b�", "c"]


lines_st = st.lists(st.sampled_from([
    "20140604 103903.913 Error: a b", "06/04 142452.865|02488|info |x y", "cont line",
    "", "20140604 103903.913", "20141399 000000.000 Bad: z", "café über",
]), max_size=30)


@given(lines_st, st.lists(st.integers(1, 40), min_size=1, max_size=10))
def test_rechunking_invariance(lines, cuts):
    data = "".join(l + "\r\n" for l in lines).encode()
    chunks, pos = [], 0
    for c in cuts * (len(data) // max(1, sum(cuts)) + 1):
        if pos >= len(data):
            break
        chunks.append(data[pos:pos + c])
        pos += c
    a = parse_stream(iter_lines([data]))
    b = parse_stream(iter_lines(chunks))
    assert a == b


@given(lines_st)
def test_every_line_accounted_for(lines):
    events, s = parse_stream(lines)
    assert s.lines == len(lines)
    assert s.events == len(events)
    assert s.lines == s.events + s.continuations + s.malformed + s.orphans


def test_stats_render():
    _, s = parse_stream(["x"])
    assert "orphans: 1\n" in s.render()


def test_missing_file_raises_with_path(tmp_path):
    with pytest.raises(LogReadError) as ei:
        list(read_events([tmp_path / "nope.log"]))
    assert "nope.log" in str(ei.value)


def test_streaming_memory_is_flat():
    import tracemalloc

    def lines(n):
        for i in range(n):
            yield f"20140604 1039{i % 60:02d}.913 Info: message number {i} foo bar"

    tracemalloc.start()
    count = sum(1 for _ in iter_events(lines(200_000)))
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    assert count == 200_000
    assert peak < 1_000_000
