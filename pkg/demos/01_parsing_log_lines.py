"""Parsing and labeling heterogeneous log lines.

Server logs mix two timestamp dialects, wrap long messages over several
physical lines, and do not always carry a message type. This script parses
a handful of such lines and shows the error label each event receives.
"""

from rarelog.parser import label_event, parse_stream
from rarelog.tokens import tokenize

raw = """\
20140604 103903.913 Error: ProntoEventServer. PE_Client removed on
Duration 8453ms Timeout 502ms StackSize 90
06/04 142452.865|02488|error | CAlarmFilter |general |onXmlRead>
xml element "alarms" is ignored
20140604 144846.946 04776 A:006 line 5 still in dialing mode.
Sending error 27 to dial command before ending the session
06/04 145011.634|01384 | debug |dispatcher |L:000 |LogMetaEventInfo>
E=GCEV_ANSWERED (802h) : gc_ResultInfo()=0h; gcVal=500h, No Error
"""

events, stats = parse_stream(raw.splitlines())
print(stats.render())

# The label looks only at the message type. An untyped event that mentions
# "error" in its text is labeled non-error, and so is a debug line that
# ends in "No Error".
for ev in events:
    labeled = label_event(ev)
    print(f"line {ev.source_line:2d}  {str(ev.timestamp):23s}  type={ev.message_type!s:8s}"
          f"  isError={labeled.is_error}")
    print("          tokens:", sorted(tokenize(ev.content)))
