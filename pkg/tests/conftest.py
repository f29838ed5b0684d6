import pytest

# The six messages of the log-structure examples, wrapped as printed.
PAPER_LOG = """\
20140604 103903.913 Error: ProntoEventServer. PE_Client removed on 
Duration 8453ms Timeout 502ms StackSize 90
06/04 142452.865|02488|error | CAlarmFilter |general |onXmlRead> 
xml element "alarms" is ignored
20140604 063402.441 ERROR : dcb_open(dcbB1D1,NULL)=success (#=0) 
InstanceName=TDialogicDevice dcbB1D1 
ClassName=TDialogicConferenceDevice MethodName=Initialize
FileName=.\\DialogicDeviceConference.cpp LineNumber=138
20140604 120353.022 CriticalError: Report: SQL Exception: Query: 
sp_Pronto_AddAgentActivity 
20140604 144846.946 04776 A:006 line 5 still in dialing mode. 
Sending error 27 to dial command before ending the session
20140604 064238.541 11DE6B80: LineCallSpecificLine(1) return 
ADVR_NO_ERROR
06/04 145011.634|01384 | debug |dispatcher |L:000 |LogMetaEventInfo>
E=GCEV_ANSWERED (802h) : gc_ResultInfo()=0h; gcVal=500h, Normal 
completion ccId=6h, GC_DM3CC_LIB ccVal=0h, No Error 
"""

# (message type, isError) per event, in file order
PAPER_LABELS = [
    ("Error", True),
    ("error", True),
    ("ERROR", True),
    ("CriticalError", True),
    (None, False),
    (None, False),
    ("debug", False),
]


@pytest.fixture
def paper_log(tmp_path):
    path = tmp_path / "paper.log"
    path.write_text(PAPER_LOG, encoding="utf-8")
    return path


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


_criteria = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark and (rep.when == "call" or rep.failed):
        _criteria.append((mark.args[0], mark.args[1], rep.passed, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok, secs in sorted(_criteria):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{verdict}] {num}. {title} ({secs:.2f}s)")
