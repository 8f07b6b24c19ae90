import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _accept import LEDGER  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not LEDGER:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(LEDGER):
        ok, detail = LEDGER[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'} | {detail}")
