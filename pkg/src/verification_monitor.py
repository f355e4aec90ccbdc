"""
Verification Monitoring
Per-check result recording, run summaries and report export
"""

import json
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List

logger = logging.getLogger(__name__)

PASS = 'pass'
FAIL = 'fail'


@dataclass
class Report:
    """Outcome of one command; status is pass iff every recorded check passed"""
    command: str
    status: str
    payload: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> Dict[str, Any]:
        return {'command': self.command, 'status': self.status, 'payload': self.payload}


class VerificationMonitor:
    """Collects check results while a command runs"""

    def __init__(self, command: str):
        self.command = command
        self.check_history: List[Dict[str, Any]] = []
        self.payload: Dict[str, Any] = {}

    def record_check(self, name: str, passed: bool, detail: Any = None):
        """Record a named check with an optional JSON-ready detail"""
        entry = {'name': name, 'passed': bool(passed)}
        if detail is not None:
            entry['detail'] = detail
        self.check_history.append(entry)
        logger.info("Check %s: %s", name, PASS if passed else FAIL)

    def run_check(self, name: str, check: Callable[[], Any]) -> Any:
        """Run a check producing an object with `passed` and `to_dict`, and record it"""
        start_time = time.time()
        result = check()
        logger.debug("Check %s took %.2fs", name, time.time() - start_time)
        self.record_check(name, getattr(result, 'passed', bool(result)),
                          result.to_dict() if hasattr(result, 'to_dict') else None)
        return result

    def get_check_history(self) -> List[Dict[str, Any]]:
        return self.check_history

    def all_passed(self) -> bool:
        return all(entry['passed'] for entry in self.check_history)

    def get_summary(self) -> Dict[str, Any]:
        """Counts of passed and failed checks"""
        failed = [entry['name'] for entry in self.check_history if not entry['passed']]
        return {
            'total_checks': len(self.check_history),
            'passed_checks': len(self.check_history) - len(failed),
            'failed_checks': failed,
        }

    def build_report(self) -> Report:
        payload = dict(self.payload)
        if self.check_history:
            payload['checks'] = self.check_history
            payload['summary'] = self.get_summary()
        return Report(self.command, PASS if self.all_passed() else FAIL, payload)

    def export_report(self, filename: str) -> str:
        """Write the report as canonical JSON and return the file name"""
        with open(filename, 'w', encoding='utf-8') as f:
            json.dump(self.build_report().to_dict(), f, indent=2, sort_keys=True, ensure_ascii=False)
        return filename
