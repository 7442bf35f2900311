"""Check records shared by validation and the verification suites."""

from dataclasses import dataclass, field

WITNESS_CAP = 25


@dataclass
class Check:
    """One family of checks: how many instances ran and which ones failed."""

    id: str
    anchor: str
    checked: int = 0
    failed: int = 0
    skipped: int = 0
    witnesses: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def ok(self, n=1):
        self.checked += n

    def skip(self, n=1):
        self.skipped += n

    def fail(self, witness):
        self.checked += 1
        self.failed += 1
        if len(self.witnesses) < WITNESS_CAP:
            self.witnesses.append(witness)

    def expect(self, condition, witness):
        if condition:
            self.ok()
        else:
            self.fail(witness)
        return condition

    @property
    def status(self):
        if self.failed:
            return "fail"
        if self.checked == 0:
            return "skipped"
        return "pass"

    def to_dict(self):
        return {
            "id": self.id,
            "anchor": self.anchor,
            "status": self.status,
            "checked": self.checked,
            "failed": self.failed,
            "skipped": self.skipped,
            "witness": [_plain(w) for w in self.witnesses],
            "notes": _plain(self.notes),
        }


class Report:
    def __init__(self, title=""):
        self.title = title
        self.checks = []

    def check(self, id, anchor):
        c = Check(id, anchor)
        self.checks.append(c)
        return c

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    def get(self, id):
        for c in self.checks:
            if c.id == id:
                return c
        raise KeyError(id)

    @property
    def violations(self):
        return [(c.id, w) for c in self.checks for w in c.witnesses]

    @property
    def failures(self):
        return [c for c in self.checks if c.status == "fail"]

    @property
    def ok(self):
        return not self.failures

    def summary(self):
        lines = []
        for c in self.checks:
            lines.append(
                "{:<8} {:<40} checked={} failed={} skipped={}".format(
                    c.status, c.id, c.checked, c.failed, c.skipped
                )
            )
        return "\n".join(lines)

    def __repr__(self):
        return "Report({!r}, {} checks, {} failing)".format(
            self.title, len(self.checks), len(self.failures)
        )


def _plain(value):
    """Turn witness data into JSON-friendly values, paths become id tokens."""
    if hasattr(value, "id") and hasattr(value, "degree"):
        return value.id
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted((_plain(v) for v in value), key=str)
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return str(value)
