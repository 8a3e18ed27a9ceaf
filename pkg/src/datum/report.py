from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    universe: int
    counterexamples: list[str] = field(default_factory=list)
    skipped: bool = False
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "universe": self.universe,
            "passed": self.passed,
            "counterexamples": list(self.counterexamples),
        }
        if self.skipped:
            d["skipped"] = True
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class VerificationReport:
    """Outcome of an exhaustive check; passes iff no check has counterexamples."""

    subject: str
    checks: list[Check] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed_checks(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        merged = VerificationReport(self.subject, list(self.checks), dict(self.details))
        merged.checks.extend(other.checks)
        merged.details.update(other.details)
        return merged

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            **({"details": self.details} if self.details else {}),
        }

    def summary(self, limit: int = 3) -> str:
        lines = [f"{self.subject}: {'passed' if self.passed else 'FAILED'}"]
        for c in self.checks:
            if c.skipped:
                status = "skipped"
            else:
                status = "ok" if c.passed else f"{len(c.counterexamples)} counterexample(s)"
            line = f"  {c.name} [{c.universe}]: {status}"
            if c.note:
                line += f" ({c.note})"
            lines.append(line)
            for ce in c.counterexamples[:limit]:
                lines.append(f"    - {ce}")
            if len(c.counterexamples) > limit:
                lines.append(f"    - ... {len(c.counterexamples) - limit} more")
        return "\n".join(lines)
