from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    """One failed axiom instance. ``witnesses`` names the arrows involved."""

    axiom: str
    witnesses: tuple
    message: str = ""

    def to_json(self):
        return {"axiom": self.axiom, "witnesses": list(self.witnesses), "message": self.message}


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def add(self, axiom, witnesses, message=""):
        self.violations.append(Violation(axiom, tuple(witnesses), message))

    def warn(self, axiom, witnesses, message=""):
        self.warnings.append(Violation(axiom, tuple(witnesses), message))

    @property
    def ok(self):
        return not self.violations

    def __len__(self):
        return len(self.violations)

    def axioms(self):
        return {v.axiom for v in self.violations}

    def extend(self, other):
        self.violations.extend(other.violations)
        self.warnings.extend(other.warnings)

    def to_json(self):
        return {
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
            "warnings": [v.to_json() for v in self.warnings],
        }
