"""Report containers shared by the certifiers and the search."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Step:
    """One link of a replayable chain: an equation or fact and the rule that produced it."""

    statement: str
    rule: str

    def to_text(self) -> str:
        return f"{self.statement}    [{self.rule}]"


@dataclass(frozen=True)
class Verdict:
    kind: str  # "unsat", "family" or "inconclusive"
    description: str = ""

    def __post_init__(self):
        if self.kind not in ("unsat", "family", "inconclusive"):
            raise ValueError(f"unknown verdict kind {self.kind!r}")

    def to_text(self) -> str:
        return f"{self.kind}({self.description})" if self.description else self.kind


UNSAT = Verdict("unsat")


@dataclass
class CertificateReport:
    case: str
    equations: list[tuple[str, str]] = field(default_factory=list)
    facts: list[str] = field(default_factory=list)
    verdict: Verdict = field(default_factory=lambda: Verdict("inconclusive"))
    notes: list[str] = field(default_factory=list)
    steps: list[Step] = field(default_factory=list)
    checks: list[tuple[str, bool]] = field(default_factory=list)
    branches: list["CertificateReport"] = field(default_factory=list)

    # -- building
    def eq(self, label: str, text) -> None:
        self.equations.append((label, str(text)))

    def step(self, statement, rule: str) -> None:
        self.steps.append(Step(str(statement), rule))

    def check(self, label: str, ok: bool) -> bool:
        self.checks.append((label, bool(ok)))
        return bool(ok)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def equation(self, label: str) -> str:
        for k, v in self.equations:
            if k == label:
                return v
        raise KeyError(label)

    @property
    def all_checks_pass(self) -> bool:
        return all(ok for _, ok in self.checks) and all(b.all_checks_pass for b in self.branches)

    def to_text(self, indent: str = "") -> str:
        out = [f"{indent}case: {self.case}"]
        for label, text in self.equations:
            out.append(f"{indent}eq {label}: {text}")
        for f in self.facts:
            out.append(f"{indent}fact: {f}")
        for label, ok in self.checks:
            out.append(f"{indent}check {label}: {'ok' if ok else 'FAILED'}")
        for s in self.steps:
            out.append(f"{indent}step: {s.to_text()}")
        for b in self.branches:
            out.append(f"{indent}branch:")
            out.append(b.to_text(indent + "  "))
        for n in self.notes:
            out.append(f"{indent}note: {n}")
        out.append(f"{indent}verdict: {self.verdict.to_text()}")
        return "\n".join(out)


@dataclass
class SearchReport:
    nmin: int
    nmax: int
    mode: str
    node_counts: dict[int, int]
    solutions: list[tuple[int, ...]]
    wall_time: float = 0.0

    def to_text(self, with_time: bool = False) -> str:
        """Deterministic rendering; wall time is left out unless asked for."""
        out = [f"search threetwo mode={self.mode} N={self.nmin}..{self.nmax}"]
        for n in sorted(self.node_counts):
            out.append(f"N={n} nodes={self.node_counts[n]}")
        for sol in self.solutions:
            n, p, d, e, g, m, f, h, l, r = sol
            out.append(f"solution N={n} p={p} d={d} e={e} g={g} m={m} f={f} h={h} l={l} r={r}")
        out.append(f"{len(self.solutions)} solutions")
        if with_time:
            out.append(f"wall time {self.wall_time:.1f}s")
        return "\n".join(out)
