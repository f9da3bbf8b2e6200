"""Verdicts with symbolic witnesses, shared by the pencil checks and the
certificate layer.  A verdict is never a bare boolean: failures carry the
residual object that refutes the claim."""

from __future__ import annotations

from dataclasses import dataclass, field


def _render_witness(witness) -> str:
    if witness is None:
        return ""
    render = getattr(witness, "render", None)
    if callable(render):
        return render()
    return str(witness)


@dataclass(frozen=True)
class Verdict:
    label: str
    passed: bool
    witness: object = None

    def render(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        line = f"{mark}  {self.label}"
        if not self.passed and self.witness is not None:
            line += f"  [residual: {_render_witness(self.witness)}]"
        return line


@dataclass
class Report:
    title: str
    verdicts: list = field(default_factory=list)

    def add(self, label: str, passed: bool, witness=None) -> Verdict:
        v = Verdict(label, passed, witness)
        self.verdicts.append(v)
        return v

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def render(self) -> str:
        lines = [f"== {self.title} =="]
        lines.extend(v.render() for v in self.verdicts)
        return "\n".join(lines)
