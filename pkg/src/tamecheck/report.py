"""Full analysis of one deformation: verdicts, implication audit, text and JSON output."""

from __future__ import annotations

import dataclasses
import json
import time
from importlib import resources
from dataclasses import dataclass, field
from typing import Any, Callable

from .conditions import ClosureSettings, check_cond, check_cond2, implied, jacobian_criterion
from .errors import BudgetExceeded, InconsistencyError, ValidationError
from .exprparse import DeformationProblem, VarContext, parse_polynomial, parse_rational
from .germs import check_cond0, check_sing_equal, check_tame, build_singular_loci, discriminant, milnor_set
from .groebner import Budget
from .verdict import FAILS, HOLDS, UNDETERMINED, Verdict, budget_verdict

CHECKS = ("cond0", "cond", "cond2", "jacobian", "tame")

# (premise, conclusion): a binding HOLDS premise forbids a binding FAILS conclusion.
IMPLICATIONS = (
    ("jacobian", "cond"),
    ("cond", "tame"),
    ("tame", "fibre_constancy"),
    ("jacobian", "tame"),
    ("jacobian", "cond2"),
    ("cond2", "cond"),
    ("cond", "cond0"),
    ("cond2", "sing_equal"),
)

NOT_RUN = "not-run"
NOT_COMPUTED = "not-computed"  # fibre constancy itself is never tested
OK = "OK"
VIOLATION = "VIOLATION"

TAME_SCOPE = "set germs at the origin, slice t = 0"


@dataclass(frozen=True)
class AnalysisOptions:
    max_power: int = 6
    max_weight: int = 4
    budget_pairs: int = 200000
    budget_degree: int = 60
    budget_work: int = 3000000
    max_arcs: int = 3000
    sample_arcs: int = 30000
    max_base_points: int = 6
    checks: frozenset = frozenset(CHECKS)
    strict: bool = False

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if f.type == "int" and (not isinstance(value, int) or value <= 0):
                raise ValidationError(f"option {f.name} must be a positive integer, got {value!r}")
        checks = frozenset(self.checks)
        unknown = checks - set(CHECKS)
        if unknown or not checks:
            raise ValidationError(f"unknown or empty check selection: {sorted(unknown)}")
        object.__setattr__(self, "checks", checks)

    @classmethod
    def for_problem(cls, problem: DeformationProblem, **overrides) -> "AnalysisOptions":
        """Defaults, then the problem file's options, then explicit overrides."""
        names = {f.name for f in dataclasses.fields(cls)}
        values = {k: v for k, v in problem.options.items() if k in names}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def budget(self) -> Budget:
        return Budget(max_pairs=self.budget_pairs, max_degree=self.budget_degree, max_work=self.budget_work)

    def closure_settings(self) -> ClosureSettings:
        return ClosureSettings(max_power=self.max_power, max_weight=self.max_weight, max_arcs=self.max_arcs,
                               max_base_points=self.max_base_points, sample_arcs=self.sample_arcs,
                               budget=self.budget())

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["checks"] = sorted(self.checks)
        return d


@dataclass
class Report:
    problem: dict
    loci: dict
    discriminant: dict
    milnor_set: dict
    verdicts: dict[str, Verdict]
    audit: list[dict]
    budgets: dict
    notes: list[str] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "loci": self.loci,
            "discriminant": self.discriminant,
            "milnor_set": self.milnor_set,
            "verdicts": {k: v.to_dict() for k, v in self.verdicts.items()},
            "audit": self.audit,
            "budgets": self.budgets,
            "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(d["problem"], d["loci"], d["discriminant"], d["milnor_set"],
                   {k: Verdict.from_dict(v) for k, v in d["verdicts"].items()},
                   d["audit"], d["budgets"], list(d.get("notes", [])))

    @property
    def violations(self) -> list[dict]:
        return [a for a in self.audit if a["status"] == VIOLATION]


def problem_to_dict(problem: DeformationProblem) -> dict:
    return {
        "name": problem.name,
        "vars": list(problem.vars.spatial_vars),
        "param": problem.vars.param,
        "F": str(problem.F),
        "witness_points": [[str(a) for a in p] for p in problem.witness_points],
        "options": dict(sorted(problem.options.items())),
    }


def problem_from_dict(d: dict) -> DeformationProblem:
    ctx = VarContext(tuple(d["vars"]), d.get("param", "t"))
    F = parse_polynomial(d["F"], ctx)
    points = [tuple(parse_rational(a) for a in p) for p in d.get("witness_points", [])]
    return DeformationProblem(ctx, F, points, dict(d.get("options", {})), d.get("name", ""))


def _status(v: Verdict | None) -> str:
    return NOT_RUN if v is None else v.label


def implication_audit(verdicts: dict[str, Verdict]) -> list[dict]:
    out = []
    for premise, conclusion in IMPLICATIONS:
        p, c = verdicts.get(premise), verdicts.get(conclusion)
        bad = (p is not None and c is not None and p.binding and c.binding
               and p.status == HOLDS and c.status == FAILS)
        out.append({
            "premise": premise,
            "conclusion": conclusion,
            "premise_status": _status(p),
            "conclusion_status": NOT_COMPUTED if conclusion == "fibre_constancy" else _status(c),
            "status": VIOLATION if bad else OK,
        })
    return out


def _tame_fallback(verdicts: dict[str, Verdict]) -> None:
    """An undecided tameness check inherits HOLDS from a stronger criterion."""
    tame = verdicts.get("tame")
    if tame is None or tame.binding:
        return
    for source, reason in (("jacobian", "the Jacobian criterion implies tameness"),
                           ("cond", "the off-origin condition implies tameness")):
        s = verdicts.get(source)
        if s is not None and s.binding and s.status == HOLDS:
            verdicts["tame"] = implied(source, reason, TAME_SCOPE, tame.to_dict())
            return


def analyze(problem: DeformationProblem, opts: AnalysisOptions | None = None) -> Report:
    """Run the selected checks; raises InconsistencyError if the audit finds a violation."""
    opts = opts or AnalysisOptions.for_problem(problem)
    budget = opts.budget()
    settings = opts.closure_settings()
    timing: dict[str, float] = {}
    notes: list[str] = []

    def run(name: str, fn: Callable[[], Any]):
        t0 = time.perf_counter()
        try:
            return fn()
        finally:
            timing[name] = time.perf_counter() - t0

    def finish(v: Verdict) -> Verdict:
        return v.strict() if opts.strict else v

    loci = run("loci", lambda: build_singular_loci(problem))
    wanted = opts.checks
    points = problem.witness_points
    verdicts: dict[str, Verdict] = {}

    if "cond0" in wanted:
        verdicts["cond0"] = finish(run("cond0", lambda: check_cond0(loci, budget=budget)))

    disc_doc: dict = {"status": NOT_RUN}
    milnor_doc: dict = {"status": NOT_RUN}
    if "tame" in wanted:
        try:
            disc = run("discriminant", lambda: discriminant(loci, budget))
            disc_doc = {"status": "computed", **disc.summary()}
            milnor = run("milnor_set", lambda: milnor_set(loci, disc, budget))
            milnor_doc = {"status": "computed", **milnor.summary()}
        except BudgetExceeded as exc:
            stage = "discriminant" if disc_doc["status"] == NOT_RUN else "Milnor set"
            notes.append(f"{stage} not computed: {exc}")
            if disc_doc["status"] == NOT_RUN:
                disc_doc = {"status": UNDETERMINED, "reason": str(exc)}
            milnor_doc = {"status": UNDETERMINED, "reason": str(exc)}
            verdicts["tame"] = budget_verdict(BudgetExceeded(f"{stage}: {exc}"), TAME_SCOPE)
        else:
            verdicts["tame"] = finish(run("tame", lambda: check_tame(loci, milnor, points, budget=budget, disc=disc)))

    if "jacobian" in wanted:
        verdicts["jacobian"] = finish(run("jacobian", lambda: jacobian_criterion(loci, settings)))
    if "cond2" in wanted:
        verdicts["cond2"] = finish(run("cond2", lambda: check_cond2(loci, settings, points,
                                                                      verdicts.get("jacobian"))))
        verdicts["sing_equal"] = finish(run("sing_equal", lambda: check_sing_equal(loci, budget=budget)))
    if "cond" in wanted:
        verdicts["cond"] = finish(run("cond", lambda: check_cond(loci, settings, points, verdicts.get("cond2"))))
    _tame_fallback(verdicts)

    verdicts = dict(sorted(verdicts.items()))
    report = Report(
        problem=problem_to_dict(problem),
        loci=loci.summary(),
        discriminant=disc_doc,
        milnor_set=milnor_doc,
        verdicts=verdicts,
        audit=implication_audit(verdicts),
        budgets=opts.to_dict(),
        notes=notes,
        timing=timing,
    )
    if report.violations:
        bad = ", ".join(f"{a['premise']} => {a['conclusion']}" for a in report.violations)
        raise InconsistencyError(f"implication audit violated: {bad}", report)
    return report


def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def report_schema() -> dict:
    """JSON Schema that every rendered report satisfies."""
    return json.loads(resources.files(__package__).joinpath("report.schema.json").read_text(encoding="utf-8"))


def load_report(text: str) -> Report:
    return Report.from_dict(json.loads(text))


def _polys(gens: list[str]) -> str:
    return "(" + ", ".join(gens) + ")" if gens else "(0)"


def render_text(report: Report) -> str:
    p = report.problem
    lines = [f"problem      {p['name'] or '<unnamed>'}: F = {p['F']}",
             f"variables    {', '.join(p['vars'])}; parameter {p['param']}",
             ""]
    for key, label in (("sing_F0", "Sing F0"), ("sing_F", "Sing F"), ("sing_Ftilde", "Sing F~")):
        lines.append(f"{label:<12} {_polys(report.loci[key])}")
    d = report.discriminant
    if d["status"] == "computed":
        lines.append(f"{'discriminant':<12} {_polys(d['generators'])} in ({', '.join(d['vars'])})")
    else:
        lines.append(f"{'discriminant':<12} {d['status']}")
    m = report.milnor_set
    if m["status"] == "computed":
        lines.append(f"{'Milnor set':<12} {_polys(m['saturated'])}")
    else:
        lines.append(f"{'Milnor set':<12} {m['status']}")
    lines += ["", "verdicts"]
    for name, v in report.verdicts.items():
        lines.append(f"  {name:<11} {v.label:<32} {v.evidence.get('kind', '')}")
    lines += ["", "implication audit"]
    for a in report.audit:
        arrow = f"{a['premise']} => {a['conclusion']}"
        lines.append(f"  {arrow:<28} {a['status']:<10} ({a['premise_status']} => {a['conclusion_status']})")
    for note in report.notes:
        lines.append(f"note: {note}")
    if report.timing:
        lines += ["", "timing"]
        for name, secs in report.timing.items():
            lines.append(f"  {name:<13} {secs:8.3f} s")
    return "\n".join(lines) + "\n"
