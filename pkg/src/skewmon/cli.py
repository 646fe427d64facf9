"""Command-line front end: run scenario files, emit JSON or text reports.

A scenario file declares one algebra and a list of verification jobs with
expectations.  Exit codes: 0 all jobs pass, 1 some job failed, 2 scenario
validation or I/O error, 3 a resource cap was exceeded.
"""

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from importlib import resources

from . import __version__
from .arith import QQ, poly_to_text, ratfunc_from_json
from .actions import MonoidElement, ScalingAut, ShiftAut, VariableTable
from .errors import ResourceCapError, SkewmonError
from .reports import Report, dump_json
from .skewring import SkewElement, commutator, is_invariant
from .constructors import (
    AlgebraSpec,
    GWASpec,
    build_qshift_algebra,
    build_shift_algebra,
    demazure_elements,
    gt_embedding,
    gwa_embed,
    hecke_membership_check,
    verify_gwa,
    witten_woronowicz_spec,
)
from .analysis import (
    center_candidates,
    fit_loglog_slope,
    gl_relation_set,
    growth_profile,
    monoid_growth,
    standard_identity,
    support_lattice_rank,
    verify_relations,
)
from .randomized import (
    orbit_identity_trials,
    ore_witness_trials,
    repeated_argument_trials,
)


class ScenarioError(SkewmonError):
    """Scenario failed to parse or validate."""


class _Runtime:
    """Everything a job handler may need: the built algebra and the caps."""

    def __init__(self, scenario, cap_dim, cap_group):
        self.cap_dim = cap_dim
        self.cap_group = cap_group
        self.gwa_spec = None
        self.thetas = None
        block = scenario.get("algebra")
        if not isinstance(block, dict) or "kind" not in block:
            raise ScenarioError("scenario needs an algebra block with a kind")
        self.algebra = self._build(block)

    def _build(self, block):
        kind = block["kind"]
        if kind in ("shift_algebra", "qshift_algebra"):
            build = build_shift_algebra if kind == "shift_algebra" else build_qshift_algebra
            group = [_one_line(p) for p in block.get("group", [])] or None
            ctx = build(
                int(block["n"]), int(block["m"]), group_generators=group,
                group_cap=self.cap_group,
            )
            return AlgebraSpec(ctx, {}, [])
        if kind == "gwa":
            self.gwa_spec = self._gwa_spec(block)
            return gwa_embed(self.gwa_spec)
        if kind == "gt":
            return gt_embedding(int(block["n"]))
        if kind == "nilhecke":
            self.thetas = demazure_elements(int(block["n"]))
            ctx = self.thetas[0].context
            gens = {f"theta{i + 1}": th for i, th in enumerate(self.thetas)}
            return AlgebraSpec(ctx, gens, [])
        raise ScenarioError(f"unknown algebra kind {kind!r}")

    def _gwa_spec(self, block):
        if block.get("preset") == "witten-woronowicz":
            return witten_woronowicz_spec()
        try:
            table = VariableTable(block["variables"], (), block.get("params", ()))
            sigma = [self._automorphism(table, s) for s in block["sigma"]]
            a = [ratfunc_from_json(x, table.names) for x in block["a"]]
        except (KeyError, ValueError) as exc:
            raise ScenarioError(f"bad gwa block: {exc}") from exc
        return GWASpec(table, sigma, a)

    def _automorphism(self, table, block):
        nv = table.nvars
        if block["kind"] == "shift":
            offsets = [QQ(Fraction(str(c))) for c in block["offsets"]]
            offsets += [QQ(0)] * (nv - len(offsets))
            return ShiftAut(table, offsets)
        if block["kind"] == "scaling":
            coeffs, exps = [], []
            for m in block["multipliers"]:
                coeffs.append(QQ(Fraction(str(m.get("coeff", "1")))))
                e = [0] * nv
                for name, p in m.get("powers", {}).items():
                    e[table.index(name)] = int(p)
                exps.append(tuple(e))
            while len(coeffs) < nv:
                coeffs.append(QQ(1))
                exps.append((0,) * nv)
            return ScalingAut(table, coeffs, exps)
        raise ScenarioError(f"unknown automorphism kind {block['kind']!r}")

    def element(self, obj):
        ctx = self.algebra.context
        if isinstance(obj, str):
            if obj in self.algebra.generators:
                return self.algebra.generators[obj]
            raise ScenarioError(f"unknown element name {obj!r}")
        return SkewElement.from_json(ctx, obj)


def _one_line(perm):
    # scenario files use 1-indexed one-line notation
    return tuple(int(x) - 1 for x in perm)


# ---------------------------------------------------------------------------
# Job handlers: (runtime, job) -> (Report, values dict)
# ---------------------------------------------------------------------------


def _job_verify_gwa(rt, job):
    if rt.gwa_spec is None:
        raise ScenarioError("verify_gwa needs a gwa algebra block")
    return verify_gwa(rt.gwa_spec), {}


def _job_verify_relations(rt, job):
    rels = job.get("relations", "gl")
    if rels == "gl":
        n = max(int(name[1]) for name in rt.algebra.generators if name.startswith("E"))
        rels = gl_relation_set(n)
    return verify_relations(rt.algebra, rels), {}


def _job_invariance(rt, job):
    report = Report("G-invariance of generators")
    for name, u in sorted(rt.algebra.generators.items()):
        ok = is_invariant(u)
        report.add(f"{name} is G-invariant", "pass" if ok else "fail")
    return report, {}


def _job_support_lattice_rank(rt, job):
    elements = list(rt.algebra.generators.values())
    rank, divisors = support_lattice_rank(elements)
    report = Report("support lattice")
    report.add("computed rank and elementary divisors", "pass")
    return report, {"rank": rank, "divisors": divisors}


def _job_center_candidates(rt, job):
    basis = center_candidates(rt.algebra, int(job["degree_bound"]))
    names = rt.algebra.context.table.names
    texts = []
    for b in basis:
        if b.is_polynomial():
            texts.append(poly_to_text(b.num, names))
        else:
            texts.append(f"({poly_to_text(b.num, names)})/({poly_to_text(b.den, names)})")
    report = Report("center candidates")
    report.add(f"solved invariance system at degree {job['degree_bound']}", "pass")
    return report, {"basis": texts, "dimension": len(texts)}


def _job_orbit_identities(rt, job):
    return orbit_identity_trials(
        rt.algebra.context, int(job["count"]), int(job["seed"])
    ), {}


def _job_ore_witness_random(rt, job):
    return ore_witness_trials(
        rt.algebra.context, int(job["count"]), int(job["seed"])
    ), {}


def _job_standard_identity(rt, job):
    elements = [rt.element(e) for e in job["elements"]]
    value = standard_identity(len(elements), elements)
    report = Report("standard identity")
    report.add(f"evaluated s_{len(elements)}", "pass")
    return report, {"value": value.to_text(), "zero": value.is_zero()}


def _job_standard_identity_repeated(rt, job):
    return repeated_argument_trials(
        rt.algebra.context,
        int(job["count"]),
        int(job["seed"]),
        degree=int(job.get("degree", 3)),
    ), {}


def _job_theta_relations(rt, job):
    if rt.thetas is None:
        raise ScenarioError("theta_relations needs a nilhecke algebra block")
    thetas = rt.thetas
    report = Report("divided-difference relations")
    for i, th in enumerate(thetas, start=1):
        sq = th * th
        report.add(f"theta{i}^2 = 0", "pass" if sq.is_zero() else "fail",
                   residual=None if sq.is_zero() else sq.to_text())
    for i in range(len(thetas) - 1):
        lhs = thetas[i] * thetas[i + 1] * thetas[i]
        rhs = thetas[i + 1] * thetas[i] * thetas[i + 1]
        ok = lhs == rhs
        report.add(f"braid theta{i + 1} theta{i + 2}", "pass" if ok else "fail",
                   residual=None if ok else (lhs - rhs).to_text())
    for i in range(len(thetas)):
        for j in range(i + 2, len(thetas)):
            c = commutator(thetas[i], thetas[j])
            report.add(f"[theta{i + 1}, theta{j + 1}] = 0",
                       "pass" if c.is_zero() else "fail",
                       residual=None if c.is_zero() else c.to_text())
    return report, {}


def _job_hecke_check(rt, job):
    element = rt.element(job["element"])
    vanish = job.get("vanishing_value")
    report = hecke_membership_check(
        element,
        mode=job.get("mode", "degenerate"),
        vanishing_value=QQ(Fraction(str(vanish))) if vanish is not None else None,
    )
    return report, {}


def _job_growth_profile(rt, job):
    frame = [rt.element(e) for e in job["frame"]]
    profile = growth_profile(frame, int(job["k_max"]), dim_cap=rt.cap_dim)
    report = Report("frame growth profile")
    report.add("profile computed", "pass")
    return report, {
        "dims": profile.dims,
        "slope": str(profile.slope),
        "slope_float": float(profile.slope),
    }


def _job_monoid_growth(rt, job):
    ctx = rt.algebra.context
    gens = [MonoidElement(ctx, tuple(v)) for v in job["generators"]]
    sizes = monoid_growth(gens, int(job["k_max"]))
    slope = fit_loglog_slope(sizes)
    report = Report("monoid ball growth")
    report.add("ball sizes computed", "pass")
    return report, {"sizes": sizes, "slope": str(slope), "slope_float": float(slope)}


JOB_HANDLERS = {
    "verify_gwa": _job_verify_gwa,
    "verify_relations": _job_verify_relations,
    "invariance": _job_invariance,
    "support_lattice_rank": _job_support_lattice_rank,
    "center_candidates": _job_center_candidates,
    "orbit_identities": _job_orbit_identities,
    "ore_witness_random": _job_ore_witness_random,
    "standard_identity": _job_standard_identity,
    "standard_identity_repeated": _job_standard_identity_repeated,
    "theta_relations": _job_theta_relations,
    "hecke_check": _job_hecke_check,
    "growth_profile": _job_growth_profile,
    "monoid_growth": _job_monoid_growth,
}


def _apply_expectation(report, values, expect):
    """Fold the job's expectation into its report as extra checks."""
    if expect is None or expect == "pass":
        return
    if not isinstance(expect, dict):
        raise ScenarioError(f"bad expectation {expect!r}")
    for key, wanted in sorted(expect.items()):
        if key == "slope_interval":
            lo, hi = (Fraction(str(x)) for x in wanted)
            got = Fraction(values["slope"])
            ok = lo <= got <= hi
            report.add(
                f"expect slope in [{lo}, {hi}]", "pass" if ok else "fail",
                residual=None if ok else f"slope {got} = {float(got):.4f}",
            )
        elif key in ("rank", "dimension", "zero", "value"):
            got = values.get(key)
            ok = got == wanted
            report.add(f"expect {key} = {wanted!r}", "pass" if ok else "fail",
                       residual=None if ok else f"got {got!r}")
        elif key in ("divisors", "dims", "sizes", "basis"):
            got = values.get(key)
            ok = list(got) == list(wanted)
            report.add(f"expect {key} = {wanted!r}", "pass" if ok else "fail",
                       residual=None if ok else f"got {got!r}")
        else:
            raise ScenarioError(f"unknown expectation key {key!r}")


def run_scenario(scenario, cap_dim=4096, cap_group=None, jobs_parallel=1):
    """Execute a parsed scenario; returns the RunReport dict (no I/O)."""
    if not isinstance(scenario, dict):
        raise ScenarioError("scenario must be a JSON object")
    unknown = [j.get("op") for j in scenario.get("jobs", []) if j.get("op") not in JOB_HANDLERS]
    if unknown:
        raise ScenarioError(f"unknown operations: {unknown}")
    rt = _Runtime(scenario, cap_dim, cap_group)

    def run_one(job):
        t0 = time.perf_counter()
        report, values = JOB_HANDLERS[job["op"]](rt, job)
        _apply_expectation(report, values, job.get("expect", "pass"))
        return {
            "name": job.get("name", job["op"]),
            "op": job["op"],
            "status": "pass" if report.passed else "fail",
            "checks": [c.to_json() for c in report.checks],
            "values": _plain(values),
            "timing_ms": round((time.perf_counter() - t0) * 1000.0, 3),
        }

    t_start = time.perf_counter()
    job_list = scenario.get("jobs", [])
    if jobs_parallel > 1:
        with ThreadPoolExecutor(max_workers=jobs_parallel) as pool:
            results = list(pool.map(run_one, job_list))
    else:
        results = [run_one(job) for job in job_list]
    return {
        "engine": {"name": "skewmon", "version": __version__},
        "title": scenario.get("title", ""),
        "aggregate": "pass" if all(r["status"] == "pass" for r in results) else "fail",
        "jobs": results,
        "timing_ms": round((time.perf_counter() - t_start) * 1000.0, 3),
    }


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def strip_timings(run_report):
    """A deep copy of a run report with every timing field removed."""
    def strip(obj):
        if isinstance(obj, dict):
            return {k: strip(v) for k, v in obj.items() if k != "timing_ms"}
        if isinstance(obj, list):
            return [strip(v) for v in obj]
        return obj

    return strip(run_report)


def builtin_suites():
    """Names of the scenario files shipped with the package."""
    root = resources.files(__package__) / "scenarios"
    return sorted(p.name[: -len(".json")] for p in root.iterdir() if p.name.endswith(".json"))


def load_scenario_text(path_or_name):
    """Read a scenario file from disk, falling back to the shipped suites."""
    try:
        with open(path_or_name, "rb") as fh:
            return fh.read()
    except OSError:
        candidate = resources.files(__package__) / "scenarios" / f"{path_or_name}.json"
        if candidate.is_file():
            return candidate.read_bytes()
        raise


def render_text(run_report):
    lines = [
        f"skewmon {run_report['engine']['version']}  "
        f"scenario {run_report.get('title') or run_report.get('scenario', '')}: "
        f"{run_report['aggregate'].upper()}"
    ]
    for job in run_report["jobs"]:
        lines.append(f"  job {job['name']} [{job['op']}]: {job['status'].upper()}")
        for check in job["checks"]:
            mark = "ok " if check["status"] == "pass" else "FAIL"
            extra = f"  <- {check['residual']}" if check.get("residual") else ""
            lines.append(f"    {mark} {check['name']}{extra}")
    return "\n".join(lines)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="skewmon",
        description="exact verification suites for skew monoid ring constructions",
    )
    parser.add_argument("--version", action="version", version=f"skewmon {__version__}")
    sub = parser.add_subparsers(dest="command")

    run_p = sub.add_parser("run", help="run a scenario file (or a shipped suite name)")
    run_p.add_argument("scenario")
    run_p.add_argument("--jobs", type=int, default=1, help="parallel worker count")
    run_p.add_argument("--format", choices=("json", "text"), default="text")
    run_p.add_argument("--out", help="write the report to this path instead of stdout")
    run_p.add_argument("--cap-dim", type=int, default=4096, help="span dimension cap")
    run_p.add_argument("--cap-group", type=int, default=None, help="group closure cap")
    run_p.add_argument("--no-timings", action="store_true",
                       help="omit timing fields (byte-reproducible output)")

    sub.add_parser("list-suites", help="list the shipped scenario suites")

    args = parser.parse_args(argv)
    if args.command == "list-suites":
        for name in builtin_suites():
            print(name)
        return 0
    if args.command != "run":
        parser.print_help()
        return 2

    try:
        raw = load_scenario_text(args.scenario)
    except OSError as exc:
        print(f"error: cannot read scenario: {exc}", file=sys.stderr)
        return 2
    try:
        scenario = json.loads(raw)
    except json.JSONDecodeError as exc:
        print(f"error: scenario is not valid JSON: {exc}", file=sys.stderr)
        return 2

    try:
        report = run_scenario(
            scenario,
            cap_dim=args.cap_dim,
            cap_group=args.cap_group,
            jobs_parallel=args.jobs,
        )
    except ResourceCapError as exc:
        print(f"error: resource cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (ScenarioError, SkewmonError, KeyError, ValueError, TypeError) as exc:
        print(f"error: invalid scenario: {exc}", file=sys.stderr)
        return 2

    report["scenario"] = args.scenario
    report["scenario_hash"] = hashlib.sha256(raw).hexdigest()
    if args.no_timings:
        report = strip_timings(report)
    payload = dump_json(report) if args.format == "json" else render_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    return 0 if report["aggregate"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
