"""Command line driver and the end-to-end verification pipeline.

Subcommands::

    branchcurve verify --surface FILE --primes N --seed S [--stretch] [--json OUT]
    branchcurve foci --family FILE --at U,V [--surface FILE]
    branchcurve invariants --d D [--g G --ksq K --chi C --r R --h H --hs HS --q Q --pg PG]
    branchcurve profile --surface FILE --seed S --point Y0,Y1,Y2|cusp[:i]|node[:i]

Reports are JSON with sorted keys, so identical inputs give identical bytes.
Exit codes: 0 pass, 2 violation candidate, 3 genericity retries exhausted,
4 input error, 5 resource abort.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import invariants as inv_mod
from .errors import (
    BranchCurveError,
    CenterOnSurface,
    InconsistentInvariants,
    LineInSurface,
    NonReducedBranch,
    NotFilling,
    PositiveDimensionalIntersection,
    RetryBudgetExhausted,
    ShearBudgetExhausted,
)
from .fields import PrimeField, sample_primes
from .parsing import load_family, load_surface
from .projection import branch_curve, irreducibility_evidence, line_profile, ramification_smooth_check
from .singclass import CUSP, NODE, census
from .surface import SurfaceModel, check_smoothness, random_frame

SCHEMA = 1

PASS = "PASS"
RETRY_EXHAUSTED = "GENERICITY_RETRY_EXHAUSTED"
VIOLATION = "VIOLATION_CANDIDATE"
ERROR = "ERROR"

EXIT_CODES = {PASS: 0, VIOLATION: 2, RETRY_EXHAUSTED: 3, ERROR: 4}
EXIT_RESOURCE = 5
STRETCH_DEGREE = 5


@dataclass
class RunConfig:
    mode: str = "verify"
    surface: str | None = None
    primes: int = 2
    seed: int = 0
    retry_budget: int = 8
    output: str | None = None
    stretch: bool = False
    timings: bool = False
    time_limit: float | None = None
    family: str | None = None
    at: tuple | None = None
    point: str | None = None
    prime_index: int = 0
    inv: dict = field(default_factory=dict)


class ResourceAbort(Exception):
    pass


class _Clock:
    def __init__(self, limit):
        self.start = time.monotonic()
        self.limit = limit
        self.marks = {}

    def check(self):
        if self.limit is not None and time.monotonic() - self.start > self.limit:
            raise ResourceAbort(f"time limit of {self.limit} s exceeded")

    def mark(self, key, t0):
        self.marks[key] = round(self.marks.get(key, 0.0) + time.monotonic() - t0, 3)


def dumps(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


# -- verify ---------------------------------------------------------------------------


def _expected_profile(kind, d):
    if kind == CUSP:
        return (3,) + (1,) * (d - 3)
    if kind == NODE:
        return (2, 2) + (1,) * (d - 4)
    return None


def _surface_echo(S: SurfaceModel):
    return {
        "polynomial": S.f.to_json(),
        "text": str(S.f),
        "d": S.d,
        "smooth_claimed": S.smooth_claimed,
        "invariants": {"g": S.g, "Ksq": S.Ksq, "chi": S.chi, "deg_double_curve": S.deg_double_curve},
    }


def accepted_frame(S, F, seed, budget, clock=None):
    """Rejection-sample frames until the branch curve has only nodes and cusps.

    Returns ``(frame, branch, census, attempts)``; ``frame`` is ``None`` when
    the budget ran out.  ``attempts`` records every rejection.
    """
    from .invariants import branch_degree

    expected_deg = branch_degree(S.invariants())
    attempts = []
    for attempt in range(budget):
        if clock:
            clock.check()
        record = {"attempt": attempt}
        try:
            frame = random_frame(S, seed, F, attempt=attempt)
            t0 = time.monotonic()
            bc = branch_curve(S, frame, seed=seed + attempt)
            if clock:
                clock.mark("branch_curve", t0)
            if bc.degB != expected_deg:
                record["reason"] = f"branch curve has degree {bc.degB}, expected {expected_deg}"
                attempts.append(record)
                continue
            if clock:
                clock.check()
            t0 = time.monotonic()
            cen = census(bc.B, seed=seed + attempt)
            if clock:
                clock.mark("census", t0)
        except (NonReducedBranch, CenterOnSurface, PositiveDimensionalIntersection, ShearBudgetExhausted, RetryBudgetExhausted) as exc:
            record["reason"] = f"{type(exc).__name__}: {exc}"
            attempts.append(record)
            continue
        if cen.other_count:
            record["reason"] = "singularities other than nodes and cusps"
            record["other"] = [pt.descriptor for pt in cen.points if pt.classification not in (NODE, CUSP)]
            attempts.append(record)
            continue
        return frame, bc, cen, attempts
    return None, None, None, attempts


def verify_prime(S: SurfaceModel, p: int, seed: int, budget: int = 8, clock=None) -> dict:
    """Full pipeline over one prime; returns a JSON-ready dict with a ``status`` key."""
    clock = clock or _Clock(None)
    F = PrimeField(p)
    out = {"prime": p}
    if S.smooth_claimed:
        t0 = time.monotonic()
        screen = check_smoothness(S, F, seed=seed)
        clock.mark("smoothness", t0)
        out["smoothness"] = screen.to_json()
        if not screen.smooth:
            out["status"] = ERROR
            out["reason"] = "smoothness screen found singular points"
            return out
    frame, bc, cen, attempts = accepted_frame(S, F, seed, budget, clock)
    out["rejected_frames"] = attempts
    if frame is None:
        saw_other = any("other" in a for a in attempts)
        out["status"] = VIOLATION if saw_other else RETRY_EXHAUSTED
        out["reason"] = f"no acceptable frame in {budget} attempts"
        return out
    out["frame"] = frame.to_json()
    out["degB"] = bc.degB
    out["B"] = bc.B.to_json()
    if bc.double_image is not None:
        out["double_curve_image"] = bc.double_image.to_json()
    clock.check()
    t0 = time.monotonic()
    orbits = []
    prop33 = prop34 = True
    for pt in cen.points:
        prof = line_profile(S, frame, pt.coords, pt.field, bc.f_moved)
        ok33 = pt.multiplicity == prof.b
        ok34 = prof.multiplicities == _expected_profile(pt.classification, S.d)
        prop33 &= ok33
        prop34 &= ok34
        entry = pt.to_json()
        entry["profile"] = prof.to_json()
        entry["multiplicity_equals_b"] = ok33
        entry["profile_matches_type"] = ok34
        orbits.append(entry)
    clock.mark("profiles", t0)
    out["census"] = {
        "nodes": cen.node_count,
        "cusps": cen.cusp_count,
        "other": cen.other_count,
        "orbits": orbits,
    }
    out["multiplicity_equals_branching_weight"] = prop33
    out["profiles_match_types"] = prop34
    clock.check()
    if S.smooth_claimed:
        t0 = time.monotonic()
        ram = ramification_smooth_check(S, frame, seed=seed)
        clock.mark("ramification", t0)
        out["ramification"] = ram.to_json()
    clock.check()
    t0 = time.monotonic()
    ev = irreducibility_evidence(bc.B, kmax=4, seed=seed)
    clock.mark("irreducibility", t0)
    out["irreducibility"] = ev.to_json()
    out["status"] = "ACCEPTED"
    return out


def run_verify(cfg: RunConfig):
    """Run the pipeline; returns ``(report, exit_code)``."""
    report = {"schema": SCHEMA, "mode": "verify"}
    clock = _Clock(cfg.time_limit)
    try:
        S = load_surface(cfg.surface)
    except (OSError, BranchCurveError, ValueError) as exc:
        return _input_error(report, exc), EXIT_CODES[ERROR]
    report["input"] = {
        "surface_file": cfg.surface,
        "surface": _surface_echo(S),
        "seed": cfg.seed,
        "primes_requested": cfg.primes,
        "retry_budget": cfg.retry_budget,
        "stretch": cfg.stretch,
    }
    if S.d >= STRETCH_DEGREE and not cfg.stretch:
        report["verdict"] = ERROR
        report["reasons"] = [f"degree {S.d} surfaces need --stretch"]
        return report, EXIT_CODES[ERROR]
    if cfg.primes < 1:
        report["verdict"] = ERROR
        report["reasons"] = ["at least one prime is required"]
        return report, EXIT_CODES[ERROR]
    try:
        expected = inv_mod.count_report(S.invariants())
    except InconsistentInvariants as exc:
        return _input_error(report, exc), EXIT_CODES[ERROR]
    report["expectations"] = expected.to_json()
    report["expectations"]["node_count_derivation"] = "(degB-1)(degB-2)/2 - paR - kappa"
    primes = sample_primes(cfg.primes, cfg.seed)
    report["primes"] = primes
    results = []
    reasons = []
    try:
        for p in primes:
            results.append(verify_prime(S, p, cfg.seed, cfg.retry_budget, clock))
    except ResourceAbort as exc:
        report["per_prime"] = results
        report["verdict"] = ERROR
        report["reasons"] = [f"resource abort: {exc}"]
        if cfg.timings:
            report["timings"] = clock.marks
        return report, EXIT_RESOURCE
    report["per_prime"] = results
    verdict = PASS
    statuses = [r["status"] for r in results]
    if ERROR in statuses:
        verdict = ERROR
        reasons.append("smoothness screen failed")
    elif VIOLATION in statuses:
        verdict = VIOLATION
        reasons.append("frames kept producing singularities other than nodes and cusps")
    elif RETRY_EXHAUSTED in statuses:
        verdict = RETRY_EXHAUSTED
        reasons.append("no generic frame found within the retry budget")
    else:
        for r in results:
            p = r["prime"]
            if r["degB"] != expected.degB:
                reasons.append(f"p={p}: degree {r['degB']} != {expected.degB}")
            if not r["multiplicity_equals_branching_weight"]:
                reasons.append(f"p={p}: multiplicity differs from branching weight")
            if not r["profiles_match_types"]:
                reasons.append(f"p={p}: line profile does not match node/cusp type")
            if not r["irreducibility"]["irreducible"]:
                reasons.append(f"p={p}: absolute irreducibility not certified")
            if S.smooth_claimed:
                if not r["ramification"]["smooth"]:
                    reasons.append(f"p={p}: ramification curve not smooth")
                c = r["census"]
                if (c["cusps"], c["nodes"]) != (expected.kappa, expected.nodes):
                    reasons.append(
                        f"p={p}: census ({c['cusps']} cusps, {c['nodes']} nodes) != "
                        f"expected ({expected.kappa}, {expected.nodes})"
                    )
        counts = {(r["census"]["cusps"], r["census"]["nodes"]) for r in results}
        if len(counts) > 1:
            reasons.append("census differs between primes")
        if reasons:
            verdict = VIOLATION
    report["verdict"] = verdict
    report["reasons"] = reasons
    if cfg.timings:
        report["timings"] = clock.marks
    return report, EXIT_CODES[verdict]


def _input_error(report, exc):
    report["verdict"] = ERROR
    report["reasons"] = [f"{type(exc).__name__}: {exc}"]
    return report


# -- foci -------------------------------------------------------------------------------


def run_foci(cfg: RunConfig):
    report = {"schema": SCHEMA, "mode": "foci"}
    from .focal import contact_order, focal_form, foci, is_filling

    try:
        fam = load_family(cfg.family)
        z = tuple(Fraction(c) for c in cfg.at)
        report["input"] = {"family_file": cfg.family, "at": [str(c) for c in z], "kind": type(fam).__name__}
        form = focal_form(fam, z)
        report["focal_form"] = form.to_json()
        report["filling"] = is_filling(fam, seed=cfg.seed)
        try:
            report["foci"] = [f.to_json() for f in foci(fam, z)]
        except NotFilling as exc:
            report["foci"] = []
            report["not_filling"] = str(exc)
        if cfg.surface:
            f = _read_polynomial(cfg.surface)
            try:
                report["contact_order"] = contact_order(f, fam, z)
            except LineInSurface as exc:
                report["contact_order"] = None
                report["line_in_surface"] = str(exc)
    except (OSError, BranchCurveError, ValueError) as exc:
        return _input_error(report, exc), EXIT_CODES[ERROR]
    report["verdict"] = PASS
    return report, 0


def _read_polynomial(path):
    from .parsing import parse_surface_text

    with open(path, encoding="utf-8") as fh:
        return parse_surface_text(fh.read()).polynomial


# -- invariants ---------------------------------------------------------------------


def _frac(x):
    return str(x) if isinstance(x, Fraction) else x


def run_invariants(cfg: RunConfig):
    from .surface import smooth_invariants

    report = {"schema": SCHEMA, "mode": "invariants"}
    a = dict(cfg.inv)
    try:
        d = a["d"]
        if d is None:
            raise ValueError("--d is required")
        smooth = smooth_invariants(d)
        g = a.get("g") if a.get("g") is not None else smooth[0]
        ksq = a.get("ksq") if a.get("ksq") is not None else smooth[1]
        chi = a.get("chi") if a.get("chi") is not None else smooth[2]
        inv = inv_mod.InvariantSet(d=d, g=g, Ksq=ksq, chi=chi, r=a.get("r"), h=a.get("h"), hS=a.get("hs"))
    except (KeyError, ValueError) as exc:
        return _input_error(report, exc), EXIT_CODES[ERROR]
    report["input"] = {"d": d, "g": g, "Ksq": ksq, "chi": chi, "r": inv.r, "h": inv.h, "hS": inv.hS}
    out = {
        "degB": inv_mod.branch_degree(inv),
        "kappa": inv_mod.cusp_count(inv),
        "paR": inv_mod.ram_genus(inv),
        "nonspeciality": inv_mod.nonspeciality(inv),
        "clifford_h_bound": _frac(inv_mod.clifford_h_bound(inv)),
    }
    try:
        out["nodes"] = inv_mod.node_count(inv)
    except InconsistentInvariants as exc:
        out["nodes"] = None
        report["warnings"] = [str(exc)]
    if inv.r is not None:
        out["hilbert"] = inv_mod.hilbert_report(inv)
        out["special_h0_bound"] = _frac(inv_mod.special_h0_bound(inv))
    if a.get("q") is not None and a.get("pg") is not None:
        out["moduli_bounds_canonical"] = inv_mod.moduli_bounds_canonical(inv, a["q"], a["pg"])
    report["result"] = out
    report["verdict"] = PASS
    return report, 0


# -- profile -----------------------------------------------------------------------------


def run_profile(cfg: RunConfig):
    report = {"schema": SCHEMA, "mode": "profile"}
    try:
        S = load_surface(cfg.surface)
        primes = sample_primes(cfg.prime_index + 1, cfg.seed)
        p = primes[cfg.prime_index]
        F = PrimeField(p)
        frame, bc, cen, attempts = accepted_frame(S, F, cfg.seed, cfg.retry_budget)
        report["input"] = {"surface_file": cfg.surface, "seed": cfg.seed, "prime": p, "point": cfg.point}
        if frame is None:
            report["verdict"] = RETRY_EXHAUSTED
            report["rejected_frames"] = attempts
            return report, EXIT_CODES[RETRY_EXHAUSTED]
        report["frame"] = frame.to_json()
        choice = (cfg.point or "").strip()
        profiles = []
        if choice.split(":")[0] in (CUSP, NODE, "all", ""):
            kind, _, idx = choice.partition(":")
            pts = [pt for pt in cen.points if kind in ("", "all") or pt.classification == kind]
            if idx:
                pts = [pts[int(idx)]]
            for pt in pts:
                prof = line_profile(S, frame, pt.coords, pt.field, bc.f_moved)
                entry = prof.to_json()
                entry["classification"] = pt.classification
                entry["multiplicity"] = pt.multiplicity
                entry["orbit_size"] = pt.residue_degree
                profiles.append(entry)
        else:
            y = tuple(int(c) for c in choice.split(","))
            if len(y) != 3:
                raise ValueError("--point needs three comma-separated integers")
            profiles.append(line_profile(S, frame, y, F, bc.f_moved).to_json())
    except (OSError, BranchCurveError, ValueError, IndexError) as exc:
        return _input_error(report, exc), EXIT_CODES[ERROR]
    report["profiles"] = profiles
    report["verdict"] = PASS
    return report, 0


# -- entry point ------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="branchcurve", description="Branch curves of generic projections of surfaces.")
    sub = ap.add_subparsers(dest="mode", required=True)

    v = sub.add_parser("verify", help="count nodes and cusps of the branch curve over several primes")
    v.add_argument("--surface", required=True)
    v.add_argument("--primes", type=int, default=2)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--retries", type=int, default=8, dest="retry_budget")
    v.add_argument("--stretch", action="store_true", help="allow degree >= 5 surfaces")
    v.add_argument("--time-limit", type=float, default=None, help="abort after this many seconds")
    v.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte reproducibility)")
    v.add_argument("--json", dest="output")

    f = sub.add_parser("foci", help="focal form and foci of a line family at a parameter point")
    f.add_argument("--family", required=True)
    f.add_argument("--at", required=True, help="u,v (integers or fractions)")
    f.add_argument("--surface", help="optional surface for the contact order")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--json", dest="output")

    i = sub.add_parser("invariants", help="evaluate the enumerative formulas")
    i.add_argument("--d", type=int, required=True)
    for name in ("g", "ksq", "chi", "r", "h", "hs", "q", "pg"):
        i.add_argument(f"--{name}", type=int)
    i.add_argument("--json", dest="output")

    p = sub.add_parser("profile", help="line profiles over points of the branch curve")
    p.add_argument("--surface", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--point", default="all", help="y0,y1,y2 in frame coordinates, or cusp[:i], node[:i], all")
    p.add_argument("--prime-index", type=int, default=0)
    p.add_argument("--retries", type=int, default=8, dest="retry_budget")
    p.add_argument("--json", dest="output")
    return ap


def config_from_args(ns) -> RunConfig:
    cfg = RunConfig(mode=ns.mode, output=getattr(ns, "output", None))
    for key in ("surface", "primes", "seed", "retry_budget", "stretch", "timings", "time_limit", "family", "point", "prime_index"):
        if hasattr(ns, key):
            setattr(cfg, key, getattr(ns, key))
    if ns.mode == "foci":
        cfg.at = tuple(ns.at.split(","))
    if ns.mode == "invariants":
        cfg.inv = {k: getattr(ns, k) for k in ("d", "g", "ksq", "chi", "r", "h", "hs", "q", "pg")}
    return cfg


RUNNERS = {"verify": run_verify, "foci": run_foci, "invariants": run_invariants, "profile": run_profile}


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    if cfg.mode == "foci" and len(cfg.at) != 2:
        print("--at needs two values u,v", file=sys.stderr)
        return EXIT_CODES[ERROR]
    report, code = RUNNERS[cfg.mode](cfg)
    text = dumps(report)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"verdict: {report.get('verdict')}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
