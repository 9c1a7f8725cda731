from __future__ import annotations
import argparse
import logging
import sys
from pathlib import Path
from typing import Any

from dotenv import load_dotenv

from clb import console
from clb.algebra.field import FieldDescriptor
from clb.algebra.poly import poly_str
from clb.blocks.descent import descend_to_unitary
from clb.blocks.stages import classify
from clb.config import Settings, load_settings
from clb.errors import BudgetError, InputError, VerificationFailure
from clb.forms.space import GROUP_BY_ALGEBRA, standard_space
from clb.logging import setup_logging
from clb.orbits.groups import descent_census, enumerate_group
from clb.orbits.orbits import SPACES, check_pair_sigma, check_twisted_stability, orbits
from clb.store import repo
from clb.store.schema import ProblemInstance, Report
from clb.utils.hashing import digest
from clb.verify.fixtures import fixtures_generate
from clb.verify.suites import SUITES, run_suite
from clb.witness.witness import witness_global

log = logging.getLogger("clb")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2

def _load(args) -> tuple[Settings, ProblemInstance]:
    s = load_settings()
    setup_logging(s.log_level)
    inst = repo.read_instance(args.input)
    repo.validate_instance(inst)
    return s, inst

def _out_path(s: Settings, args, command: str, stem: str) -> Path:
    if getattr(args, "output", None):
        return Path(args.output)
    return Path(s.report_dir) / f"{command}-{stem}.json"

def _show(s: Settings, args, fn, payload: Any) -> None:
    if s.rich_summary and not args.quiet:
        fn(payload)

def _finish(s: Settings, args, report: Report, stem: str, show, payload: Any) -> int:
    repo.write_report(_out_path(s, args, report.command, stem), report)
    _show(s, args, show, payload)
    if not report.ok:
        raise VerificationFailure(f"{report.command}: checks failed")
    return EXIT_OK

def cmd_classify(args) -> int:
    s, inst = _load(args)
    S = inst.form_space()
    A = inst.operator_matrix(S)
    D = classify(S, A)
    result = D.to_json()
    dg = repo.instance_digest(inst)
    report = Report(command="classify", instance_digest=dg, seed=0, ok=True, result=result)
    return _finish(s, args, report, inst.name or dg[:12], console.show_blocks, result)

def cmd_witness(args) -> int:
    s, inst = _load(args)
    S = inst.form_space()
    A = inst.operator_matrix(S)
    D = classify(S, A)
    W = witness_global(S, A, D)
    result = W.to_json(S.field)
    result["signature"] = D.signature()
    dg = repo.instance_digest(inst)
    report = Report(command="witness", instance_digest=dg, seed=0, ok=W.ok, result=result)
    return _finish(s, args, report, inst.name or dg[:12], console.show_witness, result)

def cmd_descend(args) -> int:
    s, inst = _load(args)
    S = inst.form_space()
    A = inst.operator_matrix(S)
    D = descend_to_unitary(S, A)
    expected = inst.polynomial(S)
    if expected is not None and expected != D.f:
        raise InputError(f"instance names f = {poly_str(S.field, expected)} but A gives {poly_str(S.field, D.f)}")
    result = D.to_json()
    result["degree"] = D.degree
    result["is_hermitian"] = D.is_hermitian()
    ok = True
    try:
        census = descent_census(D, s.budget())
        result.update(census)
        ok = bool(census["correspondence_holds"] and census.get("matched", True))
    except BudgetError as e:
        log.info("skipping centralizer census: %s", e)
    dg = repo.instance_digest(inst)
    report = Report(command="descend", instance_digest=dg, seed=0, ok=ok, result=result)
    return _finish(s, args, report, inst.name or dg[:12], console.show_descent, result)

def cmd_verify(args) -> int:
    s = load_settings()
    setup_logging(s.log_level)
    F = FieldDescriptor.parse(args.field)
    seed = s.seed if args.seed is None else args.seed
    res = run_suite(args.suite, F, args.kind, args.dim, trials=args.trials, seed=seed, budget=s.budget())
    result = res.to_json()
    stem = f"{args.suite}-{args.kind}{args.dim}-{F.q}-s{seed}"
    report = Report(command="verify", instance_digest=digest({k: result[k] for k in ("suite", "field", "algebra", "n")}), seed=seed, ok=res.ok, result=result)
    return _finish(s, args, report, stem, console.show_suite, result)

def cmd_shadow(args) -> int:
    s = load_settings()
    setup_logging(s.log_level)
    F = FieldDescriptor.parse(args.field)
    if args.kind not in GROUP_BY_ALGEBRA:
        raise InputError(f"unknown algebra {args.kind!r}; expected one of o, so, u, sp")
    group = GROUP_BY_ALGEBRA[args.kind]
    budget = s.budget()
    if args.pair:
        rep = check_pair_sigma(F, group, args.dim, budget)
        ok = bool(rep.all_stable)
        tag = "pair"
    else:
        S = standard_space(F, group, args.dim)
        rep = orbits(enumerate_group(S, budget), args.space, budget)
        ok = check_twisted_stability(rep)
        tag = args.space
    result = rep.to_json()
    stem = f"{tag}-{args.kind}{args.dim}-{F.q}"
    report = Report(command="shadow", instance_digest=digest({"space": tag, "kind": args.kind, "dim": args.dim, "field": F.to_json()}), seed=0, ok=ok, result=result)
    return _finish(s, args, report, stem, console.show_orbits, result)

def cmd_fixtures_generate(args) -> int:
    s = load_settings()
    setup_logging(s.log_level)
    seed = s.seed if args.seed is None else args.seed
    out_dir = args.out or s.fixtures_dir
    paths = fixtures_generate(seed, out_dir, s.budget())
    if s.rich_summary and not args.quiet:
        console.show_fixtures([str(p) for p in paths])
    return EXIT_OK

def build_parser():
    p = argparse.ArgumentParser(prog="clb")
    p.add_argument("--quiet", action="store_true", help="no rich summary on stderr")
    sub = p.add_subparsers(dest="cmd", required=True)

    for name, fn, helptext in (
        ("classify", cmd_classify, "orthogonal decomposition into simple blocks"),
        ("witness", cmd_witness, "twisted element (T, -1) fixing A"),
        ("descend", cmd_descend, "hermitian descent of a symplectic operator"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--input", required=True)
        sp.add_argument("--output", default=None)
        sp.set_defaults(func=fn)

    p_ver = sub.add_parser("verify", help="property suites")
    p_ver.add_argument("--suite", required=True, choices=list(SUITES))
    p_ver.add_argument("--trials", type=int, default=None, help="omit for an exhaustive sweep where feasible")
    p_ver.add_argument("--seed", type=int, default=None)
    p_ver.add_argument("--field", required=True, help="p, 'p,2' or q")
    p_ver.add_argument("--kind", required=True, choices=sorted(GROUP_BY_ALGEBRA))
    p_ver.add_argument("--dim", type=int, required=True)
    p_ver.add_argument("--output", default=None)
    p_ver.set_defaults(func=cmd_verify)

    p_sh = sub.add_parser("shadow", help="finite-field orbit checks")
    p_sh.add_argument("--kind", required=True, choices=sorted(GROUP_BY_ALGEBRA))
    p_sh.add_argument("--dim", type=int, required=True)
    p_sh.add_argument("--field", required=True)
    p_sh.add_argument("--space", default="gxV", choices=list(SPACES))
    p_sh.add_argument("--pair", action="store_true", help="G(V) inside G(W) with the sigma check")
    p_sh.add_argument("--output", default=None)
    p_sh.set_defaults(func=cmd_shadow)

    p_fx = sub.add_parser("fixtures")
    sub_fx = p_fx.add_subparsers(dest="fx_cmd", required=True)
    p_gen = sub_fx.add_parser("generate")
    p_gen.add_argument("--seed", type=int, default=None)
    p_gen.add_argument("--out", default=None)
    p_gen.set_defaults(func=cmd_fixtures_generate)

    return p

def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return int(args.func(args) or EXIT_OK)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationFailure as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_VERIFY

def main():
    # 先读 .env（如果存在）；只影响日志、输出目录和穷举上限
    load_dotenv()
    raise SystemExit(run())
