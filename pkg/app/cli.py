"""
command line front end

    python -m app scenario verify generic-standard --json
    python -m app orbit table --delta-max 8

Exit codes: 0 success, 1 failed check, 2 malformed input, 3 precondition.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional

from pydantic import BaseModel, ValidationError

from app import schemas, services
from app.core.config import settings
from app.core.discriminant import discriminant_form
from app.core.exceptions import InputError, K3LatError
from app.core.lattice import direct_sum, rescale
from app.core.scenarios import builtin_scenarios, verify_scenario
from app.core.symbolic import verify_d1
from app.tasks.acceptance import run_all_acceptance_checks

logger = logging.getLogger(__name__)


# ============= INPUT =============


def _read_json(source: str) -> Any:
    """inline JSON or a path to a JSON file"""
    text = source
    if not source.lstrip().startswith(("[", "{")):
        try:
            text = Path(source).read_text()
        except OSError as e:
            raise InputError(f"Cannot read {source}: {e.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"Malformed JSON in {source}: {e.msg}")


def _validated(model: type[BaseModel], data: Any) -> BaseModel:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise InputError(f"Invalid {model.__name__}: {e.errors()[0]['msg']}")


def _lattice(source: str):
    return services.load_lattice(_validated(schemas.LatticeIn, _read_json(source)))


# ============= OUTPUT =============


def _dump(payload: Any) -> str:
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(by_alias=True, mode="json")
    elif isinstance(payload, list):
        payload = [p.model_dump(by_alias=True, mode="json") if isinstance(p, BaseModel) else p for p in payload]
    return json.dumps(payload, sort_keys=True, indent=2)


def _print_report(report: schemas.Report):
    print(f"{report.name}: {'PASS' if report.passed else 'FAIL'}")
    for check in report.checks:
        print(f"  [{'ok' if check.passed else 'XX'}] {check.id}: {check.detail}")
    if report.data:
        for key, value in sorted(report.data.items()):
            print(f"  {key} = {value}")


def _emit(args: argparse.Namespace, payload: Any):
    if args.json:
        print(_dump(payload))
    elif isinstance(payload, schemas.Report):
        _print_report(payload)
    elif isinstance(payload, list) and payload and isinstance(payload[0], schemas.Report):
        for report in payload:
            _print_report(report)
    elif isinstance(payload, BaseModel):
        for key, value in payload.model_dump(by_alias=True, mode="json").items():
            print(f"{key}: {value}")
    else:
        print(payload)


# ============= COMMANDS =============


def cmd_lattice_info(args) -> int:
    _emit(args, services.lattice_out(_lattice(args.lattice)))
    return 0


def cmd_lattice_sum(args) -> int:
    lattices = [_lattice(source) for source in args.lattices]
    _emit(args, services.lattice_out(direct_sum(*lattices, label="+".join(L.label for L in lattices if L.label))))
    return 0


def cmd_lattice_scale(args) -> int:
    _emit(args, services.lattice_out(rescale(_lattice(args.lattice), args.factor)))
    return 0


def cmd_disc_form(args) -> int:
    _emit(args, services.form_out(discriminant_form(_lattice(args.lattice))))
    return 0


def cmd_disc_orbits(args) -> int:
    rows = services.orbits_out(discriminant_form(_lattice(args.lattice)))
    if args.json:
        _emit(args, rows)
    else:
        for row in rows:
            print(f"{str(tuple(row.representative)):<24} size {row.size:>4}  q = {row.q}")
    return 0


def cmd_orbit_classify(args) -> int:
    _emit(args, services.classify(services.parse_coords(args.coords), schemas.Basis(args.basis)))
    return 0


def cmd_orbit_table(args) -> int:
    rows = services.orbit_rows(args.delta_max)
    if args.json:
        _emit(args, rows)
    else:
        print(f"{'delta':>5}  {'case':<15} {'representative':<24} {'n':>3}")
        for row in rows:
            print(f"{row.delta:>5}  {row.case:<15} {str(tuple(row.representative)):<24} {row.n_delta:>3}")
    return 0


def cmd_scenario_list(args) -> int:
    summaries = [services.scenario_summary(c) for c in builtin_scenarios().values()]
    if args.json:
        _emit(args, summaries)
    else:
        for s in summaries:
            print(f"{s.name:<18} {' '.join(s.fibers):<40} {s.description}")
    return 0


def cmd_scenario_verify(args) -> int:
    report = verify_scenario(args.name)
    _emit(args, report)
    return 0 if report.passed else 1


def cmd_phi(args) -> int:
    matrix = _validated(schemas.GaussianMatrixIn, {"entries": _read_json(args.matrix)})
    _emit(args, services.phi_out(services.gaussian_matrix(matrix)))
    return 0


def cmd_pfaffian(args) -> int:
    _emit(args, services.pfaffian_out(services.parse_coords(args.y)))
    return 0


def cmd_ks(args) -> int:
    _emit(args, services.ks_out(args.delta))
    return 0


def cmd_quat(args) -> int:
    _emit(args, services.quat_out(services.parse_rational(args.a), services.parse_rational(args.b)))
    return 0


def cmd_symbolic(args) -> int:
    report = verify_d1()
    _emit(args, report)
    return 0 if report.passed else 1


def cmd_selftest(args) -> int:
    reports = run_all_acceptance_checks()
    _emit(args, reports)
    return 0 if all(r.passed for r in reports) else 1


# ============= PARSER =============


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output with sorted keys")

    parser = argparse.ArgumentParser(prog="k3lat", description="Lattice computations for K3 surfaces with six-line double plane models.")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL)
    commands = parser.add_subparsers(dest="command", required=True)

    lattice = commands.add_parser("lattice").add_subparsers(dest="action", required=True)
    p = lattice.add_parser("info", parents=[common])
    p.add_argument("lattice", help="lattice JSON file or inline JSON")
    p.set_defaults(func=cmd_lattice_info)
    p = lattice.add_parser("sum", parents=[common])
    p.add_argument("lattices", nargs="+")
    p.set_defaults(func=cmd_lattice_sum)
    p = lattice.add_parser("scale", parents=[common])
    p.add_argument("lattice")
    p.add_argument("--factor", type=int, required=True)
    p.set_defaults(func=cmd_lattice_scale)

    disc = commands.add_parser("disc").add_subparsers(dest="action", required=True)
    p = disc.add_parser("form", parents=[common])
    p.add_argument("lattice")
    p.set_defaults(func=cmd_disc_form)
    p = disc.add_parser("orbits", parents=[common])
    p.add_argument("lattice")
    p.set_defaults(func=cmd_disc_orbits)

    orbit = commands.add_parser("orbit").add_subparsers(dest="action", required=True)
    p = orbit.add_parser("classify", parents=[common])
    p.add_argument("--coords", required=True, help="six comma separated integers")
    p.add_argument("--basis", choices=[b.value for b in schemas.Basis], default=schemas.Basis.E.value)
    p.set_defaults(func=cmd_orbit_classify)
    p = orbit.add_parser("table", parents=[common])
    p.add_argument("--delta-max", type=int, default=16)
    p.set_defaults(func=cmd_orbit_table)

    scenario = commands.add_parser("scenario").add_subparsers(dest="action", required=True)
    p = scenario.add_parser("list", parents=[common])
    p.set_defaults(func=cmd_scenario_list)
    p = scenario.add_parser("verify", parents=[common])
    p.add_argument("name")
    p.set_defaults(func=cmd_scenario_verify)

    p = commands.add_parser("phi", parents=[common])
    p.add_argument("--matrix", required=True, help="4x4 entries [re_num, re_den, im_num, im_den], inline or file")
    p.set_defaults(func=cmd_phi)

    p = commands.add_parser("pfaffian", parents=[common])
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_pfaffian)

    p = commands.add_parser("ks", parents=[common])
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=cmd_ks)

    p = commands.add_parser("quat", parents=[common])
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_quat)

    symbolic = commands.add_parser("symbolic").add_subparsers(dest="action", required=True)
    p = symbolic.add_parser("verify-d1", parents=[common])
    p.set_defaults(func=cmd_symbolic)

    p = commands.add_parser("selftest", parents=[common])
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors
        return int(e.code or 0)
    logging.basicConfig(level=str(args.log_level).upper(), stream=sys.stderr)
    try:
        return args.func(args)
    except K3LatError as e:
        logger.error(f"{type(e).__name__}: {e.detail}")
        print(json.dumps({"detail": e.detail}, sort_keys=True) if getattr(args, "json", False) else f"error: {e.detail}", file=sys.stderr)
        return e.exit_code


def main():
    sys.exit(run())
