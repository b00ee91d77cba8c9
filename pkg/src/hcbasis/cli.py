"""Command-line front end: ``hcbasis <subcommand> [flags]``.

Exit codes: 0 success, 2 input error, 3 budget error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from . import __version__
from .errors import BudgetError, HcBasisError, ParseError, ValidationError
from .gf2 import is_permutation_matrix, rank
from .graph import (Graph, GraphFormat, parse_cnf, parse_graph, parse_path_decomposition,
                    serialize_graph, serialize_path_decomposition, validate_decomposition)
from .matchings import MAX_ENUM_T, MAX_MATRIX_T, basis_size, build_hc_matrix, generate_basis, partner

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4

log = logging.getLogger("hcbasis")


class VerificationFailure(HcBasisError):
    pass


@dataclass
class RunReport:
    subcommand: str
    inputs: dict[str, str] = field(default_factory=dict)  # name -> sha256 of the file contents
    parameters: dict[str, Any] = field(default_factory=dict)
    answer: Any = None
    elapsed_ms: float = 0.0
    verification: str = "none"
    details: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _read(path: str, report: RunReport, key: str) -> str:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    report.inputs[key] = hashlib.sha256(data).hexdigest()
    return data.decode()


def _load_graph(args, report: RunReport) -> Graph:
    text = _read(args.graph, report, "graph")
    fmt = GraphFormat.PACE_GR if args.graph.endswith(".gr") or text.lstrip().startswith("p ") \
        else GraphFormat.EDGE_LIST
    return parse_graph(text, fmt)


def _even_t(value: str) -> int:
    t = int(value)
    if t < 2 or t % 2:
        raise argparse.ArgumentTypeError(f"t must be a positive even integer, got {t}")
    return t


def cmd_basis(args, report: RunReport) -> list[str]:
    t = args.t
    if t > MAX_ENUM_T:
        raise BudgetError(f"t={t} exceeds {MAX_ENUM_T}")
    basis = generate_basis(t)
    lines = [f"basis t={t} size={len(basis)}"]
    for b, m in basis:
        lines.append(f"{b.code or '-'}\t{m}\tpartner={partner(b).code or '-'}")
    check = None
    if t <= MAX_MATRIX_T and args.check:
        hc = build_hc_matrix(t, workers=args.threads)
        index = {m.mate: i for i, m in enumerate(hc.matchings)}
        cols = [index[m.mate] for _, m in basis]
        check = is_permutation_matrix(hc.matrix.submatrix(cols, cols))
        lines.append(f"permutation_submatrix={str(check).lower()}")
        report.verification = "exact"
    report.answer = [str(m) for _, m in basis]
    report.details = {"partners": [partner(b).index for b, _ in basis], "permutation_submatrix": check}
    if check is False:
        raise VerificationFailure("basis submatrix is not a permutation matrix")
    return lines


def cmd_rank(args, report: RunReport) -> list[str]:
    t = args.t
    if t > MAX_MATRIX_T:
        raise BudgetError(f"t={t} exceeds {MAX_MATRIX_T}")
    r = rank(build_hc_matrix(t, workers=args.threads).matrix)
    expected = basis_size(t)
    report.answer = r
    report.details = {"expected": expected}
    report.verification = "exact"
    if r != expected:
        raise VerificationFailure(f"rank={r} expected={expected}")
    return [f"rank={r} expected={expected}"]


def _mc_record(report: RunReport, algorithm: str, g: Graph, answer, args) -> None:
    report.answer = answer
    report.details = {"algorithm": algorithm, "n": g.n, "m": g.m}
    report.parameters.update(seed=args.seed, reps=args.reps)


def cmd_parity(args, report: RunReport) -> list[str]:
    from .parity import parity_hc_directed_bipartite, parity_hc_undirected

    g = _load_graph(args, report)
    if g.directed:
        p = parity_hc_directed_bipartite(g, max_n=args.max_n)
        algo = "parity-directed-bipartite"
    else:
        p = parity_hc_undirected(g, max_n=args.max_n)
        algo = "parity-undirected"
    _mc_record(report, algo, g, p, args)
    report.verification = "exact"
    return [str(p)]


def cmd_decide(args, report: RunReport) -> list[str]:
    from .parity import decide_hamiltonicity_mc

    g = _load_graph(args, report)
    ans = decide_hamiltonicity_mc(g, seed=args.seed, reps=args.reps, max_n=args.max_n)
    _mc_record(report, "isolation-parity", g, ans, args)
    report.verification = "monte-carlo"
    return [str(ans).lower()]


def cmd_pw_solve(args, report: RunReport) -> list[str]:
    from .parity import isolation_rng, random_weights
    from .pathwidth import _prepare, pw_parity_profile

    g = _load_graph(args, report)
    pd = parse_path_decomposition(_read(args.td, report, "td")) if args.td else None
    if pd is not None:
        validate_decomposition(g, pd)
    npd = _prepare(g, pd, args.max_width)
    ans = False
    profiles = []
    for rng in isolation_rng(args.seed, args.reps):
        prof = pw_parity_profile(g, npd, random_weights(g, rng).weights)
        profiles.append(sorted(prof))
        if prof:
            ans = True
            break
    _mc_record(report, "pathwidth-fingerprint-dp", g, ans, args)
    report.details["width"] = npd.width
    report.verification = "monte-carlo"
    if args.emit_profile:
        Path(args.emit_profile).write_text(json.dumps({"odd_weights": profiles}, indent=1) + "\n")
    return [str(ans).lower()]


def cmd_reduce_sat(args, report: RunReport) -> list[str]:
    from .reduction import check_instance, reduce, witness_json

    f = parse_cnf(_read(args.cnf, report, "cnf"))
    out = reduce(f, group_size=args.group_size)
    validate_decomposition(out.graph, out.decomposition)
    meta = dict(out.metadata)
    if args.check:
        res = check_instance(f, out, seed=args.seed, reps=args.reps)
        meta.update(hamiltonian=res.hamiltonian, verification=res.level)
        report.verification = res.level
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    files = {
        "graph": prefix.with_suffix(".gr"),
        "td": prefix.with_suffix(".td"),
        "witness": prefix.with_name(prefix.name + ".witness.json"),
        "metadata": prefix.with_name(prefix.name + ".meta.json"),
    }
    files["graph"].write_text(serialize_graph(out.graph))
    files["td"].write_text(serialize_path_decomposition(out.decomposition, out.graph.n))
    files["witness"].write_text(witness_json(out) + "\n")
    files["metadata"].write_text(json.dumps(meta, sort_keys=True, indent=1) + "\n")
    report.answer = {k: str(v) for k, v in files.items()}
    report.details = meta
    report.parameters["group_size"] = args.group_size
    return [f"{k}: {v}" for k, v in files.items()]


def cmd_verify(args, report: RunReport) -> list[str]:
    from .crosscheck import run_suites

    results = run_suites(args.tier, seed=args.seed)
    report.answer = all(r.disagreements == 0 for r in results)
    report.details = {"tier": args.tier, "suites": [r.to_dict() for r in results]}
    report.verification = f"cross-oracle:{args.tier}"
    lines = [f"{r.name}: {r.instances} checks, {r.disagreements} disagreements, {r.seconds:.2f}s"
             for r in results]
    if not report.answer:
        raise VerificationFailure("; ".join(lines))
    return lines


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON report on stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--reps", type=int, default=None,
                        help="isolation repetitions (default 20; 30 for reduce-sat --check)")
    common.add_argument("--threads", type=int, default=1, help="worker processes for matrix builds")
    common.add_argument("--max-n", type=int, default=24, help="vertex cap for the parity algorithms")
    common.add_argument("--max-width", type=int, default=16, help="width cap for the pathwidth DP")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="hcbasis", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("basis", parents=[common], help="print the basis, partners and the submatrix check")
    s.add_argument("t", type=_even_t)
    s.add_argument("--no-check", dest="check", action="store_false")
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("rank", parents=[common], help="GF(2) rank of the connectivity matrix")
    s.add_argument("t", type=_even_t)
    s.set_defaults(func=cmd_rank)

    for name, func, hlp in (("parity", cmd_parity, "parity of the Hamiltonian cycle count"),
                            ("decide", cmd_decide, "Monte Carlo Hamiltonicity via isolation")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--graph", required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("pw-solve", parents=[common], help="Hamiltonicity over a path decomposition")
    s.add_argument("--graph", required=True)
    s.add_argument("--td", help="path decomposition in .td format (default: heuristic)")
    s.add_argument("--emit-profile", metavar="FILE", help="write the odd weight classes as JSON")
    s.set_defaults(func=cmd_pw_solve)

    s = sub.add_parser("reduce-sat", parents=[common], help="CNF formula to a Hamiltonicity instance")
    s.add_argument("cnf")
    s.add_argument("--out", required=True, help="output prefix for .gr, .td, .witness.json, .meta.json")
    s.add_argument("--group-size", type=int, default=1)
    s.add_argument("--check", action="store_true", help="decide the instance and record the evidence")
    s.set_defaults(func=cmd_reduce_sat, default_reps=30)

    s = sub.add_parser("verify", parents=[common], help="cross-check fast routines against oracles")
    s.add_argument("--tier", choices=("small", "medium"), default="small")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.reps is None:
        args.reps = getattr(args, "default_reps", 20)
    if args.reps < 1:
        print("error: --reps must be positive", file=sys.stderr)
        return EXIT_INPUT
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    report = RunReport(args.subcommand, parameters={
        "seed": args.seed, "reps": args.reps, "threads": args.threads,
        "max_n": args.max_n, "max_width": args.max_width})
    code = EXIT_OK
    lines: list[str] = []
    start = time.perf_counter()
    try:
        lines = args.func(args, report)
    except VerificationFailure as exc:
        code, report.details["error"] = EXIT_VERIFY, str(exc)
    except BudgetError as exc:
        code, report.details["error"] = EXIT_BUDGET, str(exc)
    except (ParseError, ValidationError, ValueError) as exc:
        code, report.details["error"] = EXIT_INPUT, str(exc)
    report.elapsed_ms = round(1e3 * (time.perf_counter() - start), 3)
    if args.json:
        print(report.to_json())
    else:
        for line in lines:
            print(line)
        if code:
            print(f"error: {report.details['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
