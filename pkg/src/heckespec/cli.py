"""Command-line front end: spectrum tables, verification sweeps, matrix dumps.

Reports are deterministic: identical invocations produce byte-identical
output (timings are opt-in via --timings and excluded otherwise).  Exit
codes: 0 all checks pass, 1 a check failed or spectra mismatched, 2 bad
parameters (including non-generic q), 3 dimension cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import linalg
from .corner import (
    CornerShape,
    enumerate_basis,
    generator_matrix,
    verify_cyclic_conjugation,
    verify_defining_relations,
    verify_trace_identity,
)
from .errors import CapacityExceeded, NonGenericParameter
from .hamiltonian import (
    build_hamiltonian,
    commuting_family_check,
    intertwiner_matrix,
    numeric_spectrum,
    path_adjacency,
    predicted_spectrum,
    verify_intertwiner,
    verify_isospectral,
    verify_large_q_limit,
    verify_spectrum,
)
from .reports import VerificationReport, residual_value
from .scalars import APPROXIMATE, EPS_EQUALITY, EXACT, QParam, scalar_repr
from .wedge import (
    corner_product_condition,
    verify_hamiltonian_transport,
    verify_sum_product_identity,
    verify_wedge_equivalence,
    verify_wedge_relations,
)

CHECK_NAMES = (
    "relations",
    "trace",
    "conjugation",
    "intertwiner",
    "spectrum",
    "isospectral",
    "wedge",
    "sumproduct",
    "idempotent",
    "commuting",
    "limit",
)

SPECTRUM_TOLERANCE = 1e-8


def _add_common_options(parser: argparse.ArgumentParser, need_q: bool = True):
    parser.add_argument("--k", type=int, required=True, help="arm length (first row has k+1 boxes)")
    parser.add_argument("--l", type=int, required=True, help="leg length (number of extra rows)")
    parser.add_argument(
        "--q",
        action="append",
        default=None,
        required=need_q,
        metavar="VALUE",
        help="deformation parameter; repeatable; 'a/b' or integers are exact, decimals approximate",
    )
    parser.add_argument(
        "--backend",
        choices=(EXACT, APPROXIMATE),
        default=None,
        help="force a scalar backend; exact refuses decimal q values rather than coercing them",
    )
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json")
    parser.add_argument("--out", default=None, help="write the report here instead of stdout")
    parser.add_argument("--dim-cap", type=int, default=None, help="override the dimension cap")
    parser.add_argument(
        "--tolerance",
        type=float,
        default=None,
        help="residual tolerance for approximate-backend checks (default 1e-9; spectrum command 1e-8)",
    )
    parser.add_argument("--timings", action="store_true", help="include elapsed times (breaks byte-identical reruns)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckespec",
        description="Corner-type Hecke algebra representations, chain Hamiltonians, and spectral verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    spectrum = sub.add_parser("spectrum", help="predicted cosine spectrum vs numeric eigenvalues")
    _add_common_options(spectrum)
    spectrum.set_defaults(func=cmd_spectrum)

    verify = sub.add_parser("verify", help="run identity verifiers over a (shape, q) grid")
    _add_common_options(verify)
    verify.add_argument("--r", default=None, metavar="VALUE", help="second parameter for the commuting-family check")
    verify.add_argument(
        "--checks",
        default=None,
        help="comma-separated subset of: " + ",".join(CHECK_NAMES) + " (default: all valid for the shape)",
    )
    verify.set_defaults(func=cmd_verify)

    dump = sub.add_parser("dump", help="print generator/Hamiltonian/intertwiner matrices")
    _add_common_options(dump)
    dump.add_argument(
        "--what",
        action="append",
        default=None,
        help="sigma:P, hamiltonian, cmatrix, or limit; repeatable (default hamiltonian)",
    )
    dump.set_defaults(func=cmd_dump)
    return parser


def _parse_q_values(args) -> list[QParam]:
    values = [QParam.parse(text, args.backend) for text in args.q]
    if len({q.backend for q in values}) > 1:
        raise ValueError("all q values must land on one backend; pass --backend to disambiguate")
    return values


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _format_entry(x) -> str:
    return str(x) if isinstance(x, Fraction) else repr(float(x))


def _json_dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------- spectrum


def cmd_spectrum(args) -> int:
    shape = CornerShape(args.k, args.l)
    q_values = _parse_q_values(args)
    tolerance = args.tolerance if args.tolerance is not None else SPECTRUM_TOLERANCE
    prediction = predicted_spectrum(shape, args.dim_cap)

    results = []
    all_pass = True
    for q in q_values:
        numeric = numeric_spectrum(shape, q, args.dim_cap)
        rows = []
        worst = 0.0
        for (m_tuple, value), found in zip(prediction.entries, numeric):
            residual = float(abs(found - value))
            worst = max(worst, residual)
            rows.append({"m": list(m_tuple), "predicted": value, "numeric": float(found), "residual": residual})
        passed = worst < tolerance
        all_pass = all_pass and passed
        results.append({"q": scalar_repr(q.q), "pass": passed, "max_residual": worst, "rows": rows})

    if args.format == "json":
        payload = {
            "command": "spectrum",
            "k": shape.k,
            "l": shape.l,
            "tolerance": tolerance,
            "pass": all_pass,
            "results": results,
        }
        text = _json_dumps(payload)
    elif args.format == "csv":
        lines = ["q,m_indices,lambda_predicted,lambda_numeric,abs_residual"]
        for result in results:
            for row in result["rows"]:
                lines.append(
                    "{},{},{},{},{}".format(
                        result["q"],
                        ";".join(map(str, row["m"])),
                        repr(row["predicted"]),
                        repr(row["numeric"]),
                        repr(row["residual"]),
                    )
                )
        text = "\n".join(lines) + "\n"
    else:
        lines = [f"spectrum k={shape.k} l={shape.l} (dim {shape.dim})"]
        for result in results:
            lines.append(f"q={result['q']}  max residual {result['max_residual']!r}  {'PASS' if result['pass'] else 'FAIL'}")
            for row in result["rows"]:
                lines.append(
                    "  m={:<16} predicted {:>22} numeric {:>22} residual {!r}".format(
                        ",".join(map(str, row["m"])) or "-",
                        repr(row["predicted"]),
                        repr(row["numeric"]),
                        row["residual"],
                    )
                )
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0 if all_pass else 1


# ------------------------------------------------------------------ verify


def _valid_checks(shape: CornerShape, q_values, r) -> list[str]:
    valid = ["relations", "trace", "conjugation", "spectrum"]
    if shape.l == 1:
        valid += ["intertwiner", "limit"]
        if r is not None or len(q_values) >= 2:
            valid.append("commuting")
    if len(q_values) >= 2:
        valid.append("isospectral")
    if shape.l >= 1:
        valid.append("wedge")
    if shape.l >= 2:
        valid.append("sumproduct")
    if shape.n_generators >= 2:
        valid.append("idempotent")
    return valid


def cmd_verify(args) -> int:
    shape = CornerShape(args.k, args.l)
    q_values = _parse_q_values(args)
    r_param = QParam.parse(args.r, args.backend) if args.r is not None else None
    if r_param is not None and r_param.backend != q_values[0].backend:
        raise ValueError("--r must land on the same backend as --q")
    tol = args.tolerance if args.tolerance is not None else EPS_EQUALITY
    cap = args.dim_cap

    valid = _valid_checks(shape, q_values, r_param)
    if args.checks is None:
        selected = valid
    else:
        selected = [name.strip() for name in args.checks.split(",") if name.strip()]
        unknown = [name for name in selected if name not in CHECK_NAMES]
        if unknown:
            raise ValueError(f"unknown checks: {', '.join(unknown)} (choose from {', '.join(CHECK_NAMES)})")
        invalid = [name for name in selected if name not in valid]
        if invalid:
            raise ValueError(f"checks not valid for this shape/grid: {', '.join(invalid)}")

    report = VerificationReport()
    for q in q_values:
        if "relations" in selected:
            report.extend(verify_defining_relations(shape, q, tol))
        if "trace" in selected:
            report.extend(verify_trace_identity(shape, q, tol))
        if "conjugation" in selected:
            report.extend(verify_cyclic_conjugation(shape, q, tol))
        if "intertwiner" in selected:
            report.extend(verify_intertwiner(shape.k, q, tol))
        if "spectrum" in selected:
            report.extend(verify_spectrum(shape, q, dim_cap=cap))
        if "wedge" in selected:
            report.extend(verify_wedge_relations(shape.k, shape.l, q, tol, cap))
            report.extend(verify_wedge_equivalence(shape.k, shape.l, q, tol, cap))
            report.extend(verify_hamiltonian_transport(shape.k, shape.l, q, tol, cap))
        if "sumproduct" in selected:
            for p in range(1, shape.n_generators + 1):
                report.extend(verify_sum_product_identity(shape.k, shape.l, p, q, tol, cap))
        if "idempotent" in selected:
            report.extend(corner_product_condition(shape.k, shape.l, q, tol=tol))
    if "isospectral" in selected:
        for i in range(len(q_values)):
            for j in range(i + 1, len(q_values)):
                report.extend(verify_isospectral(shape, q_values[i], q_values[j], tol))
    if "commuting" in selected:
        family = list(q_values) + ([r_param] if r_param is not None else [])
        report.extend(commuting_family_check(shape.k, family[0], family[1], tuple(family[2:]), tol))
    if "limit" in selected:
        report.extend(verify_large_q_limit(shape.k))

    if args.format == "json":
        payload = {
            "command": "verify",
            "k": shape.k,
            "l": shape.l,
            "q": [scalar_repr(q.q) for q in q_values],
            "r": scalar_repr(r_param.q) if r_param is not None else None,
            "checks": report.to_dict(args.timings)["checks"],
            "pass": report.passed,
        }
        text = _json_dumps(payload)
    elif args.format == "csv":
        lines = ["name,k,l,q,r,pass,residual"]
        for check in report.sorted_checks():
            ctx = check.context
            residual = residual_value(check.residual, check.exact)
            lines.append(
                "{},{},{},{},{},{},{}".format(
                    check.name,
                    ctx.get("k", ""),
                    ctx.get("l", ""),
                    ctx.get("q", ""),
                    ctx.get("r", ""),
                    str(check.passed).lower(),
                    residual if isinstance(residual, str) else repr(residual),
                )
            )
        text = "\n".join(lines) + "\n"
    else:
        lines = []
        for check in report.sorted_checks():
            ctx = check.context
            extras = " ".join(f"{key}={ctx[key]}" for key in ("k", "l", "q", "r") if ctx.get(key))
            residual = residual_value(check.residual, check.exact)
            lines.append(f"{'PASS' if check.passed else 'FAIL'} {check.name} {extras} residual={residual}")
        lines.append(f"{'PASS' if report.passed else 'FAIL'} overall ({len(report.checks)} checks)")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0 if report.passed else 1


# -------------------------------------------------------------------- dump


def _rational_pair(x) -> str:
    frac = Fraction(x)
    return f"{frac.numerator}/{frac.denominator}"


def _dump_one(k: int, l: int, q: QParam, what: str, cap: int | None) -> dict:
    header = {"k": k, "l": l, "q": scalar_repr(q.q), "backend": q.backend, "what": what}
    if what.startswith("sigma:"):
        shape = CornerShape(k, l)
        p = int(what.split(":", 1)[1])
        matrix = generator_matrix(shape, p, q, cap)
        header["p"] = p
        header["basis"] = enumerate_basis(shape, cap).labels()
    elif what == "hamiltonian":
        shape = CornerShape(k, l)
        matrix = build_hamiltonian(shape, q, cap)
        header["basis"] = enumerate_basis(shape, cap).labels()
        trace = linalg.trace(matrix)
        header["trace"] = _rational_pair(trace) if q.is_exact else repr(float(trace))
    elif what == "cmatrix":
        matrix = intertwiner_matrix(k, q)
        header["basis"] = [str(p) for p in range(2, k + 3)]
    elif what == "limit":
        matrix = path_adjacency(k, exact=q.is_exact)
        header["basis"] = [str(p) for p in range(2, k + 3)]
    else:
        raise ValueError(f"unknown dump target {what!r} (use sigma:P, hamiltonian, cmatrix, or limit)")
    header["entries"] = [[_format_entry(x) for x in row] for row in matrix]
    return header


def cmd_dump(args) -> int:
    if args.k < 0 or args.l < 0:
        raise ValueError("k and l must be non-negative")
    q_values = _parse_q_values(args)
    whats = args.what or ["hamiltonian"]
    blocks = [_dump_one(args.k, args.l, q, what, args.dim_cap) for q in q_values for what in whats]
    if args.format == "json":
        text = _json_dumps({"command": "dump", "dumps": blocks})
    elif args.format == "csv":
        raise ValueError("dump supports text or json output")
    else:
        lines = []
        for block in blocks:
            entries = block.pop("entries")
            lines.append(json.dumps(block, sort_keys=True))
            for row in entries:
                lines.append(" ".join(row))
            lines.append("")
        text = "\n".join(lines)
    _emit(text, args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NonGenericParameter as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
