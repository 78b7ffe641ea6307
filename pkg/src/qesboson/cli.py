"""Batch front-end: model checks, block spectra, scans and the sextic map.

Exit codes are a stable contract: 0 success, 1 usage error, 2 model parse
error, 3 declared charge not conserved, 4 numerical failure or tolerance
exceeded.  Output is deterministic: fixed key order, fixed sort orders,
floats serialized with full double precision.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .algebra import charge_operator, commutator, conserves, conserving_pairs, is_hermitian
from .errors import (
    NonConservingHamiltonian,
    ParseError,
    QesBosonError,
)
from .models import ModelFile, build_shg, parse_model_file, shg_charge
from .oracle import block_spectrum, enumerate_block
from .reduction import energy_polynomial_table, qes_spectrum
from .sextic import (
    check_gauge_identity,
    constant_shift_match,
    fd_spectrum,
    gauge_superpotential,
    sextic_potential,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 instead of argparse's default 2
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="qesboson", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="conservation and hermiticity report")
    check.add_argument("model", help="model file path")
    check.add_argument("--output", choices=("text", "json"), default="text")

    spectrum = sub.add_parser("spectrum", help="spectrum of one charge block")
    spectrum.add_argument("model")
    spectrum.add_argument("--kappa", type=int, required=True)
    spectrum.add_argument("--method", choices=("oracle", "reduced", "both"), default="both")
    spectrum.add_argument("--tol", type=float, default=1e-9)
    spectrum.add_argument("--mode", choices=("corrected", "paper-literal"), default="corrected")

    scan = sub.add_parser("scan", help="CSV scan comparing both methods per block")
    scan.add_argument("model")
    scan.add_argument("--kappa-max", type=int, required=True)
    scan.add_argument("--tol", type=float, default=1e-9)
    scan.add_argument("--mode", choices=("corrected", "paper-literal"), default="corrected")

    polys = sub.add_parser("polys", help="energy polynomials of one block")
    polys.add_argument("model")
    polys.add_argument("--kappa", type=int, required=True)
    polys.add_argument("--mode", choices=("corrected", "paper-literal"), default="corrected")
    polys.add_argument("--output", choices=("text", "json"), default="text")

    sextic = sub.add_parser("sextic", help="superpotential, sextic coefficients, gauge check")
    sextic.add_argument("--w1", type=float, required=True)
    sextic.add_argument("--w2", type=float, required=True)
    sextic.add_argument("--kre", type=float, required=True)
    sextic.add_argument("--kim", type=float, default=0.0)
    sextic.add_argument("--kbre", type=float, required=True)
    sextic.add_argument("--kbim", type=float, default=0.0)
    sextic.add_argument("--k", type=int, required=True)
    sextic.add_argument("--fd", action="store_true", help="run the finite-difference comparison")
    sextic.add_argument("--fd-halfwidth", type=float, default=6.0)
    sextic.add_argument("--fd-grid", type=int, default=4000)
    sextic.add_argument("--output", choices=("text", "json"), default="text")

    return parser


def _load_model(path: str) -> ModelFile:
    text = Path(path).read_text(encoding="utf-8")
    model = parse_model_file(text)
    return ModelFile(charge=model.charge, terms=model.terms, name=Path(path).name)


def _require_conserving(model: ModelFile) -> None:
    h = model.hamiltonian()
    if not conserves(h, model.charge):
        raise NonConservingHamiltonian(
            f"declared charge ({model.charge.s}, {model.charge.p}) is not conserved"
        )


def _dump_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _eig_pairs(values) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in values]


def _cmd_check(args) -> int:
    model = _load_model(args.model)
    h = model.hamiltonian()
    ok = conserves(h, model.charge)
    herm = is_hermitian(h)
    pairs = conserving_pairs(h, limit=12)
    comm = None
    if not ok:
        comm = str(commutator(charge_operator(model.charge), h))
    if args.output == "json":
        _dump_json(
            {
                "model": model.name,
                "charge": [model.charge.s, model.charge.p],
                "conserves": ok,
                "hermitian": herm,
                "conserving_charges": [list(pair) for pair in pairs],
                "commutator": comm,
            }
        )
    else:
        print(f"model: {model.name}")
        yn = "yes" if ok else "no"
        print(f"conserves: {yn} ({model.charge.s},{model.charge.p})")
        print(f"hermitian: {'yes' if herm else 'no'}")
        charges = " ".join(f"({s},{p})" for s, p in pairs)
        print(f"conserving charges (s,p <= 12): {charges if charges else 'none'}")
        if comm is not None:
            print(f"[K,H] = {comm}")
    return 0 if ok else 3


def _cmd_spectrum(args) -> int:
    model = _load_model(args.model)
    _require_conserving(model)
    h = model.hamiltonian()
    basis = enumerate_block(model.charge, args.kappa)
    payload = {
        "kappa": args.kappa,
        "dimension": len(basis),
        "basis": [[st.n1, st.n2] for st in basis],
        "oracle": None,
        "reduced": None,
        "max_deviation": None,
        "residuals": {"oracle": None, "reduced": None},
    }
    oracle_vals = reduced_vals = None
    if args.method in ("oracle", "both"):
        report = block_spectrum(h, model.charge, args.kappa)
        oracle_vals = np.array(report.eigenvalues)
        payload["oracle"] = _eig_pairs(report.eigenvalues)
        payload["residuals"]["oracle"] = report.max_residual
    if args.method in ("reduced", "both"):
        report = qes_spectrum(h, model.charge, args.kappa, mode=args.mode)
        reduced_vals = np.array(report.eigenvalues)
        payload["reduced"] = _eig_pairs(report.eigenvalues)
        payload["residuals"]["reduced"] = report.max_residual
    code = 0
    if oracle_vals is not None and reduced_vals is not None:
        deviation = (
            float(np.max(np.abs(oracle_vals - reduced_vals)))
            if len(oracle_vals)
            else 0.0
        )
        payload["max_deviation"] = deviation
        if deviation > args.tol:
            code = 4
    _dump_json(payload)
    return code


def _cmd_scan(args) -> int:
    model = _load_model(args.model)
    _require_conserving(model)
    h = model.hamiltonian()
    lines = ["kappa,dim,index,eig_re,eig_im,deviation"]
    code = 0
    for kappa in range(args.kappa_max + 1):
        oracle = block_spectrum(h, model.charge, kappa)
        reduced = qes_spectrum(h, model.charge, kappa, mode=args.mode)
        for index in range(oracle.dimension):
            ev = oracle.eigenvalues[index]
            deviation = abs(ev - reduced.eigenvalues[index])
            if deviation > args.tol:
                code = 4
            lines.append(
                f"{kappa},{oracle.dimension},{index},{ev.real!r},{ev.imag!r},{deviation!r}"
            )
    print("\n".join(lines))
    return code


def _render_rational(value) -> list[str]:
    return [str(value.re), str(value.im)]


def _cmd_polys(args) -> int:
    model = _load_model(args.model)
    _require_conserving(model)
    h = model.hamiltonian()
    table = energy_polynomial_table(h, model.charge, args.kappa, mode=args.mode)
    if args.output == "json":
        _dump_json(
            {
                "kappa": table.kappa,
                "mode": table.mode,
                "dimension": table.dimension,
                "termination_degree": table.termination_degree,
                "polys": [
                    [_render_rational(c) for c in poly.coeffs] for poly in table.polys
                ],
            }
        )
    else:
        print(
            f"# energy polynomials: kappa={table.kappa}"
            f" dimension={table.dimension} mode={table.mode}"
        )
        for m, poly in enumerate(table.polys):
            print(f"P_{m}(E) = {poly.render('E')}")
        print(
            f"# termination degree {table.termination_degree};"
            " roots of the last polynomial are the block spectrum"
        )
    return 0


def _cmd_sextic(args) -> int:
    w = gauge_superpotential(args.w1, args.w2, complex(args.kre, args.kim),
                             complex(args.kbre, args.kbim), args.k)
    pot = sextic_potential(args.w1, args.w2, complex(args.kre, args.kim),
                           complex(args.kbre, args.kbim), args.k)
    result = None
    if args.kim == 0.0 and args.kbim == 0.0:
        # the change of variable behind the identity needs real couplings
        result = check_gauge_identity(
            args.w1, args.w2, args.kre, args.kbre, args.k,
        )
    fd_payload = None
    if args.fd:
        h = build_shg(args.w1, args.w2, complex(args.kre, args.kim),
                      complex(args.kbre, args.kbim))
        block_levels = qes_spectrum(h, shg_charge(), args.k)
        reference = np.array([v.real for v in block_levels.eigenvalues])
        fd_levels = fd_spectrum(pot, args.fd_halfwidth, args.fd_grid)
        shift, max_dev = constant_shift_match(fd_levels, reference)
        fd_payload = {
            "block_levels": [float(v) for v in reference],
            "fd_levels": [float(v) for v in fd_levels],
            "shift": shift,
            "max_deviation": max_dev,
        }
    gauge_payload = None
    if result is not None:
        conv = result.convention
        gauge_payload = {
            "residual": result.residual,
            "kinetic": conv.kinetic,
            "w_sign": conv.w_sign,
            "exponent_sign": conv.exponent_sign,
            "shift": conv.shift,
        }
    if args.output == "json":
        _dump_json(
            {
                "superpotential": {
                    "inverse": _render_rational(w.inverse_coeff),
                    "linear": _render_rational(w.linear_coeff),
                    "cubic": _render_rational(w.cubic_coeff),
                },
                "potential": {
                    "c0": _render_rational(pot.c0),
                    "c2": _render_rational(pot.c2),
                    "c4": _render_rational(pot.c4),
                    "c6": _render_rational(pot.c6),
                },
                "gauge_identity": gauge_payload,
                "fd": fd_payload,
            }
        )
    else:
        print(
            f"superpotential: W(y) = ({w.inverse_coeff})/y"
            f" + ({w.linear_coeff})*y + ({w.cubic_coeff})*y^3"
        )
        print(f"potential: c0={pot.c0} c2={pot.c2} c4={pot.c4} c6={pot.c6}")
        if gauge_payload is None:
            print("gauge identity: skipped (needs real couplings)")
        else:
            print(
                f"gauge identity: residual={gauge_payload['residual']!r}"
                f" kinetic={gauge_payload['kinetic']}"
                f" w_sign={gauge_payload['w_sign']:+d}"
                f" exponent_sign={gauge_payload['exponent_sign']:+d}"
                f" shift={gauge_payload['shift']!r}"
            )
        if fd_payload is not None:
            print(f"block levels: {fd_payload['block_levels']}")
            print(f"fd levels: {fd_payload['fd_levels']}")
            print(
                f"fd shift estimate: {fd_payload['shift']!r}"
                f" max deviation: {fd_payload['max_deviation']!r}"
            )
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {
            "check": _cmd_check,
            "spectrum": _cmd_spectrum,
            "scan": _cmd_scan,
            "polys": _cmd_polys,
            "sextic": _cmd_sextic,
        }[args.command]
        return handler(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"cannot read model file: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except NonConservingHamiltonian as exc:
        print(f"non-conserving model: {exc}", file=sys.stderr)
        return 3
    except QesBosonError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
