"""Command-line front end.

Exit status: 0 on success, 1 for domain errors (bad numbers, failed
preconditions, malformed input files), 2 for usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import jsonschema
import numpy as np

from . import cmatrix, schemas
from .dynamics import (
    Orientation,
    PrecessionSpec,
    heisenberg_closed_form,
    heisenberg_integrate,
    schrodinger_closed_form,
    schrodinger_integrate,
    trajectory_rows,
    trajectory_to_dict,
)
from .errors import MalformedInputError, ZeemanSymError
from .repanalysis import (
    character,
    decompose_by_character,
    decompose_by_weights,
    group_element,
    residual_symmetry,
)
from .so3rep import (
    Basis,
    Generators,
    SpinLabel,
    SpinRep,
    algebra_residual,
    casimir_residual,
    defining_rep,
    direct_sum,
    generators_to_dict,
    rep_to_dict,
    spherical_rep,
    tensor_product,
)
from .zeeman import SPECTRUM_CSV_HEADER, perturbed_hamiltonian, spectrum_rows, splitting_report

PROG = "zeemansym"
LOAD_TOL = 1e-10


class UsageError(Exception):
    pass


class NumericFlagError(ZeemanSymError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- helpers

def _float(flag: str, text: str) -> float:
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise NumericFlagError(f"{flag}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise NumericFlagError(f"{flag}: must be finite, got {text!r}")
    return value


def _int(flag: str, text: str) -> int:
    try:
        return int(text)
    except (TypeError, ValueError):
        raise NumericFlagError(f"{flag}: not an integer: {text!r}") from None


def _label(args) -> SpinLabel | None:
    if getattr(args, "two_l", None) is not None:
        return SpinLabel(_int("--two-l", args.two_l))
    if getattr(args, "l", None) is not None:
        try:
            return SpinLabel.from_l(args.l)
        except ZeemanSymError as exc:
            raise NumericFlagError(f"--l: {exc}") from None
    return None


def _rep_from_args(args) -> SpinRep:
    label = _label(args)
    if label is None:
        raise UsageError("one of --l, --two-l or --input is required")
    if args.basis == Basis.CARTESIAN.value:
        if label.two_l != 2:
            raise MalformedInputError("the Cartesian basis is only defined for l=1")
        return defining_rep()
    return spherical_rep(label)


def _fmt(x) -> str:
    return repr(float(x) + 0.0) if isinstance(x, (float, np.floating)) else str(x)


def _dump_json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _dump_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def _dump_table(header, rows) -> str:
    cells = [list(map(str, header))] + [[_table_cell(x) for x in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


def _table_cell(x) -> str:
    if isinstance(x, (float, np.floating)):
        return f"{float(x) + 0.0:.10g}"
    return str(x)


def _matrix_rows(named):
    rows = []
    for name, m in named:
        n = m.shape[0]
        for i in range(n):
            for j in range(n):
                rows.append([name, i, j, m[i, j].real + 0.0, m[i, j].imag + 0.0])
    return rows


def _emit(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- loading

def _check_generators(gens, what: str) -> None:
    for name, m in zip(("lx", "ly", "lz"), gens):
        r = cmatrix.hermiticity_residual(m)
        if r > LOAD_TOL:
            raise MalformedInputError(f"{what}: invariant 'hermitian {name}' violated, residual {r:.3e}")
    dims = {m.shape[0] for m in gens}
    if len(dims) != 1:
        raise MalformedInputError(f"{what}: generators have unequal dimensions {sorted(dims)}")
    r = algebra_residual(gens)
    if r > LOAD_TOL:
        raise MalformedInputError(f"{what}: invariant 'commutation relations' violated, residual {r:.3e}")


def load_rep(path) -> SpinRep | Generators:
    """Read a SpinRep document or a bare generator triple and validate it."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedInputError(f"malformed input: {path}: {exc}") from None
    schema = schemas.SPIN_REP if isinstance(doc, dict) and "two_l" in doc else schemas.GENERATORS
    try:
        jsonschema.validate(doc, schema)
        gens = Generators(*(cmatrix.matrix_from_dict(doc[k]) for k in ("lx", "ly", "lz")))
    except (jsonschema.ValidationError, ZeemanSymError) as exc:
        msg = exc.message if isinstance(exc, jsonschema.ValidationError) else str(exc)
        raise MalformedInputError(f"malformed input: {path}: {msg}") from None
    _check_generators(gens, str(path))
    if schema is schemas.GENERATORS:
        return gens
    try:
        rep = SpinRep(SpinLabel(doc["two_l"]), *gens, basis=Basis(doc["basis"]))
    except ZeemanSymError as exc:
        raise MalformedInputError(f"malformed input: {path}: {exc}") from None
    r = casimir_residual(rep)
    if r > LOAD_TOL:
        raise MalformedInputError(f"{path}: invariant 'casimir' violated, residual {r:.3e}")
    if rep.basis is Basis.SPHERICAL:
        expected = np.diag([float(m) for m in rep.label.weights()])
        r = cmatrix.max_abs(rep.lz - expected)
        if r > LOAD_TOL:
            raise MalformedInputError(f"{path}: invariant 'diagonal lz' violated, residual {r:.3e}")
    return rep


# ---------------------------------------------------------------- commands

def cmd_generators(args) -> str:
    if args.input:
        obj = load_rep(args.input)
    else:
        obj = _rep_from_args(args)
        if args.tensor is not None:
            try:
                other = SpinLabel.from_l(args.tensor)
            except ZeemanSymError as exc:
                raise NumericFlagError(f"--tensor: {exc}") from None
            if obj.basis is not Basis.SPHERICAL:
                raise MalformedInputError("--tensor needs the spherical basis")
            obj = tensor_product(obj, spherical_rep(other))
    if args.format == "json":
        return _dump_json(rep_to_dict(obj) if isinstance(obj, SpinRep) else generators_to_dict(obj))
    rows = _matrix_rows(zip(("lx", "ly", "lz"), obj.generators if isinstance(obj, SpinRep) else obj))
    header = ["op", "entry_row", "entry_col", "re", "im"]
    return _dump_csv(header, rows) if args.format == "csv" else _dump_table(header, rows)


def cmd_character(args) -> str:
    theta = _float("--theta", args.theta)
    if args.input:
        obj = load_rep(args.input)
        if isinstance(obj, SpinRep):
            label = obj.label
            value = character(label, theta)
        else:
            label = None
            value = complex(np.trace(group_element(obj, (0.0, 0.0, theta))))
    else:
        label = _label(args)
        if label is None:
            raise UsageError("one of --l, --two-l or --input is required")
        value = character(label, theta)
    re, im = value.real + 0.0, value.imag + 0.0
    if args.format == "json":
        return _dump_json({"two_l": None if label is None else label.two_l, "theta": theta, "re": re, "im": im})
    if args.format == "csv":
        return _dump_csv(["theta", "re", "im"], [[theta, re, im]])
    return f"{re:.12g}\n" if abs(im) <= 1e-12 else f"{re:.12g} {im:+.12g}i\n"


def _sum_labels(items) -> list[SpinLabel]:
    out = []
    for text in items:
        try:
            out.append(SpinLabel.from_l(text))
        except ZeemanSymError as exc:
            raise NumericFlagError(f"--sum: {exc}") from None
    return out


def cmd_decompose(args) -> str:
    tol = _float("--tol", args.tol)
    if args.input and args.sum:
        raise UsageError("--input and --sum are mutually exclusive")
    if args.input:
        obj = load_rep(args.input)
        gens = obj.generators if isinstance(obj, SpinRep) else obj
    elif args.sum:
        gens, _ = direct_sum([spherical_rep(label) for label in _sum_labels(args.sum)])
    else:
        raise UsageError("one of --input or --sum is required")
    by_weights = decompose_by_weights(gens, tol)
    decomp = by_weights
    if args.method in ("character", "both"):
        # no block can be wider than the whole space
        top = SpinLabel(gens[2].shape[0] - 1)
        by_char = decompose_by_character(lambda t: np.trace(group_element(gens, (0.0, 0.0, t))), top)
        if args.method == "both" and by_char != by_weights:
            raise ZeemanSymError(
                f"weight and character decompositions disagree: {by_weights.to_dict()} vs {by_char.to_dict()}"
            )
        decomp = by_char
    if args.format == "json":
        return _dump_json(decomp.to_dict())
    rows = [[label.two_l, str(label), mult] for label, mult in decomp.blocks]
    header = ["two_l", "l", "mult"]
    return _dump_csv(header, rows) if args.format == "csv" else _dump_table(header, rows)


def cmd_symmetry(args) -> str:
    tol = _float("--tol", args.tol)
    rep = load_rep(args.input) if args.input else _rep_from_args(args)
    if not isinstance(rep, SpinRep):
        raise MalformedInputError("symmetry needs a SpinRep document, not a bare generator triple")
    sources = [args.hamiltonian is not None, args.field_gauss is not None]
    if sum(sources) > 1:
        raise UsageError("--hamiltonian and --field-gauss are mutually exclusive")
    if args.hamiltonian is not None:
        try:
            jsonschema.validate(doc := json.loads(Path(args.hamiltonian).read_text()), schemas.MATRIX)
            h = cmatrix.matrix_from_dict(doc)
        except (OSError, json.JSONDecodeError, jsonschema.ValidationError, ZeemanSymError) as exc:
            raise MalformedInputError(f"malformed input: {args.hamiltonian}: {exc}") from None
    elif args.field_gauss is not None:
        h = perturbed_hamiltonian(rep, _float("--field-gauss", args.field_gauss))
    else:
        coupling = _float("--coupling", args.coupling)
        h = -coupling * getattr(rep, "l" + args.axis)
    report = residual_symmetry(h, rep, tol)
    if args.format == "json":
        return _dump_json(report.to_dict())
    rows = [[name, report.residuals[name], "yes" if name in report.surviving else "no"] for name in ("Lx", "Ly", "Lz", "I")]
    header = ["generator", "residual", "survives"]
    body = _dump_csv(header, rows) if args.format == "csv" else _dump_table(header, rows)
    return body if args.format == "csv" else body + f"group: {report.group_name}\n"


def cmd_evolve(args) -> str:
    spec = PrecessionSpec(
        _float("--rate", args.rate), _float("--t-end", args.t_end), _float("--dt", args.dt)
    )
    every = _int("--every", args.every)
    if every < 1:
        raise NumericFlagError("--every must be at least 1")
    if args.picture == "schrodinger":
        init = Orientation(_float("--theta", args.theta), _float("--phi", args.phi))
        run = schrodinger_closed_form if args.method == "closed" else schrodinger_integrate
        traj = run(init, spec)
    else:
        init_ops = None
        if args.input:
            obj = load_rep(args.input)
            init_ops = obj.generators if isinstance(obj, SpinRep) else obj
        run = heisenberg_closed_form if args.method == "closed" else heisenberg_integrate
        traj = run(init_ops, spec)
    if every > 1:
        keep = list(range(0, len(traj.times), every))
        if keep[-1] != len(traj.times) - 1:
            keep.append(len(traj.times) - 1)
        traj.times = traj.times[keep]
        traj.states = [traj.states[k] for k in keep]
        traj.flags = [traj.flags[k] for k in keep] if traj.flags else []
        traj.vectors = [traj.vectors[k] for k in keep] if traj.vectors else []
    if args.format == "json":
        return _dump_json(trajectory_to_dict(traj))
    header, rows = trajectory_rows(traj)
    return _dump_csv(header, rows) if args.format == "csv" else _dump_table(header, rows)


def cmd_zeeman(args) -> str:
    field = _float("--field-gauss", args.field_gauss)
    if (args.n is None) == (args.n_max is None):
        raise UsageError("exactly one of --n or --n-max is required")
    if args.n is not None:
        ns = [_int("--n", args.n)]
    else:
        ns = list(range(1, _int("--n-max", args.n_max) + 1))
        if not ns:
            raise NumericFlagError("--n-max must be at least 1")
    spectra = [sp for n in ns for sp in splitting_report(n, field)]
    if args.format == "json":
        return _dump_json({"field_gauss": field + 0.0, "spectra": [sp.to_dict() for sp in spectra]})
    rows = spectrum_rows(spectra)
    if args.format == "csv":
        return _dump_csv(SPECTRUM_CSV_HEADER, rows)
    return _dump_table(SPECTRUM_CSV_HEADER, rows)


# ---------------------------------------------------------------- parser

def _add_common(p, formats=("json", "csv", "table")):
    p.add_argument("--format", choices=formats, default="json")
    p.add_argument("--output", metavar="PATH", help="write data here instead of stdout")


def _add_label(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--l", metavar="L", help="angular momentum, integer or k/2 (e.g. 1, 0.5, 3/2)")
    g.add_argument("--two-l", metavar="N", help="twice the angular momentum")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="so(3) representations and the normal Zeeman effect")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generators", help="emit L_x, L_y, L_z for a spin-l representation")
    _add_label(p)
    p.add_argument("--basis", choices=[b.value for b in Basis], default="spherical")
    p.add_argument("--tensor", metavar="L2", help="emit generators of the product with spin L2")
    p.add_argument("--input", metavar="PATH", help="reload and re-emit a generator file")
    _add_common(p)
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("character", help="character of a rotation by theta about z")
    _add_label(p)
    p.add_argument("--theta", required=True)
    p.add_argument("--input", metavar="PATH")
    _add_common(p)
    p.set_defaults(func=cmd_character)

    p = sub.add_parser("decompose", help="reduce a representation into irreducible blocks")
    p.add_argument("--input", metavar="PATH")
    p.add_argument("--sum", nargs="+", metavar="L", help="decompose the direct sum of these spins")
    p.add_argument("--method", choices=["weights", "character", "both"], default="weights")
    p.add_argument("--tol", default=repr(cmatrix.DEFAULT_TOL))
    _add_common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("symmetry", help="residual symmetry of a perturbed Hamiltonian")
    _add_label(p)
    p.add_argument("--basis", choices=[b.value for b in Basis], default="spherical")
    p.add_argument("--input", metavar="PATH", help="SpinRep document")
    p.add_argument("--hamiltonian", metavar="PATH", help="matrix JSON for the perturbation")
    p.add_argument("--field-gauss", help="use the Zeeman coupling for this field")
    p.add_argument("--axis", choices=["x", "y", "z"], default="z")
    p.add_argument("--coupling", default="1.0", help="perturbation -C * L_axis")
    p.add_argument("--tol", default=repr(cmatrix.DEFAULT_TOL))
    _add_common(p)
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("evolve", help="precession trajectory in either picture")
    p.add_argument("--picture", choices=["schrodinger", "heisenberg"], default="schrodinger")
    p.add_argument("--method", choices=["closed", "integrated"], default="integrated")
    p.add_argument("--theta", default="1.0")
    p.add_argument("--phi", default="0.0")
    p.add_argument("--rate", required=True, help="precession rate in radians per unit time")
    p.add_argument("--t-end", required=True)
    p.add_argument("--dt", required=True)
    p.add_argument("--every", default="1", help="keep every k-th sample (the last is always kept)")
    p.add_argument("--input", metavar="PATH", help="initial operators for the Heisenberg picture")
    _add_common(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("zeeman", help="hydrogen level splitting in a field along z")
    p.add_argument("--n")
    p.add_argument("--n-max", help="sweep n = 1..K")
    p.add_argument("--field-gauss", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_zeeman)
    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        text = args.func(args)
        _emit(args, text)
    except UsageError as exc:
        print(f"{PROG}: usage error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except ZeemanSymError as exc:
        print(f"{PROG}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{PROG}: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
