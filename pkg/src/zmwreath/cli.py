"""Command-line front end: ``zmw <command> ...``.

Exit codes: 0 success, 1 a verified identity failed, 2 bad input,
3 a resource bound would be exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import kernels
from .errors import CapabilityError, ContractError, DomainError, ModelError, ResourceBoundError
from .numeric import close, configure_precision, is_zero, render, to_json_value
from .spectral_group import (
    CentralFunction,
    central_function_from_json,
    load_model,
    parseval_check,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_BOUND = 3

GENERATOR = "numpy.random.PCG64"


# --- input helpers ---------------------------------------------------------------------------


def _read_json(text: str):
    """Inline JSON (starting with ``[`` or ``{``) or a path to a JSON file."""
    stripped = text.strip()
    if stripped[:1] in "[{":
        return json.loads(stripped)
    try:
        return json.loads(Path(text).read_text())
    except OSError as exc:
        raise ModelError(f"cannot read {text}: {exc}") from None


def _model_source(text: str):
    from .spectral_group import BUILTIN_MODELS

    if text.lower() in BUILTIN_MODELS:
        return f"builtin:{text}"
    return text


def _load(args):
    model = load_model(_model_source(args.model))
    if getattr(args, "z", None):
        z = central_function_from_json(model, _read_json(args.z))
    else:
        z = _default_z(model, args.model)
    return model, z


def _default_z(model, source):
    """Coefficients stored in a u1 model file, else the constant function 1."""
    path = Path(source)
    if not model.is_finite and path.is_file():
        data = json.loads(path.read_text())
        if "coeffs" in data:
            return central_function_from_json(model, {"coeffs": data["coeffs"]})
    return CentralFunction.constant(model)


def _out(args):
    return sys.stdout


def _header(args, target, **extra) -> str:
    head = {
        "generator": GENERATOR,
        "seed": args.seed,
        "target": target,
        "kernel": kernels.BACKEND,
    }
    head.update(extra)
    return json.dumps({"header": head}, separators=(",", ":"))


# --- zmeasure table ----------------------------------------------------------------------------


def cmd_zmeasure_table(args) -> int:
    from .zmeasure import dim_wreath, enumerate_families, family_zmeasure

    model, z = _load(args)
    rows = []
    total = model.zero()
    for family in enumerate_families(args.n, model):
        M = family_zmeasure(z, family)
        D = dim_wreath(family, model)
        total = total + M
        rows.append((family.dumps(model.irrep_labels), M, D, M / D))
    out = _out(args)
    if args.format == "json":
        doc = {
            "n": args.n,
            "rows": [
                {"family": json.loads(f), "M": to_json_value(M), "DIM": D, "phi": to_json_value(p)}
                for f, M, D, p in rows
            ],
            "checksum": to_json_value(total),
        }
        out.write(json.dumps(doc) + "\n")
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["family", "M", "DIM", "phi"])
        for f, M, D, p in rows:
            writer.writerow([f, render(M), D, render(p)])
        out.write(f"# checksum sum(M) = {render(total)}\n")
    return EXIT_OK if close(total, 1) else EXIT_FAILED


# --- verify ------------------------------------------------------------------------------------


class Report:
    def __init__(self, out):
        self.out = out
        self.failures = 0

    def check(self, name, lhs, rhs, ok=None):
        if ok is None:
            ok = close(lhs, rhs)
        if not ok:
            self.failures += 1
        self.out.write(f"{'PASS' if ok else 'FAIL'} {name}: lhs={render(lhs)} rhs={render(rhs)}\n")


def _suite_normalization(args, model, z, report):
    from .zmeasure import normalization_sum

    for k in range(args.n + 1):
        report.check(f"normalization n={k}", normalization_sum(z, k), 1)


def _suite_harmonicity(args, model, z, report):
    from .zmeasure import enumerate_families, harmonicity_residual

    for k in range(args.n):
        worst = model.zero()
        bad = None
        for family in enumerate_families(k, model):
            r = harmonicity_residual(z, family)
            if not is_zero(r):
                bad, worst = family, r
                break
        name = f"harmonicity level {k}" + (f" at {bad.dumps()}" if bad is not None else "")
        report.check(name, worst, 0)


def _suite_ewens(args, model, z, report):
    from .wreath import (
        ENUMERATION_BOUND,
        ewens_mass,
        enumerate_wreath,
        total_mass,
        transition_probability,
    )

    bound = args.bound or ENUMERATION_BOUND
    for k in range(args.n + 1):
        report.check(f"ewens total mass n={k}", total_mass(z, k, bound), 1)
    # exact one-step transition from degree 1 to degree 2
    upper = list(enumerate_wreath(model, 2, bound))
    for y in upper:
        pushed = sum(
            (ewens_mass(z, x) * transition_probability(z, x, y) for x in enumerate_wreath(model, 1, bound)),
            model.zero(),
        )
        report.check(f"transition law at {json.dumps(y.to_json())}", pushed, ewens_mass(z, y))


def _suite_projection(args, model, z, report):
    from .wreath import ENUMERATION_BOUND, ewens_mass, enumerate_wreath, fiber, project

    bound = args.bound or ENUMERATION_BOUND
    for k in range(args.n + 1):
        bad = 0
        worst = (model.zero(), model.zero())
        for x in enumerate_wreath(model, k, bound):
            ys = fiber(x)
            mass = sum((ewens_mass(z, y) for y in ys), model.zero())
            if not close(mass, ewens_mass(z, x)) or any(project(y) != x for y in ys):
                bad += 1
                worst = (mass, ewens_mass(z, x))
        report.check(f"fiber pushforward n={k} ({bad} failures)", *worst, ok=bad == 0)


def _load_table(model, n, path):
    """Character tables from a ``characters table`` JSON document."""
    from .zmeasure import family_from_json
    from .finite_characters import ClassFunctionTable, wreath_classes
    from .numeric import to_scalar

    doc = _read_json(path)
    types = [family_from_json(model, t, by_class=True) for t in doc["classes"]]
    known = set(wreath_classes(model, n))
    if set(types) != known:
        raise ModelError("character table classes do not match the classes of S_n(G)")
    tables = {}
    for entry in doc["characters"]:
        family = family_from_json(model, entry["family"])
        values = {t: to_scalar(v, model.exact) for t, v in zip(types, entry["values"])}
        tables[family] = ClassFunctionTable(model, n, values)
    return tables


def _suite_characters(args, model, z, report):
    from .finite_characters import character_table, theorem_psi_check, a_coefficient
    from .numeric import abs2, pochhammer
    from .spectral_group import total_I
    from .zmeasure import family_zmeasure
    from math import factorial

    n = args.n
    tables = _load_table(model, n, args.table) if args.table else character_table(model, n)
    families = list(tables)
    for a in families:
        for b in families:
            expected = 1 if a == b else 0
            report.check(
                f"orthogonality <{a.dumps()},{b.dumps()}>", tables[a].inner(tables[b]), expected
            )
    if args.table:
        return
    p = [z] * max(n, 1)
    for family in families:
        lhs, rhs = theorem_psi_check(family, p)
        report.check(f"psi theorem at {family.dumps()}", lhs, rhs)
        a = a_coefficient(z, family)
        report.check(
            f"z-measure from a(Lambda) at {family.dumps()}",
            factorial(n) / pochhammer(total_I(z), n) * abs2(a),
            family_zmeasure(z, family),
        )


def _suite_parseval(args, model, z, report):
    lhs, rhs, _ = parseval_check(z)
    report.check("parseval <z,z> = sum |alpha|^2", lhs, rhs)


def _suite_u1(args, model, z, report):
    from .zmeasure import u1_identity

    for k in range(args.n + 1):
        lhs, rhs = u1_identity(z, k)
        report.check(f"u1 identity n={k}", lhs, rhs)
    lhs1, _ = u1_identity(z, 1)
    report.check("u1 identity at n=1 against <z,z>", lhs1, parseval_check(z)[0])


SUITES = {
    "normalization": _suite_normalization,
    "harmonicity": _suite_harmonicity,
    "ewens": _suite_ewens,
    "projection": _suite_projection,
    "characters": _suite_characters,
    "parseval": _suite_parseval,
    "u1": _suite_u1,
}


def cmd_verify(args) -> int:
    model, z = _load(args)
    report = Report(_out(args))
    SUITES[args.suite](args, model, z, report)
    report.out.write(f"# {args.suite}: {'ok' if not report.failures else f'{report.failures} failed'}\n")
    return EXIT_FAILED if report.failures else EXIT_OK


# --- sampling ----------------------------------------------------------------------------------


def _sample_ewens(args, model, z, rng, out):
    from .wreath import ColoredPermutation, cycle_type, sample_ewens_arrays

    colors, perms = sample_ewens_arrays(z, args.n, args.count, rng)
    out.write(_header(args, "ewens", n=args.n, count=args.count) + "\n")
    for c, p in zip(colors, perms):
        x = ColoredPermutation(c.tolist(), p.tolist(), model)
        row = x.to_json()
        row["type"] = cycle_type(x).to_json(model.class_labels)
        out.write(json.dumps(row, separators=(",", ":")) + "\n")


def _sample_family(args, model, z, rng, out):
    from .zmeasure import SAMPLE_BOUND, sample_families

    bound = args.bound or SAMPLE_BOUND
    families = sample_families(z, args.n, args.count, rng, bound)
    out.write(_header(args, "family", n=args.n, count=args.count) + "\n")
    for family in families:
        out.write(json.dumps({"family": family.to_json(model.irrep_labels)}, separators=(",", ":")) + "\n")


def _sample_thoma(args, model, z, rng, out):
    from .thoma import DirichletParams, mix_spectral, point_mass_sampler, uniform_atoms_sampler

    params = DirichletParams.from_z(z)
    # irreps without listed atoms get the point mass alpha = (1)
    samplers = {zeta: point_mass_sampler() for zeta in params.labels}
    if args.atoms:
        for k, v in _read_json(args.atoms).items():
            samplers[model.parse_irrep_label(k)] = uniform_atoms_sampler(
                [(tuple(map(Fraction, a)), tuple(map(Fraction, b))) for a, b in v]
            )
    points = [mix_spectral(z, samplers, rng) for _ in range(args.count)]
    out.write(_header(args, "thoma", count=args.count) + "\n")
    for omega in points:
        out.write(json.dumps(omega.to_json(), separators=(",", ":")) + "\n")


SAMPLERS = {"ewens": _sample_ewens, "family": _sample_family, "thoma": _sample_thoma}


def cmd_sample(args) -> int:
    model, z = _load(args)
    if args.count < 0:
        raise DomainError("--count must be nonnegative")
    rng = np.random.Generator(np.random.PCG64(args.seed))
    SAMPLERS[args.target](args, model, z, rng, _out(args))
    return EXIT_OK


# --- ewens / characters / thoma ------------------------------------------------------------------


def cmd_ewens_sum(args) -> int:
    from .wreath import ENUMERATION_BOUND, total_mass

    _, z = _load(args)
    total = total_mass(z, args.n, args.bound or ENUMERATION_BOUND)
    _out(args).write(render(total) + "\n")
    return EXIT_OK if close(total, 1) else EXIT_FAILED


def cmd_ewens_sample(args) -> int:
    args.target = "ewens"
    return cmd_sample(args)


def cmd_characters_table(args) -> int:
    from .finite_characters import character_table, wreath_classes

    model = load_model(_model_source(args.model))
    model.require_elements()
    if args.bound:
        wreath_classes(model, args.n, args.bound)
    tables = character_table(model, args.n)
    types = list(wreath_classes(model, args.n))
    doc = {
        "model": model.name,
        "n": args.n,
        "classes": [t.to_json(model.class_labels) for t in types],
        "characters": [
            {"family": f.to_json(model.irrep_labels), "values": [to_json_value(tab[t]) for t in types]}
            for f, tab in tables.items()
        ],
    }
    _out(args).write(json.dumps(doc) + "\n")
    return EXIT_OK


def cmd_thoma_kernel(args) -> int:
    from .thoma import kernel, thoma_point_from_json
    from .zmeasure import family_from_json

    model = load_model(_model_source(args.model))
    family = family_from_json(model, _read_json(args.family))
    omega = thoma_point_from_json(model, _read_json(args.omega))
    value = kernel(family, omega, model)
    if isinstance(value, float):
        import mpmath

        text = mpmath.nstr(mpmath.mpf(value), min(args.precision or 17, 17))
    else:
        text = render(value)
    _out(args).write(text + "\n")
    return EXIT_OK


# --- parser ---------------------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, *, z=True, n=True):
    p.add_argument("--model", default="z2", help="model JSON path, builtin:<name> or a builtin name")
    if z:
        p.add_argument("--z", help="central function: JSON path or inline JSON (default: constant 1)")
    if n:
        p.add_argument("--n", type=int, default=1)
    p.add_argument("--precision", type=int, help="decimal digits for the float backend (>= 15)")
    p.add_argument("--bound", type=int, help="override the command's resource bound")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _seeded(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zmw", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    zm = sub.add_parser("zmeasure", help="z-measure tables")
    zm_sub = zm.add_subparsers(dest="action", required=True)
    p = zm_sub.add_parser("table", help="(family, M, DIM, phi) over Y_n")
    _common(p)
    p.set_defaults(func=cmd_zmeasure_table)

    p = sub.add_parser("verify", help="check a suite of identities")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--table", help="character table JSON to check instead of computing one")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="JSON-lines samples")
    p.add_argument("target", choices=sorted(SAMPLERS))
    p.add_argument("--atoms", help="thoma: per-irrep list of [alpha, beta] atoms (default: the point mass alpha=(1))")
    _common(p)
    _seeded(p)
    p.set_defaults(func=cmd_sample)

    ew = sub.add_parser("ewens", help="Ewens measure on S_n(G)")
    ew_sub = ew.add_subparsers(dest="action", required=True)
    p = ew_sub.add_parser("sum", help="exact total mass")
    _common(p)
    p.set_defaults(func=cmd_ewens_sum)
    p = ew_sub.add_parser("sample", help="sampled elements and their types")
    _common(p)
    _seeded(p)
    p.set_defaults(func=cmd_ewens_sample, atoms=None)

    ch = sub.add_parser("characters", help="irreducible characters of S_n(G)")
    ch_sub = ch.add_subparsers(dest="action", required=True)
    p = ch_sub.add_parser("table", help="JSON character table")
    _common(p, z=False)
    p.set_defaults(func=cmd_characters_table)

    th = sub.add_parser("thoma", help="Thoma-layer quantities")
    th_sub = th.add_subparsers(dest="action", required=True)
    p = th_sub.add_parser("kernel", help="K(Lambda, omega)")
    p.add_argument("--family", required=True)
    p.add_argument("--omega", required=True)
    _common(p, z=False, n=False)
    p.set_defaults(func=cmd_thoma_kernel)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        configure_precision(args.precision)
        if getattr(args, "n", 0) is not None and getattr(args, "n", 0) < 0:
            raise DomainError("--n must be nonnegative")
        return args.func(args)
    except ResourceBoundError as exc:
        print(f"zmw: resource bound: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (ModelError, DomainError, CapabilityError, ContractError, ValueError, KeyError) as exc:
        print(f"zmw: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except json.JSONDecodeError as exc:
        print(f"zmw: invalid JSON: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
