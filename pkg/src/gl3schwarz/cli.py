"""Command line front end.

`verify` runs the seeded identity suites and prints the deterministic
report; the remaining commands are one-shot evaluators that echo their
parsed inputs back together with the computed values, complex numbers as
[re, im] pairs throughout.

Exit codes: 0 all good, 1 failed checks or a domain error in an evaluator,
2 usage errors.
"""

from __future__ import annotations

import functools
import json
import sys
import time

import click
import numpy as np

from . import report as _report
from .appell import (
    F1Params,
    f1_euler,
    f1_series,
    k_integral,
    k_integral_substituted,
    picard_f1_identity_rhs,
    picard_integral,
)
from .derivs import MapJet2, deriv_quad
from .jets import BACKEND, Jet, monomials
from .lft import Eis, HeisenbergElem, decompose_heisenberg
from .picard import (
    j_invariants,
    modular_residual,
    modular_solve,
    order5_map,
    transform_abg,
)


class ComplexParam(click.ParamType):
    name = "complex"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        try:
            return complex(str(value).replace(" ", ""))
        except ValueError:
            self.fail(f"{value!r} is not a complex number", param, ctx)


class ComplexPairParam(click.ParamType):
    name = "complex,complex"

    def convert(self, value, param, ctx):
        parts = str(value).split(",")
        if len(parts) != 2:
            self.fail(f"{value!r} is not a comma-separated pair", param, ctx)
        try:
            return (complex(parts[0].strip()), complex(parts[1].strip()))
        except ValueError:
            self.fail(f"{value!r} is not a pair of complex numbers", param, ctx)


COMPLEX = ComplexParam()
CPAIR = ComplexPairParam()


def _cj(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _emit(obj) -> None:
    click.echo(json.dumps(obj, indent=2, sort_keys=True))


def _eval_errors(fn):
    """Map domain errors of wrapped operations to exit code 1."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            click.echo(json.dumps({"error": str(exc)}), err=True)
            sys.exit(1)

    return wrapper


@click.group()
def main():
    """Derivative quads, F1 values, moduli transforms, identity suites."""


@main.command()
@click.argument("suites", nargs=-1)
@click.option("--seed", default=42, show_default=True, type=int, help="suite seed")
@click.option("--samples", type=int, default=None, help="per-check sample override")
@click.option(
    "--tol",
    "tols",
    multiple=True,
    metavar="CHECK=VALUE",
    help="per-check tolerance override (repeatable)",
)
@click.option(
    "--format",
    "fmt",
    default="json",
    show_default=True,
    type=click.Choice(["json", "text"]),
)
def verify(suites, seed, samples, tols, fmt):
    """Run verification suites (names or 'all'; default all)."""
    overrides = {}
    for item in tols:
        name, sep, value = item.partition("=")
        if not sep:
            raise click.UsageError(f"--tol expects CHECK=VALUE, got {item!r}")
        try:
            overrides[name] = float(value)
        except ValueError:
            raise click.UsageError(f"--tol value {value!r} is not a number")
    try:
        rep = _report.run_suites(
            suites or ("all",), seed=seed, samples=samples, tol_overrides=overrides
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))
    click.echo(_report.render_report(rep, fmt), nl=False)
    if rep["summary"]["failed"]:
        sys.exit(1)


@main.command()
@click.option("--a", required=True, help="rational like 1/3, or a number")
@click.option("--b", required=True)
@click.option("--bp", required=True, help="second upper parameter")
@click.option("--c", required=True)
@click.option("--x", required=True, type=COMPLEX)
@click.option("--y", required=True, type=COMPLEX)
@click.option(
    "--method",
    default="series",
    show_default=True,
    type=click.Choice(["series", "euler", "both"]),
)
@_eval_errors
def f1(a, b, bp, c, x, y, method):
    """Evaluate the two-variable hypergeometric function."""
    try:
        params = F1Params(a, b, bp, c)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    out = {"a": a, "b": b, "bp": bp, "c": c, "x": _cj(x), "y": _cj(y)}
    if method in ("series", "both"):
        out["series"] = _cj(f1_series(params, x, y))
    if method in ("euler", "both"):
        out["euler"] = _cj(f1_euler(params, x, y))
    _emit(out)


def _poly_jet(coeffs: dict, base, order: int = 3) -> Jet:
    x = Jet.variable(2, order, 0, base=base[0])
    y = Jet.variable(2, order, 1, base=base[1])
    out = Jet.constant(2, order, 0.0)
    for key in sorted(coeffs):
        e1, e2 = (int(p) for p in key.split(","))
        if e1 < 0 or e2 < 0:
            raise ValueError(f"negative exponent in key {key!r}")
        val = coeffs[key]
        c = complex(val[0], val[1]) if isinstance(val, (list, tuple)) else complex(val)
        out = out + c * x**e1 * y**e2
    return out


@main.command()
@click.option(
    "--map",
    "map_file",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="polynomial map as JSON: dim, u1, u2 keyed by 'e1,e2' exponents",
)
@click.option("--at", required=True, type=CPAIR, metavar="X,Y")
@_eval_errors
def deriv(map_file, at):
    """Evaluate the four derivatives of a polynomial map at a point."""
    with open(map_file, encoding="utf-8") as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed map file: {exc}")
    if spec.get("dim", 2) != 2:
        raise ValueError("map file must have dim 2")
    if "u1" not in spec or "u2" not in spec:
        raise ValueError("map file needs u1 and u2 coefficient tables")
    m = MapJet2(_poly_jet(spec["u1"], at), _poly_jet(spec["u2"], at))
    brace_x, brace_y, bracket_x, bracket_y = deriv_quad(m).values()
    _emit(
        {
            "map": {"u1": spec["u1"], "u2": spec["u2"]},
            "at": [_cj(at[0]), _cj(at[1])],
            "brace_x": _cj(brace_x),
            "brace_y": _cj(brace_y),
            "bracket_x": _cj(bracket_x),
            "bracket_y": _cj(bracket_y),
        }
    )


@main.group()
def picard():
    """Moduli invariants, the order-five transform, period integrals."""


@picard.command("j")
@click.option("--l", "moduli", required=True, type=CPAIR, metavar="L1,L2")
@_eval_errors
def picard_j(moduli):
    """The two rational moduli invariants."""
    j1, j2 = j_invariants(*moduli)
    _emit({"l": [_cj(moduli[0]), _cj(moduli[1])], "J1": _cj(j1), "J2": _cj(j2)})


@picard.command("modular-solve")
@click.option("--u", required=True, type=CPAIR, metavar="U1,U2")
@click.option("--v2", required=True, type=COMPLEX)
@_eval_errors
def picard_modular_solve(u, v2):
    """Both v1 roots pairing (v1, v2) with the source moduli."""
    roots = modular_solve(u, v2)
    _emit(
        {
            "u": [_cj(u[0]), _cj(u[1])],
            "v2": _cj(v2),
            "roots": [_cj(r) for r in roots],
            "residuals": [abs(modular_residual(u, (r, v2))) for r in roots],
        }
    )


@picard.command("transform")
@click.option("--u", required=True, type=CPAIR, metavar="U1,U2")
@click.option("--v", required=True, type=CPAIR, metavar="V1,V2")
@click.option("--t", type=CPAIR, default=None, metavar="T1,T2")
@_eval_errors
def picard_transform(u, v, t):
    """Transform coefficients for a moduli pair; optionally map a point."""
    abg = transform_abg(u, v)
    out = {
        "u": [_cj(u[0]), _cj(u[1])],
        "v": [_cj(v[0]), _cj(v[1])],
        "alpha": _cj(abg.alpha),
        "beta": _cj(abg.beta),
        "gamma": _cj(abg.gamma),
        "constraint_residual": abs(abg.constraint_residual()),
    }
    if t is not None:
        w1, w2 = order5_map(abg, *t)
        out["t"] = [_cj(t[0]), _cj(t[1])]
        out["w"] = [_cj(w1), _cj(w2)]
    _emit(out)


@picard.command("integral")
@click.option("--x", required=True, type=COMPLEX)
@click.option("--y", required=True, type=COMPLEX)
@_eval_errors
def picard_integral_cmd(x, y):
    """Period integral and its hypergeometric closed form."""
    value = picard_integral(x, y)
    rhs = picard_f1_identity_rhs(x, y)
    _emit(
        {
            "x": _cj(x),
            "y": _cj(y),
            "value": _cj(value),
            "f1_form": _cj(rhs),
            "cubed_relative_gap": abs(value**3 - rhs**3) / abs(rhs**3),
        }
    )


@main.command()
@click.option("--ki", required=True, type=COMPLEX)
@click.option("--kj", required=True, type=COMPLEX)
@_eval_errors
def k(ki, kj):
    """Two-moduli period integral, direct and substituted routes."""
    value = k_integral(ki, kj)
    sub = k_integral_substituted(ki, kj)
    _emit(
        {
            "ki": _cj(ki),
            "kj": _cj(kj),
            "value": _cj(value),
            "substituted": _cj(sub),
            "gap": abs(value - sub),
        }
    )


@main.command()
@click.option(
    "--alpha", required=True, metavar="A,B", help="Eisenstein integer a + b*omega"
)
@click.option("--q", required=True, type=int, help="sqrt(-3) coefficient of 2*beta")
@_eval_errors
def heis(alpha, q):
    """Decompose a lattice translation into generator powers."""
    try:
        a, b = (int(p) for p in alpha.split(","))
    except ValueError:
        raise click.UsageError(f"--alpha expects two integers, got {alpha!r}")
    elem = HeisenbergElem.from_alpha_q(Eis(a, b), q)
    m, n, ell = decompose_heisenberg(elem)
    _emit(
        {
            "alpha": [a, b],
            "q": q,
            "m": m,
            "n": n,
            "l": ell,
            "word": [["T1", m], ["T2", n], ["commutator", -ell - m - n - m * n]],
        }
    )


@main.command()
@click.option("--dim", default=2, show_default=True, type=click.IntRange(1, 4))
@click.option("--order", default=3, show_default=True, type=click.IntRange(0, 3))
@click.option("--reps", default=20000, show_default=True, type=click.IntRange(1))
def bench(dim, order, reps):
    """Time the jet multiplication kernel, compiled vs pure."""
    from . import _jetpure
    from .jets import _mul_table

    kernels = {"pure": _jetpure}
    try:
        from . import _jetcore

        kernels["cython"] = _jetcore
    except ImportError:
        pass

    ti, tj, tk = _mul_table(dim, order)
    size = len(monomials(dim, order))
    rng = np.random.default_rng(0)
    a = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    b = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    seconds = {}
    for name, mod in sorted(kernels.items()):
        out = np.zeros_like(a)
        start = time.perf_counter()
        for _ in range(reps):
            mod.mul_into(out, a, b, ti, tj, tk)
        seconds[name] = time.perf_counter() - start
    result = {
        "dim": dim,
        "order": order,
        "reps": reps,
        "terms": int(len(ti)),
        "seconds": seconds,
        "active_backend": BACKEND,
    }
    if "cython" in seconds:
        result["speedup"] = seconds["pure"] / seconds["cython"]
    _emit(result)


if __name__ == "__main__":
    main()
