"""Command-line surface: spectrum tables, wavefunction sampling, kernel
evaluation with cross-route diagnostics, and the verification suite.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 requested tolerance not reached. Output is CSV by default (JSON with
--format json), floats at 17 significant digits, and byte-identical
across identical invocations once --no-timestamp is passed.
"""

from __future__ import annotations

import argparse
import math
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import oracle, propagator, spectrum, verify
from .model import PotentialParams, QuantumNumbers

__all__ = ["main", "build_parser"]

# config keys that map to boolean flags rather than key=value options
_BOOL_KEYS = {"no-timestamp", "lattice"}


class CliError(Exception):
    """Invalid input detected outside argparse; maps to exit code 2."""


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _json_value(obj, indent: int) -> str:
    # hand-rolled so floats keep the 17-significant-digit contract
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(
            f'{pad}  "{k}": {_json_value(v, indent + 2)}' for k, v in obj.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        inner = ",\n".join(f"{pad}  {_json_value(v, indent + 2)}" for v in obj)
        return "[\n" + inner + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt(obj)
    if obj is None:
        return "null"
    escaped = str(obj).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _timestamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _params_from_args(args: argparse.Namespace) -> PotentialParams:
    return PotentialParams(
        hbar=args.hbar, mu=args.mu, omega=args.omega, v0=args.v0,
        alpha=args.alpha, beta=args.beta, gamma=args.gamma,
    )


def _param_fields(p: PotentialParams) -> dict:
    return {
        "v0": p.v0, "alpha": p.alpha, "beta": p.beta, "gamma": p.gamma,
        "omega": p.omega, "mu": p.mu, "hbar": p.hbar,
    }


def _emit(args: argparse.Namespace, csv_lines: list[str], payload: dict) -> None:
    if args.format == "json":
        if args.no_timestamp:
            payload.pop("generated", None)
        text = _json_value(payload, 0) + "\n"
    else:
        lines = csv_lines
        if args.no_timestamp:
            lines = [ln for ln in lines if not ln.startswith("# generated ")]
        text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _param_comment(p: PotentialParams) -> str:
    return "# params " + " ".join(f"{k}={_fmt(v)}" for k, v in _param_fields(p).items())


# ------------------------------------------------------------------ spectrum

def _derive_m_max(p: PotentialParams, e_max: float) -> int:
    """Smallest |m| cutoff that already includes every state below e_max.

    The sector floor rises with |m| once beta + m^2 >= 0, so the scan stops
    at the first admissible floor above the energy bound.
    """
    m = 0
    while m < 100000:
        if p.beta + m * m >= 0:
            floor = None
            for n_theta in range(200):
                try:
                    floor = spectrum.energy(p, QuantumNumbers(0, n_theta, m))
                    break
                except ValueError:
                    continue
            if floor is not None and floor > e_max:
                return max(0, m - 1)
        m += 1
    raise CliError(f"no admissible sector found below emax={e_max}")


def cmd_spectrum(args: argparse.Namespace) -> int:
    p = _params_from_args(args)
    m_max = args.m if args.m is not None else _derive_m_max(p, args.emax)
    if m_max < 0:
        raise CliError(f"m cutoff must be >= 0, got {m_max}")
    states = spectrum.enumerate_states(p, e_max=args.emax, m_max=m_max)

    csv_lines = [
        f"# generated {_timestamp()}",
        _param_comment(p),
        f"# emax={_fmt(args.emax)} mmax={m_max}",
        "n,n_theta,m,lambda,k,ell_tilde,energy",
    ]
    rows = []
    for s in states:
        csv_lines.append(
            f"{s.qn.n},{s.qn.n_theta},{s.qn.m},{_fmt(s.angular.lam)},"
            f"{_fmt(s.angular.k)},{_fmt(s.radial.ell_tilde)},{_fmt(s.energy)}"
        )
        rows.append({
            "n": s.qn.n, "n_theta": s.qn.n_theta, "m": s.qn.m,
            "lambda": s.angular.lam, "k": s.angular.k,
            "ell_tilde": s.radial.ell_tilde, "energy": s.energy,
        })
    payload = {
        "generated": _timestamp(),
        "params": _param_fields(p),
        "emax": args.emax,
        "mmax": m_max,
        "rows": rows,
    }
    _emit(args, csv_lines, payload)
    return 0


# -------------------------------------------------------------- wavefunction

def cmd_wavefunction(args: argparse.Namespace) -> int:
    p = _params_from_args(args)
    qn = QuantumNumbers(n=args.n, n_theta=args.ntheta, m=args.m)
    state = spectrum.eigenstate(p, qn.n, qn.n_theta, qn.m)  # rejects inadmissible sectors

    if args.points < 2:
        raise CliError(f"--points must be >= 2, got {args.points}")
    sigma = math.sqrt(p.hbar / (p.mu * p.omega))
    ra = args.ra if args.ra is not None else 0.1 * sigma
    rb = args.rb if args.rb is not None else 5.0 * sigma
    if not 0 < ra < rb:
        raise CliError(f"radial range requires 0 < ra < rb, got ({ra}, {rb})")
    rs = np.linspace(ra, rb, args.points)
    ths = math.pi / 2 * np.arange(1, 10) / 10.0
    phs = 2 * math.pi * np.arange(8) / 8.0
    psi = spectrum.full_wavefunction(p, qn, rs[:, None, None], ths[None, :, None], phs[None, None, :])

    # norm by independent quadrature; the phi factor integrates to 1 exactly
    rad = oracle.inner_product_radial(
        lambda r: spectrum.radial_wavefunction(p, state.radial, qn.n, r),
        lambda r: spectrum.radial_wavefunction(p, state.radial, qn.n, r),
        oracle.default_radial_grid(p),
    ).value
    ang = oracle.inner_product_angular(
        lambda t: spectrum.angular_wavefunction(state.angular, t),
        lambda t: spectrum.angular_wavefunction(state.angular, t),
        oracle.default_angular_grid(),
    ).value
    norm = math.sqrt(rad * ang)

    csv_lines = [
        f"# generated {_timestamp()}",
        _param_comment(p),
        f"# state n={qn.n} ntheta={qn.n_theta} m={qn.m} energy={_fmt(state.energy)}",
        f"# norm {_fmt(norm)}",
        "r,theta,phi,re_psi,im_psi",
    ]
    rows = []
    for i, r in enumerate(rs):
        for j, th in enumerate(ths):
            for q, ph in enumerate(phs):
                val = psi[i, j, q]
                csv_lines.append(
                    f"{_fmt(r)},{_fmt(th)},{_fmt(ph)},{_fmt(val.real)},{_fmt(val.imag)}"
                )
                rows.append({
                    "r": float(r), "theta": float(th), "phi": float(ph),
                    "re_psi": val.real, "im_psi": val.imag,
                })
    payload = {
        "generated": _timestamp(),
        "params": _param_fields(p),
        "state": {"n": qn.n, "n_theta": qn.n_theta, "m": qn.m, "energy": state.energy},
        "norm": norm,
        "rows": rows,
    }
    _emit(args, csv_lines, payload)
    return 0


# ---------------------------------------------------------------- propagator

def cmd_propagator(args: argparse.Namespace) -> int:
    p = _params_from_args(args)
    if args.n < 1:
        raise CliError(f"spectral cutoff --n must be >= 1, got {args.n}")
    closed = propagator.radial_kernel_closed(p, args.ntheta, args.m, args.ra, args.rb, args.tau)
    spec_val = propagator.radial_kernel_spectral(p, args.ntheta, args.m, args.ra, args.rb, args.tau, args.n)
    rel_spectral = abs(closed - spec_val.value) / abs(closed)

    entries: list[tuple[str, float]] = [
        ("closed", closed),
        ("spectral", spec_val.value),
        ("spectral_tail_bound", spec_val.tail_bound),
        ("rel_diff_spectral_vs_closed", rel_spectral),
    ]
    failures: list[str] = []
    if rel_spectral > args.tol:
        failures.append(
            f"spectral route off by {rel_spectral:.3e} > tolerance {args.tol:.3e}; "
            f"raise the spectral cutoff above --n {args.n}"
        )
    if args.lattice:
        spec_l = propagator.LatticeSpec(n_slices=args.slices, r_min=0.02, r_max=8.0, n_grid=400)
        lat = propagator.lattice_radial_kernel(p, args.ntheta, args.m, args.ra, args.rb, args.tau, spec_l)
        rel_lattice = abs(closed - lat) / abs(closed)
        entries.append(("lattice", lat))
        entries.append(("rel_diff_lattice_vs_closed", rel_lattice))
        if rel_lattice > args.lattice_tol:
            failures.append(
                f"lattice route off by {rel_lattice:.3e} > tolerance {args.lattice_tol:.3e}; "
                f"raise the slice count above --slices {args.slices}"
            )

    csv_lines = [
        f"# generated {_timestamp()}",
        _param_comment(p),
        f"# query ra={_fmt(args.ra)} rb={_fmt(args.rb)} tau={_fmt(args.tau)}"
        f" ntheta={args.ntheta} m={args.m} ncut={args.n}",
        "quantity,value",
    ]
    csv_lines += [f"{name},{_fmt(value)}" for name, value in entries]
    payload = {
        "generated": _timestamp(),
        "params": _param_fields(p),
        "query": {"ra": args.ra, "rb": args.rb, "tau": args.tau,
                  "ntheta": args.ntheta, "m": args.m, "ncut": args.n},
        "rows": [{"quantity": name, "value": value} for name, value in entries],
    }
    _emit(args, csv_lines, payload)
    if failures:
        for msg in failures:
            print(f"tolerance not reached: {msg}", file=sys.stderr)
        return 3
    return 0


# -------------------------------------------------------------------- verify

def cmd_verify(args: argparse.Namespace) -> int:
    if args.tol_scale < 0:
        raise CliError(f"--tol-scale must be >= 0, got {args.tol_scale}")
    results = verify.run_suite(args.suite, tol_scale=args.tol_scale)
    n_pass = sum(r.passed for r in results)

    csv_lines = [
        f"# generated {_timestamp()}",
        f"# suite={args.suite} tol-scale={_fmt(args.tol_scale)}",
        f"# passed {n_pass}/{len(results)}",
        "suite,check,passed,observed,tolerance",
    ]
    rows = []
    for r in results:
        csv_lines.append(
            f"{r.suite},{r.name},{'true' if r.passed else 'false'},"
            f"{_fmt(r.observed)},{_fmt(r.tolerance)}"
        )
        rows.append({
            "suite": r.suite, "check": r.name, "passed": r.passed,
            "observed": r.observed, "tolerance": r.tolerance,
        })
    payload = {
        "generated": _timestamp(),
        "suite": args.suite,
        "tol_scale": args.tol_scale,
        "all_passed": n_pass == len(results),
        "rows": rows,
    }
    _emit(args, csv_lines, payload)
    return 0 if n_pass == len(results) else 1


# ------------------------------------------------------------------- parsing

def _add_physics_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--v0", type=float, default=0.0, help="constant well depth (energy offset)")
    sp.add_argument("--alpha", type=float, default=0.0, help="isotropic 1/r^2 coupling")
    sp.add_argument("--beta", type=float, default=0.0, help="cos^2/sin^2 angular coupling")
    sp.add_argument("--gamma", type=float, default=0.0, help="1/cos^2 angular coupling, > -1/4")
    sp.add_argument("--omega", type=float, default=1.0, help="oscillator frequency")
    sp.add_argument("--mu", type=float, default=1.0, help="mass")
    sp.add_argument("--hbar", type=float, default=1.0, help="reduced Planck constant")


def _add_output_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    sp.add_argument("--output", default=None, metavar="PATH", help="write to file instead of stdout")
    sp.add_argument("--no-timestamp", action="store_true",
                    help="omit the generation timestamp for byte-stable output")
    sp.add_argument("--config", default=None, metavar="PATH",
                    help="key=value parameter file; explicit flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncosc",
        description="Spectrum, eigenfunctions and Euclidean kernels of the "
                    "noncentral anharmonic oscillator, with built-in cross-checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="enumerate energy levels below a cutoff")
    _add_physics_flags(sp)
    sp.add_argument("--emax", type=float, default=6.0, help="energy cutoff for the table")
    sp.add_argument("--m", type=int, default=None,
                    help="max |m| to scan (default: derived from --emax)")
    _add_output_flags(sp)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("wavefunction", help="sample one eigenstate on an (r, theta, phi) grid")
    _add_physics_flags(sp)
    sp.add_argument("--n", type=int, default=0, help="radial quantum number")
    sp.add_argument("--ntheta", type=int, default=0, help="angular quantum number")
    sp.add_argument("--m", type=int, default=0, help="azimuthal quantum number")
    sp.add_argument("--ra", type=float, default=None,
                    help="radial grid start (default 0.1 oscillator lengths)")
    sp.add_argument("--rb", type=float, default=None,
                    help="radial grid end (default 5 oscillator lengths)")
    sp.add_argument("--points", type=int, default=16, help="radial sample count")
    _add_output_flags(sp)
    sp.set_defaults(func=cmd_wavefunction)

    sp = sub.add_parser("propagator", help="evaluate the radial kernel by independent routes")
    _add_physics_flags(sp)
    sp.add_argument("--ntheta", type=int, default=0, help="angular sector index")
    sp.add_argument("--m", type=int, default=0, help="azimuthal sector index")
    sp.add_argument("--ra", type=float, default=1.0, help="first radial endpoint")
    sp.add_argument("--rb", type=float, default=1.0, help="second radial endpoint")
    sp.add_argument("--tau", type=float, default=1.0, help="Euclidean time, > 0")
    sp.add_argument("--n", type=int, default=60, help="spectral sum cutoff")
    sp.add_argument("--tol", type=float, default=1e-8,
                    help="required closed-vs-spectral relative agreement")
    sp.add_argument("--lattice", action="store_true", help="also run the transfer-matrix route")
    sp.add_argument("--slices", type=int, default=32, help="time slices for the lattice route")
    sp.add_argument("--lattice-tol", type=float, default=1e-3,
                    help="required closed-vs-lattice relative agreement")
    _add_output_flags(sp)
    sp.set_defaults(func=cmd_propagator)

    sp = sub.add_parser("verify", help="run the numerical cross-check suites")
    sp.add_argument("--suite", choices=("all",) + verify.SUITE_NAMES, default="all",
                    help="which checks to run")
    sp.add_argument("--tol-scale", type=float, default=1.0,
                    help="multiply every tolerance (0 must fail the suite)")
    _add_output_flags(sp)
    sp.set_defaults(func=cmd_verify)

    return parser


def _extract_config(argv: list[str]) -> tuple[list[str], str | None]:
    rest: list[str] = []
    path = None
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok == "--config":
            if i + 1 >= len(argv):
                raise CliError("--config requires a path")
            path = argv[i + 1]
            i += 2
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
            i += 1
        else:
            rest.append(tok)
            i += 1
    return rest, path


def _config_tokens(path: str) -> list[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read config file {path}: {exc}") from exc
    tokens: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise CliError(f"{path}:{lineno}: empty key")
        if key in _BOOL_KEYS:
            lowered = value.lower()
            if lowered in ("1", "true", "yes", "on"):
                tokens.append(f"--{key}")
            elif lowered not in ("0", "false", "no", "off"):
                raise CliError(f"{path}:{lineno}: boolean key {key} got {value!r}")
        else:
            tokens.extend([f"--{key}", value])
    return tokens


def main(argv: list[str] | None = None) -> int:
    raw = list(sys.argv[1:] if argv is None else argv)
    try:
        rest, config_path = _extract_config(raw)
        if config_path is not None:
            if not rest:
                raise CliError("--config given without a subcommand")
            # config tokens go right after the subcommand so explicit
            # flags, parsed later, win
            rest = rest[:1] + _config_tokens(config_path) + rest[1:]
        parser = build_parser()
        args = parser.parse_args(rest)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
