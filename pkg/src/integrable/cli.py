"""Batch front-end: ``integrable {rmatrix,toda,gaudin,lattice} --config cfg.json``.

Every suite prints a line-oriented report to standard output.  Exit codes:
0 when every CHECK line passes, 1 on any failed check, 2 on usage or
configuration errors.  Complex numbers in configs are ``[re, im]`` pairs.
"""

import argparse
import io
import json
import math
import os
import sys

import numpy as np

from . import gaudin as gd
from . import lattice as lq
from . import rmatrix as rm
from . import toda as td
from .rng import SplitMix64


class ConfigError(ValueError):
    pass


def fmt(x):
    if isinstance(x, (complex, np.complexfloating)):
        return f"{fmt(x.real)},{fmt(x.imag)}"
    return "%.17g" % float(x)


def to_complex(x, what="value"):
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ConfigError(f"{what}: complex numbers are [re, im] pairs")
        val = complex(to_float(x[0], what), to_float(x[1], what))
    elif isinstance(x, (int, float)) and not isinstance(x, bool):
        val = complex(x)
    else:
        raise ConfigError(f"{what}: expected a number or [re, im], got {x!r}")
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise ConfigError(f"{what}: non-finite value")
    return val


def to_float(x, what="value"):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ConfigError(f"{what}: expected a real number, got {x!r}")
    if not math.isfinite(x):
        raise ConfigError(f"{what}: non-finite value")
    return float(x)


def to_int(x, what="value", minimum=None):
    if isinstance(x, bool) or not isinstance(x, int):
        raise ConfigError(f"{what}: expected an integer, got {x!r}")
    if minimum is not None and x < minimum:
        raise ConfigError(f"{what}: must be >= {minimum}")
    return x


class Report:
    def __init__(self):
        self.lines = []
        self.failed = False

    def info(self, text):
        self.lines.append(f"INFO {text}")

    def check(self, name, residual, tol, **fields):
        ok = bool(residual <= tol)
        self.failed |= not ok
        extra = "".join(f" {k}={v}" for k, v in fields.items())
        self.lines.append(f"CHECK {name}{extra} residual={fmt(residual)} tol={fmt(tol)} {'PASS' if ok else 'FAIL'}")
        return ok

    def fail(self, name, reason):
        self.failed = True
        self.lines.append(f"CHECK {name} {reason} FAIL")

    def text(self):
        return "\n".join(self.lines) + "\n"

    @property
    def exit_code(self):
        return 1 if self.failed else 0


def _tol(cfg, key, default, override):
    if override is not None:
        return override
    tol = cfg.get("tol", {})
    if isinstance(tol, dict):
        return to_float(tol.get(key, default), f"tol.{key}")
    return to_float(tol, "tol")


# -- rmatrix -----------------------------------------------------------------

RMATRIX_KINDS = ("mcybe", "jacobi", "cybe-rational", "cybe-trig")


def _distinct_triple(rng, sample, min_sep):
    while True:
        u, v, w = sample(), sample(), sample()
        if min(abs(u - v), abs(u - w), abs(v - w)) >= min_sep:
            return u, v, w


def _trig_triple(rng, min_sep):
    def sample():
        return rng.uniform(0.5, 2.0) * rng.unit_phase()

    while True:
        u, v, w = sample(), sample(), sample()
        if min(abs(u / v - 1), abs(u / w - 1), abs(v / w - 1)) >= min_sep:
            return u, v, w


def run_rmatrix_checks(cfg, seed=0, tol=None):
    kinds = cfg.get("kinds", list(RMATRIX_KINDS))
    if not isinstance(kinds, list) or any(k not in RMATRIX_KINDS for k in kinds):
        raise ConfigError(f"kinds must be a subset of {list(RMATRIX_KINDS)}")
    trials = to_int(cfg.get("trials", 100), "trials", 1)
    min_sep = to_float(cfg.get("min_separation", 0.1), "min_separation")
    mcybe_n = [to_int(n, "mcybe_n", 2) for n in cfg.get("mcybe_n", [2, 3, 4, 5])]
    jacobi_n = [to_int(n, "jacobi_n", 2) for n in cfg.get("jacobi_n", [2, 3])]
    cybe_n = [to_int(n, "cybe_n", 2) for n in cfg.get("cybe_n", [2, 3])]
    rng = SplitMix64(seed)
    rep = Report()
    rep.info(f"suite=rmatrix seed={seed}")
    if "mcybe" in kinds:
        t = _tol(cfg, "mcybe", 0.0, tol)
        for n in mcybe_n:
            rep.check("mcybe", rm.check_mcybe(rm.Splitting(n)), t, n=n)
    if "jacobi" in kinds:
        t = _tol(cfg, "jacobi", 1e-13, tol)
        for n in jacobi_n:
            rep.check("jacobi", rm.check_r_bracket_jacobi(rm.Splitting(n)), t, n=n)
    if "cybe-rational" in kinds:
        t = _tol(cfg, "cybe-rational", 1e-12, tol)
        for n in cybe_n:
            worst = 0.0
            for _ in range(trials):
                u, v, w = _distinct_triple(rng, lambda: rng.complex_box(2.0), min_sep)
                worst = max(worst, rm.check_cybe_spectral(rm.RKind.RATIONAL, u, v, w, n))
            rep.check("cybe-rational", worst, t, n=n, trials=trials)
    if "cybe-trig" in kinds:
        t = _tol(cfg, "cybe-trig", 1e-12, tol)
        worst = 0.0
        for _ in range(trials):
            u, v, w = _trig_triple(rng, min_sep)
            worst = max(worst, rm.check_cybe_spectral(rm.RKind.TRIGONOMETRIC, u, v, w, 2))
        rep.check("cybe-trig", worst, t, n=2, trials=trials)
    return rep


# -- toda --------------------------------------------------------------------

def _toda_state(cfg, rng):
    periodic = cfg.get("periodic", False)
    if not isinstance(periodic, bool):
        raise ConfigError("periodic must be a boolean")
    n = to_int(cfg.get("n", 2), "n", 2)
    q0 = cfg.get("q0")
    p0 = cfg.get("p0")
    q0 = [0.0] * n if q0 is None else [to_float(x, "q0") for x in q0]
    p0 = [rng.uniform(-1.0, 1.0) for _ in range(n)] if p0 is None else [to_float(x, "p0") for x in p0]
    if len(q0) != n or len(p0) != n:
        raise ConfigError("q0 and p0 must have length n")
    return td.TodaState(q0, p0, periodic)


def run_toda(cfg, seed=0, tol=None):
    """Integrate, record invariants, optionally compare with the factorization solution.

    Returns ``(report, csv_text)``.
    """
    rng = SplitMix64(seed)
    s0 = _toda_state(cfg, rng)
    dt = to_float(cfg.get("dt", 1e-3), "dt")
    T = to_float(cfg.get("T", 10.0), "T")
    if dt <= 0 or T <= 0:
        raise ConfigError("dt and T must be positive")
    if abs(round(T / dt) * dt - T) > 1e-9 * T:
        raise ConfigError("T must be a multiple of dt")
    kmax = to_int(cfg.get("kmax", s0.n), "kmax", 0)
    if s0.periodic:
        kmax = 0
    compare = [to_float(t, "compare_times") for t in cfg.get("compare_times", [])]
    traj = td.toda_integrate(s0, dt, T, kmax)
    rep = Report()
    rep.info(f"suite=toda seed={seed} n={s0.n} periodic={str(s0.periodic).lower()} dt={fmt(dt)} T={fmt(T)}")
    e0 = traj.energy[0]
    drift = float(np.max(np.abs(traj.energy - e0)) / max(1.0, abs(e0)))
    if traj.invariants is not None:
        i0 = traj.invariants[0]
        inv_drift = np.max(np.abs(traj.invariants - i0) / np.maximum(1.0, np.abs(i0)))
        drift = max(drift, float(inv_drift))
    rep.check("toda-drift", drift, _tol(cfg, "drift", 1e-8, tol), n=s0.n)
    if compare:
        if s0.periodic:
            raise ConfigError("factorization comparison needs the open lattice")
        worst = 0.0
        for t in compare:
            k = int(round(t / dt))
            if k < 0 or k >= len(traj.times) or abs(k * dt - t) > 1e-9 * max(1.0, t):
                raise ConfigError(f"compare time {t} is not a sample time")
            Lf, sf = td.toda_factorization_solve(s0, t)
            L_ode, _ = td.toda_lax(traj.states[k])
            worst = max(worst, float(np.max(np.abs(Lf - L_ode))), float(np.max(np.abs(sf.q - traj.states[k].q))))
        rep.check("toda-factorization", worst, _tol(cfg, "factorization", 1e-6, tol), n=s0.n)
    n = s0.n
    out = io.StringIO()
    header = ["t"] + [f"q{i + 1}" for i in range(n)] + [f"p{i + 1}" for i in range(n)] + ["H"]
    header += [f"I{k + 1}" for k in range(kmax)]
    out.write(",".join(header) + "\n")
    for idx, (t, s) in enumerate(zip(traj.times, traj.states)):
        row = [t, *s.q, *s.p, traj.energy[idx]]
        if kmax:
            row += list(traj.invariants[idx])
        out.write(",".join(fmt(x) for x in row) + "\n")
    return rep, out.getvalue()


# -- gaudin ------------------------------------------------------------------

GAUDIN_MODES = ("commute", "bethe", "verify", "spectrum", "classical")


DEFAULT_SITES = {"z": [0.0, 1.0], "lam": [1, 1]}


def _sites(cfg):
    site_cfg = cfg.get("sites", DEFAULT_SITES)
    if not isinstance(site_cfg, dict) or "z" not in site_cfg or "lam" not in site_cfg:
        raise ConfigError("sites must be an object with 'z' and 'lam'")
    z = [to_complex(x, "sites.z") for x in site_cfg["z"]]
    lam = [to_int(x, "sites.lam", 0) for x in site_cfg["lam"]]
    try:
        return gd.GaudinSites(z, lam)
    except gd.DuplicatePointError as exc:
        raise ConfigError(str(exc)) from exc


def _random_off_poles(rng, sites, avoid=(), real=False, width=2.0, sep=0.1):
    while True:
        u = complex(rng.uniform(-width, width)) if real else rng.complex_box(width)
        pts = list(sites.z) + list(avoid)
        if all(abs(u - p) >= sep for p in pts):
            return u


def run_gaudin(cfg, seed=0, tol=None):
    mode = cfg.get("mode", "bethe")
    if mode not in GAUDIN_MODES:
        raise ConfigError(f"mode must be one of {list(GAUDIN_MODES)}")
    sites = _sites(cfg)
    rng = SplitMix64(seed)
    pairs = to_int(cfg.get("pairs", 20), "pairs", 1)
    rep = Report()
    rep.info(f"suite=gaudin mode={mode} seed={seed} N={sites.N}")
    rep.info("sites " + " ".join(f"z{i + 1}={fmt(z)} lam{i + 1}={l}" for i, (z, l) in enumerate(zip(sites.z, sites.lam))))
    real = sites.is_real()

    if mode == "commute":
        t = _tol(cfg, "commute", 1e-10, tol)
        worst = 0.0
        for _ in range(pairs):
            u = _random_off_poles(rng, sites, real=real)
            v = _random_off_poles(rng, sites, avoid=[u], real=real)
            worst = max(worst, gd.commutativity_residual(sites, u, v))
        rep.check("gaudin-commute", worst, t, N=sites.N, pairs=pairs)
        if sites.N >= 2:
            H = gd.gaudin_hamiltonians(sites)
            worst_h = max(
                (float(np.linalg.norm(H[i] @ H[j] - H[j] @ H[i])) for i in range(sites.N) for j in range(i + 1, sites.N)),
                default=0.0,
            )
            rep.check("gaudin-hamiltonians", worst_h, t, N=sites.N)
            rep.check("gaudin-residue-sum", float(np.linalg.norm(sum(H))), _tol(cfg, "residue-sum", 1e-12, tol), N=sites.N)

    elif mode == "bethe":
        m = to_int(cfg.get("m", 1), "m", 0)
        init = [to_complex(x, "init") for x in cfg.get("init", [0.4] if m == 1 else [])]
        if len(init) != m:
            raise ConfigError("init must list m starting roots")
        u_samples = [to_complex(x, "u") for x in cfg.get("u", [2.0])]
        solve_tol = to_float(cfg.get("solve_tol", 1e-12), "solve_tol")
        max_iter = to_int(cfg.get("max_iter", 50), "max_iter", 1)
        rep.info(f"m={m} init " + " ".join(fmt(w) for w in init))
        try:
            conf = gd.bethe_solve(sites, m, init, tol=solve_tol, max_iter=max_iter)
        except gd.BetheSolveError as exc:
            rep.fail("bethe-solve", f"error={str(exc).replace(' ', '_')}")
            return rep
        rep.info(f"iterations={conf.iterations}")
        for j, w in enumerate(conf.roots):
            rep.info(f"root{j + 1}={fmt(w)} f{j + 1}={fmt(abs(conf.residuals[j]))}")
        rep.check("bethe-solve", conf.max_residual, solve_tol, m=m)
        t = _tol(cfg, "eigen", 1e-9, tol)
        for u in u_samples:
            chi, s = gd.chi_eigenvalue(sites, conf.roots, u)
            rep.info(f"u={fmt(u)} chi={fmt(chi)} s={fmt(s)}")
            rep.check("bethe-eigen", gd.eigen_residual(sites, conf.roots, u), t, u=fmt(u))

    elif mode == "verify":
        t = _tol(cfg, "comm", 1e-12, tol)
        worst = 0.0
        for _ in range(pairs):
            u = _random_off_poles(rng, sites)
            v = _random_off_poles(rng, sites, avoid=[u])
            worst = max(worst, gd.comm_identity_residual(sites, u, v))
        rep.check("gaudin-comm-identity", worst, t, N=sites.N, pairs=pairs)
        m = to_int(cfg.get("m", 1), "m", 0)
        t_off = _tol(cfg, "offshell", 1e-10, tol)
        worst = 0.0
        for _ in range(pairs):
            roots = []
            for _ in range(m):
                roots.append(_random_off_poles(rng, sites, avoid=roots))
            u = _random_off_poles(rng, sites, avoid=roots)
            worst = max(worst, gd.offshell_residual(sites, roots, u))
        rep.check("bethe-offshell", worst, t_off, m=m, trials=pairs)

    elif mode == "spectrum":
        if not real:
            raise ConfigError("spectrum mode needs real marked points")
        u = to_complex(cfg.get("u", [2.0])[0], "u")
        if u.imag != 0:
            raise ConfigError("spectrum mode needs a real u")
        levels = gd.exact_spectrum(sites, u.real)
        rep.info("spectrum " + " ".join(fmt(x) for x in levels))
        roots = cfg.get("roots")
        if roots is not None:
            roots = [to_complex(x, "roots") for x in roots]
            _, s = gd.chi_eigenvalue(sites, roots, u.real)
            dist = float(np.min(np.abs(levels - s)))
            rep.check("bethe-in-spectrum", dist, _tol(cfg, "spectrum", 1e-8, tol), m=len(roots))

    elif mode == "classical":
        points = to_int(cfg.get("points", 100), "points", 1)
        t = _tol(cfg, "classical", 1e-12, tol)
        worst_p = worst_i = 0.0
        for _ in range(points):
            pt = gd.ClassicalPoint(
                [
                    (lambda a, b, c: np.array([[a, b], [c, -a]]))(rng.complex_box(), rng.complex_box(), rng.complex_box())
                    for _ in range(sites.N)
                ]
            )
            u = _random_off_poles(rng, sites)
            v = _random_off_poles(rng, sites, avoid=[u])
            worst_p = max(worst_p, gd.classical_pbr_residual(sites, pt, u, v))
            worst_i = max(worst_i, gd.classical_involution_residual(sites, pt, u, v))
        rep.check("classical-pbr", worst_p, t, N=sites.N, points=points)
        rep.check("classical-involution", worst_i, t, N=sites.N, points=points)
    return rep


# -- lattice -----------------------------------------------------------------

LATTICE_CHECKS = ("ybe", "rll", "transfer", "qdet", "semiclassical")


def _lattice_point(rng, chain, q, sep=0.3):
    # t(z) grows like |z/zeta - q^2|^-N; stay clear of the poles so absolute
    # tolerances measure the identities rather than amplified roundoff
    while True:
        z = rng.uniform(0.5, 2.0) * rng.unit_phase()
        if all(abs(z / zeta - q * q) >= sep for zeta in chain.zeta):
            return z


def run_lattice(cfg, seed=0, tol=None):
    q = to_complex(cfg.get("q", [0.7, 0.3]), "q")
    if q == 0:
        raise ConfigError("q must be nonzero")
    if cfg.get("normalize_q", True):
        q = q / abs(q)
    N = to_int(cfg.get("N", 3), "N", 1)
    zeta = cfg.get("inhomogeneities")
    zeta = None if zeta is None else [to_complex(x, "inhomogeneities") for x in zeta]
    twist = [to_complex(x, "twist") for x in cfg.get("twist", [1.0, 1.0])]
    try:
        chain = lq.Chain(N, zeta, twist)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    checks = cfg.get("checks", list(LATTICE_CHECKS))
    if not isinstance(checks, list) or any(c not in LATTICE_CHECKS for c in checks):
        raise ConfigError(f"checks must be a subset of {list(LATTICE_CHECKS)}")
    trials = to_int(cfg.get("trials", 20), "trials", 1)
    fixed = cfg.get("z")
    fixed = None if fixed is None else to_complex(fixed, "z")
    if fixed is not None:
        for zeta_n in chain.zeta:
            if abs(fixed / zeta_n - q * q) <= lq.POLE_GUARD:
                raise ConfigError(f"z = {fixed} sits on the R-matrix pole q^2 = {q * q}")
    rng = SplitMix64(seed)
    rep = Report()
    rep.info(f"suite=lattice seed={seed} N={N} q={fmt(q)}")
    qs = fmt(q)

    def point():
        return _lattice_point(rng, chain, q)

    if "ybe" in checks:
        worst = max(lq.qybe_residual(q, point(), point()) for _ in range(trials))
        rep.check("ybe", worst, _tol(cfg, "ybe", 1e-12, tol), N=N, q=qs)
    if "rll" in checks:
        worst = 0.0
        for _ in range(trials):
            u = point()
            v = point()
            worst = max(worst, lq.rll_residual(q, u, v))
        rep.check("rll", worst, _tol(cfg, "rll", 1e-12, tol), N=N, q=qs)
    if "transfer" in checks:
        worst = 0.0
        for k in range(trials):
            z = fixed if (fixed is not None and k == 0) else point()
            worst = max(worst, lq.transfer_commutativity_residual(chain, q, z, point()))
        rep.check("transfer", worst, _tol(cfg, "transfer", 1e-10, tol), N=N, q=qs)
    if "qdet" in checks:
        z = fixed if fixed is not None else point()
        try:
            qd = lq.qdet(chain, q, z)
        except lq.QDetCalibrationError as exc:
            rep.fail("qdet", f"N={N} q={qs} error={str(exc).replace(' ', '_')}")
        else:
            rep.info(f"qdet shift={qd.shift_label} coefficient={qd.coefficient_label} value={fmt(qd.value)}")
            worst = qd.deviation
            for _ in range(trials):
                tw = lq.transfer(chain, q, point())
                worst = max(worst, float(np.linalg.norm(qd.operator @ tw - tw @ qd.operator)))
            rep.check("qdet", worst, _tol(cfg, "qdet", 1e-10, tol), N=N, q=qs)
    if "semiclassical" in checks:
        worst = 0.0
        for _ in range(trials):
            z = rng.uniform(0.3, 2.0) * rng.unit_phase(0.3, 6.0)
            sign, c, res = lq.semiclassical_fit(z)
            worst = max(worst, res)
        rep.info(f"semiclassical sign={fmt(sign)} identity_coefficient={fmt(c)} at z={fmt(z)}")
        rep.check("semiclassical", worst, _tol(cfg, "semiclassical", 1e-6, tol), N=N, q=qs)
    return rep


# -- entry point -------------------------------------------------------------

def _write_out(path, text, force):
    if os.path.exists(path) and not force:
        raise ConfigError(f"refusing to overwrite {path} (use --force)")
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def build_parser():
    parser = argparse.ArgumentParser(prog="integrable", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("rmatrix", "toda", "gaudin", "lattice"):
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON configuration document")
        p.add_argument("--seed", type=int, default=None, help="64-bit seed for randomized checks")
        p.add_argument("--tol", type=float, default=None, help="override every check tolerance")
        p.add_argument("--out", help="artifact path (trajectory CSV for toda, report otherwise)")
        p.add_argument("--force", action="store_true", help="allow overwriting --out")
    return parser


RUNNERS = {"rmatrix": run_rmatrix_checks, "toda": run_toda, "gaudin": run_gaudin, "lattice": run_lattice}


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = {}
        if args.config:
            with open(args.config) as fh:
                cfg = json.load(fh)
            if not isinstance(cfg, dict):
                raise ConfigError("configuration must be a JSON object")
        seed = args.seed if args.seed is not None else to_int(cfg.get("seed", 0), "seed", 0)
        if not 0 <= seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        if args.tol is not None and not (math.isfinite(args.tol) and args.tol >= 0):
            raise ConfigError("--tol must be a finite nonnegative number")
        if args.out and os.path.exists(args.out) and not args.force:
            raise ConfigError(f"refusing to overwrite {args.out} (use --force)")
        result = RUNNERS[args.command](cfg, seed=seed, tol=args.tol)
        if args.command == "toda":
            rep, csv_text = result
            if args.out:
                _write_out(args.out, csv_text, args.force)
        else:
            rep = result
            if args.out:
                _write_out(args.out, rep.text(), args.force)
    except (ConfigError, json.JSONDecodeError, OSError, lq.PoleError, gd.PoleCollisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    stdout.write(rep.text())
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
