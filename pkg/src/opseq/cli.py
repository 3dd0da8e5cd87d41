"""
Command-line front end.

Exit codes: 0 success, 1 methods disagree or a check fails, 2 unreadable or
invalid input, 3 numerical failure (singular operator, non-commuting
coefficients for the Chebyshev path, missing square root, size caps).

Problem files are JSON.  Complex numbers are ``[re, im]`` pairs (plain
numbers are accepted as real).  See ``README.md`` for the schema.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import companion, words
from .applications import nilpotent, shift, volterra
from .errors import (
    DegreeOverflowError,
    DimensionError,
    NotCommutingError,
    OpseqError,
    ResourceLimitError,
    SingularOperatorError,
    SquareRootUnavailableError,
)
from .solver import SOLVERS, Problem, relative_deviation

DEFAULT_TOL = 1e-9
MAX_DIM = 16
MAX_P = 200

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3

METHOD_ALIASES = {
    "iterative": "iterative",
    "closed": "closed_form",
    "chebyshev": "chebyshev",
    "words": "words_oracle",
}


class ProblemFileError(OpseqError):
    """The problem file is unreadable or violates the schema."""


# -- formatting ---------------------------------------------------------------


def fmt(x) -> str:
    x = complex(x)
    if x.imag == 0:
        return format(x.real, ".17g")
    return f"{x.real:.17g}{x.imag:+.17g}j"


class Report:
    """Writes tables to stdout and status lines to stdout or stderr (CSV mode)."""

    def __init__(self, csv: bool, out=None, err=None):
        self.csv = csv
        self.out = out or sys.stdout
        self.err = err or sys.stderr

    def row(self, *cells):
        sep = "," if self.csv else "  "
        print(sep.join(str(c) for c in cells), file=self.out)

    def note(self, text: str):
        print(text, file=self.err if self.csv else self.out)


# -- problem files ------------------------------------------------------------


def _complex(x, where: str) -> complex:
    if isinstance(x, bool):
        raise ProblemFileError(f"{where}: expected a number or [re, im], got {x!r}")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in x
    ):
        return complex(x[0], x[1])
    raise ProblemFileError(f"{where}: expected a number or [re, im], got {x!r}")


def _vector(x, where: str) -> np.ndarray:
    if not isinstance(x, list) or not x:
        raise ProblemFileError(f"{where}: expected a nonempty list of complex entries")
    return np.array([_complex(v, f"{where}[{i}]") for i, v in enumerate(x)], dtype=complex)


def _matrix(x, where: str) -> np.ndarray:
    if not isinstance(x, list) or not x:
        raise ProblemFileError(f"{where}: expected a nonempty list of rows")
    rows = [_vector(r, f"{where}[{i}]") for i, r in enumerate(x)]
    n = len(rows)
    for i, r in enumerate(rows):
        if r.size != n:
            raise ProblemFileError(f"{where}: row {i} has {r.size} entries, matrix must be {n}x{n}")
    return np.array(rows)


def _int(data, key, default=None) -> int:
    v = data.get(key, default)
    if not isinstance(v, int) or isinstance(v, bool):
        raise ProblemFileError(f"{key}: expected an integer, got {v!r}")
    return v


def _real(data, key, default=None) -> float:
    v = data.get(key, default)
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        raise ProblemFileError(f"{key}: expected a real number, got {v!r}")
    return float(v)


@dataclass
class ProblemFile:
    backend: str
    P: int
    tol: float | None = None
    method: str | None = None
    payload: dict = field(default_factory=dict)

    def to_problem(self) -> Problem:
        if self.backend == "matrix":
            d = self.payload
            return Problem(d["L0"], d["L1"], d["A"], d["B"], self.P, d["forcing"])
        if self.backend == "volterra":
            d = self.payload
            return volterra.volterra_problem(d["alpha"], d["beta"], d["f0"], d["f1"], d["boundary"], self.P)
        return shift.shift_problem(self.payload["tau0"], self.payload["tau1"], self.P)


def parse_problem(data, max_dim: int = MAX_DIM, max_p: int = MAX_P) -> ProblemFile:
    if not isinstance(data, dict):
        raise ProblemFileError("top level must be a JSON object")
    backend = data.get("backend", "matrix")
    if backend not in ("matrix", "shift", "volterra"):
        raise ProblemFileError(f"backend: unknown value {backend!r}")
    if "P" not in data:
        raise ProblemFileError("P: missing")
    P = _int(data, "P")
    if P < 0:
        raise ProblemFileError("P: must be nonnegative")
    if P > max_p:
        raise ProblemFileError(f"P: {P} exceeds the limit {max_p} (raise with --max-p)")
    tol = _real(data, "tol") if "tol" in data else None
    method = data.get("method")
    if method is not None and method not in (*METHOD_ALIASES, "all"):
        raise ProblemFileError(f"method: unknown value {method!r}")
    pf = ProblemFile(backend, P, tol, method)

    if backend == "matrix":
        for key in ("L0", "L1", "A", "B"):
            if key not in data:
                raise ProblemFileError(f"{key}: missing")
        L0, L1 = _matrix(data["L0"], "L0"), _matrix(data["L1"], "L1")
        if L0.shape != L1.shape:
            raise ProblemFileError(f"dimension mismatch: L0 is {L0.shape[0]}x{L0.shape[0]}"
                                   f" but L1 is {L1.shape[0]}x{L1.shape[0]}")
        n = L0.shape[0]
        if n > max_dim:
            raise ProblemFileError(f"dimension {n} exceeds the limit {max_dim} (raise with --max-dim)")
        A, B = _vector(data["A"], "A"), _vector(data["B"], "B")
        forcing = data.get("forcing", [])
        if not isinstance(forcing, list):
            raise ProblemFileError("forcing: expected a list of vectors")
        forcing = [_vector(v, f"forcing[{i}]") for i, v in enumerate(forcing)]
        for name, v in [("A", A), ("B", B)] + [(f"forcing[{i}]", v) for i, v in enumerate(forcing)]:
            if v.size != n:
                raise ProblemFileError(f"dimension mismatch: {name} has {v.size} entries, expected {n}")
        if forcing and len(forcing) != max(P - 1, 0):
            raise ProblemFileError(f"forcing: need phi_1..phi_{P - 1} ({max(P - 1, 0)} vectors),"
                                   f" got {len(forcing)}")
        pf.payload = {"L0": L0, "L1": L1, "A": A, "B": B, "forcing": forcing}
    elif backend == "shift":
        funcs = {}
        for key, default in (("f0", "exp_neg"), ("f1", "exp")):
            name = data.get(key, default)
            if name not in shift.BASE_FUNCTIONS:
                raise ProblemFileError(f"{key}: unknown base function {name!r};"
                                       f" choose from {sorted(shift.BASE_FUNCTIONS)}")
            funcs[key] = name
        samples = data.get("samples", [0.0, 0.5, 1.0])
        if not isinstance(samples, list) or not all(
            isinstance(t, (int, float)) and not isinstance(t, bool) for t in samples
        ):
            raise ProblemFileError("samples: expected a list of reals")
        if data.get("forcing"):
            raise ProblemFileError("forcing: not supported for the shift backend")
        pf.payload = {
            "tau0": _real(data, "tau0", 0.0),
            "tau1": _real(data, "tau1", 0.0),
            "samples": [float(t) for t in samples],
            **funcs,
        }
    else:
        cap = _int(data, "degree_cap", volterra.DEGREE_CAP)
        f0 = volterra.PolyFunction(
            [_complex(c, f"f0[{i}]") for i, c in enumerate(data.get("f0", [0]))], cap
        )
        f1 = volterra.PolyFunction(
            [_complex(c, f"f1[{i}]") for i, c in enumerate(data.get("f1", [1]))], cap
        )
        boundary = data.get("boundary", [0] * max(P - 1, 0))
        if not isinstance(boundary, list) or len(boundary) != max(P - 1, 0):
            raise ProblemFileError(f"boundary: need f_2(0)..f_P(0) ({max(P - 1, 0)} values)")
        pf.payload = {
            "alpha": _real(data, "alpha", 1.0),
            "beta": _real(data, "beta", 1.0),
            "f0": f0,
            "f1": f1,
            "boundary": [_complex(c, f"boundary[{i}]") for i, c in enumerate(boundary)],
        }
    return pf


def load_problem(path: str, max_dim: int = MAX_DIM, max_p: int = MAX_P) -> ProblemFile:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"{path}: invalid JSON ({exc})") from exc
    return parse_problem(data, max_dim, max_p)


def resolve_tol(flag: float | None, pf: ProblemFile | None = None) -> float:
    """``--tol``, then the file's ``tol``, then ``$OPSEQ_TOL``, then 1e-9."""
    if flag is not None:
        return flag
    if pf is not None and pf.tol is not None:
        return pf.tol
    env = os.environ.get("OPSEQ_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise ProblemFileError(f"OPSEQ_TOL: not a number: {env!r}") from None
    return DEFAULT_TOL


# -- subcommands --------------------------------------------------------------


def _fib_terms(P: int) -> int:
    # beta_P has Fibonacci(P) words
    a, b = 0, 1
    for _ in range(P):
        a, b = b, a + b
    return a


def _run_methods(prob, methods, explicit: bool, rep: Report, max_terms: int):
    results = {}
    for m in methods:
        if m == "words_oracle":
            if _fib_terms(prob.P) > max_terms and not explicit:
                rep.note(f"# skipped words: beta_{prob.P} exceeds {max_terms} terms")
                continue
            results[m] = SOLVERS[m](prob, max_terms)
            continue
        try:
            results[m] = SOLVERS[m](prob)
        except (NotCommutingError, SquareRootUnavailableError) as exc:
            if explicit:
                raise
            rep.note(f"# skipped {m}: {exc}")
    return results


def _compare(results: dict, tol: float, rep: Report) -> int:
    names = list(results)
    worst = 0.0
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            d = relative_deviation(results[a], results[b])
            worst = max(worst, d)
            rep.note(f"# deviation {a} vs {b}: {d:.3e}")
    if len(names) < 2:
        return EXIT_OK
    ok = worst <= tol
    rep.note(f"# max pairwise deviation {worst:.3e} (tol {tol:.1e}): {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_DISAGREE


def cmd_solve(args, rep: Report) -> int:
    pf = load_problem(args.file, args.max_dim, args.max_p)
    tol = resolve_tol(args.tol, pf)
    method = args.method or pf.method or "all"
    explicit = method != "all"
    prob = pf.to_problem()
    methods = list(SOLVERS) if not explicit else [METHOD_ALIASES[method]]
    results = _run_methods(prob, methods, explicit, rep, args.max_terms)

    if pf.backend == "matrix":
        rep.row("method", "p", "index", "re", "im")
        for name, seq in results.items():
            for p, y in enumerate(seq.values):
                for i, v in enumerate(np.ravel(y)):
                    rep.row(name, p, i, fmt(v.real), fmt(v.imag))
    elif pf.backend == "volterra":
        rep.row("method", "p", "power", "re", "im")
        for name, seq in results.items():
            for p, f in enumerate(seq.values):
                for k, c in enumerate(f.coef):
                    rep.row(name, p, k, fmt(c.real), fmt(c.imag))
    else:
        d = pf.payload
        funcs = {"f0": shift.BASE_FUNCTIONS[d["f0"]], "f1": shift.BASE_FUNCTIONS[d["f1"]]}
        samples = np.asarray(d["samples"])
        rep.row("method", "t", *(f"f_{p}" for p in range(prob.P + 1)))
        for name, seq in results.items():
            tab = np.array([e.evaluate(funcs, samples) for e in seq.values])
            for j, t in enumerate(samples):
                rep.row(name, fmt(t), *(fmt(v) for v in tab[:, j]))
    return _compare(results, tol, rep)


def cmd_words(args, rep: Report) -> int:
    if args.p is not None:
        build = words.beta_expansion if args.kind == "beta" else words.alpha_expansion
        ws = build(args.p, args.max_terms)
        expected = None
    else:
        if args.u is None or args.v is None:
            raise ProblemFileError("words: give --u and --v, or --p with --kind")
        ws = words.symmetrized_words(args.u, args.v, args.max_terms)
        expected = math.comb(args.u + args.v, min(args.u, args.v))
    rep.row(f"{ws} ({len(ws)} terms)")
    if expected is not None and expected != len(ws):
        rep.note(f"# term count {len(ws)} differs from binomial {expected}")
        return EXIT_DISAGREE
    return EXIT_OK


def _matrix_file(args) -> ProblemFile:
    pf = load_problem(args.file, args.max_dim, args.max_p)
    if pf.backend != "matrix":
        raise ProblemFileError(f"{pf.backend} backend: this subcommand needs a matrix problem")
    return pf


def cmd_companion(args, rep: Report) -> int:
    pf = _matrix_file(args)
    tol = resolve_tol(args.tol, pf)
    L0, L1 = pf.payload["L0"], pf.payload["L1"]
    rep.row("p", "residual")
    worst = 0.0
    for p in range(args.p + 1):
        r = companion.companion_residual(L0, L1, p)
        worst = max(worst, r)
        rep.row(p, fmt(r))
    ok = worst <= tol
    rep.note(f"# companion block identity up to p={args.p}: max residual {worst:.3e}"
             f" (tol {tol:.1e}): {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_DISAGREE


def cmd_genfun(args, rep: Report) -> int:
    pf = _matrix_file(args)
    tol = resolve_tol(args.tol, pf)
    L0, L1 = pf.payload["L0"], pf.payload["L1"]
    s = complex(args.s)
    beta = companion.genfun_beta_residuals(L0, L1, s, args.K)
    alpha = companion.genfun_alpha_residuals(L0, L1, s, args.K)
    rep.row("K", "beta_residual", "alpha_residual", "beta_abs", "alpha_abs")
    for k, (b, a) in enumerate(zip(beta, alpha)):
        rep.row(k, fmt(b.relative), fmt(a.relative), fmt(b.absolute), fmt(a.absolute))
    final = max(beta[-1].relative, alpha[-1].relative)
    if not companion.in_convergence_gate(L0, L1, s):
        rep.note(f"# s={fmt(s)} is outside the convergence gate; final residual {final:.3e} reported only")
        return EXIT_OK
    ok = final <= tol
    rep.note(f"# generating functions at K={args.K}: residual {final:.3e} (tol {tol:.1e}):"
             f" {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_DISAGREE


def cmd_demo_nilpotent(args, rep: Report) -> int:
    from .solver import alpha_operators, beta_operators

    tol = resolve_tol(args.tol)
    rng = np.random.default_rng(args.seed)
    worst = np.zeros((args.P + 1, 2))
    zero_branch = True
    for _ in range(args.pairs):
        M0, M1 = nilpotent.random_index2_pair(args.n, rng)
        betas = beta_operators(M0, M1, args.P)
        alphas = alpha_operators(M0, M1, args.P, betas)
        for p in range(args.P + 1):
            nb, na = nilpotent.nilpotent_beta(p, M0, M1), nilpotent.nilpotent_alpha(p, M0, M1)
            scale = max(np.max(np.abs(betas[p])), np.max(np.abs(alphas[p])), 1.0)
            worst[p, 0] = max(worst[p, 0], np.max(np.abs(nb - betas[p])) / scale)
            worst[p, 1] = max(worst[p, 1], np.max(np.abs(na - alphas[p])) / scale)
            if p >= 4 and p % 3 == 1 and np.any(na != 0):
                zero_branch = False
    rep.row("p", "beta_deviation", "alpha_deviation")
    for p in range(args.P + 1):
        rep.row(p, fmt(worst[p, 0]), fmt(worst[p, 1]))
    ok = worst.max() <= tol and zero_branch
    rep.note(f"# {args.pairs} random index-2 pairs, n={args.n}: max deviation {worst.max():.3e},"
             f" alpha_(3k+1) exactly zero: {zero_branch}: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_DISAGREE


def cmd_demo_shift(args, rep: Report) -> int:
    tol = resolve_tol(args.tol)
    f0, f1 = shift.BASE_FUNCTIONS[args.f0], shift.BASE_FUNCTIONS[args.f1]
    samples = [float(t) for t in args.samples.split(",")]
    sol = shift.solve_shift_problem(f0, f1, args.tau0, args.tau1, args.P, samples)
    rep.row("t", *(f"f_{p}" for p in range(args.P + 1)))
    for j, t in enumerate(sol.samples):
        rep.row(fmt(t), *(fmt(v) for v in sol.binomial[:, j]))
    dev = sol.max_deviation()
    ok = dev <= tol
    rep.note(f"# recurrence / resolutive / binomial / chebyshev agreement: {dev:.3e}"
             f" (tol {tol:.1e}): {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_DISAGREE


def cmd_demo_volterra(args, rep: Report) -> int:
    tol = resolve_tol(args.tol)
    kernel_dev = 0.0
    for n in range(1, args.max_n + 1):
        for j in range(args.max_degree + 1):
            f = volterra.PolyFunction.monomial(j)
            kernel_dev = max(kernel_dev, volterra.volterra_power(n, f).max_abs_diff(volterra.cauchy_kernel(n, f)))
    app_ok = kernel_dev <= 1e-13
    rep.note(f"# iterated integral vs Cauchy kernel, n<={args.max_n}, degree<={args.max_degree}:"
             f" {kernel_dev:.3e}: {'PASS' if app_ok else 'FAIL'}")

    f0 = volterra.PolyFunction([1.0])
    f1 = volterra.PolyFunction([0.0, 1.0])
    boundary = [1.0 / (p + 2) for p in range(args.P - 1)]
    sol = volterra.solve_volterra_problem(args.alpha, args.beta, f0, f1, boundary, args.P)
    dev = sol.max_deviation()
    resid = max(sol.derivative_residuals)
    bnd = max(sol.boundary_errors)
    sol_ok = dev <= tol and resid <= 1e-11 and bnd <= 1e-11
    rep.note(f"# alpha={args.alpha}, beta={args.beta}: path deviation {dev:.3e},"
             f" derivative residual {resid:.3e}, boundary error {bnd:.3e}: {'PASS' if sol_ok else 'FAIL'}")
    grid = np.linspace(0.0, 1.0, 5)
    rep.row("t", *(f"f_{p}" for p in range(args.P + 1)))
    for t in grid:
        rep.row(fmt(t), *(fmt(f(t)) for f in sol.iterative))
    return EXIT_OK if app_ok and sol_ok else EXIT_DISAGREE


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opseq", description="Second-order operator difference equations: solve and verify."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="relative tolerance (default: file 'tol', $OPSEQ_TOL, 1e-9)")
    common.add_argument("--csv", action="store_true", help="plain CSV on stdout, status on stderr")
    common.add_argument("--max-terms", type=int, default=words.DEFAULT_MAX_TERMS)
    common.add_argument("--max-dim", type=int, default=MAX_DIM)
    common.add_argument("--max-p", type=int, default=MAX_P)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve a problem file")
    p.add_argument("file")
    p.add_argument("--method", choices=[*METHOD_ALIASES, "all"], default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("words", parents=[common], help="list symmetrized words or alpha/beta expansions")
    p.add_argument("--u", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--kind", choices=["alpha", "beta"], default="beta")
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("companion", parents=[common], help="check companion-matrix powers")
    p.add_argument("file")
    p.add_argument("--p", type=int, default=10)
    p.set_defaults(func=cmd_companion)

    p = sub.add_parser("genfun-check", parents=[common], help="truncated generating-function residuals")
    p.add_argument("file")
    p.add_argument("--s", default="0.1")
    p.add_argument("--K", type=int, default=40)
    p.set_defaults(func=cmd_genfun)

    p = sub.add_parser("demo-nilpotent", parents=[common], help="index-2 nilpotent closed forms")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--P", type=int, default=12)
    p.add_argument("--pairs", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_demo_nilpotent)

    p = sub.add_parser("demo-shift", parents=[common], help="translation recurrence")
    p.add_argument("--tau0", type=float, default=0.2)
    p.add_argument("--tau1", type=float, default=0.3)
    p.add_argument("--P", type=int, default=8)
    p.add_argument("--samples", default="0,0.5,1")
    p.add_argument("--f0", choices=sorted(shift.BASE_FUNCTIONS), default="exp_neg")
    p.add_argument("--f1", choices=sorted(shift.BASE_FUNCTIONS), default="exp")
    p.set_defaults(func=cmd_demo_shift)

    p = sub.add_parser("demo-volterra", parents=[common], help="Volterra integro-difference equation")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--P", type=int, default=10)
    p.set_defaults(func=cmd_demo_volterra)
    return parser


def main(argv=None, out=None, err=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report(args.csv, out, err)
    try:
        return args.func(args, rep)
    except (ProblemFileError, DimensionError) as exc:
        print(f"error: {exc}", file=rep.err)
        return EXIT_INPUT
    except NotCommutingError as exc:
        print(f"error: {exc}; use --method iterative or closed", file=rep.err)
        return EXIT_NUMERIC
    except (
        SingularOperatorError,
        SquareRootUnavailableError,
        ResourceLimitError,
        DegreeOverflowError,
    ) as exc:
        print(f"error: {exc}", file=rep.err)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=rep.err)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
