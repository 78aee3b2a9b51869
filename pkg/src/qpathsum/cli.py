"""Command-line front end: every module as a subcommand emitting CSV or JSON tables.

Exit codes: 0 on success, 1 on computation-budget or I/O errors, 2 on usage
or validation errors.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import algorithms, anneal, pathsum, statmech, walks
from .core import QuantumState
from .gates import random_circuit


@dataclass
class Table:
    columns: list[str]
    rows: list[tuple]


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _json_value(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        return v if math.isfinite(v) else str(v)
    return value


def render(table: Table, fmt: str) -> str:
    if fmt == "json":
        records = [dict(zip(table.columns, map(_json_value, row))) for row in table.rows]
        return json.dumps({"columns": table.columns, "rows": records}, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


# -- subcommand handlers ------------------------------------------------------

def cmd_pathsum(args) -> Table:
    rng = np.random.default_rng(args.seed)
    circuit = random_circuit(args.n, args.depth, rng, max_hadamards=args.max_hadamards)
    U = pathsum.propagator_matrix(circuit, workers=args.threads)
    rows = []
    for z_out in range(2**args.n):
        for z_in in range(2**args.n):
            u = U[z_out, z_in]
            rows.append((z_in, z_out, u.real, u.imag))
    return Table(["z_in", "z_out", "re", "im"], rows)


def cmd_deutsch(args) -> Table:
    functions = [tuple(args.f)] if args.f else [(0, 0), (1, 1), (0, 1), (1, 0)]
    rows = []
    for f in functions:
        result = algorithms.deutsch_run(f)
        rows.append((f[0], f[1], result.verdict, result.outcome, result.probability))
    return Table(["f0", "f1", "verdict", "outcome", "probability"], rows)


def cmd_grover(args) -> Table:
    instance = algorithms.GroverInstance(args.n, args.w)
    if not 0 <= args.iters <= 10_000:
        raise ValueError(f"--iters must lie in [0, 10000], got {args.iters}")
    profile = algorithms.AmplitudeProfile.uniform(instance.N)
    rows = []
    for k in range(args.iters + 1):
        if k:
            profile = algorithms.grover_iterate(profile, instance)
        for z, a in enumerate(profile.amplitudes):
            rows.append((k, z, a.real, a.imag, abs(a) ** 2))
    return Table(["iter", "z", "amplitude_re", "amplitude_im", "prob"], rows)


def cmd_anneal_protocol(args) -> Table:
    if args.samples < 2:
        raise ValueError("--samples must be at least 2")
    local = anneal.local_adiabatic_schedule(args.N, args.eps)
    linear = anneal.linear_schedule(anneal.linear_schedule_time_bound(args.N, args.eps))
    rows = []
    for name, sched in (("linear", linear), ("local", local)):
        for t in np.linspace(0.0, sched.total_time, args.samples):
            lam = float(sched(t))
            rows.append((name, float(t), lam, float(anneal.grover_gap(lam, args.N))))
    return Table(["schedule", "t", "lambda", "gap"], rows)


def cmd_anneal_qaoa(args) -> Table:
    pair = anneal.ring_hamiltonians(args.n, mixer_sign=args.mixer_sign)
    schedule = anneal.linear_schedule(args.T)
    betas, gammas = anneal.trotterize(schedule, args.M)
    psi = QuantumState.uniform(args.n)
    V = pair.V.matrix
    rows = []
    for layer, (b, g) in enumerate(zip(betas, gammas), start=1):
        psi = anneal.qaoa_evolve([b], [g], pair, psi)
        energy = float(np.real(np.vdot(psi.amplitudes, V @ psi.amplitudes)))
        rows.append((layer, float(b), float(g), energy))
    return Table(["layer", "beta", "gamma", "energy"], rows)


def cmd_anneal_gap(args) -> Table:
    if args.points < 2:
        raise ValueError("--points must be at least 2")
    n = int(round(math.log2(args.N)))
    if 2**n != args.N:
        raise ValueError(f"--N must be a power of two, got {args.N}")
    pair = anneal.grover_pair(n, 0)
    rows = []
    for lam in np.linspace(0.0, 1.0, args.points):
        evals = np.linalg.eigvalsh(anneal.interpolated_hamiltonian(pair, float(lam)).matrix)
        rows.append((float(lam), float(anneal.grover_gap(float(lam), args.N)), float(evals[1] - evals[0])))
    return Table(["lambda", "gap", "gap_dense"], rows)


def cmd_walks_classical(args) -> Table:
    dist = walks.classical_rw_distribution(args.steps)
    return Table(["z", "probability"], sorted(dist.items()))


def cmd_walks_ctqrw(args) -> Table:
    if args.dmax < 0:
        raise ValueError("--dmax must be nonnegative")
    rows = []
    for d in range(-args.dmax, args.dmax + 1):
        if args.kernel == "bessel":
            a = walks.ctqrw_bessel(args.t, d)
        else:
            a = walks.ctqrw_exact(args.N, args.t, d)
        rows.append((d, a.real, a.imag, abs(a) ** 2))
    return Table(["d", "re", "im", "probability"], rows)


_COINS = {"up": (1.0, 0.0), "down": (0.0, 1.0), "symmetrized": (1.0, 1j)}


def cmd_walks_dtqrw(args) -> Table:
    if not 0 <= args.steps <= 1000:
        raise ValueError(f"--steps must lie in [0, 1000], got {args.steps}")
    state = walks.dtqrw_run(args.steps, _COINS[args.coin])
    return Table(["z", "probability"], list(zip(state.positions.tolist(), state.probabilities)))


def cmd_walks_checkerboard(args) -> Table:
    rows = []
    for z in range(-args.steps, args.steps + 1):
        k = walks.checkerboard_kernel(args.steps, z, args.mass_a, args.start)
        rows.append((z, k.real, k.imag, abs(k) ** 2))
    return Table(["z", "re", "im", "probability"], rows)


def cmd_walks_grover_walk(args) -> Table:
    if args.points < 2:
        raise ValueError("--points must be at least 2")
    gamma = 1.0 / args.N if args.gamma is None else args.gamma
    T = math.pi / 2 * math.sqrt(args.N) if args.T is None else args.T
    rows = [(float(t), walks.grover_walk(args.N, gamma, float(t))) for t in np.linspace(0.0, T, args.points)]
    return Table(["t", "probability"], rows)


def cmd_statmech_transfer(args) -> Table:
    rows = [(n, statmech.partition_transfer(n, args.h, args.J, args.beta)) for n in range(2, args.n_max + 1)]
    return Table(["n", "Z"], rows)


def cmd_statmech_trotter(args) -> Table:
    exact = statmech.exact_partition_single_spin(args.h, args.J, args.beta)
    rows = []
    M = 2
    while M <= args.M_max:
        z = statmech.trotter_partition_single_spin(args.h, args.J, args.beta, M)
        rows.append((M, z, abs(z - exact)))
        M *= 2
    return Table(["M", "Z_M", "abs_error"], rows)


_PHASE_LABEL = {1: "+1", 1j: "+i", -1: "-1", -1j: "-i"}


def cmd_statmech_sign(args) -> Table:
    hist = statmech.sign_statistics(args.model, args.h, args.J, args.beta, args.M)
    rows = [(_PHASE_LABEL[p], c, w) for p, (c, w) in hist.bins.items()]
    return Table(["phase", "count", "weight"], rows)


def cmd_statmech_action(args) -> Table:
    if args.samples < 1:
        raise ValueError("--samples must be positive")
    rng = np.random.default_rng(args.seed)
    rows = []
    for i in range(args.samples):
        config = rng.choice([-1, 1], size=(args.M, args.n))
        act = statmech.tfim_euclidean_action(config, args.h, args.J, args.dtau)
        rows.append((i, statmech.hamming_between_slices(config), act.temporal, act.spatial,
                     act.offset, act.log_prefactor, act.value))
    return Table(["sample", "hamming", "temporal", "spatial", "offset", "log_prefactor", "action"], rows)


def cmd_statmech_propagator(args) -> Table:
    exact = statmech.free_propagator_exact(args.m, args.t, args.xI, args.xF)
    rows = []
    for M in args.M:
        k = statmech.free_propagator_discretized(args.m, args.t, args.xI, args.xF, M, args.extent,
                                                 boundary=args.boundary)
        rows.append((M, k.real, k.imag, abs(k), abs(k - exact)))
    return Table(["M", "re", "im", "modulus", "abs_error"], rows)


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default="-", help="output file ('-' for stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes for parallel sweeps (default: $PATHSUM_THREADS or 1)")

    parser = argparse.ArgumentParser(prog="qpathsum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pathsum", parents=[common], help="propagator of a seeded random H/Toffoli circuit")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--max-hadamards", type=int, default=12)
    p.set_defaults(func=cmd_pathsum)

    p = sub.add_parser("deutsch", parents=[common], help="classify f: {0,1} -> {0,1}")
    p.add_argument("--f", type=int, nargs=2, choices=(0, 1), metavar=("F0", "F1"),
                   help="truth table; all four functions when omitted")
    p.set_defaults(func=cmd_deutsch)

    p = sub.add_parser("grover", parents=[common], help="amplitude profile per Grover iteration")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--w", type=int, default=1)
    p.add_argument("--iters", type=int, default=3)
    p.set_defaults(func=cmd_grover)

    an = sub.add_parser("anneal", help="adiabatic schedules and QAOA").add_subparsers(dest="action", required=True)
    p = an.add_parser("protocol", parents=[common], help="linear and local schedules with the gap")
    p.add_argument("--N", type=int, default=128)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--samples", type=int, default=201)
    p.set_defaults(func=cmd_anneal_protocol)
    p = an.add_parser("qaoa", parents=[common], help="trotterised linear anneal on the Ising ring")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--M", type=int, default=16)
    p.add_argument("--T", type=float, default=10.0)
    p.add_argument("--mixer-sign", type=int, choices=(-1, 1), default=-1)
    p.set_defaults(func=cmd_anneal_qaoa)
    p = an.add_parser("gap", parents=[common], help="Grover gap: closed form vs dense eigensolve")
    p.add_argument("--N", type=int, default=16)
    p.add_argument("--points", type=int, default=11)
    p.set_defaults(func=cmd_anneal_gap)

    wk = sub.add_parser("walks", help="classical and quantum walks").add_subparsers(dest="action", required=True)
    p = wk.add_parser("classical", parents=[common], help="binomial random-walk distribution")
    p.add_argument("--steps", type=int, default=50)
    p.set_defaults(func=cmd_walks_classical)
    p = wk.add_parser("ctqrw", parents=[common], help="continuous-time walk kernel on a ring")
    p.add_argument("--N", type=int, default=1000)
    p.add_argument("--t", type=float, default=10.0)
    p.add_argument("--dmax", type=int, default=40)
    p.add_argument("--kernel", choices=("exact", "bessel"), default="exact")
    p.set_defaults(func=cmd_walks_ctqrw)
    p = wk.add_parser("dtqrw", parents=[common], help="Hadamard-coin walk on the line")
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--coin", choices=tuple(_COINS), default="symmetrized")
    p.set_defaults(func=cmd_walks_dtqrw)
    p = wk.add_parser("checkerboard", parents=[common], help="checkerboard kernel by reversal counting")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--mass-a", type=float, default=0.1)
    p.add_argument("--start", choices=("right", "left", "superposed"), default="right")
    p.set_defaults(func=cmd_walks_checkerboard)
    p = wk.add_parser("grover-walk", parents=[common], help="search by walk on the complete graph")
    p.add_argument("--N", type=int, default=64)
    p.add_argument("--gamma", type=float, default=None, help="hopping rate (default 1/N)")
    p.add_argument("--T", type=float, default=None, help="final time (default pi sqrt(N) / 2)")
    p.add_argument("--points", type=int, default=101)
    p.set_defaults(func=cmd_walks_grover_walk)

    sm = sub.add_parser("statmech", help="transfer matrices and Trotter mappings").add_subparsers(
        dest="action", required=True)
    p = sm.add_parser("transfer", parents=[common], help="ring partition function Tr T^n")
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--h", type=float, default=1.0)
    p.add_argument("--J", type=float, default=0.5)
    p.add_argument("--beta", type=float, default=1.0)
    p.set_defaults(func=cmd_statmech_transfer)
    p = sm.add_parser("trotter", parents=[common], help="single-spin Trotter convergence")
    p.add_argument("--h", type=float, default=1.0)
    p.add_argument("--J", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--M-max", type=int, default=256)
    p.set_defaults(func=cmd_statmech_trotter)
    p = sm.add_parser("sign", parents=[common], help="phase histogram of closed-path weights")
    p.add_argument("--model", choices=("XZ", "XY"), default="XY")
    p.add_argument("--h", type=float, default=1.0)
    p.add_argument("--J", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--M", type=int, default=4)
    p.set_defaults(func=cmd_statmech_sign)
    p = sm.add_parser("action", parents=[common], help="Euclidean action of seeded random spin grids")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--M", type=int, default=8)
    p.add_argument("--h", type=float, default=1.0)
    p.add_argument("--J", type=float, default=1.0)
    p.add_argument("--dtau", type=float, default=0.125)
    p.add_argument("--samples", type=int, default=10)
    p.set_defaults(func=cmd_statmech_action)
    p = sm.add_parser("propagator", parents=[common], help="time-sliced free propagator vs closed form")
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--xI", type=float, default=0.0)
    p.add_argument("--xF", type=float, default=1.0)
    p.add_argument("--M", type=int, nargs="+", default=[1, 2, 4, 8, 16])
    p.add_argument("--extent", type=float, default=20.0)
    p.add_argument("--boundary", choices=("taper", "hard"), default="taper")
    p.set_defaults(func=cmd_statmech_propagator)
    return parser


def _resolve_threads(flag: int | None) -> int:
    if flag is not None:
        threads = flag
    else:
        env = os.environ.get("PATHSUM_THREADS", "1")
        try:
            threads = int(env)
        except ValueError:
            raise ValueError(f"PATHSUM_THREADS must be an integer, got {env!r}") from None
    if threads < 1:
        raise ValueError(f"thread count must be at least 1, got {threads}")
    return threads


BUDGET_ERRORS = (pathsum.PathBudgetExceeded, statmech.SignBudgetExceeded, anneal.ScheduleError)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.threads = _resolve_threads(args.threads)
        text = render(args.func(args), args.format)
    except BUDGET_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.out == "-":
            sys.stdout.write(text)
        else:
            with open(args.out, "w", newline="\n", encoding="utf-8") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
