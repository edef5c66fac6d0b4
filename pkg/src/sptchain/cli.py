"""Command-line entry point: ``sptchain {sweep,distance,entropy,verify}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import List, Optional, Sequence

import numpy as np

from sptchain import hamiltonian as ham
from sptchain import pauli
from sptchain.entropy import as_kind, make_layout, topo_entropy
from sptchain.hamiltonian import Model, ModelSpec
from sptchain.spectra import (
    DEFAULT_KRYLOV_DIM,
    DEFAULT_SEED,
    DEFAULT_TOL,
    lowest_eigenpairs,
    symmetric_spectrum,
)
from sptchain import verify as verify_mod

log = logging.getLogger("sptchain")

MODEL_CHOICES = ("clu", "syb", "zxxz")
SHORT_NAME = {Model.CLUSTER: "clu", Model.SYMMETRY_BREAKING: "syb", Model.ZXXZ: "zxxz"}
GROUND_ENERGY_TOL = 1e-8


@dataclass
class SweepConfig:
    model: str
    n: int
    boundary: str = "open"
    b_min: float = 0.0
    b_max: float = 2.0
    b_steps: int = 41
    cuts: Sequence[str] = ("t", "q")
    cut_ends: Optional[Sequence[int]] = None
    seed: int = DEFAULT_SEED
    tol: float = DEFAULT_TOL
    krylov_dim: int = DEFAULT_KRYLOV_DIM
    out: Optional[str] = None
    format: str = "csv"
    workers: int = 1

    def __post_init__(self):
        if self.b_min > self.b_max:
            raise ValueError("b-min exceeds b-max")
        if self.b_steps < 1:
            raise ValueError("b-steps must be at least 1")
        if self.cut_ends is not None and len(self.cuts) != 1:
            raise ValueError("explicit --cuts needs a single cut kind")
        ModelSpec(self.model, self.n, self.b_min, self.boundary)
        for kind in self.cuts:
            make_layout(self.n, kind, self.cut_ends)

    def grid(self) -> np.ndarray:
        if self.b_steps == 1:
            return np.array([self.b_min])
        return np.linspace(self.b_min, self.b_max, self.b_steps)


@dataclass
class SweepRow:
    model: str
    n: int
    boundary: str
    b: float
    cut_kind: str
    s_topo: float
    s_ab: float
    s_bc: float
    s_b: float
    s_abc: float
    ground_energy: float
    symmetric_energy: float
    converged: bool


def _sweep_point(config: SweepConfig, b: float) -> List[SweepRow]:
    spec = ModelSpec(config.model, config.n, float(b), config.boundary)
    h = ham.build(spec)
    sym = symmetric_spectrum(
        h,
        ham.field_sector_generators(spec),
        tol=config.tol,
        seed=config.seed,
        krylov_dim=config.krylov_dim,
    )
    ground = lowest_eigenpairs(
        h, k=1, tol=max(config.tol, GROUND_ENERGY_TOL), seed=config.seed,
        krylov_dim=config.krylov_dim,
    )
    v = sym.eigenvectors[0]
    rows = []
    for kind in config.cuts:
        rec = topo_entropy(v, make_layout(config.n, kind, config.cut_ends))
        rows.append(
            SweepRow(
                model=SHORT_NAME[spec.model],
                n=config.n,
                boundary=spec.boundary.value,
                b=float(b),
                cut_kind=as_kind(kind).value,
                s_topo=rec.s_topo,
                s_ab=rec.s_ab,
                s_bc=rec.s_bc,
                s_b=rec.s_b,
                s_abc=rec.s_abc,
                ground_energy=ground.ground_energy,
                symmetric_energy=sym.ground_energy,
                converged=sym.converged and ground.converged,
            )
        )
    return rows


def cmd_sweep(config: SweepConfig) -> List[SweepRow]:
    grid = config.grid()
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            chunks = list(pool.map(_sweep_point, [config] * len(grid), grid))
    else:
        chunks = [_sweep_point(config, b) for b in grid]
    return [row for chunk in chunks for row in chunk]


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f.name for f in fields(SweepRow)])
    for row in rows:
        writer.writerow([_fmt(getattr(row, f.name)) for f in fields(SweepRow)])
    return buf.getvalue()


def rows_to_json(rows: Sequence[SweepRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2) + "\n"


def _label(mask: int, op: str = "X") -> str:
    """1-based rendering such as ``X1 X3 X5``."""
    return " ".join(f"{op}{j + 1}" for j in range(mask.bit_length()) if mask >> j & 1)


def cmd_distance(model: str, n: int) -> dict:
    spec = ModelSpec(model, n)
    group = ham.stabilizer_group(spec)
    logicals = pauli.x_type_logicals(group)
    period = 3 if spec.model is Model.ZXXZ else 2
    return {
        "model": SHORT_NAME[spec.model],
        "n": n,
        "generators": len(group),
        "ground_space_dim": 2 ** (n - len(group)),
        "x_logicals": [_label(v) for v in logicals],
        "classical_distance": pauli.classical_distance(group),
        "expected": n // period,
        "expected_formula": f"floor(N/{period})",
    }


def cmd_entropy(
    model: str,
    n: int,
    b: float,
    cut: str,
    ends: Optional[Sequence[int]] = None,
    boundary: str = "open",
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    krylov_dim: int = DEFAULT_KRYLOV_DIM,
):
    spec = ModelSpec(model, n, b, boundary)
    layout = make_layout(n, cut, ends)
    res = symmetric_spectrum(
        ham.build(spec), ham.field_sector_generators(spec), tol=tol, seed=seed,
        krylov_dim=krylov_dim,
    )
    return topo_entropy(res.eigenvectors[0], layout), res


def _parse_ends(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--cuts expects comma-separated integers, got {text!r}")


def _cut_list(cut: str) -> List[str]:
    return ["t", "q"] if cut == "both" else [cut]


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--krylov-dim", type=int, default=DEFAULT_KRYLOV_DIM)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sptchain", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="topological entropy along a field sweep")
    p.add_argument("--model", choices=MODEL_CHOICES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--boundary", choices=("open", "periodic"), default="open")
    p.add_argument("--b-min", type=float, default=0.0)
    p.add_argument("--b-max", type=float, default=2.0)
    p.add_argument("--b-steps", type=int, default=41)
    p.add_argument("--cut", choices=("t", "q", "both"), default="both")
    p.add_argument("--cuts", type=_parse_ends, default=None, help="1-based block ends, e.g. 3,6,9")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=int, default=1)
    _add_solver_flags(p)

    p = sub.add_parser("distance", help="classical code distance report")
    p.add_argument("--model", choices=MODEL_CHOICES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("entropy", help="single-point topological entropy")
    p.add_argument("--model", choices=MODEL_CHOICES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--boundary", choices=("open", "periodic"), default="open")
    p.add_argument("--cut", choices=("t", "q"), default="t")
    p.add_argument("--cuts", type=_parse_ends, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_solver_flags(p)

    p = sub.add_parser("verify", help="run the built-in consistency checks")
    p.add_argument("--suite", choices=("pauli", "spectra", "entropy", "transforms", "all"), default="all")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    return parser


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        if args.command == "sweep":
            config = SweepConfig(
                model=args.model, n=args.n, boundary=args.boundary, b_min=args.b_min,
                b_max=args.b_max, b_steps=args.b_steps, cuts=_cut_list(args.cut),
                cut_ends=args.cuts, seed=args.seed, tol=args.tol, krylov_dim=args.krylov_dim,
                out=args.out, format=args.format, workers=args.workers,
            )
            rows = cmd_sweep(config)
            text = rows_to_csv(rows) if config.format == "csv" else rows_to_json(rows)
            _emit(text, config.out)
            return 0
        if args.command == "distance":
            report = cmd_distance(args.model, args.n)
            if args.format == "json":
                print(json.dumps(report, indent=2, default=str))
            else:
                print(f"model {report['model']}  N={report['n']}")
                print(f"stabilizer generators: {report['generators']}")
                print(f"ground-space dimension: {report['ground_space_dim']}")
                for i, lab in enumerate(report["x_logicals"], 1):
                    print(f"X-type logical {i}: {lab}")
                print(
                    f"classical distance: {report['classical_distance']}"
                    f"  ({report['expected_formula']} = {report['expected']})"
                )
            return 0
        if args.command == "entropy":
            rec, res = cmd_entropy(
                args.model, args.n, args.b, args.cut, args.cuts, args.boundary,
                args.tol, args.seed, args.krylov_dim,
            )
            payload = {
                "model": args.model, "n": args.n, "b": args.b, "cut": rec.layout.kind.value,
                "layout": rec.layout.describe(), "s_topo": rec.s_topo, "s_ab": rec.s_ab,
                "s_bc": rec.s_bc, "s_b": rec.s_b, "s_abc": rec.s_abc,
                "symmetric_energy": res.ground_energy, "converged": res.converged,
            }
            if args.format == "json":
                print(json.dumps(payload, indent=2))
            else:
                for key, value in payload.items():
                    print(f"{key:>17}: {_fmt(value)}")
            return 0
        if args.command == "verify":
            checks = verify_mod.run(args.suite)
            failed = [c for c in checks if not c.passed]
            if args.json:
                print(json.dumps([c.as_dict() for c in checks], indent=2))
            else:
                for c in checks:
                    tag = "INFO" if c.informational else ("PASS" if c.passed else "FAIL")
                    print(f"[{tag}] {c.suite}: {c.name}" + (f"  ({c.detail})" if c.detail else ""))
                print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
            return 1 if failed else 0
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
