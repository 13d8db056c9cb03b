"""Command-line surface, configuration parsing, and persistence."""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import os
import sys
import tempfile
import time
from pathlib import Path

from . import __version__
from .census import count_copies, count_faces, count_k_set_witness_pairs
from .complexes import SimplicialComplex, m_neighbor_complex
from .errors import ConfigError, MncomplexError
from .experiments import (
    ExperimentConfig,
    exact_small_distribution,
    face_covariance_probe,
    q_from_rule,
    run_copy_count_sweep,
    run_support_census,
    run_threshold_probe,
    target_complex_from_facets,
    theorem3_ratio_probe,
)
from .graph_core import Graph, Seed, sample_er
from .regime import compute_t_tau, regime_params
from .shapes import (
    FShape,
    conjecture2_inequalities,
    convert_version,
    m_density,
    pair_density,
    reduced_parameters,
    shape_from_complex,
)

log = logging.getLogger("mncomplex")

_CONFIG_KEYS = {f.name for f in dataclasses.fields(ExperimentConfig)}


@dataclasses.dataclass
class RunManifest:
    """Reproducibility record written next to every experiment output."""

    version: str
    config: dict
    master_seed: int
    started: float
    finished: float
    outputs: list

    def write(self, path: Path) -> None:
        path.write_text(json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True))


def parse_config(path: str | None, flag_values: dict) -> ExperimentConfig:
    """Merge a strict JSON config file with command-line flags; flags win."""
    data: dict = {}
    if path is not None:
        try:
            data = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        unknown = set(data) - _CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for key, value in flag_values.items():
        if value is None:
            continue
        if key in data and data[key] != value:
            log.warning("flag --%s overrides config value %r", key, data[key])
        data[key] = value
    missing = [k for k in ("kind",) if k not in data]
    if missing:
        raise ConfigError(f"missing required config keys: {missing}")
    for key in ("n_values", "m_values", "p_values", "beta_values", "x_facets"):
        if key in data:
            data[key] = tuple(
                tuple(f) for f in data[key]
            ) if key == "x_facets" else tuple(data[key])
    try:
        return ExperimentConfig(**data).validate()
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def write_records(records, path: Path, fieldnames, sidecar: dict | None = None) -> list:
    """Write a CSV atomically (temp file + rename) with a JSON summary sidecar."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(fieldnames))
            writer.writeheader()
            for rec in records:
                writer.writerow(rec)
        os.replace(tmp, path)
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    outputs = [str(path)]
    if sidecar is not None:
        side = path.with_suffix(".summary.json")
        side.write_text(json.dumps(sidecar, indent=2, sort_keys=True, default=str))
        outputs.append(str(side))
    return outputs


def _emit(obj, as_json: bool) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True, default=str))
    else:
        if isinstance(obj, dict):
            for key, value in obj.items():
                print(f"{key}: {value}")
        else:
            print(obj)


def _parse_facets(spec: str):
    """Facets as semicolon-separated comma lists, e.g. '0,1,2;2,3,4'."""
    try:
        return tuple(
            tuple(int(v) for v in part.split(",")) for part in spec.split(";") if part
        )
    except ValueError as exc:
        raise ConfigError(f"bad facet spec {spec!r}") from exc


# -- subcommand handlers -------------------------------------------------------


def cmd_sample(args) -> int:
    g = sample_er(args.n, args.p, Seed(args.seed, args.trial))
    text = g.to_edge_list()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_complex(args) -> int:
    if args.from_graph:
        g = Graph.from_edge_list(Path(args.from_graph).read_text())
    else:
        g = sample_er(args.n, args.p, Seed(args.seed, args.trial))
    if args.cap is not None:
        cap = args.cap
    else:
        t, _ = compute_t_tau(g.n, args.m, args.p)
        cap = t + 2
    kx = m_neighbor_complex(g, args.m, cap)
    if args.json:
        _emit(count_faces(kx).as_dict(), True)
    text = kx.to_text()
    if args.output:
        Path(args.output).write_text(text)
    elif not args.json:
        sys.stdout.write(text)
    return 0


def cmd_regime(args) -> int:
    params = regime_params(args.n, args.m, args.p)
    _emit(params.as_dict(), True)
    return 0


def cmd_shape(args) -> int:
    if args.verb == "from-complex":
        kx = SimplicialComplex.from_text(Path(args.complex_file).read_text())
        shape = shape_from_complex(kx)
        _emit(json.loads(shape.to_json()), True)
    elif args.verb == "convert":
        shape_obj = json.loads(args.shape)
        phi = int(shape_obj["phi"])
        values = shape_obj[args.frm] if args.frm in shape_obj else shape_obj["cap"]
        out = convert_version(values, args.frm, args.to, phi)
        _emit({"phi": phi, args.to: out}, True)
    elif args.verb == "density":
        x = FShape.from_json(args.shape)
        w = FShape.from_json(args.witness)
        _emit({"pair_density": str(pair_density(x, w))}, True)
    elif args.verb == "m-density":
        x = FShape.from_json(args.shape)
        _emit({"m": args.m, "m_density": str(m_density(x, args.m, args.budget))}, True)
    elif args.verb == "reduce":
        x = FShape.from_json(args.shape)
        w = FShape.from_json(args.witness)
        params = reduced_parameters(x, w)
        ineqs = conjecture2_inequalities(params)
        _emit(
            {
                "params": params.as_dict(),
                "ineq3": ineqs["ineq3"].as_dict(),
                "ineq4": ineqs["ineq4"].as_dict(),
            },
            True,
        )
    else:
        raise ConfigError(f"unknown shape verb {args.verb!r}")
    return 0


def cmd_census(args) -> int:
    if args.verb == "faces":
        kx = SimplicialComplex.from_text(Path(args.complex_file).read_text())
        _emit(count_faces(kx).as_dict(), True)
    elif args.verb == "copies":
        kx = SimplicialComplex.from_text(Path(args.complex_file).read_text())
        x = target_complex_from_facets(_parse_facets(args.facets))
        _emit({"copies": count_copies(kx, x)}, True)
    elif args.verb == "witness-pairs":
        g = Graph.from_edge_list(Path(args.graph_file).read_text())
        _emit({"pairs": count_k_set_witness_pairs(g, args.k, args.m)}, True)
    else:
        raise ConfigError(f"unknown census verb {args.verb!r}")
    return 0


_SWEEP_FIELDS = {
    "support": [
        "n", "m", "p", "t", "trial", "in_y",
        "count_below", "ratio_below", "count_at", "ratio_at",
        "count_above", "ratio_above",
    ],
    "copies": ["n", "m", "beta", "p", "trial", "copies"],
    "threshold": ["property", "n", "m", "beta", "p", "trial", "has_property"],
    "ratio": ["n", "m", "beta", "p", "trial", "copies"],
}


def _run_experiment(config: ExperimentConfig, output: str | None) -> int:
    started = time.time()
    extras: dict = {}
    if config.kind == "support":
        records, summary = run_support_census(config)
    elif config.kind == "copies":
        records, summary, extras = run_copy_count_sweep(config)
    elif config.kind == "threshold":
        records, summary = run_threshold_probe(config)
    elif config.kind == "ratio":
        records, summary, extras = theorem3_ratio_probe(config)
    else:
        raise ConfigError(f"{config.kind!r} is not a sweep/probe kind")
    sidecar = {
        "config": config.as_dict(),
        "master_seed": config.master_seed,
        "summary": summary,
        **extras,
    }
    if output:
        path = Path(output)
        outputs = write_records(records, path, _SWEEP_FIELDS[config.kind], sidecar)
        manifest = RunManifest(
            version=__version__,
            config=config.as_dict(),
            master_seed=config.master_seed,
            started=started,
            finished=time.time(),
            outputs=outputs,
        )
        manifest.write(path.with_suffix(".manifest.json"))
        for out in outputs:
            print(out)
    else:
        _emit(sidecar, True)
    return 0


def cmd_sweep(args) -> int:
    flags = {
        "kind": args.mode,
        "trials": args.trials,
        "master_seed": args.seed,
        "threads": args.threads,
        "n_values": tuple(args.n) if args.n else None,
        "m_values": tuple(args.m) if args.m else None,
        "p_values": tuple(args.p) if args.p else None,
        "beta_values": tuple(args.beta) if args.beta else None,
        "cap": args.cap,
        "x_facets": _parse_facets(args.facets) if args.facets else None,
    }
    config = parse_config(args.config, flags)
    return _run_experiment(config, args.output)


def cmd_probe(args) -> int:
    if args.mode == "threshold":
        flags = {
            "kind": "threshold",
            "trials": args.trials,
            "master_seed": args.seed,
            "threads": args.threads,
            "n_values": tuple(args.n) if args.n else None,
            "m_values": tuple(args.m) if args.m else None,
            "beta_values": tuple(args.beta) if args.beta else None,
            "k": args.k,
            "property": args.property,
            "x_facets": _parse_facets(args.facets) if args.facets else None,
        }
    else:
        flags = {
            "kind": "ratio",
            "trials": args.trials,
            "master_seed": args.seed,
            "threads": args.threads,
            "n_values": tuple(args.n) if args.n else None,
            "m_values": tuple(args.m) if args.m else None,
            "beta_values": tuple(args.beta) if args.beta else None,
            "x_facets": _parse_facets(args.facets) if args.facets else None,
        }
    config = parse_config(args.config, flags)
    return _run_experiment(config, args.output)


def cmd_exact(args) -> int:
    if args.mode == "tv":
        if args.q is not None:
            q = args.q
        else:
            if args.beta is None:
                raise ConfigError("need --q or --beta to derive q")
            q = q_from_rule(args.n, args.k, args.m, args.beta[0], args.q_rule)
        result = exact_small_distribution(args.n, args.m, args.p, args.k, q)
        _emit(
            {
                "n": args.n,
                "m": args.m,
                "p": args.p,
                "k": args.k,
                "q": q,
                "q_rule": args.q_rule,
                "tv_distance": result.tv_distance,
                "gamma_support_size": len(result.gamma_dist),
                "lm_support_size": len(result.lm_dist),
                "notes": list(result.notes),
            },
            True,
        )
    elif args.mode == "covariance":
        f1 = tuple(int(v) for v in args.f1.split(","))
        f2 = tuple(int(v) for v in args.f2.split(","))
        cov = face_covariance_probe(args.n, args.m, args.p, f1, f2)
        _emit({"covariance": str(cov), "covariance_float": float(cov)}, True)
    else:
        raise ConfigError(f"unknown exact mode {args.mode!r}")
    return 0


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mncomplex",
        description="m-neighbor complexes of random graphs: sampling, exact "
        "quantities, and Monte Carlo experiments",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample an Erdos-Renyi graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trial", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("complex", help="build an m-neighbor complex")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trial", type=int, default=0)
    p.add_argument("--cap", type=int)
    p.add_argument("--from-graph")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("regime", help="derived regime parameters as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.set_defaults(func=cmd_regime)

    p = sub.add_parser("shape", help="facet-shape computations")
    p.add_argument("verb", choices=["from-complex", "convert", "density", "m-density", "reduce"])
    p.add_argument("--complex-file")
    p.add_argument("--shape", help='shape JSON {"phi": ..., "cap": [...]}')
    p.add_argument("--witness", help="witness shape JSON")
    p.add_argument("--frm", choices=["cap", "excl", "cup"], default="cap")
    p.add_argument("--to", choices=["cap", "excl", "cup"], default="excl")
    p.add_argument("--m", type=int)
    p.add_argument("--budget", type=int, default=10**7)
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("census", help="face/copy/witness counting")
    p.add_argument("verb", choices=["faces", "copies", "witness-pairs"])
    p.add_argument("--complex-file")
    p.add_argument("--graph-file")
    p.add_argument("--facets", help="semicolon-separated comma lists, e.g. 0,1,2;2,3,4")
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("sweep", help="Monte Carlo sweeps (support census, copy counts)")
    p.add_argument("mode", choices=["support", "copies"])
    p.add_argument("--config")
    p.add_argument("--n", type=int, nargs="*")
    p.add_argument("--m", type=int, nargs="*")
    p.add_argument("--p", type=float, nargs="*")
    p.add_argument("--beta", type=float, nargs="*")
    p.add_argument("--cap", type=int)
    p.add_argument("--facets")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("probe", help="threshold and copy-ratio probes")
    p.add_argument("mode", choices=["threshold", "ratio"])
    p.add_argument("--config")
    p.add_argument("--n", type=int, nargs="*")
    p.add_argument("--m", type=int, nargs="*")
    p.add_argument("--beta", type=float, nargs="*")
    p.add_argument("--k", type=int)
    p.add_argument("--property", choices=["contains-x", "all-k-faces", "some-k-face"])
    p.add_argument("--facets")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("exact", help="exact small-n enumeration probes")
    p.add_argument("mode", choices=["tv", "covariance"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--q", type=float)
    p.add_argument("--beta", type=float, nargs="*")
    p.add_argument("--q-rule", choices=["theorem", "conjecture"], default="theorem")
    p.add_argument("--f1")
    p.add_argument("--f2")
    p.set_defaults(func=cmd_exact)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MncomplexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return getattr(exc, "exit_code", 2)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
