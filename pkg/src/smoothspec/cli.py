"""Command-line interface: cluster, verify-lemmas, gen-data."""

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .datasets import generate_multiscale, load_blob_specs, load_csv
from .lemmas import run_all
from .pipeline import ConfigError, PipelineConfig, StageError, run_pipeline
from .validation import as_label_vector

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2

FLOAT_FMT = "%.17g"


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits with code 1 on flag errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    return obj


def _write_json(path, obj):
    with open(path, "w") as fh:
        json.dump(_jsonable(obj), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _build_parser():
    parser = _Parser(prog="smoothspec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    cluster = sub.add_parser("cluster", help="cluster a CSV dataset")
    cluster.add_argument("--input", required=True, help="CSV file of objects")
    cluster.add_argument("--skip-header", action="store_true",
                         help="discard the first CSV line")
    cluster.add_argument("--labels", default="none",
                         help="'none', 'last-column', or a path to a label CSV")
    cluster.add_argument("--k", type=int, required=True, help="number of clusters")
    cluster.add_argument("--method", default="smooth",
                         choices=["smooth", "rosc", "pic-baseline"])
    cluster.add_argument("--similarity", default="zp", choices=["zp", "gaussian"])
    cluster.add_argument("--sigma", type=float, default=1.0,
                         help="bandwidth for --similarity gaussian")
    cluster.add_argument("--l", type=int, default=7, dest="l",
                         help="neighbor rank for self-tuning bandwidths")
    cluster.add_argument("--knn-k", type=int, default=10,
                         help="K of the mutual K-NN graph")
    cluster.add_argument("--p", type=int, default=None,
                         help="pseudo-eigenvectors (default k+1)")
    cluster.add_argument("--alpha1", type=float, default=0.01)
    cluster.add_argument("--alpha2", type=float, default=0.01)
    cluster.add_argument("--alpha3", type=float, default=0.01)
    cluster.add_argument("--alpha4", type=float, default=1.0)
    cluster.add_argument("--tiny-epsilon", type=float, default=None,
                         help="absolute merge radius for tiny clusters")
    cluster.add_argument("--tiny-epsilon-rel", type=float, default=0.01,
                         help="merge radius as a fraction of median pairwise distance")
    cluster.add_argument("--w-diag", type=int, default=0, choices=[0, 1],
                         help="diagonal convention of the reachability matrix")
    cluster.add_argument("--seed", type=int, default=0)
    cluster.add_argument("--restarts", type=int, default=10, help="k-means restarts")
    cluster.add_argument("--out", default=".", help="output directory")
    cluster.add_argument("--dump-intermediates", action="store_true",
                         help="also write similarity/reachability/embedding/coefficient CSVs")

    verify = sub.add_parser("verify-lemmas",
                            help="numerically verify the coefficient-matrix theory")
    verify.add_argument("--seeds", type=int, default=50,
                        help="number of random instances")
    verify.add_argument("--bound-instances", type=int, default=20,
                        help="instances for the exhaustive bound check")
    verify.add_argument("--seed", type=int, default=0, help="base seed")
    verify.add_argument("--bound-report", default=None,
                        help="write per-triple bound evaluations as JSON lines")

    gen = sub.add_parser("gen-data", help="generate a synthetic multi-scale dataset")
    gen.add_argument("--spec", required=True,
                     help="JSON array of {center, spread, count}")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output CSV path")
    gen.add_argument("--no-labels", action="store_true",
                     help="omit the trailing label column")

    return parser


def _load_input(args):
    if args.labels == "last-column":
        return load_csv(args.input, label_column=True, skip_header=args.skip_header)
    X, _ = load_csv(args.input, skip_header=args.skip_header)
    if args.labels == "none":
        return X, None
    truth = np.loadtxt(args.labels, delimiter=",", ndmin=1)
    return X, as_label_vector(truth, name="labels file")


def _cmd_cluster(args):
    X, truth = _load_input(args)

    config = PipelineConfig(
        n_clusters=args.k,
        method=args.method,
        similarity=args.similarity,
        sigma=args.sigma,
        zp_neighbors=args.l,
        knn_k=args.knn_k,
        n_vectors=args.p,
        alpha1=args.alpha1,
        alpha2=args.alpha2,
        alpha3=args.alpha3,
        alpha4=args.alpha4,
        tiny_epsilon=args.tiny_epsilon,
        tiny_epsilon_rel=args.tiny_epsilon_rel,
        reach_diag=args.w_diag,
        seed=args.seed,
        restarts=args.restarts,
    ).validate()

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    result = run_pipeline(X, config, truth=truth)

    outputs = {}
    labels_path = out_dir / "labels.csv"
    np.savetxt(labels_path, result.labels, fmt="%d")
    outputs["labels"] = str(labels_path)

    if args.dump_intermediates:
        dumps = [
            ("tiny_assignment", result.tiny_map.assignment, "%d"),
            ("tiny_centers", result.tiny_map.centers, FLOAT_FMT),
            ("similarity", result.similarity, FLOAT_FMT),
            ("reachability", result.reach, "%d"),
            ("second_order", result.second_order, "%d"),
            ("pseudo_eigenvectors", result.pseudo_eigenvectors, FLOAT_FMT),
        ]
        if result.coeff is not None:
            dumps += [
                ("coefficients", result.coeff, FLOAT_FMT),
                ("affinity", result.affinity, FLOAT_FMT),
                ("spectral_embedding", result.embedding, FLOAT_FMT),
            ]
        for name, array, fmt in dumps:
            path = out_dir / f"{name}.csv"
            np.savetxt(path, array, fmt=fmt, delimiter=",")
            outputs[name] = str(path)

    report = dict(result.report)
    report_path = out_dir / "report.json"
    outputs["report"] = str(report_path)
    report["outputs"] = outputs
    _write_json(report_path, report)

    if "metrics" in report:
        scores = " ".join(f"{k}={v:.4f}" for k, v in report["metrics"].items())
        print(f"clustered {X.shape[0]} objects into {args.k} groups: {scores}")
    else:
        print(f"clustered {X.shape[0]} objects into {args.k} groups")
    print(f"labels: {labels_path}")
    print(f"report: {report_path}")
    return EXIT_OK


def _cmd_verify(args):
    summary, reports = run_all(
        n_instances=args.seeds, bound_instances=args.bound_instances, seed=args.seed
    )
    if args.bound_report:
        with open(args.bound_report, "w") as fh:
            for idx, rep in enumerate(reports):
                for i, j, p, lhs, bc, bp in zip(
                    rep["i"], rep["j"], rep["p"],
                    rep["lhs"], rep["bound_corrected"], rep["bound_paper"],
                ):
                    fh.write(json.dumps({
                        "instance": idx, "i": int(i), "j": int(j), "p": int(p),
                        "lhs": float(lhs), "bound_corrected": float(bc),
                        "bound_paper": float(bp),
                    }))
                    fh.write("\n")
        print(f"bound report: {args.bound_report}")

    stat = summary["stationarity"]
    bound = summary["grouping_bound"]
    print(f"instances: {stat['instances']}")
    print(f"max stationarity residual: {stat['max_stationarity_residual']:.3e}")
    print(f"entrywise identity failures: {stat['entrywise_failures']}")
    print(f"baseline reduction gap: {summary['rosc_reduction']['max_reduction_gap']:.3e}")
    print(f"bound triples checked: {bound['triples']}")
    print(f"corrected-bound violations: {bound['corrected_violations']}")
    print(f"reference-constant violations (logged): {bound['reference_violations']}")
    print(f"max indistinguishable-pair gap: {summary['grouping_limit']['max_pair_gap']:.3e}")

    ok = (
        stat["max_stationarity_residual"] <= 1e-8
        and stat["entrywise_failures"] == 0
        and bound["corrected_violations"] == 0
        and summary["grouping_limit"]["max_pair_gap"] <= 1e-9
    )
    print("verification:", "PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_RUNTIME


def _cmd_gen_data(args):
    specs = load_blob_specs(args.spec)
    X, labels = generate_multiscale(specs, seed=args.seed)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    if args.no_labels:
        np.savetxt(out, X, fmt=FLOAT_FMT, delimiter=",")
    else:
        data = np.column_stack([X, labels.astype(np.float64)])
        np.savetxt(out, data, fmt=FLOAT_FMT, delimiter=",")
    print(f"wrote {X.shape[0]} objects ({X.shape[1]} features) to {out}")
    return EXIT_OK


def main(argv=None):
    threads = os.environ.get("SMOOTHSPEC_THREADS")
    if threads:
        try:
            import threadpoolctl

            threadpoolctl.threadpool_limits(limits=int(threads))
        except (ValueError, ImportError) as exc:
            print(f"ignoring SMOOTHSPEC_THREADS: {exc}", file=sys.stderr)

    parser = _build_parser()
    args = parser.parse_args(argv)

    handlers = {
        "cluster": _cmd_cluster,
        "verify-lemmas": _cmd_verify,
        "gen-data": _cmd_gen_data,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StageError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
