"""Command line interface: ``marginfree analyze`` and ``marginfree compare``."""
import argparse
import logging
import sys
from dataclasses import dataclass

from ..errors import MissingAxis, NonConvergence, ParseError, TableError, UnknownDataset
from ..margin_fit import DEFAULT_TOL
from ..pipelines import METHODS, dispersion_table, normalize_method, run_method
from .tables_csv import DATASETS, builtin_dataset, load_csv, write_outputs

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_VALIDATION = 4
EXIT_NONCONVERGENCE = 5
EXIT_IO = 6

DEFAULT_METHODS = ("ca", "mfca", "tca", "mftca")


@dataclass(frozen=True)
class RunConfig:
    input: str = None
    dataset: str = None
    methods: tuple = DEFAULT_METHODS
    n_axes: int = 2
    tsvd_strategy: str = "exhaustive"
    ipf_tol: float = DEFAULT_TOL
    out_dir: str = None
    svg: bool = False
    plot_axes: tuple = (1, 2)

    def __post_init__(self):
        if (self.input is None) == (self.dataset is None):
            raise ValueError("give exactly one of an input file or a dataset name")
        if self.n_axes < 1:
            raise ValueError("the number of axes must be at least 1")
        if any(a < 1 or a > self.n_axes for a in self.plot_axes) or len(self.plot_axes) != 2:
            raise ValueError(f"plot axes {self.plot_axes} must lie within 1..{self.n_axes}")
        object.__setattr__(self, "methods", tuple(normalize_method(m) for m in self.methods))

    def load(self):
        return load_csv(self.input) if self.input else builtin_dataset(self.dataset)


def _methods(text):
    try:
        return tuple(normalize_method(m) for m in text.split(",") if m.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _axis_pair(text):
    try:
        a, b = (int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected two comma-separated axis numbers") from None
    return a, b


def build_parser():
    parser = argparse.ArgumentParser(
        prog="marginfree",
        description="Correspondence, taxicab and log-ratio analyses of a two-way table.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", help="CSV table with row and column labels")
        src.add_argument("--dataset", choices=sorted(DATASETS), help="bundled dataset")
        p.add_argument(
            "--method",
            type=_methods,
            default=DEFAULT_METHODS,
            help=f"comma-separated list from {','.join(m.replace('_', '-') for m in METHODS)}",
        )
        p.add_argument("--axes", type=int, default=2, help="number of axes (default 2)")
        p.add_argument("--tsvd", choices=("exhaustive", "iterative"), default="exhaustive")
        p.add_argument("--ipf-tol", type=float, default=DEFAULT_TOL)
        p.add_argument("-v", "--verbose", action="store_true")

    analyze = sub.add_parser("analyze", help="write coordinates, dispersion and maps")
    common(analyze)
    analyze.add_argument("--out", required=True, help="output directory")
    analyze.add_argument("--svg", action="store_true", help="also write an SVG map per method")
    analyze.add_argument("--plot-axes", type=_axis_pair, default=(1, 2))

    compare = sub.add_parser("compare", help="print a dispersion table")
    common(compare)
    return parser


def _config(args):
    return RunConfig(
        input=args.input,
        dataset=args.dataset,
        methods=args.method,
        n_axes=args.axes,
        tsvd_strategy=args.tsvd,
        ipf_tol=args.ipf_tol,
        out_dir=getattr(args, "out", None),
        svg=getattr(args, "svg", False),
        plot_axes=getattr(args, "plot_axes", (1, 2)),
    )


def run(cfg, command, stdout):
    t = cfg.load()
    results = []
    for method in cfg.methods:
        log.info("running %s on a %dx%d table", method, *t.shape)
        results.append(
            run_method(t, method, cfg.n_axes, ipf_tol=cfg.ipf_tol, tsvd_strategy=cfg.tsvd_strategy)
        )
    if command == "compare":
        stdout.write(dispersion_table(results))
    else:
        for result in results:
            for path in write_outputs(result, cfg.out_dir, svg=cfg.svg, plot_axes=cfg.plot_axes):
                log.info("wrote %s", path)
    return results


def main(argv=None, stdout=None):
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        cfg = _config(args)
        run(cfg, args.command, stdout)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NonConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (TableError, MissingAxis, UnknownDataset, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
