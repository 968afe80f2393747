"""The ``pwforge`` command line tool.

usage: pwforge [-h] [--threads N] [--verbose] command ...

Generate a supertile and draw it::

  $ pwforge gen --rule pythia:3,1 --level 4 --out patch.jsonl
  $ pwforge render --in patch.jsonl --svg patch.svg --color-by orientation

Rules are family specs (``pythagoras:3,1``, ``tipi:3,1``, ``pinwheel``)
or rule files ending in ``.json``. Every successful run ends with a
summary line of ``key=value`` pairs; operation failures exit with
status 1 and the error class on stderr, usage errors with status 2.
"""
import argparse
import contextlib
import logging
import math
import sys

from . import analysis, render
from .angle import IDENTITY
from .error import ForgeError
from .families import build_family, committed
from .matrix import weyl_ratio
from .tiling import Patch, PlacedTile, supertile, verify_rule


class ToolError(Exception):
    pass


def parse_int_list(s):
    """``"1..5"`` or ``"3,6,12"`` as a list of ints."""
    try:
        if ".." in s:
            first, last = s.split("..")
            return list(range(int(first), int(last) + 1))
        return [int(part) for part in s.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("Not an integer list: %r" % s)


def load_rule(spec, tol=None):
    if spec.endswith(".json"):
        with open(spec, encoding="utf-8") as f:
            return render.read_rule(f, tol_geo=tol)
    return build_family(spec, tol_geo=tol)


def load_patch(path):
    with open(path, encoding="utf-8") as f:
        return render.read_patch(f, allow_unverified=True)


@contextlib.contextmanager
def output(path, stdout):
    if path == "-":
        yield stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as f:
            yield f


class Context:
    """Streams and global options of one run."""

    def __init__(self, args, stdout, stderr):
        self.args = args
        self.stdout = stdout
        self.stderr = stderr
        self.threads = args.threads or committed().config.settings.threads
        self.data_on_stdout = False

    def print(self, line):
        self.stdout.write(line + "\n")

    def summary(self, command, **values):
        items = " ".join("%s=%s" % (key, values[key]) for key in values)
        stream = self.stderr if self.data_on_stdout else self.stdout
        stream.write(("%s %s" % (command, items)).rstrip() + "\n")

    def output(self, path):
        if path == "-":
            self.data_on_stdout = True
        return output(path, self.stdout)


def gen(ctx, args):
    rule = load_rule(args.rule)
    patch = supertile(rule, args.root, args.level, threads=ctx.threads)
    with ctx.output(args.out) as f:
        render.write_patch(patch, f)
    ctx.summary(
        "gen", rule=rule.name, root=args.root, level=args.level, tiles=len(patch)
    )


def render_command(ctx, args):
    patch = load_patch(args.input)
    with ctx.output(args.svg) as f:
        render.write_svg(
            patch, f, color_by=args.color_by, allow_empty=args.allow_empty
        )
    ctx.summary("render", polygons=len(patch), color_by=args.color_by)


def verify(ctx, args):
    rule = load_rule(args.rule, args.tol)
    report = rule.verify_report or verify_rule(rule, args.tol)
    ctx.summary(
        "verify",
        rule=rule.name,
        passed=report.passed,
        area=render.decimal(report.area_defect),
        containment=render.decimal(report.containment_defect),
        overlap=render.decimal(report.overlap_defect),
    )


def analyze_orientations(ctx, args):
    if args.input:
        sources = [load_patch(args.input)]
    elif args.rule:
        rule = load_rule(args.rule)
        sources = [
            analysis.orientation_census(rule, args.root, level)
            for level in args.levels
        ]
    else:
        raise ToolError("analyze orientations needs --in or --rule")
    stats = [analysis.orientation_stats(s, args.tmax, args.bins) for s in sources]
    if args.csv:
        with ctx.output(args.csv) as f:
            render.write_stats_csv(f, stats, args.tmax)
    else:
        for s in stats:
            ctx.print(",".join(str(v) for v in s.row()))
    last = stats[-1]
    ctx.summary(
        "orientations",
        level=last.level,
        n=last.n,
        star_discrepancy=render.decimal(last.star_discrepancy),
        W_1=render.decimal(last.weyl[0]),
    )


def analyze_weyl(ctx, args):
    rule = load_rule(args.rule)
    rows = [[t, r, weyl_ratio(rule, t, r)] for t in args.t for r in args.r]
    if args.csv:
        with ctx.output(args.csv) as f:
            render.write_csv(f, ["t", "r", "ratio"], rows)
    else:
        for t, r, ratio in rows:
            ctx.print("t=%d r=%d ratio=%s" % (t, r, render.decimal(ratio)))
    ctx.summary("weyl", rule=rule.name, rows=len(rows))


def analyze_upf(ctx, args):
    rule = load_rule(args.rule)
    if args.probe:
        probe = load_patch(args.probe)
        probe = Patch(probe.tiles, rule)
    else:
        probe = Patch(
            [PlacedTile(args.probe_type, IDENTITY.with_registry(rule.registry), 0j)],
            rule,
        )
    result = analysis.upf_probe(
        rule,
        probe,
        args.eps,
        args.level,
        root=args.root,
        grid=args.grid,
        min_centers=args.min_centers,
    )
    if not result:
        ctx.summary("upf", rule=rule.name, found=False)
        return
    ctx.summary(
        "upf",
        rule=rule.name,
        found=True,
        r_estimate=render.decimal(result.radius),
        centers=result.centers,
        occurrences=result.occurrences,
    )


def detect(ctx, args):
    rule = load_rule(args.rule)
    verdict = analysis.detect_pinwheel_like(
        rule, args.max_depth, accept_numeric=args.accept_numeric
    )
    if verdict:
        w = verdict.witness
        ctx.print(
            "pinwheel-like: depth %d root %d type %d orientations %s %s"
            % (w.depth, w.root, w.prototile, w.orientations[0], w.orientations[1])
        )
        ctx.summary(
            "detect",
            rule=rule.name,
            found=True,
            depth=w.depth,
            delta=str(w.delta).replace(" ", ""),
            classification=type(verdict.classification).__name__,
        )
    else:
        ctx.print("not pinwheel-like up to depth %d" % args.max_depth)
        ctx.summary(
            "detect",
            rule=rule.name,
            found=False,
            depth=args.max_depth,
            classes=len(verdict.classes),
        )


def frequencies(ctx, args):
    rule = load_rule(args.rule)
    f = analysis.tile_frequencies(rule)
    for k, value in enumerate(f):
        ctx.print("T%d %s" % (k, render.decimal(value)))
    values = {}
    if args.level is not None:
        empirical = analysis.empirical_frequencies(rule, args.root, args.level)
        values["max_deviation"] = render.decimal(float(max(abs(empirical - f))))
    ctx.summary("frequencies", rule=rule.name, types=len(f), **values)


def rule_export(ctx, args):
    rule = load_rule(args.rule)
    with ctx.output(args.out) as f:
        render.write_rule(rule, f)
    ctx.summary("export", rule=rule.name)


def rule_import(ctx, args):
    with open(args.input, encoding="utf-8") as f:
        rule = render.read_rule(f, allow_unverified=args.allow_unverified)
    ctx.summary(
        "import",
        rule=rule.name,
        prototiles=rule.size,
        passed=rule.verify_report.passed,
    )


def rule_list(ctx, args):
    families = committed().config.families
    for name in sorted(families):
        ctx.print(("%s %s" % (name, ",".join(families[name].params))).rstrip())
    ctx.summary("list", families=len(families))


def make_parser():
    parser = argparse.ArgumentParser(
        prog="pwforge", description="Substitution tilings and their orientations"
    )
    parser.add_argument(
        "--threads",
        type=int,
        help="Worker threads (default: the threads setting).",
    )
    parser.add_argument("--verbose", action="store_true", help="Debug logging.")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("gen", help="Generate a supertile patch.")
    p.add_argument("--rule", required=True)
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=gen)

    p = commands.add_parser("render", help="Draw a patch as SVG.")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--svg", default="-")
    p.add_argument("--color-by", choices=render.COLOR_MODES, default="type")
    p.add_argument("--allow-empty", action="store_true")
    p.set_defaults(func=render_command)

    p = commands.add_parser("verify", help="Check a rule's geometry.")
    p.add_argument("--rule", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=verify)

    p = commands.add_parser("analyze", help="Orientation statistics.")
    analyses = p.add_subparsers(dest="analysis", required=True)

    q = analyses.add_parser("orientations")
    q.add_argument("--in", dest="input")
    q.add_argument("--rule")
    q.add_argument("--root", type=int, default=0)
    q.add_argument("--levels", type=parse_int_list, default=[6])
    q.add_argument("--tmax", type=int, default=5)
    q.add_argument("--bins", type=int, default=360)
    q.add_argument("--csv")
    q.set_defaults(func=analyze_orientations)

    q = analyses.add_parser("weyl")
    q.add_argument("--rule", required=True)
    q.add_argument("--t", type=parse_int_list, default=[1])
    q.add_argument("--r", type=parse_int_list, default=[12])
    q.add_argument("--csv")
    q.set_defaults(func=analyze_weyl)

    q = analyses.add_parser("upf")
    q.add_argument("--rule", required=True)
    q.add_argument("--probe")
    q.add_argument("--probe-type", type=int, default=0)
    q.add_argument("--eps", type=float, default=math.pi / 4)
    q.add_argument("--level", type=int, default=6)
    q.add_argument("--root", type=int, default=0)
    q.add_argument("--grid", type=int, default=16)
    q.add_argument("--min-centers", type=int)
    q.set_defaults(func=analyze_upf)

    p = commands.add_parser("detect", help="Search for pinwheel-likeness.")
    p.add_argument("--rule", required=True)
    p.add_argument("--max-depth", type=int, default=6)
    p.add_argument("--accept-numeric", action="store_true")
    p.set_defaults(func=detect)

    p = commands.add_parser("frequencies", help="Prototile frequencies.")
    p.add_argument("--rule", required=True)
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--level", type=int)
    p.set_defaults(func=frequencies)

    p = commands.add_parser("rule", help="Rule files and the family registry.")
    rules = p.add_subparsers(dest="action", required=True)
    q = rules.add_parser("export")
    q.add_argument("--rule", required=True)
    q.add_argument("--out", default="-")
    q.set_defaults(func=rule_export)
    q = rules.add_parser("import")
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--allow-unverified", action="store_true")
    q.set_defaults(func=rule_import)
    q = rules.add_parser("list")
    q.set_defaults(func=rule_list)
    return parser


def run(argv=None, stdout=None, stderr=None):
    """Run the tool and return its exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = make_parser()
    try:
        with contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    ctx = Context(args, stdout, stderr)
    try:
        args.func(ctx, args)
    except ToolError as e:
        stderr.write("pwforge: error: %s\n" % e)
        return 2
    except (ForgeError, OSError) as e:
        stderr.write("%s: %s\n" % (type(e).__name__, e))
        return 1
    return 0


def main():
    sys.exit(run())
