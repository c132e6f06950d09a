import argparse
import sys

from src.models.params import PatternKind
from src.models.sweep import SweepAxis
from src.physics.dynamics import DEFAULT_GRID_POINTS

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_TOLERANCE = 2
EXIT_IO = 3


class CliParser(argparse.ArgumentParser):
    """argparse with validation errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _system_flags() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    group = shared.add_argument_group("system")
    group.add_argument("--preset", type=str, default=None, help="Named scenario from data/presets")
    group.add_argument("--n", type=int, default=None, help="Number of cavities N")
    group.add_argument("--lambda", dest="coupling", type=float, default=None, help="Two-photon coupling lambda")
    group.add_argument("--xi", dest="hopping", type=float, default=None, help="Two-photon hopping xi")
    group.add_argument("--delta", dest="detuning", type=float, default=None, help="Detuning omega_a - 2 omega_c")
    beta = group.add_mutually_exclusive_group()
    beta.add_argument("--beta", type=str, default=None, help="Initial mixing angle in radians, or pi/4 style")
    beta.add_argument("--beta-deg", type=float, default=None, help="Initial mixing angle in degrees")
    group.add_argument("--pattern", choices=[p.value for p in PatternKind], default=None)
    group.add_argument("--kappa", type=float, default=None, help="Staggering distortion in (-1, 1)")
    group.add_argument("--absolute-units", action="store_true",
                       help="Take lambda and delta as absolute energies instead of multiples of xi")

    output = shared.add_argument_group("output")
    output.add_argument("--output", "-o", type=str, default=None, help="Data file to write")
    output.add_argument("--format", dest="fmt", choices=["csv", "json"], default="csv")
    output.add_argument("-v", "--verbose", action="count", default=0)
    output.add_argument("--log-file", type=str, default=None)
    return shared


def build_parser() -> CliParser:
    shared = _system_flags()
    parser = CliParser(
        prog="cavity-transfer",
        description="State transfer through two-photon coupled cavity arrays (evolve | sweep | verify)"
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    pe = sub.add_parser("evolve", parents=[shared], help="Site populations over a time grid")
    pe.add_argument("--t-max", type=float, default=None, help="End of the time grid (default 2N/xi)")
    pe.add_argument("--points", type=int, default=None, help=f"Grid points (default {DEFAULT_GRID_POINTS})")

    ps = sub.add_parser("sweep", parents=[shared], help="Optimal times and maxima along one parameter axis")
    ps.add_argument("--axis", choices=[a.value for a in SweepAxis], default=None)
    ps.add_argument("--values", type=str, default=None, help="Comma list or start:stop:step ranges")
    ps.add_argument("--encoding-k", type=int, default=None, help="Use the k-qubit encoded transfer at every point")
    ps.add_argument("--t-max", type=float, default=None, help="Search window end (default 2N/xi per point)")
    ps.add_argument("--grid-points", type=int, default=None)
    ps.add_argument("--refine-tol", type=float, default=None)
    ps.add_argument("--workers", type=int, default=None, help="Process pool size")

    pv = sub.add_parser("verify", help="Analytic formulas against the dense oracle")
    pv.add_argument("--sizes", type=str, default="2:12:1", help="Array sizes to draw from")
    pv.add_argument("--draws", type=int, default=50)
    pv.add_argument("--seed", type=int, default=None)
    pv.add_argument("--output", "-o", type=str, default=None, help="Optional JSON report")
    pv.add_argument("-v", "--verbose", action="count", default=0)
    pv.add_argument("--log-file", type=str, default=None)
    pv.add_argument("--corrupt-coupling", type=float, default=None, help=argparse.SUPPRESS)
    return parser
