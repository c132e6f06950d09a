import argparse

from src.commands.parser import EXIT_IO, EXIT_OK, EXIT_TOLERANCE
from src.physics.verification import DEFAULT_SEED, run_verification
from src.utils.file_io import write_json
from src.utils.helpers import display_banner, parse_values


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the oracle suite, print one line per check, exit 2 on any breach."""
    sizes = parse_values(args.sizes, integer=True)
    report = run_verification(
        sizes=sizes,
        draws=args.draws,
        seed=DEFAULT_SEED if args.seed is None else args.seed,
        corrupt_coupling=args.corrupt_coupling
    )

    lines = []
    for check in report.checks:
        mark = "✅" if check.passed else "❌"
        lines.append(f"{mark} {check.name:<34} max error {check.max_error:.3e} (< {check.tolerance:.0e}, {check.cases} cases)")
    display_banner("Oracle verification", lines)

    if args.output and not write_json(args.output, report.to_dict()):
        print(f"❌ Could not write {args.output}")
        return EXIT_IO

    if not report.passed:
        print("❌ Failing checks: " + ", ".join(check.name for check in report.failures))
        return EXIT_TOLERANCE
    print("✅ All checks within tolerance")
    return EXIT_OK
