"""
Command-line front end: `periods <command> ...`.

Results go to stdout as key-sorted JSON. Errors go to stderr as the error
payload; the exit code is 2 for parse and validation errors and 1 for
verification failures and unexpected exceptions.
"""
import argparse
import sys
from typing import Any, NoReturn, Optional, Sequence

from pydantic import BaseModel

from .core.config import settings
from .core.events import configure_logging
from .core.exceptions import BuiltinParameterError, InternalError, PeriodError, VerificationError
from .services.period_service import PeriodService
from .services.verification_service import VerificationService
from .utils.codec import encode_payload


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors become error payloads instead of argparse's text."""

    def error(self, message: str) -> NoReturn:
        raise BuiltinParameterError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="periods", description="Degree bounds and volumes of periods")
    parser.add_argument("--log-level", default=None, help="events log level (default from settings)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="Monte Carlo value of an expression")
    p.add_argument("expr")
    p.add_argument("--samples", type=int, default=settings.default_samples, help="samples per cell")
    p.add_argument("--seed", type=int, default=settings.default_seed)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--batch-size", type=int, default=None)

    p = sub.add_parser("bound", help="degree upper bound with provenance")
    p.add_argument("expr")

    p = sub.add_parser("witness", help="cells of the witness as JSON")
    p.add_argument("expr")

    p = sub.add_parser("zeta", help="truncated zeta series from power bounds")
    p.add_argument("expr")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--terms", type=int, default=settings.zeta_terms)

    p = sub.add_parser("ratint", help="closed form of a definite rational integral")
    p.add_argument("--num", required=True, help="numerator coefficients, constant first: 1,0,1/2")
    p.add_argument("--den", required=True, help="coefficients, or a factored JSON object")
    p.add_argument("--from", dest="lo", required=True)
    p.add_argument("--to", dest="hi", required=True)

    sub.add_parser("gallery", help="named periods and their defining identities")

    p = sub.add_parser("report", help="transcendence report for two expressions")
    p.add_argument("expr1")
    p.add_argument("expr2")
    p.add_argument("--assert-degrees", type=int, nargs=2, default=None, metavar=("D1", "D2"))

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("--suite", default="all", choices=VerificationService.suite_names())
    p.add_argument("--seed", type=int, default=settings.default_seed)
    p.add_argument("--samples", type=int, default=None, help="samples per cell for statistical suites")
    return parser


def _dump(result: Any) -> str:
    if isinstance(result, BaseModel):
        return encode_payload(result.model_dump(mode="json"))
    if isinstance(result, list):
        return encode_payload([r.model_dump(mode="json") if isinstance(r, BaseModel) else r for r in result])
    return encode_payload(result)


def run_command(args: argparse.Namespace) -> Any:
    if args.command == "eval":
        return PeriodService.evaluate(args.expr, args.samples, args.seed, args.workers, args.batch_size)
    if args.command == "bound":
        return PeriodService.bound(args.expr)
    if args.command == "witness":
        return PeriodService.witness(args.expr)
    if args.command == "zeta":
        return PeriodService.zeta(args.expr, args.t, args.terms)
    if args.command == "ratint":
        num = [c for c in args.num.split(",") if c.strip()]
        return PeriodService.ratint(num, args.lo, args.hi, **PeriodService.parse_denominator(args.den))
    if args.command == "gallery":
        return PeriodService.gallery()
    if args.command == "report":
        return PeriodService.report(args.expr1, args.expr2, args.assert_degrees)
    if args.command == "verify":
        results = VerificationService.run(args.suite, args.seed, args.samples)
        failed = [r.suite for r in results if not r.passed]
        if failed:
            sys.stdout.write(_dump(results) + "\n")
            raise VerificationError("Invariant suites failed", suites=failed)
        return results
    raise BuiltinParameterError(f"Unknown command {args.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        configure_logging(args.log_level)
        result = run_command(args)
    except PeriodError as exc:
        sys.stderr.write(encode_payload(exc.to_payload()) + "\n")
        return exc.exit_code
    except Exception as exc:
        error = InternalError(str(exc) or type(exc).__name__, error_type=type(exc).__name__)
        sys.stderr.write(encode_payload(error.to_payload()) + "\n")
        return error.exit_code
    sys.stdout.write(_dump(result) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
