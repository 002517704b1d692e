"""Command-line interface: ``qidentities {list,verify,coeffs,partitions,check-theorems}``.

Exit status is 0 when every check passes, 1 when any fails, 2 on usage errors.
JSON output is canonical (sorted keys, compact); reports are written one per line.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

from . import identities
from .errors import UnknownIdentity
from .partitions import WEIGHT_FAMILY, WEIGHT_IDS, PartitionFamily, enumerate_partitions, weight
from .polyring import ONE, ZERO
from .report import VerificationReport, dumps
from .suites import partition_suites

ORDER_ENV = "QIDENTITIES_ORDER"


class UsageError(Exception):
    pass


def _default_order() -> int:
    raw = os.environ.get(ORDER_ENV)
    if raw is None:
        return identities.DEFAULT_ORDER
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ORDER_ENV}={raw!r} is not an integer")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qidentities", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list", parents=[common], help="list catalog identities")

    p = sub.add_parser("verify", parents=[common], help="verify catalog identities")
    p.add_argument("--identity", default="all", help='catalog name or "all"')
    p.add_argument("--order", type=_positive, default=None)
    p.add_argument("--structural", action="store_true",
                   help="also run the structural cross-checks")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes for 'all'")

    p = sub.add_parser("coeffs", parents=[common], help="dump the coefficients of one side")
    p.add_argument("--identity", required=True)
    p.add_argument("--side", choices=("lhs", "rhs"), default="lhs")
    p.add_argument("--order", type=_positive, default=None)
    p.add_argument("--variant", type=int, default=None, help="delta sign or k, for variant entries")

    p = sub.add_parser("partitions", parents=[common], help="enumerate a partition family")
    p.add_argument("--n", type=_nonnegative, required=True)
    p.add_argument("--family", required=True, help="O4, D24, D3, D, GG1, GG2, UNRESTRICTED, MOD8(i)")
    p.add_argument("--weight", choices=WEIGHT_IDS, default=None)
    p.add_argument("--delta", type=int, choices=(1, -1), default=1)

    p = sub.add_parser("check-theorems", parents=[common],
                       help="enumeration-vs-series checks and partition property suites")
    p.add_argument("--n-max", type=_nonnegative, default=28)
    return parser


def _verify_one(args):
    name, order = args
    return identities.verify(name, order)


def _run_verify(ns) -> List[VerificationReport]:
    order = ns.order if ns.order is not None else _default_order()
    if order < 1:
        raise UsageError("order must be at least 1")
    if ns.identity == "all":
        names = identities.names()
    else:
        identities.get(ns.identity)
        names = [ns.identity]
    work = [(n, order) for n in names]
    if ns.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            reports = list(pool.map(_verify_one, work))
    else:
        reports = [_verify_one(w) for w in work]
    if ns.structural:
        reports.extend(check(order) for check in identities.STRUCTURAL_CHECKS.values())
    return reports


def _run_check_theorems(ns) -> List[VerificationReport]:
    reports = [identities.verify_theorem_vs_series(t, ns.n_max) for t in identities.THEOREMS]
    reports.append(identities.verify_gg_combinatorial(ns.n_max))
    reports.extend(suite() for suite in partition_suites(ns.n_max))
    return reports


def _emit_reports(reports: Sequence[VerificationReport], fmt: str) -> str:
    if fmt == "json":
        return "".join(r.dumps() + "\n" for r in reports)
    lines = [r.summary() for r in reports]
    passed = sum(r.passed for r in reports)
    lines.append(f"{passed}/{len(reports)} passed")
    return "\n".join(lines) + "\n"


def partitions_dump(n: int, family: PartitionFamily, weight_id: Optional[str], delta: int = 1) -> dict:
    parts = enumerate_partitions(n, family)
    if weight_id is None:
        weights = [ONE] * len(parts)
    else:
        if WEIGHT_FAMILY[weight_id] != family:
            raise UsageError(f"weight {weight_id} applies to family {WEIGHT_FAMILY[weight_id]}, not {family}")
        weights = [weight(p, weight_id, delta) for p in parts]
    total = ZERO
    for w in weights:
        total = total + w
    return {
        "n": n,
        "family": str(family),
        "partitions": [list(p.parts) for p in parts],
        "weights": [w.to_json() for w in weights],
        "total": total.to_json(),
    }


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        ns = build_parser().parse_args(argv)
        status = 0
        if ns.command == "list":
            specs = identities.catalog()
            if ns.format == "json":
                text = dumps([{"identity": s.name, "notes": s.notes,
                               "variants": [v for v in s.variants if v is not None]}
                              for s in specs]) + "\n"
            else:
                text = "".join(f"{s.name:22} {s.notes}\n" for s in specs)
        elif ns.command in ("verify", "check-theorems"):
            reports = _run_verify(ns) if ns.command == "verify" else _run_check_theorems(ns)
            text = _emit_reports(reports, ns.format)
            status = 0 if all(r.passed for r in reports) else 1
        elif ns.command == "coeffs":
            order = ns.order if ns.order is not None else _default_order()
            spec = identities.get(ns.identity)
            if ns.variant is not None and ns.variant not in spec.variants:
                raise UsageError(f"{spec.name} variants are {list(spec.variants)}")
            series = spec.build(ns.side, order, ns.variant).with_lower(0)
            if ns.format == "json":
                text = dumps(series.to_json()) + "\n"
            else:
                text = "".join(f"q^{e}: {series.coeff(e)}\n" for e in range(series.lower, series.order))
        else:  # partitions
            try:
                family = PartitionFamily.parse(ns.family)
            except ValueError as exc:
                raise UsageError(str(exc))
            dump = partitions_dump(ns.n, family, ns.weight, ns.delta)
            if ns.format == "json":
                text = dumps(dump) + "\n"
            else:
                from .polyring import LaurentPoly
                rows = [f"{'+'.join(map(str, p)) or '()':24} {LaurentPoly.from_json(w)}"
                        for p, w in zip(dump["partitions"], dump["weights"])]
                rows.append(f"total: {LaurentPoly.from_json(dump['total'])}")
                text = "\n".join(rows) + "\n"
    except (UsageError, UnknownIdentity) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownIdentity) else exc
        print(f"qidentities: error: unknown identity {msg!r}" if isinstance(exc, UnknownIdentity)
              else f"qidentities: error: {msg}", file=sys.stderr)
        return 2
    if getattr(ns, "output", None):
        with open(ns.output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
