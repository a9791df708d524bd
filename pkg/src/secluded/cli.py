"""Command-line surface for partitions, rounding, cliques, and verification.

Exit codes: 0 success, 1 domain error (bad matrix, failed validation), 2
usage error, and 3 when `verify` finds a counterexample.  Values print as
exact rational strings unless --decimals is given, in which case outputs are
decimals and the precision is announced in a header line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .analysis import (
    CliqueReport,
    clique_point,
    max_clique,
    tolerance_upper_bound,
    verify_secluded,
)
from .estimator import estimate_means, oracle_from_spec
from .exact import QMatrix, QVector, format_rational, to_rational
from .lattice import (
    LatticePartition,
    b_double_prime,
    b_prime,
    canonical_partition,
    from_matrix,
    grid,
)
from .reclusive import NotReclusiveError, member_color, validate_reclusive
from .render import RenderOptions, render_svg
from .schemes import (
    FloorScheme,
    HKScheme,
    ReclusiveRounder,
    floor_round,
    hk_round,
    reclusive_round,
)
from .reclusive import canonical_reclusive

_BUILTINS = ("canonical", "grid", "bprime", "bdoubleprime")


@dataclass(frozen=True)
class MatrixSpec:
    """Parsed matrix argument: a builtin family or a JSON file path."""

    raw: str
    kind: str  # one of _BUILTINS or "file"
    d: Optional[int] = None
    k: Optional[int] = None
    path: Optional[str] = None

    def build(self) -> LatticePartition:
        if self.kind == "canonical":
            return canonical_partition(self.d, self.k)
        if self.kind == "grid":
            return grid(self.d)
        if self.kind == "bprime":
            return b_prime(self.d)
        if self.kind == "bdoubleprime":
            return b_double_prime(self.d)
        return from_matrix(_matrix_from_json(self.path), tag=Path(self.path).stem)


def _matrix_from_json(path: str) -> QMatrix:
    try:
        payload = json.loads(Path(path).read_text())
    except OSError as err:
        raise ValueError(f"cannot read matrix file {path!r}: {err}") from err
    except json.JSONDecodeError as err:
        raise ValueError(f"invalid JSON in {path!r}: {err}") from err
    if not isinstance(payload, dict) or "entries" not in payload:
        raise ValueError(f"matrix JSON {path!r} must be an object with 'entries'")
    entries = payload["entries"]
    matrix = QMatrix([[to_rational(x) for x in row] for row in entries])
    declared = payload.get("d")
    if declared is not None and declared != matrix.dim:
        raise ValueError(
            f"matrix JSON {path!r} declares d={declared} but has {matrix.dim} rows"
        )
    return matrix


def parse_matrix_spec(text: str) -> MatrixSpec:
    """Parse "canonical:d[:k]", "grid:d", "bprime:d", "bdoubleprime:d", or a path."""
    parts = text.split(":")
    name = parts[0]
    if name in _BUILTINS:
        if len(parts) < 2:
            raise ValueError(f"matrix spec {text!r}: missing dimension after {name!r}")
        try:
            d = int(parts[1])
        except ValueError:
            raise ValueError(
                f"matrix spec {text!r}: bad dimension {parts[1]!r}"
            ) from None
        k = None
        if len(parts) >= 3:
            if name != "canonical":
                raise ValueError(
                    f"matrix spec {text!r}: only 'canonical' takes a second parameter"
                )
            try:
                k = int(parts[2])
            except ValueError:
                raise ValueError(
                    f"matrix spec {text!r}: bad denominator {parts[2]!r}"
                ) from None
        if len(parts) > 3:
            raise ValueError(f"matrix spec {text!r}: too many fields")
        if d < 1:
            raise ValueError(f"matrix spec {text!r}: dimension must be >= 1")
        if name == "canonical" and k is not None and k < d:
            raise ValueError(
                f"matrix spec {text!r}: canonical requires k >= d (got k={k} < d={d})"
            )
        return MatrixSpec(raw=text, kind=name, d=d, k=k)
    if os.path.exists(text):
        return MatrixSpec(raw=text, kind="file", path=text)
    raise ValueError(
        f"matrix spec {text!r}: not a builtin ({', '.join(_BUILTINS)}) "
        "and not an existing file"
    )


def parse_scheme_spec(text: str):
    """Parse "floor:alpha[:beta[:gamma]]", "hk:d:eps", "reclusive:d[:k]:eps".

    Returns a callable point -> point; floor schemes broadcast their scalar
    shift/offset to the dimension of each input point.
    """
    parts = text.split(":")
    name = parts[0]
    if name == "floor":
        if not 2 <= len(parts) <= 4:
            raise ValueError(f"scheme spec {text!r}: floor takes 1 to 3 parameters")
        alpha = to_rational(parts[1])
        beta = to_rational(parts[2]) if len(parts) >= 3 else Fraction(0)
        gamma = to_rational(parts[3]) if len(parts) >= 4 else Fraction(0)

        def run_floor(x: QVector) -> QVector:
            return floor_round(FloorScheme.broadcast(x.dim, alpha, beta, gamma), x)

        return run_floor
    if name == "hk":
        if len(parts) != 3:
            raise ValueError(f"scheme spec {text!r}: expected hk:d:eps")
        scheme = HKScheme(eps=to_rational(parts[2]), d=int(parts[1]))
        return lambda x: hk_round(scheme, x)
    if name == "reclusive":
        if len(parts) == 3:
            d, k, eps = int(parts[1]), None, to_rational(parts[2])
        elif len(parts) == 4:
            d, k, eps = int(parts[1]), int(parts[2]), to_rational(parts[3])
        else:
            raise ValueError(f"scheme spec {text!r}: expected reclusive:d[:k]:eps")
        rounder = ReclusiveRounder(canonical_reclusive(d, k), eps)
        return lambda x: reclusive_round(rounder, x)
    raise ValueError(f"scheme spec {text!r}: unknown scheme {name!r}")


def _format_vector(v: QVector, decimals: Optional[int]) -> str:
    if decimals is None:
        return v.text()
    return ",".join(f"{float(c):.{decimals}f}" for c in v)


def _decimals_header(decimals: Optional[int]) -> Optional[str]:
    if decimals is None:
        return None
    return f"# decimals={decimals} (values rounded to {decimals} places)"


def _env_seed() -> int:
    raw = os.environ.get("SECLUDED_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"SECLUDED_SEED must be an integer, got {raw!r}") from None


# -- subcommands -------------------------------------------------------------


def _cmd_validate(args) -> int:
    spec = parse_matrix_spec(args.matrix)
    partition = spec.build()
    try:
        wrapped = validate_reclusive(partition.matrix)
    except NotReclusiveError as err:
        print(f"not reclusive: {err} [clause={err.clause} indices={err.indices}]")
        return 1
    print(
        f"reclusive: d={wrapped.d} "
        f"reclusive-distance={format_rational(wrapped.delta)}"
    )
    return 0


def _cmd_member(args) -> int:
    partition = parse_matrix_spec(args.matrix).build()
    x = QVector.parse(args.point)
    m = partition.member_of(x)
    print(f"member: {','.join(map(str, m))}")
    print(f"rep: {_format_vector(partition.rep_of(m), args.decimals)}")
    return 0


def _cmd_color(args) -> int:
    partition = parse_matrix_spec(args.matrix).build()
    if (args.point is None) == (args.member is None):
        raise ValueError("give exactly one of --point or --member")
    if args.point is not None:
        m = partition.member_of(QVector.parse(args.point))
    else:
        m = tuple(int(s) for s in args.member.split(","))
    print(member_color(partition.d, m))
    return 0


def _cmd_round(args) -> int:
    scheme = parse_scheme_spec(args.scheme)
    header = _decimals_header(args.decimals)
    if (args.point is None) == (args.csv is None):
        raise ValueError("give exactly one of --point or --csv")
    if header:
        print(header)
    if args.point is not None:
        print(_format_vector(scheme(QVector.parse(args.point)), args.decimals))
        return 0
    stream = sys.stdin if args.csv == "-" else open(args.csv)
    try:
        for line in stream:  # streaming: memory independent of row count
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            print(_format_vector(scheme(QVector.parse(line)), args.decimals))
    finally:
        if stream is not sys.stdin:
            stream.close()
    return 0


def _cmd_neighborhood(args) -> int:
    partition = parse_matrix_spec(args.matrix).build()
    hood = partition.neighborhood(QVector.parse(args.point), to_rational(args.eps))
    print(f"members: {len(hood.members)}")
    for m in sorted(hood.members):
        rep = partition.rep_of(m)
        print(f"m={','.join(map(str, m))} rep={_format_vector(rep, args.decimals)}")
    return 0


def _cmd_clique(args) -> int:
    partition = parse_matrix_spec(args.matrix).build()
    report = max_clique(partition)
    if args.json:
        print(report.to_json())
        return 0
    print(report.clique_size)
    for m in report.witness:
        print(f"m={','.join(map(str, m))}")
    print(f"runtime_ms={report.runtime_ms:.1f}")
    return 0


def _cmd_verify(args) -> int:
    partition = parse_matrix_spec(args.matrix).build()
    found = verify_secluded(
        partition,
        k=args.k,
        eps=to_rational(args.eps),
        trials=args.trials,
        seed=args.seed if args.seed is not None else _env_seed(),
    )
    if found is None:
        print(
            f"no counterexample: every sampled closed {args.eps}-ball met "
            f"<= {args.k} members ({args.trials} random + adversarial points)"
        )
        return 0
    print(f"counterexample: point={found.point.text()} radius={args.eps}")
    print(f"members ({len(found.members)} > k={args.k}):")
    for m in sorted(found.members):
        print(f"m={','.join(map(str, m))}")
    return 3


def _cmd_bounds(args) -> int:
    report = tolerance_upper_bound(
        args.d, to_rational(args.diameter), digits=args.digits
    )
    print(f"d={report.d} diameter={format_rational(report.diameter)}")
    tag = f"[{report.precision} significant digits]"
    primary_exact = isinstance(report.primary, Fraction)
    print(
        f"primary ({report.source}): {report.primary_text()}"
        + ("" if primary_exact else f" {tag}")
    )
    sqrt_exact = isinstance(report.sqrt_bound, Fraction)
    print(
        f"sqrt-bound: {report.sqrt_text()}" + ("" if sqrt_exact else f" {tag}")
    )
    if report.source == "sperner-lower-bound":
        print("note: both are upper bounds; no ordering asserted between them")
    return 0


def _cmd_estimate(args) -> int:
    raw = args.oracle
    if os.path.exists(raw):
        spec = json.loads(Path(raw).read_text())
    else:
        try:
            spec = json.loads(raw)
        except json.JSONDecodeError:
            raise ValueError(
                f"--oracle must be a JSON file or inline JSON, got {raw!r}"
            ) from None
    oracle = oracle_from_spec(spec)
    result = estimate_means(
        oracle,
        eps=to_rational(args.eps),
        delta=to_rational(args.delta),
        seed=args.seed if args.seed is not None else _env_seed(),
    )
    print(f"output: {_format_vector(result.output, args.decimals)}")
    print(f"samples_per_function: {result.samples_used}")
    print(f"seed: {result.seed}")
    return 0


def _cmd_render(args) -> int:
    partition = parse_matrix_spec(args.matrix).build()
    window = tuple(to_rational(part) for part in args.window.split(","))
    if len(window) != 4:
        raise ValueError("--window must be xmin,xmax,ymin,ymax")
    ball = None
    if args.ball:
        pieces = args.ball.split(",")
        if len(pieces) != 3:
            raise ValueError("--ball must be cx,cy,radius")
        ball = (
            QVector([to_rational(pieces[0]), to_rational(pieces[1])]),
            to_rational(pieces[2]),
        )
    opts = RenderOptions(window=window, show_eps_ball=ball, color_by=args.color_by)
    payload = render_svg(partition, opts)
    Path(args.out).write_bytes(payload)
    print(f"wrote {args.out} ({len(payload)} bytes)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="secluded",
        description="Lattice unit-hypercube partitions, rounding schemes, "
        "clique search, and secludedness checks over exact rationals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("validate", _cmd_validate, "check a matrix against the reclusive clauses")
    p.add_argument("--matrix", required=True)

    p = add("member", _cmd_member, "member id and representative corner of a point")
    p.add_argument("--matrix", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--decimals", type=int)

    p = add("color", _cmd_color, "(d+1)-coloring value of a member")
    p.add_argument("--matrix", required=True)
    p.add_argument("--point")
    p.add_argument("--member")

    p = add("round", _cmd_round, "apply a rounding scheme to a point or CSV rows")
    p.add_argument("--scheme", required=True)
    p.add_argument("--point")
    p.add_argument("--csv", help="path of vectors, one comma-separated row per line; '-' for stdin")
    p.add_argument("--decimals", type=int)

    p = add("neighborhood", _cmd_neighborhood, "members meeting a closed ball")
    p.add_argument("--matrix", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--decimals", type=int)

    p = add("clique", _cmd_clique, "exact maximum clique of the partition graph")
    p.add_argument("--matrix", required=True)
    p.add_argument("--json", action="store_true")

    p = add("verify", _cmd_verify, "search for a ball exceeding the degree bound")
    p.add_argument("--matrix", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, help="default: SECLUDED_SEED or 0")

    p = add("bounds", _cmd_bounds, "tolerance upper bounds for degree d+1")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--diameter", default="1")
    p.add_argument("--digits", type=int, default=30)

    p = add("estimate", _cmd_estimate, "pseudodeterministic mean estimation demo")
    p.add_argument("--oracle", required=True, help="JSON file or inline JSON")
    p.add_argument("--eps", required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--seed", type=int, help="default: SECLUDED_SEED or 0")
    p.add_argument("--decimals", type=int)

    p = add("render", _cmd_render, "SVG of a 2-D partition window")
    p.add_argument("--matrix", required=True)
    p.add_argument("--window", required=True, help="xmin,xmax,ymin,ymax")
    p.add_argument("--out", required=True)
    p.add_argument("--color-by", dest="color_by", default="none",
                   choices=["none", "clique-color"])
    p.add_argument("--ball", help="cx,cy,radius")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
