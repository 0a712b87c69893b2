"""Protocol server: expose a value-function spec over stdin/stdout.

Runnable as ``python -m evo2048.heuristics.eval_server --spec post10``
(or with a path to a spec JSON). Speaks the line protocol consumed by
ExternalEvaluatorClient; used for round-trip protocol tests and as a
template for hand-written evaluators.
"""

from __future__ import annotations

import argparse
import sys

from ..engine.board import Board
from .external import PROTOCOL_NAME, PROTOCOL_VERSION
from .vfspec import ValueFunctionSpec, named_spec


def serve(spec: ValueFunctionSpec, stdin=None, stdout=None) -> None:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stdout.write(f"{PROTOCOL_NAME} {PROTOCOL_VERSION}\n")
    stdout.flush()
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        exps = [int(tok) for tok in line.split()]
        board = Board.from_exponents(exps)
        stdout.write(repr(spec.evaluate(board)) + "\n")
        stdout.flush()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--spec",
        default="post10",
        help="'pre10', 'post10', or a path to a spec JSON document",
    )
    args = parser.parse_args(argv)
    if args.spec in ("pre10", "post10"):
        spec = named_spec(args.spec)
    else:
        spec = ValueFunctionSpec.load(args.spec)
    serve(spec)
    return 0


if __name__ == "__main__":
    sys.exit(main())
