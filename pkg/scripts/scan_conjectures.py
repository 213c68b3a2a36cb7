#!/usr/bin/env python3
"""Run the counterexample scans for both conjectures at a configurable scale.

Divisibility: b and a variants for each odd exponent up to --p-max, plus the
unified c variant over m <= --m-max; mixed-cube over the square box.  With
--checkpoint-dir the scans resume from (and update) one file per scan, so an
interrupted run loses at most --batch cells of work.
"""

import argparse
import os
import sys
import time

from catalan_triangles.conjectures import (
    load_checkpoint,
    save_checkpoint,
    scan_divisibility,
    scan_mixed,
)


def run_resumable(label, checkpoint_dir, batch, scan):
    state = None
    path = None
    if checkpoint_dir:
        path = os.path.join(checkpoint_dir, label + ".json")
        if os.path.exists(path):
            state = load_checkpoint(path)
    while True:
        state = scan(checkpoint=state, max_cells=batch)
        if path:
            save_checkpoint(state, path)
        if state.frontier is None:
            return state


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=30)
    parser.add_argument("--m-max", type=int, default=40)
    parser.add_argument("--p-max", type=int, default=7, help="largest odd exponent to scan")
    parser.add_argument("--mixed-max", type=int, default=12)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--checkpoint-dir", default=None)
    parser.add_argument("--batch", type=int, default=None,
                        help="cells per checkpointed batch (default: all at once)")
    args = parser.parse_args()

    if args.checkpoint_dir:
        os.makedirs(args.checkpoint_dir, exist_ok=True)

    total_counterexamples = 0
    started = time.perf_counter()
    for p in range(1, args.p_max + 1, 2):
        for variant, ranges in (
            ("b", dict(n_range=(1, args.n_max))),
            ("a", dict(n_range=(1, args.n_max))),
            ("c", dict(m_range=(2, args.m_max))),
        ):
            label = "divisibility-%s-p%d" % (variant, p)
            state = run_resumable(
                label, args.checkpoint_dir, args.batch,
                lambda checkpoint, max_cells, variant=variant, p=p, ranges=ranges: scan_divisibility(
                    variant, p, checkpoint=checkpoint, jobs=args.jobs, max_cells=max_cells, **ranges
                ),
            )
            total_counterexamples += len(state.counterexamples)
            print("%-22s %6d cells %3d counterexamples %10.1f ms"
                  % (label, state.processed, len(state.counterexamples), state.elapsed_ms))

    mixed = run_resumable(
        "mixed-cube", args.checkpoint_dir, args.batch,
        lambda checkpoint, max_cells: scan_mixed(
            (1, args.mixed_max), (1, args.mixed_max),
            checkpoint=checkpoint, jobs=args.jobs, max_cells=max_cells,
        ),
    )
    total_counterexamples += len(mixed.counterexamples)
    print("%-22s %6d cells %3d counterexamples %10.1f ms"
          % ("mixed-cube", mixed.processed, len(mixed.counterexamples), mixed.elapsed_ms))

    print("done in %.1f s; %d counterexamples in total"
          % (time.perf_counter() - started, total_counterexamples))
    return 1 if total_counterexamples else 0


if __name__ == "__main__":
    sys.exit(main())
