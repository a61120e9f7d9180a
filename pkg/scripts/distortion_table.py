#!/usr/bin/env python3
"""Run all three cover strategies over one image corpus and print the
aggregate distortion row for each, next to the ideal same-image row.

Usage: python scripts/distortion_table.py CORPUS_DIR [--dataset-kind KIND]
       [--shares N] [--seed U64]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from bioshares import Method, run_batch
from bioshares.images import REVERSE8

COLUMNS = ("cr", "mse", "rmse", "mae", "psnr", "ssim", "npcr", "uaci")
IDEAL = ("1.00", "0", "0", "0", "inf", "1.00", "0", "0")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("corpus", type=Path)
    parser.add_argument("--dataset-kind", default="flat", choices=("orl-pgm", "iitd-bmp", "flat"))
    parser.add_argument("--shares", type=int, default=4)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    header = f"{'method':<8}" + "".join(f"{c:>10}" for c in COLUMNS)
    print(header)
    print(f"{'ideal':<8}" + "".join(f"{v:>10}" for v in IDEAL))
    for method in Method:
        _, report = run_batch(
            root=args.corpus,
            kind=args.dataset_kind,
            method=method,
            n=args.shares,
            master_seed=args.seed,
            transform=REVERSE8,
        )
        m = report.metrics
        cells = [
            f"{m.cr:.4f}" if m.cr is not None else "n/a",
            f"{m.mse:.1f}",
            f"{m.rmse:.2f}",
            f"{m.mae:.2f}",
            f"{m.psnr:.3f}",
            f"{m.ssim:.4f}",
            f"{m.npcr:.2f}",
            f"{m.uaci:.2f}",
        ]
        print(f"{method.value:<8}" + "".join(f"{c:>10}" for c in cells))
    return 0


if __name__ == "__main__":
    sys.exit(main())
