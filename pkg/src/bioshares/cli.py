"""Command-line interface: enroll, authenticate, evaluate, batch.

Exit codes: 0 success, 2 usage, 3 I/O (including an empty corpus), 4
integrity (digest mismatch or missing share), 5 image format or dimension
problems.
"""

from __future__ import annotations

import argparse
import json
import math
import secrets
import sys
from pathlib import Path

from .batch import run_batch, write_batch_csv
from .codecs import BmpError, PgmError, load_image_file, write_pgm_file
from .datasets import DATASET_KINDS, EmptyCorpusError
from .images import BitTransform, DimensionMismatchError
from .manifest import (
    EnrollmentManifest,
    IntegrityError,
    load_manifest,
    load_share_set,
    pixel_digest,
    save_manifest,
)
from .metrics import MetricsReport, mean_reports, report_all
from .prng import SEED_MAX, seed_sequence
from .scheme import (
    Method,
    SchemeParams,
    authenticate,
    generate_shares,
    reveal_original,
    seed_count,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INTEGRITY = 4
EXIT_FORMAT = 5

EVALUATE_SCHEMA = 1

IDEAL_ROW = {
    "cr": "1.0", "mse": "0.0", "rmse": "0.0", "mae": "0.0",
    "psnr": "inf", "ssim": "1.0", "npcr": "0.0", "uaci": "0.0",
}


class UsageError(ValueError):
    pass


def _u64(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value <= SEED_MAX:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _seed_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(_u64(part.strip()) for part in text.split(","))
    except argparse.ArgumentTypeError as exc:
        raise argparse.ArgumentTypeError(f"bad seed list: {exc}") from None


def _bit_transform(text: str) -> BitTransform:
    try:
        return BitTransform.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bioshares",
        description="Generate, reconstruct and evaluate cancelable biometric image shares.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_enroll = sub.add_parser("enroll", help="split an image into shares and write a manifest")
    p_enroll.add_argument("input", type=Path, help="secret image (PGM or BMP)")
    p_enroll.add_argument("--out", type=Path, default=Path("."), help="output directory")
    p_enroll.add_argument("--user", default=None, help="user id (default: input file stem)")
    p_enroll.add_argument("--method", choices=[m.value for m in Method], default="m3")
    p_enroll.add_argument("--shares", type=int, default=4, metavar="N", help="share count n (>= 2)")
    p_enroll.add_argument("--seed", type=_u64, default=None, metavar="U64",
                          help="master seed; per-slot seeds derive from it")
    p_enroll.add_argument("--seeds", type=_seed_list, default=None, metavar="LIST",
                          help="comma-separated explicit per-slot seeds")
    p_enroll.add_argument("--bit-transform", type=_bit_transform, default=BitTransform(),
                          metavar="{reverse8,rotate:K}")
    p_enroll.add_argument("--cover", type=Path, action="append", default=[],
                          help="cover image for method m1 (repeat n-1 times)")
    p_enroll.set_defaults(func=cmd_enroll)

    p_auth = sub.add_parser("authenticate", help="verify digests and reconstruct from a manifest")
    p_auth.add_argument("manifest", type=Path)
    p_auth.add_argument("--share-dir", type=Path, default=None,
                        help="directory holding the share files (default: manifest directory)")
    p_auth.add_argument("--out", type=Path, default=None,
                        help="output directory (default: share directory)")
    p_auth.add_argument("--seeds", type=_seed_list, default=None, metavar="LIST",
                        help="override the manifest seeds (m3 reveal)")
    p_auth.set_defaults(func=cmd_authenticate)

    p_eval = sub.add_parser("evaluate", help="score the shares of a manifest against an original")
    p_eval.add_argument("original", type=Path)
    p_eval.add_argument("manifest", type=Path)
    p_eval.add_argument("--share-dir", type=Path, default=None)
    p_eval.add_argument("--report", type=Path, default=None, help="write the JSON report here")
    p_eval.set_defaults(func=cmd_evaluate)

    p_batch = sub.add_parser("batch", help="enroll and evaluate a whole dataset")
    p_batch.add_argument("root", type=Path, help="dataset root directory")
    p_batch.add_argument("--dataset-kind", choices=DATASET_KINDS, default="flat")
    p_batch.add_argument("--method", choices=[m.value for m in Method], default="m3")
    p_batch.add_argument("--shares", type=int, default=4, metavar="N")
    p_batch.add_argument("--seed", type=_u64, default=1, metavar="U64", help="master seed")
    p_batch.add_argument("--bit-transform", type=_bit_transform, default=BitTransform(),
                         metavar="{reverse8,rotate:K}")
    p_batch.add_argument("--report", type=Path, default=None,
                         help="write the JSON aggregate here (CSV lands next to it)")
    p_batch.add_argument("--csv", type=Path, default=None, help="write the per-image CSV here")
    p_batch.set_defaults(func=cmd_batch)

    return parser


def _require_n(n: int) -> None:
    if n < 2:
        raise UsageError(f"--shares must be at least 2, got {n}")


def _resolve_seeds(args, method: Method, n: int, have_covers: bool) -> tuple[int, ...]:
    """Seeds for enrollment: explicit list, derived from a master, or fresh."""
    needed = 0 if (method is Method.M1 and have_covers) else seed_count(method, n)
    if args.seeds is not None:
        if len(args.seeds) != needed:
            raise UsageError(
                f"method {method.value} with --shares {n} needs {needed} seeds, "
                f"got {len(args.seeds)}"
            )
        return args.seeds
    if needed == 0:
        return ()
    master = args.seed if args.seed is not None else secrets.randbits(64)
    return tuple(seed_sequence(master, needed))


def cmd_enroll(args) -> int:
    _require_n(args.shares)
    method = Method(args.method)
    user = args.user or args.input.stem
    original = load_image_file(args.input)

    covers = [load_image_file(p) for p in args.cover]
    if covers and method is not Method.M1:
        raise UsageError("--cover applies to method m1 only")
    if covers and len(covers) != args.shares - 1:
        raise UsageError(f"method m1 needs {args.shares - 1} covers, got {len(covers)}")

    seeds = _resolve_seeds(args, method, args.shares, bool(covers))
    try:
        params = SchemeParams(
            method=method,
            n=args.shares,
            bit_transform=args.bit_transform,
            seeds=seeds,
            cover_sources=tuple(str(p) for p in args.cover),
        )
        share_set = generate_shares(original, params, covers or None)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    args.out.mkdir(parents=True, exist_ok=True)
    share_files = []
    digests = []
    for i, share in enumerate(share_set.shares, start=1):
        name = f"{user}_share_{i}.pgm"
        write_pgm_file(share, args.out / name)
        share_files.append(name)
        digests.append(pixel_digest(share))
    manifest = EnrollmentManifest(
        user_id=user,
        method=method,
        n=args.shares,
        bit_transform=args.bit_transform,
        seeds=seeds,
        dims=original.dims,
        share_files=tuple(share_files),
        content_digests=tuple(digests),
        cover_sources=tuple(str(p) for p in args.cover),
    )
    manifest_path = args.out / f"{user}_manifest.json"
    save_manifest(manifest, manifest_path)
    print(f"enrolled {user}: {args.shares} shares ({method.value}, "
          f"{original.width}x{original.height}) -> {manifest_path}")
    return EXIT_OK


def cmd_authenticate(args) -> int:
    manifest = load_manifest(args.manifest)
    share_dir = args.share_dir or args.manifest.parent
    out_dir = args.out or share_dir
    share_set = load_share_set(manifest, share_dir)
    result = authenticate(share_set)

    out_dir.mkdir(parents=True, exist_ok=True)
    user = manifest.user_id
    write_pgm_file(result.secret, out_dir / f"{user}_reconstructed_secret.pgm")
    for i, cover in enumerate(result.covers, start=1):
        write_pgm_file(cover, out_dir / f"{user}_reconstructed_cover_{i}.pgm")
    print(f"digests verified; reconstructed secret and {len(result.covers)} covers -> {out_dir}")

    seeds = args.seeds if args.seeds is not None else manifest.seeds
    if manifest.method is Method.M3 and seeds:
        try:
            params = SchemeParams(
                method=manifest.method,
                n=manifest.n,
                bit_transform=manifest.bit_transform,
                seeds=seeds,
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        revealed = reveal_original(result, params)
        write_pgm_file(revealed, out_dir / f"{user}_revealed_original.pgm")
        print(f"revealed original -> {out_dir / (user + '_revealed_original.pgm')}")
    return EXIT_OK


def _format_table(report: MetricsReport) -> str:
    lines = [f"{'measure':<8} {'value':>14} {'ideal':>8}"]
    for name in MetricsReport.FIELDS:
        value = getattr(report, name)
        if value is None:
            text = "n/a"
        elif isinstance(value, float) and math.isinf(value):
            text = "inf"
        else:
            text = f"{value:.4f}"
        lines.append(f"{name:<8} {text:>14} {IDEAL_ROW[name]:>8}")
    return "\n".join(lines)


def cmd_evaluate(args) -> int:
    original = load_image_file(args.original)
    manifest = load_manifest(args.manifest)
    share_dir = args.share_dir or args.manifest.parent
    share_set = load_share_set(manifest, share_dir)
    reports = [report_all(original, share) for share in share_set.shares]
    averaged = mean_reports(reports)

    print(f"{manifest.user_id}: {len(reports)} shares vs {args.original}")
    print(_format_table(averaged))
    doc = {
        "schema": EVALUATE_SCHEMA,
        "original": str(args.original),
        "manifest": str(args.manifest),
        "pairs": len(reports),
        "metrics": averaged.to_dict(),
        "per_share": [r.to_dict() for r in reports],
    }
    if args.report is not None:
        args.report.parent.mkdir(parents=True, exist_ok=True)
        args.report.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        print(f"report -> {args.report}")
    return EXIT_OK


def cmd_batch(args) -> int:
    _require_n(args.shares)
    rows, report = run_batch(
        root=args.root,
        kind=args.dataset_kind,
        method=Method(args.method),
        n=args.shares,
        master_seed=args.seed,
        transform=args.bit_transform,
    )
    doc = report.to_dict()
    print(json.dumps(doc, indent=2))
    if args.report is not None:
        args.report.parent.mkdir(parents=True, exist_ok=True)
        args.report.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    csv_path = args.csv
    if csv_path is None and args.report is not None:
        csv_path = args.report.with_suffix(".csv")
    if csv_path is not None:
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        write_batch_csv(rows, csv_path)
        print(f"per-image rows -> {csv_path}", file=sys.stderr)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except (PgmError, BmpError, DimensionMismatchError) as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except EmptyCorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
