"""Command-line front end.

Subcommands:

    encode      print a square image's rotation angles, one per line
    upscale     bilinear 2^m x 2^m up-scaling
    downscale   sample-average 2^-m x 2^-m down-scaling
    nearest     nearest-neighbor 2^m x 2^m up-scaling (baseline)
    compare     PSNR/SSIM table: nearest vs bilinear at ratios 2 and 4
    verify      cross-check classical, structured, and dense routes
    cost        gate-cost audit of a scaling network

Images are PGM files (binary P5 or plain P2, maxval 255); output images
are written as binary P5. The dense backend simulates the full
statevector and is limited by the qubit budget; the structured backend
evaluates the same arithmetic per position and handles any size.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import interp, metrics, oracle, pgm, qsim, structured
from .complexity import audit_circuit, audit_omega
from .frqi import (FrqiLayout, GrayImage, angles_to_image, decode_sampled,
                   encode_frqi, image_to_angles)
from .interp import ACCUMULATE, DOWN, LITERAL_SWAP, UP, ScaleSpec
from .oracle import PAPER_LITERAL, STANDARD

_SWAP_CHOICES = {"accumulate": ACCUMULATE, "literal": LITERAL_SWAP}
_WEIGHT_CHOICES = {"standard": STANDARD, "paper": PAPER_LITERAL}


def _add_ratio(parser, required=True):
    parser.add_argument("--ratio-exp", "-m", type=int, required=required,
                        default=None if required else 1, metavar="M",
                        help="scaling ratio exponent; the ratio is 2^M")


def _add_backend(parser):
    parser.add_argument("--backend", choices=("structured", "dense"),
                        default="structured",
                        help="structured: per-position arithmetic; dense: "
                             "full statevector (small images only)")
    parser.add_argument("--swap", choices=sorted(_SWAP_CHOICES),
                        default="accumulate",
                        help="dense backend rotation shuttling: accumulate "
                             "on one wire, or literal two-wire swapping")


def _out_image(image: GrayImage, path):
    if path is None:
        raise SystemExit("refusing to write binary PGM to stdout; "
                         "pass --out PATH")
    pgm.write_pgm(path, image)


def _print_or_write(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)


def _load(path) -> GrayImage:
    try:
        return pgm.read_pgm(path)
    except (OSError, ValueError) as exc:
        raise SystemExit(f"error: {exc}")


def _cmd_encode(args):
    image = _load(args.image)
    if args.shots is None:
        angles = image_to_angles(image)
    else:
        layout = FrqiLayout(image.n)
        state, _ = encode_frqi(image_to_angles(image))
        angles, _ = decode_sampled(state, layout, args.shots,
                                   seed=args.seed)
    lines = "".join(f"{v:.17g}\n" for v in angles.flat())
    _print_or_write(lines, args.out)
    return 0


def _scaled_angles(image, m, direction, backend, swap_mode, weight_mode):
    angles = image_to_angles(image)
    if backend == "structured":
        if direction == UP:
            return structured.upscale_structured(angles, m, weight_mode)
        return structured.downscale_structured(angles, m)
    if direction == UP:
        return interp.simulate_upscale_dense(
            image, m, swap_mode=swap_mode, weight_mode=weight_mode)
    return interp.simulate_downscale_dense(image, m, swap_mode=swap_mode)


def _cmd_upscale(args):
    image = _load(args.image)
    if args.ratio_exp < 0:
        raise SystemExit("error: ratio exponent must be non-negative")
    if args.ratio_exp == 0:
        _out_image(image, args.out)
        return 0
    weight_mode = _WEIGHT_CHOICES[args.weights]
    swap_mode = _SWAP_CHOICES[args.swap]
    try:
        angles = _scaled_angles(image, args.ratio_exp, UP, args.backend,
                                swap_mode, weight_mode)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    _out_image(angles_to_image(angles), args.out)
    return 0


def _cmd_downscale(args):
    image = _load(args.image)
    if args.ratio_exp < 1:
        raise SystemExit("error: ratio exponent must be at least 1")
    swap_mode = _SWAP_CHOICES[args.swap]
    try:
        angles = _scaled_angles(image, args.ratio_exp, DOWN, args.backend,
                                swap_mode, STANDARD)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    _out_image(angles_to_image(angles), args.out)
    return 0


def _cmd_nearest(args):
    image = _load(args.image)
    if args.ratio_exp < 0:
        raise SystemExit("error: ratio exponent must be non-negative")
    _out_image(oracle.nearest_upscale(image, args.ratio_exp), args.out)
    return 0


def _cmd_compare(args):
    rows = ["image,scheme,psnr_db,ssim"]
    for path in args.images:
        reference = _load(path)
        for m in (1, 2):
            try:
                small = oracle.anchor_subsample(reference, m)
            except ValueError as exc:
                raise SystemExit(f"error: {path}: {exc}")
            pairs = (
                (f"N 2^{m}", oracle.nearest_upscale(small, m)),
                (f"B 2^{m}", angles_to_image(structured.upscale_structured(
                    image_to_angles(small), m))),
            )
            for scheme, result in pairs:
                report = metrics.metric_report(reference, result)
                rows.append(f"{path},{scheme},"
                            f"{report.psnr_db:.4f},{report.ssim:.6f}")
    _print_or_write("".join(r + "\n" for r in rows), args.out)
    return 0


def _verify_routes(image, m, direction):
    """Yield (route label, AngleMap or error string) for one direction."""
    angles = image_to_angles(image)
    if direction == UP:
        yield "classical", oracle.bilinear_upscale_angles(angles, m)
        yield "structured", structured.upscale_structured(angles, m)
    else:
        yield "classical", oracle.average_downscale_angles(angles, m)
        yield "structured", structured.downscale_structured(angles, m)
    for label, swap_mode in (("dense/accumulate", ACCUMULATE),
                             ("dense/literal-swap", LITERAL_SWAP)):
        try:
            if direction == UP:
                result = interp.simulate_upscale_dense(image, m,
                                                       swap_mode=swap_mode)
            else:
                result = interp.simulate_downscale_dense(image, m,
                                                         swap_mode=swap_mode)
        except ValueError as exc:
            yield label, str(exc)
            continue
        yield label, result


def _cmd_verify(args):
    image = _load(args.image)
    m = args.ratio_exp
    if m < 1:
        raise SystemExit("error: ratio exponent must be at least 1")
    directions = {"up": (UP,), "down": (DOWN,),
                  "both": (UP, DOWN)}[args.direction]
    ok = True
    for direction in directions:
        if direction == DOWN and image.side < (1 << (m + 1)):
            print(f"{direction}: skipped (side {image.side} too small "
                  f"for ratio 2^{m})")
            continue
        baseline = None
        ran = 0
        for label, result in _verify_routes(image, m, direction):
            if isinstance(result, str):
                print(f"{direction} {label}: skipped ({result})")
                continue
            ran += 1
            if baseline is None:
                baseline = result
                print(f"{direction} {label}: baseline")
                continue
            err = float(np.max(np.abs(result.angles - baseline.angles)))
            same = np.array_equal(angles_to_image(result).pixels,
                                  angles_to_image(baseline).pixels)
            status = "ok" if err <= args.tolerance and same else "MISMATCH"
            print(f"{direction} {label}: max angle err {err:.3e}, "
                  f"pixels {'match' if same else 'DIFFER'} [{status}]")
            ok = ok and status == "ok"
        if ran < 2:
            print(f"{direction}: fewer than two routes ran; nothing "
                  f"to cross-check")
    print("EQUIVALENT" if ok else "MISMATCH")
    return 0 if ok else 1


def _cmd_cost(args):
    n, m = args.n, args.ratio_exp
    if args.direction == "omega":
        report = audit_omega(n)
        title = f"clamped increment, n={n}"
    else:
        # Up-scaling reads n as the source exponent, down-scaling as the
        # target exponent, matching the published cost lines.
        side = 1 << (n if args.direction == "up" else n + m)
        zero = GrayImage(np.zeros((side, side), dtype=np.uint8))
        swap_mode = _SWAP_CHOICES[args.swap]
        try:
            if args.direction == "up":
                circuit, _ = interp.build_upscale_circuit(
                    zero, m, swap_mode=swap_mode, fused=False)
                spec = ScaleSpec(n, m, UP)
            else:
                circuit, _ = interp.build_downscale_circuit(
                    zero, m, swap_mode=swap_mode)
                spec = ScaleSpec(n, m, DOWN)
        except ValueError as exc:
            raise SystemExit(f"error: {exc}")
        report = audit_circuit(circuit, spec)
        title = (f"{args.direction}-scaling network, n={n}, m={m}, "
                 f"swap mode {swap_mode}")
    lines = [f"circuit: {title}"]
    for key in sorted(report.counts):
        lines.append(f"  {key}: {report.counts[key]}")
    lines.append(f"cnot-equivalent total: {report.cnot_equivalent_total}")
    lines.append(f"single-qubit NOT gates (weight 0): {report.not_count}")
    if report.per_tag:
        lines.append("per-tag subtotals:")
        for tag in sorted(report.per_tag):
            lines.append(f"  {tag}: {report.per_tag[tag]}")
    if report.paper_formula_value is not None:
        lines.append(f"published closed form: "
                     f"{report.paper_formula_value}")
    if report.discrepancy_notes:
        lines.append("discrepancy notes:")
        for note in report.discrepancy_notes:
            lines.append(f"  - {note}")
    _print_or_write("".join(s + "\n" for s in lines), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frqi-bilinear",
        description="Bilinear and nearest-neighbor scaling of grayscale "
                    "images on an angle-encoded quantum register")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="print rotation angles, one per "
                                      "line, row-major")
    p.add_argument("image")
    p.add_argument("--shots", type=int, default=None, metavar="N",
                   help="estimate angles from N measurement samples "
                        "instead of reading them exactly")
    p.add_argument("--seed", type=int, default=None,
                   help="sampling seed (with --shots)")
    p.add_argument("--out", default=None, help="output file (default "
                                               "stdout)")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("upscale", help="bilinear up-scaling by 2^M")
    p.add_argument("image")
    _add_ratio(p)
    _add_backend(p)
    p.add_argument("--weights", choices=sorted(_WEIGHT_CHOICES),
                   default="standard",
                   help="standard: normalized bilinear weights; paper: "
                        "the published variant (folds overflowed angles)")
    p.add_argument("--out", required=True, help="output PGM path")
    p.set_defaults(func=_cmd_upscale)

    p = sub.add_parser("downscale", help="sample-average down-scaling "
                                         "by 2^-M")
    p.add_argument("image")
    _add_ratio(p)
    _add_backend(p)
    p.add_argument("--out", required=True, help="output PGM path")
    p.set_defaults(func=_cmd_downscale)

    p = sub.add_parser("nearest", help="nearest-neighbor up-scaling "
                                       "by 2^M (baseline)")
    p.add_argument("image")
    _add_ratio(p)
    p.add_argument("--out", required=True, help="output PGM path")
    p.set_defaults(func=_cmd_nearest)

    p = sub.add_parser("compare",
                       help="shrink each image by 2 and 4, re-enlarge "
                            "with nearest (N) and bilinear (B), report "
                            "PSNR/SSIM against the original as CSV")
    p.add_argument("images", nargs="+")
    p.add_argument("--out", default=None, help="output CSV (default "
                                               "stdout)")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("verify",
                       help="cross-check classical, structured, and "
                            "dense routes on one image")
    p.add_argument("image")
    _add_ratio(p)
    p.add_argument("--direction", choices=("up", "down", "both"),
                   default="both")
    p.add_argument("--tolerance", type=float, default=qsim.ATOL,
                   help="max allowed angle difference (default %(default)g)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("cost", help="gate-cost audit of a scaling "
                                    "network")
    p.add_argument("direction", choices=("up", "down", "omega"))
    p.add_argument("-n", type=int, required=True,
                   help="position bits per axis (image side 2^n)")
    _add_ratio(p, required=False)
    p.add_argument("--swap", choices=sorted(_SWAP_CHOICES),
                   default="literal",
                   help="literal matches the published network shape "
                        "(includes the four swaps); default literal")
    p.add_argument("--out", default=None, help="output file (default "
                                               "stdout)")
    p.set_defaults(func=_cmd_cost)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
