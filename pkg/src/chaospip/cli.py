"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data/format error, 3 key error.
Diagnostics go to stderr; data goes to files or stdout only, and key
material is never written into any output file.
"""

from __future__ import annotations

import argparse
import secrets
import sys
from pathlib import Path

from . import analysis
from .cipher import Frame, ReseedMode, process_stream
from .errors import (
    DegenerateInput,
    DimensionMismatch,
    EmptyInput,
    FixedPointError,
    FormatError,
    ParseError,
    RangeError,
)
from .io import MAGIC, container_mode_for, read_container, read_pnm, write_container, write_pnm
from .keystream import DEFAULT_BURN_IN, KeyMaterial, derive_key_from_hex, derive_key_from_params

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_KEY = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chaospip",
        description="Chaotic logistic-map cipher for images and raw video, "
        "with statistical analysis of the results.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="derive or generate key parameters")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--random", action="store_true", help="fresh key from OS entropy (default)")
    g.add_argument("--from-hex", metavar="HEX", help="derive from a 64-hex-digit key")
    p.set_defaults(func=_cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt PNM frames or a raw planar file")
    p.add_argument("--in", dest="inputs", metavar="PATH", nargs="+", required=True,
                   help="PGM/PPM file(s), or one raw planar file with --width/--height")
    p.add_argument("--out", required=True, help="output container path")
    _add_key_flags(p)
    p.add_argument("--reseed", choices=["continuous", "per-frame"], default="continuous",
                   help="keystream handling across frames (default: continuous)")
    p.add_argument("--width", type=int, help="raw input: frame width")
    p.add_argument("--height", type=int, help="raw input: frame height")
    p.add_argument("--channels", type=int, choices=[1, 3], default=1,
                   help="raw input: channels per frame (default: 1)")
    p.add_argument("--as-pnm", action="store_true",
                   help="also export the ciphertext as viewable PNM next to the container")
    p.set_defaults(func=_cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a container")
    p.add_argument("--in", dest="inputs", metavar="PATH", required=True, help="container path")
    p.add_argument("--out", required=True,
                   help="output path (a directory for multi-frame --as-pnm output)")
    _add_key_flags(p)
    p.add_argument("--as-pnm", action="store_true", help="write PGM/PPM instead of raw planar bytes")
    p.set_defaults(func=_cmd_decrypt)

    p = sub.add_parser("analyze", help="histograms, entropy, and plain/cipher correlation")
    p.add_argument("--plain", required=True, help="plain image (PGM/PPM)")
    p.add_argument("--cipher", required=True, help="encrypted counterpart (container or PGM/PPM)")
    p.add_argument("--report", help="write the report here instead of stdout")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("keystream-hist", help="histogram of raw map values after burn-in")
    _add_key_flags(p)
    p.add_argument("--n", type=int, required=True, help="number of iterates")
    p.add_argument("--bins", type=int, required=True, help="number of uniform bins over [0,1]")
    p.add_argument("--out", required=True, help="output CSV path ('bin_low,bin_high,count' rows)")
    p.set_defaults(func=_cmd_keystream_hist)

    return parser


def _add_key_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mu", required=True, help="control parameter, a decimal in (3.57, 4.0)")
    p.add_argument("--x0", required=True, help="initial map state, a decimal in (0, 1)")
    p.add_argument("--burn-in", type=int, default=DEFAULT_BURN_IN,
                   help=f"iterates discarded before the first key byte (default: {DEFAULT_BURN_IN})")


def _key_from_args(args: argparse.Namespace) -> KeyMaterial:
    return derive_key_from_params(args.mu, args.x0, args.burn_in)


def _cmd_keygen(args: argparse.Namespace) -> int:
    if args.from_hex is not None:
        key = derive_key_from_hex(args.from_hex)
    else:
        key = derive_key_from_hex(secrets.token_hex(32))
    print(f"mu={key.mu!r} x0={key.x0!r} burn_in={key.burn_in}")
    return EXIT_OK


def _load_input_frames(args: argparse.Namespace) -> list[Frame]:
    if args.width is not None or args.height is not None:
        if args.width is None or args.height is None:
            raise FormatError("raw input needs both --width and --height")
        if len(args.inputs) != 1:
            raise FormatError("raw input takes exactly one --in path")
        blob = Path(args.inputs[0]).read_bytes()
        frame_bytes = args.width * args.height * args.channels
        if frame_bytes <= 0:
            raise FormatError("raw dimensions must be positive")
        if not blob or len(blob) % frame_bytes:
            raise FormatError(
                f"raw file holds {len(blob)} bytes, not a positive multiple of {frame_bytes}"
            )
        return [
            Frame(args.width, args.height, args.channels,
                  blob[i * frame_bytes : (i + 1) * frame_bytes])
            for i in range(len(blob) // frame_bytes)
        ]
    return [read_pnm(Path(path).read_bytes()) for path in args.inputs]


def _cmd_encrypt(args: argparse.Namespace) -> int:
    key = _key_from_args(args)
    frames = _load_input_frames(args)
    reseed = ReseedMode.PER_FRAME if args.reseed == "per-frame" else ReseedMode.CONTINUOUS
    encrypted = process_stream(frames, key, reseed)
    mode = container_mode_for(frames[0].channels, video=len(frames) > 1)
    out = Path(args.out)
    out.write_bytes(write_container(encrypted, mode, reseed))
    if args.as_pnm:
        for i, f in enumerate(encrypted):
            suffix = ".pgm" if f.channels == 1 else ".ppm"
            name = out.name + (suffix if len(encrypted) == 1 else f".frame-{i:06d}{suffix}")
            out.with_name(name).write_bytes(write_pnm(f))
    print(f"encrypted {len(frames)} frame(s) -> {out}", file=sys.stderr)
    return EXIT_OK


def _cmd_decrypt(args: argparse.Namespace) -> int:
    key = _key_from_args(args)
    frames, _mode, reseed = read_container(Path(args.inputs).read_bytes())
    decrypted = process_stream(frames, key, reseed)
    out = Path(args.out)
    if args.as_pnm:
        if len(decrypted) == 1:
            out.write_bytes(write_pnm(decrypted[0]))
        else:
            out.mkdir(parents=True, exist_ok=True)
            suffix = ".pgm" if decrypted[0].channels == 1 else ".ppm"
            for i, f in enumerate(decrypted):
                (out / f"frame-{i:06d}{suffix}").write_bytes(write_pnm(f))
    else:
        out.write_bytes(b"".join(f.data for f in decrypted))
    print(f"decrypted {len(decrypted)} frame(s) -> {out}", file=sys.stderr)
    return EXIT_OK


def _load_cipher_file(path: str) -> Frame:
    data = Path(path).read_bytes()
    if data[:4] == MAGIC:
        frames, _mode, _reseed = read_container(data)
        if len(frames) != 1:
            raise FormatError("analyze expects a single-frame container")
        return frames[0]
    return read_pnm(data)


def _format_report(plain: Frame, cipher: Frame, report: analysis.MetricsReport) -> str:
    lines = []
    for label, frame in (("plain", plain), ("cipher", cipher)):
        for c in range(frame.channels):
            lines.append(f"# histogram {label} channel {c}")
            counts = analysis.histogram256(frame.plane(c))
            lines.extend(f"{value},{count}" for value, count in enumerate(counts))
    lines.append(f"entropy_plain={report.entropy_plain!r}")
    lines.append(f"entropy_cipher={report.entropy_cipher!r}")
    lines.append(f"corr={report.corr!r}")
    if report.channels is not None:
        for c, m in enumerate(report.channels):
            lines.append(f"entropy_plain_ch{c}={m.entropy_plain!r}")
            lines.append(f"entropy_cipher_ch{c}={m.entropy_cipher!r}")
            lines.append(f"corr_ch{c}={m.corr!r}")
    return "\n".join(lines) + "\n"


def _cmd_analyze(args: argparse.Namespace) -> int:
    plain = read_pnm(Path(args.plain).read_bytes())
    cipher = _load_cipher_file(args.cipher)
    report = analysis.compare_frames(plain, cipher)
    text = _format_report(plain, cipher, report)
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_keystream_hist(args: argparse.Namespace) -> int:
    key = _key_from_args(args)
    if args.n < 1 or args.bins < 1 or args.n < args.bins:
        raise FormatError("--n and --bins must be positive with --n >= --bins")
    counts = analysis.keystream_histogram(key, args.n, args.bins)
    rows = [
        f"{i / args.bins!r},{(i + 1) / args.bins!r},{count}"
        for i, count in enumerate(counts)
    ]
    Path(args.out).write_text("\n".join(rows) + "\n")
    return EXIT_OK


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help (0) and usage errors (2)
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except (ParseError, RangeError, FixedPointError) as exc:
        print(f"key error: {exc}", file=sys.stderr)
        return EXIT_KEY
    except (FormatError, DimensionMismatch, DegenerateInput, EmptyInput, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
