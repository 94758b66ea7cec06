"""Command line entry points: ingest, query, serve.

``ingest`` builds a validated, palette-enriched index from a manifest and an
image directory; ``query`` runs the same filter semantics as the service
headlessly against an index file; ``serve`` starts the HTTP service.

Exit codes: 0 ok, 1 runtime error, 2 usage or input-validation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import BricolageError, InvalidFilter
from .facets import (
    ColorSampleFilter,
    FilterState,
    avg_story_count,
    evaluate,
    resolve_texture_refs,
)
from .index import ingest, load_index
from .palette import parse_hex, srgb_to_lab, wheel_position

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _color_flag(text: str) -> ColorSampleFilter:
    """Parse HEX[:tolerance[:min_proportion]] into a color sample."""
    parts = text.split(":")
    if not 1 <= len(parts) <= 3:
        raise InvalidFilter(f"bad --color value {text!r}")
    try:
        position = wheel_position(srgb_to_lab(parse_hex(parts[0])))
        tolerance = float(parts[1]) if len(parts) > 1 else 20.0
        min_proportion = float(parts[2]) if len(parts) > 2 else 0.15
    except ValueError as exc:
        raise InvalidFilter(f"bad --color value {text!r}: {exc}") from None
    return ColorSampleFilter(
        position=position, tolerance_de=tolerance, min_proportion=min_proportion
    )


def _years_flag(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise InvalidFilter(
            f"bad --years value {text!r}, expected MIN:MAX"
        ) from None


def _sizes_flag(text: str) -> frozenset[int]:
    try:
        return frozenset(int(part) for part in text.split(","))
    except ValueError:
        raise InvalidFilter(
            f"bad --sizes value {text!r}, expected comma-separated indices"
        ) from None


def filter_from_flags(args) -> FilterState:
    return FilterState(
        color_samples=tuple(_color_flag(c) for c in args.color or ()),
        year_range=_years_flag(args.years) if args.years else None,
        size_categories=_sizes_flag(args.sizes) if args.sizes else frozenset(),
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bricolage",
        description="Material-first index, query, and service for print collections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="build an index from a manifest")
    p_ingest.add_argument("--manifest", required=True, help="manifest JSON path")
    p_ingest.add_argument("--images", required=True, help="image root directory")
    p_ingest.add_argument("--out", required=True, help="index output path")
    p_ingest.add_argument(
        "--k-colors", type=int, default=5, help="palette entries per cover (max 16)"
    )

    p_query = sub.add_parser("query", help="filter an index headlessly")
    p_query.add_argument("--index", required=True, help="index JSON path")
    p_query.add_argument(
        "--color",
        action="append",
        metavar="HEX[:TOL[:MINPROP]]",
        help="color sample; repeatable, samples OR together",
    )
    p_query.add_argument("--years", metavar="MIN:MAX", help="publication year range")
    p_query.add_argument(
        "--sizes", metavar="I,J,...", help="size category indices, e.g. 0,2"
    )
    p_query.add_argument(
        "--json", action="store_true", help="emit the full filter response as JSON"
    )

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--index", required=True, help="index JSON path")
    p_serve.add_argument("--images", required=True, help="image root directory")
    p_serve.add_argument(
        "--data-dir",
        default=None,
        help="session directory (falls back to $BRICOLAGE_DATA_DIR)",
    )
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--ui", default=None, help="static UI bundle to serve at /")
    return parser


def _cmd_ingest(args) -> int:
    ingest(args.manifest, args.images, args.out, k_colors=args.k_colors)
    count = len(load_index(args.out).collection)
    print(f"wrote {args.out} ({count} anthologies)")
    return EXIT_OK


def _cmd_query(args) -> int:
    f = filter_from_flags(args)
    index = load_index(args.index)
    ids = evaluate(f, index.collection, index.size_categories)
    if args.json:
        f = resolve_texture_refs(f, index.collection)
        print(
            json.dumps(
                {
                    "ids": ids,
                    "avg_story_count": avg_story_count(index.collection, ids),
                    "color_samples": [s.to_json() for s in f.color_samples],
                },
                indent=2,
            )
        )
    else:
        for aid in ids:
            print(aid)
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .service import serve

    data_dir = args.data_dir or os.environ.get("BRICOLAGE_DATA_DIR")
    if data_dir is None:
        data_dir = "bricolage-sessions"
    serve(
        args.index,
        args.images,
        data_dir,
        port=args.port,
        host=args.host,
        ui_dir=args.ui,
    )
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    commands = {"ingest": _cmd_ingest, "query": _cmd_query, "serve": _cmd_serve}
    try:
        return commands[args.command](args)
    except InvalidFilter as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BricolageError as exc:
        # bad input data (manifest, images, index): usage-class failure
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        # user pointed a flag at a path that does not exist
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
