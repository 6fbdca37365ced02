from __future__ import annotations

import argparse
import os
import sys

from annotator_adapter.config import AdapterConfig
from annotator_adapter.service import ModelLoadFailure, serve_annotator


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="annotator-adapter",
        description="serve a token-classification NER model over the annotator wire protocol",
    )
    parser.add_argument("--model-id", default=os.environ.get("MODEL_ID"))
    parser.add_argument("--device", default="cpu")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=int(os.environ.get("ANNOTATOR_PORT", 8601)))
    parser.add_argument("--max-chunk", type=int, default=450)
    parser.add_argument("--overlap", type=int, default=50)
    args = parser.parse_args(argv)

    kwargs = dict(
        device=args.device,
        host=args.host,
        port=args.port,
        max_chunk=args.max_chunk,
        overlap=args.overlap,
    )
    if args.model_id:
        kwargs["model_id"] = args.model_id
    try:
        config = AdapterConfig(**kwargs)
        serve_annotator(config)
    except (ModelLoadFailure, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
