#!/usr/bin/env python3
"""Launch the session service with synthetic component runners.

The demo runners synthesise deterministic per-modality outputs so the full
HTTP surface (sessions, trials, profiles, reports, SSE stream) can be
exercised without cameras, microphones, or trained model weights.
"""

from __future__ import annotations

import argparse
import tempfile

import uvicorn

from emokit.service import SessionManager, create_app, demo_runners


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--seed", type=int, default=0, help="seed for the synthetic runners")
    parser.add_argument(
        "--data-dir",
        default=None,
        help="session storage root (default: a fresh temporary directory)",
    )
    args = parser.parse_args()

    root = args.data_dir or tempfile.mkdtemp(prefix="emokit-sessions-")
    manager = SessionManager(root, demo_runners(seed=args.seed))
    app = create_app(manager)
    print(f"session storage root: {root}")
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()
