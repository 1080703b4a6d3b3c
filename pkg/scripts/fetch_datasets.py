"""Download the registered datasets into ./data and pin their checksums.

Sources without a known URL are listed with a hint; copy those files
into the data directory by hand.
"""

import argparse
import sys

from wcycle.datasets import REGISTRY, fetch


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=list(REGISTRY))
    ap.add_argument("--dest", default="data")
    args = ap.parse_args()
    failed = 0
    for name in args.names:
        try:
            path = fetch(name, args.dest)
            print(f"ok      {name}: {path}")
        except (KeyError, RuntimeError, OSError) as exc:
            failed += 1
            print(f"missing {name}: {exc}", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
