#!/usr/bin/env python3
"""Download a NAB realTweets volume file into data/ for the acceptance suite.

Usage: python scripts/fetch_nab_twitter.py [TICKER]   (default: AAPL)

Requires outbound network access. The acceptance suite looks for
data/Twitter_volume_*.csv or the FORETEL_NAB_TWITTER environment variable.
"""

import os
import sys
import urllib.request

BASE = ("https://raw.githubusercontent.com/numenta/NAB/master/data/"
        "realTweets/Twitter_volume_{ticker}.csv")


def main():
    ticker = sys.argv[1] if len(sys.argv) > 1 else "AAPL"
    url = BASE.format(ticker=ticker)
    dest_dir = os.path.join(os.path.dirname(os.path.dirname(
        os.path.abspath(__file__))), "data")
    os.makedirs(dest_dir, exist_ok=True)
    dest = os.path.join(dest_dir, f"Twitter_volume_{ticker}.csv")
    print(f"fetching {url}")
    try:
        urllib.request.urlretrieve(url, dest)
    except OSError as exc:
        print(f"error: download failed: {exc}", file=sys.stderr)
        return 1
    print(f"saved {dest}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
