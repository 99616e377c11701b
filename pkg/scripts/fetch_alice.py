#!/usr/bin/env python3
"""Download the public-domain Alice in Wonderland text for the tagger tests.

Writes tests/data/alice_corpus.txt (Project Gutenberg ebook #11, header
and footer stripped).  Needs outbound network access; the test suite
skips the corpus-dependent checks when the file is absent.
"""

import re
import sys
import urllib.request
from pathlib import Path

URLS = [
    "https://www.gutenberg.org/cache/epub/11/pg11.txt",
    "https://www.gutenberg.org/files/11/11-0.txt",
]
START = re.compile(r"\*\*\* START OF.*\*\*\*")
END = re.compile(r"\*\*\* END OF.*\*\*\*")


def main() -> int:
    out = Path(__file__).resolve().parent.parent / "tests" / "data" / "alice_corpus.txt"
    for url in URLS:
        try:
            raw = urllib.request.urlopen(url, timeout=30).read().decode("utf-8-sig")
        except OSError as exc:
            print(f"fetch failed from {url}: {exc}", file=sys.stderr)
            continue
        start = START.search(raw)
        end = END.search(raw)
        if start and end:
            raw = raw[start.end():end.start()]
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(raw)
        print(f"wrote {out} ({len(raw)} chars)")
        return 0
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
