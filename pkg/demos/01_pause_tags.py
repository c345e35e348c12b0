"""Pause-tagged transcripts: parsing, normalization, and round trips.

Transcripts are whitespace-delimited word units with <SIL> marking a
pause between them. Parsing is strict about malformed tags and collapses
accidental runs of adjacent pauses, with a warning so the cleanup never
happens silently.
"""

import warnings

from pausekit import parse_tagged, serialize, strip_pause_tags

raw = "오늘 <SIL> 날씨가  참 <SIL> 좋다"
t = parse_tagged(raw)
print(f"raw:        {raw!r}")
print(f"tokens:     {[tok.surface for tok in t]}")
print(f"pauses:     {t.pause_count} of {len(t)} tokens")
print(f"words only: {strip_pause_tags(t)!r}")
print(f"serialized: {serialize(t)!r}")
print()

# adjacent pauses merge into one, and the parser says so
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    merged = parse_tagged("first <SIL> <SIL> second")
print(f"'first <SIL> <SIL> second' -> {serialize(merged)!r}")
print(f"warning raised: {caught[0].message}")
print()

# a tag glued to a word is corpus damage, not a word
try:
    parse_tagged("first<SIL> second")
except ValueError as e:
    print(f"embedded tag rejected: {e}")
