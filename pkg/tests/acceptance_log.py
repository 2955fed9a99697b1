"""Per-criterion pass/fail lines collected during the acceptance run."""
import re

RESULTS = {}


def record(key, ok, note=""):
    prev = RESULTS.get(key)
    if prev is not None:
        ok = ok and prev[0]
        note = "; ".join(x for x in (prev[1], note) if x)
    RESULTS[key] = (ok, note)


def sort_key(key):
    m = re.match(r"(\d+)(.*)", key)
    return (int(m.group(1)), m.group(2)) if m else (10**6, key)
