#!/usr/bin/env python3
"""Generate the sample User Knowledge Modeling CSVs shipped under data/.

The official dataset is distributed by the UCI repository as a two-sheet
spreadsheet (258 training rows, 145 test rows) that cannot be redistributed
here in converted form. This script writes a synthetic stand-in with the
same shape and the same published summary statistics for the combined 403
rows: per-column count, mean (to the published 4 decimals), exact minima
(all 0) and exact maxima. Use scripts/convert_user_knowledge.py to produce
the same three files from the official spreadsheet instead.

Deterministic: fixed seed, stable output.
"""

import random

SEED = 20240403
ROWS = 403
TRAIN_ROWS = 258

# column -> (published mean, exact max); minima are all 0.00
COLUMNS = {
    "STG": (0.3531, 0.99),
    "SCG": (0.3559, 0.90),
    "STR": (0.4576, 0.95),
    "LPR": (0.4313, 0.99),
    "PEG": (0.4563, 0.99),
}

UNS_LEVELS = ["very_low", "Low", "Middle", "High"]


def generate_column(rng, mean, max_value):
    """403 two-decimal values in [0, max] hitting min/max exactly and the
    target sum (mean * 403 rounded to cents)."""
    max_cents = round(max_value * 100)
    target = round(mean * ROWS * 100)

    # rough beta-shaped draw, then pin the extremes
    alpha = 2.2
    beta = alpha * (max_value - mean) / mean
    cents = [min(max_cents, round(rng.betavariate(alpha, beta) * max_cents))
             for _ in range(ROWS)]
    lo_at = rng.randrange(ROWS)
    hi_at = (lo_at + 1 + rng.randrange(ROWS - 1)) % ROWS
    cents[lo_at] = 0
    cents[hi_at] = max_cents
    pinned = {lo_at, hi_at}

    # walk the remaining entries, nudging by one cent until the sum lands
    delta = target - sum(cents)
    order = [i for i in range(ROWS) if i not in pinned]
    rng.shuffle(order)
    pos = 0
    while delta != 0:
        i = order[pos % len(order)]
        pos += 1
        step = 1 if delta > 0 else -1
        if 0 < cents[i] + step < max_cents:
            cents[i] += step
            delta -= step
    return cents, pinned


def main():
    rng = random.Random(SEED)
    columns, pinned = {}, {}
    for name, (mean, max_value) in COLUMNS.items():
        columns[name], pinned[name] = generate_column(rng, mean, max_value)

    names = list(COLUMNS)

    def row_key(i):
        return tuple(columns[n][i] for n in names)

    # de-duplicate full numeric rows with compensating one-cent swaps
    # (keeps every column sum intact)
    for _ in range(10000):
        seen, dup = {}, None
        for i in range(ROWS):
            k = row_key(i)
            if k in seen:
                dup = i
                break
            seen[k] = i
        if dup is None:
            break
        moved = False
        for name in rng.sample(names, len(names)):
            col, pin, hi = columns[name], pinned[name], round(COLUMNS[name][1] * 100)
            if dup in pin or not 0 < col[dup] < hi:
                continue
            step = rng.choice([1, -1])
            if not 0 < col[dup] + step < hi:
                step = -step
            others = [j for j in range(ROWS)
                      if j != dup and j not in pin and 0 < col[j] - step < hi]
            if not others:
                continue
            j = rng.choice(others)
            col[dup] += step
            col[j] -= step
            moved = True
            break
        assert moved, "could not resolve duplicate row"
    else:
        raise AssertionError("duplicate rows remain")

    # knowledge level from a noisy blend of the performance columns,
    # cut at fixed score quantiles
    scores = [0.50 * columns["PEG"][i] / 99 + 0.30 * columns["LPR"][i] / 99
              + 0.10 * columns["STR"][i] / 95 + 0.10 * columns["STG"][i] / 99
              + rng.gauss(0, 0.07) for i in range(ROWS)]
    ranked = sorted(scores)
    cuts = [ranked[int(ROWS * q)] for q in (0.14, 0.43, 0.72)]
    uns = [UNS_LEVELS[sum(s >= c for c in cuts)] for s in scores]

    # sanity: published statistics and split coverage
    for name, (mean, max_value) in COLUMNS.items():
        col = columns[name]
        assert len(col) == ROWS and min(col) == 0 and max(col) == round(max_value * 100)
        assert sum(col) == round(mean * ROWS * 100)
        assert abs(sum(col) / 100 / ROWS - mean) < 5e-5
    assert len({row_key(i) for i in range(ROWS)}) == ROWS
    for lo, hi in ((0, TRAIN_ROWS), (TRAIN_ROWS, ROWS)):
        assert set(uns[lo:hi]) == set(UNS_LEVELS), "split misses a knowledge level"

    def rows(lo, hi):
        out = []
        for i in range(lo, hi):
            cells = ["%.2f" % (columns[n][i] / 100) for n in names]
            out.append(",".join(cells + [uns[i]]))
        return out

    header = ",".join(names + ["UNS"])
    files = {
        "data/user_knowledge_train.csv": rows(0, TRAIN_ROWS),
        "data/user_knowledge_test.csv": rows(TRAIN_ROWS, ROWS),
        "data/user_knowledge_combined.csv": rows(0, ROWS),
    }
    for path, body in files.items():
        with open(path, "w", newline="\n") as fh:
            fh.write(header + "\n")
            fh.write("\n".join(body) + "\n")
        print(f"wrote {path} ({len(body)} rows)")


if __name__ == "__main__":
    main()
