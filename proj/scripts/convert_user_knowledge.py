#!/usr/bin/env python3
"""Convert the official UCI User Knowledge Modeling spreadsheet to the CSVs
this repo works with.

Usage:
    python3 scripts/convert_user_knowledge.py <path-to-xls> [out_dir]

The spreadsheet (https://archive.ics.uci.edu/dataset/257/user+knowledge+modeling)
has a "Training_Data" sheet (258 rows) and a "Test_Data" sheet (145 rows), plus
stray annotation columns that this script drops. Produces:

    out_dir/user_knowledge_train.csv
    out_dir/user_knowledge_test.csv
    out_dir/user_knowledge_combined.csv   (train rows followed by test rows)

Requires pandas with xls support (pip install pandas xlrd).
"""

import sys
from pathlib import Path

import pandas as pd

COLUMNS = ["STG", "SCG", "STR", "LPR", "PEG", "UNS"]


def load_sheet(path, sheet):
    frame = pd.read_excel(path, sheet_name=sheet)
    # header spellings vary ("UNS" vs " UNS"); match trimmed, case-insensitive
    renames = {}
    for col in frame.columns:
        key = str(col).strip().upper()
        if key in COLUMNS:
            renames[col] = key
    frame = frame.rename(columns=renames)
    missing = [c for c in COLUMNS if c not in frame.columns]
    if missing:
        raise SystemExit(f"sheet {sheet!r} is missing columns: {missing}")
    frame = frame[COLUMNS].dropna(how="all")
    frame["UNS"] = frame["UNS"].astype(str).str.strip()
    return frame


def main():
    if len(sys.argv) not in (2, 3):
        raise SystemExit(__doc__)
    xls = Path(sys.argv[1])
    out_dir = Path(sys.argv[2]) if len(sys.argv) == 3 else Path("data")
    out_dir.mkdir(parents=True, exist_ok=True)

    train = load_sheet(xls, "Training_Data")
    test = load_sheet(xls, "Test_Data")
    combined = pd.concat([train, test], ignore_index=True)
    print(f"train {len(train)} rows, test {len(test)} rows, combined {len(combined)}")

    train.to_csv(out_dir / "user_knowledge_train.csv", index=False)
    test.to_csv(out_dir / "user_knowledge_test.csv", index=False)
    combined.to_csv(out_dir / "user_knowledge_combined.csv", index=False)
    print(f"wrote CSVs to {out_dir}/")


if __name__ == "__main__":
    main()
