#!/usr/bin/env python3
"""Rebuild the CSVs under data/ from the upstream UCI files.

The repository already ships the prepared CSVs; run this only to regenerate
them. Requires direct network access to archive.ics.uci.edu (override the
base URL with --base if you use a mirror that preserves the UCI layout).
"""
import argparse
import io
import sys
import urllib.request
from pathlib import Path

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"

BILLS = [
    "handicapped infants", "water project cost sharing",
    "adoption of the budget resolution", "physician fee freeze",
    "el salvador aid", "religious groups in schools", "anti satellite test ban",
    "aid to nicaraguan contras", "mx missile", "immigration",
    "synfuels corporation cutback", "education spending",
    "superfund right to sue", "crime", "duty free exports",
    "export administration act south africa",
]
LYMPH = [
    "lymphatics", "block of affere", "bl of lymph c", "bl of lymph s", "by pass",
    "extravasates", "regeneration of", "early uptake in", "lym nodes dimin",
    "lym nodes enlar", "changes in lym", "defect in node", "changes in node",
    "changes in stru", "special forms", "dislocation of", "exclusion of no",
    "no of nodes in",
]


def fetch(url: str) -> str:
    sys.stderr.write(f"fetching {url}\n")
    with urllib.request.urlopen(url, timeout=60) as response:
        return response.read().decode("utf-8")


def write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    with io.open(path, "w", newline="\n") as out:
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(row) + "\n")
    sys.stderr.write(f"wrote {path} ({len(rows)} rows)\n")


def voting(base: str, out_dir: Path) -> None:
    rows = [line.split(",") for line in fetch(
        f"{base}/voting-records/house-votes-84.data").splitlines() if line]
    write_csv(out_dir / "house-votes-84.csv", ["party"] + BILLS, rows)


def promoters(base: str, out_dir: Path) -> None:
    rows = []
    for line in fetch(
            f"{base}/molecular-biology/promoter-gene-sequences/promoters.data"
    ).splitlines():
        parts = [p.strip() for p in line.split(",")]
        if len(parts) < 3:
            continue
        sequence = parts[2].replace("\t", "").strip()
        rows.append([parts[0]] + list(sequence))  # drop the instance name
    header = ["class"] + [f"p{i}" for i in list(range(-50, 0)) + list(range(1, 8))]
    write_csv(out_dir / "promoters.csv", header, rows)


def spect(base: str, out_dir: Path) -> None:
    rows = []
    for name in ("SPECT.train", "SPECT.test"):
        rows += [line.split(",") for line in fetch(f"{base}/spect/{name}").splitlines()
                 if line]
    write_csv(out_dir / "spect.csv",
              ["diagnosis"] + [f"F{i}" for i in range(1, 23)], rows)


def lymphography(base: str, out_dir: Path) -> None:
    rows = [line.split(",") for line in fetch(
        f"{base}/lymphography/lymphography.data").splitlines() if line]
    write_csv(out_dir / "lymphography.csv", ["class"] + LYMPH, rows)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--base", default=UCI, help="UCI repository base URL")
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    args = parser.parse_args()
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    voting(args.base, out_dir)
    promoters(args.base, out_dir)
    spect(args.base, out_dir)
    lymphography(args.base, out_dir)


if __name__ == "__main__":
    main()
