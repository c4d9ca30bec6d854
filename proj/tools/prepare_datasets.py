#!/usr/bin/env python3
"""Write the benchmark CSV files under data/ from locally installed packages.

Sources (all installable from PyPI, no other network access needed):
  scikit-learn    iris, wine, breast cancer (diagnostic)
  palmerpenguins  penguins
  keel-ds         haberman, statlog heart, sonar
  Orange3         ionosphere (install with --no-deps; only the data file is read)

Seeds and Banknote Authentication are not redistributed by any of these
packages. Copy the UCI files seeds_dataset.txt and
data_banknote_authentication.txt into the data directory by hand.
"""

import argparse
import csv
import importlib.metadata
import pathlib
import sys


def package_file(dist, rel):
    return pathlib.Path(importlib.metadata.distribution(dist).locate_file(rel))


def keel_rows(rel):
    path = package_file("keel-ds", rel)
    rows = []
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("@"):
            continue
        rows.append([v.strip() for v in line.split(",")])
    return rows


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def sklearn_bundle(loader, label_names):
    bunch = loader()
    header = [n.replace(" (cm)", "").replace(" ", "_") for n in bunch.feature_names] + ["class"]
    rows = [[repr(float(v)) for v in x] + [label_names[int(t)]]
            for x, t in zip(bunch.data, bunch.target)]
    return header, rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parents[1] / "data"))
    out = pathlib.Path(ap.parse_args().out)
    out.mkdir(parents=True, exist_ok=True)

    from sklearn import datasets

    write_csv(out / "iris.csv", *sklearn_bundle(
        datasets.load_iris, ["Iris-setosa", "Iris-versicolor", "Iris-virginica"]))
    write_csv(out / "wine.csv", *sklearn_bundle(datasets.load_wine, ["1", "2", "3"]))
    write_csv(out / "wdbc.csv", *sklearn_bundle(datasets.load_breast_cancer, ["M", "B"]))

    src = package_file("palmerpenguins", "palmerpenguins/data/penguins.csv")
    (out / "penguins.csv").write_text(src.read_text())
    print(f"wrote {out / 'penguins.csv'}")

    hab = keel_rows("keel_ds/data/imbalanced/raw/haberman.dat")
    # KEEL codes the UCI survival status as negative (1) / positive (2).
    status = {"negative": "1", "positive": "2"}
    write_csv(out / "haberman.csv", ["age", "year", "nodes", "status"],
              [r[:3] + [status[r[3]]] for r in hab])

    heart_cols = ["age", "sex", "chest_pain", "resting_bp", "cholesterol", "fasting_bs",
                  "rest_ecg", "max_hr", "exercise_angina", "oldpeak", "slope",
                  "major_vessels", "thal", "class"]
    write_csv(out / "statlog_heart.csv", heart_cols,
              keel_rows("keel_ds/data/balanced/raw/heart.dat"))

    sonar = keel_rows("keel_ds/data/balanced/raw/sonar.dat")
    write_csv(out / "sonar.csv", [f"band{i + 1}" for i in range(60)] + ["class"], sonar)

    tab = package_file("Orange3", "Orange/tests/datasets/ionosphere.tab").read_text().splitlines()
    iono = [line.split("\t") for line in tab[3:] if line.strip()]
    write_csv(out / "ionosphere.csv", [f"a{i + 1}" for i in range(34)] + ["class"], iono)
    return 0


if __name__ == "__main__":
    sys.exit(main())
