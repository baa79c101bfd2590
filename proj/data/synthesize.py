#!/usr/bin/env python3
"""Generates the two synthetic credit datasets shipped with this repository.

Both files mirror the shape, label encoding and class balance of the UCI
Statlog credit datasets (German numeric: 1000 rows, 24 attributes, labels
1/2 with 300 "bad"; Australian: 690 rows, 14 attributes, labels 0/1 with
307 "risk") so that the split arithmetic, profiles and experiment harness
behave identically whether the real files or these stand-ins are used.
The feature distributions are invented: class-conditional integer codes,
skewed monetary amounts and a few noise columns, with class overlap tuned
so classifiers land in a realistic accuracy range rather than separating
the classes trivially.

Deterministic: fixed seeds, stable output. Regenerate with

    python3 data/synthesize.py
"""

import numpy as np


def clipped_normal(rng, mean, sd, lo, hi, size):
    return np.clip(rng.normal(mean, sd, size), lo, hi)


def german(path):
    rng = np.random.default_rng(20240517)
    n_good, n_bad = 700, 300

    def block(n, bad):
        cols = []
        # checking account status 1..4 (bad skews toward low balances)
        p = [0.45, 0.30, 0.15, 0.10] if bad else [0.20, 0.25, 0.20, 0.35]
        cols.append(rng.choice([1, 2, 3, 4], p=p, size=n))
        # duration in months
        cols.append(np.round(clipped_normal(rng, 27 if bad else 19, 11, 4, 72, n)))
        # credit history code 0..4
        p = [0.12, 0.12, 0.40, 0.20, 0.16] if bad else [0.03, 0.05, 0.32, 0.20, 0.40]
        cols.append(rng.choice([0, 1, 2, 3, 4], p=p, size=n))
        # purpose code 0..10
        cols.append(rng.integers(0, 11, size=n))
        # credit amount (log-normal, heavier tail for bad)
        amt = np.exp(rng.normal(7.95 if bad else 7.75, 0.72 if bad else 0.58, n))
        cols.append(np.round(np.clip(amt, 250, 18424)))
        # savings 1..5
        p = [0.62, 0.14, 0.08, 0.06, 0.10] if bad else [0.48, 0.10, 0.08, 0.07, 0.27]
        cols.append(rng.choice([1, 2, 3, 4, 5], p=p, size=n))
        # employment since 1..5
        p = [0.12, 0.22, 0.36, 0.16, 0.14] if bad else [0.05, 0.15, 0.32, 0.20, 0.28]
        cols.append(rng.choice([1, 2, 3, 4, 5], p=p, size=n))
        # installment rate 1..4
        p = [0.12, 0.20, 0.22, 0.46] if bad else [0.15, 0.25, 0.25, 0.35]
        cols.append(rng.choice([1, 2, 3, 4], p=p, size=n))
        # personal status 1..4, other debtors 1..3, residence since 1..4
        cols.append(rng.integers(1, 5, size=n))
        cols.append(rng.choice([1, 2, 3], p=[0.90, 0.04, 0.06], size=n))
        cols.append(rng.integers(1, 5, size=n))
        # property 1..4 (4 = no property, more common for bad)
        p = [0.18, 0.20, 0.28, 0.34] if bad else [0.32, 0.24, 0.26, 0.18]
        cols.append(rng.choice([1, 2, 3, 4], p=p, size=n))
        # age
        cols.append(np.round(clipped_normal(rng, 33 if bad else 37, 11, 19, 75, n)))
        # other installment plans 1..3
        p = [0.22, 0.08, 0.70] if bad else [0.12, 0.04, 0.84]
        cols.append(rng.choice([1, 2, 3], p=p, size=n))
        # housing 1..3
        p = [0.26, 0.62, 0.12] if bad else [0.16, 0.72, 0.12]
        cols.append(rng.choice([1, 2, 3], p=p, size=n))
        # existing credits 1..4, job 1..4, dependents 1..2
        cols.append(rng.choice([1, 2, 3, 4], p=[0.60, 0.32, 0.06, 0.02], size=n))
        cols.append(rng.integers(1, 5, size=n))
        cols.append(rng.choice([1, 2], p=[0.84, 0.16], size=n))
        # telephone, foreign worker
        cols.append(rng.choice([0, 1], p=[0.62 if bad else 0.56, 0.38 if bad else 0.44], size=n))
        cols.append(rng.choice([0, 1], p=[0.02, 0.98], size=n))
        # four weakly-informative indicator expansions
        for q in (0.30, 0.45):
            shift = 0.12 if bad else 0.0
            cols.append((rng.random(n) < q + shift).astype(int))
        for q in (0.25, 0.50):
            cols.append((rng.random(n) < q).astype(int))
        return np.column_stack(cols)

    X = np.vstack([block(n_good, bad=False), block(n_bad, bad=True)])
    y = np.array(["1"] * n_good + ["2"] * n_bad)
    order = rng.permutation(len(y))
    X, y = X[order], y[order]

    with open(path, "w") as f:
        for row, label in zip(X, y):
            f.write(",".join(str(int(v)) for v in row) + f",{label}\n")
    return X, (y == "2").astype(int)


def australian(path):
    rng = np.random.default_rng(20240518)
    n_approval, n_risk = 383, 307

    def block(n, risk):
        cols = []
        # A1 binary
        cols.append(rng.choice([0, 1], p=[0.32, 0.68], size=n))
        # A2 age-like continuous
        cols.append(np.round(clipped_normal(rng, 30 if risk else 33, 11, 13, 80, n), 2))
        # A3 continuous 0..28
        amt = rng.gamma(1.6, 2.6 if risk else 3.4, n)
        cols.append(np.round(np.clip(amt, 0, 28), 3))
        # A4, A5, A6 categorical codes
        cols.append(rng.choice([1, 2, 3], p=[0.76, 0.21, 0.03], size=n))
        cols.append(rng.integers(1, 15, size=n))
        cols.append(rng.integers(1, 10, size=n))
        # A7 continuous, risk lower
        sev = rng.gamma(1.1, 1.4 if risk else 2.9, n)
        cols.append(np.round(np.clip(sev, 0, 28.5), 3))
        # A8: the strong binary (prior-approval-style flag)
        cols.append((rng.random(n) < (0.23 if risk else 0.82)).astype(int))
        # A9 second informative binary
        cols.append((rng.random(n) < (0.28 if risk else 0.62)).astype(int))
        # A10 employment-length-like counts, risk shorter
        t = rng.poisson(1.1 if risk else 3.4, n)
        cols.append(np.clip(t, 0, 67))
        # A11 binary
        cols.append(rng.choice([0, 1], p=[0.54, 0.46], size=n))
        # A12 categorical 1..3
        cols.append(rng.choice([1, 2, 3], p=[0.62, 0.09, 0.29], size=n))
        # A13 continuous 0..2000
        cols.append(np.round(np.clip(rng.normal(150 if risk else 210, 160, n), 0, 2000)))
        # A14 monetary, risk lower
        a14 = np.exp(rng.normal(4.6 if risk else 6.1, 2.1, n))
        cols.append(np.round(np.clip(a14, 1, 100001)))
        return np.column_stack(cols)

    X = np.vstack([block(n_approval, risk=False), block(n_risk, risk=True)])
    y = np.array(["0"] * n_approval + ["1"] * n_risk)
    order = rng.permutation(len(y))
    X, y = X[order], y[order]

    def fmt(v):
        return str(int(v)) if float(v).is_integer() else f"{v:g}"

    with open(path, "w") as f:
        for row, label in zip(X, y):
            f.write(",".join(fmt(v) for v in row) + f",{label}\n")
    return X, (y == "1").astype(int)


def report(name, X, y):
    try:
        from sklearn.linear_model import LogisticRegression
        from sklearn.model_selection import cross_val_score
        from sklearn.preprocessing import MinMaxScaler
    except ImportError:
        print(f"{name}: {X.shape[0]} rows, {X.shape[1]} attrs, "
              f"{int(y.sum())} minority (sklearn not available for a check)")
        return
    Xs = MinMaxScaler().fit_transform(X)
    acc = cross_val_score(LogisticRegression(max_iter=2000), Xs, y, cv=5).mean()
    print(f"{name}: {X.shape[0]} rows, {X.shape[1]} attrs, "
          f"{int(y.sum())} minority, logistic CV accuracy {acc:.3f}")


if __name__ == "__main__":
    import os
    here = os.path.dirname(os.path.abspath(__file__))
    gx, gy = german(os.path.join(here, "german-synthetic.csv"))
    ax, ay = australian(os.path.join(here, "australian-synthetic.csv"))
    report("german-synthetic", gx, gy)
    report("australian-synthetic", ax, ay)
