"""Brute-force reference implementations for checking the tree learner.

Written independently of the package: entropy uses the log2(n) - sum/n
formulation, split search enumerates everything with plain loops, and the
admissibility / tie-break rules are restated here from their documented
form (positive gain, both sides >= min_leaf, gain within 1e-10 of the mean
gain or better, max gain ratio, first candidate wins ties in feature index
then threshold order).
"""

from collections import Counter
from math import log2

TOL = 1e-10


def oracle_entropy(labels):
    n = len(labels)
    if n == 0:
        raise ValueError("empty")
    return log2(n) - sum(c * log2(c) for c in Counter(labels).values()) / n


def oracle_gain(rows, feature, threshold):
    low = [lab for vec, lab in rows if vec[feature] <= threshold]
    high = [lab for vec, lab in rows if vec[feature] > threshold]
    n = len(rows)
    every = [lab for _, lab in rows]
    return (oracle_entropy(every)
            - len(low) / n * oracle_entropy(low)
            - len(high) / n * oracle_entropy(high))


def oracle_split_info(rows, feature, threshold):
    low = sum(1 for vec, _ in rows if vec[feature] <= threshold)
    return oracle_entropy(["L"] * low + ["H"] * (len(rows) - low))


def oracle_thresholds(rows, feature):
    seen = sorted({vec[feature] for vec, _ in rows})
    return [(seen[i] + seen[i + 1]) / 2 for i in range(len(seen) - 1)]


def oracle_candidates(rows, n_features, min_leaf):
    found = []
    for feature in range(n_features):
        for threshold in oracle_thresholds(rows, feature):
            low = sum(1 for vec, _ in rows if vec[feature] <= threshold)
            high = len(rows) - low
            if low < min_leaf or high < min_leaf:
                continue
            gain = oracle_gain(rows, feature, threshold)
            if gain <= TOL:
                continue
            ratio = gain / oracle_split_info(rows, feature, threshold)
            found.append((feature, threshold, gain, ratio))
    return found


def oracle_root_split(rows, n_features, min_leaf):
    """(feature, threshold, gain) of the winning split, or None."""
    found = oracle_candidates(rows, n_features, min_leaf)
    if not found:
        return None
    mean_gain = sum(c[2] for c in found) / len(found)
    winner = None
    for candidate in found:
        if candidate[2] < mean_gain - TOL:
            continue
        if winner is None or candidate[3] > winner[3] + TOL:
            winner = candidate
    return winner[0], winner[1], winner[2]


def oracle_is_consistent(rows):
    """No two rows share a feature vector but disagree on the label."""
    seen = {}
    for vec, lab in rows:
        if seen.setdefault(tuple(vec), lab) != lab:
            return False
    return True


def oracle_has_dead_end(rows, n_features, min_leaf):
    """True when greedy induction must stop at an impure node because no
    admissible split with positive gain exists anywhere on the greedy path."""
    labels = {lab for _, lab in rows}
    if len(labels) <= 1:
        return False
    winner = oracle_root_split(rows, n_features, min_leaf)
    if winner is None:
        return True
    feature, threshold, _ = winner
    low = [r for r in rows if r[0][feature] <= threshold]
    high = [r for r in rows if r[0][feature] > threshold]
    return (oracle_has_dead_end(low, n_features, min_leaf)
            or oracle_has_dead_end(high, n_features, min_leaf))
