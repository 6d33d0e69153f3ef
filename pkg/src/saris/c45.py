"""Decision-tree learner over numeric count features.

Implements classic top-down induction with binary threshold splits:
candidate thresholds are midpoints between consecutive distinct feature
values, split selection maximizes gain ratio among splits whose information
gain reaches the mean gain of all admissible splits, and post-pruning uses
the pessimistic upper confidence bound on leaf error. Defaults (min_leaf=2,
confidence_factor=0.25, pruning on) mirror the J48 defaults so results are
comparable with that tool.

Everything is deterministic: candidate enumeration scans features in index
order and thresholds ascending, and ties within FLOAT_TOLERANCE resolve to
the first candidate encountered (lowest feature index, then lowest
threshold).
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from pathlib import Path
from statistics import NormalDist
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import (
    ArityMismatch,
    BadFoldCount,
    DegenerateSplit,
    EmptySet,
    EmptyTrainingSet,
)

#: Two gains (or gain ratios) closer than this are treated as equal. Entropy
#: sums over the small integer distributions handled here differ by far more
#: than this unless they are the same quantity computed in a different order,
#: so the tolerance only ever merges true ties.
FLOAT_TOLERANCE = 1e-10

Row = tuple[tuple[float, ...], str]


@dataclass(frozen=True)
class TrainingSet:
    """Labelled feature vectors; the id column never becomes a feature."""

    feature_names: tuple[str, ...]
    rows: tuple[Row, ...]

    def __post_init__(self):
        if not self.rows:
            raise EmptyTrainingSet("training set must contain at least one row")
        arity = len(self.feature_names)
        for features, _ in self.rows:
            if len(features) != arity:
                raise ArityMismatch(
                    f"expected {arity} features, got {len(features)}"
                )

    @classmethod
    def from_dataset_rows(cls, dataset_rows: Iterable) -> "TrainingSet":
        from .dataset import FEATURE_NAMES  # local to avoid cycle at import
        rows = tuple(
            ((float(r.subject_failed), float(r.dismissal_punish), float(r.rewards)),
             r.success)
            for r in dataset_rows
        )
        return cls(feature_names=FEATURE_NAMES, rows=rows)


@dataclass(frozen=True)
class Leaf:
    counts: Mapping[str, int]
    label: str

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def errors(self) -> int:
        return self.total - self.counts.get(self.label, 0)


@dataclass(frozen=True)
class Split:
    feature: int
    threshold: float
    left: "TreeNode"   # rows with feature <= threshold
    right: "TreeNode"  # rows with feature > threshold


TreeNode = Union[Leaf, Split]


@dataclass(frozen=True)
class Tree:
    root: TreeNode
    feature_names: tuple[str, ...]


@dataclass(frozen=True)
class TrainConfig:
    min_leaf: int = 2
    confidence_factor: float = 0.25
    pruning: bool = True

    def __post_init__(self):
        if self.min_leaf < 1:
            raise ValueError("min_leaf must be at least 1")
        if not (0 < self.confidence_factor < 1):
            raise ValueError("confidence_factor must lie in (0, 1)")


# information measures -------------------------------------------------------


def entropy(class_counts: Sequence[int] | Mapping[str, int]) -> float:
    """Shannon entropy in bits of a class-count distribution; 0*log0 is 0."""
    counts = (list(class_counts.values()) if isinstance(class_counts, Mapping)
              else list(class_counts))
    if any(c < 0 for c in counts):
        raise ValueError("class counts must be nonnegative")
    total = sum(counts)
    if total == 0:
        raise EmptySet("entropy of an empty distribution is undefined")
    result = 0.0
    for count in counts:
        if count > 0:
            p = count / total
            result -= p * math.log2(p)
    return result


def _label_counts(rows: Sequence[Row]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for _, label in rows:
        counts[label] = counts.get(label, 0) + 1
    return counts


def _partition(rows: Sequence[Row], feature: int, threshold: float):
    left = [r for r in rows if r[0][feature] <= threshold]
    right = [r for r in rows if r[0][feature] > threshold]
    return left, right


def candidate_thresholds(training_set: TrainingSet | Sequence[Row],
                         feature: int) -> list[float]:
    """Midpoints between consecutive distinct values of one feature."""
    rows = training_set.rows if isinstance(training_set, TrainingSet) else training_set
    values = sorted({r[0][feature] for r in rows})
    return [(a + b) / 2 for a, b in zip(values, values[1:])]


def info_gain(training_set: TrainingSet | Sequence[Row], feature: int,
              threshold: float) -> float:
    """Entropy reduction of splitting at feature <= threshold."""
    rows = training_set.rows if isinstance(training_set, TrainingSet) else training_set
    left, right = _partition(rows, feature, threshold)
    if not left or not right:
        raise DegenerateSplit(f"threshold {threshold} leaves one side empty")
    total = len(rows)
    gain = entropy(_label_counts(rows))
    gain -= len(left) / total * entropy(_label_counts(left))
    gain -= len(right) / total * entropy(_label_counts(right))
    return gain


def split_info(training_set: TrainingSet | Sequence[Row], feature: int,
               threshold: float) -> float:
    """Entropy of the two partition sizes themselves."""
    rows = training_set.rows if isinstance(training_set, TrainingSet) else training_set
    left, right = _partition(rows, feature, threshold)
    if not left or not right:
        raise DegenerateSplit(f"threshold {threshold} leaves one side empty")
    return entropy([len(left), len(right)])


def gain_ratio(training_set: TrainingSet | Sequence[Row], feature: int,
               threshold: float) -> float:
    return (info_gain(training_set, feature, threshold)
            / split_info(training_set, feature, threshold))


# tree induction -------------------------------------------------------------


@dataclass(frozen=True)
class _Candidate:
    feature: int
    threshold: float
    gain: float
    ratio: float


def _admissible_splits(rows: Sequence[Row], arity: int,
                       min_leaf: int) -> list[_Candidate]:
    """Every split with positive gain leaving min_leaf rows on both sides.

    Candidates come out ordered by (feature, threshold) ascending, which is
    what makes first-wins tie-breaking deterministic.
    """
    h_total = entropy(_label_counts(rows))
    total = len(rows)
    out: list[_Candidate] = []
    for feature in range(arity):
        for threshold in candidate_thresholds(rows, feature):
            left, right = _partition(rows, feature, threshold)
            if len(left) < min_leaf or len(right) < min_leaf:
                continue
            gain = (h_total
                    - len(left) / total * entropy(_label_counts(left))
                    - len(right) / total * entropy(_label_counts(right)))
            if gain <= FLOAT_TOLERANCE:
                continue
            ratio = gain / entropy([len(left), len(right)])
            out.append(_Candidate(feature, threshold, gain, ratio))
    return out


def choose_split(rows: Sequence[Row], arity: int,
                 min_leaf: int) -> Optional[_Candidate]:
    """Best admissible split, or None when the node must become a leaf.

    Among admissible splits, only those whose gain reaches the mean gain
    compete; the winner has the highest gain ratio, with ties going to the
    lowest feature index and then the lowest threshold.
    """
    candidates = _admissible_splits(rows, arity, min_leaf)
    if not candidates:
        return None
    mean_gain = sum(c.gain for c in candidates) / len(candidates)
    best: Optional[_Candidate] = None
    for candidate in candidates:
        if candidate.gain < mean_gain - FLOAT_TOLERANCE:
            continue
        if best is None or candidate.ratio > best.ratio + FLOAT_TOLERANCE:
            best = candidate
    return best


def _majority(counts: Mapping[str, int], parent_majority: Optional[str]) -> str:
    """Most frequent label; ties prefer the parent's majority, then the
    lexicographically smallest label (NO before YES)."""
    top = max(counts.values())
    tied = sorted(label for label, count in counts.items() if count == top)
    if parent_majority in tied:
        return parent_majority
    return tied[0]


def _grow(rows: Sequence[Row], arity: int, min_leaf: int,
          parent_majority: Optional[str]) -> TreeNode:
    counts = _label_counts(rows)
    majority = _majority(counts, parent_majority)
    if len(counts) == 1:
        return Leaf(counts=dict(counts), label=majority)
    choice = choose_split(rows, arity, min_leaf)
    if choice is None:
        return Leaf(counts=dict(counts), label=majority)
    left_rows, right_rows = _partition(rows, choice.feature, choice.threshold)
    return Split(
        feature=choice.feature,
        threshold=choice.threshold,
        left=_grow(left_rows, arity, min_leaf, majority),
        right=_grow(right_rows, arity, min_leaf, majority),
    )


def build_tree(training_set: TrainingSet,
               config: TrainConfig = TrainConfig()) -> Tree:
    """Induce a tree; applies pessimistic pruning when config.pruning."""
    root = _grow(training_set.rows, len(training_set.feature_names),
                 config.min_leaf, None)
    if config.pruning:
        root = _prune_node(root, config.confidence_factor, None)
    return Tree(root=root, feature_names=training_set.feature_names)


# pessimistic pruning --------------------------------------------------------


def added_errors(total: float, errors: float, confidence: float) -> float:
    """Extra errors the upper confidence limit adds to the observed count.

    One-sided normal approximation to the binomial upper bound, with the
    same structure C4.5 release 8 and its reimplementations use:

    * errors < 1: exponential exact-zero case total*(1 - confidence**(1/total)),
      linearly interpolated toward the errors == 1 estimate;
    * errors + 0.5 >= total: clamped at the remaining count;
    * otherwise the continuity-corrected frequency f = (errors+0.5)/total is
      pushed through the Wilson upper limit with z = Phi^-1(1 - confidence).
    """
    if total == 0:
        return 0.0
    if errors < 1:
        base = total * (1 - confidence ** (1 / total))
        if errors == 0:
            return base
        return base + errors * (added_errors(total, 1, confidence) - base)
    if errors + 0.5 >= total:
        return max(total - errors, 0.0)
    z = NormalDist().inv_cdf(1 - confidence)
    f = (errors + 0.5) / total
    upper = (
        f + z * z / (2 * total)
        + z * math.sqrt(f / total - f * f / total + z * z / (4 * total * total))
    ) / (1 + z * z / total)
    return upper * total - errors


def pessimistic_errors(total: int, errors: int, confidence: float) -> float:
    return errors + added_errors(total, errors, confidence)


def _merge_counts(node: TreeNode, into: dict[str, int]) -> None:
    if isinstance(node, Leaf):
        for label, count in node.counts.items():
            into[label] = into.get(label, 0) + count
    else:
        _merge_counts(node.left, into)
        _merge_counts(node.right, into)


def _subtree_estimate(node: TreeNode, confidence: float) -> float:
    if isinstance(node, Leaf):
        return pessimistic_errors(node.total, node.errors, confidence)
    return (_subtree_estimate(node.left, confidence)
            + _subtree_estimate(node.right, confidence))


def _prune_node(node: TreeNode, confidence: float,
                parent_majority: Optional[str]) -> TreeNode:
    if isinstance(node, Leaf):
        return node
    merged: dict[str, int] = {}
    _merge_counts(node, merged)
    majority = _majority(merged, parent_majority)
    pruned = Split(
        feature=node.feature,
        threshold=node.threshold,
        left=_prune_node(node.left, confidence, majority),
        right=_prune_node(node.right, confidence, majority),
    )
    as_leaf = Leaf(counts=merged, label=majority)
    leaf_estimate = pessimistic_errors(as_leaf.total, as_leaf.errors, confidence)
    if leaf_estimate <= _subtree_estimate(pruned, confidence):
        return as_leaf
    return pruned


def prune(tree: Tree, confidence_factor: float = 0.25) -> Tree:
    """Bottom-up subtree replacement using training counts frozen into the
    leaves at build time. Node count never increases."""
    return Tree(
        root=_prune_node(tree.root, confidence_factor, None),
        feature_names=tree.feature_names,
    )


def node_count(node: TreeNode) -> int:
    if isinstance(node, Leaf):
        return 1
    return 1 + node_count(node.left) + node_count(node.right)


def depth(node: TreeNode) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + max(depth(node.left), depth(node.right))


# prediction and evaluation ---------------------------------------------------


def predict(tree: Tree, features: Sequence[float]) -> tuple[str, float]:
    """Route to a leaf; returns (label, leaf majority fraction)."""
    if tree.feature_names and len(features) != len(tree.feature_names):
        raise ArityMismatch(
            f"expected {len(tree.feature_names)} features, got {len(features)}"
        )
    node = tree.root
    while isinstance(node, Split):
        node = node.left if features[node.feature] <= node.threshold else node.right
    confidence = node.counts.get(node.label, 0) / node.total if node.total else 0.0
    return node.label, confidence


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    confusion: Mapping[str, Mapping[str, int]]  # actual -> predicted -> count
    precision: Mapping[str, float]
    recall: Mapping[str, float]
    n: int


def _metrics_from_pairs(pairs: Sequence[tuple[str, str]]) -> Metrics:
    labels = sorted({a for a, _ in pairs} | {p for _, p in pairs})
    confusion = {a: {p: 0 for p in labels} for a in labels}
    correct = 0
    for actual, predicted in pairs:
        confusion[actual][predicted] += 1
        if actual == predicted:
            correct += 1
    precision = {}
    recall = {}
    for label in labels:
        predicted_as = sum(confusion[a][label] for a in labels)
        actual_count = sum(confusion[label].values())
        true_hits = confusion[label][label]
        precision[label] = true_hits / predicted_as if predicted_as else 0.0
        recall[label] = true_hits / actual_count if actual_count else 0.0
    return Metrics(
        accuracy=correct / len(pairs),
        confusion=confusion,
        precision=precision,
        recall=recall,
        n=len(pairs),
    )


def evaluate(tree: Tree, rows: TrainingSet | Sequence[Row]) -> Metrics:
    data = rows.rows if isinstance(rows, TrainingSet) else rows
    pairs = [(label, predict(tree, features)[0]) for features, label in data]
    return _metrics_from_pairs(pairs)


def cross_validate(training_set: TrainingSet, config: TrainConfig,
                   k: int, seed: int) -> Metrics:
    """Stratified k-fold evaluation with a seeded deterministic shuffle."""
    n = len(training_set.rows)
    if k < 2 or k > n:
        raise BadFoldCount(f"fold count {k} must lie in [2, {n}]")
    rng = random.Random(seed)
    by_label: dict[str, list[int]] = {}
    for index, (_, label) in enumerate(training_set.rows):
        by_label.setdefault(label, []).append(index)
    folds: list[list[int]] = [[] for _ in range(k)]
    position = 0
    for label in sorted(by_label):
        indices = by_label[label]
        rng.shuffle(indices)
        for index in indices:
            folds[position % k].append(index)
            position += 1
    pairs: list[tuple[str, str]] = []
    for fold in folds:
        held = set(fold)
        train_rows = tuple(r for i, r in enumerate(training_set.rows) if i not in held)
        tree = build_tree(
            TrainingSet(training_set.feature_names, train_rows), config
        )
        for index in fold:
            features, label = training_set.rows[index]
            pairs.append((label, predict(tree, features)[0]))
    return _metrics_from_pairs(pairs)


# textual model format ---------------------------------------------------------

_INDENT = "  "
_SPLIT_RE = re.compile(r"^(?P<name>\S+) <= (?P<threshold>-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?)$")
_LEAF_RE = re.compile(r"^(?P<label>\S+) \((?P<total>\d+)/(?P<errors>\d+)\)$")


def to_text(tree: Tree) -> str:
    """One node per line, indentation showing depth. Split lines read
    `name <= threshold` with the low branch first; leaf lines read
    `label (total/errors)`."""
    lines: list[str] = []

    def walk(node: TreeNode, level: int) -> None:
        pad = _INDENT * level
        if isinstance(node, Leaf):
            lines.append(f"{pad}{node.label} ({node.total}/{node.errors})")
        else:
            lines.append(f"{pad}{tree.feature_names[node.feature]} <= {node.threshold:g}")
            walk(node.left, level + 1)
            walk(node.right, level + 1)

    walk(tree.root, 0)
    return "\n".join(lines) + "\n"


def from_text(text: str, feature_names: Sequence[str] | None = None) -> Tree:
    """Parse the textual format back into a tree.

    With feature_names given, split names must come from that tuple and keep
    their indices; otherwise indices follow first appearance. Leaf error
    counts are assigned to the complementary label of a YES/NO pair so the
    majority fraction survives the round trip.
    """
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty model text")
    names: list[str] = list(feature_names) if feature_names else []
    fixed_names = feature_names is not None

    def parse_line(line: str) -> tuple[int, dict]:
        stripped = line.lstrip(" ")
        level, rem = divmod(len(line) - len(stripped), len(_INDENT))
        if rem:
            raise ValueError(f"bad indentation: {line!r}")
        m = _SPLIT_RE.match(stripped)
        if m:
            return level, {"split": m["name"], "threshold": float(m["threshold"])}
        m = _LEAF_RE.match(stripped)
        if m:
            return level, {"label": m["label"], "total": int(m["total"]),
                           "errors": int(m["errors"])}
        raise ValueError(f"unparseable model line: {line!r}")

    parsed = [parse_line(line) for line in lines]
    cursor = 0

    def build(level: int) -> TreeNode:
        nonlocal cursor
        at, node = parsed[cursor]
        if at != level:
            raise ValueError(f"expected depth {level}, found {at}")
        cursor += 1
        if "label" in node:
            label = node["label"]
            other = {"YES": "NO", "NO": "YES"}.get(label, f"not-{label}")
            counts = {label: node["total"] - node["errors"]}
            if node["errors"]:
                counts[other] = node["errors"]
            return Leaf(counts=counts, label=label)
        name = node["split"]
        if name not in names:
            if fixed_names:
                raise ValueError(f"unknown feature {name!r}")
            names.append(name)
        feature = names.index(name)
        left = build(level + 1)
        right = build(level + 1)
        return Split(feature=feature, threshold=node["threshold"],
                     left=left, right=right)

    root = build(0)
    if cursor != len(parsed):
        raise ValueError("trailing lines after the tree")
    return Tree(root=root, feature_names=tuple(names))


def save_model(tree: Tree, path: str | Path) -> None:
    Path(path).write_text(to_text(tree))


def load_model(path: str | Path,
               feature_names: Sequence[str] | None = None) -> Tree:
    return from_text(Path(path).read_text(), feature_names)
