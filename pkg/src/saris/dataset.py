"""Feature derivation and the CSV interchange format.

Each student's stored records collapse into one row of three counts plus a
binary success label. CSV is the canonical interchange; the exporter writes
exactly one header line and one LF-terminated line per row, preserving the
order rows are given in (store-wide derivation enumerates students in id
order).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from .domain import (
    AnnualReview,
    PunishSeriousness,
    Punishment,
    ReviewDecision,
    ReviewStatus,
    Reward,
    ScholarshipStatus,
    Student,
    StudentScore,
    Subject,
    seriousness_rank,
)
from .errors import BadField, BadHeader, NotFound
from .storage import EntityStore, sortable_id

YES = "YES"
NO = "NO"

FEATURE_NAMES = ("SUBJECT_FAILED", "DISMISSAL_PUNISH", "REWARDS")
CSV_HEADER = "STUDENT_ID,SUBJECT_FAILED,DISMISSAL_PUNISH,REWARDS,SUCCESS"

LabelKey = Union[ReviewDecision, ScholarshipStatus]

#: Success comes from the latest verified review's decision; students with no
#: verified review fall back to their scholarship status.
DEFAULT_LABEL_RULE: Mapping[LabelKey, str] = MappingProxyType({
    ReviewDecision.APPROVE: YES,
    ReviewDecision.DISAPPROVE: NO,
    ScholarshipStatus.ACTIVE: YES,
    ScholarshipStatus.CONTINUED: YES,
    ScholarshipStatus.SUSPENDED: NO,
    ScholarshipStatus.TERMINATED: NO,
})


@dataclass(frozen=True)
class DatasetRow:
    student_id: str
    subject_failed: int
    dismissal_punish: int
    rewards: int
    success: str

    def features(self) -> tuple[int, int, int]:
        return (self.subject_failed, self.dismissal_punish, self.rewards)


@dataclass(frozen=True)
class DeriveConfig:
    """Knobs for turning stored records into dataset counts.

    A subject counts as failed when marks fall below pass_fraction of the
    subject total; a punishment counts as dismissal-grade when its
    seriousness rank is at least dismissal_min_rank.
    """

    pass_fraction: float = 0.6
    dismissal_min_rank: int = 3
    label_rule: Mapping[LabelKey, str] = field(default=DEFAULT_LABEL_RULE)

    def __post_init__(self):
        if not (0 < self.pass_fraction <= 1):
            raise ValueError("pass_fraction must lie in (0, 1]")


DEFAULT_CONFIG = DeriveConfig()


def _success_label(student: Student, reviews: list[AnnualReview],
                   config: DeriveConfig) -> str:
    verified = [r for r in reviews if r.status is ReviewStatus.VERIFIED]
    if verified:
        latest = max(verified, key=lambda r: r.academic_year)
        return config.label_rule[latest.decision]
    return config.label_rule[student.scholarship_status]


def _row_from_records(student: Student, scores: list[StudentScore],
                      subjects: Mapping[str, Subject],
                      punishments: list[Punishment],
                      ranks: Mapping[str, int],
                      rewards: list[Reward],
                      reviews: list[AnnualReview],
                      config: DeriveConfig) -> DatasetRow:
    failed = sum(
        1 for s in scores
        if s.marks_obtained < config.pass_fraction * subjects[s.subject_id].total_marks
    )
    dismissal = sum(
        1 for p in punishments if ranks[p.seriousness_id] >= config.dismissal_min_rank
    )
    return DatasetRow(
        student_id=student.student_id,
        subject_failed=failed,
        dismissal_punish=dismissal,
        rewards=len(rewards),
        success=_success_label(student, reviews, config),
    )


def _rank_map(store: EntityStore) -> dict[str, int]:
    return {
        level.seriousness_id: seriousness_rank(level.label)
        for level in store.query(PunishSeriousness)
    }


def derive_row(student_id: str, store: EntityStore,
               config: DeriveConfig = DEFAULT_CONFIG) -> DatasetRow:
    """One student's dataset row, computed from their stored records."""
    student = store.get(Student, student_id)
    if student is None:
        raise NotFound(f"no student {student_id!r}")
    subjects = {s.subject_id: s for s in store.query(Subject)}
    return _row_from_records(
        student,
        store.query(StudentScore, student_id=student_id),
        subjects,
        store.query(Punishment, student_id=student_id),
        _rank_map(store),
        store.query(Reward, student_id=student_id),
        store.query(AnnualReview, student_id=student_id),
        config,
    )


def derive_dataset(store: EntityStore,
                   config: DeriveConfig = DEFAULT_CONFIG) -> list[DatasetRow]:
    """Rows for every stored student, in student id order.

    Groups all record collections in one pass, so deriving a large
    population costs O(records), not O(students x records).
    """
    students = store.query(Student)
    subjects = {s.subject_id: s for s in store.query(Subject)}
    ranks = _rank_map(store)

    def grouped(kind):
        groups: dict[str, list] = {}
        for record in store.query(kind):
            groups.setdefault(record.student_id, []).append(record)
        return groups

    scores = grouped(StudentScore)
    punishments = grouped(Punishment)
    rewards = grouped(Reward)
    reviews = grouped(AnnualReview)

    return [
        _row_from_records(
            student,
            scores.get(student.student_id, []),
            subjects,
            punishments.get(student.student_id, []),
            ranks,
            rewards.get(student.student_id, []),
            reviews.get(student.student_id, []),
            config,
        )
        for student in sorted(students, key=lambda s: sortable_id(s.student_id))
    ]


def export_csv(rows: Iterable[DatasetRow]) -> bytes:
    """Serialize rows in the order given. LF endings, no quoting needed."""
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(
            f"{row.student_id},{row.subject_failed},{row.dismissal_punish},"
            f"{row.rewards},{row.success}"
        )
    return ("\n".join(lines) + "\n").encode("ascii")


def _parse_count(value: str, line_no: int, column: str) -> int:
    try:
        count = int(value)
    except ValueError:
        raise BadField(line_no, f"{column} must be an integer, got {value!r}") from None
    if count < 0:
        raise BadField(line_no, f"{column} must be nonnegative, got {count}")
    return count


def parse_csv(data: bytes | str) -> list[DatasetRow]:
    """Strictly parse exported CSV; a single trailing newline is tolerated."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    if text.endswith("\n"):
        text = text[:-1]
    lines = text.split("\n")
    if not lines or lines[0] != CSV_HEADER:
        raise BadHeader(f"expected header {CSV_HEADER!r}")
    rows = []
    for line_no, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 5:
            raise BadField(line_no, f"expected 5 fields, got {len(parts)}")
        student_id, failed, dismissal, rewards, success = parts
        if not student_id:
            raise BadField(line_no, "STUDENT_ID must be non-empty")
        if success not in (YES, NO):
            raise BadField(line_no, f"SUCCESS must be YES or NO, got {success!r}")
        rows.append(DatasetRow(
            student_id=student_id,
            subject_failed=_parse_count(failed, line_no, "SUBJECT_FAILED"),
            dismissal_punish=_parse_count(dismissal, line_no, "DISMISSAL_PUNISH"),
            rewards=_parse_count(rewards, line_no, "REWARDS"),
            success=success,
        ))
    return rows


def write_csv(rows: Iterable[DatasetRow], path: str | Path) -> None:
    Path(path).write_bytes(export_csv(rows))


def read_csv(path: str | Path) -> list[DatasetRow]:
    return parse_csv(Path(path).read_bytes())
