"""Entity types for the scholarship-review data model.

All types are immutable values; cross-record rules (reference resolution,
bounds read from a referenced record) only run when a resolver is supplied,
so the same validator backs both standalone checks and the storage boundary.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, fields
from enum import Enum
from typing import Optional, Protocol

from .errors import UnknownLevel


class ScholarshipStatus(str, Enum):
    ACTIVE = "Active"
    CONTINUED = "Continued"
    SUSPENDED = "Suspended"
    TERMINATED = "Terminated"


class ReviewStatus(str, Enum):
    SUBMITTED = "Submitted"
    VERIFIED = "Verified"


class ReviewDecision(str, Enum):
    APPROVE = "Approve"
    DISAPPROVE = "Disapprove"


#: Punishment severity labels, least to most severe. The first three are the
#: historically used labels; Dismissal caps the order so dismissal-grade
#: punishments are representable and countable.
SERIOUSNESS_LEVELS = ("Warning", "Serious Warning1", "Serious Warning2", "Dismissal")

_SERIOUSNESS_RANK = {label: rank for rank, label in enumerate(SERIOUSNESS_LEVELS)}


def seriousness_rank(label: str) -> int:
    """Rank of a punishment severity label: Warning=0 up to Dismissal=3."""
    try:
        return _SERIOUSNESS_RANK[label]
    except KeyError:
        raise UnknownLevel(f"unknown seriousness level: {label!r}") from None


@dataclass(frozen=True)
class Student:
    student_id: str
    name: str
    registration_details: str
    university_id: str
    school_id: str
    major_field_id: str
    scholarship_id: str
    scholarship_type_id: str
    period_id: str
    scholarship_status: ScholarshipStatus = ScholarshipStatus.ACTIVE


@dataclass(frozen=True)
class Scholarship:
    scholarship_id: str
    name: str


@dataclass(frozen=True)
class ScholarshipType:
    scholarship_type_id: str
    name: str


@dataclass(frozen=True)
class MajorField:
    major_field_id: str
    name: str


@dataclass(frozen=True)
class University:
    university_id: str
    name: str


@dataclass(frozen=True)
class School:
    school_id: str
    name: str
    university_id: str


@dataclass(frozen=True)
class Period:
    period_id: str
    start_date: datetime.date
    end_date: datetime.date


@dataclass(frozen=True)
class Reviewer:
    reviewer_id: str
    employee_id: str
    name: str
    credentials: str  # opaque secret digest, never a plain password
    school_id: str


@dataclass(frozen=True)
class Teacher:
    teacher_id: str
    employee_id: str
    name: str
    school_id: str


@dataclass(frozen=True)
class Subject:
    subject_id: str
    major_field_id: str
    name: str
    total_marks: float
    total_hours: float


@dataclass(frozen=True)
class StudentScore:
    score_id: str
    student_id: str
    subject_id: str
    marks_obtained: float
    hours_attended: float


@dataclass(frozen=True)
class PunishSeriousness:
    seriousness_id: str
    label: str


@dataclass(frozen=True)
class Punishment:
    punishment_id: str
    student_id: str
    seriousness_id: str
    description: str
    date: datetime.date


@dataclass(frozen=True)
class Reward:
    reward_id: str
    student_id: str
    description: str
    date: datetime.date


@dataclass(frozen=True)
class AnnualReview:
    review_id: str
    student_id: str
    academic_year: int
    student_summary: str
    academic_score_snapshot: str
    punishments_snapshot: str
    rewards_snapshot: str
    status: ReviewStatus = ReviewStatus.SUBMITTED
    reviewer_summary: Optional[str] = None
    reviewer_id: Optional[str] = None
    decision: Optional[ReviewDecision] = None


class Resolver(Protocol):
    """Lookup interface validation uses for cross-record rules."""

    def get(self, kind: type, entity_id: str): ...

    def find_one(self, kind: type, **field_equals): ...


def _check_refs(entity, refs: list[tuple[str, type]], resolver, out: list[str]) -> None:
    for field_name, kind in refs:
        value = getattr(entity, field_name)
        if value is None:
            continue
        if resolver.get(kind, value) is None:
            out.append(f"{field_name} {value!r} does not resolve to a {kind.__name__}")


def _nonempty(entity, field_names: list[str], out: list[str]) -> None:
    for field_name in field_names:
        if not str(getattr(entity, field_name) or "").strip():
            out.append(f"{field_name} must be non-empty")


def validate(entity, resolver: Resolver | None = None) -> list[str]:
    """Return the list of violated invariants; empty means valid.

    Violations are data, not faults: callers that must reject invalid
    entities (the store does) raise on a non-empty result.
    """
    out: list[str] = []

    if isinstance(entity, Student):
        _nonempty(entity, ["student_id", "name"], out)
        if not isinstance(entity.scholarship_status, ScholarshipStatus):
            out.append("scholarship_status must be a ScholarshipStatus")
        if resolver is not None:
            _check_refs(entity, [
                ("university_id", University),
                ("school_id", School),
                ("major_field_id", MajorField),
                ("scholarship_id", Scholarship),
                ("scholarship_type_id", ScholarshipType),
                ("period_id", Period),
            ], resolver, out)

    elif isinstance(entity, (Scholarship, ScholarshipType, MajorField, University)):
        _nonempty(entity, ["name"], out)

    elif isinstance(entity, School):
        _nonempty(entity, ["name"], out)
        if resolver is not None:
            _check_refs(entity, [("university_id", University)], resolver, out)

    elif isinstance(entity, Period):
        if not (isinstance(entity.start_date, datetime.date) and isinstance(entity.end_date, datetime.date)):
            out.append("start_date and end_date must be calendar dates")
        elif not entity.start_date < entity.end_date:
            out.append("start_date must come strictly before end_date")

    elif isinstance(entity, Reviewer):
        _nonempty(entity, ["employee_id", "name", "credentials"], out)
        if resolver is not None:
            _check_refs(entity, [("school_id", School)], resolver, out)
            # reviewers only exist for people on the teacher roll
            if resolver.find_one(Teacher, employee_id=entity.employee_id) is None:
                out.append(f"employee_id {entity.employee_id!r} matches no teacher")

    elif isinstance(entity, Teacher):
        _nonempty(entity, ["employee_id", "name"], out)
        if resolver is not None:
            _check_refs(entity, [("school_id", School)], resolver, out)

    elif isinstance(entity, Subject):
        _nonempty(entity, ["name"], out)
        if not entity.total_marks > 0:
            out.append("total_marks must be positive")
        if not entity.total_hours > 0:
            out.append("total_hours must be positive")
        if resolver is not None:
            _check_refs(entity, [("major_field_id", MajorField)], resolver, out)

    elif isinstance(entity, StudentScore):
        if entity.marks_obtained < 0:
            out.append("marks_obtained must be nonnegative")
        if entity.hours_attended < 0:
            out.append("hours_attended must be nonnegative")
        if resolver is not None:
            _check_refs(entity, [("student_id", Student), ("subject_id", Subject)], resolver, out)
            subject = resolver.get(Subject, entity.subject_id)
            if subject is not None:
                if entity.marks_obtained > subject.total_marks:
                    out.append("marks_obtained must stay within the subject's total marks")
                if entity.hours_attended > subject.total_hours:
                    out.append("hours_attended must stay within the subject's total hours")

    elif isinstance(entity, PunishSeriousness):
        if entity.label not in _SERIOUSNESS_RANK:
            out.append(f"label must be one of {SERIOUSNESS_LEVELS}")

    elif isinstance(entity, Punishment):
        if not isinstance(entity.date, datetime.date):
            out.append("date must be a calendar date")
        if resolver is not None:
            _check_refs(entity, [
                ("student_id", Student),
                ("seriousness_id", PunishSeriousness),
            ], resolver, out)

    elif isinstance(entity, Reward):
        if not isinstance(entity.date, datetime.date):
            out.append("date must be a calendar date")
        if resolver is not None:
            _check_refs(entity, [("student_id", Student)], resolver, out)

    elif isinstance(entity, AnnualReview):
        _nonempty(entity, ["student_id"], out)
        if not isinstance(entity.academic_year, int) or isinstance(entity.academic_year, bool):
            out.append("academic_year must be an integer year")
        if not isinstance(entity.status, ReviewStatus):
            out.append("status must be a ReviewStatus")
        else:
            verified = entity.status is ReviewStatus.VERIFIED
            has_outcome = (
                entity.reviewer_summary is not None
                and entity.reviewer_id is not None
                and entity.decision is not None
            )
            has_any = (
                entity.reviewer_summary is not None
                or entity.reviewer_id is not None
                or entity.decision is not None
            )
            if verified and not has_outcome:
                out.append("verified review needs reviewer_summary, reviewer_id and decision")
            if not verified and has_any:
                out.append("reviewer_summary, reviewer_id and decision require Verified status")
        if resolver is not None:
            _check_refs(entity, [("student_id", Student), ("reviewer_id", Reviewer)], resolver, out)

    else:
        out.append(f"unknown entity type: {type(entity).__name__}")

    return out


def entity_fields(kind: type) -> list[str]:
    return [f.name for f in fields(kind)]
