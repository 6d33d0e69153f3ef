"""Annual-review lifecycle and record-entry operations.

Every operation takes an Actor, consults the access grid first, then applies
row-level ownership: students touch only their own records, reviewers only
students of their own school, administrators everything. Successful
mutations commit together with exactly one audit entry; denied or failed
calls leave the store untouched.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, replace
from typing import Callable, Optional

from .access import Activity, Role, is_permitted
from .domain import (
    AnnualReview,
    PunishSeriousness,
    Punishment,
    ReviewDecision,
    ReviewStatus,
    Reviewer,
    Reward,
    ScholarshipStatus,
    Student,
    StudentScore,
    Subject,
    Teacher,
    seriousness_rank,
)
from .errors import (
    AlreadyRegistered,
    DuplicateReview,
    InvalidState,
    NoMatchingTeacher,
    NotFound,
    PermissionDenied,
    ScopeViolation,
)
from .storage import AuditEntry, EntityStore, Transaction


@dataclass(frozen=True)
class Actor:
    """An authenticated principal plus the scope its role acts within."""

    principal_id: str
    role: Role
    school_id: Optional[str] = None   # reviewers act within one school
    student_id: Optional[str] = None  # students act on themselves


def _utc_now() -> datetime.datetime:
    return datetime.datetime.now(datetime.timezone.utc)


class ReviewWorkflow:
    """Stateless facade over one store; safe to share across requests."""

    def __init__(self, store: EntityStore,
                 clock: Callable[[], datetime.datetime] = _utc_now):
        self.store = store
        self.clock = clock

    # helpers ------------------------------------------------------------

    def _require(self, actor: Actor, activity: Activity) -> None:
        if not is_permitted(actor.role, activity):
            raise PermissionDenied(
                f"{actor.role.value} may not {activity.value}"
            )

    def _student(self, student_id: str) -> Student:
        student = self.store.get(Student, student_id)
        if student is None:
            raise NotFound(f"no student {student_id!r}")
        return student

    def _check_scope(self, actor: Actor, student: Student) -> None:
        if actor.role is Role.STUDENT:
            if actor.student_id != student.student_id:
                raise PermissionDenied("students may only access their own records")
        elif actor.role is Role.REVIEWER:
            if actor.school_id != student.school_id:
                raise ScopeViolation(
                    "reviewers may only act on students of their own school"
                )
        # administrators see everything

    def _audit(self, actor: Actor, action: str, details: str) -> AuditEntry:
        return AuditEntry(
            audit_id="",
            actor_id=actor.principal_id,
            role=actor.role.value,
            action=action,
            timestamp=self.clock().isoformat(),
            details=details,
        )

    # registration ---------------------------------------------------------

    def register_reviewer(self, name: str, employee_id: str,
                          credentials_digest: str) -> Reviewer:
        """Create a reviewer account for a person on the teacher roll.

        The (name, employee_id) pair must exactly match a teacher record,
        which is what keeps fabricated reviewer accounts out.
        """
        teacher = self.store.find_one(Teacher, employee_id=employee_id)
        if teacher is None or teacher.name != name:
            raise NoMatchingTeacher(
                f"no teacher matches employee {employee_id!r} with that name"
            )
        if self.store.find_one(Reviewer, employee_id=employee_id) is not None:
            raise AlreadyRegistered(f"employee {employee_id!r} already registered")
        reviewer = Reviewer(
            reviewer_id="",
            employee_id=employee_id,
            name=name,
            credentials=credentials_digest,
            school_id=teacher.school_id,
        )
        actor = Actor(principal_id=employee_id, role=Role.REVIEWER,
                      school_id=teacher.school_id)
        stored = self.store.apply(
            Transaction()
            .put(reviewer)
            .put(self._audit(actor, "register_reviewer", f"employee {employee_id}"))
        )
        return stored[0]

    # review lifecycle -------------------------------------------------------

    def submit_annual_review(self, actor: Actor, academic_year: int,
                             student_summary: str) -> AnnualReview:
        self._require(actor, Activity.SUBMIT_ANNUAL_REVIEW)
        student = self._student(actor.student_id or "")
        existing = self.store.find_one(
            AnnualReview, student_id=student.student_id, academic_year=academic_year
        )
        if existing is not None:
            raise DuplicateReview(
                f"student {student.student_id} already submitted for {academic_year}"
            )
        review = AnnualReview(
            review_id="",
            student_id=student.student_id,
            academic_year=academic_year,
            student_summary=student_summary,
            academic_score_snapshot=self._score_snapshot(student.student_id),
            punishments_snapshot=self._punishment_snapshot(student.student_id),
            rewards_snapshot=self._reward_snapshot(student.student_id),
            status=ReviewStatus.SUBMITTED,
        )
        stored = self.store.apply(
            Transaction()
            .put(review)
            .put(self._audit(actor, "submit_annual_review",
                             f"student {student.student_id} year {academic_year}"))
        )
        return stored[0]

    def verify_annual_review(self, actor: Actor, review_id: str,
                             reviewer_summary: str,
                             decision: ReviewDecision) -> AnnualReview:
        self._require(actor, Activity.VERIFY_REVIEW)
        review = self.store.get(AnnualReview, review_id)
        if review is None:
            raise NotFound(f"no review {review_id!r}")
        if review.status is not ReviewStatus.SUBMITTED:
            raise InvalidState(f"review {review_id} is already {review.status.value}")
        student = self._student(review.student_id)
        self._check_scope(actor, student)
        verified = replace(
            review,
            status=ReviewStatus.VERIFIED,
            reviewer_summary=reviewer_summary,
            reviewer_id=actor.principal_id,
            decision=ReviewDecision(decision),
        )
        stored = self.store.apply(
            Transaction()
            .put(verified)
            .put(self._audit(actor, "verify_annual_review",
                             f"review {review_id} decision {verified.decision.value}"))
        )
        return stored[0]

    def edit_annual_review(self, actor: Actor, review_id: str,
                           student_summary: Optional[str] = None,
                           reviewer_summary: Optional[str] = None) -> AnnualReview:
        self._require(actor, Activity.EDIT_SUBMITTED_REVIEW)
        review = self.store.get(AnnualReview, review_id)
        if review is None:
            raise NotFound(f"no review {review_id!r}")
        self._check_scope(actor, self._student(review.student_id))
        changed = []
        if student_summary is not None and student_summary != review.student_summary:
            review = replace(review, student_summary=student_summary)
            changed.append("student_summary")
        if reviewer_summary is not None and reviewer_summary != review.reviewer_summary:
            review = replace(review, reviewer_summary=reviewer_summary)
            changed.append("reviewer_summary")
        stored = self.store.apply(
            Transaction()
            .put(review)
            .put(self._audit(actor, "edit_annual_review",
                             f"review {review_id} fields {','.join(changed) or 'none'}"))
        )
        return stored[0]

    # record entry -----------------------------------------------------------

    def record_score(self, actor: Actor, student_id: str, subject_id: str,
                     marks_obtained: float, hours_attended: float) -> StudentScore:
        self._require(actor, Activity.SUBMIT_EDIT_SCORES)
        student = self._student(student_id)
        self._check_scope(actor, student)
        if self.store.get(Subject, subject_id) is None:
            raise NotFound(f"no subject {subject_id!r}")
        existing = self.store.find_one(
            StudentScore, student_id=student_id, subject_id=subject_id
        )
        score = StudentScore(
            score_id=existing.score_id if existing else "",
            student_id=student_id,
            subject_id=subject_id,
            marks_obtained=marks_obtained,
            hours_attended=hours_attended,
        )
        stored = self.store.apply(
            Transaction()
            .put(score)
            .put(self._audit(actor, "record_score",
                             f"student {student_id} subject {subject_id}"))
        )
        return stored[0]

    def record_punishment(self, actor: Actor, student_id: str,
                          seriousness_label: str, description: str,
                          date: datetime.date) -> Punishment:
        self._require(actor, Activity.SUBMIT_EDIT_PUNISHMENTS)
        student = self._student(student_id)
        self._check_scope(actor, student)
        seriousness_rank(seriousness_label)  # UnknownLevel for junk labels
        level = self.store.find_one(PunishSeriousness, label=seriousness_label)
        punishment = Punishment(
            punishment_id="",
            student_id=student_id,
            seriousness_id=level.seriousness_id,
            description=description,
            date=date,
        )
        stored = self.store.apply(
            Transaction()
            .put(punishment)
            .put(self._audit(actor, "record_punishment",
                             f"student {student_id} level {seriousness_label}"))
        )
        return stored[0]

    def record_reward(self, actor: Actor, student_id: str, description: str,
                      date: datetime.date) -> Reward:
        self._require(actor, Activity.SUBMIT_EDIT_REWARDS)
        student = self._student(student_id)
        self._check_scope(actor, student)
        reward = Reward(
            reward_id="",
            student_id=student_id,
            description=description,
            date=date,
        )
        stored = self.store.apply(
            Transaction()
            .put(reward)
            .put(self._audit(actor, "record_reward", f"student {student_id}"))
        )
        return stored[0]

    def set_scholarship_status(self, actor: Actor, student_id: str,
                               status: ScholarshipStatus) -> Student:
        self._require(actor, Activity.EDIT_SCHOLARSHIP_STATUS)
        student = self._student(student_id)
        updated = replace(student, scholarship_status=ScholarshipStatus(status))
        stored = self.store.apply(
            Transaction()
            .put(updated)
            .put(self._audit(actor, "set_scholarship_status",
                             f"student {student_id} status {updated.scholarship_status.value}"))
        )
        return stored[0]

    # views --------------------------------------------------------------

    def get_review(self, actor: Actor, review_id: str) -> AnnualReview:
        self._require(actor, Activity.VIEW_SUBMITTED_REVIEW)
        review = self.store.get(AnnualReview, review_id)
        if review is None:
            raise NotFound(f"no review {review_id!r}")
        self._check_scope(actor, self._student(review.student_id))
        return review

    def list_reviews(self, actor: Actor, student_id: Optional[str] = None,
                     status: Optional[ReviewStatus] = None) -> list[AnnualReview]:
        """Reviews visible to the actor, optionally filtered."""
        self._require(actor, Activity.VIEW_SUBMITTED_REVIEW)
        reviews = self.store.query(AnnualReview)
        if student_id is not None:
            reviews = [r for r in reviews if r.student_id == student_id]
        if status is not None:
            reviews = [r for r in reviews if r.status is status]
        if actor.role is Role.STUDENT:
            return [r for r in reviews if r.student_id == actor.student_id]
        if actor.role is Role.REVIEWER:
            return [
                r for r in reviews
                if self._student(r.student_id).school_id == actor.school_id
            ]
        return reviews

    def view_scores(self, actor: Actor, student_id: str) -> list[StudentScore]:
        self._require(actor, Activity.VIEW_SCORES)
        self._check_scope(actor, self._student(student_id))
        return self.store.query(StudentScore, student_id=student_id)

    def view_punishments(self, actor: Actor, student_id: str) -> list[Punishment]:
        self._require(actor, Activity.VIEW_PUNISHMENTS)
        self._check_scope(actor, self._student(student_id))
        return self.store.query(Punishment, student_id=student_id)

    def view_rewards(self, actor: Actor, student_id: str) -> list[Reward]:
        self._require(actor, Activity.VIEW_REWARDS)
        self._check_scope(actor, self._student(student_id))
        return self.store.query(Reward, student_id=student_id)

    def view_scholarship_status(self, actor: Actor,
                                student_id: str) -> ScholarshipStatus:
        self._require(actor, Activity.VIEW_SCHOLARSHIP_STATUS)
        student = self._student(student_id)
        self._check_scope(actor, student)
        return student.scholarship_status

    # snapshots ----------------------------------------------------------

    def _score_snapshot(self, student_id: str) -> str:
        lines = []
        for score in self.store.query(StudentScore, student_id=student_id):
            subject = self.store.get(Subject, score.subject_id)
            lines.append(
                f"{subject.name}: {score.marks_obtained:g}/{subject.total_marks:g} marks, "
                f"{score.hours_attended:g}/{subject.total_hours:g} hours"
            )
        return "\n".join(lines)

    def _punishment_snapshot(self, student_id: str) -> str:
        lines = []
        for punishment in self.store.query(Punishment, student_id=student_id):
            level = self.store.get(PunishSeriousness, punishment.seriousness_id)
            lines.append(
                f"{punishment.date.isoformat()} {level.label}: {punishment.description}"
            )
        return "\n".join(lines)

    def _reward_snapshot(self, student_id: str) -> str:
        return "\n".join(
            f"{reward.date.isoformat()}: {reward.description}"
            for reward in self.store.query(Reward, student_id=student_id)
        )
