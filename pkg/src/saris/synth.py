"""Deterministic synthetic populations for demos and throughput checks.

Everything derives from one seeded RNG, so the same seed always produces the
same store contents, the same derived dataset and the same trained model.
"""

from __future__ import annotations

import datetime
import random

from .domain import (
    AnnualReview,
    MajorField,
    Period,
    PunishSeriousness,
    Punishment,
    ReviewDecision,
    ReviewStatus,
    Reviewer,
    Reward,
    Scholarship,
    ScholarshipType,
    ScholarshipStatus,
    School,
    Student,
    StudentScore,
    Subject,
    Teacher,
    University,
)
from .storage import EntityStore, Transaction

_SUBJECT_NAMES = (
    "Algorithms", "Databases", "Networks", "Statistics", "Compilers", "Writing",
)


def seed_reference_data(store: EntityStore) -> None:
    """Universities, schools, majors, scholarships and subjects, if absent."""
    if store.get(Scholarship, "csc-full") is not None:
        return
    txn = Transaction()
    txn.put(University(university_id="u1", name="Riverbend University"))
    txn.put(School(school_id="sch1", name="School of Software Engineering",
                   university_id="u1"))
    txn.put(School(school_id="sch2", name="School of Economics", university_id="u1"))
    txn.put(MajorField(major_field_id="m1", name="Software Engineering"))
    txn.put(Scholarship(scholarship_id="csc-full", name="Government Scholarship"))
    txn.put(ScholarshipType(scholarship_type_id="full", name="Full"))
    txn.put(Period(period_id="p1", start_date=datetime.date(2013, 9, 1),
                   end_date=datetime.date(2015, 8, 31)))
    txn.put(Teacher(teacher_id="t1", employee_id="emp-1001", name="Prof. Wang",
                    school_id="sch1"))
    for index, name in enumerate(_SUBJECT_NAMES, start=1):
        txn.put(Subject(subject_id=f"sub{index}", major_field_id="m1", name=name,
                        total_marks=100.0, total_hours=48.0))
    store.apply(txn)


def seed_synthetic_population(store: EntityStore, n_students: int,
                              seed: int = 7) -> None:
    """Populate the store with students whose outcomes follow their records.

    The reviewer decision is a noisy function of failures, dismissal-grade
    punishments and rewards, so a trained model has real signal to find.
    """
    rng = random.Random(seed)
    seed_reference_data(store)

    reviewer = store.find_one(Reviewer, employee_id="emp-1001")
    if reviewer is None:
        reviewer = store.put(Reviewer(
            reviewer_id="", employee_id="emp-1001", name="Prof. Wang",
            credentials="seeded$0$00$00", school_id="sch1",
        ))

    levels = {level.label: level for level in store.query(PunishSeriousness)}
    subjects = store.query(Subject)

    for index in range(n_students):
        student_id = str(300000 + index)
        txn = Transaction()
        txn.put(Student(
            student_id=student_id,
            name=f"Student {student_id}",
            registration_details=f"reg-{student_id}",
            university_id="u1",
            school_id="sch1",
            major_field_id="m1",
            scholarship_id="csc-full",
            scholarship_type_id="full",
            period_id="p1",
            scholarship_status=ScholarshipStatus.ACTIVE,
        ))

        failed = 0
        for subject in subjects:
            if rng.random() < 0.25:
                marks = rng.uniform(20, 59)
                failed += 1
            else:
                marks = rng.uniform(60, 100)
            txn.put(StudentScore(
                score_id="", student_id=student_id, subject_id=subject.subject_id,
                marks_obtained=round(marks, 1),
                hours_attended=round(rng.uniform(30, 48), 1),
            ))

        dismissals = 0
        if rng.random() < 0.15:
            label = rng.choice(("Warning", "Serious Warning1", "Dismissal"))
            if label == "Dismissal":
                dismissals += 1
            txn.put(Punishment(
                punishment_id="", student_id=student_id,
                seriousness_id=levels[label].seriousness_id,
                description="conduct finding", date=datetime.date(2014, 3, 10),
            ))

        n_rewards = rng.choice((0, 0, 0, 1, 1, 2))
        for _ in range(n_rewards):
            txn.put(Reward(
                reward_id="", student_id=student_id,
                description="merit award", date=datetime.date(2014, 5, 20),
            ))

        # outcome follows the record, with a sliver of noise
        good = failed <= 1 and dismissals == 0
        if rng.random() < 0.05:
            good = not good
        decision = ReviewDecision.APPROVE if good else ReviewDecision.DISAPPROVE
        txn.put(AnnualReview(
            review_id="",
            student_id=student_id,
            academic_year=2014,
            student_summary="year in brief",
            academic_score_snapshot="",
            punishments_snapshot="",
            rewards_snapshot="",
            status=ReviewStatus.VERIFIED,
            reviewer_summary="checked against records",
            reviewer_id=reviewer.reviewer_id,
            decision=decision,
        ))
        store.apply(txn)
