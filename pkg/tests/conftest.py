import datetime

import pytest

from saris import api
from saris.access import Role
from saris.domain import (
    AnnualReview,
    MajorField,
    Period,
    Punishment,
    PunishSeriousness,
    ReviewDecision,
    ReviewStatus,
    Reviewer,
    Reward,
    Scholarship,
    ScholarshipType,
    School,
    Student,
    StudentScore,
    Subject,
    Teacher,
    University,
)
from saris.storage import EntityStore, Transaction
from saris.workflow import Actor

# the five-student reference dataset the fixtures below reproduce:
# (student_id, subject_failed, dismissal_punish, rewards, success)
REFERENCE_ROWS = [
    ("100121", 2, 0, 0, "NO"),
    ("100213", 0, 1, 2, "NO"),
    ("200128", 5, 0, 2, "NO"),
    ("201324", 0, 0, 0, "YES"),
    ("201217", 1, 0, 0, "YES"),
]

REFERENCE_CSV = (
    b"STUDENT_ID,SUBJECT_FAILED,DISMISSAL_PUNISH,REWARDS,SUCCESS\n"
    b"100121,2,0,0,NO\n"
    b"100213,0,1,2,NO\n"
    b"200128,5,0,2,NO\n"
    b"201324,0,0,0,YES\n"
    b"201217,1,0,0,YES\n"
)

REVIEWER_PASSWORD = "review-pw"
CSC_PASSWORD = "admin-pw"


def student_password(student_id: str) -> str:
    return f"pw-{student_id}"


def _student(student_id: str) -> Student:
    return Student(
        student_id=student_id,
        name=f"Student {student_id}",
        registration_details=f"reg-{student_id}",
        university_id="u1",
        school_id="sch1",
        major_field_id="m1",
        scholarship_id="g1",
        scholarship_type_id="ft1",
        period_id="p1",
    )


def build_reference_population(store: EntityStore) -> None:
    """Five students whose records derive exactly to REFERENCE_ROWS."""
    txn = Transaction()
    txn.put(University(university_id="u1", name="Riverbend University"))
    txn.put(School(school_id="sch1", name="Software Engineering", university_id="u1"))
    txn.put(School(school_id="sch2", name="Economics", university_id="u1"))
    txn.put(MajorField(major_field_id="m1", name="Software Engineering"))
    txn.put(Scholarship(scholarship_id="g1", name="Government Scholarship"))
    txn.put(ScholarshipType(scholarship_type_id="ft1", name="Full"))
    txn.put(Period(period_id="p1", start_date=datetime.date(2013, 9, 1),
                   end_date=datetime.date(2015, 8, 31)))
    txn.put(Teacher(teacher_id="t1", employee_id="emp-9001", name="Li Ming",
                    school_id="sch1"))
    txn.put(Teacher(teacher_id="t2", employee_id="emp-9002", name="Zhao Lei",
                    school_id="sch2"))
    txn.put(Reviewer(reviewer_id="r1", employee_id="emp-9001", name="Li Ming",
                     credentials=api.hash_password(REVIEWER_PASSWORD),
                     school_id="sch1"))
    for i in range(1, 6):
        txn.put(Subject(subject_id=f"s{i}", major_field_id="m1",
                        name=f"Subject {i}", total_marks=100.0, total_hours=48.0))
    for student_id, *_ in REFERENCE_ROWS:
        txn.put(_student(student_id))
    store.apply(txn)

    dismissal = store.find_one(PunishSeriousness, label="Dismissal")
    warning = store.find_one(PunishSeriousness, label="Warning")
    serious2 = store.find_one(PunishSeriousness, label="Serious Warning2")

    scores = {
        # marks below 60 of 100 count as failed
        "100121": [("s1", 50.0), ("s2", 40.0), ("s3", 80.0), ("s4", 70.0)],
        "100213": [("s1", 85.0), ("s2", 90.0)],
        "200128": [("s1", 30.0), ("s2", 45.0), ("s3", 50.0), ("s4", 55.0), ("s5", 59.0)],
        "201324": [("s1", 75.0)],
        "201217": [("s1", 59.0), ("s2", 61.0), ("s3", 60.0)],  # 60 itself passes
    }
    punishments = {
        "100121": [warning],          # below dismissal grade, must not count
        "100213": [dismissal],
        "200128": [serious2],         # below dismissal grade, must not count
    }
    reward_counts = {"100213": 2, "200128": 2}
    decisions = {
        "100121": ReviewDecision.DISAPPROVE,
        "100213": ReviewDecision.DISAPPROVE,
        "200128": ReviewDecision.DISAPPROVE,
        "201324": ReviewDecision.APPROVE,
        "201217": ReviewDecision.APPROVE,
    }

    txn = Transaction()
    for student_id, subject_scores in scores.items():
        for subject_id, marks in subject_scores:
            txn.put(StudentScore(score_id="", student_id=student_id,
                                 subject_id=subject_id, marks_obtained=marks,
                                 hours_attended=40.0))
    for student_id, levels in punishments.items():
        for level in levels:
            txn.put(Punishment(punishment_id="", student_id=student_id,
                               seriousness_id=level.seriousness_id,
                               description="conduct finding",
                               date=datetime.date(2014, 3, 2)))
    for student_id, count in reward_counts.items():
        for i in range(count):
            txn.put(Reward(reward_id="", student_id=student_id,
                           description=f"award {i + 1}",
                           date=datetime.date(2014, 5, 20)))
    for student_id, decision in decisions.items():
        txn.put(AnnualReview(
            review_id="", student_id=student_id, academic_year=2014,
            student_summary="my year in brief",
            academic_score_snapshot="", punishments_snapshot="",
            rewards_snapshot="",
            status=ReviewStatus.VERIFIED,
            reviewer_summary="records check out",
            reviewer_id="r1",
            decision=decision,
        ))
    store.apply(txn)


def provision_accounts(store: EntityStore) -> None:
    for student_id, *_ in REFERENCE_ROWS:
        api.create_account(store, student_id, Role.STUDENT,
                           student_password(student_id))
    api.create_account(store, "csc-01", Role.CSC, CSC_PASSWORD)


@pytest.fixture
def store() -> EntityStore:
    return EntityStore()


@pytest.fixture
def seeded_store(store: EntityStore) -> EntityStore:
    build_reference_population(store)
    return store


@pytest.fixture
def student_actor() -> Actor:
    return Actor(principal_id="100121", role=Role.STUDENT, student_id="100121")


@pytest.fixture
def reviewer_actor() -> Actor:
    return Actor(principal_id="r1", role=Role.REVIEWER, school_id="sch1")


@pytest.fixture
def csc_actor() -> Actor:
    return Actor(principal_id="csc-01", role=Role.CSC)
