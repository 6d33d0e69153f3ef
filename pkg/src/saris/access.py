"""Role/activity access grid.

Every mutating operation in the system consults this module before touching
the store. The grid is a total function over all role/activity pairs and is
immutable after import.
"""

from __future__ import annotations

from enum import Enum
from typing import Mapping


class Role(str, Enum):
    STUDENT = "Student"
    REVIEWER = "Reviewer"
    CSC = "CSC"


class Activity(str, Enum):
    REGISTER = "Register"
    LOGIN = "Login"
    SUBMIT_ANNUAL_REVIEW = "SubmitAnnualReview"
    VIEW_SUBMITTED_REVIEW = "ViewSubmittedReview"
    EDIT_SUBMITTED_REVIEW = "EditSubmittedReview"
    VERIFY_REVIEW = "VerifyReview"
    SUBMIT_EDIT_SCORES = "SubmitEditScores"
    VIEW_SCORES = "ViewScores"
    SUBMIT_EDIT_PUNISHMENTS = "SubmitEditPunishments"
    VIEW_PUNISHMENTS = "ViewPunishments"
    SUBMIT_EDIT_REWARDS = "SubmitEditRewards"
    VIEW_REWARDS = "ViewRewards"
    VIEW_SCHOLARSHIP_STATUS = "ViewScholarshipStatus"
    EDIT_SCHOLARSHIP_STATUS = "EditScholarshipStatus"


_ALL = frozenset(Role)

# Which roles each activity is granted to. Students arrive pre-registered
# (accounts are provisioned from imported records), so only reviewers may
# self-register. Record entry belongs to reviewers; scholarship status is
# the administration's alone.
_GRANTS: dict[Activity, frozenset[Role]] = {
    Activity.REGISTER: frozenset({Role.REVIEWER}),
    Activity.LOGIN: _ALL,
    Activity.SUBMIT_ANNUAL_REVIEW: frozenset({Role.STUDENT}),
    Activity.VIEW_SUBMITTED_REVIEW: _ALL,
    Activity.EDIT_SUBMITTED_REVIEW: frozenset({Role.REVIEWER, Role.CSC}),
    Activity.VERIFY_REVIEW: frozenset({Role.REVIEWER}),
    Activity.SUBMIT_EDIT_SCORES: frozenset({Role.REVIEWER}),
    Activity.VIEW_SCORES: _ALL,
    Activity.SUBMIT_EDIT_PUNISHMENTS: frozenset({Role.REVIEWER}),
    Activity.VIEW_PUNISHMENTS: _ALL,
    Activity.SUBMIT_EDIT_REWARDS: frozenset({Role.REVIEWER}),
    Activity.VIEW_REWARDS: _ALL,
    Activity.VIEW_SCHOLARSHIP_STATUS: _ALL,
    Activity.EDIT_SCHOLARSHIP_STATUS: frozenset({Role.CSC}),
}

#: The full 42-cell grid, keyed by (role, activity).
PERMISSIONS: Mapping[tuple[Role, Activity], bool] = {
    (role, activity): role in _GRANTS[activity]
    for role in Role
    for activity in Activity
}


def is_permitted(role: Role, activity: Activity) -> bool:
    """True when the grid grants `activity` to `role`. Pure and total."""
    return PERMISSIONS[(role, activity)]


def permitted_activities(role: Role) -> frozenset[Activity]:
    """The set of activities the role may perform."""
    return frozenset(a for a in Activity if is_permitted(role, a))
