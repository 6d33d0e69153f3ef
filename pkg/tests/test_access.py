from saris.access import Activity, PERMISSIONS, Role, is_permitted, permitted_activities

S, R, C = Role.STUDENT, Role.REVIEWER, Role.CSC

# hand-transcribed access grid: activity -> (student, reviewer, csc)
EXPECTED = {
    Activity.REGISTER: (False, True, False),
    Activity.LOGIN: (True, True, True),
    Activity.SUBMIT_ANNUAL_REVIEW: (True, False, False),
    Activity.VIEW_SUBMITTED_REVIEW: (True, True, True),
    Activity.EDIT_SUBMITTED_REVIEW: (False, True, True),
    Activity.VERIFY_REVIEW: (False, True, False),
    Activity.SUBMIT_EDIT_SCORES: (False, True, False),
    Activity.VIEW_SCORES: (True, True, True),
    Activity.SUBMIT_EDIT_PUNISHMENTS: (False, True, False),
    Activity.VIEW_PUNISHMENTS: (True, True, True),
    Activity.SUBMIT_EDIT_REWARDS: (False, True, False),
    Activity.VIEW_REWARDS: (True, True, True),
    Activity.VIEW_SCHOLARSHIP_STATUS: (True, True, True),
    Activity.EDIT_SCHOLARSHIP_STATUS: (False, False, True),
}


def test_exactly_three_roles_and_fourteen_activities():
    assert len(Role) == 3
    assert len(Activity) == 14


def test_grid_is_total():
    assert len(PERMISSIONS) == 42
    assert set(PERMISSIONS) == {(r, a) for r in Role for a in Activity}


def test_every_cell_matches_fixture():
    for activity, (student, reviewer, csc) in EXPECTED.items():
        assert is_permitted(S, activity) is student, activity
        assert is_permitted(R, activity) is reviewer, activity
        assert is_permitted(C, activity) is csc, activity


def test_grant_and_denial_totals():
    granted = sum(1 for cell in PERMISSIONS.values() if cell)
    assert granted == 27
    assert len(PERMISSIONS) - granted == 15


def test_permitted_activity_counts():
    assert len(permitted_activities(S)) == 7
    assert len(permitted_activities(R)) == 12
    assert len(permitted_activities(C)) == 8


def test_student_set_contents():
    assert permitted_activities(S) == frozenset({
        Activity.LOGIN, Activity.SUBMIT_ANNUAL_REVIEW,
        Activity.VIEW_SUBMITTED_REVIEW, Activity.VIEW_SCORES,
        Activity.VIEW_PUNISHMENTS, Activity.VIEW_REWARDS,
        Activity.VIEW_SCHOLARSHIP_STATUS,
    })


def test_reviewer_set_is_all_but_two():
    missing = set(Activity) - permitted_activities(R)
    assert missing == {Activity.SUBMIT_ANNUAL_REVIEW, Activity.EDIT_SCHOLARSHIP_STATUS}


def test_permitted_activities_consistent_with_cells():
    for role in Role:
        allowed = permitted_activities(role)
        for activity in Activity:
            assert (activity in allowed) == is_permitted(role, activity)


def test_view_activities_open_to_all_roles():
    view_rows = [a for a in Activity if a.value.startswith("View")]
    assert len(view_rows) == 5
    for activity in view_rows:
        for role in Role:
            assert is_permitted(role, activity)


def test_spot_checks():
    assert is_permitted(R, Activity.REGISTER) is True
    assert is_permitted(S, Activity.EDIT_SCHOLARSHIP_STATUS) is False
    assert is_permitted(S, Activity.SUBMIT_ANNUAL_REVIEW) is True
    assert is_permitted(C, Activity.VERIFY_REVIEW) is False
