// Menu construction: exactly one entry per activity the role is granted,
// in grid order, plus the administrative prediction entry for the
// administration role.

import { ACTIVITIES, isPermitted, type Activity } from "./permissions.js";
import type { Role } from "./types.js";

export interface MenuEntry {
  label: string;
  route: string;
  activity?: Activity;
  administrative?: boolean;
}

const ENTRY_FOR: Record<Activity, Omit<MenuEntry, "activity">> = {
  Register: { label: "Reviewer Registration", route: "#/register" },
  Login: { label: "Session", route: "#/session" },
  SubmitAnnualReview: { label: "Submit Annual Review", route: "#/submit-review" },
  ViewSubmittedReview: { label: "Reviews", route: "#/reviews" },
  EditSubmittedReview: { label: "Edit Reviews", route: "#/reviews/edit" },
  VerifyReview: { label: "Verification Queue", route: "#/verify" },
  SubmitEditScores: { label: "Enter Scores", route: "#/scores/edit" },
  ViewScores: { label: "Scores", route: "#/scores" },
  SubmitEditPunishments: { label: "Enter Punishments", route: "#/punishments/edit" },
  ViewPunishments: { label: "Punishments", route: "#/punishments" },
  SubmitEditRewards: { label: "Enter Rewards", route: "#/rewards/edit" },
  ViewRewards: { label: "Rewards", route: "#/rewards" },
  ViewScholarshipStatus: { label: "Scholarship Status", route: "#/status" },
  EditScholarshipStatus: { label: "Edit Scholarship Status", route: "#/status/edit" },
};

export function roleNavigation(role: Role): MenuEntry[] {
  const entries: MenuEntry[] = ACTIVITIES.filter((activity) =>
    isPermitted(role, activity),
  ).map((activity) => ({ activity, ...ENTRY_FOR[activity] }));
  if (role === "CSC") {
    entries.push({
      label: "Prediction",
      route: "#/prediction",
      administrative: true,
    });
    entries.push({
      label: "Dataset Download",
      route: "#/dataset",
      administrative: true,
    });
  }
  return entries;
}
