// Client-side mirror of the server's role/activity grid. This gates what
// the UI shows; the server re-checks every call, so the mirror can never
// widen access, only hide controls a request would bounce anyway.

import type { Role } from "./types.js";

export const ACTIVITIES = [
  "Register",
  "Login",
  "SubmitAnnualReview",
  "ViewSubmittedReview",
  "EditSubmittedReview",
  "VerifyReview",
  "SubmitEditScores",
  "ViewScores",
  "SubmitEditPunishments",
  "ViewPunishments",
  "SubmitEditRewards",
  "ViewRewards",
  "ViewScholarshipStatus",
  "EditScholarshipStatus",
] as const;

export type Activity = (typeof ACTIVITIES)[number];

const ALL: readonly Role[] = ["Student", "Reviewer", "CSC"];

const GRANTS: Record<Activity, readonly Role[]> = {
  Register: ["Reviewer"],
  Login: ALL,
  SubmitAnnualReview: ["Student"],
  ViewSubmittedReview: ALL,
  EditSubmittedReview: ["Reviewer", "CSC"],
  VerifyReview: ["Reviewer"],
  SubmitEditScores: ["Reviewer"],
  ViewScores: ALL,
  SubmitEditPunishments: ["Reviewer"],
  ViewPunishments: ALL,
  SubmitEditRewards: ["Reviewer"],
  ViewRewards: ALL,
  ViewScholarshipStatus: ALL,
  EditScholarshipStatus: ["CSC"],
};

export function isPermitted(role: Role, activity: Activity): boolean {
  return GRANTS[activity].includes(role);
}

export function permittedActivities(role: Role): Activity[] {
  return ACTIVITIES.filter((activity) => isPermitted(role, activity));
}
