import { describe, expect, it } from "vitest";

import {
  ACTIVITIES,
  isPermitted,
  permittedActivities,
} from "../src/permissions.js";
import type { Role } from "../src/types.js";

const ROLES: Role[] = ["Student", "Reviewer", "CSC"];

describe("permission grid mirror", () => {
  it("has 14 activities and 42 cells, 27 granted", () => {
    expect(ACTIVITIES).toHaveLength(14);
    let granted = 0;
    for (const role of ROLES) {
      for (const activity of ACTIVITIES) {
        if (isPermitted(role, activity)) granted += 1;
      }
    }
    expect(granted).toBe(27);
  });

  it("permitted sets are 7 / 12 / 8", () => {
    expect(permittedActivities("Student")).toHaveLength(7);
    expect(permittedActivities("Reviewer")).toHaveLength(12);
    expect(permittedActivities("CSC")).toHaveLength(8);
  });

  it("every view activity is open to all roles", () => {
    const views = ACTIVITIES.filter((a) => a.startsWith("View"));
    expect(views).toHaveLength(5);
    for (const view of views) {
      for (const role of ROLES) {
        expect(isPermitted(role, view)).toBe(true);
      }
    }
  });

  it("spot checks match the server grid", () => {
    expect(isPermitted("Reviewer", "Register")).toBe(true);
    expect(isPermitted("Student", "EditScholarshipStatus")).toBe(false);
    expect(isPermitted("Student", "SubmitAnnualReview")).toBe(true);
    expect(isPermitted("CSC", "VerifyReview")).toBe(false);
  });
});
