import { describe, expect, it } from "vitest";

import { permittedActivities } from "../src/permissions.js";
import { roleNavigation } from "../src/navigation.js";
import { navigationView, renderedActivityTags } from "../src/views.js";
import type { Role, UiSession } from "../src/types.js";

function sessionFor(role: Role): UiSession {
  return { token: "t", role, principalId: "p", displayName: "Someone" };
}

describe("role navigation parity", () => {
  const cases: Array<[Role, number]> = [
    ["Student", 7],
    ["Reviewer", 12],
    ["CSC", 8],
  ];

  it.each(cases)("%s menu lists exactly the permitted activities (%d)",
    (role, count) => {
      const entries = roleNavigation(role);
      const activityEntries = entries.filter((e) => !e.administrative);
      expect(activityEntries).toHaveLength(count);
      expect(new Set(activityEntries.map((e) => e.activity))).toEqual(
        new Set(permittedActivities(role)),
      );
    });

  it("rendered controls carry the same activity set", () => {
    for (const [role, count] of cases) {
      const tags = renderedActivityTags(navigationView(sessionFor(role)));
      expect(tags).toHaveLength(count);
      expect(new Set(tags)).toEqual(new Set(permittedActivities(role)));
    }
  });

  it("only the administration sees the prediction entry", () => {
    expect(roleNavigation("CSC").some((e) => e.administrative)).toBe(true);
    expect(roleNavigation("Student").some((e) => e.administrative)).toBe(false);
    expect(roleNavigation("Reviewer").some((e) => e.administrative)).toBe(false);
  });

  it("reviewer menu includes the verification queue", () => {
    const labels = roleNavigation("Reviewer").map((e) => e.label);
    expect(labels).toContain("Verification Queue");
  });

  it("csc menu includes the status editor", () => {
    const labels = roleNavigation("CSC").map((e) => e.label);
    expect(labels).toContain("Edit Scholarship Status");
  });

  it("student menu never offers record entry or verification", () => {
    const labels = roleNavigation("Student").map((e) => e.label);
    expect(labels).not.toContain("Verification Queue");
    expect(labels).not.toContain("Enter Scores");
    expect(labels).not.toContain("Edit Scholarship Status");
  });

  it("menus are stable snapshots", () => {
    expect(roleNavigation("Student")).toMatchSnapshot();
    expect(roleNavigation("Reviewer")).toMatchSnapshot();
    expect(roleNavigation("CSC")).toMatchSnapshot();
  });
});
