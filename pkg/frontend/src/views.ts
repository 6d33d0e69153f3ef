// View construction. Every action control carries a data-activity tag so
// the permission-parity test can compare rendered controls against the
// grid directly.

import { roleNavigation } from "./navigation.js";
import { h, textOf, type VNode } from "./render.js";
import type { ApiError } from "./apiClient.js";
import type { UiSession } from "./types.js";
import type { PredictionPanel, QueueItem } from "./viewModels.js";

export function navigationView(session: UiSession): VNode {
  const items = roleNavigation(session.role).map((entry) =>
    h(
      "li",
      entry.administrative
        ? { "data-administrative": "true" }
        : { "data-activity": entry.activity ?? "" },
      h("a", { href: entry.route }, entry.label),
    ),
  );
  return h(
    "nav",
    { class: "menu" },
    h("p", { class: "whoami" }, `${session.displayName} (${session.role})`),
    h("ul", {}, ...items),
  );
}

export function errorView(error: ApiError): VNode {
  if (error.kind === "forbidden") {
    // a permission notice, deliberately not a navigation change
    return h("div", { class: "notice forbidden", role: "alert" },
      `Not permitted: ${error.message}`);
  }
  if (error.kind === "network") {
    return h("div", { class: "banner retryable", role: "alert" },
      `Connection problem: ${error.message}. Retry in a moment.`);
  }
  if (error.kind === "unauthorized") {
    return h("div", { class: "banner", role: "alert" },
      "Session ended. Sign in again.");
  }
  return h("div", { class: "notice", role: "alert" },
    `${error.code}: ${error.message}`);
}

export function reviewFormView(errors: Record<string, string>): VNode {
  return h(
    "form",
    { id: "review-form", "data-activity": "SubmitAnnualReview" },
    h("label", { for: "academic-year" }, "Academic year"),
    h("input", { id: "academic-year", name: "academic_year", type: "number" }),
    errors.academicYear ? h("p", { class: "field-error" }, errors.academicYear) : null,
    h("label", { for: "student-summary" }, "Summary of your year"),
    h("textarea", { id: "student-summary", name: "student_summary" }),
    errors.studentSummary
      ? h("p", { class: "field-error" }, errors.studentSummary)
      : null,
    h("button", { type: "submit" }, "Submit review"),
  );
}

export function queueItemView(item: QueueItem): VNode {
  return h(
    "article",
    { class: "queue-item", "data-review": item.reviewId },
    h("h3", {}, `Student ${item.studentId}, ${item.academicYear}`),
    h("p", { class: "summary" }, item.studentSummary),
    h("pre", { class: "snapshot scores" }, item.scoreSnapshot || "(no scores)"),
    h("pre", { class: "snapshot punishments" },
      item.punishmentSnapshot || "(no punishments)"),
    h("pre", { class: "snapshot rewards" }, item.rewardSnapshot || "(no rewards)"),
    h("textarea", { name: "reviewer_summary", placeholder: "Reviewer summary" }),
    ...item.decisionOptions.map((decision) =>
      h("button", { "data-decision": decision, "data-activity": "VerifyReview" },
        decision),
    ),
  );
}

export function predictionPanelView(panel: PredictionPanel): VNode {
  if (!panel.trained) {
    return h("section", { class: "prediction" },
      h("button", { "data-action": "train" }, "Train model"),
      h("p", {}, "No model yet. Train one from the current records."));
  }
  return h(
    "section",
    { class: "prediction" },
    h("button", { "data-action": "train" }, "Retrain"),
    h("p", {},
      `Model: ${panel.nodeCount} nodes, training accuracy ` +
      `${((panel.trainingAccuracy ?? 0) * 100).toFixed(1)}%`),
    h("pre", { class: "tree-outline" }, panel.treeOutline.join("\n")),
    panel.label
      ? h("p", { class: "prediction-result" },
          `Prediction: ${panel.label} (confidence ${panel.confidencePercent})` +
          ` for features [${(panel.features ?? []).join(", ")}]`)
      : h("p", {}, "Pick a student or enter counts to predict."),
  );
}

export function renderedActivityTags(view: VNode): string[] {
  const tags: string[] = [];
  const walk = (node: VNode) => {
    const tag = node.attrs["data-activity"];
    if (tag) tags.push(tag);
    for (const child of node.children) {
      if (typeof child !== "string") walk(child);
    }
  };
  walk(view);
  return tags;
}

export { textOf };
