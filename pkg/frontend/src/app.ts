// Browser bootstrap: hash routing, screens per activity, optimistic
// rendering only for reads. Mutations wait for the server's answer.

import { ApiClient, type ApiError, type ApiResult } from "./apiClient.js";
import { navigationView, errorView, predictionPanelView, queueItemView, reviewFormView } from "./views.js";
import { h, on, toDom, type VNode } from "./render.js";
import { SessionStore, sessionFromLogin } from "./session.js";
import {
  emptyReviewForm,
  predictionPanel,
  queueItem,
  reviewFormPayload,
  seriousnessOptions,
  statusEditor,
  statusPayload,
  validateReviewForm,
} from "./viewModels.js";
import type { Prediction, TrainSummary, UiSession } from "./types.js";
import { SCHOLARSHIP_STATUSES } from "./types.js";

class App {
  readonly sessions: SessionStore;
  readonly client: ApiClient;
  lastTrain: TrainSummary | null = null;
  lastPrediction: Prediction | null = null;
  notice: ApiError | null = null;

  constructor(private readonly doc: Document, private readonly win: Window) {
    this.sessions = new SessionStore(win.localStorage);
    this.client = new ApiClient({
      onUnauthorized: () => {
        this.sessions.clear();
        this.render();
      },
    });
    this.client.token = this.sessions.get()?.token ?? null;
    win.addEventListener("hashchange", () => this.render());
  }

  route(): string {
    return this.win.location.hash || "#/reviews";
  }

  render(): void {
    const root = this.doc.getElementById("app");
    if (!root) return;
    root.replaceChildren();
    const session = this.sessions.get();
    if (!session) {
      root.append(toDom(this.loginScreen(), this.doc));
      return;
    }
    root.append(toDom(navigationView(session), this.doc));
    if (this.notice) {
      root.append(toDom(errorView(this.notice), this.doc));
      this.notice = null;
    }
    root.append(toDom(this.screen(session), this.doc));
  }

  private async guard<T>(work: Promise<ApiResult<T>>): Promise<T | null> {
    const result = await work;
    if (result.ok) return result.value;
    this.notice = result.error;
    this.render();
    return null;
  }

  private field(form: HTMLElement, name: string): string {
    const input = form.querySelector(`[name="${name}"]`) as
      | HTMLInputElement
      | HTMLTextAreaElement
      | HTMLSelectElement
      | null;
    return input?.value ?? "";
  }

  // screens -----------------------------------------------------------

  private loginScreen(): VNode {
    const form = h(
      "form",
      { id: "login-form" },
      h("h2", {}, "Sign in"),
      h("label", { for: "identifier" }, "Identifier"),
      h("input", { id: "identifier", name: "identifier" }),
      h("label", { for: "password" }, "Password"),
      h("input", { id: "password", name: "password", type: "password" }),
      h("button", { type: "submit" }, "Sign in"),
      h("p", {},
        h("a", { href: "#/register-public" }, "Register as a reviewer")),
    );
    if (this.route() === "#/register-public") {
      return this.registerScreen();
    }
    return on(form, {
      submit: async (event) => {
        event.preventDefault();
        const target = event.currentTarget as HTMLElement;
        const body = await this.guard(this.client.login(
          this.field(target, "identifier"), this.field(target, "password")));
        if (body) {
          const session = sessionFromLogin(body);
          this.sessions.set(session);
          this.client.token = session.token;
          this.render();
        }
      },
    });
  }

  private registerScreen(): VNode {
    const form = h(
      "form",
      { id: "register-form", "data-activity": "Register" },
      h("h2", {}, "Reviewer registration"),
      h("label", { for: "reg-name" }, "Name (as on the teacher roll)"),
      h("input", { id: "reg-name", name: "name" }),
      h("label", { for: "reg-employee" }, "Employee id"),
      h("input", { id: "reg-employee", name: "employee_id" }),
      h("label", { for: "reg-password" }, "Password"),
      h("input", { id: "reg-password", name: "password", type: "password" }),
      h("button", { type: "submit" }, "Register"),
    );
    return on(form, {
      submit: async (event) => {
        event.preventDefault();
        const target = event.currentTarget as HTMLElement;
        const created = await this.guard(this.client.registerReviewer(
          this.field(target, "name"),
          this.field(target, "employee_id"),
          this.field(target, "password"),
        ));
        if (created) {
          this.win.location.hash = "#/session";
          this.render();
        }
      },
    });
  }

  private screen(session: UiSession): VNode {
    switch (this.route()) {
      case "#/session":
        return on(
          h("section", {},
            h("p", {}, `Signed in as ${session.displayName} (${session.role})`),
            h("button", { id: "logout" }, "Sign out")),
          {
            click: (event) => {
              if ((event.target as HTMLElement).id === "logout") {
                this.sessions.clear();
                this.client.token = null;
                this.render();
              }
            },
          },
        );
      case "#/register":
        return this.registerScreen();
      case "#/submit-review":
        return this.submitReviewScreen();
      case "#/verify":
        return this.verifyScreen();
      case "#/prediction":
        return this.predictionScreen();
      case "#/dataset":
        return this.datasetScreen();
      case "#/status":
      case "#/status/edit":
        return this.statusScreen(session);
      case "#/scores":
      case "#/scores/edit":
        return this.recordScreen(session, "scores");
      case "#/punishments":
      case "#/punishments/edit":
        return this.recordScreen(session, "punishments");
      case "#/rewards":
      case "#/rewards/edit":
        return this.recordScreen(session, "rewards");
      default:
        return this.reviewsScreen(session);
    }
  }

  private submitReviewScreen(): VNode {
    const form = reviewFormView({});
    return on(form, {
      submit: async (event) => {
        event.preventDefault();
        const target = event.currentTarget as HTMLElement;
        const model = {
          academicYear: this.field(target, "academic_year") || emptyReviewForm().academicYear,
          studentSummary: this.field(target, "student_summary"),
        };
        const errors = validateReviewForm(model);
        if (Object.keys(errors).length) {
          const parent = target.parentElement;
          parent?.replaceChild(toDom(reviewFormView(errors), this.doc), target);
          return;
        }
        const payload = reviewFormPayload(model);
        const review = await this.guard(
          this.client.submitReview(payload.academic_year, payload.student_summary));
        if (review) {
          this.win.location.hash = "#/reviews";
          this.render();
        }
      },
    });
  }

  private reviewsScreen(session: UiSession): VNode {
    const container = h("section", { id: "reviews" }, h("h2", {}, "Reviews"));
    void this.client.listReviews().then((result) => {
      if (!result.ok) {
        this.notice = result.error;
        this.render();
        return;
      }
      const list = this.doc.getElementById("reviews");
      if (!list) return;
      for (const review of result.value) {
        list.append(toDom(
          h("article", { class: "review", "data-review": review.review_id },
            h("h3", {}, `${review.student_id} / ${review.academic_year} ` +
              `(${review.status})`),
            h("p", {}, review.student_summary),
            review.reviewer_summary
              ? h("p", { class: "reviewer-summary" },
                  `Reviewer: ${review.reviewer_summary} [${review.decision}]`)
              : null),
          this.doc));
      }
    });
    return container;
  }

  private verifyScreen(): VNode {
    const container = h("section", { id: "verify-queue" },
      h("h2", {}, "Verification queue"));
    void this.client.listReviews({ status: "Submitted" }).then((result) => {
      if (!result.ok) {
        this.notice = result.error;
        this.render();
        return;
      }
      const queue = this.doc.getElementById("verify-queue");
      if (!queue) return;
      for (const review of result.value) {
        const item = queueItem(review);
        const view = on(queueItemView(item), {
          click: async (event) => {
            const button = event.target as HTMLElement;
            const decision = button.getAttribute("data-decision");
            if (decision !== "Approve" && decision !== "Disapprove") return;
            const card = button.closest("[data-review]") as HTMLElement;
            const summary = (card.querySelector(
              '[name="reviewer_summary"]') as HTMLTextAreaElement).value;
            const verified = await this.guard(
              this.client.verifyReview(item.reviewId, summary, decision));
            if (verified) this.render();
          },
        });
        queue.append(toDom(view, this.doc));
      }
    });
    return container;
  }

  private predictionScreen(): VNode {
    const panel = predictionPanelView(
      predictionPanel(this.lastTrain, this.lastPrediction));
    const wrapper = h("section", { id: "prediction-screen" },
      h("h2", {}, "Success prediction"),
      panel,
      h("form", { id: "predict-form" },
        h("label", { for: "predict-student" }, "Student id"),
        h("input", { id: "predict-student", name: "student_id" }),
        h("button", { type: "submit" }, "Predict")));
    return on(wrapper, {
      click: async (event) => {
        const target = event.target as HTMLElement;
        if (target.getAttribute("data-action") === "train") {
          const summary = await this.guard(this.client.train());
          if (summary) {
            this.lastTrain = summary;
            this.render();
          }
        }
      },
      submit: async (event) => {
        event.preventDefault();
        const form = event.target as HTMLElement;
        const studentId = this.field(form, "student_id");
        const prediction = await this.guard(
          this.client.predict({ student_id: studentId }));
        if (prediction) {
          this.lastPrediction = prediction;
          this.render();
        }
      },
    });
  }

  private datasetScreen(): VNode {
    const container = h("section", { id: "dataset" },
      h("h2", {}, "Derived dataset"),
      h("pre", { id: "dataset-body" }, "loading..."));
    void this.client.downloadDataset().then((result) => {
      const body = this.doc.getElementById("dataset-body");
      if (!body) return;
      if (result.ok) {
        body.textContent = result.value;
      } else {
        this.notice = result.error;
        this.render();
      }
    });
    return container;
  }

  private statusScreen(session: UiSession): VNode {
    const editing = this.route() === "#/status/edit";
    const container = h("section", { id: "status-screen" },
      h("h2", {}, "Scholarship status"),
      h("form", { id: "status-lookup" },
        h("label", { for: "status-student" }, "Student id"),
        h("input", {
          id: "status-student", name: "student_id",
          value: session.role === "Student" ? session.principalId : "",
        }),
        h("button", { type: "submit" }, "Look up")),
      h("div", { id: "status-result" }));
    return on(container, {
      submit: async (event) => {
        event.preventDefault();
        const studentId = this.field(event.target as HTMLElement, "student_id");
        const status = await this.guard(this.client.getStatus(studentId));
        const result = this.doc.getElementById("status-result");
        if (!status || !result) return;
        result.replaceChildren();
        const editor = statusEditor(status.student_id, status.scholarship_status);
        const pieces: VNode[] = [
          h("p", {}, `Current status: ${status.scholarship_status}`),
        ];
        if (editing) {
          pieces.push(on(
            h("form", { id: "status-edit", "data-activity": "EditScholarshipStatus" },
              h("select", { name: "status" },
                ...SCHOLARSHIP_STATUSES.map((option) =>
                  h("option", option === editor.selected
                    ? { value: option, selected: "selected" }
                    : { value: option }, option))),
              h("button", { type: "submit" }, "Save status")),
            {
              submit: async (inner) => {
                inner.preventDefault();
                const chosen = this.field(
                  inner.target as HTMLElement, "status") as
                  (typeof SCHOLARSHIP_STATUSES)[number];
                const saved = await this.guard(this.client.setStatus(
                  status.student_id,
                  statusPayload({ ...editor, selected: chosen }).status));
                if (saved) this.render();
              },
            },
          ));
        }
        for (const piece of pieces) result.append(toDom(piece, this.doc));
      },
    });
  }

  private recordScreen(
    session: UiSession,
    kind: "scores" | "punishments" | "rewards",
  ): VNode {
    const editing = this.route().endsWith("/edit");
    const container = h("section", { id: `${kind}-screen` },
      h("h2", {}, kind[0]!.toUpperCase() + kind.slice(1)),
      h("form", { id: `${kind}-lookup` },
        h("label", { for: `${kind}-student` }, "Student id"),
        h("input", {
          id: `${kind}-student`, name: "student_id",
          value: session.role === "Student" ? session.principalId : "",
        }),
        h("button", { type: "submit" }, "Look up")),
      h("pre", { id: `${kind}-list` }),
      editing ? this.entryForm(kind) : null);
    return on(container, {
      submit: async (event) => {
        const form = event.target as HTMLElement;
        if (form.id !== `${kind}-lookup`) return;
        event.preventDefault();
        const studentId = this.field(form, "student_id");
        const fetcher: Promise<ApiResult<unknown>> =
          kind === "scores" ? this.client.getScores(studentId)
          : kind === "punishments" ? this.client.getPunishments(studentId)
          : this.client.getRewards(studentId);
        const rows = await this.guard(fetcher);
        const list = this.doc.getElementById(`${kind}-list`);
        if (rows && list) list.textContent = JSON.stringify(rows, null, 2);
      },
    });
  }

  private entryForm(kind: "scores" | "punishments" | "rewards"): VNode {
    if (kind === "scores") {
      return on(
        h("form", { id: "score-entry", "data-activity": "SubmitEditScores" },
          h("input", { name: "student_id", placeholder: "student id" }),
          h("input", { name: "subject_id", placeholder: "subject id" }),
          h("input", { name: "marks_obtained", placeholder: "marks" }),
          h("input", { name: "hours_attended", placeholder: "hours" }),
          h("button", { type: "submit" }, "Save score")),
        {
          submit: async (event) => {
            event.preventDefault();
            const form = event.target as HTMLElement;
            const saved = await this.guard(this.client.putScore(
              this.field(form, "student_id"),
              this.field(form, "subject_id"),
              Number(this.field(form, "marks_obtained")),
              Number(this.field(form, "hours_attended"))));
            if (saved) this.render();
          },
        },
      );
    }
    if (kind === "punishments") {
      return on(
        h("form", { id: "punishment-entry", "data-activity": "SubmitEditPunishments" },
          h("input", { name: "student_id", placeholder: "student id" }),
          h("select", { name: "seriousness" },
            ...seriousnessOptions.map((level) =>
              h("option", { value: level }, level))),
          h("input", { name: "description", placeholder: "description" }),
          h("input", { name: "date", type: "date" }),
          h("button", { type: "submit" }, "Save punishment")),
        {
          submit: async (event) => {
            event.preventDefault();
            const form = event.target as HTMLElement;
            const saved = await this.guard(this.client.addPunishment(
              this.field(form, "student_id"),
              this.field(form, "seriousness"),
              this.field(form, "description"),
              this.field(form, "date")));
            if (saved) this.render();
          },
        },
      );
    }
    return on(
      h("form", { id: "reward-entry", "data-activity": "SubmitEditRewards" },
        h("input", { name: "student_id", placeholder: "student id" }),
        h("input", { name: "description", placeholder: "description" }),
        h("input", { name: "date", type: "date" }),
        h("button", { type: "submit" }, "Save reward")),
      {
        submit: async (event) => {
          event.preventDefault();
          const form = event.target as HTMLElement;
          const saved = await this.guard(this.client.addReward(
            this.field(form, "student_id"),
            this.field(form, "description"),
            this.field(form, "date")));
          if (saved) this.render();
        },
      },
    );
  }
}

export function boot(doc: Document, win: Window): App {
  const app = new App(doc, win);
  app.render();
  return app;
}

if (typeof document !== "undefined" && typeof window !== "undefined") {
  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", () => boot(document, window));
  } else {
    boot(document, window);
  }
}
