// Form and panel state, plus the mapping from each form field to exactly
// one API payload field. Views render these; the client sends them.

import type {
  Prediction,
  ReviewRecord,
  ScholarshipStatus,
  TrainSummary,
} from "./types.js";
import { SCHOLARSHIP_STATUSES, SERIOUSNESS_LEVELS } from "./types.js";

export interface FieldErrors {
  [field: string]: string;
}

// review submission ---------------------------------------------------

export interface ReviewForm {
  academicYear: string;
  studentSummary: string;
}

export function emptyReviewForm(): ReviewForm {
  return { academicYear: String(new Date().getFullYear()), studentSummary: "" };
}

export function validateReviewForm(form: ReviewForm): FieldErrors {
  const errors: FieldErrors = {};
  const year = Number(form.academicYear);
  if (!Number.isInteger(year) || year < 1900 || year > 2999) {
    errors.academicYear = "enter a four-digit year";
  }
  if (!form.studentSummary.trim()) {
    errors.studentSummary = "the summary cannot be empty";
  }
  return errors;
}

export function reviewFormPayload(form: ReviewForm): {
  academic_year: number;
  student_summary: string;
} {
  return {
    academic_year: Number(form.academicYear),
    student_summary: form.studentSummary,
  };
}

// verification queue --------------------------------------------------

export interface QueueItem {
  reviewId: string;
  studentId: string;
  academicYear: number;
  studentSummary: string;
  scoreSnapshot: string;
  punishmentSnapshot: string;
  rewardSnapshot: string;
  decisionOptions: readonly ["Approve", "Disapprove"];
}

export function queueItem(review: ReviewRecord): QueueItem {
  return {
    reviewId: review.review_id,
    studentId: review.student_id,
    academicYear: review.academic_year,
    studentSummary: review.student_summary,
    scoreSnapshot: review.academic_score_snapshot,
    punishmentSnapshot: review.punishments_snapshot,
    rewardSnapshot: review.rewards_snapshot,
    decisionOptions: ["Approve", "Disapprove"],
  };
}

// record entry --------------------------------------------------------

export interface ScoreForm {
  studentId: string;
  subjectId: string;
  marksObtained: string;
  hoursAttended: string;
}

export function validateScoreForm(form: ScoreForm): FieldErrors {
  const errors: FieldErrors = {};
  if (!form.studentId.trim()) errors.studentId = "student id required";
  if (!form.subjectId.trim()) errors.subjectId = "subject id required";
  if (Number.isNaN(Number(form.marksObtained)) || form.marksObtained === "") {
    errors.marksObtained = "marks must be a number";
  }
  if (Number.isNaN(Number(form.hoursAttended)) || form.hoursAttended === "") {
    errors.hoursAttended = "hours must be a number";
  }
  return errors;
}

export function scoreFormPayload(form: ScoreForm): {
  marks_obtained: number;
  hours_attended: number;
} {
  return {
    marks_obtained: Number(form.marksObtained),
    hours_attended: Number(form.hoursAttended),
  };
}

export interface PunishmentForm {
  studentId: string;
  seriousness: string;
  description: string;
  date: string;
}

export const seriousnessOptions = SERIOUSNESS_LEVELS;

export function punishmentFormPayload(form: PunishmentForm): {
  seriousness: string;
  description: string;
  date: string;
} {
  return {
    seriousness: form.seriousness,
    description: form.description,
    date: form.date,
  };
}

export interface RewardForm {
  studentId: string;
  description: string;
  date: string;
}

export function rewardFormPayload(form: RewardForm): {
  description: string;
  date: string;
} {
  return { description: form.description, date: form.date };
}

// status editor -------------------------------------------------------

export interface StatusEditor {
  studentId: string;
  current: ScholarshipStatus | null;
  options: readonly ScholarshipStatus[];
  selected: ScholarshipStatus;
}

export function statusEditor(
  studentId: string,
  current: ScholarshipStatus | null,
): StatusEditor {
  return {
    studentId,
    current,
    options: SCHOLARSHIP_STATUSES,
    selected: current ?? "Active",
  };
}

export function statusPayload(editor: StatusEditor): { status: ScholarshipStatus } {
  return { status: editor.selected };
}

// prediction panel ----------------------------------------------------

export interface PredictionPanel {
  trained: boolean;
  nodeCount: number | null;
  trainingAccuracy: number | null;
  treeOutline: string[];
  features: number[] | null;
  label: string | null;
  confidencePercent: string | null;
}

export function predictionPanel(
  train: TrainSummary | null,
  prediction: Prediction | null,
): PredictionPanel {
  return {
    trained: train !== null,
    nodeCount: train ? train.node_count : null,
    trainingAccuracy: train ? train.accuracy : null,
    // the outline is the model's own textual form, one node per line,
    // indentation preserved
    treeOutline: train ? train.tree.replace(/\n$/, "").split("\n") : [],
    features: prediction ? prediction.features : null,
    label: prediction ? prediction.label : null,
    confidencePercent: prediction
      ? `${(prediction.confidence * 100).toFixed(1)}%`
      : null,
  };
}
