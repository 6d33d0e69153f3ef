// Wire types mirroring the HTTP API. Field names are the server's
// lower_snake_case; the UI never invents fields of its own.

export type Role = "Student" | "Reviewer" | "CSC";

export interface UiSession {
  token: string;
  role: Role;
  principalId: string;
  displayName: string;
}

export interface LoginResponse {
  token: string;
  role: Role;
  principal_id: string;
  display_name: string;
}

export type ReviewStatus = "Submitted" | "Verified";
export type ReviewDecision = "Approve" | "Disapprove";
export type ScholarshipStatus = "Active" | "Continued" | "Suspended" | "Terminated";

export interface ReviewRecord {
  review_id: string;
  student_id: string;
  academic_year: number;
  student_summary: string;
  academic_score_snapshot: string;
  punishments_snapshot: string;
  rewards_snapshot: string;
  status: ReviewStatus;
  reviewer_summary: string | null;
  reviewer_id: string | null;
  decision: ReviewDecision | null;
}

export interface ScoreRecord {
  score_id: string;
  student_id: string;
  subject_id: string;
  marks_obtained: number;
  hours_attended: number;
}

export interface PunishmentRecord {
  punishment_id: string;
  student_id: string;
  seriousness_id: string;
  description: string;
  date: string;
}

export interface RewardRecord {
  reward_id: string;
  student_id: string;
  description: string;
  date: string;
}

export interface ReviewerRecord {
  reviewer_id: string;
  employee_id: string;
  name: string;
  school_id: string;
}

export interface StatusResponse {
  student_id: string;
  scholarship_status: ScholarshipStatus;
}

export interface TrainSummary {
  node_count: number;
  depth: number;
  n_rows: number;
  accuracy: number;
  tree: string;
}

export interface Prediction {
  label: "YES" | "NO";
  confidence: number;
  features: number[];
}

export const SERIOUSNESS_LEVELS = [
  "Warning",
  "Serious Warning1",
  "Serious Warning2",
  "Dismissal",
] as const;

export const SCHOLARSHIP_STATUSES: readonly ScholarshipStatus[] = [
  "Active",
  "Continued",
  "Suspended",
  "Terminated",
];
