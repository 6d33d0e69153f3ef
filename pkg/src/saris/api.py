"""HTTP service tying the workflow, dataset export and predictor together.

Sessions are bearer tokens (128-bit random hex) with a fixed time to live.
Role checks live in the workflow layer; the three administrative endpoints
(dataset download, train, predict) are gated here to the administration
role. All error responses carry {"error": code, "message": text}.
"""

from __future__ import annotations

import csv
import datetime
import hashlib
import hmac
import secrets
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from fastapi import Depends, FastAPI, HTTPException, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import c45, dataset
from .access import Role
from .domain import ReviewDecision, Reviewer, ReviewStatus, ScholarshipStatus, Student
from .errors import (
    AlreadyRegistered,
    ArityMismatch,
    BadField,
    BadFoldCount,
    BadHeader,
    DegenerateSplit,
    DuplicateKey,
    DuplicateReview,
    EmptySet,
    EmptyTrainingSet,
    IntegrityViolation,
    InvalidState,
    NoMatchingTeacher,
    NoModel,
    NotFound,
    PermissionDenied,
    SarisError,
    ScopeViolation,
    UnknownLevel,
    ValidationFailed,
)
from .storage import Account, EntityStore, Transaction, to_record
from .workflow import Actor, ReviewWorkflow

SESSION_TTL_SECONDS = 8 * 3600
PBKDF2_ITERATIONS = 60_000

_STATUS_BY_ERROR: list[tuple[type, int]] = [
    (PermissionDenied, 403),
    (ScopeViolation, 403),
    (NotFound, 404),
    (NoMatchingTeacher, 404),
    (InvalidState, 409),
    (DuplicateReview, 409),
    (AlreadyRegistered, 409),
    (DuplicateKey, 409),
    (NoModel, 409),
    (ValidationFailed, 422),
    (UnknownLevel, 422),
    (BadField, 422),
    (BadHeader, 422),
    (IntegrityViolation, 422),
    (EmptyTrainingSet, 422),
    (ArityMismatch, 422),
    (BadFoldCount, 422),
    (EmptySet, 422),
    (DegenerateSplit, 422),
]


def status_for(error: SarisError) -> int:
    for kind, status in _STATUS_BY_ERROR:
        if isinstance(error, kind):
            return status
    return 500


# credentials ----------------------------------------------------------------


def hash_password(password: str, iterations: int = PBKDF2_ITERATIONS) -> str:
    salt = secrets.token_hex(16)
    digest = hashlib.pbkdf2_hmac(
        "sha256", password.encode(), bytes.fromhex(salt), iterations
    ).hex()
    return f"pbkdf2-sha256${iterations}${salt}${digest}"


def verify_password(stored_digest: str, password: str) -> bool:
    try:
        scheme, iterations, salt, digest = stored_digest.split("$")
        if scheme != "pbkdf2-sha256":
            return False
        candidate = hashlib.pbkdf2_hmac(
            "sha256", password.encode(), bytes.fromhex(salt), int(iterations)
        ).hex()
    except (ValueError, TypeError):
        return False
    return hmac.compare_digest(candidate, digest)


def create_account(store: EntityStore, principal_id: str, role: Role,
                   password: str) -> Account:
    return store.put(Account(
        account_id="",
        principal_id=principal_id,
        role=role.value,
        secret_digest=hash_password(password),
    ))


def seed_accounts(store: EntityStore, csv_path: str | Path) -> int:
    """Provision login principals from a CSV of principal_id,role,password."""
    count = 0
    txn = Transaction()
    with Path(csv_path).open(newline="") as handle:
        for row in csv.DictReader(handle):
            txn.put(Account(
                account_id="",
                principal_id=row["principal_id"],
                role=row["role"],
                secret_digest=hash_password(row["password"]),
            ))
            count += 1
    if count:
        store.apply(txn)
    return count


def authenticate(store: EntityStore, identifier: str,
                 password: str) -> Optional[Actor]:
    """Resolve an identifier against all three principal stores."""
    account = store.find_one(Account, role=Role.STUDENT.value, principal_id=identifier)
    if account and verify_password(account.secret_digest, password):
        student = store.get(Student, identifier)
        if student is not None:
            return Actor(principal_id=identifier, role=Role.STUDENT,
                         student_id=identifier)
    reviewer = store.find_one(Reviewer, employee_id=identifier)
    if reviewer and verify_password(reviewer.credentials, password):
        return Actor(principal_id=reviewer.reviewer_id, role=Role.REVIEWER,
                     school_id=reviewer.school_id)
    account = store.find_one(Account, role=Role.CSC.value, principal_id=identifier)
    if account and verify_password(account.secret_digest, password):
        return Actor(principal_id=identifier, role=Role.CSC)
    return None


def display_name(store: EntityStore, actor: Actor) -> str:
    if actor.role is Role.STUDENT:
        student = store.get(Student, actor.principal_id)
        return student.name if student else actor.principal_id
    if actor.role is Role.REVIEWER:
        reviewer = store.get(Reviewer, actor.principal_id)
        return reviewer.name if reviewer else actor.principal_id
    return actor.principal_id


# sessions -------------------------------------------------------------------


@dataclass(frozen=True)
class Session:
    token: str
    actor: Actor
    issued_at: float
    ttl: float


class SessionManager:
    def __init__(self, ttl_seconds: float = SESSION_TTL_SECONDS,
                 clock: Callable[[], float] = time.time):
        self._sessions: dict[str, Session] = {}
        self._ttl = ttl_seconds
        self._clock = clock
        self._lock = threading.Lock()

    def issue(self, actor: Actor) -> Session:
        session = Session(
            token=secrets.token_hex(16),
            actor=actor,
            issued_at=self._clock(),
            ttl=self._ttl,
        )
        with self._lock:
            self._sessions[session.token] = session
        return session

    def resolve(self, token: str) -> Optional[Actor]:
        with self._lock:
            session = self._sessions.get(token)
            if session is None:
                return None
            if self._clock() - session.issued_at > session.ttl:
                del self._sessions[token]
                return None
            return session.actor

    def revoke(self, token: str) -> None:
        with self._lock:
            self._sessions.pop(token, None)


# request bodies ---------------------------------------------------------------


class LoginRequest(BaseModel):
    identifier: str
    password: str


class RegisterReviewerRequest(BaseModel):
    name: str
    employee_id: str
    password: str


class SubmitReviewRequest(BaseModel):
    academic_year: int
    student_summary: str


class EditReviewRequest(BaseModel):
    student_summary: Optional[str] = None
    reviewer_summary: Optional[str] = None


class VerifyReviewRequest(BaseModel):
    reviewer_summary: str
    decision: str


class ScoreRequest(BaseModel):
    marks_obtained: float
    hours_attended: float


class PunishmentRequest(BaseModel):
    seriousness: str
    description: str
    date: str


class RewardRequest(BaseModel):
    description: str
    date: str


class StatusRequest(BaseModel):
    status: str


class TrainRequest(BaseModel):
    pruning: bool = True
    min_leaf: int = 2
    confidence_factor: float = 0.25


class PredictRequest(BaseModel):
    student_id: Optional[str] = None
    features: Optional[list[int]] = None


# app ---------------------------------------------------------------------------


def _reviewer_json(reviewer: Reviewer) -> dict:
    record = to_record(reviewer)
    record.pop("credentials", None)
    return record


def _parse_date(value: str) -> datetime.date:
    try:
        return datetime.date.fromisoformat(value)
    except ValueError:
        raise ValidationFailed([f"bad date {value!r}, expected YYYY-MM-DD"]) from None


def create_app(store: EntityStore,
               session_ttl_seconds: float = SESSION_TTL_SECONDS,
               clock: Callable[[], float] = time.time,
               static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="saris", docs_url=None, redoc_url=None)
    app.state.store = store
    app.state.sessions = SessionManager(ttl_seconds=session_ttl_seconds, clock=clock)
    app.state.workflow = ReviewWorkflow(store)
    app.state.model = None
    app.state.model_lock = threading.Lock()

    @app.exception_handler(SarisError)
    async def saris_error_handler(request: Request, error: SarisError):
        return JSONResponse(
            status_code=status_for(error),
            content={"error": error.code, "message": str(error)},
        )

    @app.exception_handler(HTTPException)
    async def http_error_handler(request: Request, error: HTTPException):
        detail = error.detail
        if not isinstance(detail, dict):
            detail = {"error": "HTTPError", "message": str(detail)}
        return JSONResponse(status_code=error.status_code, content=detail)

    def current_actor(request: Request) -> Actor:
        header = request.headers.get("authorization", "")
        token = header.removeprefix("Bearer ").strip()
        actor = app.state.sessions.resolve(token) if token else None
        if actor is None:
            raise HTTPException(
                status_code=401,
                detail={"error": "Unauthorized", "message": "invalid or expired session"},
            )
        return actor

    def require_admin(actor: Actor) -> None:
        if actor.role is not Role.CSC:
            raise PermissionDenied("administrative endpoint")

    wf: ReviewWorkflow = app.state.workflow

    @app.post("/api/login")
    def login(body: LoginRequest):
        actor = authenticate(store, body.identifier, body.password)
        if actor is None:
            # one message for every failure mode: no existence leaks
            raise HTTPException(
                status_code=401,
                detail={"error": "Unauthorized", "message": "invalid credentials"},
            )
        session = app.state.sessions.issue(actor)
        return {
            "token": session.token,
            "role": actor.role.value,
            "principal_id": actor.principal_id,
            "display_name": display_name(store, actor),
        }

    @app.post("/api/reviewers", status_code=201)
    def register_reviewer(body: RegisterReviewerRequest, request: Request):
        header = request.headers.get("authorization", "")
        token = header.removeprefix("Bearer ").strip()
        if token:
            actor = app.state.sessions.resolve(token)
            if actor is not None and actor.role is not Role.REVIEWER:
                raise PermissionDenied(f"{actor.role.value} may not Register")
        reviewer = wf.register_reviewer(
            body.name, body.employee_id, hash_password(body.password)
        )
        return _reviewer_json(reviewer)

    @app.post("/api/reviews", status_code=201)
    def submit_review(body: SubmitReviewRequest,
                      actor: Actor = Depends(current_actor)):
        review = wf.submit_annual_review(actor, body.academic_year, body.student_summary)
        return to_record(review)

    @app.get("/api/reviews")
    def list_reviews(actor: Actor = Depends(current_actor),
                     student_id: Optional[str] = None,
                     status: Optional[str] = None):
        parsed_status = ReviewStatus(status) if status else None
        reviews = wf.list_reviews(actor, student_id=student_id, status=parsed_status)
        return [to_record(r) for r in reviews]

    @app.get("/api/reviews/{review_id}")
    def get_review(review_id: str, actor: Actor = Depends(current_actor)):
        return to_record(wf.get_review(actor, review_id))

    @app.put("/api/reviews/{review_id}")
    def edit_review(review_id: str, body: EditReviewRequest,
                    actor: Actor = Depends(current_actor)):
        review = wf.edit_annual_review(
            actor, review_id,
            student_summary=body.student_summary,
            reviewer_summary=body.reviewer_summary,
        )
        return to_record(review)

    @app.post("/api/reviews/{review_id}/verify")
    def verify_review(review_id: str, body: VerifyReviewRequest,
                      actor: Actor = Depends(current_actor)):
        try:
            decision = ReviewDecision(body.decision)
        except ValueError:
            raise ValidationFailed(
                [f"decision must be one of {[d.value for d in ReviewDecision]}"]
            ) from None
        review = wf.verify_annual_review(actor, review_id, body.reviewer_summary,
                                         decision)
        return to_record(review)

    @app.put("/api/students/{student_id}/scores/{subject_id}")
    def put_score(student_id: str, subject_id: str, body: ScoreRequest,
                  actor: Actor = Depends(current_actor)):
        score = wf.record_score(actor, student_id, subject_id,
                                body.marks_obtained, body.hours_attended)
        return to_record(score)

    @app.get("/api/students/{student_id}/scores")
    def get_scores(student_id: str, actor: Actor = Depends(current_actor)):
        return [to_record(s) for s in wf.view_scores(actor, student_id)]

    @app.post("/api/students/{student_id}/punishments", status_code=201)
    def post_punishment(student_id: str, body: PunishmentRequest,
                        actor: Actor = Depends(current_actor)):
        punishment = wf.record_punishment(
            actor, student_id, body.seriousness, body.description,
            _parse_date(body.date),
        )
        return to_record(punishment)

    @app.get("/api/students/{student_id}/punishments")
    def get_punishments(student_id: str, actor: Actor = Depends(current_actor)):
        return [to_record(p) for p in wf.view_punishments(actor, student_id)]

    @app.post("/api/students/{student_id}/rewards", status_code=201)
    def post_reward(student_id: str, body: RewardRequest,
                    actor: Actor = Depends(current_actor)):
        reward = wf.record_reward(actor, student_id, body.description,
                                  _parse_date(body.date))
        return to_record(reward)

    @app.get("/api/students/{student_id}/rewards")
    def get_rewards(student_id: str, actor: Actor = Depends(current_actor)):
        return [to_record(r) for r in wf.view_rewards(actor, student_id)]

    @app.get("/api/students/{student_id}/scholarship-status")
    def get_status(student_id: str, actor: Actor = Depends(current_actor)):
        status = wf.view_scholarship_status(actor, student_id)
        return {"student_id": student_id, "scholarship_status": status.value}

    @app.put("/api/students/{student_id}/scholarship-status")
    def put_status(student_id: str, body: StatusRequest,
                   actor: Actor = Depends(current_actor)):
        try:
            status = ScholarshipStatus(body.status)
        except ValueError:
            raise ValidationFailed(
                [f"status must be one of {[s.value for s in ScholarshipStatus]}"]
            ) from None
        student = wf.set_scholarship_status(actor, student_id, status)
        return {"student_id": student.student_id,
                "scholarship_status": student.scholarship_status.value}

    @app.get("/api/dataset.csv")
    def dataset_csv(actor: Actor = Depends(current_actor)):
        require_admin(actor)
        body = dataset.export_csv(dataset.derive_dataset(store))
        return Response(content=body, media_type="text/csv")

    @app.post("/api/model/train")
    def train(body: TrainRequest, actor: Actor = Depends(current_actor)):
        require_admin(actor)
        rows = dataset.derive_dataset(store)
        training = c45.TrainingSet.from_dataset_rows(rows)
        config = c45.TrainConfig(
            min_leaf=body.min_leaf,
            confidence_factor=body.confidence_factor,
            pruning=body.pruning,
        )
        tree = c45.build_tree(training, config)
        with app.state.model_lock:
            app.state.model = tree
        metrics = c45.evaluate(tree, training)
        return {
            "node_count": c45.node_count(tree.root),
            "depth": c45.depth(tree.root),
            "n_rows": metrics.n,
            "accuracy": metrics.accuracy,
            "tree": c45.to_text(tree),
        }

    @app.post("/api/model/predict")
    def predict(body: PredictRequest, actor: Actor = Depends(current_actor)):
        require_admin(actor)
        model = app.state.model
        if model is None:
            raise NoModel("train a model before predicting")
        if body.student_id is not None:
            row = dataset.derive_row(body.student_id, store)
            features = [float(v) for v in row.features()]
        elif body.features is not None:
            if len(body.features) != len(model.feature_names) or any(
                v < 0 for v in body.features
            ):
                raise ValidationFailed(
                    [f"features must be {len(model.feature_names)} nonnegative counts"]
                )
            features = [float(v) for v in body.features]
        else:
            raise ValidationFailed(["provide student_id or features"])
        label, confidence = c45.predict(model, features)
        return {"label": label, "confidence": confidence, "features": features}

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=str(static_dir), html=True),
                  name="ui")

    return app
