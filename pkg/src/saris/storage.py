"""Single-file embedded record store.

Keeps one keyed table per record kind in memory, enforces unique keys and
referential integrity on every commit, and persists the whole store as one
JSON snapshot written atomically (temp file + rename). Writers are
serialized behind a lock; readers always see the last committed snapshot
because commits swap table references instead of mutating them in place.
"""

from __future__ import annotations

import csv
import datetime
import hashlib
import json
import os
import tempfile
import threading
import typing
from dataclasses import dataclass, fields, replace
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Iterable, Optional

from . import domain
from .access import Role
from .domain import (
    AnnualReview,
    MajorField,
    Period,
    PunishSeriousness,
    Punishment,
    Reviewer,
    Reward,
    Scholarship,
    ScholarshipType,
    School,
    Student,
    StudentScore,
    Subject,
    Teacher,
    University,
    SERIOUSNESS_LEVELS,
)
from .errors import DuplicateKey, IntegrityViolation, NotFound, ValidationFailed

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class AuditEntry:
    """One append-only trail record per successful mutating operation."""

    audit_id: str
    actor_id: str
    role: str
    action: str
    timestamp: str
    details: str


@dataclass(frozen=True)
class Account:
    """Login principal. The digest is an opaque salted password hash."""

    account_id: str
    principal_id: str
    role: str
    secret_digest: str


def _validate_aux(entity, resolver) -> list[str]:
    out: list[str] = []
    if isinstance(entity, Account):
        if not entity.principal_id:
            out.append("principal_id must be non-empty")
        if not entity.secret_digest:
            out.append("secret_digest must be non-empty")
        if entity.role not in {r.value for r in Role}:
            out.append(f"role must be one of {[r.value for r in Role]}")
    return out


@dataclass(frozen=True)
class KindSpec:
    kind: type
    name: str
    pk: str
    unique: tuple[tuple[str, ...], ...] = ()
    refs: tuple[tuple[str, type], ...] = ()
    reference_data: bool = False
    order: Optional[tuple[str, ...]] = None
    validator: Callable[[Any, Any], list[str]] = domain.validate


_SPECS = (
    KindSpec(University, "universities", "university_id", reference_data=True),
    KindSpec(School, "schools", "school_id", refs=(("university_id", University),),
             reference_data=True),
    KindSpec(MajorField, "major_fields", "major_field_id", reference_data=True),
    KindSpec(Scholarship, "scholarships", "scholarship_id", reference_data=True),
    KindSpec(ScholarshipType, "scholarship_types", "scholarship_type_id", reference_data=True),
    KindSpec(Period, "periods", "period_id", reference_data=True),
    KindSpec(Teacher, "teachers", "teacher_id", unique=(("employee_id",),),
             refs=(("school_id", School),), reference_data=True),
    KindSpec(Student, "students", "student_id",
             refs=(("university_id", University), ("school_id", School),
                   ("major_field_id", MajorField), ("scholarship_id", Scholarship),
                   ("scholarship_type_id", ScholarshipType), ("period_id", Period)),
             reference_data=True),
    KindSpec(PunishSeriousness, "punish_seriousness", "seriousness_id",
             unique=(("label",),), reference_data=True),
    KindSpec(Reviewer, "reviewers", "reviewer_id", unique=(("employee_id",),),
             refs=(("school_id", School),)),
    KindSpec(Subject, "subjects", "subject_id", refs=(("major_field_id", MajorField),)),
    KindSpec(StudentScore, "student_scores", "score_id",
             unique=(("student_id", "subject_id"),),
             refs=(("student_id", Student), ("subject_id", Subject)),
             order=("student_id", "subject_id")),
    KindSpec(Punishment, "punishments", "punishment_id",
             refs=(("student_id", Student), ("seriousness_id", PunishSeriousness))),
    KindSpec(Reward, "rewards", "reward_id", refs=(("student_id", Student),)),
    KindSpec(AnnualReview, "annual_reviews", "review_id",
             unique=(("student_id", "academic_year"),),
             refs=(("student_id", Student), ("reviewer_id", Reviewer))),
    KindSpec(AuditEntry, "audit_entries", "audit_id", validator=_validate_aux),
    KindSpec(Account, "accounts", "account_id", unique=(("role", "principal_id"),),
             validator=_validate_aux),
)

REGISTRY: dict[type, KindSpec] = {spec.kind: spec for spec in _SPECS}
_BY_NAME: dict[str, KindSpec] = {spec.name: spec for spec in _SPECS}

# target kind -> [(source kind, field)] for dangling-reference scans on delete
_REVERSE_REFS: dict[type, list[tuple[type, str]]] = {}
for _spec in _SPECS:
    for _field, _target in _spec.refs:
        _REVERSE_REFS.setdefault(_target, []).append((_spec.kind, _field))


def sortable_id(value: Any) -> tuple:
    """Numeric ids order numerically, everything else lexicographically."""
    text = str(value)
    if text.isdigit():
        return (0, int(text), "")
    return (1, 0, text)


def _order_key(spec: KindSpec, entity) -> tuple:
    names = spec.order if spec.order else (spec.pk,)
    return tuple(sortable_id(getattr(entity, n)) for n in names)


# serialization -------------------------------------------------------------

_HINTS: dict[type, dict[str, type]] = {}


def _field_types(kind: type) -> dict[str, type]:
    if kind not in _HINTS:
        _HINTS[kind] = typing.get_type_hints(kind)
    return _HINTS[kind]


def _coerce(target: type, value: Any) -> Any:
    if typing.get_origin(target) is typing.Union:
        args = [a for a in typing.get_args(target) if a is not type(None)]
        if value is None or value == "":
            return None
        return _coerce(args[0], value)
    if value is None:
        return None
    if isinstance(target, type) and issubclass(target, Enum):
        return target(value)
    if target is datetime.date:
        if isinstance(value, datetime.date):
            return value
        return datetime.date.fromisoformat(str(value))
    if target is int:
        return int(value)
    if target is float:
        return float(value)
    if target is str:
        return str(value)
    return value


def to_record(entity) -> dict[str, Any]:
    """Dataclass entity to a JSON-safe dict (enums to values, dates to ISO)."""
    out: dict[str, Any] = {}
    for f in fields(entity):
        value = getattr(entity, f.name)
        if isinstance(value, Enum):
            value = value.value
        elif isinstance(value, datetime.date):
            value = value.isoformat()
        out[f.name] = value
    return out


def from_record(kind: type, record: dict[str, Any]):
    """Rebuild an entity from a dict of JSON or CSV values."""
    hints = _field_types(kind)
    kwargs = {}
    for f in fields(kind):
        if f.name in record:
            kwargs[f.name] = _coerce(hints[f.name], record[f.name])
    return kind(**kwargs)


# transactions --------------------------------------------------------------

class Transaction:
    """Ordered list of put/delete intents, committed atomically."""

    def __init__(self):
        self.intents: list[tuple] = []

    def put(self, entity) -> "Transaction":
        self.intents.append(("put", entity))
        return self

    def delete(self, kind: type, entity_id: str) -> "Transaction":
        self.intents.append(("delete", kind, entity_id))
        return self


class _Staged:
    """Post-state view a transaction validates against (Resolver protocol)."""

    def __init__(self, tables: dict[type, dict[str, Any]]):
        self.tables = tables

    def get(self, kind: type, entity_id: str):
        return self.tables[kind].get(str(entity_id))

    def find_one(self, kind: type, **equals):
        for entity in self.tables[kind].values():
            if all(getattr(entity, k) == v for k, v in equals.items()):
                return entity
        return None


class EntityStore:
    """Keyed collections for every record kind, with constraint enforcement.

    Pass a path to persist; without one the store lives in memory only.
    """

    def __init__(self, path: str | Path | None = None):
        self._path = Path(path) if path is not None else None
        self._lock = threading.RLock()
        self._tables: dict[type, dict[str, Any]] = {spec.kind: {} for spec in _SPECS}
        self._counters: dict[type, int] = {spec.kind: 1 for spec in _SPECS}
        self._unique: dict[tuple[type, tuple[str, ...]], dict[tuple, str]] = {
            (spec.kind, key): {} for spec in _SPECS for key in spec.unique
        }
        if self._path is not None and self._path.exists():
            self._load()
        else:
            self._seed_builtin_levels()

    # reads ------------------------------------------------------------

    def get(self, kind: type, entity_id: str):
        return self._tables[kind].get(str(entity_id))

    def find_one(self, kind: type, **equals):
        for entity in self._tables[kind].values():
            if all(getattr(entity, k) == v for k, v in equals.items()):
                return entity
        return None

    def query(self, kind: type, predicate: Callable[[Any], bool] | None = None, **equals) -> list:
        spec = REGISTRY[kind]
        rows = []
        for entity in self._tables[kind].values():
            if equals and not all(getattr(entity, k) == v for k, v in equals.items()):
                continue
            if predicate is not None and not predicate(entity):
                continue
            rows.append(entity)
        rows.sort(key=lambda e: _order_key(spec, e))
        return rows

    def census(self) -> dict[str, int]:
        return {spec.name: len(self._tables[spec.kind]) for spec in _SPECS}

    def state_digest(self) -> str:
        """SHA-256 over the canonical serialized state."""
        payload = json.dumps(self._serialize(), sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()

    # writes -----------------------------------------------------------

    def put(self, entity):
        return self.apply(Transaction().put(entity))[0]

    def delete(self, kind: type, entity_id: str) -> None:
        self.apply(Transaction().delete(kind, entity_id))

    def apply(self, txn: Transaction) -> list:
        """Commit all intents or none; constraints checked on the post-state."""
        with self._lock:
            staged_tables = dict(self._tables)
            staged_counters = dict(self._counters)
            staged_unique = dict(self._unique)
            touched: set[type] = set()

            def stage(kind: type) -> dict[str, Any]:
                if kind not in touched:
                    staged_tables[kind] = dict(staged_tables[kind])
                    touched.add(kind)
                return staged_tables[kind]

            stored: list = []
            puts: list = []
            for intent in txn.intents:
                if intent[0] == "put":
                    entity = intent[1]
                    kind = type(entity)
                    spec = REGISTRY.get(kind)
                    if spec is None:
                        raise TypeError(f"unregistered entity type: {kind.__name__}")
                    table = stage(kind)
                    pk = getattr(entity, spec.pk)
                    if pk is None or pk == "":
                        pk = str(staged_counters[kind])
                        staged_counters[kind] += 1
                        entity = replace(entity, **{spec.pk: pk})
                    else:
                        pk = str(pk)
                        if pk.isdigit():
                            staged_counters[kind] = max(staged_counters[kind], int(pk) + 1)
                    table[pk] = entity
                    puts.append(entity)
                    stored.append(entity)
                else:
                    _, kind, entity_id = intent
                    spec = REGISTRY[kind]
                    table = stage(kind)
                    entity_id = str(entity_id)
                    existing = table.get(entity_id)
                    if existing is None:
                        raise NotFound(f"no {spec.name} record {entity_id!r}")
                    self._check_deletable(spec, existing)
                    del table[entity_id]
                    stored.append(None)

            view = _Staged(staged_tables)
            for entity in puts:
                spec = REGISTRY[type(entity)]
                intrinsic = spec.validator(entity, None)
                if intrinsic:
                    raise ValidationFailed(intrinsic)
                for field_name, target in spec.refs:
                    value = getattr(entity, field_name)
                    if value is not None and view.get(target, value) is None:
                        raise IntegrityViolation(
                            f"{spec.name}.{field_name} {value!r} does not resolve"
                        )
                contextual = spec.validator(entity, view)
                if contextual:
                    raise ValidationFailed(contextual)

            # unique keys are checked by rebuilding each touched index from
            # the post-state, so replacements and intra-txn swaps stay legal
            for kind in touched:
                spec = REGISTRY[kind]
                for key in spec.unique:
                    index: dict[tuple, str] = {}
                    for pk, entity in staged_tables[kind].items():
                        key_value = tuple(getattr(entity, f) for f in key)
                        if key_value in index:
                            raise DuplicateKey(
                                f"{spec.name} unique key {key} already holds {key_value!r}"
                            )
                        index[key_value] = pk
                    staged_unique[(kind, key)] = index

            for intent in txn.intents:
                if intent[0] == "delete":
                    self._check_dangling(intent[1], str(intent[2]), staged_tables)

            self._tables = staged_tables
            self._counters = staged_counters
            self._unique = staged_unique
            if self._path is not None:
                self.save()
            return stored

    def _check_deletable(self, spec: KindSpec, entity) -> None:
        if spec.reference_data or spec.kind is AuditEntry:
            raise IntegrityViolation(f"{spec.name} records are never deleted")
        if spec.kind is AnnualReview and entity.status is domain.ReviewStatus.VERIFIED:
            raise IntegrityViolation("verified reviews are never deleted")

    def _check_dangling(self, kind: type, entity_id: str,
                        tables: dict[type, dict[str, Any]]) -> None:
        if entity_id in tables[kind]:
            return  # re-inserted later in the same transaction
        for source_kind, field_name in _REVERSE_REFS.get(kind, []):
            for entity in tables[source_kind].values():
                if getattr(entity, field_name) == entity_id:
                    raise IntegrityViolation(
                        f"{REGISTRY[source_kind].name}.{field_name} still references "
                        f"deleted {REGISTRY[kind].name} {entity_id!r}"
                    )

    def verify_integrity(self) -> list[str]:
        """Full-store scan; returns all dangling references (empty when sound)."""
        problems = []
        view = _Staged(self._tables)
        for spec in _SPECS:
            for entity in self._tables[spec.kind].values():
                for field_name, target in spec.refs:
                    value = getattr(entity, field_name)
                    if value is not None and view.get(target, value) is None:
                        raise_id = getattr(entity, spec.pk)
                        problems.append(
                            f"{spec.name} {raise_id!r}: {field_name} {value!r} dangles"
                        )
        return problems

    # persistence ------------------------------------------------------

    def _serialize(self) -> dict[str, Any]:
        tables = {}
        for spec in _SPECS:
            rows = [to_record(e) for e in self.query(spec.kind)]
            tables[spec.name] = rows
        return {
            "schema_version": SCHEMA_VERSION,
            "tables": tables,
            "counters": {spec.name: self._counters[spec.kind] for spec in _SPECS},
        }

    def save(self) -> None:
        if self._path is None:
            return
        with self._lock:
            payload = json.dumps(self._serialize(), indent=1, sort_keys=True)
            self._path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=str(self._path.parent), suffix=".tmp")
            try:
                with os.fdopen(fd, "w") as handle:
                    handle.write(payload)
                os.replace(tmp, self._path)
            finally:
                if os.path.exists(tmp):
                    os.unlink(tmp)

    def _load(self) -> None:
        raw = json.loads(self._path.read_text())
        if raw.get("schema_version") != SCHEMA_VERSION:
            raise IntegrityViolation(
                f"unsupported store schema version {raw.get('schema_version')!r}"
            )
        for spec in _SPECS:
            table = {}
            for record in raw.get("tables", {}).get(spec.name, []):
                entity = from_record(spec.kind, record)
                table[str(getattr(entity, spec.pk))] = entity
            self._tables[spec.kind] = table
            self._counters[spec.kind] = int(raw.get("counters", {}).get(spec.name, 1))
        problems = self.verify_integrity()
        if problems:
            raise IntegrityViolation("; ".join(problems))
        for spec in _SPECS:
            for key in spec.unique:
                index: dict[tuple, str] = {}
                for pk, entity in self._tables[spec.kind].items():
                    key_value = tuple(getattr(entity, f) for f in key)
                    if key_value in index:
                        raise DuplicateKey(
                            f"{spec.name} unique key {key} duplicated in file"
                        )
                    index[key_value] = pk
                self._unique[(spec.kind, key)] = index

    def _seed_builtin_levels(self) -> None:
        txn = Transaction()
        for rank, label in enumerate(SERIOUSNESS_LEVELS, start=1):
            txn.put(PunishSeriousness(seriousness_id=str(rank), label=label))
        self.apply(txn)

    # fixtures ---------------------------------------------------------

    def seed_from_dir(self, directory: str | Path) -> dict[str, int]:
        """Load one CSV per entity table (header row = field names) in one
        commit. Accounts and audit entries are service records, not seed
        tables, so their files are left to the service layer."""
        directory = Path(directory)
        counts: dict[str, int] = {}
        txn = Transaction()
        for spec in _SPECS:
            if spec.kind in (Account, AuditEntry):
                continue
            csv_path = directory / f"{spec.name}.csv"
            if not csv_path.exists():
                continue
            with csv_path.open(newline="") as handle:
                rows = list(csv.DictReader(handle))
            for row in rows:
                txn.put(from_record(spec.kind, row))
            counts[spec.name] = len(rows)
        if txn.intents:
            self.apply(txn)
        return counts
