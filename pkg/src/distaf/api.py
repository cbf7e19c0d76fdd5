"""HTTP facade over templates, assessments, scorecards, reports and users.

Request handlers are stateless; every mutation funnels through the
assessment store's compare-and-set, and every response that carries an
assessment echoes its current revision so clients can detect conflicts.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from fastapi import Depends, FastAPI, Header, Query, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from . import errors
from .access import Role, SessionManager, User, UserStore, authz_check
from .framework import Phase
from .reports import (
    FingerprintLevel,
    compare,
    comparison_to_doc,
    export_assessment,
    fingerprint_series,
    fingerprint_to_doc,
)
from .scoring import scorecard_to_doc
from .store import AssessmentStore, Status, TemplateRepository, state_to_doc

_STATUS_CODES: tuple[tuple[type[Exception], int], ...] = (
    (errors.RevisionConflict, 409),
    (errors.NotDraft, 409),
    (errors.IncompleteAssessment, 409),
    (errors.DuplicateUsername, 409),
    (errors.DuplicateAssessment, 409),
    (errors.Forbidden, 403),
    (errors.UnknownTemplate, 404),
    (errors.UnknownAssessment, 404),
    (errors.UnknownPredecessor, 404),
    (errors.UnknownUser, 404),
    (errors.UnknownCode, 404),
    (errors.UnknownMechanism, 404),
    (errors.UnknownPillar, 404),
    (errors.UnknownStandard, 404),
    (errors.DistafError, 400),
)


@dataclass
class AppConfig:
    data_dir: Path
    template_dir: Path
    session_lifetime: float = 8 * 3600.0
    host: str = "127.0.0.1"
    port: int = 8300

    def __post_init__(self) -> None:
        self.data_dir = Path(self.data_dir)
        self.template_dir = Path(self.template_dir)


class LoginBody(BaseModel):
    username: str
    password: str


class PasswordBody(BaseModel):
    old_password: str
    new_password: str


class UserCreateBody(BaseModel):
    username: str
    role: Role


class RoleBody(BaseModel):
    role: Role


class AssessmentCreateBody(BaseModel):
    template_id: str
    description: str = ""
    from_id: str | None = None


class MetricsBody(BaseModel):
    revision: int
    values: dict[str, bool | float]


class AnswerBody(BaseModel):
    revision: int
    mechanism: str
    phase: Phase
    answer_index: int


class StandardBody(BaseModel):
    revision: int
    standard_id: str
    declared: bool = True


class ExclusionBody(BaseModel):
    revision: int
    mechanism: str
    excluded: bool


class StatusBody(BaseModel):
    revision: int
    status: Status


class AnswerOverlay(BaseModel):
    mechanism: str
    phase: Phase
    answer_index: int


class PreviewBody(BaseModel):
    values: dict[str, bool | float] = {}
    answers: list[AnswerOverlay] = []
    standards: dict[str, bool] = {}
    exclusions: dict[str, bool] = {}


def _user_doc(user: User) -> dict:
    return {
        "username": user.username,
        "role": user.role.value,
        "enabled": user.enabled,
        "must_change_password": user.must_change_password,
    }


def create_app(config: AppConfig) -> FastAPI:
    app = FastAPI(title="distaf", version="0.1.0")
    templates = TemplateRepository(config.template_dir)
    store = AssessmentStore(config.data_dir, templates)
    users = UserStore(config.data_dir / "users.json")
    sessions = SessionManager(config.session_lifetime)
    app.state.store = store
    app.state.templates = templates
    app.state.users = users
    app.state.sessions = sessions

    @app.exception_handler(errors.DistafError)
    async def domain_error(request: Request, exc: errors.DistafError):
        for etype, code in _STATUS_CODES:
            if isinstance(exc, etype):
                return JSONResponse(status_code=code, content={"detail": str(exc)})
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    class _Unauthenticated(errors.DistafError):
        pass

    @app.exception_handler(_Unauthenticated)
    async def unauthenticated(request: Request, exc: _Unauthenticated):
        return JSONResponse(status_code=401, content={"detail": str(exc)})

    def current_user(
        request: Request, authorization: str | None = Header(default=None)
    ) -> User:
        if not authorization or not authorization.startswith("Bearer "):
            raise _Unauthenticated("missing bearer token")
        username = sessions.resolve(authorization.removeprefix("Bearer "))
        if username is None:
            raise _Unauthenticated("invalid or expired token")
        try:
            user = users.get(username)
        except errors.UnknownUser:
            raise _Unauthenticated("unknown user") from None
        if not user.enabled:
            raise _Unauthenticated("account disabled")
        if user.must_change_password and request.url.path != "/password":
            raise errors.Forbidden("temporary password must be changed first")
        return user

    def authorize(user: User, action: str, status: Status | None = None) -> None:
        decision = authz_check(user.role, action, status)
        if not decision.allowed:
            raise errors.Forbidden(decision.reason)

    def readable_assessment(user: User, assessment_id: str):
        state = store.get(assessment_id)
        authorize(user, "read_assessment", state.status)
        return state

    # -- authentication ------------------------------------------------------

    @app.post("/login")
    def login(body: LoginBody):
        user = users.authenticate(body.username, body.password)
        if user is None:
            raise _Unauthenticated("bad credentials")
        token = sessions.issue(user.username)
        return {
            "token": token,
            "username": user.username,
            "role": user.role.value,
            "must_change_password": user.must_change_password,
        }

    @app.post("/password")
    def change_password(body: PasswordBody, user: User = Depends(current_user)):
        updated = users.change_password(user.username, body.old_password, body.new_password)
        return _user_doc(updated)

    # -- user administration (admin only) ------------------------------------

    @app.get("/users")
    def list_users(user: User = Depends(current_user)):
        authorize(user, "manage_users")
        return [_user_doc(users.get(name)) for name in users.usernames()]

    @app.post("/users", status_code=201)
    def create_user(body: UserCreateBody, user: User = Depends(current_user)):
        authorize(user, "manage_users")
        created, temp_password = users.create_user(user, body.username, body.role)
        return {**_user_doc(created), "temp_password": temp_password}

    @app.post("/users/{name}/disable")
    def disable_user(name: str, user: User = Depends(current_user)):
        authorize(user, "manage_users")
        updated = users.disable_user(user, name)
        sessions.revoke_user(name)
        return _user_doc(updated)

    @app.post("/users/{name}/password")
    def regenerate_password(name: str, user: User = Depends(current_user)):
        authorize(user, "manage_users")
        updated, temp_password = users.regenerate_password(user, name)
        sessions.revoke_user(name)
        return {**_user_doc(updated), "temp_password": temp_password}

    @app.post("/users/{name}/role")
    def set_role(name: str, body: RoleBody, user: User = Depends(current_user)):
        authorize(user, "manage_users")
        return _user_doc(users.set_role(user, name, body.role))

    # -- templates ------------------------------------------------------------

    @app.get("/templates")
    def list_templates(user: User = Depends(current_user)):
        out = []
        for template_id in templates.ids():
            t = templates.get(template_id)
            out.append({"id": t.id, "version": t.version, "pillars": len(t.pillars)})
        return out

    @app.get("/templates/{template_id}")
    def get_template(template_id: str, user: User = Depends(current_user)):
        t = templates.get(template_id)
        return _template_doc(t)

    # -- assessments ----------------------------------------------------------

    @app.get("/assessments")
    def list_assessments(user: User = Depends(current_user)):
        out = []
        for state in store.list():
            if authz_check(user.role, "read_assessment", state.status).allowed:
                out.append(
                    {
                        "id": state.id,
                        "description": state.description,
                        "template_id": state.template_id,
                        "status": state.status.value,
                        "revision": state.revision,
                        "last_modified": state.last_modified,
                    }
                )
        return out

    @app.post("/assessments", status_code=201)
    def create_assessment(body: AssessmentCreateBody, user: User = Depends(current_user)):
        authorize(user, "create_assessment")
        state = store.create_assessment(body.template_id, body.description, from_id=body.from_id)
        return state_to_doc(state)

    @app.get("/assessments/{assessment_id}")
    def get_assessment(assessment_id: str, user: User = Depends(current_user)):
        return state_to_doc(readable_assessment(user, assessment_id))

    @app.patch("/assessments/{assessment_id}/metrics")
    def patch_metrics(
        assessment_id: str, body: MetricsBody, user: User = Depends(current_user)
    ):
        state = store.get(assessment_id)
        authorize(user, "edit_assessment", state.status)
        return state_to_doc(store.apply_metric_values(assessment_id, body.revision, body.values))

    @app.post("/assessments/{assessment_id}/answers")
    def post_answer(assessment_id: str, body: AnswerBody, user: User = Depends(current_user)):
        state = store.get(assessment_id)
        authorize(user, "edit_assessment", state.status)
        return state_to_doc(
            store.choose_cluster_answer(
                assessment_id, body.revision, body.mechanism, body.phase, body.answer_index
            )
        )

    @app.post("/assessments/{assessment_id}/standards")
    def post_standard(assessment_id: str, body: StandardBody, user: User = Depends(current_user)):
        state = store.get(assessment_id)
        authorize(user, "edit_assessment", state.status)
        return state_to_doc(
            store.declare_standard(assessment_id, body.revision, body.standard_id, body.declared)
        )

    @app.post("/assessments/{assessment_id}/exclusions")
    def post_exclusion(
        assessment_id: str, body: ExclusionBody, user: User = Depends(current_user)
    ):
        state = store.get(assessment_id)
        authorize(user, "edit_assessment", state.status)
        return state_to_doc(
            store.set_mechanism_exclusion(
                assessment_id, body.revision, body.mechanism, body.excluded
            )
        )

    @app.post("/assessments/{assessment_id}/status")
    def post_status(assessment_id: str, body: StatusBody, user: User = Depends(current_user)):
        state = store.get(assessment_id)
        authorize(user, "edit_assessment", state.status)
        return state_to_doc(store.transition_status(assessment_id, body.revision, body.status))

    @app.post("/assessments/{assessment_id}/preview")
    def post_preview(assessment_id: str, body: PreviewBody, user: User = Depends(current_user)):
        state = store.get(assessment_id)
        authorize(user, "edit_assessment", state.status)
        card = store.preview(
            assessment_id,
            values=body.values,
            answers={(a.mechanism, a.phase): a.answer_index for a in body.answers},
            standards=body.standards,
            exclusions=body.exclusions,
        )
        return scorecard_to_doc(card)

    # -- reports ---------------------------------------------------------------

    @app.get("/assessments/{assessment_id}/scorecard")
    def get_scorecard(assessment_id: str, user: User = Depends(current_user)):
        readable_assessment(user, assessment_id)
        return scorecard_to_doc(store.scorecard(assessment_id))

    @app.get("/assessments/{assessment_id}/fingerprint")
    def get_fingerprint(
        assessment_id: str,
        level: FingerprintLevel = Query(default=FingerprintLevel.PILLARS),
        phase: Phase = Query(default=Phase.DESIGN),
        pillar: str | None = Query(default=None),
        user: User = Depends(current_user),
    ):
        state = readable_assessment(user, assessment_id)
        card = store.scorecard(assessment_id)
        t = templates.get(state.template_id)
        return fingerprint_to_doc(fingerprint_series(t, card, level, phase, pillar))

    @app.get("/assessments/{assessment_id}/export")
    def get_export(
        assessment_id: str,
        format: str = Query(default="dump"),
        user: User = Depends(current_user),
    ):
        state = store.get(assessment_id)
        authorize(user, "export", state.status)
        card = store.scorecard(assessment_id)
        t = templates.get(state.template_id)
        text = export_assessment(t, state, card, format)
        media = {"dump": "application/json", "tabular": "text/csv"}.get(format, "text/plain")
        return PlainTextResponse(text, media_type=media)

    @app.get("/compare")
    def get_compare(
        a: str = Query(...), b: str = Query(...), user: User = Depends(current_user)
    ):
        authorize(user, "compare")
        report = compare(store.scorecard(a), store.scorecard(b))
        return comparison_to_doc(report)

    return app


def _template_doc(t) -> dict:
    return {
        "id": t.id,
        "version": t.version,
        "pillars": [
            {
                "code": pillar.code,
                "name": pillar.name,
                "mechanism_weights": dict(pillar.mechanism_weights),
                "mechanisms": [
                    {
                        "code": mech.code,
                        "name": mech.name,
                        "metric_weights": {str(c): w for c, w in mech.metric_weights.items()},
                        "metrics": [
                            {
                                "code": str(m.code),
                                "title": m.title,
                                "description": m.description,
                                "kind": m.kind.value,
                                "transform": m.transform.value if m.transform else None,
                                "mandatory": (
                                    {
                                        "mechanism_cap": m.mandatory.mechanism_cap,
                                        "pillar_cap": m.mandatory.pillar_cap,
                                        "satisfied_when_at_least": m.mandatory.satisfied_when_at_least,
                                    }
                                    if m.mandatory
                                    else None
                                ),
                                "references": list(m.references),
                            }
                            for m in mech.metrics
                        ],
                        "cluster_questions": [
                            {
                                "phase": q.phase.value,
                                "prompt": q.prompt,
                                "answers": [
                                    {
                                        "label": ans.label,
                                        "configuration": {
                                            str(c): v for c, v in ans.configuration.items()
                                        },
                                    }
                                    for ans in q.answers
                                ],
                            }
                            for q in mech.cluster_questions
                        ],
                    }
                    for mech in pillar.mechanisms
                ],
            }
            for pillar in t.pillars
        ],
        "standards": [
            {
                "standard_id": s.standard_id,
                "display_name": s.display_name,
                "satisfied_metrics": sorted(str(c) for c in s.satisfied_metrics),
            }
            for s in t.standards
        ],
    }
