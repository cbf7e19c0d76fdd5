"""Users, credentials, sessions and the role/action authorization matrix.

Three roles: admins manage user accounts (and may read public results),
assessors run assessments end to end, externals get read-only access to
public assessments.  Authorization is a pure function of (role, action,
resource status) so it can be tested cell by cell.
"""
from __future__ import annotations

import hashlib
import hmac
import json
import os
import secrets
import threading
import time
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

from .errors import DuplicateUsername, Forbidden, UnknownUser
from .store import Status


class Role(str, Enum):
    ADMIN = "admin"
    ASSESSOR = "assessor"
    EXTERNAL = "external"


ACTIONS = (
    "manage_users",
    "create_assessment",
    "edit_assessment",
    "read_assessment",
    "compare",
    "export",
)


@dataclass(frozen=True)
class AuthzDecision:
    allowed: bool
    reason: str


def authz_check(role: Role, action: str, status: Status | None = None) -> AuthzDecision:
    """Decide whether ``role`` may perform ``action`` on a resource in
    ``status``.  Status is ignored for actions without a target resource."""
    if action not in ACTIONS:
        return AuthzDecision(False, f"unknown action {action!r}")
    if role is Role.ADMIN:
        if action == "manage_users":
            return AuthzDecision(True, "admins manage user accounts")
        if action == "read_assessment" and status is Status.PUBLIC:
            return AuthzDecision(True, "public assessments are readable by admins")
        return AuthzDecision(False, "admins only manage users and read public assessments")
    if role is Role.ASSESSOR:
        if action == "manage_users":
            return AuthzDecision(False, "only admins manage users")
        return AuthzDecision(True, "assessors run assessments end to end")
    # external
    if action in ("read_assessment", "export") and status is Status.PUBLIC:
        return AuthzDecision(True, "public assessments are readable by externals")
    return AuthzDecision(False, "externals only read and export public assessments")


# ---------------------------------------------------------------------------
# Credentials
# ---------------------------------------------------------------------------

_PBKDF2_ITERATIONS = 60_000


def hash_password(password: str) -> str:
    salt = secrets.token_hex(16)
    digest = hashlib.pbkdf2_hmac(
        "sha256", password.encode(), bytes.fromhex(salt), _PBKDF2_ITERATIONS
    )
    return f"pbkdf2_sha256${_PBKDF2_ITERATIONS}${salt}${digest.hex()}"


def verify_password(password: str, stored: str) -> bool:
    try:
        _, iterations, salt, digest_hex = stored.split("$")
        digest = hashlib.pbkdf2_hmac(
            "sha256", password.encode(), bytes.fromhex(salt), int(iterations)
        )
        return hmac.compare_digest(digest.hex(), digest_hex)
    except (ValueError, TypeError):
        return False


@dataclass(frozen=True)
class User:
    username: str
    role: Role
    password_hash: str
    enabled: bool = True
    must_change_password: bool = False


class UserStore:
    """User accounts persisted as one JSON file; writes serialized."""

    def __init__(self, path: str | Path):
        self._path = Path(path)
        self._lock = threading.Lock()
        self._users: dict[str, User] = {}
        if self._path.exists():
            for doc in json.loads(self._path.read_text(encoding="utf-8")):
                user = User(
                    username=doc["username"],
                    role=Role(doc["role"]),
                    password_hash=doc["password_hash"],
                    enabled=doc.get("enabled", True),
                    must_change_password=doc.get("must_change_password", False),
                )
                self._users[user.username] = user

    def _persist(self) -> None:
        docs = [
            {
                "username": u.username,
                "role": u.role.value,
                "password_hash": u.password_hash,
                "enabled": u.enabled,
                "must_change_password": u.must_change_password,
            }
            for u in sorted(self._users.values(), key=lambda u: u.username)
        ]
        self._path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self._path.with_suffix(".tmp")
        tmp.write_text(json.dumps(docs, indent=2) + "\n", encoding="utf-8")
        os.replace(tmp, self._path)

    def _require_admin(self, caller: User) -> None:
        if caller.role is not Role.ADMIN:
            raise Forbidden(f"user {caller.username!r} is not an admin")

    def get(self, username: str) -> User:
        try:
            return self._users[username]
        except KeyError:
            raise UnknownUser(f"no user {username!r}") from None

    def usernames(self) -> list[str]:
        return sorted(self._users)

    def bootstrap_admin(self, username: str) -> tuple[User, str]:
        """Seed the very first admin account; only valid on an empty store."""
        with self._lock:
            if self._users:
                raise Forbidden("user store is not empty; use an admin account")
            temp = secrets.token_urlsafe(9)
            user = User(username, Role.ADMIN, hash_password(temp), must_change_password=True)
            self._users[username] = user
            self._persist()
            return user, temp

    def create_user(self, caller: User, username: str, role: Role) -> tuple[User, str]:
        self._require_admin(caller)
        with self._lock:
            if username in self._users:
                raise DuplicateUsername(f"user {username!r} already exists")
            temp = secrets.token_urlsafe(9)
            user = User(username, role, hash_password(temp), must_change_password=True)
            self._users[username] = user
            self._persist()
            return user, temp

    def disable_user(self, caller: User, username: str) -> User:
        self._require_admin(caller)
        with self._lock:
            user = replace(self.get(username), enabled=False)
            self._users[username] = user
            self._persist()
            return user

    def regenerate_password(self, caller: User, username: str) -> tuple[User, str]:
        self._require_admin(caller)
        with self._lock:
            temp = secrets.token_urlsafe(9)
            user = replace(
                self.get(username), password_hash=hash_password(temp), must_change_password=True
            )
            self._users[username] = user
            self._persist()
            return user, temp

    def set_role(self, caller: User, username: str, role: Role) -> User:
        self._require_admin(caller)
        with self._lock:
            user = replace(self.get(username), role=role)
            self._users[username] = user
            self._persist()
            return user

    def authenticate(self, username: str, password: str) -> User | None:
        user = self._users.get(username)
        if user is None or not user.enabled:
            return None
        if not verify_password(password, user.password_hash):
            return None
        return user

    def change_password(self, username: str, old_password: str, new_password: str) -> User:
        with self._lock:
            user = self.get(username)
            if not user.enabled or not verify_password(old_password, user.password_hash):
                raise Forbidden("current password does not match")
            user = replace(
                user, password_hash=hash_password(new_password), must_change_password=False
            )
            self._users[username] = user
            self._persist()
            return user


# ---------------------------------------------------------------------------
# Sessions
# ---------------------------------------------------------------------------

@dataclass
class Session:
    username: str
    expires_at: float


class SessionManager:
    """In-memory bearer tokens with a fixed lifetime."""

    def __init__(self, lifetime_seconds: float = 8 * 3600.0):
        self.lifetime = lifetime_seconds
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def issue(self, username: str) -> str:
        token = secrets.token_urlsafe(24)
        with self._lock:
            self._sessions[token] = Session(username, time.monotonic() + self.lifetime)
        return token

    def resolve(self, token: str) -> str | None:
        with self._lock:
            session = self._sessions.get(token)
            if session is None:
                return None
            if time.monotonic() >= session.expires_at:
                del self._sessions[token]
                return None
            return session.username

    def revoke_user(self, username: str) -> None:
        with self._lock:
            stale = [t for t, s in self._sessions.items() if s.username == username]
            for token in stale:
                del self._sessions[token]
