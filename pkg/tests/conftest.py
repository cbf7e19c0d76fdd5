from __future__ import annotations

import shutil
from pathlib import Path

import pytest

from distaf.access import Role, UserStore
from distaf.api import AppConfig, create_app
from distaf.framework import load_template
from distaf.store import AssessmentStore, TemplateRepository, load_assessment

ROOT = Path(__file__).resolve().parent.parent
TEMPLATE_PATH = ROOT / "templates" / "distaf-sample.json"
DEMO_PATH = ROOT / "fixtures" / "turing-demo.json"

PASSWORDS = {"root": "rootpw-1", "alice": "alicepw-1", "eve": "evepw-1"}


@pytest.fixture(scope="session")
def sample_template():
    return load_template(TEMPLATE_PATH)


@pytest.fixture(scope="session")
def demo_state():
    return load_assessment(DEMO_PATH)


@pytest.fixture()
def repo(sample_template):
    return TemplateRepository(templates=(sample_template,))


@pytest.fixture()
def store(tmp_path, repo):
    return AssessmentStore(tmp_path / "data", repo)


@pytest.fixture(scope="session")
def seeded_users(tmp_path_factory):
    """users.json with a known admin/assessor/external trio (hashed once)."""
    path = tmp_path_factory.mktemp("users") / "users.json"
    users = UserStore(path)
    admin, temp = users.bootstrap_admin("root")
    users.change_password("root", temp, PASSWORDS["root"])
    admin = users.get("root")
    for name, role in (("alice", Role.ASSESSOR), ("eve", Role.EXTERNAL)):
        _, temp = users.create_user(admin, name, role)
        users.change_password(name, temp, PASSWORDS[name])
    return path


@pytest.fixture()
def client(tmp_path, seeded_users):
    from fastapi.testclient import TestClient

    data_dir = tmp_path / "data"
    data_dir.mkdir()
    shutil.copy(seeded_users, data_dir / "users.json")
    app = create_app(AppConfig(data_dir=data_dir, template_dir=ROOT / "templates"))
    with TestClient(app) as test_client:
        yield test_client
