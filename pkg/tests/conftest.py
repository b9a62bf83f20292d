from __future__ import annotations

import sys
from datetime import date
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from clinotate.baseline import load_baseline_package
from clinotate.model import Document
from clinotate.ruleset import compile_rule_package

DEMO_TEXT = (
    "The patient had a dry cough and fever or chills yesterday. "
    "He is also experiencing new loss of taste today and three days ago."
)
DEMO_DATE = date(2021, 2, 18)


@pytest.fixture(scope="session")
def baseline_package():
    return load_baseline_package()


@pytest.fixture(scope="session")
def baseline_matchers(baseline_package):
    return compile_rule_package(baseline_package)


@pytest.fixture()
def demo_document():
    return Document(doc_id="demo", text=DEMO_TEXT, doc_date=DEMO_DATE)
