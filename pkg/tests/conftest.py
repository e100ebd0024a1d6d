import json
import os

import pytest

from semprobe import wordnet
from semprobe.perturb import Sentence
from semprobe.stopwords import DEFAULT_STOPWORDS

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
CORPUS_PATH = os.path.join(DATA_DIR, "fixture_corpus.jsonl")


@pytest.fixture(scope="session")
def db():
    return wordnet.load_database(wordnet.fixture_path())


@pytest.fixture(scope="session")
def stop():
    return DEFAULT_STOPWORDS


@pytest.fixture(scope="session")
def corpus_sentences():
    with open(CORPUS_PATH, encoding="utf-8") as fh:
        return [Sentence.from_json(json.loads(line)) for line in fh]


def write_lines(path, lines):
    with open(path, "w", encoding="utf-8") as fh:
        for line in lines:
            fh.write(line + "\n")
    return path
