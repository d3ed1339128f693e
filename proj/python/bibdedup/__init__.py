"""Bibliographic record deduplication toolkit.

Parses MEDLINE and ISI flat files, builds per-record fingerprint keys or
similarity scores, detects exact duplicates between a test and a target
corpus, merges the corpora, and evaluates the competing methods against
gold-standard and intrinsic protocols.
"""

from ._core import *  # noqa: F401,F403

__all__ = [name for name in dir() if not name.startswith("_")]
