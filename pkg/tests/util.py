# coding: utf-8
"""
This module provides the essential functionality for the whole test suite.
WARNING: Do not change the location of this file!
"""
import os

from superbound import DISTINGUISHED, SYMMETRIC, Grading, QParams

SEED = 20240101
MU = 0.3 + 0.1j

# gl(1|1), gl(2|1), gl(1|2), gl(2|2) in the distinguished grading
ALGEBRAS = ((1, 1), (2, 1), (1, 2), (2, 2))


def abs_path(*paths) -> str:
    return os.path.join(os.path.abspath(os.path.dirname(__file__)), *paths)


def gradings(scheme: str = DISTINGUISHED):
    return [Grading(m, n, scheme) for m, n in ALGEBRAS if scheme == DISTINGUISHED or n % 2 == 0]


def symmetric(m: int, n: int) -> Grading:
    return Grading(m, n, SYMMETRIC)


def qparams() -> QParams:
    return QParams(MU)
