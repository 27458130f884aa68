"""Exact-arithmetic mirror symmetry toolkit for linear sections of resolved joins."""

from .series import Polynomial, TruncatedSeries

__all__ = ["Polynomial", "TruncatedSeries"]
