"""Seeded random instances following the reference experimental protocol."""

from .generator import GenParams, default_models, generate

__all__ = ["GenParams", "default_models", "generate"]
