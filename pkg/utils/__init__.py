"""Shared configuration and logging helpers for the BSS planner."""
