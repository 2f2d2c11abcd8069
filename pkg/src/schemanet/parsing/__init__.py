"""Parsing of `.skb` knowledge bases and run-time commands."""

from .parser import parse_command, parse_ground_atom, parse_kb
from .printer import format_kb

__all__ = ["parse_kb", "parse_command", "parse_ground_atom", "format_kb"]
