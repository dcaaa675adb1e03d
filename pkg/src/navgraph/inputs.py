"""Input-to-rule dispatch: one table, any modality.

Key tokens follow the W3C UI-Events ``code`` vocabulary ("ArrowLeft",
"Enter", "KeyL"); non-key modalities use family-verb tokens such as
"swipe-left". Recognition (speech-to-text, gesture models, debouncing)
happens upstream — this layer only acts on already-normalized tokens.
Every rule name doubles as a case-insensitive command word.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from . import engine
from .errors import ConflictingBindingError, UnknownRuleError
from .graph import Graph


@dataclass(frozen=True)
class BindingTable:
    """Immutable token -> rule table; remapping copies."""

    graph: Graph
    tokens: dict[str, str] = field(default_factory=dict)
    commands: dict[str, str] = field(default_factory=dict)


def default_bindings(graph: Graph) -> BindingTable:
    """Table from each rule's declared bindings plus rule-name command words."""
    tokens: dict[str, str] = {}
    commands: dict[str, str] = {}
    for rule in graph.rules.values():
        for token in rule.bindings:
            owner = tokens.get(token)
            if owner is not None and owner != rule.name:
                raise ConflictingBindingError(
                    f"token {token!r} declared by rules {owner!r} and {rule.name!r}")
            tokens[token] = rule.name
        word = rule.name.lower()
        owner = commands.get(word)
        if owner is not None and owner != rule.name:
            raise ConflictingBindingError(
                f"command word {word!r} claimed by rules {owner!r} and {rule.name!r}")
        commands[word] = rule.name
    return BindingTable(graph, tokens, commands)


def remap(table: BindingTable, token: str, rule_name: str) -> BindingTable:
    """Re-point a token at a rule (last write wins)."""
    if rule_name not in table.graph.rules:
        raise UnknownRuleError(f"rule {rule_name!r} is not declared in this graph")
    tokens = dict(table.tokens)
    tokens[token] = rule_name
    return BindingTable(table.graph, tokens, dict(table.commands))


def parse_command(table: BindingTable, text: str) -> Optional[str]:
    """Look up trimmed, case-folded text as a command word."""
    return table.commands.get(text.strip().lower())


def dispatch(table: BindingTable, state: engine.FocusState, token: str) -> Optional[engine.MoveResult]:
    """Route a token (key token first, then command word) to the engine.

    Unbound tokens return ``None`` and never touch the session.
    """
    rule = table.tokens.get(token)
    if rule is None:
        rule = parse_command(table, token)
    if rule is None:
        return None
    return engine.move(state, rule)


def load_remap_file(table: BindingTable, path) -> BindingTable:
    """Apply a user preference file (JSON object: token -> ruleName)."""
    with open(path, encoding="utf-8") as fh:
        prefs = json.load(fh)
    if not isinstance(prefs, dict):
        raise ValueError("remap file must be a JSON object mapping token to rule name")
    for token, rule_name in sorted(prefs.items()):
        table = remap(table, token, rule_name)
    return table
