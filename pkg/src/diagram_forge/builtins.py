"""Shipped example categories, selectable by name from the command line.

Selectors:
  ``E``, ``terminal``, ``linear``, ``parallel``, ``arrow``, ``raising``  shipped specs
  ``delta+op:N``   Δ₊ᵒᵖ on [0..N] (an inverse category)
  ``frakd-op:N``   𝔇ᵒᵖ truncated at sum N+1
  anything else    a path to a JSON spec
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .fincat import CategorySpec, FinCategory, IllFormedSpec, build_category
from .reedy import ReedyCategory, delta_reedy, discrete_reedy, frak_d, reedy_from_dict
from .simplex import delta_plus_op

SPEC_NAMES = ("E", "terminal", "linear", "parallel", "arrow", "raising")
REEDY_NAMES = ("span_reedy",)


def _read_builtin(name: str) -> str:
    return resources.files("diagram_forge.specs").joinpath(f"{name}.json").read_text(encoding="utf-8")


def _parametric(selector: str, prefix: str) -> int | None:
    if not selector.startswith(prefix):
        return None
    try:
        n = int(selector[len(prefix):])
    except ValueError:
        raise IllFormedSpec(f"expected an integer after {prefix!r} in {selector!r}") from None
    if n < 0:
        raise IllFormedSpec(f"negative level in {selector!r}")
    return n


def load_document(selector: str) -> tuple[dict, str]:
    """The JSON document and display name for a shipped name or file path."""
    if selector in SPEC_NAMES or selector in REEDY_NAMES:
        return json.loads(_read_builtin(selector)), selector
    path = Path(selector)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IllFormedSpec(f"cannot read {selector}: {exc.strerror or exc}") from None
    try:
        return json.loads(text), path.stem
    except json.JSONDecodeError as exc:
        raise IllFormedSpec(f"{selector}: invalid JSON ({exc})") from None


def load_spec(selector: str) -> CategorySpec:
    doc, _ = load_document(selector)
    return CategorySpec.from_dict(doc)


def load_category(selector: str, max_word_length: int = 8) -> FinCategory:
    n = _parametric(selector, "delta+op:")
    if n is not None:
        return delta_plus_op(n)
    n = _parametric(selector, "frakd-op:")
    if n is not None:
        return frak_d(n).opposite()
    doc, name = load_document(selector)
    return build_category(CategorySpec.from_dict(doc), max_word_length, name=name)


def load_reedy(selector: str, max_word_length: int = 8) -> ReedyCategory:
    """``delta:N``, ``discrete:a,b,...``, a shipped Reedy spec, or a path."""
    n = _parametric(selector, "delta:")
    if n is not None:
        return delta_reedy(n)
    if selector.startswith("discrete:"):
        names = [x for x in selector[len("discrete:"):].split(",") if x]
        if not names:
            raise IllFormedSpec("discrete: needs at least one object name")
        return discrete_reedy(names)
    doc, _ = load_document(selector)
    return reedy_from_dict(doc, max_word_length)


def example_E() -> FinCategory:
    return load_category("E")
