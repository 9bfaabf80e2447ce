"""Front-end pipeline: text -> tokens -> AST -> numbered, typed AST."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence, Tuple

from ..kernel_services.ast import TranslationUnit, TypedAst, number_nodes
from .lexer import tokenize
from .parser import parse
from .typecheck import typecheck


def parse_text(text: str, file: str = "<input>") -> TranslationUnit:
    """Untyped, numbered unit of a single source text."""
    return number_nodes(parse(tokenize(text, file), file))


def load_texts(sources: Iterable[Tuple[str, str]]) -> TypedAst:
    """Parse ``(file, text)`` pairs as one translation unit and typecheck it."""
    functions = []
    for file, text in sources:
        functions.extend(parse(tokenize(text, file), file).functions)
    units = TranslationUnit(tuple(functions))
    return typecheck(number_nodes(units))


def load_text(text: str, file: str = "<input>") -> TypedAst:
    return load_texts([(file, text)])


def load_files(paths: Sequence[str]) -> TypedAst:
    return load_texts((str(p), Path(p).read_text(encoding="utf-8")) for p in paths)
