"""Generalized sequential crossover and splicing of finite and regular languages."""

__all__ = [
    "automata",
    "config",
    "construct",
    "operands",
    "regex_parser",
    "text_formats",
    "word_ops",
]
