"""Error types raised by the PDDL front end."""

from __future__ import annotations


class PddlError(Exception):
    """Base class for all PDDL front-end errors."""


class ParseError(PddlError):
    def __init__(self, message: str, line: int | None = None,
                 col: int | None = None, expected: str | None = None):
        loc = f" at {line}:{col}" if line is not None else ""
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"{message}{loc}{hint}")
        self.line = line
        self.col = col
        self.expected = expected


class UnsupportedFeature(PddlError):
    def __init__(self, feature: str, line: int | None = None, col: int | None = None):
        loc = f" at {line}:{col}" if line is not None else ""
        super().__init__(f"unsupported feature: {feature}{loc}")
        self.feature = feature


class PddlTypeError(PddlError):
    """A literal is ill-typed (wrong arity or incompatible argument type)."""

    def __init__(self, literal: str, message: str):
        super().__init__(f"ill-typed literal {literal}: {message}")
        self.literal = literal


class UnknownObject(PddlError):
    def __init__(self, name: str):
        super().__init__(f"unknown object {name!r}")
        self.name = name


class GroundingError(PddlError):
    pass


class GroundingExplosion(GroundingError):
    def __init__(self, projected: int, limit: int):
        super().__init__(f"projected {projected} ground actions exceeds limit {limit}")
        self.projected = projected
        self.limit = limit


class NonIntegerCost(PddlError):
    def __init__(self, action: str, scaled):
        super().__init__(f"cost of {action!r} does not scale to an integer ({scaled})")
        self.action = action


class UnknownAction(PddlError):
    def __init__(self, line_no: int, text: str):
        super().__init__(f"line {line_no}: unknown action {text!r}")
        self.line_no = line_no
        self.text = text
