"""Exception hierarchy shared by every stage of the toolchain."""


class SchnetError(Exception):
    """Base class for all toolchain errors."""


class MalformedXml(SchnetError):
    pass


class UnsupportedVersion(SchnetError):
    pass


class DanglingReference(SchnetError):
    """A part, gate, pin or library reference that does not resolve.

    ``path`` is an XPath-like locator of the offending element.
    """

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class MissingGate(DanglingReference):
    pass


class GeometryMissing(SchnetError):
    pass


class SchemaViolation(SchnetError):
    """A document failed schema validation.

    ``errors`` lists ``(field_path, message)`` tuples.
    """

    def __init__(self, errors):
        self.errors = list(errors)
        lines = "; ".join(f"{p or '<root>'}: {m}" for p, m in self.errors)
        super().__init__(f"schema violation: {lines}")


class EmptyDrawing(SchnetError):
    pass


class InvalidBBox(SchnetError):
    pass


class BudgetExhausted(SchnetError):
    pass


class AlreadyAnswered(SchnetError):
    pass


class AdapterError(SchnetError):
    """The model endpoint failed or returned an unusable response."""


class AdapterTimeout(AdapterError):
    pass


class MalformedToolCall(SchnetError):
    pass
