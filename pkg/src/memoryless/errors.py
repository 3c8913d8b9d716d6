class MemorylessError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class InvalidStateError(MemorylessError, ValueError):
    pass


class InvalidPermutationError(MemorylessError, ValueError):
    pass


class InvalidInstructionError(MemorylessError, ValueError):
    pass


class AlphabetMismatchError(MemorylessError, ValueError):
    pass


class TooLargeError(MemorylessError):
    def __init__(self, what, count, cap):
        self.count = count
        self.cap = cap
        super().__init__(f"{what}: {count} exceeds cap {cap} (raise with MEMORYLESS_CAP)")


class UnsupportedCaseError(MemorylessError):
    pass


class DegenerateInputError(MemorylessError, ValueError):
    pass


class InvalidGraphError(MemorylessError, ValueError):
    pass


class NotComputableError(MemorylessError):
    pass


class ParseError(MemorylessError, ValueError):
    def __init__(self, message, line, column=None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


class PreconditionError(MemorylessError, ValueError):
    pass
