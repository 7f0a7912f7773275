"""
Exception types raised by fairclust.

ValidationError covers bad inputs, InvariantError internal breaches that signal a bug,
FileFormatError malformed instance files. The CLI maps them to exit codes 1, 1 and 2.
"""


class FairClusteringError(Exception):
    """Base class for all fairclust errors"""


class ValidationError(FairClusteringError, ValueError):
    """Input violates a documented precondition"""


class InvariantError(FairClusteringError, AssertionError):
    """An internal invariant does not hold"""


class FileFormatError(FairClusteringError):
    """An instance file could not be parsed"""

    def __init__(self, message: str, path=None, line=None):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = f"{path}"
            if line is not None:
                location += f":{line}"
            location += ": "
        super().__init__(f"{location}{message}")
