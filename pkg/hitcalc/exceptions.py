class ResourceLimitException(Exception):

    def __init__(self, message: str):
        self.message = message

    def __str__(self):
        return f"ResourceLimitException: {self.message}"


class NoSpikeException(Exception):

    def __init__(self, message: str):
        self.message = message

    def __str__(self):
        return f"NoSpikeException: {self.message}"


class DegreeMismatchException(Exception):

    def __init__(self, message: str):
        self.message = message

    def __str__(self):
        return f"DegreeMismatchException: {self.message}"


class GoldenDataException(Exception):

    def __init__(self, message: str, line: int = None, column: int = None):
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        if self.line is None:
            return f"GoldenDataException: {self.message}"
        if self.column is None:
            return f"GoldenDataException: line {self.line}: {self.message}"
        return f"GoldenDataException: line {self.line}, column {self.column}: {self.message}"


class InvalidConfigException(Exception):

    def __init__(self, message: str):
        self.message = message

    def __str__(self):
        return f"InvalidConfigException: {self.message}"


class InternalConsistencyError(AssertionError):

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self):
        return f"InternalConsistencyError: {self.message}"
