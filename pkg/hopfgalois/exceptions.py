class HopfGaloisError(Exception):
    """Base class for every error raised by the hopfgalois app."""


class PermutationError(HopfGaloisError, ValueError):
    """Malformed cycle text, degree mismatch or point out of range."""


class ElementCapExceeded(HopfGaloisError):
    def __init__(self, order, cap):
        self.order = order
        self.cap = cap
        super().__init__(f"group of order {order} exceeds the element cap {cap}")


class CatalogError(HopfGaloisError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CatalogVerificationError(HopfGaloisError):
    def __init__(self, entry, message):
        self.entry = entry
        super().__init__(f"{entry}: {message}")


class EnumerationError(HopfGaloisError):
    pass


class WitnessCheckError(HopfGaloisError):
    pass


class GoldenFileError(HopfGaloisError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
