"""
Exception hierarchy shared by every stego module.
All library failures derive from StegoError so the CLI can map them to a
single exit path.
"""


class StegoError(Exception):
    """Base class for all domain errors."""


class ConfigError(StegoError):
    pass


# --- PBM I/O ---

class PBMError(StegoError):
    pass


class MalformedHeaderError(PBMError):
    pass


class TruncatedDataError(PBMError):
    def __init__(self, expected, got):
        super().__init__(f"PBM raster truncated: expected {expected} pixels, got {got}")
        self.expected = expected
        self.got = got


class InvalidTokenError(PBMError):
    pass


# --- Images / grid ---

class DimensionMismatchError(StegoError):
    def __init__(self, a_dims, b_dims):
        super().__init__(f"Image dimensions differ: {a_dims[0]}x{a_dims[1]} vs {b_dims[0]}x{b_dims[1]}")
        self.a_dims = a_dims
        self.b_dims = b_dims


class GridError(StegoError):
    pass


class ImageTooSmallError(GridError):
    pass


class IndexOutOfGridError(GridError):
    pass


class NotInTableError(StegoError):
    pass


# --- Embedding ---

class CapacityError(StegoError):
    pass


class InsufficientCapacityError(CapacityError):
    def __init__(self, required, available):
        super().__init__(f"Insufficient capacity: {required} bits required, {available} bits available")
        self.required = required
        self.available = available


class PayloadTooLargeError(CapacityError):
    pass


# --- Extraction ---

class ExtractionError(StegoError):
    pass


class CorruptStreamError(ExtractionError):
    def __init__(self, block_row, block_col, pattern):
        super().__init__(
            f"Corrupt stream: block ({block_row}, {block_col}) holds pattern '{pattern}', "
            f"which is in neither code table"
        )
        self.block_row = block_row
        self.block_col = block_col
        self.pattern = pattern


class NotEnoughDataError(ExtractionError):
    def __init__(self, required, available):
        super().__init__(f"Not enough data: {required} bits requested, image carries {available}")
        self.required = required
        self.available = available


class HeaderExceedsCapacityError(ExtractionError):
    pass


class NotByteAlignedError(ExtractionError):
    pass


class CorpusError(StegoError):
    pass
