"""Exception hierarchy shared across the toolkit."""


class ThermoscanError(Exception):
    """Base class for all thermoscan errors."""


# --- container format -------------------------------------------------------

class FormatError(ThermoscanError):
    """Malformed TGRM container."""


class BadMagic(FormatError):
    pass


class UnsupportedVersion(FormatError):
    pass


class TruncatedFile(FormatError):
    pass


class TrailingBytes(FormatError):
    pass


class NonFiniteTemperature(FormatError):
    pass


class OutOfPhysicalRange(FormatError):
    pass


class ShapeMismatch(ThermoscanError):
    """Dimensions disagree (container payload or operation inputs)."""


# --- parameters and data validity ------------------------------------------

class SpecInvalid(ThermoscanError):
    """Synthetic-scene description violates its own constraints."""


class InvalidParameter(ThermoscanError):
    pass


class EmptyHistogram(ThermoscanError):
    pass


class NoMarkers(ThermoscanError):
    pass


class LabelNotFound(ThermoscanError):
    pass


class NoModulesFound(ThermoscanError):
    """Segmentation produced no region surviving the minimum-area filter."""


class EmptyModule(ThermoscanError):
    pass


class OutOfBounds(ThermoscanError):
    pass
