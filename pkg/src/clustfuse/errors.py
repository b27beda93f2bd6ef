"""Exception types shared across the package."""


class ClustfuseError(Exception):
    """Base class for all validation and runtime errors raised here."""


class OutOfRangeLabel(ClustfuseError):
    pass


class EmptyInput(ClustfuseError):
    pass


class NegativeLabel(ClustfuseError):
    pass


class LengthMismatch(ClustfuseError):
    pass


class TooFewItems(ClustfuseError):
    pass


class ClusterCountMismatch(ClustfuseError):
    pass


class BadColumnIndex(ClustfuseError):
    pass


class DegenerateRow(ClustfuseError):
    pass


class NonFinite(ClustfuseError):
    pass


class EmptyCluster(ClustfuseError):
    pass


class TooFewPoints(ClustfuseError):
    pass


class SingularComponent(ClustfuseError):
    pass


class BadSpec(ClustfuseError):
    pass


class RejectionOverflow(ClustfuseError):
    pass


class ParseError(ClustfuseError):
    pass


class NonNumericCell(ParseError):
    pass


class MissingColumn(ClustfuseError):
    pass


class RaggedRows(ParseError):
    pass


class EmptyReport(ClustfuseError):
    pass


class MissingColumns(ClustfuseError):
    pass


class IoError(ClustfuseError):
    pass
