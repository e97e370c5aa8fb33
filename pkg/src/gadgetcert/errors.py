"""Exception types shared across modules."""


class GadgetCertError(Exception):
    """Base class for all errors raised by this package."""


class DimMismatch(GadgetCertError):
    pass


class NonFiniteValue(GadgetCertError):
    pass


class ZeroRoot(GadgetCertError):
    pass


class Singular(GadgetCertError):
    pass


class UnknownGate(GadgetCertError):
    pass


class OverlappingTargets(GadgetCertError):
    pass


class TooManyQubits(GadgetCertError):
    pass


class InvalidCircuit(GadgetCertError):
    pass


class InvalidGadget(GadgetCertError):
    pass


class DegenerateGadget(GadgetCertError):
    def __init__(self, name: str, det_value: complex, detail: str = ""):
        self.name = name
        self.det_value = det_value
        msg = f"gadget {name!r} is degenerate: det = {det_value:.6g}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NotSingleQubit(GadgetCertError):
    pass


class NotInverseClosed(GadgetCertError):
    def __init__(self, unmatched):
        self.unmatched = list(unmatched)
        super().__init__("generator set is not closed under inverses; unmatched: "
                         + ", ".join(self.unmatched))


class BadParam(GadgetCertError):
    pass


class NoTable(GadgetCertError):
    pass


class ThetaOutOfInterval(GadgetCertError):
    pass


class NotUnitary(GadgetCertError):
    pass


class UnsupportedFamily(GadgetCertError):
    pass


class ParseError(GadgetCertError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(message + where)
