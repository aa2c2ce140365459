"""Exception hierarchy shared by the engine, the DSL and the CLI."""


class QVerifyError(Exception):
    pass


class NotAUnit(QVerifyError, ArithmeticError):
    """Attempted inversion of a ring element that has no inverse."""


class DivergentProduct(QVerifyError):
    pass


class ZeroFactor(QVerifyError):
    """An infinite product contains a vanishing factor at q^0."""


class NonTerminating(QVerifyError):
    pass


class PrecisionError(QVerifyError):
    """A comparison was requested beyond the guaranteed-exact order."""


class ParseError(QVerifyError, SyntaxError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.lineno, self.offset = line, column

    def __str__(self):
        return self.args[0]


class UndeclaredVariable(QVerifyError):
    pass


class RingConflict(QVerifyError):
    pass


class NonLowerable(QVerifyError):
    pass
