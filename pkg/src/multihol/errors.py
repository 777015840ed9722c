"""Exception hierarchy shared by all modules."""


class MultiHolError(Exception):
    pass


class ZeroInverse(MultiHolError, ZeroDivisionError):
    pass


class DimMismatch(MultiHolError, ValueError):
    pass


class ModulusMismatch(MultiHolError, ValueError):
    pass


class Singular(MultiHolError, ValueError):
    pass


class BudgetExceeded(MultiHolError):
    def __init__(self, count, budget):
        super().__init__(f"enumeration of {count} candidates exceeds budget {budget}")
        self.count = count
        self.budget = budget


class UnknownLabel(MultiHolError, KeyError):
    def __str__(self):
        return f"unknown case label {self.args[0]!r}"


class SpecMismatch(MultiHolError, ValueError):
    pass


class NotRankOne(MultiHolError, ValueError):
    pass


class ParseError(MultiHolError, ValueError):
    pass


class EmptyGenerators(MultiHolError, ValueError):
    pass


class LabelMismatch(MultiHolError, ValueError):
    pass


class NotInB(MultiHolError, ValueError):
    pass


class NotInCommutant(MultiHolError, ValueError):
    pass


class NotInvertible(MultiHolError, ValueError):
    pass


class UnknownAdmissibility(MultiHolError):
    pass


class NotDeltaSigma(MultiHolError):
    pass


class TooLarge(MultiHolError, ValueError):
    pass


class AssumptionFailed(MultiHolError):
    """Raised in strict mode when the no-equivariant-hom assumption fails.

    The (non-applicable) report is attached as ``report``.
    """

    def __init__(self, report):
        super().__init__("no-equivariant-homomorphism assumption fails; "
                         "structural T(G) result does not apply")
        self.report = report
