"""Exception hierarchy shared by all modules.

Exit-code buckets used by the CLI:
  1 -- input/parse problems
  2 -- mathematical-hypothesis failures (singular input, bad prime, ...)
  3 -- outside the scope of the theorems (block too large, too few variables)
  4 -- internal red alerts that should never happen on valid inputs
"""


class CubicCertError(Exception):
    """Base class for all library errors."""

    exit_code = 4


# --- input / parse errors (exit 1) ---

class FormSyntaxError(CubicCertError):
    exit_code = 1

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NotHomogeneousDegree3(CubicCertError):
    exit_code = 1


class UnusedVariableSlot(CubicCertError):
    exit_code = 1


# --- polynomial-layer errors ---

class DomainMismatch(CubicCertError):
    exit_code = 1


class ArityMismatch(CubicCertError):
    exit_code = 1


class IndexOutOfRange(CubicCertError):
    exit_code = 1


class ZeroInput(CubicCertError):
    exit_code = 1


class NotQuadric(CubicCertError):
    exit_code = 1


class NotTernary(CubicCertError):
    exit_code = 1


class NotUnivariate(CubicCertError):
    exit_code = 1


class DivisionDegenerate(CubicCertError):
    """Macaulay denominator minor vanished and all retries failed."""

    exit_code = 4


# --- mathematical-hypothesis failures (exit 2) ---

class FormSingular(CubicCertError):
    exit_code = 2

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SingularInput(CubicCertError):
    exit_code = 2


class BadPrime(CubicCertError):
    exit_code = 2


class BlockNotSplit(CubicCertError):
    exit_code = 2


class RepeatedFactor(CubicCertError):
    exit_code = 2


class NotAllLinesRational(CubicCertError):
    exit_code = 2

    def __init__(self, message, count, next_prime=None):
        super().__init__(message)
        self.count = count
        self.next_prime = next_prime


class ExhaustedSearch(CubicCertError):
    exit_code = 2


class PreconditionViolated(CubicCertError):
    exit_code = 2


# --- theorem-scope errors (exit 3) ---

class BlockTooLarge(CubicCertError):
    exit_code = 3


class TooFewVariables(CubicCertError):
    exit_code = 3


# --- internal red alerts (exit 4) ---

class NoDerivation(CubicCertError):
    exit_code = 4


class TooManyVariables(CubicCertError):
    exit_code = 3


class UnexpectedGrouping(CubicCertError):
    exit_code = 4


class RankDeficient(CubicCertError):
    exit_code = 4


class NoWitnessFound(CubicCertError):
    exit_code = 4
