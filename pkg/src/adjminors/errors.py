"""Exception hierarchy.

Every error carries a short machine ``tag`` and the CLI exit code it maps to.
"""


class AdjMinorsError(Exception):
    tag = "ERROR"
    exit_code = 1


class ParseError(AdjMinorsError, ValueError):
    tag = "PARSE_ERROR"
    exit_code = 1


class UsageError(ParseError):
    tag = "USAGE_ERROR"


class NotConnected(AdjMinorsError, ValueError):
    tag = "NOT_CONNECTED"
    exit_code = 3


class NotSpecial(AdjMinorsError, ValueError):
    tag = "NOT_SPECIAL"
    exit_code = 3


class NotAdmissible(AdjMinorsError, ValueError):
    tag = "NOT_ADMISSIBLE"
    exit_code = 3


class MismatchedConfiguration(AdjMinorsError, ValueError):
    tag = "MISMATCHED_CONFIGURATION"
    exit_code = 3


class SupportViolation(AdjMinorsError, ValueError):
    tag = "SUPPORT_VIOLATION"
    exit_code = 3


class CapExceeded(AdjMinorsError, RuntimeError):
    tag = "CAP_EXCEEDED"
    exit_code = 2


class DegreeCapExceeded(CapExceeded):
    tag = "DEGREE_CAP_EXCEEDED"


class VerificationFailed(AdjMinorsError, RuntimeError):
    tag = "VERIFICATION_FAILED"
    exit_code = 4


class CertificateVerificationFailed(VerificationFailed):
    tag = "CERTIFICATE_VERIFICATION_FAILED"
