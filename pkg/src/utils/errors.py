"""Error classes"""

from typing import Any, Dict, Optional


class AlgebraError(Exception):
    """Base class for toolkit errors"""

    exit_code = 4

    def __init__(
        self,
        message: str,
        code: str = "ALGEBRA_ERROR",
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message)
        self.message = message
        self.code = code
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Serializable form used by the CLI"""
        return {"code": self.code, "message": self.message, "details": self.details}


class ConfigError(AlgebraError):
    """Configuration error"""

    exit_code = 2

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(
            message=message,
            code="CONFIG_ERROR",
            details=details
        )


class ValidationError(AlgebraError):
    """Malformed input or violated precondition"""

    exit_code = 2

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None,
        code: str = "VALIDATION_ERROR"
    ):
        super().__init__(
            message=message,
            code=code,
            details=details
        )


class SignatureError(ValidationError):
    """Unknown symbol, arity mismatch or incompatible signatures"""

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message=message, details=details, code="SIGNATURE_ERROR")


class NotCongruenceError(ValidationError):
    """Partition is not compatible with the operations"""

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message=message, details=details, code="NOT_CONGRUENCE")


class HypothesisError(AlgebraError):
    """A verdict is refused because its hypothesis is not met"""

    exit_code = 2

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(
            message=message,
            code="HYPOTHESIS_UNMET",
            details=details
        )


class CapExceededError(AlgebraError):
    """A configured size guardrail was exceeded"""

    exit_code = 3

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(
            message=message,
            code="CAP_EXCEEDED",
            details=details
        )


class ConsistencyError(AlgebraError):
    """An internal cross-check failed"""

    exit_code = 4

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(
            message=message,
            code="CONSISTENCY_ERROR",
            details=details
        )
