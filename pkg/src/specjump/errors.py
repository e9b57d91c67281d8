"""Exception hierarchy. Every error the library raises derives from SpecjumpError."""


class SpecjumpError(Exception):
    """Base class; the CLI maps these to exit status 2."""

    code = "error"

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self)}


class PolynomialSyntaxError(SpecjumpError, ValueError):
    code = "syntax"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position

    def to_json(self):
        return {**super().to_json(), "position": self.position}


class FactorDegreeExceeded(SpecjumpError):
    code = "factor_degree_exceeded"

    def __init__(self, degree: int, cap: int):
        super().__init__(f"factorization too large: degree {degree} exceeds cap {cap}")
        self.degree = degree
        self.cap = cap


class NonRationalCenter(SpecjumpError):
    code = "non_rational_center"

    def __init__(self, factor, reason: str = "non-SNC point with non-rational coordinates"):
        super().__init__(f"{reason}; residual factor {factor}")
        self.factor = factor


class BlowupLimitExceeded(SpecjumpError):
    code = "blowup_limit_exceeded"

    def __init__(self, cap: int):
        super().__init__(f"resolution needs more than {cap} blow-ups")
        self.cap = cap


class InvalidGerm(SpecjumpError, ValueError):
    code = "invalid_germ"


class ResolutionDataError(SpecjumpError, ValueError):
    """Malformed or invalid resolution data (JSON parse, schema, or identities)."""

    code = "resolution_data"

    def __init__(self, message: str, violations=None, position=None):
        super().__init__(message)
        self.violations = list(violations or [])
        self.position = position

    def to_json(self):
        out = super().to_json()
        if self.violations:
            out["violations"] = [str(v) for v in self.violations]
        if self.position is not None:
            out["position"] = self.position
        return out


class MissingCharts(SpecjumpError):
    code = "missing_charts"


class NotStabilized(SpecjumpError):
    code = "not_stabilized"


class AlphaOutOfRange(SpecjumpError, ValueError):
    code = "alpha_out_of_range"
