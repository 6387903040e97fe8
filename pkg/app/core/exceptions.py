"""error types shared by the library, the CLI and the HTTP layer"""


class K3LatError(Exception):
    """base error; internal cross-check failures raise this directly"""

    exit_code = 1
    status_code = 500

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InputError(K3LatError):
    """malformed user input (bad JSON, wrong shapes, non-symmetric gram)"""

    exit_code = 2
    status_code = 422


class PreconditionError(K3LatError):
    """operation called outside its domain"""

    exit_code = 3
    status_code = 409
