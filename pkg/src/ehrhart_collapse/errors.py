class EhrhartError(ValueError):
    pass


class MalformedInputError(EhrhartError):
    """Input that cannot be turned into a well-formed object."""


class UnsupportedDimensionError(EhrhartError):
    """Requested an operation above the supported dimension cap."""


class UnsupportedInputError(EhrhartError):
    pass
