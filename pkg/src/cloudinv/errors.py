"""Semantic exception hierarchy for cloud-invariant computations."""


class CloudInvError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateCloud(CloudInvError):
    """The cloud's x-spread sum D is zero within tolerance.

    All x-coordinates are effectively equal, so the least-squares line is
    vertical and the linear coefficients are undefined.
    """


class NonInvertibleMatrix(CloudInvError):
    """A 2x2 matrix is singular within tolerance."""


class DegenerateImage(CloudInvError):
    """The transformed cloud has zero x-spread (denominator of the induced
    coefficient map vanishes within tolerance)."""


class NoIdentityParameter(CloudInvError):
    """A one-parameter matrix family passes through no identity matrix."""


class KernelSingular(CloudInvError):
    """Kernel evaluation hit a zero denominator or failed at a stencil point."""


class DegenerateGenerator(CloudInvError):
    """All derivative coefficients of a family vanish; every function of
    (M, H) is trivially invariant (e.g. uniform scaling families)."""


class DegenerateTarget(CloudInvError):
    """An embedding target equals the identity within tolerance; the
    transform changes nothing, so every function is invariant."""
