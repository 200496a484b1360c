"""Exception hierarchy shared by all modules."""


class LatticeError(Exception):
    """Base class for every error raised by this package."""


class CoordinateOverflow(LatticeError, ArithmeticError):
    """An integer result left the signed 64-bit range."""


class NotUnimodular(LatticeError, ValueError):
    """A pair (or tuple) of vectors is not a lattice basis."""

    def __init__(self, message: str, det: int | None = None):
        super().__init__(message)
        self.det = det


class ZeroVector(LatticeError, ValueError):
    pass


class TooShort(LatticeError, ValueError):
    pass


class NotUnimodularAt(NotUnimodular):
    """Adjacent pair ``(vectors[index], vectors[index + 1])`` has ``|det| != 1``."""

    def __init__(self, index: int, det: int, pair):
        super().__init__(
            f"pair at index {index} {tuple(pair[0])}->{tuple(pair[1])} has det {det}",
            det=det,
        )
        self.index = index
        self.pair = pair


class NotCyclicUnimodular(NotUnimodular):
    pass


class InternalInconsistency(LatticeError, AssertionError):
    """An identity that must hold for valid input failed: a bug or corrupted data."""


class NonIntegerRotation(InternalInconsistency):
    def __init__(self, twelfths: int, vectors=None):
        msg = f"rotation total {twelfths}/12 is not an integer"
        if vectors is not None:
            msg += f" for cycle {[list(v) for v in vectors]}"
        super().__init__(msg)
        self.twelfths = twelfths
        self.vectors = vectors


class LemmaViolated(InternalInconsistency):
    """No window with local mu in {-1, 0, 1} was found in a cycle of length >= 3."""


class AdditivityViolation(InternalInconsistency):
    pass


class PatternMismatch(LatticeError, ValueError):
    pass


class PreconditionFailed(LatticeError, ValueError):
    pass


class NoRepeat(LatticeError, ValueError):
    pass


class FragmentTooShort(LatticeError, ValueError):
    pass


class BadFirstNu(LatticeError, ValueError):
    pass


class ShapeMismatch(LatticeError, ValueError):
    pass


class NotBasis(NotUnimodular):
    pass


class NotClosed(LatticeError, ValueError):
    pass


class IncoherentOrientation(LatticeError, ValueError):
    pass


class FacetNotUnimodular(NotUnimodular):
    def __init__(self, facet_index: int, det: int):
        super().__init__(f"facet {facet_index} has image determinant {det}", det=det)
        self.facet_index = facet_index
