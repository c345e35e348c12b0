"""Exception types shared across the toolkit.

Most errors double as ``ValueError`` so callers that do not care about the
specific failure can still catch them idiomatically.
"""

from __future__ import annotations


class PausekitError(Exception):
    """Base class for all toolkit errors."""


class EmptyInputError(PausekitError, ValueError):
    """Input text contained no tokens after whitespace normalization."""


class MalformedTagError(PausekitError, ValueError):
    """A token embeds the pause tag instead of being exactly the pause tag."""


class SignalTooShortError(PausekitError, ValueError):
    """Audio signal is shorter than a single analysis frame."""


class UnsupportedAudioError(PausekitError, ValueError):
    """Audio file is not mono 16-bit PCM."""


class InvalidContextError(PausekitError, ValueError):
    """Pause context duration is below the minimum qualifying duration."""


class ContextCountMismatchError(PausekitError, ValueError):
    """Number of pause contexts does not match the transcript's pause count."""


class EmptyManifestError(PausekitError, ValueError):
    """Manifest contains no records."""


class ManifestFormatError(PausekitError, ValueError):
    """A manifest line is not a well-formed record."""


class InvariantViolationError(PausekitError, ValueError):
    """A label sequence is inconsistent with its transcript."""


class LengthMismatchError(PausekitError, ValueError):
    """Per-token sequence length does not match the token count."""


class EmptyReferenceError(PausekitError, ValueError):
    """Reference side of a metric is empty, so the rate is undefined."""


class IdMismatchError(PausekitError, ValueError):
    """Reference and hypothesis utterance ids do not line up."""


class ShapeMismatchError(PausekitError, ValueError):
    """Array shapes are incompatible."""


class EmptyTargetError(PausekitError, ValueError):
    """A loss target sequence is empty."""


class EmptyCorpusError(PausekitError, ValueError):
    """Training corpus contains no examples."""


class EmptyMatrixError(PausekitError, ValueError):
    """Cost matrix has a zero dimension."""


class NonFiniteCostError(PausekitError, ValueError):
    """Cost matrix contains NaN or infinite entries."""


class EmptyListError(PausekitError, ValueError):
    """Soft minimum of an empty value list is undefined."""
