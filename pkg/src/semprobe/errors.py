"""Exception types shared across the toolkit.

Every error carries enough structure to be reported without string parsing;
the CLI maps the class to an exit code (config=2, data=3, backend=4).
"""


class SemprobeError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(SemprobeError):
    pass


# --- WordNet database ---------------------------------------------------


class MalformedLine(SemprobeError):
    def __init__(self, file: str, line_no: int, reason: str = ""):
        self.file = file
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"{file}:{line_no}: malformed line" + (f" ({reason})" if reason else ""))


class DanglingPointer(SemprobeError):
    def __init__(self, pointers):
        self.pointers = list(pointers)
        super().__init__(f"{len(self.pointers)} pointer(s) with unresolved targets")


# --- perturbation -------------------------------------------------------


class InsufficientCandidates(SemprobeError):
    def __init__(self, available: int, wanted: int):
        self.available = available
        self.wanted = wanted
        super().__init__(f"only {available} replaceable word(s), need {wanted}")


class NoAntonymCandidate(SemprobeError):
    def __init__(self, sentence_id: str):
        self.sentence_id = sentence_id
        super().__init__(f"no antonym-bearing word in sentence {sentence_id!r}")


class UnjumblableSentence(SemprobeError):
    def __init__(self, sentence_id: str, reason: str):
        self.sentence_id = sentence_id
        self.reason = reason
        super().__init__(f"cannot jumble sentence {sentence_id!r}: {reason}")


# --- encoder gateway ----------------------------------------------------


class BackendUnavailable(SemprobeError):
    pass


class ProtocolError(SemprobeError):
    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(detail)


class DimMismatch(SemprobeError):
    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"dimension mismatch: expected {expected}, got {got}")


class ZeroVector(SemprobeError):
    pass


class CacheMiss(SemprobeError):
    def __init__(self, key: str):
        self.key = key
        super().__init__(f"no cached vector for key {key}")


# --- criteria engine ----------------------------------------------------


class EmptyClass(SemprobeError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"no pairs with label {label!r}")


class InsufficientCorpora(SemprobeError):
    pass


class AllSkipped(SemprobeError):
    pass


# --- probe bench --------------------------------------------------------


class NonFiniteLoss(SemprobeError):
    pass


class InsufficientSamples(SemprobeError):
    def __init__(self, label, have: int, want: int):
        self.label = label
        self.have = have
        self.want = want
        super().__init__(f"class {label!r} has {have} samples, need {want}")


# --- corpus -------------------------------------------------------------


class FormatError(SemprobeError):
    pass


class ExcessiveSkips(SemprobeError):
    def __init__(self, skipped: int, total: int):
        self.skipped = skipped
        self.total = total
        super().__init__(f"{skipped}/{total} rows malformed (limit 1%)")


class InsufficientPairs(SemprobeError):
    def __init__(self, label: str, have: int, want: int):
        self.label = label
        self.have = have
        self.want = want
        super().__init__(f"label {label!r}: have {have} pairs, want {want}")


class InsufficientSentences(SemprobeError):
    def __init__(self, have: int, want: int):
        self.have = have
        self.want = want
        super().__init__(f"have {have} distinct sentences, want {want}")


# --- reporting ----------------------------------------------------------


class MissingHistogram(SemprobeError):
    pass
