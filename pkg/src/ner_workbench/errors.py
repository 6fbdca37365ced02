"""Domain errors.

Every error carries a stable `code` (the class name) used verbatim by the
HTTP layer and the CLI, plus an HTTP status family: 400 for validation,
404 for unknown ids, 409 for conflicts, 502 for annotator backends, 500
for storage and everything else.
"""

from __future__ import annotations

from typing import Any


class WorkbenchError(Exception):
    http_status = 500

    def __init__(self, message: str = "", **details: Any):
        super().__init__(message or self.__class__.__name__)
        self.details = details

    @property
    def code(self) -> str:
        return self.__class__.__name__


class ValidationError(WorkbenchError):
    http_status = 400


class NotFoundError(WorkbenchError):
    http_status = 404


class ConflictError(WorkbenchError):
    http_status = 409


class BackendError(WorkbenchError):
    http_status = 502


class StorageError(WorkbenchError):
    http_status = 500


# registry / classes
class EmptySurface(ValidationError): pass
class UnknownClass(NotFoundError): pass
class UnknownInstance(NotFoundError): pass
class DuplicateClass(ConflictError): pass


# documents
class UnknownDocument(NotFoundError): pass
class DuplicateDocumentName(ConflictError): pass
class TooManyDocuments(ValidationError): pass
class BadEncoding(ValidationError): pass


# groups / aliases
class DuplicateName(ConflictError): pass
class UnknownMember(NotFoundError): pass
class MixedClasses(ValidationError): pass
class MemberAlreadyAliased(ConflictError): pass
class EmptyMembers(ValidationError): pass
class UnknownGroup(NotFoundError): pass
class UnknownAlias(NotFoundError): pass


# definition files
class MissingHeader(ValidationError): pass
class DuplicateClassInFile(ValidationError): pass


# annotator backends
class BackendUnreachable(BackendError): pass
class BackendProtocolError(BackendError): pass
class OffsetOutOfRange(BackendError): pass


# analytics
class InvalidFilter(ValidationError): pass
class SingleDocumentProject(ValidationError): pass
class UnknownTarget(NotFoundError): pass


# export / import
class MalformedCsv(ValidationError): pass
class FrequencyMismatch(ValidationError): pass


# persistence
class IoFailure(StorageError): pass
class UnsupportedVersion(StorageError): pass
class CorruptSnapshot(StorageError): pass
class UnknownProject(NotFoundError): pass
class DuplicateProject(ConflictError): pass


# service
class PortInUse(WorkbenchError): pass
class BadConfig(ValidationError): pass
