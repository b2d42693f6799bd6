# This file is part enetacl module. The COPYRIGHT file at the top level of
# this repository contains the full copyright notices and license terms.
from trytond.exceptions import UserError

__all__ = ['PolicyError', 'PolicyIndexError', 'UnknownNameError',
    'PolicyRangeError', 'EntitlementError', 'DuplicateNameError',
    'DocumentError', 'DocumentSyntaxError', 'ModelTagError',
    'DocumentReferenceError', 'ModelMismatchError',
    'NetError', 'BusyNetError', 'ChoiceError', 'ScriptUnderrunError',
    'StructuralFault', 'AuditError', 'AuditValidationError', 'AuditParseError',
    'AuditStorageError', 'VerifyTimeout']


class PolicyError(UserError):
    pass


class PolicyIndexError(PolicyError):
    pass


class UnknownNameError(PolicyError):
    pass


class PolicyRangeError(PolicyError):
    pass


class EntitlementError(PolicyError):
    pass


class DuplicateNameError(PolicyError):
    pass


class DocumentError(UserError):
    pass


class DocumentSyntaxError(DocumentError):
    pass


class ModelTagError(DocumentError):
    pass


class DocumentReferenceError(DocumentError):
    pass


class ModelMismatchError(DocumentError):
    pass


class NetError(UserError):
    pass


class BusyNetError(NetError):
    pass


class ChoiceError(NetError):
    pass


class ScriptUnderrunError(NetError):
    pass


class StructuralFault(NetError):
    pass


class AuditError(UserError):
    pass


class AuditValidationError(AuditError):
    pass


class AuditParseError(AuditError):
    pass


class AuditStorageError(AuditError):
    pass


class VerifyTimeout(UserError):
    pass
