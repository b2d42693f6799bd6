# This file is part enetacl module. The COPYRIGHT file at the top level of
# this repository contains the full copyright notices and license terms.
'''
Messages of the errors raised by the package.

The catalog plays the part of a Tryton message.xml, but there is no pool to
load it into, so gettext here is a plain %-format lookup by message id and
not trytond.i18n.gettext. Messages are not translated.
'''

__all__ = ['MESSAGES', 'gettext']

MESSAGES = {
    # policy
    'enetacl.msg_index_out_of_range': ('The %(axis)s index "%(index)s" is '
        'out of range [1, %(size)s].'),
    'enetacl.msg_unknown_name': 'Unknown %(axis)s "%(name)s".',
    'enetacl.msg_duplicate_name': ('The %(axis)s "%(name)s" is declared more '
        'than once.'),
    'enetacl.msg_invalid_dimension': ('The policy needs at least one '
        '%(axis)s.'),
    'enetacl.msg_level_out_of_range': ('Level %(level)s of %(what)s is out of '
        'range [%(low)s, %(high)s].'),
    'enetacl.msg_matrix_shape': ('Matrix "%(matrix)s" must be %(rows)s x '
        '%(columns)s.'),
    'enetacl.msg_cell_out_of_range': ('Cell %(cell)s of "%(cube)s" is outside '
        'the declared catalogs.'),
    'enetacl.msg_cell_above_entitlement': ('Cell %(cell)s of "%(cube)s" is '
        'above the maximum level %(maximum)s of %(name)s.'),
    'enetacl.msg_cap_above_entitlement': ('Level cap %(cap)s is above the '
        'entitlement %(maximum)s of user "%(user)s".'),
    'enetacl.msg_group_required': ('Model "engl" needs a group to evaluate '
        'access.'),
    # document
    'enetacl.msg_syntax_error': ('Invalid policy document at line %(line)s, '
        'column %(column)s: %(error)s'),
    'enetacl.msg_invalid_key': 'Invalid policy document: %(error)s',
    'enetacl.msg_unknown_model': ('Unknown model "%(model)s", expected one '
        'of: %(models)s.'),
    'enetacl.msg_model_mismatch': ('The policy document is for model '
        '"%(found)s" but "%(expected)s" was requested.'),
    'enetacl.msg_undeclared_reference': ('Entry "%(entry)s" references the '
        'undeclared %(axis)s "%(name)s".'),
    'enetacl.msg_invalid_name': ('Invalid %(axis)s name "%(name)s": names '
        'must be non-empty, contain no commas or whitespace and must not be '
        'one of: %(reserved)s.'),
    # net
    'enetacl.msg_busy_net': ('Net "%(net)s" already holds a session at '
        '"%(place)s".'),
    'enetacl.msg_script_underrun': ('No answer left for question "%(question)s" '
        'of session "%(session)s".'),
    'enetacl.msg_invalid_choice': ('Invalid %(question)s "%(answer)s" in '
        'session "%(session)s", expected one of: %(options)s.'),
    'enetacl.msg_structural_fault': 'Structural fault in net "%(net)s": '
        '%(fault)s',
    # audit
    'enetacl.msg_invalid_record': 'Invalid audit record: %(error)s',
    'enetacl.msg_record_parse': ('Malformed audit record at line %(line)s: '
        '%(error)s'),
    'enetacl.msg_audit_storage': ('Could not append to audit log "%(path)s": '
        '%(error)s'),
    # verify
    'enetacl.msg_verify_timeout': ('Verification exceeded the %(timeout)s '
        'seconds timeout.'),
    }


def gettext(message_id, **variables):
    return MESSAGES[message_id] % variables
