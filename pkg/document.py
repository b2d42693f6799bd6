# This file is part enetacl module. The COPYRIGHT file at the top level of
# this repository contains the full copyright notices and license terms.
'''
Policy documents.

A policy file is a JSON object; doc/index.rst describes the schema. Absent
matrix entries mean 0 (engl) and absent triples mean "not a member" (enlg).
'''
import io
import json
import logging
from dataclasses import dataclass, field

from .enet import RESERVED_ANSWERS
from .exceptions import (DocumentSyntaxError, ModelTagError,
    DocumentReferenceError, ModelMismatchError, DuplicateNameError,
    PolicyRangeError, EntitlementError)
from .message import gettext
from .policy import MODELS, EnglPolicy, EnlgPolicy

__all__ = ['PolicyDocument', 'parse', 'validate', 'serialize', 'to_document',
    'load']

logger = logging.getLogger(__name__)

CATALOGS = (('users', 'user'), ('groups', 'group'), ('resources', 'resource'))
MODEL_KEYS = {
    'engl': ('model', 'levels', 'users', 'groups', 'resources', 'lug', 'lrg'),
    'enlg': ('model', 'levels', 'users', 'groups', 'resources', 'lu', 'lr',
        'ulg', 'rlg'),
    }


@dataclass
class PolicyDocument:
    model: str
    levels: int
    users: list
    groups: list
    resources: list
    lug: dict = field(default_factory=dict)
    lrg: dict = field(default_factory=dict)
    lu: dict = field(default_factory=dict)
    lr: dict = field(default_factory=dict)
    ulg: list = field(default_factory=list)
    rlg: list = field(default_factory=list)

    def check_names(self):
        for key, axis in CATALOGS:
            names = getattr(self, key)
            if not isinstance(names, list):
                invalid_key('"%s" must be a list of names' % key)
            seen = set()
            for name in names:
                if (not isinstance(name, str) or not name
                        or name in RESERVED_ANSWERS or ',' in name
                        or any(x.isspace() for x in name)):
                    raise DocumentSyntaxError(gettext(
                            'enetacl.msg_invalid_name', axis=axis, name=name,
                            reserved=', '.join(x for x in RESERVED_ANSWERS
                                if x)))
                if name in seen:
                    raise DuplicateNameError(gettext(
                            'enetacl.msg_duplicate_name', axis=axis,
                            name=name))
                seen.add(name)

    def check_reference(self, entry, axis, name):
        names = getattr(self, axis + 's')
        if name not in names:
            raise DocumentReferenceError(gettext(
                    'enetacl.msg_undeclared_reference', entry=entry, axis=axis,
                    name=name))

    def check_engl(self):
        for key, axis in (('lug', 'user'), ('lrg', 'resource')):
            matrix = getattr(self, key)
            if not isinstance(matrix, dict):
                invalid_key('"%s" must be an object' % key)
            for name, row in matrix.items():
                self.check_reference(key, axis, name)
                if not isinstance(row, dict):
                    invalid_key('"%s.%s" must be an object' % (key, name))
                for group, level in row.items():
                    self.check_reference('%s.%s' % (key, name), 'group',
                        group)
                    check_integer('%s.%s.%s' % (key, name, group), level)

    def check_enlg(self):
        for key, axis in (('lu', 'user'), ('lr', 'resource')):
            vector = getattr(self, key)
            if not isinstance(vector, dict):
                invalid_key('"%s" must be an object' % key)
            for name, level in vector.items():
                self.check_reference(key, axis, name)
                check_integer('%s.%s' % (key, name), level)
        for key, axis in (('ulg', 'user'), ('rlg', 'resource')):
            cube = getattr(self, key)
            if not isinstance(cube, list):
                invalid_key('"%s" must be a list' % key)
            triples = []
            for triple in cube:
                if not isinstance(triple, (list, tuple)) or len(triple) != 3:
                    invalid_key('"%s" entries must be [name, level, group] '
                        'triples' % key)
                name, level, group = triple
                self.check_reference(key, axis, name)
                self.check_reference('%s.%s' % (key, name), 'group', group)
                check_integer('%s.%s' % (key, name), level)
                triples.append(tuple(triple))
            setattr(self, key, triples)


def invalid_key(error):
    raise DocumentSyntaxError(gettext('enetacl.msg_invalid_key', error=error))


def check_integer(entry, value):
    if not isinstance(value, int) or isinstance(value, bool):
        invalid_key('"%s" must be an integer' % entry)


def unique_pairs(pairs):
    res = {}
    for key, value in pairs:
        if key in res:
            raise DuplicateNameError(gettext('enetacl.msg_duplicate_name',
                    axis='key', name=key))
        res[key] = value
    return res


def parse(text):
    'Parse the text of a policy file into a PolicyDocument'
    try:
        values = json.loads(text, object_pairs_hook=unique_pairs)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(gettext('enetacl.msg_syntax_error',
                line=e.lineno, column=e.colno, error=e.msg))
    if not isinstance(values, dict):
        invalid_key('the document must be an object')
    model = values.get('model')
    if model not in MODELS:
        raise ModelTagError(gettext('enetacl.msg_unknown_model', model=model,
                models=', '.join(MODELS)))
    keys = MODEL_KEYS[model]
    missing = [x for x in keys if x not in values]
    if missing:
        invalid_key('missing keys %s' % ', '.join(missing))
    unknown = sorted(set(values) - set(keys))
    if unknown:
        invalid_key('unknown keys %s for model "%s"' % (', '.join(unknown),
                model))
    check_integer('levels', values['levels'])
    document = PolicyDocument(**values)
    document.check_names()
    getattr(document, 'check_%s' % model)()
    return document


def _validate_engl(document, users, groups, resources):
    matrices = {}
    for key, names in (('lug', users), ('lrg', resources)):
        rows = []
        for name in names:
            row = getattr(document, key).get(name, {})
            for group, level in row.items():
                if not 0 <= level <= document.levels:
                    raise PolicyRangeError(gettext(
                            'enetacl.msg_level_out_of_range', level=level,
                            what='%s(%s, %s)' % (key, name, group), low=0,
                            high=document.levels))
            rows.append([row.get(x, 0) for x in groups])
        matrices[key] = rows
    return EnglPolicy(document.levels, users, groups, resources,
        matrices['lug'], matrices['lrg'])


def _validate_enlg(document, users, groups, resources):
    vectors = {}
    cubes = {}
    for vector, cube, names in (('lu', 'ulg', users),
            ('lr', 'rlg', resources)):
        maximums = getattr(document, vector)
        for name in names:
            level = maximums.get(name)
            if level is None or not 1 <= level <= document.levels:
                raise PolicyRangeError(gettext(
                        'enetacl.msg_level_out_of_range',
                        level='missing' if level is None else level,
                        what='%s(%s)' % (vector, name), low=1,
                        high=document.levels))
        vectors[vector] = [maximums[x] for x in names]
        positions = {x: i for i, x in enumerate(names, 1)}
        cells = set()
        for name, level, group in getattr(document, cube):
            if not 1 <= level <= document.levels:
                raise PolicyRangeError(gettext(
                        'enetacl.msg_level_out_of_range', level=level,
                        what='%s(%s, %s)' % (cube, name, group), low=1,
                        high=document.levels))
            if level > maximums[name]:
                raise EntitlementError(gettext(
                        'enetacl.msg_cell_above_entitlement',
                        cell=(name, level, group), cube=cube,
                        maximum=maximums[name], name=name))
            cells.add((positions[name], level, groups.index(group) + 1))
        cubes[cube] = cells
    return EnlgPolicy(document.levels, users, groups, resources,
        vectors['lu'], vectors['lr'], cubes['ulg'], cubes['rlg'])


def validate(document, model=None):
    '''
    Build the policy described by a parsed document.

    Catalog indexes follow the sorted order of the names. When model is given
    the document must be for that model.
    '''
    if model and model != document.model:
        raise ModelMismatchError(gettext('enetacl.msg_model_mismatch',
                found=document.model, expected=model))
    if document.levels < 1:
        raise PolicyRangeError(gettext('enetacl.msg_level_out_of_range',
                level=document.levels, what='levels', low=1, high='levels'))
    users, groups, resources = (sorted(getattr(document, x))
        for x, _ in CATALOGS)
    validator = {
        'engl': _validate_engl,
        'enlg': _validate_enlg,
        }[document.model]
    return validator(document, users, groups, resources)


def to_document(policy):
    'Return the canonical document of policy'
    users, groups, resources = (sorted(getattr(policy, x))
        for x, _ in CATALOGS)
    document = PolicyDocument(policy.model, policy.q, users, groups,
        resources)
    if policy.model == 'engl':
        for key, names, matrix in (('lug', policy.users, policy.lug),
                ('lrg', policy.resources, policy.lrg)):
            rows = {}
            for name, row in sorted(zip(names, matrix)):
                levels = {g: x for g, x in sorted(zip(policy.groups, row))
                    if x}
                if levels:
                    rows[name] = levels
            setattr(document, key, rows)
    else:
        document.lu = dict(sorted(zip(policy.users, policy.lu)))
        document.lr = dict(sorted(zip(policy.resources, policy.lr)))
        for key, names in (('ulg', policy.users), ('rlg', policy.resources)):
            setattr(document, key, sorted(
                    (names[index - 1], level, policy.groups[j - 1])
                    for index, level, j in getattr(policy, key)))
    return document


def serialize(policy):
    'Return the canonical text of policy'
    document = to_document(policy)
    lines = []
    for key in MODEL_KEYS[policy.model]:
        value = getattr(document, key)
        if key in ('ulg', 'rlg'):
            value = [list(x) for x in value]
        lines.append('  %s: %s' % (json.dumps(key),
                json.dumps(value, ensure_ascii=False)))
    return '{\n' + ',\n'.join(lines) + '\n}\n'


def load(path, model=None):
    with io.open(path, 'rb') as policy_file:
        data = policy_file.read()
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError as e:
        raise DocumentSyntaxError(gettext('enetacl.msg_syntax_error',
                line=data.count(b'\n', 0, e.start) + 1,
                column=e.start - data.rfind(b'\n', 0, e.start),
                error=e.reason))
    document = parse(text)
    policy = validate(document, model)
    logger.debug('loaded %s policy from %s: %s users, %s groups, '
        '%s resources', policy.model, path, policy.n, policy.m, policy.p)
    return policy
