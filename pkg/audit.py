# This file is part enetacl module. The COPYRIGHT file at the top level of
# this repository contains the full copyright notices and license terms.
import io
import json
import logging
import os
import threading
from dataclasses import dataclass, asdict
from datetime import datetime, timezone

from dateutil import parser as dateparser

from .exceptions import (AuditValidationError, AuditParseError,
    AuditStorageError)
from .message import gettext

__all__ = ['AUDIT_KEYS', 'OUTCOMES', 'AuditRecord', 'AuditLog', 'utc_now',
    'format_timestamp', 'replay']

logger = logging.getLogger(__name__)

# Order of the keys in every log line
AUDIT_KEYS = ('model', 'ts', 'session', 'transition', 'user', 'group',
    'level', 'resource', 'outcome')
OUTCOMES = ('used', 'denied', 'quit')
AUDIT_MODELS = ('engl', 'enlg')


def format_timestamp(value):
    'Format an aware datetime as UTC ISO-8601 with milliseconds'
    value = value.astimezone(timezone.utc)
    return value.strftime('%Y-%m-%dT%H:%M:%S.') + '%03dZ' % (
        value.microsecond // 1000)


def utc_now():
    return datetime.now(timezone.utc)


@dataclass(frozen=True)
class AuditRecord:
    ts: str
    session: str
    model: str
    user: str
    transition: str
    outcome: str
    group: str = ''
    level: int = 0
    resource: str = ''

    def check(self):
        for name in ('ts', 'session', 'model', 'user', 'transition',
                'outcome', 'group', 'resource'):
            if not isinstance(getattr(self, name), str):
                self.invalid('"%s" must be a string' % name)
        for name in ('session', 'transition'):
            if not getattr(self, name):
                self.invalid('"%s" can not be empty' % name)
        if self.model not in AUDIT_MODELS:
            self.invalid('unknown model "%s"' % self.model)
        if self.outcome not in OUTCOMES:
            self.invalid('unknown outcome "%s"' % self.outcome)
        if (not isinstance(self.level, int) or isinstance(self.level, bool)
                or self.level < 0):
            self.invalid('level "%s" must be a positive integer' % self.level)
        self.check_timestamp()
        if self.outcome == 'used':
            if self.model == 'engl' and not self.group:
                self.invalid('a "used" record needs a group')
            if not self.resource:
                self.invalid('a "used" record needs a resource')
            if self.level < 1:
                self.invalid('a "used" record needs a level')

    def check_timestamp(self):
        try:
            value = dateparser.isoparse(self.ts)
        except ValueError:
            self.invalid('invalid timestamp "%s"' % self.ts)
        if value.utcoffset() is None or value.utcoffset().total_seconds():
            self.invalid('timestamp "%s" is not UTC' % self.ts)

    def invalid(self, error):
        raise AuditValidationError(gettext('enetacl.msg_invalid_record',
                error=error))

    def to_line(self):
        values = asdict(self)
        return json.dumps({x: values[x] for x in AUDIT_KEYS},
            ensure_ascii=False)

    @classmethod
    def from_line(cls, line):
        values = json.loads(line)
        if not isinstance(values, dict):
            raise ValueError('expected an object')
        if set(values) != set(AUDIT_KEYS):
            raise ValueError('expected the keys %s' % ', '.join(AUDIT_KEYS))
        record = cls(**values)
        record.check()
        return record


class AuditLog(object):
    '''
    Append only audit log, one JSON record per line.

    Without a path the lines are only kept in memory. The sequence number of
    a record is its line number. Appends require a timestamp no older than
    the previous one. Records sharing a timestamp keep their append order, the
    sequence being the tiebreaker of the (ts, session, sequence) order.
    '''

    def __init__(self, path=None):
        self.path = path
        self.lines = []
        self._lock = threading.Lock()
        self._sequence = 0
        self._last_ts = None
        if path and os.path.exists(path):
            records = replay(path)
            self._sequence = len(records)
            if records:
                self._last_ts = records[-1].ts

    @property
    def sequence(self):
        return self._sequence

    def append(self, record):
        record.check()
        line = record.to_line()
        with self._lock:
            if self._last_ts and (dateparser.isoparse(record.ts)
                    < dateparser.isoparse(self._last_ts)):
                record.invalid('timestamp "%s" is older than "%s"'
                    % (record.ts, self._last_ts))
            if self.path:
                self.write(line)
            self.lines.append(line)
            self._sequence += 1
            self._last_ts = record.ts
            logger.debug('audit %s #%s: %s', self.path or 'memory',
                self._sequence, line)
            return self._sequence

    def write(self, line):
        try:
            with io.open(self.path, 'a', encoding='utf-8',
                    newline='\n') as log:
                log.write(line + '\n')
                log.flush()
                os.fsync(log.fileno())
        except OSError as e:
            raise AuditStorageError(gettext('enetacl.msg_audit_storage',
                    path=self.path, error=e))

    def replay(self):
        if self.path:
            return replay(self.path)
        return parse_lines(self.lines)


def parse_lines(lines):
    'Parse the lines of a log, str or UTF-8 encoded bytes'
    records = []
    for number, line in enumerate(lines, 1):
        try:
            if isinstance(line, bytes):
                line = line.decode('utf-8')
            records.append(AuditRecord.from_line(line))
        except (ValueError, TypeError) as e:
            raise AuditParseError(gettext('enetacl.msg_record_parse',
                    line=number, error=e))
        except AuditValidationError as e:
            raise AuditParseError(gettext('enetacl.msg_record_parse',
                    line=number, error=e.message))
    return records


def replay(path):
    'Return the records stored in the log file at path, in file order'
    with io.open(path, 'rb') as log:
        data = log.read()
    if not data:
        return []
    lines = data.split(b'\n')
    if lines[-1] == b'':
        lines.pop()
    return parse_lines(lines)
