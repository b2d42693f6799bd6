# This file is part enetacl module. The COPYRIGHT file at the top level of
# this repository contains the full copyright notices and license terms.
'''
Brute-force verification of the access predicates.

The oracles below evaluate the membership rules by direct quantifier
expansion over the raw matrices and cubes and never call the optimized
predicates of policy.py. A report collects every discrepancy found; the
first one is the counterexample shown to the user.
'''
import itertools
import logging
import random
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .audit import AuditLog
from .enet import build_net, inject, ScriptedChoices, MAXIMUM, QUIT
from .exceptions import VerifyTimeout, StructuralFault
from .message import gettext
from .policy import (EnglPolicy, EnlgPolicy, engl_can_access,
    engl_can_interact, enlg_can_access, enlg_can_interact, list_groups)

__all__ = ['TimeoutChecker', 'Discrepancy', 'VerifyReport', 'PREDICATES',
    'oracle_engl_access', 'oracle_engl_interact', 'oracle_enlg_witness',
    'verify_policy', 'check_properties', 'engl_small_policies',
    'sweep_engl_small', 'random_engl_policy', 'random_enlg_policy',
    'random_policy', 'sweep_random', 'fixed_clock']

logger = logging.getLogger(__name__)

PREDICATES = {
    'engl': {
        'access': engl_can_access,
        'interact': engl_can_interact,
        },
    'enlg': {
        'access': enlg_can_access,
        'interact': enlg_can_interact,
        },
    }


def fixed_clock():
    return datetime(2000, 1, 1, tzinfo=timezone.utc)


class TimeoutChecker:
    def __init__(self, timeout, callback=None):
        self._timeout = timeout
        self._callback = callback or self.timeout
        self._start = datetime.now()

    def check(self):
        if not self._timeout:
            return
        elapsed = (datetime.now() - self._start).total_seconds()
        if elapsed > self._timeout:
            self._callback()

    def timeout(self):
        raise VerifyTimeout(gettext('enetacl.msg_verify_timeout',
                timeout=self._timeout))


@dataclass(frozen=True)
class Discrepancy:
    check: str
    case: tuple
    expected: object
    found: object
    policy: object = None

    def render(self):
        return '%s %s: expected %s, found %s' % (self.check,
            ', '.join(str(x) for x in self.case), self.expected, self.found)


@dataclass
class VerifyReport:
    label: str
    policies: int = 0
    cases: int = 0
    sessions: int = 0
    discrepancies: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.discrepancies

    def compare(self, check, case, expected, found, policy=None):
        self.cases += 1
        if expected != found:
            discrepancy = Discrepancy(check, case, expected, found, policy)
            if not self.discrepancies:
                logger.info('%s: first discrepancy %s', self.label,
                    discrepancy.render())
            self.discrepancies.append(discrepancy)

    def merge(self, other):
        self.policies += other.policies
        self.cases += other.cases
        self.sessions += other.sessions
        self.discrepancies.extend(other.discrepancies)
        return self

    def render(self):
        lines = ['%s: %s policies, %s cases, %s sessions, %s discrepancies'
            % (self.label, self.policies, self.cases, self.sessions,
                len(self.discrepancies))]
        if self.discrepancies:
            lines.append('counterexample: %s'
                % self.discrepancies[0].render())
        return '\n'.join(lines)


# Oracles

def oracle_engl_access(policy, i, k, j):
    user_level = policy.lug[i - 1][j - 1]
    resource_level = policy.lrg[k - 1][j - 1]
    if user_level == 0 or resource_level == 0:
        return False
    return user_level >= resource_level


def oracle_engl_interact(policy, i0, i1, k, j):
    first = policy.lug[i0 - 1][j - 1]
    second = policy.lug[i1 - 1][j - 1]
    resource_level = policy.lrg[k - 1][j - 1]
    if first == 0 or second == 0 or resource_level == 0:
        return False
    return min(first, second) >= resource_level


def oracle_enlg_witnesses(policy, users, k):
    maximum = policy.lr[k - 1]
    if min(policy.lu[i - 1] for i in users) < maximum:
        return []
    res = []
    for j in range(1, policy.m + 1):
        for level in range(1, maximum + 1):
            if ((k, level, j) in policy.rlg
                    and all((i, level, j) in policy.ulg for i in users)):
                res.append((level, j))
    return res


def oracle_enlg_witness(policy, users, k):
    witnesses = oracle_enlg_witnesses(policy, users, k)
    return witnesses[0] if witnesses else None


def _witness(value):
    return None if value is None else tuple(value)


def check_predicates(policy, report, predicates=None):
    predicates = predicates or PREDICATES[policy.model]
    access, interact = predicates['access'], predicates['interact']
    users = range(1, policy.n + 1)
    groups = range(1, policy.m + 1)
    resources = range(1, policy.p + 1)
    if policy.model == 'engl':
        for i, k, j in itertools.product(users, resources, groups):
            report.compare('access', (i, k, j),
                oracle_engl_access(policy, i, k, j),
                access(policy, i, k, j), policy)
        for i0, i1, k, j in itertools.product(users, users, resources,
                groups):
            report.compare('interact', (i0, i1, k, j),
                oracle_engl_interact(policy, i0, i1, k, j),
                interact(policy, i0, i1, k, j), policy)
        return
    for i, k in itertools.product(users, resources):
        witness = _witness(access(policy, i, k))
        report.compare('access', (i, k),
            oracle_enlg_witness(policy, (i,), k), witness, policy)
        if witness is not None:
            report.compare('access witness', (i, k) + witness, True,
                witness in oracle_enlg_witnesses(policy, (i,), k), policy)
    for i0, i1, k in itertools.product(users, users, resources):
        witness = _witness(interact(policy, i0, i1, k))
        report.compare('interact', (i0, i1, k),
            oracle_enlg_witness(policy, (i0, i1), k), witness, policy)
        if witness is not None:
            report.compare('interact witness', (i0, i1, k) + witness, True,
                witness in oracle_enlg_witnesses(policy, (i0, i1), k),
                policy)


def check_properties(policy, report, predicates=None):
    'Interaction symmetry, self-collapse and for engl deny-by-default'
    predicates = predicates or PREDICATES[policy.model]
    access, interact = predicates['access'], predicates['interact']
    users = range(1, policy.n + 1)
    resources = range(1, policy.p + 1)
    if policy.model == 'engl':
        for i0, i1, k, j in itertools.product(users, users, resources,
                range(1, policy.m + 1)):
            result = interact(policy, i0, i1, k, j)
            report.compare('symmetry', (i0, i1, k, j), result,
                interact(policy, i1, i0, k, j), policy)
            report.compare('pairwise access', (i0, i1, k, j),
                access(policy, i0, k, j) and access(policy, i1, k, j),
                result, policy)
            if i0 == i1:
                report.compare('self-collapse', (i0, k, j),
                    access(policy, i0, k, j), result, policy)
            if 0 in (policy.lug[i0 - 1][j - 1], policy.lug[i1 - 1][j - 1],
                    policy.lrg[k - 1][j - 1]):
                report.compare('deny-by-default', (i0, i1, k, j), False,
                    result, policy)
        return
    for i0, i1, k in itertools.product(users, users, resources):
        result = interact(policy, i0, i1, k) is not None
        report.compare('symmetry', (i0, i1, k), result,
            interact(policy, i1, i0, k) is not None, policy)
        if i0 == i1:
            report.compare('self-collapse', (i0, k),
                access(policy, i0, k) is not None, result, policy)


def session_script(policy, i, j, k):
    '''
    Return the answers leading user i to resource k through group j or
    quitting when group j is not offered.
    '''
    if j not in [x for x, _ in list_groups(policy, i)]:
        return [QUIT]
    group, resource = policy.group_name(j), policy.resource_name(k)
    if policy.model == 'engl':
        return [group, MAXIMUM, resource]
    return [MAXIMUM, group, resource]


def grants(policy, i, k, j):
    if policy.model == 'engl':
        return oracle_engl_access(policy, i, k, j)
    return any(x == j for _, x in oracle_enlg_witnesses(policy, (i,), k))


def check_sessions(policy, report):
    '''
    Run a scripted session for every (user, group, resource) and check that
    UseResource fires exactly when the oracle grants access.
    '''
    for i, j, k in itertools.product(range(1, policy.n + 1),
            range(1, policy.m + 1), range(1, policy.p + 1)):
        case = (policy.user_name(i), policy.group_name(j),
            policy.resource_name(k))
        audit = AuditLog()
        session = inject(build_net(policy.model), policy.user_name(i),
            session='verify-%s-%s-%s' % (i, j, k), audit=audit,
            clock=fixed_clock)
        try:
            trace = session.run(policy, ScriptedChoices(
                    session_script(policy, i, j, k)))
        except StructuralFault as e:
            report.compare('safe net', case, None, e.message, policy)
            continue
        report.sessions += 1
        used = trace.names().count('t9')
        report.compare('session', case, int(grants(policy, i, k, j)), used,
            policy)
        records = audit.replay()
        report.compare('audit records', case, 1, len(records), policy)
        report.compare('used records', case, used,
            len([x for x in records if x.outcome == 'used']), policy)


def verify_policy(policy, predicates=None, sessions=True, label=None):
    report = VerifyReport(label or policy.model)
    report.policies += 1
    check_predicates(policy, report, predicates)
    check_properties(policy, report, predicates)
    if sessions:
        check_sessions(policy, report)
    return report


def engl_small_policies(levels=2):
    'Yield every engl policy with two users, groups and resources'
    values = range(levels + 1)
    for cells in itertools.product(values, repeat=8):
        yield EnglPolicy(levels, ('u1', 'u2'), ('g1', 'g2'), ('r1', 'r2'),
            (cells[0:2], cells[2:4]), (cells[4:6], cells[6:8]))


def granted_tuples(policy, predicates):
    access, interact = predicates['access'], predicates['interact']
    users = range(1, policy.n + 1)
    groups = range(1, policy.m + 1)
    resources = range(1, policy.p + 1)
    res = set()
    for i, k, j in itertools.product(users, resources, groups):
        if access(policy, i, k, j):
            res.add((i, k, j))
    for i0, i1, k, j in itertools.product(users, users, resources, groups):
        if interact(policy, i0, i1, k, j):
            res.add((i0, i1, k, j))
    return frozenset(res)


def sweep_engl_small(checker=None, predicates=None):
    '''
    Check every small engl policy against the oracles and the property
    suite, then check monotonicity: raising a single Lug entry by one never
    removes a granted tuple. Lowering is the same relation read backwards.
    '''
    predicates = predicates or PREDICATES['engl']
    report = VerifyReport('engl exhaustive')
    granted = {}
    for policy in engl_small_policies():
        if checker:
            checker.check()
        report.merge(verify_policy(policy, predicates, sessions=False))
        granted[(policy.lug, policy.lrg)] = granted_tuples(policy,
            predicates)
    for (lug, lrg), tuples in granted.items():
        if checker:
            checker.check()
        for i, j in itertools.product(range(1, 3), range(1, 3)):
            if lug[i - 1][j - 1] == 2:
                continue
            rows = [list(x) for x in lug]
            rows[i - 1][j - 1] += 1
            raised = granted[(tuple(tuple(x) for x in rows), lrg)]
            report.compare('monotonicity', (i, j, lug, lrg), True,
                tuples <= raised)
    logger.info(report.render())
    return report


def _names(prefix, count):
    return ['%s%s' % (prefix, x) for x in range(1, count + 1)]


def random_engl_policy(rng, max_size=4, max_levels=3, density=0.5):
    q = rng.randint(1, max_levels)
    n, m, p = (rng.randint(1, max_size) for _ in range(3))

    def level():
        return rng.randint(1, q) if rng.random() < density else 0

    return EnglPolicy(q, _names('u', n), _names('g', m), _names('r', p),
        [[level() for _ in range(m)] for _ in range(n)],
        [[level() for _ in range(m)] for _ in range(p)])


def random_enlg_policy(rng, max_size=4, max_levels=3, density=0.5):
    q = rng.randint(1, max_levels)
    n, m, p = (rng.randint(1, max_size) for _ in range(3))
    lu = [rng.randint(1, q) for _ in range(n)]
    lr = [rng.randint(1, q) for _ in range(p)]

    def cube(maximums):
        return {(index, level, j)
            for index, maximum in enumerate(maximums, 1)
            for level in range(1, maximum + 1)
            for j in range(1, m + 1)
            if rng.random() < density}

    return EnlgPolicy(q, _names('u', n), _names('g', m), _names('r', p),
        lu, lr, cube(lu), cube(lr))


def random_policy(model, rng, **kwargs):
    return {
        'engl': random_engl_policy,
        'enlg': random_enlg_policy,
        }[model](rng, **kwargs)


def sweep_random(count, seed=0, models=('engl', 'enlg'), sessions=True,
        checker=None, predicates=None):
    'Verify count random policies per model, reproducible from seed'
    rng = random.Random(seed)
    reports = []
    for model in models:
        report = VerifyReport('%s random' % model)
        for _ in range(count):
            if checker:
                checker.check()
            policy = random_policy(model, rng)
            report.merge(verify_policy(policy,
                    predicates and predicates.get(model), sessions=sessions))
        logger.info(report.render())
        reports.append(report)
    return reports
