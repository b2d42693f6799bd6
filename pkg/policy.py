# This file is part enetacl module. The COPYRIGHT file at the top level of
# this repository contains the full copyright notices and license terms.
'''
Resource distribution policies and their access predicates.

Two models are supported:

* ``engl`` (groups then levels): every user and every resource gets a level
  per group, 0 meaning it does not belong to the group.
* ``enlg`` (levels then groups): every user and every resource gets a global
  maximum level, and membership in a group is granted level by level.

Users, groups and resources are addressed by their 1-based index in the
policy catalogs. Names are only resolved at the edges with ``user_index()``,
``group_index()`` and ``resource_index()``.
'''
from collections import namedtuple
from dataclasses import dataclass, replace
from functools import cached_property

from .exceptions import (PolicyIndexError, UnknownNameError, PolicyRangeError,
    EntitlementError, DuplicateNameError)
from .message import gettext

__all__ = ['MODELS', 'AccessWitness', 'EnglPolicy', 'EnlgPolicy',
    'engl_member_user', 'engl_can_access', 'engl_can_interact',
    'enlg_witnesses', 'enlg_can_access', 'enlg_can_interact', 'enlg_grants',
    'list_groups', 'list_resources', 'list_partners']

MODELS = ('engl', 'enlg')

AXES = ('user', 'group', 'resource')

AccessWitness = namedtuple('AccessWitness', ['level', 'group'])


class CatalogMixin(object):
    __slots__ = ()

    @property
    def n(self):
        return len(self.users)

    @property
    def m(self):
        return len(self.groups)

    @property
    def p(self):
        return len(self.resources)

    def check_catalogs(self):
        if self.q < 1:
            raise PolicyRangeError(gettext('enetacl.msg_level_out_of_range',
                    level=self.q, what='the level count', low=1, high='q'))
        for axis, names in zip(AXES, (self.users, self.groups,
                    self.resources)):
            if not names:
                raise PolicyRangeError(gettext(
                        'enetacl.msg_invalid_dimension', axis=axis))
            seen = set()
            for name in names:
                if name in seen:
                    raise DuplicateNameError(gettext(
                            'enetacl.msg_duplicate_name', axis=axis,
                            name=name))
                seen.add(name)

    def sort_catalogs(self):
        '''
        Sort every catalog by name.

        Return, per axis, the former 0-based positions in the new order.
        '''
        orders = []
        for axis in AXES:
            names = getattr(self, axis + 's')
            order = sorted(range(len(names)), key=names.__getitem__)
            object.__setattr__(self, axis + 's',
                tuple(names[x] for x in order))
            orders.append(order)
        return orders

    def check_index(self, axis, index):
        size = len(getattr(self, axis + 's'))
        if (not isinstance(index, int) or isinstance(index, bool)
                or not 1 <= index <= size):
            raise PolicyIndexError(gettext('enetacl.msg_index_out_of_range',
                    axis=axis, index=index, size=size))
        return index

    def check_user(self, i):
        return self.check_index('user', i)

    def check_group(self, j):
        return self.check_index('group', j)

    def check_resource(self, k):
        return self.check_index('resource', k)

    def find(self, axis, name):
        'Return the index of name in the axis catalog or None'
        return self._positions[axis].get(name)

    def index(self, axis, name):
        index = self.find(axis, name)
        if index is None:
            raise UnknownNameError(gettext('enetacl.msg_unknown_name',
                    axis=axis, name=name))
        return index

    def user_index(self, name):
        return self.index('user', name)

    def group_index(self, name):
        return self.index('group', name)

    def resource_index(self, name):
        return self.index('resource', name)

    def user_name(self, i):
        return self.users[self.check_user(i) - 1]

    def group_name(self, j):
        return self.groups[self.check_group(j) - 1]

    def resource_name(self, k):
        return self.resources[self.check_resource(k) - 1]

    @cached_property
    def _positions(self):
        return {
            axis: {name: position for position, name in enumerate(names, 1)}
            for axis, names in zip(AXES, (self.users, self.groups,
                    self.resources))
            }


@dataclass(frozen=True)
class EnglPolicy(CatalogMixin):
    '''
    Groups then levels.

    lug[i - 1][j - 1] is the maximum level of user i in group j and
    lrg[k - 1][j - 1] the level of resource k in group j; 0 means the user or
    the resource does not belong to the group. Catalogs are sorted by name on
    creation and the matrices permuted to match.
    '''
    q: int
    users: tuple
    groups: tuple
    resources: tuple
    lug: tuple
    lrg: tuple

    model = 'engl'

    def __post_init__(self):
        for name in ('users', 'groups', 'resources'):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        for name in ('lug', 'lrg'):
            object.__setattr__(self, name,
                tuple(tuple(row) for row in getattr(self, name)))
        self.check_catalogs()
        self.check_matrix('lug', self.lug, self.users)
        self.check_matrix('lrg', self.lrg, self.resources)
        users, groups, resources = self.sort_catalogs()
        object.__setattr__(self, 'lug', tuple(
                tuple(self.lug[x][y] for y in groups) for x in users))
        object.__setattr__(self, 'lrg', tuple(
                tuple(self.lrg[x][y] for y in groups) for x in resources))

    def check_matrix(self, matrix, rows, names):
        if (len(rows) != len(names)
                or any(len(row) != self.m for row in rows)):
            raise PolicyRangeError(gettext('enetacl.msg_matrix_shape',
                    matrix=matrix, rows=len(names), columns=self.m))
        for name, row in zip(names, rows):
            for group, level in zip(self.groups, row):
                if (not isinstance(level, int) or isinstance(level, bool)
                        or not 0 <= level <= self.q):
                    raise PolicyRangeError(gettext(
                            'enetacl.msg_level_out_of_range', level=level,
                            what='%s(%s, %s)' % (matrix, name, group),
                            low=0, high=self.q))

    def user_level(self, i, j):
        return self.lug[self.check_user(i) - 1][self.check_group(j) - 1]

    def resource_level(self, k, j):
        return self.lrg[self.check_resource(k) - 1][self.check_group(j) - 1]

    def with_lug(self, i, j, level):
        'Return a copy of the policy with Lug(i, j) set to level'
        rows = [list(row) for row in self.lug]
        rows[self.check_user(i) - 1][self.check_group(j) - 1] = level
        return replace(self, lug=rows)

    def is_member(self, i):
        return any(self.lug[self.check_user(i) - 1])

    def member_groups(self, i, level_cap=None):
        row = self.lug[self.check_user(i) - 1]
        if level_cap is not None:
            row = [min(level, level_cap) for level in row]
        return [(j, level) for j, level in enumerate(row, 1) if level > 0]

    def entitlement(self, i, j):
        return self.user_level(i, j)

    def grants(self, i, k, j, level_cap=None):
        if not engl_can_access(self, i, k, j):
            return False
        return level_cap is None or self.resource_level(k, j) <= level_cap


@dataclass(frozen=True)
class EnlgPolicy(CatalogMixin):
    '''
    Levels then groups.

    lu and lr hold the maximum level of every user and resource. ulg and rlg
    are the sparse membership cubes: (i, l, j) in ulg means user i belongs to
    group j at level l, (k, l, j) in rlg the same for resource k. Catalogs are
    sorted by name on creation and the cube indexes renumbered to match.
    '''
    q: int
    users: tuple
    groups: tuple
    resources: tuple
    lu: tuple
    lr: tuple
    ulg: frozenset
    rlg: frozenset

    model = 'enlg'

    def __post_init__(self):
        for name in ('users', 'groups', 'resources', 'lu', 'lr'):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        for name in ('ulg', 'rlg'):
            object.__setattr__(self, name,
                frozenset(tuple(x) for x in getattr(self, name)))
        self.check_catalogs()
        self.check_maximums('lu', self.lu, self.users)
        self.check_maximums('lr', self.lr, self.resources)
        self.check_cube('ulg', self.ulg, 'user', self.lu)
        self.check_cube('rlg', self.rlg, 'resource', self.lr)
        users, groups, resources = self.sort_catalogs()
        for vector, order in (('lu', users), ('lr', resources)):
            levels = getattr(self, vector)
            object.__setattr__(self, vector, tuple(levels[x] for x in order))
        groups = {old + 1: new for new, old in enumerate(groups, 1)}
        for cube, order in (('ulg', users), ('rlg', resources)):
            rows = {old + 1: new for new, old in enumerate(order, 1)}
            object.__setattr__(self, cube, frozenset(
                    (rows[index], level, groups[j])
                    for index, level, j in getattr(self, cube)))

    def check_maximums(self, vector, levels, names):
        if len(levels) != len(names):
            raise PolicyRangeError(gettext('enetacl.msg_matrix_shape',
                    matrix=vector, rows=len(names), columns=1))
        for name, level in zip(names, levels):
            if (not isinstance(level, int) or isinstance(level, bool)
                    or not 1 <= level <= self.q):
                raise PolicyRangeError(gettext(
                        'enetacl.msg_level_out_of_range', level=level,
                        what='%s(%s)' % (vector, name), low=1, high=self.q))

    def check_cube(self, cube, cells, axis, maximums):
        size = len(maximums)
        for cell in cells:
            if len(cell) != 3 or not all(
                    isinstance(x, int) and not isinstance(x, bool)
                    for x in cell):
                raise PolicyRangeError(gettext(
                        'enetacl.msg_cell_out_of_range', cell=cell,
                        cube=cube))
            index, level, j = cell
            if not (1 <= index <= size and 1 <= level <= self.q
                    and 1 <= j <= self.m):
                raise PolicyRangeError(gettext(
                        'enetacl.msg_cell_out_of_range', cell=cell,
                        cube=cube))
            if level > maximums[index - 1]:
                names = getattr(self, axis + 's')
                raise EntitlementError(gettext(
                        'enetacl.msg_cell_above_entitlement', cell=cell,
                        cube=cube, maximum=maximums[index - 1],
                        name=names[index - 1]))

    def user_maximum(self, i):
        return self.lu[self.check_user(i) - 1]

    def resource_maximum(self, k):
        return self.lr[self.check_resource(k) - 1]

    def is_member(self, i):
        return bool(self.user_cells[self.check_user(i)])

    def member_groups(self, i, level_cap=None):
        maximums = {}
        for level, j in self.user_cells[self.check_user(i)]:
            if level_cap is not None and level > level_cap:
                continue
            maximums[j] = max(level, maximums.get(j, 0))
        return sorted(maximums.items())

    def entitlement(self, i, j):
        self.check_group(j)
        return self.user_maximum(i)

    def grants(self, i, k, j, level_cap=None):
        return enlg_grants(self, i, k, j, level_cap)

    @cached_property
    def user_cells(self):
        'Map every user index to the frozenset of its (level, group) cells'
        return self._cells(self.ulg, self.n)

    @cached_property
    def resource_cells(self):
        '''
        Map every resource index to its (level, group) cells sorted by group
        then level, the witness order.
        '''
        return {k: sorted(cells, key=lambda x: (x[1], x[0]))
            for k, cells in self._cells(self.rlg, self.p).items()}

    @staticmethod
    def _cells(cube, size):
        res = {x: set() for x in range(1, size + 1)}
        for index, level, j in cube:
            res[index].add((level, j))
        return {x: frozenset(cells) for x, cells in res.items()}


def engl_member_user(policy, i, j):
    return policy.user_level(i, j) > 0


def engl_can_access(policy, i, k, j):
    user_level = policy.user_level(i, j)
    resource_level = policy.resource_level(k, j)
    return user_level > 0 and resource_level > 0 and (
        user_level >= resource_level)


def engl_can_interact(policy, i0, i1, k, j):
    # 0 is the non-membership sentinel, never a level
    levels = (policy.user_level(i0, j), policy.user_level(i1, j))
    resource_level = policy.resource_level(k, j)
    return min(levels) > 0 and resource_level > 0 and (
        min(levels) >= resource_level)


def enlg_witnesses(policy, users, k, group=None, level_cap=None):
    '''
    Yield every (level, group) witness shared by users and resource k, by
    ascending group then level.

    Nothing is yielded unless min(Lu(i) for i in users) >= Lr(k).
    '''
    if group is not None:
        policy.check_group(group)
    maximum = policy.resource_maximum(k)
    for i in users:
        if policy.user_maximum(i) < maximum:
            return
    cells = [policy.user_cells[i] for i in users]
    for level, j in policy.resource_cells[k]:
        if group is not None and j != group:
            continue
        if level_cap is not None and level > level_cap:
            continue
        if all((level, j) in x for x in cells):
            yield AccessWitness(level, j)


def enlg_can_access(policy, i, k):
    policy.check_user(i)
    return next(enlg_witnesses(policy, (i,), k), None)


def enlg_can_interact(policy, i0, i1, k):
    policy.check_user(i0)
    policy.check_user(i1)
    return next(enlg_witnesses(policy, (i0, i1), k), None)


def enlg_grants(policy, i, k, j, level_cap=None):
    'Tell if user i reaches resource k through group j at most at level_cap'
    policy.check_user(i)
    return next(enlg_witnesses(policy, (i,), k, group=j,
            level_cap=level_cap), None) is not None


def list_groups(policy, i, level_cap=None):
    '''
    Return the (group, maximum level) pairs of user i by group index.

    With level_cap the user is taken to act at most at that level: engl
    reports the levels lowered to the cap, enlg only counts memberships at
    levels <= level_cap.
    '''
    if level_cap is not None and (not isinstance(level_cap, int)
            or not 1 <= level_cap <= policy.q):
        raise PolicyRangeError(gettext('enetacl.msg_level_out_of_range',
                level=level_cap, what='the level cap', low=1, high=policy.q))
    return policy.member_groups(i, level_cap)


def list_resources(policy, i, j, level_cap=None):
    '''
    Return the indexes of the resources user i can use in group j.

    With level_cap only the resources at most at that level are listed; it
    can not go above the user's entitlement (Lug(i, j) for engl, Lu(i) for
    enlg).
    '''
    if level_cap is not None:
        maximum = policy.entitlement(i, j)
        if level_cap > maximum:
            raise EntitlementError(gettext(
                    'enetacl.msg_cap_above_entitlement', cap=level_cap,
                    maximum=maximum, user=policy.user_name(i)))
    return [k for k in range(1, policy.p + 1)
        if policy.grants(i, k, j, level_cap)]


def list_partners(policy, i, k, j=None):
    '''
    Return the indexes of the users user i can interact with by resource k.

    engl needs the group j, enlg takes it as an optional restriction of the
    witnesses.
    '''
    policy.check_user(i)
    policy.check_resource(k)
    if policy.model == 'engl':
        if j is None:
            raise PolicyIndexError(gettext('enetacl.msg_group_required'))
        return [x for x in range(1, policy.n + 1)
            if engl_can_interact(policy, i, x, k, j)]
    return [x for x in range(1, policy.n + 1)
        if next(enlg_witnesses(policy, (i, x), k, group=j), None)]
