# This file is part enetacl module. The COPYRIGHT file at the top level of
# this repository contains the full copyright notices and license terms.
import itertools
import random
import unittest

from ..exceptions import (PolicyIndexError, UnknownNameError, PolicyRangeError,
    EntitlementError, DuplicateNameError)
from ..policy import (EnglPolicy, EnlgPolicy, AccessWitness,
    engl_member_user, engl_can_access, engl_can_interact, enlg_can_access,
    enlg_can_interact, enlg_witnesses, list_groups, list_resources,
    list_partners)
from ..verify import granted_tuples, random_engl_policy, PREDICATES


def engl_fixture(**values):
    return EnglPolicy(**dict({
                'q': 3,
                'users': ['u1', 'u2'],
                'groups': ['g1', 'g2'],
                'resources': ['r1', 'r2'],
                'lug': [[3, 0], [2, 1]],
                'lrg': [[2, 0], [0, 1]],
                }, **values))


def enlg_fixture(**values):
    return EnlgPolicy(**dict({
                'q': 3,
                'users': ['u1', 'u2'],
                'groups': ['g1'],
                'resources': ['r1'],
                'lu': [3, 2],
                'lr': [2],
                'ulg': {(1, 1, 1), (1, 2, 1), (2, 2, 1)},
                'rlg': {(1, 2, 1)},
                }, **values))


class EnglPolicyTestCase(unittest.TestCase):
    'Test groups then levels policies'

    def setUp(self):
        self.policy = engl_fixture()

    def test_member_user(self):
        self.assertTrue(engl_member_user(self.policy, 1, 1))
        self.assertFalse(engl_member_user(self.policy, 1, 2))
        self.assertTrue(engl_member_user(self.policy, 2, 2))

    def test_can_access(self):
        self.assertTrue(engl_can_access(self.policy, 1, 1, 1))
        self.assertFalse(engl_can_access(self.policy, 1, 2, 2))
        # equal levels
        self.assertTrue(engl_can_access(self.policy, 2, 1, 1))
        # resource not in the group
        self.assertFalse(engl_can_access(self.policy, 1, 2, 1))

    def test_can_interact(self):
        self.assertTrue(engl_can_interact(self.policy, 1, 2, 1, 1))
        self.assertFalse(engl_can_interact(self.policy, 1, 2, 2, 2))
        self.assertEqual(engl_can_interact(self.policy, 1, 1, 1, 1),
            engl_can_access(self.policy, 1, 1, 1))

    def test_interact_needs_resource_membership(self):
        policy = engl_fixture(lrg=[[0, 0], [0, 1]])
        self.assertFalse(engl_can_interact(policy, 1, 2, 1, 1))

    def test_index_errors(self):
        with self.assertRaises(PolicyIndexError) as cm:
            engl_can_access(self.policy, 3, 1, 1)
        self.assertIn('user', cm.exception.message)
        with self.assertRaises(PolicyIndexError) as cm:
            engl_can_access(self.policy, 1, 1, 0)
        self.assertIn('group', cm.exception.message)
        with self.assertRaises(PolicyIndexError) as cm:
            engl_can_interact(self.policy, 1, 2, 5, 1)
        self.assertIn('resource', cm.exception.message)

    def test_list_groups(self):
        self.assertEqual(list_groups(self.policy, 1), [(1, 3)])
        self.assertEqual(list_groups(self.policy, 2), [(1, 2), (2, 1)])
        policy = engl_fixture(lug=[[0, 0], [2, 1]])
        self.assertEqual(list_groups(policy, 1), [])

    def test_list_groups_level_cap(self):
        self.assertEqual(list_groups(self.policy, 1, level_cap=1), [(1, 1)])
        self.assertEqual(list_groups(self.policy, 2, level_cap=1),
            [(1, 1), (2, 1)])
        self.assertEqual(list_groups(self.policy, 1, level_cap=3), [(1, 3)])
        for cap in (0, 4):
            with self.assertRaises(PolicyRangeError):
                list_groups(self.policy, 1, level_cap=cap)

    def test_list_resources(self):
        self.assertEqual(list_resources(self.policy, 1, 1), [1])
        self.assertEqual(list_resources(self.policy, 1, 1, level_cap=1), [])
        self.assertEqual(list_resources(self.policy, 1, 1, level_cap=2), [1])
        self.assertEqual(list_resources(self.policy, 2, 2), [2])
        policy = engl_fixture(lrg=[[0, 0], [0, 1]])
        self.assertEqual(list_resources(policy, 1, 1), [])

    def test_list_resources_above_entitlement(self):
        with self.assertRaises(EntitlementError):
            list_resources(self.policy, 1, 1, level_cap=4)
        with self.assertRaises(EntitlementError):
            list_resources(self.policy, 2, 2, level_cap=2)

    def test_list_partners(self):
        self.assertEqual(list_partners(self.policy, 1, 1, 1), [1, 2])
        self.assertEqual(list_partners(self.policy, 2, 2, 2), [2])
        self.assertEqual(list_partners(self.policy, 1, 2, 2), [])
        with self.assertRaises(PolicyIndexError):
            list_partners(self.policy, 1, 1)

    def test_names(self):
        self.assertEqual(self.policy.user_index('u2'), 2)
        self.assertEqual(self.policy.group_name(2), 'g2')
        self.assertIsNone(self.policy.find('resource', 'r9'))
        with self.assertRaises(UnknownNameError) as cm:
            self.policy.user_index('eve')
        self.assertIn('eve', cm.exception.message)

    def test_invalid_policies(self):
        with self.assertRaises(PolicyRangeError):
            engl_fixture(lug=[[4, 0], [2, 1]])
        with self.assertRaises(PolicyRangeError):
            engl_fixture(lrg=[[-1, 0], [0, 1]])
        with self.assertRaises(PolicyRangeError):
            engl_fixture(lug=[[3, 0]])
        with self.assertRaises(PolicyRangeError):
            engl_fixture(q=0)
        with self.assertRaises(PolicyRangeError):
            engl_fixture(groups=[], lug=[[], []], lrg=[[], []])
        with self.assertRaises(DuplicateNameError):
            engl_fixture(users=['u1', 'u1'])

    def test_sorted_catalogs(self):
        policy = EnglPolicy(2, ['b', 'a'], ['g1'], ['r1'], [[2], [0]], [[1]])
        self.assertEqual(policy.users, ('a', 'b'))
        self.assertEqual(policy.lug, ((0,), (2,)))
        self.assertEqual(policy,
            EnglPolicy(2, ['a', 'b'], ['g1'], ['r1'], [[0], [2]], [[1]]))
        self.assertEqual(engl_fixture(groups=['g2', 'g1'],
                lug=[[0, 3], [1, 2]], lrg=[[0, 2], [1, 0]]), engl_fixture())

    def test_all_zero_policy_denies(self):
        policy = engl_fixture(lug=[[0, 0], [0, 0]])
        for i, k, j in itertools.product((1, 2), repeat=3):
            self.assertFalse(engl_can_access(policy, i, k, j))
        self.assertFalse(policy.is_member(1))

    def test_monotonicity(self):
        rng = random.Random(7)
        predicates = PREDICATES['engl']
        cases = 0
        while cases < 10000:
            policy = random_engl_policy(rng)
            granted = granted_tuples(policy, predicates)
            i = rng.randint(1, policy.n)
            j = rng.randint(1, policy.m)
            level = policy.user_level(i, j)
            for other in range(policy.q + 1):
                changed = granted_tuples(policy.with_lug(i, j, other),
                    predicates)
                if other >= level:
                    self.assertLessEqual(granted, changed)
                else:
                    self.assertLessEqual(changed, granted)
                cases += 1


class EnlgPolicyTestCase(unittest.TestCase):
    'Test levels then groups policies'

    def setUp(self):
        self.policy = enlg_fixture()

    def test_can_access(self):
        self.assertEqual(enlg_can_access(self.policy, 1, 1),
            AccessWitness(2, 1))
        self.assertEqual(enlg_can_access(self.policy, 2, 1),
            AccessWitness(2, 1))
        policy = enlg_fixture(rlg=set())
        for i in (1, 2):
            self.assertIsNone(enlg_can_access(policy, i, 1))

    def test_can_interact(self):
        self.assertEqual(enlg_can_interact(self.policy, 1, 2, 1),
            AccessWitness(2, 1))
        policy = enlg_fixture(ulg={(1, 1, 1), (1, 2, 1)})
        self.assertIsNone(enlg_can_interact(policy, 1, 2, 1))
        # min(Lu) below Lr(k)
        policy = enlg_fixture(lr=[3], rlg={(1, 2, 1), (1, 3, 1)})
        self.assertIsNone(enlg_can_interact(policy, 1, 2, 1))
        self.assertIsNotNone(enlg_can_access(policy, 1, 1))

    def test_symmetry(self):
        self.assertEqual(enlg_can_interact(self.policy, 1, 2, 1),
            enlg_can_interact(self.policy, 2, 1, 1))

    def test_witness_order(self):
        policy = enlg_fixture(groups=['g1', 'g2'],
            ulg={(1, 1, 2), (1, 2, 1), (1, 2, 2)},
            rlg={(1, 2, 1), (1, 1, 2), (1, 2, 2)})
        self.assertEqual(list(enlg_witnesses(policy, (1,), 1)),
            [(2, 1), (1, 2), (2, 2)])
        self.assertEqual(enlg_can_access(policy, 1, 1), AccessWitness(2, 1))
        self.assertEqual(list(enlg_witnesses(policy, (1,), 1, group=2,
                    level_cap=1)), [(1, 2)])
        # listed in the second group too
        self.assertEqual(list_resources(policy, 1, 2), [1])
        self.assertEqual(list_resources(policy, 1, 2, level_cap=1), [1])
        self.assertEqual(list_resources(policy, 1, 1, level_cap=1), [])
        with self.assertRaises(PolicyIndexError):
            list(enlg_witnesses(policy, (1,), 1, group=3))

    def test_list_groups(self):
        self.assertEqual(list_groups(self.policy, 1), [(1, 2)])
        self.assertEqual(list_groups(self.policy, 1, level_cap=1), [(1, 1)])
        self.assertEqual(list_groups(self.policy, 2, level_cap=1), [])
        with self.assertRaises(PolicyRangeError):
            list_groups(self.policy, 1, level_cap=4)

    def test_list_resources(self):
        self.assertEqual(list_resources(self.policy, 1, 1), [1])
        self.assertEqual(list_resources(self.policy, 1, 1, level_cap=1), [])
        with self.assertRaises(EntitlementError):
            list_resources(self.policy, 2, 1, level_cap=3)

    def test_list_partners(self):
        self.assertEqual(list_partners(self.policy, 1, 1), [1, 2])
        self.assertEqual(list_partners(self.policy, 1, 1, 1), [1, 2])
        policy = enlg_fixture(ulg={(1, 2, 1), (2, 1, 1)})
        self.assertEqual(list_partners(policy, 1, 1), [1])

    def test_invalid_policies(self):
        with self.assertRaises(EntitlementError):
            enlg_fixture(ulg={(2, 3, 1)})
        with self.assertRaises(EntitlementError):
            enlg_fixture(rlg={(1, 3, 1)})
        with self.assertRaises(PolicyRangeError):
            enlg_fixture(lu=[4, 2])
        with self.assertRaises(PolicyRangeError):
            enlg_fixture(lu=[0, 2])
        with self.assertRaises(PolicyRangeError):
            enlg_fixture(ulg={(3, 1, 1)})
        with self.assertRaises(PolicyRangeError):
            enlg_fixture(rlg={(1, 1, 2)})

    def test_sorted_catalogs(self):
        self.assertEqual(enlg_fixture(users=['u2', 'u1'], lu=[2, 3],
                ulg={(2, 1, 1), (2, 2, 1), (1, 2, 1)}), enlg_fixture())
        policy = EnlgPolicy(2, ['b', 'a'], ['h', 'g'], ['r'], [1, 2], [1],
            {(1, 1, 1), (2, 2, 2)}, {(1, 1, 1)})
        self.assertEqual(policy.users, ('a', 'b'))
        self.assertEqual(policy.groups, ('g', 'h'))
        self.assertEqual(policy.lu, (2, 1))
        self.assertEqual(policy.ulg, {(2, 1, 2), (1, 2, 1)})
        self.assertEqual(policy.rlg, {(1, 1, 2)})
        self.assertEqual(enlg_can_access(policy, 2, 1),
            AccessWitness(level=1, group=2))

    def test_index_errors(self):
        with self.assertRaises(PolicyIndexError):
            enlg_can_access(self.policy, 3, 1)
        with self.assertRaises(PolicyIndexError):
            enlg_can_interact(self.policy, 1, 2, 2)
