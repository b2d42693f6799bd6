# This file is part enetacl module. The COPYRIGHT file at the top level of
# this repository contains the full copyright notices and license terms.
import re
import unittest

from trytond.config import config

from .. import __version__
from ..configuration import Configuration
from ..message import MESSAGES, gettext


class EnetaclTestCase(unittest.TestCase):
    'Test enetacl module'

    def tearDown(self):
        if config.has_section('enetacl'):
            config.remove_section('enetacl')

    def test_version(self):
        self.assertRegex(__version__, r'^\d+\.\d+\.\d+$')

    def test_configuration_defaults(self):
        if config.has_section('enetacl'):
            config.remove_section('enetacl')
        configuration = Configuration()
        self.assertIsNone(configuration.audit)
        self.assertEqual(configuration.verify_timeout, 60)
        self.assertEqual(configuration.verify_seed, 0)
        self.assertEqual(configuration.verify_random, 0)
        self.assertEqual(configuration.log_level, 'WARNING')

    def test_configuration(self):
        if not config.has_section('enetacl'):
            config.add_section('enetacl')
        config.set('enetacl', 'audit', '/var/log/enetacl.log')
        config.set('enetacl', 'verify_timeout', '5')
        config.set('enetacl', 'verify_random', '10')
        configuration = Configuration()
        self.assertEqual(configuration.audit, '/var/log/enetacl.log')
        self.assertEqual(configuration.verify_timeout, 5)
        self.assertEqual(configuration.verify_random, 10)

    def test_messages(self):
        for message_id, message in MESSAGES.items():
            self.assertTrue(message_id.startswith('enetacl.msg_'))
            names = re.findall(r'%\((\w+)\)s', message)
            text = gettext(message_id, **{x: x.upper() for x in names})
            for name in names:
                self.assertIn(name.upper(), text)

    def test_exceptions(self):
        from trytond.exceptions import UserError
        from .. import exceptions
        for name in exceptions.__all__:
            self.assertTrue(issubclass(getattr(exceptions, name), UserError))
        self.assertTrue(issubclass(exceptions.ChoiceError,
                exceptions.NetError))
        self.assertTrue(issubclass(exceptions.ModelMismatchError,
                exceptions.DocumentError))
        self.assertTrue(issubclass(exceptions.EntitlementError,
                exceptions.PolicyError))
        self.assertTrue(issubclass(exceptions.AuditParseError,
                exceptions.AuditError))
