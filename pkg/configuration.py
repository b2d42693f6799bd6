# The COPYRIGHT file at the top level of this repository contains the full
# copyright notices and license terms.
from trytond.config import config

__all__ = ['Configuration']


class Configuration(object):
    '''
    Settings of the [enetacl] section of the trytond configuration file.

    Any option can also be set with a TRYTOND_ENETACL__<OPTION> environment
    variable.
    '''
    section = 'enetacl'

    @property
    def audit(self):
        return config.get(self.section, 'audit') or None

    @property
    def verify_timeout(self):
        return config.getint(self.section, 'verify_timeout', default=60)

    @property
    def verify_seed(self):
        return config.getint(self.section, 'verify_seed', default=0)

    @property
    def verify_random(self):
        return config.getint(self.section, 'verify_random', default=0)

    @property
    def log_level(self):
        return config.get(self.section, 'log_level', default='WARNING')
