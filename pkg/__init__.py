# This file is part enetacl module. The COPYRIGHT file at the top level of
# this repository contains the full copyright notices and license terms.
'''
E-net access control: group and level policies, session simulation, audit
log and brute-force verification.
'''
import configparser
import io
import os

__all__ = ['__version__']


def _version():
    config = configparser.ConfigParser()
    path = os.path.join(os.path.dirname(__file__), 'enetacl.cfg')
    if not os.path.exists(path):
        return '0.0.0'
    with io.open(path, 'r', encoding='utf-8') as cfg:
        config.read_file(cfg)
    return config.get('enetacl', 'version', fallback='0.0.0')


__version__ = _version()
