# This file is part enetacl module. The COPYRIGHT file at the top level of
# this repository contains the full copyright notices and license terms.
'''
Command line interface.

Results are written to stdout one item per line; messages and logging go to
stderr. Exit status is 0 when access is granted or the command succeeded, 1
on a denial or a verification discrepancy and 2 on any error.
'''
import functools
import logging

import click
from trytond.config import config
from trytond.exceptions import UserError

from .audit import AuditLog, replay
from .configuration import Configuration
from .document import load
from .enet import build_net, inject, ScriptedChoices, InteractiveChoices
from .exceptions import PolicyIndexError
from .message import gettext
from .policy import (MODELS, engl_can_access, engl_can_interact,
    enlg_witnesses, list_groups, list_resources, list_partners)
from .verify import (TimeoutChecker, verify_policy, sweep_engl_small,
    sweep_random)

__all__ = ['cli', 'main']

logger = logging.getLogger(__name__)

EXIT_ALLOW = 0
EXIT_DENY = 1
EXIT_ERROR = 2


class ClickHandler(logging.Handler):
    'Write log records to the stderr click is currently using'

    def emit(self, record):
        try:
            click.echo(self.format(record), err=True)
        except Exception:
            self.handleError(record)


def setup_logging(verbose):
    root = logging.getLogger()
    if not any(isinstance(x, ClickHandler) for x in root.handlers):
        handler = ClickHandler()
        handler.setFormatter(logging.Formatter(
                '%(levelname)s %(name)s: %(message)s'))
        root.addHandler(handler)
    if verbose > 1:
        level = logging.DEBUG
    elif verbose:
        level = logging.INFO
    else:
        level = getattr(logging, Configuration().log_level.upper(),
            logging.WARNING)
    root.setLevel(level)


def handle_errors(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except UserError as e:
            logger.debug('%s failed', func.__name__, exc_info=True)
            click.echo(e.message, err=True)
            click.get_current_context().exit(EXIT_ERROR)
    return wrapper


def policy_options(required=True):
    def decorator(func):
        func = click.option('--model', type=click.Choice(MODELS),
            help='Fail unless the policy is for this model.')(func)
        func = click.option('--policy', 'policy_path', required=required,
            type=click.Path(exists=True, dir_okay=False),
            help='Policy file.')(func)
        return func
    return decorator


@click.group()
@click.option('-v', '--verbose', count=True,
    help='Log more to stderr, twice for debug.')
@click.option('--config', 'config_file',
    type=click.Path(exists=True, dir_okay=False), envvar='TRYTOND_CONFIG',
    help='Configuration file.')
def cli(verbose, config_file):
    'Evaluate and simulate E-net access control policies.'
    if config_file:
        config.update_etc(config_file)
    setup_logging(verbose)


@cli.command()
@policy_options()
@click.argument('user')
@click.argument('resource')
@click.option('--group', help='Group of the access (required for engl).')
@click.option('--second-user',
    help='Check the interaction of both users instead of access.')
@click.pass_context
@handle_errors
def check(ctx, policy_path, model, user, resource, group, second_user):
    'Tell if USER may use RESOURCE.'
    policy = load(policy_path, model)
    users = [policy.user_index(user)]
    if second_user:
        users.append(policy.user_index(second_user))
    k = policy.resource_index(resource)
    j = policy.group_index(group) if group else None
    if policy.model == 'engl':
        if j is None:
            raise PolicyIndexError(gettext('enetacl.msg_group_required'))
        if second_user:
            allowed = engl_can_interact(policy, users[0], users[1], k, j)
        else:
            allowed = engl_can_access(policy, users[0], k, j)
        verdict = 'ALLOW' if allowed else 'DENY'
    else:
        witness = next(enlg_witnesses(policy, users, k, group=j), None)
        allowed = witness is not None
        verdict = ('ALLOW (%s, %s)' % (witness.level,
                policy.group_name(witness.group)) if allowed else 'DENY')
    click.echo(verdict)
    ctx.exit(EXIT_ALLOW if allowed else EXIT_DENY)


@cli.command('list')
@policy_options()
@click.argument('user')
@click.option('--group', help='List the resources of this group.')
@click.option('--level', type=int, help='Only list up to this level.')
@click.option('--resource',
    help='List the users USER can interact with by this resource.')
@handle_errors
def list_(policy_path, model, user, group, level, resource):
    '''
    List the groups of USER with the maximum level in each, or the resources
    of a group, or the interaction partners by a resource.
    '''
    policy = load(policy_path, model)
    i = policy.user_index(user)
    j = policy.group_index(group) if group else None
    if resource:
        k = policy.resource_index(resource)
        for x in list_partners(policy, i, k, j):
            click.echo(policy.user_name(x))
    elif j is not None:
        for k in list_resources(policy, i, j, level_cap=level):
            click.echo(policy.resource_name(k))
    else:
        for j, maximum in list_groups(policy, i, level_cap=level):
            click.echo('%s\t%s' % (policy.group_name(j), maximum))


@cli.command()
@policy_options()
@click.argument('user')
@click.option('--script', help='Comma separated answers, in order.')
@click.option('--interactive', is_flag=True,
    help='Ask every question on the terminal.')
@click.option('--session', 'session_id', help='Session id.')
@click.option('--audit', 'audit_path', envvar='ENETACL_AUDIT',
    type=click.Path(dir_okay=False), help='Audit log to append to.')
@click.pass_context
@handle_errors
def simulate(ctx, policy_path, model, user, script, interactive, session_id,
        audit_path):
    'Run a session of USER and print its trace.'
    if (script is None) == (not interactive):
        raise click.UsageError('Use either --script or --interactive.')
    policy = load(policy_path, model)
    audit_path = audit_path or Configuration().audit
    if not audit_path:
        logger.warning('no audit log configured, records are kept in memory')
    audit = AuditLog(audit_path)
    if interactive:
        choices = InteractiveChoices()
    else:
        choices = ScriptedChoices(script.split(','))
    session = inject(build_net(policy.model), user, session=session_id,
        audit=audit)
    trace = session.run(policy, choices)
    click.echo(trace.render(), nl=False)
    ctx.exit(EXIT_ALLOW if session.kernel.outcome == 'used' else EXIT_DENY)


@cli.command()
@policy_options(required=False)
@click.option('--exhaustive-small', is_flag=True,
    help='Sweep every engl policy with two users, groups, resources and '
    'levels.')
@click.option('--random', 'count', type=int,
    help='Number of random policies to check per model.')
@click.option('--seed', type=int, help='Seed of the random policies.')
@click.pass_context
@handle_errors
def verify(ctx, policy_path, model, exhaustive_small, count, seed):
    'Compare the predicates with a brute-force oracle.'
    configuration = Configuration()
    if count is None:
        count = configuration.verify_random
    if seed is None:
        seed = configuration.verify_seed
    if not (policy_path or exhaustive_small or count):
        raise click.UsageError(
            'Give --policy, --exhaustive-small or --random.')
    checker = TimeoutChecker(configuration.verify_timeout)
    reports = []
    if policy_path:
        policy = load(policy_path, model)
        reports.append(verify_policy(policy, label=policy_path))
    if exhaustive_small:
        reports.append(sweep_engl_small(checker))
    if count:
        reports.extend(sweep_random(count, seed, checker=checker))
    for report in reports:
        click.echo(report.render())
    ctx.exit(EXIT_ALLOW if all(x.ok for x in reports) else EXIT_DENY)


@cli.command()
@click.argument('log', type=click.Path(exists=True, dir_okay=False))
@click.option('--session', 'session_id', help='Only show this session.')
@handle_errors
def audit(log, session_id):
    'Print the records of the audit LOG.'
    for record in replay(log):
        if session_id and record.session != session_id:
            continue
        click.echo(record.to_line())


def main():
    cli(prog_name='enetacl')


if __name__ == '__main__':
    main()
