# This file is part enetacl module. The COPYRIGHT file at the top level of
# this repository contains the full copyright notices and license terms.
'''
Evaluation nets driving user sessions.

A net is the tuple <B, Bp, Br, T, F, H, M0>: places, peripheral places,
permissive places, transitions, their input and output places and the
initial (empty) marking. A kernel injected at the peripheral place bp1
carries the state of one session until a Quit transition retires it.

Both nets share the same places and wiring:

    bp1 -t1-> b1 -t2[br1]-> b2 | b9
    b2 -t3-> b3 -t4-> end
    b3 -t5-> b4 -t6-> b5 -t7-> b6 -t8[br2]-> b7 | b9
    b7 -t9-> b8 -t10-> b9 -t11-> end

They differ in the meaning of t3, t5 and t6: engl lists and selects the group
before identifying the level, enlg identifies the level first.
'''
import logging
from dataclasses import dataclass, field, replace

import click
import unidecode

from .audit import AuditRecord, format_timestamp, utc_now
from .exceptions import (BusyNetError, ChoiceError, ScriptUnderrunError,
    StructuralFault)
from .message import gettext
from .policy import list_groups, list_resources

__all__ = ['PLACES', 'ENGL_TRANSITIONS', 'ENLG_TRANSITIONS', 'Transition',
    'ENet', 'Kernel', 'TraceEntry', 'Trace', 'Session', 'ChoiceProvider',
    'ScriptedChoices', 'InteractiveChoices', 'build_engl_net',
    'build_enlg_net', 'build_net', 'inject', 'step', 'run',
    'convert_to_symbol']

logger = logging.getLogger(__name__)

PLACES = ('bp1', 'br1', 'br2', 'b1', 'b2', 'b3', 'b4', 'b5', 'b6', 'b7',
    'b8', 'b9')
PERIPHERAL = ('bp1',)
PERMISSIVE = ('br1', 'br2')

# (name, label, input place, output places, permissive place, action)
ENGL_TRANSITIONS = [
    ('t1', 'Ident', 'bp1', ('b1',), None, 'ident'),
    ('t2', 'CheckAuthorities', 'b1', ('b2', 'b9'), 'br1',
        'check_authorities'),
    ('t3', 'ListGroups', 'b2', ('b3',), None, 'list_groups'),
    ('t4', 'Quit', 'b3', (), None, 'quit'),
    ('t5', 'SelectGroup', 'b3', ('b4',), None, 'select_group'),
    ('t6', 'IdentLevel', 'b4', ('b5',), None, 'ident_level'),
    ('t7', 'ListResources', 'b5', ('b6',), None, 'list_resources'),
    ('t8', 'SelectResource', 'b6', ('b7', 'b9'), 'br2', 'select_resource'),
    ('t9', 'UseResource', 'b7', ('b8',), None, 'use_resource'),
    ('t10', 'LogFile', 'b8', ('b9',), None, 'log_file'),
    ('t11', 'Quit', 'b9', (), None, 'quit'),
    ]
ENLG_TRANSITIONS = [
    ('t1', 'Ident', 'bp1', ('b1',), None, 'ident'),
    ('t2', 'CheckAuthorities', 'b1', ('b2', 'b9'), 'br1',
        'check_authorities'),
    ('t3', 'IdentLevel', 'b2', ('b3',), None, 'ident_level'),
    ('t4', 'Quit', 'b3', (), None, 'quit'),
    ('t5', 'ListGroups', 'b3', ('b4',), None, 'list_groups'),
    ('t6', 'SelectGroup', 'b4', ('b5',), None, 'select_group'),
    ('t7', 'ListResources', 'b5', ('b6',), None, 'list_resources'),
    ('t8', 'SelectResource', 'b6', ('b7', 'b9'), 'br2', 'select_resource'),
    ('t9', 'UseResource', 'b7', ('b8',), None, 'use_resource'),
    ('t10', 'LogFile', 'b8', ('b9',), None, 'log_file'),
    ('t11', 'Quit', 'b9', (), None, 'quit'),
    ]
# Places with more than one output transition and the resolver choosing
ENGL_DECISIONS = {'b3': 'group_or_quit'}
ENLG_DECISIONS = {'b3': 'continue_or_quit'}

QUIT = 'quit'
EXIT = 'exit'
MAXIMUM = 'max'
RESERVED_ANSWERS = ('', QUIT, EXIT, MAXIMUM)

QUESTIONS = {
    'group': 'Group',
    'level': 'Security level',
    'resource': 'Resource',
    }

VALID_FIRST_SYMBOLS = 'abcdefghijklmnopqrstuvwxyz'
VALID_NEXT_SYMBOLS = '_0123456789'
VALID_SYMBOLS = VALID_FIRST_SYMBOLS + VALID_NEXT_SYMBOLS


def convert_to_symbol(text):
    if not text:
        return 'x'
    text = unidecode.unidecode(text)
    text = text.lower()
    first = text[0]
    symbol = first
    if first not in VALID_FIRST_SYMBOLS:
        symbol = '_'
        if first in VALID_SYMBOLS:
            symbol += first

    for x in text[1:]:
        if x in VALID_SYMBOLS:
            symbol += x
        elif symbol[-1] != '_':
            symbol += '_'
    return symbol


@dataclass(frozen=True)
class Transition:
    name: str
    label: str
    input: str
    outputs: tuple
    permissive: str
    action: str

    @property
    def quit(self):
        return not self.outputs


class ENet(object):
    '''
    Evaluation net.

    The structure is fixed at construction time. The marking holds the
    kernels of the session running on this instance.
    '''

    def __init__(self, name, transitions, decisions):
        self.name = name
        self.places = frozenset(PLACES)
        self.peripheral = frozenset(PERIPHERAL)
        self.permissive = frozenset(PERMISSIVE)
        self.transitions = tuple(Transition(*x) for x in transitions)
        self.decisions = dict(decisions)
        self.marking = {x: [] for x in PLACES}
        self.check_structure()

    def __getitem__(self, name):
        for transition in self.transitions:
            if transition.name == name:
                return transition
        raise KeyError(name)

    def check_structure(self):
        names = [x.name for x in self.transitions]
        if len(set(names)) != len(names):
            self.fault('duplicate transition names')
        for transition in self.transitions:
            for place in (transition.input,) + transition.outputs:
                if place not in self.places:
                    self.fault('transition %s references unknown place %s'
                        % (transition.name, place))
            if transition.input in self.permissive:
                self.fault('permissive place %s used as input of %s'
                    % (transition.input, transition.name))
            if transition.permissive:
                if transition.permissive not in self.permissive:
                    self.fault('%s is not a permissive place'
                        % transition.permissive)
                if len(transition.outputs) < 2:
                    self.fault('permissive transition %s needs two outputs'
                        % transition.name)
            elif len(transition.outputs) > 1:
                self.fault('transition %s has no resolver for its outputs'
                    % transition.name)
        for place in self.permissive:
            users = [x.name for x in self.transitions
                if x.permissive == place]
            if len(users) != 1:
                self.fault('permissive place %s is bound to %s'
                    % (place, users or 'no transition'))
        for place in self.places - self.permissive:
            outputs = self.outputs(place)
            if len(outputs) > 1 and place not in self.decisions:
                self.fault('place %s has no resolver for %s'
                    % (place, ', '.join(x.name for x in outputs)))
        entries = [x for x in self.transitions
            if x.input in self.peripheral]
        if len(entries) != 1:
            self.fault('the net needs exactly one entry transition')

    def outputs(self, place):
        'Return the transitions taking kernels from place'
        return [x for x in self.transitions if x.input == place]

    def locate(self, kernel):
        for place, kernels in self.marking.items():
            if kernel in kernels:
                return place

    def kernels(self):
        return [x for kernels in self.marking.values() for x in kernels]

    def check_safe(self):
        for place, kernels in self.marking.items():
            if len(kernels) > 1:
                self.fault('place %s holds %s kernels' % (place,
                        len(kernels)))

    def fire(self, transition, kernel, target):
        self.marking[transition.input].remove(kernel)
        if target is not None:
            self.marking[target].append(kernel)
        self.check_safe()

    def fault(self, fault):
        raise StructuralFault(gettext('enetacl.msg_structural_fault',
                net=self.name, fault=fault))


def build_engl_net():
    return ENet('engl', ENGL_TRANSITIONS, ENGL_DECISIONS)


def build_enlg_net():
    return ENet('enlg', ENLG_TRANSITIONS, ENLG_DECISIONS)


def build_net(model):
    return {
        'engl': build_engl_net,
        'enlg': build_enlg_net,
        }[model]()


@dataclass(eq=False)
class Kernel:
    session: str
    user: str
    user_index: int = None
    authorized: bool = None
    group: str = None
    level: int = None
    resource: str = None
    outcome: str = 'pending'
    groups: tuple = ()
    resources: tuple = ()
    answer: str = None
    quitting: bool = False

    def snapshot(self):
        return replace(self)


@dataclass(frozen=True)
class TraceEntry:
    seq: int
    transition: str
    label: str
    source: str
    target: str
    kernel: Kernel

    def render(self):
        return '\t'.join([str(self.seq), self.transition, self.source,
                self.target or '-', self.kernel.outcome])


@dataclass
class Trace:
    entries: list = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def names(self):
        return [x.transition for x in self.entries]

    def labels(self):
        return [x.label for x in self.entries]

    def render(self):
        return ''.join(x.render() + '\n' for x in self.entries)


class ChoiceProvider(object):
    'Source of the answers a session asks for'

    def choose(self, question, options, session):
        raise NotImplementedError


class ScriptedChoices(ChoiceProvider):

    def __init__(self, answers):
        self.answers = list(answers)
        self.position = 0

    def choose(self, question, options, session):
        if self.position >= len(self.answers):
            raise ScriptUnderrunError(gettext('enetacl.msg_script_underrun',
                    question=question, session=session))
        answer = self.answers[self.position]
        self.position += 1
        return answer


def click_prompt(text):
    return click.prompt(text, default='', show_default=False, err=True)


class InteractiveChoices(ChoiceProvider):
    'Ask every question on the terminal, listing the valid options'

    def __init__(self, prompt=None):
        self.prompt = prompt or click_prompt

    def choose(self, question, options, session):
        text = '%s [%s]' % (QUESTIONS[question], ', '.join(options))
        try:
            answer = self.prompt(text)
        except (click.exceptions.Abort, EOFError):
            raise ScriptUnderrunError(gettext('enetacl.msg_script_underrun',
                    question=question, session=session))
        return answer.strip()


class Session(object):
    '''
    One kernel running on one net instance.

    Only one actor may step a session. Audit records are appended to
    audit when given and always kept in records.
    '''

    def __init__(self, net, kernel, audit=None, clock=None):
        self.net = net
        self.kernel = kernel
        self.audit = audit
        self.clock = clock or utc_now
        self.trace = Trace()
        self.records = []
        self.done = False

    @property
    def place(self):
        return self.net.locate(self.kernel)

    def step(self, policy, choices):
        if self.done:
            return None
        place = self.place
        if place is None:
            self.net.fault('kernel of session %s is not marked'
                % self.kernel.session)
        transition = self.enabled(place, policy, choices)
        target = getattr(self, 'fire_%s' % transition.action)(transition,
            policy, choices)
        if target is not None and target not in transition.outputs:
            self.net.fault('%s can not enter %s' % (transition.name, target))
        self.net.fire(transition, self.kernel, target)
        entry = TraceEntry(len(self.trace) + 1, transition.name,
            transition.label, place, target, self.kernel.snapshot())
        self.trace.entries.append(entry)
        logger.debug('%s %s: %s %s -> %s (%s)', self.net.name,
            self.kernel.session, transition.name, place, target or '-',
            self.kernel.outcome)
        if transition.quit:
            self.done = True
        return entry

    def run(self, policy, choices):
        while not self.done:
            self.step(policy, choices)
        self.check_trace()
        return self.trace

    def check_trace(self):
        entries = self.trace.entries
        if not entries or entries[0].source not in self.net.peripheral:
            self.net.fault('the trace does not start at the peripheral place')
        if not self.net[entries[-1].transition].quit:
            self.net.fault('the trace does not end with a Quit transition')

    def enabled(self, place, policy, choices):
        transitions = self.net.outputs(place)
        if len(transitions) > 1:
            name = getattr(self, 'decide_%s' % self.net.decisions[place])(
                transitions, policy, choices)
            transitions = [x for x in transitions if x.name == name]
        if len(transitions) != 1:
            self.net.fault('%s transitions enabled at %s'
                % (len(transitions), place))
        return transitions[0]

    def ask(self, question, options, choices):
        return choices.choose(question, list(options), self.kernel.session)

    def invalid_choice(self, question, answer, options):
        raise ChoiceError(gettext('enetacl.msg_invalid_choice',
                question=question, answer=answer,
                options=', '.join(options) or '-',
                session=self.kernel.session))

    def emit(self, transition, outcome, policy, resource=None):
        kernel = self.kernel
        record = AuditRecord(
            ts=format_timestamp(self.clock()),
            session=kernel.session,
            model=policy.model,
            user=kernel.user,
            transition=transition.name,
            outcome=outcome,
            group=kernel.group or '',
            level=kernel.level or 0,
            resource=resource or kernel.resource or '',
            )
        if self.audit is not None:
            self.audit.append(record)
        self.records.append(record)
        return record

    # Resolvers of the decision places

    def decide_group_or_quit(self, transitions, policy, choices):
        options = [x for x, _ in self.kernel.groups] + [QUIT]
        answer = self.ask('group', options, choices)
        if answer == QUIT:
            return 't4'
        self.kernel.answer = answer
        return 't5'

    def decide_continue_or_quit(self, transitions, policy, choices):
        return 't4' if self.kernel.quitting else 't5'

    # Transition actions, each returns the place the kernel enters

    def fire_ident(self, transition, policy, choices):
        self.kernel.user_index = policy.find('user', self.kernel.user)
        return transition.outputs[0]

    def fire_check_authorities(self, transition, policy, choices):
        kernel = self.kernel
        kernel.authorized = (kernel.user_index is not None
            and policy.is_member(kernel.user_index))
        if kernel.authorized:
            return transition.outputs[0]
        kernel.outcome = 'denied'
        self.emit(transition, 'denied', policy)
        return transition.outputs[1]

    def fire_list_groups(self, transition, policy, choices):
        kernel = self.kernel
        kernel.groups = tuple((policy.group_name(j), level)
            for j, level in list_groups(policy, kernel.user_index,
                level_cap=kernel.level))
        return transition.outputs[0]

    def fire_select_group(self, transition, policy, choices):
        kernel = self.kernel
        options = [x for x, _ in kernel.groups]
        answer, kernel.answer = kernel.answer, None
        if answer is None:
            answer = self.ask('group', options, choices)
        if answer not in options:
            self.invalid_choice('group', answer, options)
        kernel.group = answer
        return transition.outputs[0]

    def fire_ident_level(self, transition, policy, choices):
        kernel = self.kernel
        if policy.model == 'engl':
            maximum = dict(kernel.groups)[kernel.group]
        else:
            maximum = policy.user_maximum(kernel.user_index)
        levels = [str(x) for x in range(1, maximum + 1)]
        options = levels + [MAXIMUM]
        # Quitting is offered at the first question of the session
        if policy.model == 'enlg':
            options.append(QUIT)
        answer = self.ask('level', options, choices)
        if answer in ('', MAXIMUM):
            kernel.level = maximum
        elif answer in levels:
            kernel.level = int(answer)
        elif answer == QUIT and QUIT in options:
            kernel.quitting = True
        else:
            self.invalid_choice('level', answer, options)
        return transition.outputs[0]

    def fire_list_resources(self, transition, policy, choices):
        kernel = self.kernel
        j = policy.group_index(kernel.group)
        kernel.resources = tuple(policy.resource_name(k)
            for k in list_resources(policy, kernel.user_index, j,
                level_cap=kernel.level))
        return transition.outputs[0]

    def fire_select_resource(self, transition, policy, choices):
        kernel = self.kernel
        options = list(kernel.resources) + [EXIT]
        answer = self.ask('resource', options, choices)
        if answer in ('', EXIT):
            return transition.outputs[1]
        k = policy.find('resource', answer)
        if k is None:
            self.invalid_choice('resource', answer, options)
        # br2
        if answer in kernel.resources and policy.grants(kernel.user_index,
                k, policy.group_index(kernel.group), kernel.level):
            kernel.resource = answer
            return transition.outputs[0]
        kernel.outcome = 'denied'
        self.emit(transition, 'denied', policy, resource=answer)
        return transition.outputs[1]

    def fire_use_resource(self, transition, policy, choices):
        self.kernel.outcome = 'used'
        return transition.outputs[0]

    def fire_log_file(self, transition, policy, choices):
        self.emit(transition, 'used', policy)
        return transition.outputs[0]

    def fire_quit(self, transition, policy, choices):
        if self.kernel.outcome == 'pending':
            self.kernel.outcome = 'quit'
            self.emit(transition, 'quit', policy)


def default_session_id(user, clock=None):
    now = (clock or utc_now)()
    return '%s-%s' % (convert_to_symbol(user),
        format_timestamp(now).replace('-', '').replace(':', '').replace(
            '.', '')[:-1])


def inject(net, user, session=None, audit=None, clock=None):
    '''
    Put a new kernel for user at the peripheral place of net and return its
    session.
    '''
    for place in net.peripheral:
        if net.marking[place]:
            raise BusyNetError(gettext('enetacl.msg_busy_net', net=net.name,
                    place=place))
    if net.kernels():
        raise BusyNetError(gettext('enetacl.msg_busy_net', net=net.name,
                place=net.locate(net.kernels()[0])))
    kernel = Kernel(session=session or default_session_id(user, clock),
        user=user)
    net.marking[PERIPHERAL[0]].append(kernel)
    net.check_safe()
    return Session(net, kernel, audit=audit, clock=clock)


def step(session, policy, choices):
    return session.step(policy, choices)


def run(session, policy, choices):
    return session.run(policy, choices)
