"""Shared logic and abstractions of utilities."""

import abc
import argparse
import json
import os
import sys
import time

import six

from projquant.logger import get_logger

logger = get_logger(__name__)


def load_config(config_arg):
    """Loads the configuration from a string, a file, or the standard input."""
    if config_arg.startswith('{'):
        return json.loads(config_arg)
    elif config_arg == '-':
        return json.loads(sys.stdin.read())
    else:
        with open(config_arg) as config_file:
            return json.load(config_file)


def load_json_file(path):
    with open(path) as json_file:
        return json.load(json_file)


def check_input_path(path):
    """Raises ValueError unless path is a readable file."""
    if not os.path.isfile(path) or not os.access(path, os.R_OK):
        raise ValueError('Input file %s does not exist or is not readable' % path)


def check_output_path(path):
    """Raises ValueError unless path can be written; None means stdout."""
    if path is None:
        return
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory):
        raise ValueError('Output directory %s does not exist' % directory)
    if os.path.isdir(path):
        raise ValueError('Output path %s is a directory' % path)
    if not os.access(directory, os.W_OK) or (os.path.exists(path) and not os.access(path, os.W_OK)):
        raise ValueError('Output path %s is not writable' % path)


@six.add_metaclass(abc.ABCMeta)
class Utility(object):
    """Base class for utilities."""

    @property
    @abc.abstractmethod
    def name(self):
        raise NotImplementedError()

    @abc.abstractmethod
    def declare_arguments(self, parser):
        raise NotImplementedError()

    @abc.abstractmethod
    def exec_function(self, args):
        """Launches the utility with the parsed arguments and returns an exit code."""
        raise NotImplementedError()

    def run(self, args=None):
        """Main entrypoint. Returns the process exit code."""
        parser = argparse.ArgumentParser(prog=self.name)
        parser.add_argument('-c', '--config', default=None,
                            help=('Configuration as a file or a JSON string. '
                                  'Setting "-" will read from the standard input.'))
        self.declare_arguments(parser)
        args = parser.parse_args(args=args)

        try:
            self._config = load_config(args.config) if args.config is not None else None
        except (OSError, ValueError) as e:
            logger.error('Cannot load the configuration: %s', e)
            return 2

        logger.info('Starting executing utility %s', self.name)
        start_time = time.time()
        try:
            code = self.exec_function(args)
        except ValueError as e:
            logger.error('%s', e)
            return 2
        except OSError as e:
            logger.error('I/O error: %s', e)
            return 2
        end_time = time.time()
        logger.info('Finished executing utility in %.1f seconds', end_time - start_time)
        return code or 0
