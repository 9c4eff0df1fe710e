# -*- coding: utf-8 -*-
import os
import logging

from configparser import RawConfigParser, Error as ParserError

from sympy import isprime

logger = logging

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


class ConfigError(Exception):
    """ a missing or malformed configuration value """
    def __init__(self, value):
        self.value = value

    def __str__(self):
        return repr(self.value)


class memoized_property(object):

    def __init__(self, fget, doc=None):
        self.fget = fget
        self.__doc__ = doc or fget.__doc__
        self.__name__ = fget.__name__

    def __get__(self, obj, cls):
        if obj is None:
            return self
        obj.__dict__[self.__name__] = result = self.fget(obj)
        return result


class VerifyConfig(RawConfigParser):
    """ provides the configuration of the verification runs """

    def __init__(self, config_file=None, root=PROJECT_ROOT):
        RawConfigParser.__init__(self, strict=False)
        self.root = root
        try:
            self.read(os.path.join(root, "conf", "default.conf"))
            if config_file:
                if not os.path.exists(config_file):
                    raise ConfigError("config file %s does not exist" % config_file)
                self.read(config_file)
        except ParserError as e:
            raise ConfigError(str(e))

    def get(self, section, name, **kw):
        try:
            config_value = RawConfigParser.get(self, section, name, raw=True)
        except ParserError:
            raise ConfigError("missing option %s.%s" % (section, name))

        if config_value == "":
            config_value = None
        else:
            config_value = config_value.strip()

        return config_value

    def getint(self, section, name, **kw):
        value = self.get(section, name)
        try:
            return int(value)
        except (TypeError, ValueError):
            raise ConfigError("%s.%s: expected an integer, got %r" % (section, name, value))

    def get_list(self, section, name, cast=str):
        """ comma separated values, empty entries dropped """
        value = self.get(section, name)
        if value is None:
            return []
        try:
            return [cast(v.strip()) for v in value.split(",") if v.strip()]
        except ValueError:
            raise ConfigError("%s.%s: malformed list %r" % (section, name, value))

    def path(self, section, name):
        """ a file name relative to the project root unless absolute """
        value = self.get(section, name)
        if value is None or os.path.isabs(value):
            return value
        return os.path.join(self.root, value)

    def prime_list(self, section):
        """ the primes of a section, each checked to be a prime """
        primes = self.get_list(section, "primes", int)
        for prime in primes:
            if not isprime(prime):
                raise ConfigError("%s.primes: %d is not a prime" % (section, prime))
        return primes

    @memoized_property
    def primes(self):
        return self.prime_list("verify")

    @memoized_property
    def cases(self):
        cases = self.get_list("verify", "cases")
        unknown = [c for c in cases if c not in ("split", "inert")]
        if unknown:
            raise ConfigError("verify.cases: unknown case %s" % unknown[0])
        return cases

    @memoized_property
    def whittaker_range(self):
        bounds = self.get_list("verify", "whittaker_range", int)
        if len(bounds) != 2 or bounds[0] > bounds[1]:
            raise ConfigError("verify.whittaker_range: expected low,high")
        return range(bounds[0], bounds[1] + 1)

    @memoized_property
    def k_values(self):
        return self.get_list("thmzita", "k_values", int)

    @memoized_property
    def h_values(self):
        return self.get_list("thmzita", "h_values", int)

    @memoized_property
    def tau_values(self):
        return self.get_list("thmzita", "tau_values", int)

    @memoized_property
    def weights(self):
        return self.get_list("corpoli", "weights", int)

    @property
    def output_format(self):
        value = self.get("output", "format")
        if value not in ("human", "machine"):
            raise ConfigError("output.format: expected human or machine, got %r" % value)
        return value
