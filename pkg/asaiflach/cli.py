# -*- coding: utf-8 -*-
import os
import sys
import logging
import logging.config

from collections import namedtuple
from fractions import Fraction
from optparse import OptionParser

from sympy import isprime

from asaiflach import __version__
from asaiflach.verify_config import VerifyConfig, ConfigError
from asaiflach.reportutils import ReportWriter, ReportError
from asaiflach.scalar_tower import PoleAtOrigin
from asaiflach.principal_series import PSParams, UnramChar, CASES, whittaker_value, \
    whittaker_U_action, whittaker_U_oracle
from asaiflach.zeta_engine import VECTOR_TAGS, Borel, zeta_closed, zeta_oracle
from asaiflach.euler_factors import InputError, load_form_input, euler_table
from asaiflach.verify_harness import SUITES, MUTATIONS, run_suites, summarize

logger = logging.getLogger(__name__)

COMMANDS = ("verify", "euler-factor", "zeta", "whittaker")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

RunConfig = namedtuple("RunConfig", "command primes cases seed out output_format")


def build_parser():
    p = OptionParser(usage="%prog verify|euler-factor <file>|zeta|whittaker [options]",
                     version="asaiflach %s" % __version__)
    p.add_option("-c", "--conf", action="store", dest="conffile",
                 help="An additional configuration file read after conf/default.conf")
    p.add_option("--ell", action="append", dest="primes", type="int",
                 help="Restrict to this prime (may be repeated)")
    p.add_option("--case", action="append", dest="cases",
                 help="split or inert (whittaker also accepts h), may be repeated")
    p.add_option("--suite", action="append", dest="suites",
                 help="Verification suite to run (may be repeated): %s" % ", ".join(SUITES))
    p.add_option("--all", action="store_true", dest="all_suites",
                 help="Run every verification suite")
    p.add_option("--seed", action="store", dest="seed", type="int",
                 help="Sampling seed, recorded in every report")
    p.add_option("--mutate", action="append", dest="mutations",
                 help="Inject a known defect: %s" % ", ".join(MUTATIONS))
    p.add_option("--order", action="store", dest="order", type="int",
                 help="Number of series coefficients for zeta")
    p.add_option("--format", action="store", dest="output_format",
                 help="human or machine (JSON lines)")
    p.add_option("--out", action="store", dest="out",
                 help="Write the output to this file instead of stdout")
    p.add_option("--satake", action="store", dest="satake",
                 help="Comma separated Satake roots, exact rationals (two for h and inert, four for split)")
    p.add_option("--twist", action="store", dest="twist",
                 help="The value eta(l) of the unramified twist, an exact rational")
    p.add_option("--vector", action="store", dest="vector",
                 help="spherical, U or borel")
    p.add_option("--borel", action="store", dest="borel",
                 help="v(a),v(d) or v(a),b,v(d) of the Borel translate")
    p.add_option("--m", action="store", dest="m_max", type="int",
                 help="Largest valuation in the whittaker table")

    p.set_defaults(seed=None)
    p.set_defaults(all_suites=False)
    p.set_defaults(mutations=[])
    p.set_defaults(vector="spherical")
    p.set_defaults(twist="1")
    return p


def init_logging(config):
    logger_config_file = config.path("logging", "config_file")
    if logger_config_file and os.path.exists(logger_config_file):
        logging.config.fileConfig(logger_config_file, disable_existing_loggers=False)
    else:
        logging.basicConfig(level=logging.INFO)


def build_run_config(p, options, args, config):
    """ validates the command line against the configuration """
    if not args or args[0] not in COMMANDS:
        p.error("Please specify one of the commands %s" % ", ".join(COMMANDS))
    command = args[0]
    primes = options.primes or config.primes
    for prime in primes:
        if not isprime(prime):
            p.error("--ell expects a prime, got %d" % prime)
    cases = options.cases or config.cases
    allowed = CASES if command == "whittaker" else ("split", "inert")
    for case in cases:
        if case not in allowed:
            p.error("Unknown case %r" % case)
    seed = options.seed if options.seed is not None else config.getint("verify", "seed")
    output_format = options.output_format or config.output_format
    if output_format not in ("human", "machine"):
        p.error("--format must be human or machine")
    return RunConfig(command, primes, cases, seed, options.out, output_format)


def _rationals(p, text, name):
    try:
        return [Fraction(v.strip()) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError):
        p.error("%s expects comma separated exact rationals, got %r" % (name, text))


def _params_from_options(p, options, run):
    prime = run.primes[0]
    case = run.cases[0]
    if not options.satake:
        p.error("Please specify the Satake roots ('--satake')")
    roots = _rationals(p, options.satake, "--satake")
    expected = 4 if case == "split" else 2
    if len(roots) != expected:
        p.error("case %s needs %d Satake roots" % (case, expected))
    try:
        return PSParams.from_roots(prime, case, roots)
    except ValueError as e:
        p.error(str(e))


def cmd_verify(p, options, run, config, writer):
    if options.all_suites:
        suites = SUITES
    else:
        suites = options.suites or []
    if not suites:
        p.error("Please name a suite ('--suite') or use '--all'")
    for suite in suites:
        if suite not in SUITES:
            p.error("Unknown suite %r" % suite)
    for mutation in options.mutations:
        if mutation not in MUTATIONS:
            p.error("Unknown mutation %r" % mutation)
    # prime and case filters apply to every suite for this run
    if options.primes:
        for section in ("verify", "theprop", "schwartz", "corpoli"):
            config.set(section, "primes", ",".join(str(x) for x in run.primes))
    config.set("verify", "cases", ",".join(run.cases))
    for name in ("primes", "cases"):
        config.__dict__.pop(name, None)

    reports = run_suites(config, suites, run.seed, options.mutations)
    failed = [r for r in reports if not r.passed]
    writer.emit_report("report.txt", [r.to_json() for r in reports],
                       summary=sorted(summarize(reports).items()), failed=failed,
                       seed=run.seed, mutations=options.mutations)
    if failed:
        logger.error("%d of %d checks failed" % (len(failed), len(reports)))
        return EXIT_FAILED
    logger.info("all %d checks passed" % len(reports))
    return EXIT_OK


def _euler_records(table):
    records = []
    for row in table:
        records.append({
            "ell": row.ell,
            "splitting": row.splitting,
            "P": [str(c) for c in row.P.coefficients()],
            "Q": [{"j": j, "coefficients": [str(c) for c in Q.coefficients()]}
                  for j, Q in row.rows],
        })
    return records


def cmd_euler(p, options, args, run, writer):
    if len(args) != 2:
        p.error("euler-factor needs exactly one input file")
    try:
        form = load_form_input(args[1])
    except IOError as e:
        p.error("Unable to read %s: %s" % (args[1], e))
    table = euler_table(form)
    writer.emit_report("euler.txt", _euler_records(table), table=table, form=form)
    return EXIT_OK


def _borel_from_options(p, options):
    if options.vector != "borel":
        return None
    if not options.borel:
        p.error("--vector borel needs '--borel'")
    try:
        values = [v.strip() for v in options.borel.split(",")]
        if len(values) == 2:
            return Borel(int(values[0]), 0, int(values[1]))
        if len(values) == 3:
            return Borel(int(values[0]), Fraction(values[1]), int(values[2]))
    except (ValueError, ZeroDivisionError):
        pass
    p.error("--borel expects v(a),v(d) or v(a),b,v(d), got %r" % options.borel)


def cmd_zeta(p, options, run, config, writer):
    if options.vector not in VECTOR_TAGS:
        p.error("--vector must be one of %s" % ", ".join(VECTOR_TAGS))
    params = _params_from_options(p, options, run)
    twist = _rationals(p, options.twist, "--twist")
    if len(twist) != 1 or not twist[0]:
        p.error("--twist expects one non-zero rational")
    eta = UnramChar(params.prime, twist[0])
    borel = _borel_from_options(p, options)
    order = options.order if options.order is not None \
        else config.getint("verify", "series_order")
    if order < 0:
        p.error("--order must not be negative")

    closed = zeta_closed(params, eta, options.vector, borel)
    start, series = closed.value.laurent_expand(order)
    try:
        oracle = zeta_oracle(params, eta, options.vector, order, borel)
    except PoleAtOrigin as e:
        logger.warning("no shell sum oracle: %s" % e)
        oracle = []
    rows = []
    for i, c in enumerate(series):
        exponent = start + i
        o = oracle[exponent] if 0 <= exponent < len(oracle) else None
        rows.append({"exponent": exponent, "closed": str(c),
                     "oracle": str(o) if o is not None else None})
    writer.emit_report("zeta.txt", rows, closed=closed, order=order)
    return EXIT_OK


def cmd_whittaker(p, options, run, config, writer):
    params = _params_from_options(p, options, run)
    m_range = config.whittaker_range
    low = m_range[0]
    high = options.m_max if options.m_max is not None else m_range[-1]
    rows = []
    for m in range(low, high + 1):
        row = {"m": m, "W": str(whittaker_value(params, m))}
        if params.case != "h":
            row["U"] = str(whittaker_U_action(params, m))
            row["U_oracle"] = str(whittaker_U_oracle(params, m))
        rows.append(row)
    writer.emit_report("whittaker.txt", rows, params=params)
    return EXIT_OK


def main(argv=None):
    """ runs one command; returns the exit status """
    p = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    if not argv:
        p.print_help()
        return EXIT_USAGE

    (options, args) = p.parse_args(argv)

    try:
        config = VerifyConfig(options.conffile)
        init_logging(config)
        run = build_run_config(p, options, args, config)
        writer = ReportWriter(config.path("output", "template_dir"), run.output_format,
                              run.out)
        if run.command == "verify":
            return cmd_verify(p, options, run, config, writer)
        if run.command == "euler-factor":
            return cmd_euler(p, options, args, run, writer)
        if run.command == "zeta":
            return cmd_zeta(p, options, run, config, writer)
        return cmd_whittaker(p, options, run, config, writer)
    except ConfigError as e:
        logger.error("configuration error: %s" % e)
        return EXIT_USAGE
    except InputError as e:
        logger.error("invalid input at %s: %s" % (e.path, e.value[1]))
        return EXIT_USAGE
    except ReportError as e:
        logger.error("cannot render the report: %s" % e)
        return EXIT_USAGE
