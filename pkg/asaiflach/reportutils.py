# -*- coding: utf-8 -*-
import os
import sys
import json
import logging

from mako.lookup import TemplateLookup
from mako.exceptions import TopLevelLookupException

logger = logging


class ReportError(Exception):
    """ a template that cannot be found or a report line that cannot be read """
    def __init__(self, value):
        self.value = value

    def __str__(self):
        return repr(self.value)


def write_file(filecontents, filename):
    """ writes a string of data to disk """

    dirname = os.path.dirname(filename)
    if dirname and not os.path.exists(dirname):
        os.makedirs(dirname)

    logger.debug("Writing file '%s' to disk" % filename)

    try:
        with open(filename, "w") as fh:
            fh.write(filecontents)
    except IOError:
        logger.error("Unable to write file '%s'" % filename)
        return False

    return True


def dump_lines(records):
    """ one JSON object per line """
    return "".join(json.dumps(record, sort_keys=True) + "\n" for record in records)


def load_lines(text):
    records = []
    for number, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            records.append(json.loads(line))
        except ValueError as e:
            raise ReportError("line %d: %s" % (number, e))
    return records


class ReportWriter(object):
    """ renders results through the mako templates or as JSON lines and sends
        them to a file or stdout
    """

    def __init__(self, template_dir, output_format="human", out=None):
        self.template_lookup = TemplateLookup(directories=[template_dir])
        self.output_format = output_format
        self.out = out

    def render(self, template_name, **context):
        try:
            template = self.template_lookup.get_template(template_name)
        except TopLevelLookupException:
            raise ReportError("no template %s" % template_name)
        return template.render(**context)

    def emit(self, text):
        if self.out:
            if not write_file(text, self.out):
                raise ReportError("cannot write %s" % self.out)
            return True
        sys.stdout.write(text)
        return True

    def emit_report(self, template_name, records, **context):
        """ records are dictionaries; the machine format ignores the template """
        if self.output_format == "machine":
            return self.emit(dump_lines(records))
        return self.emit(self.render(template_name, records=records, **context))
