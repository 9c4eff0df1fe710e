NAME = "asaiflach"
VERSION = "1.0.0"

from setuptools import setup

setup (
    name = NAME,
    version = VERSION,
    description = ("Exact verification of local Asai zeta integrals, norm relations "
                   "and Euler factors of Hilbert modular forms"),
    scripts = ["asaiflach_cli.py"],
    packages = ["asaiflach"],
    install_requires = ["sympy>=1.9", "mako>=0.8.1"],
    data_files = [(
        "share/%s/conf" % NAME, ["conf/default.conf", "conf/logging.conf"]),
        ("share/%s/templates" % NAME, ["templates/report.txt", "templates/euler.txt",
                                       "templates/zeta.txt", "templates/whittaker.txt"]),
        ("share/%s/samples" % NAME, ["samples/hilbert_w2_split.json"]),
        ("share/%s" % NAME, ["README.md"])]
)
