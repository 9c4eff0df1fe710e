#!/usr/bin/python3
# -*- coding: utf-8 -*-
import sys

from asaiflach.cli import main

if __name__ == "__main__":
    sys.exit(main())
