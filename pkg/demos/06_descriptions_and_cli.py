"""
Text descriptions, the shipped corpus and the command line
==========================================================

"""

import subprocess
import sys

from depthlab.corpus import corpus_files, corpus_session, run_instance
from depthlab.session import Session, parse_description

text = """
var x
var y
ideal x*y
name node

module Mx
  cyclic x
end

module N
  cyclic x - y
end

instance pair
  check depth-formula
  mode classic
  M Mx
  N N
  bound 6
end
"""
s = Session(parse_description(text))
print(run_instance(s, s.desc.instance("pair"))["verdict"])

# the shipped corpus
print(sorted(corpus_files()))
r1 = corpus_session("R1")
print([i.name for i in r1.desc.instances])

# the same through the command line
cmd = [sys.executable, "-m", "depthlab.cli", "corpus", "--name", "artinian-k*"]
print(subprocess.run(cmd, capture_output=True, text=True).stdout)
