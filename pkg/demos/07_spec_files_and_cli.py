"""The textual surface: spec files, path literals, and the CLI.

Everything the library does is reachable through `selfsim <subcommand>`;
this script drives the dispatcher in-process and shows the exit-code
contract (0 holds, 1 fails, 2 inconclusive, 3 input error).
"""

import io
from pathlib import Path as FsPath

from selfsim.cli import dispatch

SPECS = FsPath(__file__).resolve().parent.parent / "specs"
EX310 = str(SPECS / "ex310.ss")


def run(*argv):
    buf = io.StringIO()
    code = dispatch(list(argv), stdout=buf)
    print(f"$ selfsim {' '.join(argv)}")
    for line in buf.getvalue().splitlines():
        print("  " + line)
    print(f"  [exit {code}]")
    print()


run("validate", "--spec", EX310)
run("act", "--spec", EX310, "--elem", "a", "--path", "2.4.2.3.1.2")
run("restrict", "--spec", EX310, "--elem", "a b", "--path", "4")
run("eq", "--spec", EX310, "--left", "a^-1", "--right", "b")
run("nucleus", "--spec", EX310)
run("rk", "--spec", EX310, "--k", "2")
run("check", "regular", "--spec", EX310)
run("check", "contracting", "--spec", str(SPECS / "noncontracting.ss"))
run("ae", "--spec", EX310, "--x", "(2.3)^inf", "--y", "(4.2)^inf")
run("class", "--spec", EX310, "--x", "(2.3)^inf")
run("shift", "--spec", EX310, "--x", "(2.3)^inf")
run("stable", "--spec", EX310,
    "--x", "(2.3)^inf . 1 . (1)^inf @ 0", "--y", "(3.2)^inf . 4 . (1)^inf @ 1")
run("unstable", "--spec", EX310,
    "--x", "(2.3)^inf . 1 . (1)^inf @ 0", "--y", "(3.2)^inf . 4 . (1)^inf @ 1")
run("schreier", "--spec", EX310, "--level", "1", "--format", "dot")
run("katsura", "--A", "[[2,1],[2,2]]", "--B", "[[1,0],[1,1]]", "--json")
run("snf", "--matrix", "[[0,0],[-1,0]]")
run("check", "regular", "--spec", "missing.ss")
