"""
The lpa command line
====================

Everything above is also reachable from the ``lpa`` command. This demo calls
its ``main`` in-process; the same arguments work in a shell.
"""

# %%
from pathlib import Path

from leavitt.cli import main

here = Path(__file__).resolve().parent

main(["eval", "-e", "e1*e2*e2'*e1' + e1", "--parts"])

# %%
# Build f_u from a unit (the inverse is searched for and then verified) and
# certify it as an automorphism with the matrix of w as witness.
main(["endo", "--fu", "e1*e2' + e2*e1' + e1^2*e2'*e1'",
      "--certify", "e1*e2' + e2*e1' - e2^2*e1'*e2'"])

# %%
# The surjectivity criterion for theta under the swap.
main(["twist", "theta", "--fu", "e1*e2' + e2*e1'", "--check-iso"])

# %%
# Scripts: bindings plus assertions, one PASS/FAIL line each. The return
# value is the exit status (0 when every assertion holds).
status = main(["run", "--no-timing", str(here / "scripts" / "units.lpa")])
print("exit status", status)

# %%
# Two of the built-in worked-example checks; without --only all of them run.
main(["verify-paper", "--no-timing", "--only", "example-auto-1", "--only", "exa-theta-3"])
