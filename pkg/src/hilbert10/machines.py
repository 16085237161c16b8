"""A few hand-written machines used by the tests, the CLI demos and the docs."""

from .tm import Machine, parse_machine

LOOP_SOURCE = "q0 1 P q0\n"

ERASE_SOURCE = "q0 1 E q1\n"

# Consumes the input block from the left; each consumed 1 appends two 1s to an
# output block kept one blank cell to the right of the input.
DOUBLING_SOURCE = """\
# x -> 2x
q0 1 E q1
q1 0 R q2
q2 1 R q2
q2 0 R q3
q3 1 R q3
q3 0 P q4
q4 1 R q5
q5 0 P q6
q6 1 L q7
q7 1 L q7
q7 0 L q8
q8 1 L q8
q8 0 R q0
"""

# Walks right across the input block and halts on the first blank:
# on input x it halts after exactly x steps.
SCAN_SOURCE = "q0 1 R q0\n"


def loop_machine() -> Machine:
    return parse_machine(LOOP_SOURCE, name="loop")


def erase_machine() -> Machine:
    return parse_machine(ERASE_SOURCE, name="erase")


def doubling_machine() -> Machine:
    return parse_machine(DOUBLING_SOURCE, name="double")


def scan_machine() -> Machine:
    return parse_machine(SCAN_SOURCE, name="scan")


def empty_machine() -> Machine:
    return Machine((), name="empty")
