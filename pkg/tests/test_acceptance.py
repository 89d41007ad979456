"""The twelve acceptance criteria, one test each; a pass/fail line is printed per criterion."""

import pytest

from twohol.acceptance import CRITERIA, format_line, run_one


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[c[1].replace(" ", "_") for c in CRITERIA])
def test_criterion(number, capsys):
    res = run_one(number)
    with capsys.disabled():
        print("\n" + format_line(res))
    assert res["passed"], res["detail"]
