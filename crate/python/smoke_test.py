"""Smoke test for the pmr_py extension module.

Build and install first:  pip install --no-build-isolation -e crates/py
"""

import pathlib

import pmr_py

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"


def load(name):
    return pmr_py.Instance.parse((CORPUS / f"{name}.pmr").read_text())


def main():
    bowtie = load("BOWTIE-transposition")
    d = pmr_py.decide(bowtie)
    assert not d.feasible and d.reason == "ParityMismatch", d
    assert pmr_py.oracle_decide(bowtie) is False

    shift = load("C4-shift")
    moves = pmr_py.plan(shift)
    assert moves == [("r", [0, 1, 2, 3])], moves
    assert pmr_py.verify(shift, moves)
    assert pmr_py.plan_text(shift) == "plan\nr 0 1 2 3\n"

    assert pmr_py.group_stats(load("C5")) == (5, "Cyclic", 2)

    tri = pmr_py.Instance(3, [(0, 1), (1, 2), (0, 2)], [0, 1], [1, 0])
    assert pmr_py.decide(tri).feasible
    assert pmr_py.verify(tri, pmr_py.plan(tri))
    assert pmr_py.Instance.parse(tri.to_text()).edges == tri.edges

    puzzle = pmr_py.Instance.generate("grid", 16, 15, seed=7)
    assert puzzle.n == 16 and puzzle.p == 15
    assert pmr_py.decide(puzzle).feasible
    assert pmr_py.verify(puzzle, pmr_py.plan(puzzle))

    try:
        pmr_py.plan(bowtie)
    except ValueError:
        pass
    else:
        raise AssertionError("infeasible instance should raise")

    print("python smoke test: OK")


if __name__ == "__main__":
    main()
