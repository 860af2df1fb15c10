"""Regenerate the bundled Lie algebra spec files in src/transgression/data/."""

import json
from pathlib import Path

from transgression.lie import dump_lie_algebra, lie_from_data, matrix_lie_algebra

DATA = Path(__file__).resolve().parents[1] / "src" / "transgression" / "data"


def sl2():
    # e, h, f with [h,e]=2e, [h,f]=-2f, [e,f]=h and the trace form
    return lie_from_data(
        "sl2", ["e", "h", "f"],
        {(1, 0): {0: 2}, (1, 2): {2: -2}, (0, 2): {1: 1}},
        [[0, 0, 1], [0, 2, 0], [1, 0, 0]],
        cartan=[1], npos=[0], nneg=[2])


def gl2():
    return lie_from_data(
        "gl2", ["z", "e", "h", "f"],
        {(2, 1): {1: 2}, (2, 3): {3: -2}, (1, 3): {2: 1}},
        [[2, 0, 0, 0], [0, 0, 0, 1], [0, 0, 2, 0], [0, 1, 0, 0]],
        cartan=[0, 2], npos=[1], nneg=[3], center=[0])


def abelian1():
    return lie_from_data("abelian1", ["z"], {}, [[1]], cartan=[0], center=[0])


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    for L in (sl2(), gl2(), abelian1(), matrix_lie_algebra(3)):
        path = DATA / f"{L.name}.json"
        path.write_text(json.dumps(dump_lie_algebra(L), indent=1) + "\n")
        print("wrote", path)


if __name__ == "__main__":
    main()
