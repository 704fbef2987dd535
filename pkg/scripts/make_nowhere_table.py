"""Write the bundled finite-stage table used for the nowhere-open and D-set runs.

Layout (depth 7): fifteen designated leaves carry the H-points needed by a
stage N=2, d=3 construction; every other leaf v maps injectively to 001.v, so
each length-3 cylinder holds leaf pairs c0abc / c1abc whose images share six
letters. At resolution 6 that makes every restriction to a cylinder of length
at most 3 non-open.

    python scripts/make_nowhere_table.py > src/cantortopo/data/nowhere_table.txt
"""

from cantortopo.words import all_words

DEPTH = 7
RESOLUTION = 6
STAGE = 3

DESIGNATED = {
    "0000000": "",
    "0100000": "1",
    "1000000": "01",
    "0010000": "11",
    "0001000": "101",
    "1100000": "011",
    "0000100": "0101",
    "0011000": "111",
    "0010100": "1101",
    "0001100": "1011",
    "0001010": "10101",
    "1110000": "0111",
    "1101000": "01101",
    "0000110": "01011",
    "0000101": "010101",
}


def main() -> None:
    print("# finite-stage map: nowhere open on cylinders of length <= 3 at resolution 6")
    print("table nowhere")
    print(f"depth {DEPTH}")
    print(f"resolution {RESOLUTION}")
    print(f"stage {STAGE}")
    for v in all_words(DEPTH):
        out = DESIGNATED.get(v, "001" + v)
        print(f"map {v} {out or 'eps'}")


if __name__ == "__main__":
    main()
