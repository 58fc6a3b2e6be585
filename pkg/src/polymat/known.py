"""Published extremal polymatroids and counts, as display-order rank vectors."""

# rays of the polymatroid cone per ground-set size
RAY_COUNTS = {2: 3, 3: 8, 4: 41, 5: 117983}
CLASS_COUNTS = {3: 4, 4: 11, 5: 1320}
SURVIVOR_COUNT_5 = 17

EXTREMAL_2 = {
    "M_a": (1, 0, 1),
    "M_b": (0, 1, 1),
    "M_ab": (1, 1, 1),
}

EXTREMAL_3 = {
    "M_a": (1, 0, 0, 1, 1, 0, 1),
    "M_ab": (1, 1, 0, 1, 1, 1, 1),
    "M_abc": (1, 1, 1, 1, 1, 1, 1),
    "M_*": (1, 1, 1, 2, 2, 2, 2),
}

EXTREMAL_4 = {
    "M_1": (0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1),
    "M_2": (0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    "M_3": (0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    "M_4": (0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2),
    "M_5": (1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    "M_6": (1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2),
    "M_7": (1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2),
    "M_8": (1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3),
    "M_9": (1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2),
    "M_10": (1, 1, 1, 2, 2, 2, 3, 2, 3, 3, 3, 3, 3, 3, 3),
    "M_11": (2, 2, 2, 2, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4),
}

# the classes left after the elimination filter on five elements
SURVIVORS_5 = [
    tuple(int(x) for x in row.split(","))
    for row in """
0,0,0,0,1,0,0,0,1,0,0,1,0,1,1,0,0,1,0,1,1,0,1,1,1,0,1,1,1,1,1
0,0,0,1,1,0,0,1,1,0,1,1,1,1,1,0,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1
0,0,1,1,1,0,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1
0,0,1,1,1,0,1,1,1,1,1,1,2,2,2,1,1,1,2,2,2,2,2,2,2,2,2,2,2,2,2
0,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1
0,1,1,1,1,1,1,1,1,1,2,2,2,2,2,1,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2
0,1,1,1,1,1,1,1,1,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2
0,1,1,1,2,1,1,1,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2
1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1
1,1,1,1,1,1,1,2,2,1,2,2,2,2,2,1,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2
1,1,1,1,1,1,2,2,2,2,2,2,1,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2
1,1,1,1,1,1,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2
1,1,1,1,1,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2
1,1,1,1,2,1,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2
1,1,1,1,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2
1,1,1,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2
1,1,1,2,2,2,2,2,2,2,3,3,3,3,3,2,3,3,3,3,3,3,3,3,3,3,3,3,3,3,3
""".split()
]

# GF(2) representation of M_10: a, b, c independent, d spanned by a+b and a+c
M10_REPRESENTATION = """\
linrep v1 p=2 d=3
a: 1 0 0
b: 0 1 0
c: 0 0 1
d: 1 1 0; 1 0 1
"""
