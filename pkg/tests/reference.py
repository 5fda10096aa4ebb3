"""Published Betti tables, as ``{row r: {column i: beta_{i,i+r}}}``."""

FULL = {
    ("det", 2): {0: {0: 1}, 1: {1: 9, 2: 16, 3: 9}, 2: {4: 1}},
    ("perm", 2): {0: {0: 1}, 1: {1: 9, 2: 16, 3: 9}, 2: {4: 1}},
    ("det", 3): {0: {0: 1}, 1: {1: 36, 2: 160, 3: 315, 4: 288, 5: 100},
                 2: {4: 100, 5: 288, 6: 315, 7: 160, 8: 36}, 3: {9: 1}},
    ("perm", 3): {0: {0: 1}, 1: {1: 36, 2: 160, 3: 315, 4: 288, 5: 116},
                  2: {4: 116, 5: 288, 6: 315, 7: 160, 8: 36}, 3: {9: 1}},
    ("det", 4): {0: {0: 1}, 1: {1: 100, 2: 800, 3: 3075, 4: 6496, 5: 7700, 6: 4800, 7: 1225},
                 2: {4: 2500, 5: 16800, 6: 51275, 7: 93600, 8: 113256, 9: 93600, 10: 51275, 11: 16800,
                     12: 2500},
                 3: {9: 1225, 10: 4800, 11: 7700, 12: 6496, 13: 3075, 14: 800, 15: 100}, 4: {16: 1}},
    ("perm", 4): {0: {0: 1}, 1: {1: 100, 2: 800, 3: 3087, 4: 6688, 5: 8400, 6: 4320, 7: 794},
                  2: {2: 12, 3: 192, 4: 3200, 5: 16320, 6: 50844, 7: 93600, 8: 113256, 9: 93600, 10: 50844,
                      11: 16320, 12: 3200, 13: 192, 14: 12},
                  3: {9: 794, 10: 4320, 11: 8400, 12: 6688, 13: 3087, 14: 800, 15: 100}, 4: {16: 1}},
}

# only the listed entries are known; every other entry of the shown columns is unknown
PARTIAL = {
    ("det", 5): {1: {1: 225, 2: 2800, 3: 17325}},
    ("perm", 5): {1: {1: 225, 2: 2800, 3: 17425}, 2: {2: 100, 3: 2400}},
    ("det", 6): {1: {1: 441, 2: 7840}},
    ("perm", 6): {1: {1: 441, 2: 7840}, 2: {2: 450}},
    ("det", 7): {1: {1: 784, 2: 18816}},
    ("perm", 7): {1: {1: 784, 2: 18816}, 2: {2: 1470}},
}


def entries(rows: dict) -> dict:
    """``{(i, j): beta}`` from the row convention."""
    return {(i, i + r): b for r, cols in rows.items() for i, b in cols.items()}
