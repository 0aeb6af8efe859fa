"""Published reference values checked by ``exbraid report``.

Labels use the literature conventions resolved through ``data/labels.json``.
"""

# (algebra, ell, rank, pointed)
WEAKLY_INTEGRAL = (
    ("E6", 13, 3, True),
    ("E7", 19, 2, True),
    ("E8", 32, 3, False),
    ("G2", 8, 2, True),
)

# (algebra, case, (nu, mu), FPdim(V_nu), maximum ell)
NONINTEGRAL_WITNESSES = (
    ("E6", "all", ("l2", "l1"), "[8][9][13]/([3][4])", 75),
    ("E7", "all", ("l1", "l7"), "[12][14][19]/([4][6])", 120),
    ("E8", "all", ("l8", "l8"), "[20][24][31]/([6][10])", 210),
    ("F4", "even", ("l1", "l1"), "[3][8][13][18]/([4][6][9])", 66),
    ("F4", "odd", ("l1", "l1"), "[8][13]/[4]", 51),
    ("G2", "3|l", ("l1", "l1"), "[2][7][12]/([4][6])", 33),
    ("G2", "3!|l", ("l1", "l1"), "[7]", 14),
)

G2_RELATION = "q^20+q^18+q^12+(1-k)q^10+q^8+q^2+1"

# (algebra, ell) -> rank
RANKS = {
    ("G2", 12): 1,
    ("G2", 15): 2,
    ("F4", 24): 9,
    ("E7", 20): 6,
    ("E8", 33): 5,
}

F4_24_LABELS = ("0", "l1", "2l1", "3l1", "l2", "l3", "l4", "l1+l2", "l1+l4")

# Levels for which every nontrivial, non weakly integral category should
# come out Infinite, with the certificate tag expected at quoted instances.
VERDICT_LEVELS = {
    "G2": tuple(range(7, 61)),
    "F4": tuple(range(13, 41)),
    "E6": tuple(range(12, 61)),
    "E7": tuple(range(18, 61)),
    "E8": tuple(range(30, 61)),
}

QUOTED_CLAUSES = {
    ("G2", 21): "RT(d)(iii)",
    ("G2", 24): "matrix-escalation",
    ("G2", 20): "matrix-escalation",
    ("G2", 15): "citation:fibonacci",
    ("G2", 10): "citation:fibonacci",
    ("F4", 22): "RT(d)(iv)",
    ("F4", 24): "matrix-escalation",
    ("E6", 14): "RT(d)(ii)",
    ("E7", 20): "citation:fibonacci-ising-product",
    ("E8", 33): "citation:conjugate-f4-22",
}
