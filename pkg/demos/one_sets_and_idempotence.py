"""
Equal one-sets without equivalence
==================================

On a chain with a non-idempotent element, ``X1`` and ``X1 & X1`` take the
value 1 at the same place (only at 1) but differ elsewhere. On a Goedel
chain no such pair exists.
"""

from tnormlogic import check_p1, parse_algebra, parse_formula
from tnormlogic.semantics import are_equivalent, one_set

t2 = parse_algebra("MV[2]")
x, xx = parse_formula("X1"), parse_formula("X1 & X1")
print("one-sets equal:", one_set(t2, x) == one_set(t2, xx))
same, witness = are_equivalent(t2, x, xx)
print("equivalent:    ", same, "- they differ at", witness)

###############################################################################
# The checker finds the same pair first, on any non-idempotent chain,
# including the infinite product algebra.
for desc in ["MV[2]", "MV[3] (+) 2", "PQ"]:
    print(desc, check_p1(parse_algebra(desc)).to_dict()["witness"])

###############################################################################
# Goedel chains: every distinct term function up to depth 3 has its own one-set.
report = check_p1(parse_algebra("2 (+) 2 (+) 2"), n_vars=2, depth=3)
print(report.verdict.value, "over", report.classes, "term functions")
