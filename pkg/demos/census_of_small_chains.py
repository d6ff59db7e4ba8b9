"""
Which finite chains satisfy the principles?
============================================

Every finite BL-chain is an ordinal sum of finite MV-chains. We list all
chains with at most five elements, classify them, and check the one-set
principle P1 and the separation principle P2 on each.
"""

from tnormlogic import census

rows = census(5)
print(f"{'chain':<28}{'class':<24}{'P1':<22}P2")
for row in rows:
    print(f"{str(row.algebra):<28}{row.classification.verdict.value:<24}"
          f"{row.p1.verdict.value:<22}{row.p2.verdict.value}")

# only the two-element chain satisfies both
both = [str(r.algebra) for r in rows if r.p1.holds and r.p2.holds]
print("\nboth principles hold on:", both)
