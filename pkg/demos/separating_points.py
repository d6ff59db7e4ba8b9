"""
Separating rational points with one-variable formulas
=====================================================

Over the standard MV-algebra any two distinct rational points are separated
by a basic literal (or its negation) built from doublings ``x (+) x`` and
squarings ``x & x``. Threshold literals have a prescribed zero set.
"""

from fractions import Fraction

from tnormlogic import format_literal, literal_to_pwl, pwl_zero_set
from tnormlogic.mcnaughton import separating_literal, threshold_literal

for p, q in [("4/5", "3/10"), ("1/5", "1/10"), ("1/5", "4/5")]:
    sep = separating_literal((Fraction(p),), (Fraction(q),))
    f = sep.pwl()
    name = ("not " if sep.negated else "") + format_literal(sep.literal)
    print(f"p={p:<5} q={q:<5} {name:<14} depth {sep.formula.depth:<3} "
          f"values {f(Fraction(p))} / {f(Fraction(q))}")

###############################################################################
# Threshold literals: zero exactly on [0, h/k], nondecreasing, 1 at 1.
for h, k in [(1, 2), (1, 3), (3, 7), (5, 12)]:
    lit = threshold_literal(h, k)
    pwl = literal_to_pwl(lit)
    print(f"{h}/{k}: {format_literal(lit):<12} zero set [0, {pwl_zero_set(pwl).upper}]"
          f"  breakpoints {[(str(x), str(y)) for x, y in pwl.breakpoints]}")
