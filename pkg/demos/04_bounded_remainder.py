# Bounded remainder boxes [0, gamma) for the one-dimensional Niederreiter
# sequence with p = x+1.  The sup of |Delta| over N <= 2^m stays flat when
# gamma has a terminating binary expansion and keeps growing otherwise.

from qmcbrs import (
    GF,
    DigitalSequence,
    GammaSpec,
    delta_profile,
    niederreiter_matrices,
    parse_poly,
    star_discrepancy_exact,
)

F2 = GF(2)
seq = DigitalSequence(niederreiter_matrices([parse_poly("x+1", F2)]))

m_max = 16
for text in ("1/2", "3/8", "1/3", "5/7"):
    gamma = GammaSpec.parse(text, 2)
    prof = delta_profile(seq, gamma, m_max)
    row = " ".join(str(v) for v in prof.sup[::2])
    print(f"gamma={text:4s} ({gamma})  finite={gamma.is_finite!s:5s}  bounded={prof.bounded()!s:5s}  sup at m=0,2,..: {row}")

# Exact star discrepancy of the first 64 points of the two-dimensional sequence.
seq2 = DigitalSequence(niederreiter_matrices([parse_poly("x+1", F2), parse_poly("x^2+x+1", F2)], precision=16))
for N in (8, 16, 32, 64):
    print(f"D*_{N} = {star_discrepancy_exact(seq2.points(0, N))}")
