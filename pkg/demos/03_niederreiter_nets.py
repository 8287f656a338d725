# Generalized Niederreiter sequence in base 2 with p_1 = x+1, p_2 = x^2+x+1.
# With e = deg p_1 + deg p_2 = 3 and s = 2 the t-value should be e - s = 1.

from qmcbrs import (
    GF,
    DigitalSequence,
    admissibility,
    dual_space,
    exact_t_value,
    is_net,
    niederreiter_matrices,
    parse_poly,
)

F2 = GF(2)
cfg = niederreiter_matrices([parse_poly("x+1", F2), parse_poly("x^2+x+1", F2)])
seq = DigitalSequence(cfg)

print("upper-left 6x6 blocks of the generating matrices:")
for C in cfg.matrices:
    print(C.entries(6, 6))

for m in range(2, 11):
    print(f"m={m:2d}  exact t = {exact_t_value(seq.points(0, 2**m), 2, m)}")

# The block property: each run of 2^m consecutive points is a net on its own.
m = 6
for k in range(4):
    rep = is_net(seq.points(k * 2**m, 2**m), 2, 1, m)
    print(f"block {k}: (1,{m},2)-net: {rep.verified}")

rep = is_net(seq.points(0, 2**m), 2, 0, m)
print("a witness that t = 0 fails:", rep.violation, "holds", rep.violation_count, "points")

adm = admissibility(seq.points(0, 2**8))
print(f"min ||n - k|| ||x_n - x_k|| over 256 points = {adm.minimum}  (certified: {adm.certified})")

D = dual_space(cfg, 3)
print("dual space of [C]_3 has dimension", D.dim)
print(D.vectors)
