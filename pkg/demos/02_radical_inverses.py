# Radical inverses: van der Corput, Cantor bases, and two polynomial analogues.

from qmcbrs import (
    GF,
    CantorBase,
    HellekalekSequence,
    PlaceList,
    cantor_inverse,
    halton_type_point,
    parse_poly,
    tezuka_point,
    vdc,
)

print("van der Corput in base 2, n = 0..7:")
print([str(vdc(n, 2).value()) for n in range(8)])

# A Cantor base cycles through several radices.
Q = CantorBase((), (2, 3))
print("Q_1..Q_4 =", Q.cumulative(4))
print("cantor_inverse(5) =", cantor_inverse(5, Q).value())

# The first Q_j values fill the grid {k/Q_j}.
vals = sorted(cantor_inverse(n, Q, 3).value() for n in range(12))
print("first 12 values, sorted:", [str(v) for v in vals])

seq = HellekalekSequence([CantorBase.constant(2), CantorBase.constant(3)], precision=12)
print("classical Halton points:")
print(seq.points(0, 6).floats())

# Polynomial analogues over GF(2).  The index n becomes the polynomial whose
# coefficients are the binary digits of n.
F2 = GF(2)
p = parse_poly("x+1", F2)
places = PlaceList(F2, [[p]])
print("n  halton-type digits   tezuka digits")
for n in range(8):
    h = halton_type_point(n, places, 8)[0]
    t = tezuka_point(n, [p], 8)[0]
    print(n, h, t)
# Both send n to a point whose first digit is v_n mod (x+1), but Tezuka's digits
# are Laurent tails of 1/(x+1)^k, which never terminate, while the Halton-type
# digits are the finite expansion of v_n in powers of (x+1).

x = parse_poly("x", F2)
assert all(tezuka_point(n, [x], 16)[0] == vdc(n, 2, 16) for n in range(256))
print("Tezuka with p = x reproduces van der Corput.")
