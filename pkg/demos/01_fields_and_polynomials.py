# Arithmetic in small finite fields and in F_b[x].
#
# Field elements are handled as digit indices 0..b-1; phi(d) is the
# polynomial-basis element whose coefficients are the base-p digits of d.

from fractions import Fraction

from qmcbrs import GF, Poly, is_irreducible, laurent_expand, parse_poly, poly_gcd

F4 = GF(4)
print(F4)
print("addition table of GF(4):")
print(F4.add_table)
print("multiplication table of GF(4):")
print(F4.mul_table)

x = F4.phi(2)
print("x * x =", x * x, "(coefficients, constant term first)")

# Polynomials over GF(2)
F2 = GF(2)
f = parse_poly("x^4+x+1", F2)
g = parse_poly("x^2+x+1", F2)
q, r = divmod(f, g)
print(f"{f} = ({q})({g}) + {r}")
print("gcd(x+1, x^2+x+1) =", poly_gcd(parse_poly("x+1", F2), g))

irreducible = [str(p) for p in (Poly(F2, (1,) + c + (1,)) for c in [(0, 0), (1, 0), (0, 1), (1, 1)])
               if is_irreducible(p)]
print("irreducible cubics over GF(2) with constant term 1:", irreducible)

# Laurent tails: 1/(x^2+x+1) in powers of 1/x.  The tail is periodic with period 3.
tail = laurent_expand(Poly.constant(F2, 1), g, 12)
print("1/(x^2+x+1) ->", tail.coeffs)
# Reading the tail as binary digits gives a rational number.
value = sum(Fraction(a, 2 ** (r + 1)) for r, a in enumerate(tail.extend(60).coeffs))
print("as a binary fraction (60 digits):", float(value))
