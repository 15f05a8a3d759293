"""Step sets and exact enumeration.

A walk model is a set of unit steps; walks start at the origin, stay in the
quarter plane, and we count them exactly with arbitrary-precision integers.
"""

from qwalk import catalan, count, drift, is_singular, preset, series, symmetry_class, to_json

s = preset("simple")
print("the simple walk:", s)
print("JSON wire format:", to_json(s))

d = drift(s)
print(f"drift ({d.m_x}, {d.m_y}), covariance {d.covariance}, |S| = {d.cardinality}")
print("singular (no W/SW/S steps)?", is_singular(s))

canon, transform = symmetry_class(preset("gouyou-beauchamps"))
print("\ncanonical form under the diagonal reflection:", canon, f"({transform})")

# exact counts: q(i, j, n) walks of length n ending at (i, j)
table = count(s, 12, dense_max=12)
print("\nlayer n = 4 of the simple walk (rows are j, columns i):")
for j, row in enumerate(reversed(table.layer(4))):
    print("   ", row)

print("\nexcursions q(0,0,2n) are products of consecutive Catalan numbers:")
for n in range(6):
    q = table.q(0, 0, 2 * n) if 2 * n <= 12 else None
    print(f"  q(0,0,{2*n}) = {q} = C_{n} * C_{n+1} = {catalan(n)} * {catalan(n+1)}")

print("\nspecialised coefficient sequences:")
for label in ("q00", "q10", "q11"):
    ser = series(table, label)
    print(f"  {ser.pretty_label}: {list(ser.coeffs[:9])} ...")
