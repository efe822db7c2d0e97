"""
Tensor products with U(2,3)
===========================

For a representable polymatroid, the Kronecker product of representations
gives a tensor product with U(2,3).  Its ground set has three copies of each
element, and subsets are written A1^1 A2^2 A3^3.
"""

from polymat import check_gentens_bounds, check_tensor_axioms, kronecker, rep_rank_function, u23, u23_rep
from polymat.linrep import triple_stats
from polymat.tensor import ProductGround

rep = u23_rep(2)
prod = kronecker(rep, rep)
g = rep_rank_function(prod)
f = u23()
print("ground:", prod.ground.labels)
print("g(E x E) =", g.values[-1], "= f(E) * f(E) =", f.values[-1] ** 2)

print("product axioms hold:", check_tensor_axioms(g, f, f).ok)
print("bounds hold on all 512 triples:", check_gentens_bounds(g, f).ok)

# singletons in each copy: lower and upper bound coincide
pg = ProductGround(f.ground)
st = triple_stats(f, 0b001, 0b010, 0b100)
print("beta =", st.beta, "alpha =", st.alpha, "g =", g(pg.encode(0b001, 0b010, 0b100)))
