#pragma once

#include <random>
#include <utility>
#include <vector>

#include "hyp2/fq.hpp"
#include "hyp2/poly.hpp"

namespace hyp2 {

using FqPoly = Poly<FqElem>;

/// Irreducible factor with multiplicity.
struct FqFactor {
  FqPoly factor;
  unsigned multiplicity;
};

/// Deterministic total order used for canonical factor lists: degree, then
/// coefficients from the top down.
bool canonical_less(const FqPoly& a, const FqPoly& b);

FqPoly make_monic(const FqPoly& f);
FqPoly gcd(FqPoly a, FqPoly b);

struct Xgcd {
  FqPoly g, s, t;  // s*a + t*b = g, g monic
};
Xgcd xgcd(const FqPoly& a, const FqPoly& b);

/// Rabin's irreducibility test.
bool is_irreducible(const FqPoly& f);

/// Square-free decomposition: f = lc * prod g_i^i, returned as (g_i, i) with
/// g_i != 1.
std::vector<FqFactor> squarefree_decomposition(const FqPoly& f);

/// Distinct-degree factorization of a monic square-free f: (product of all
/// irreducible factors of degree d, d).
std::vector<FqFactor> distinct_degree_factorization(const FqPoly& f);

/// Splits a monic square-free f whose irreducible factors all have degree
/// `degree`. Characteristic 2 uses trace splitting; odd characteristic uses the
/// (q^d - 1)/2 power map.
std::vector<FqPoly> equal_degree_factorization(const FqPoly& f, unsigned degree, std::mt19937_64& rng);

/// Full factorization into monic irreducibles with multiplicities, in
/// canonical order.
std::vector<FqFactor> fq_factor(const FqPoly& f, std::mt19937_64& rng);

/// Distinct roots of f in its coefficient field, sorted.
std::vector<FqElem> fq_roots(const FqPoly& f, std::mt19937_64& rng);

/// g with g^2 = f over a field of characteristic 2; throws NotASquare.
FqPoly char2_poly_sqrt(const FqPoly& f);

/// Polynomial over F_p (the prime field) from small integer coefficients.
FqPoly fq_poly_from_ints(const FqField& field, const std::vector<long>& coeffs);

}  // namespace hyp2
