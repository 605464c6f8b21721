#pragma once

#include <vector>

#include "hyp2/fq_poly.hpp"
#include "hyp2/unram.hpp"

namespace hyp2 {

using UnramPoly = Poly<UnramElem>;

/// Coefficient-wise digit lift from the residue field of `ring`.
UnramPoly lift_to(const UnramRing& ring, const FqPoly& f);
/// Coefficient-wise reduction mod p.
FqPoly reduce(const UnramPoly& f);
UnramPoly truncate(const UnramPoly& f, unsigned precision);
UnramPoly extend(const UnramPoly& f, unsigned precision);
/// Exact division of every coefficient by p^k (precision drops by k).
UnramPoly divide_by_p_power(const UnramPoly& f, unsigned k);
/// Integer coefficients embedded into `ring`.
UnramPoly from_integers(const UnramRing& ring, const std::vector<mpz_class>& coeffs);

/// Multifactor Hensel lifting of a coprime factorization.
///
/// `f` is monic over Z_p[t]/(L, p^N); `seeds` are monic and pairwise coprime
/// over the residue field, with product f mod p. Returns monic F_j with
/// F_j = seeds[j] mod p and prod F_j = f mod p^N. Lifting runs over a balanced
/// product tree with quadratic (precision-doubling) steps.
///
/// Throws SeedsNotCoprime, ProductMismatch, or std::invalid_argument when f
/// or a seed is not monic.
std::vector<UnramPoly> hensel_lift_factors(const UnramPoly& f, const std::vector<FqPoly>& seeds);

}  // namespace hyp2
