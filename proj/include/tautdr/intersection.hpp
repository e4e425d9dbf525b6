#pragma once

#include "tautdr/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tautdr {

/// <tau_{d_1} ... tau_{d_n}>_g, the psi intersection number on M̄_{g,n}.
/// Zero unless sum d_i = 3g-3+n. Throws InvalidInput on unstable (g,n).
Rational psi_integral(int g, const std::vector<int>& d);

/// Integral of psi_1^{psi_1}...psi_n^{psi_n} kappa_{b_1}...kappa_{b_m} over
/// M̄_{g,n}, with kappa_b = pi_*(psi_{n+1}^{b+1}).
Rational kappa_psi_integral(int g, const std::vector<int>& psi, const std::vector<int>& kappa);

/// Memo table for psi_integral. Concurrent reads; writes are serialized and
/// idempotent. Keys are (g, exponents sorted descending).
namespace integral_cache {

using Key = std::pair<int, std::vector<int>>;

std::vector<std::pair<Key, Rational>> snapshot();
std::size_t size();
void clear();
/// Text format: one "g:d1,d2,...<TAB>p/q" per line. Missing file is not an error.
void load(const std::string& path);
void save(const std::string& path);

}  // namespace integral_cache

}  // namespace tautdr
