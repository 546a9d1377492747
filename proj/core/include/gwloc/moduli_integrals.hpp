#pragma once

#include <span>
#include <vector>

#include "gwloc/integral_cache.hpp"
#include "gwloc/rational.hpp"

namespace gwloc {

/// A monomial ∏ψ_i^{a_i}·λ^k on M_{g,n}; λ = c_1(E) only in genus one.
struct VertexIntegrand {
  int genus = 0;
  std::vector<int> psi_exponents;
  int lambda_power = 0;
};

/// dim M_{g,n} = 3g - 3 + n.
int moduli_dimension(int genus, int points);

/// ∫_{M_{0,n}} ∏ψ^{a_i} = (n-3)!/∏a_i! when Σa_i = n-3, zero otherwise.
Rational integral_g0(std::span<const int> exponents);

/// ∫_{M_{0,n}} ∏_{flags} 1/(ω_i - ψ_i), with `extra_points` further marked
/// points carrying no class: (∏ 1/ω_i)(Σ 1/ω_i)^{n-3}, n = #ω + extra_points.
///
/// The same expression is used for n = 1, 2, where M_{0,n} is a point by
/// convention; it yields ω for a lone flag, 1/(ω_1+ω_2) for two flags and 1
/// for a flag with one marking, which are the degenerate vertex factors.
Rational integral_g0_closed(std::span<const Rational> omegas, int extra_points = 0);

/// ∫_{M_{1,n}} ∏ψ^{a_i}, read off from (1/24) log of the genus-zero
/// potential ⟨σ_0^3 exp Σ z_i σ_i⟩_0 by truncated multivariate series.
Rational integral_g1(std::span<const int> exponents);

/// ∫_{M_{1,n}} λ ∏ψ^{a_i} = (1/24) ∫_{M_{0,n+2}} ∏ψ^{a_i}.
Rational integral_g1_lambda(std::span<const int> exponents);

/// Dispatches on genus and λ-power, memoising through `cache` when given.
/// Genus >= 2 raises UnsupportedGenus; λ^2 vanishes on M_{1,n}.
Rational vertex_integral(const VertexIntegrand& integrand, IntegralCache* cache = nullptr);

/// Independent evaluation of ⟨∏τ_{a_i}⟩_g, g ∈ {0, 1}, by the string and
/// dilaton equations alone, seeded by ⟨τ_0^3⟩_0 = 1 and ⟨τ_1⟩_1 = 1/24.
Rational string_dilaton_oracle(int genus, std::span<const int> exponents);

}  // namespace gwloc
