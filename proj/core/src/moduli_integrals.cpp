#include "gwloc/moduli_integrals.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "gwloc/combinatorics.hpp"
#include "gwloc/error.hpp"

namespace gwloc {

int moduli_dimension(int genus, int points) { return 3 * genus - 3 + points; }

namespace {

int exponent_sum(std::span<const int> a) {
  int total = 0;
  for (int e : a) {
    if (e < 0) fail(ErrorKind::InvalidArgument, "psi exponents must be non-negative");
    total += e;
  }
  return total;
}

// Dense power series in k commuting variables, truncated to the box
// 0 <= e_i <= bound_i. Coefficients stored in mixed radix order.
class BoxSeries {
 public:
  explicit BoxSeries(std::vector<int> bounds) : bounds_(std::move(bounds)) {
    std::size_t size = 1;
    strides_.resize(bounds_.size());
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
      strides_[i] = size;
      size *= static_cast<std::size_t>(bounds_[i] + 1);
    }
    coeffs_.assign(size, Rational());
  }

  std::size_t size() const { return coeffs_.size(); }
  Rational& operator[](std::size_t i) { return coeffs_[i]; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }

  std::vector<int> exponents(std::size_t index) const {
    std::vector<int> e(bounds_.size());
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
      e[i] = static_cast<int>(index / strides_[i]) % (bounds_[i] + 1);
    }
    return e;
  }

  BoxSeries operator*(const BoxSeries& other) const {
    BoxSeries out(bounds_);
    for (std::size_t i = 0; i < size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      const auto ei = exponents(i);
      for (std::size_t j = 0; j < size(); ++j) {
        if (other.coeffs_[j].is_zero()) continue;
        const auto ej = exponents(j);
        bool inside = true;
        for (std::size_t v = 0; v < bounds_.size() && inside; ++v) {
          inside = ei[v] + ej[v] <= bounds_[v];
        }
        if (inside) out.coeffs_[i + j] += coeffs_[i] * other.coeffs_[j];
      }
    }
    return out;
  }

 private:
  std::vector<int> bounds_;
  std::vector<std::size_t> strides_;
  std::vector<Rational> coeffs_;
};

}  // namespace

Rational integral_g0(std::span<const int> exponents) {
  const int n = static_cast<int>(exponents.size());
  if (n < 3) fail(ErrorKind::InvalidArgument, "integral_g0 needs at least 3 points");
  if (exponent_sum(exponents) != n - 3) return Rational();
  BigInt denominator = 1;
  for (int e : exponents) denominator *= factorial(static_cast<unsigned long>(e));
  return Rational(factorial(static_cast<unsigned long>(n - 3)), denominator);
}

Rational integral_g0_closed(std::span<const Rational> omegas, int extra_points) {
  if (omegas.empty()) fail(ErrorKind::InvalidArgument, "integral_g0_closed needs at least one weight");
  if (extra_points < 0) fail(ErrorKind::InvalidArgument, "negative number of extra points");
  Rational product = 1;
  Rational inverse_sum;
  for (const auto& w : omegas) {
    if (w.is_zero()) fail(ErrorKind::SingularWeight, "zero flag weight");
    const Rational inv = w.inverse();
    product *= inv;
    inverse_sum += inv;
  }
  const long exponent = static_cast<long>(omegas.size()) + extra_points - 3;
  if (exponent < 0 && inverse_sum.is_zero()) {
    fail(ErrorKind::SingularWeight, "degenerate vertex with vanishing weight sum");
  }
  return product * inverse_sum.pow(exponent);
}

Rational integral_g1(std::span<const int> exponents) {
  const int n = static_cast<int>(exponents.size());
  if (n < 1) fail(ErrorKind::InvalidArgument, "integral_g1 needs at least 1 point");
  if (exponent_sum(exponents) != n) return Rational();

  // Variables are the distinct exponent values; the target monomial is
  // z^r with r_v the multiplicity of value v.
  std::map<int, int> multiplicity;
  for (int e : exponents) ++multiplicity[e];
  std::vector<int> values;
  std::vector<int> bounds;
  for (const auto& [value, count] : multiplicity) {
    values.push_back(value);
    bounds.push_back(count);
  }

  // G = ⟨σ_0^3 exp Σ z σ⟩_0 restricted to the box; X = G - 1.
  BoxSeries x(bounds);
  std::vector<int> points;
  for (std::size_t idx = 1; idx < x.size(); ++idx) {
    const auto e = x.exponents(idx);
    points.assign(3, 0);
    BigInt symmetry = 1;
    for (std::size_t v = 0; v < values.size(); ++v) {
      points.insert(points.end(), static_cast<std::size_t>(e[v]), values[v]);
      symmetry *= factorial(static_cast<unsigned long>(e[v]));
    }
    const Rational value = integral_g0(points);
    if (!value.is_zero()) x[idx] = value / Rational(symmetry);
  }

  // log(1 + X) = Σ_{k>=1} (-1)^{k+1} X^k / k; X^k vanishes past total degree n.
  BoxSeries log_series(bounds);
  BoxSeries power = x;
  for (int k = 1; k <= n; ++k) {
    const Rational scale = Rational(k % 2 == 1 ? 1 : -1, k);
    for (std::size_t idx = 0; idx < power.size(); ++idx) {
      if (!power[idx].is_zero()) log_series[idx] += scale * power[idx];
    }
    if (k < n) power = power * x;
  }

  Rational coefficient = log_series[log_series.size() - 1];
  BigInt symmetry = 1;
  for (int count : bounds) symmetry *= factorial(static_cast<unsigned long>(count));
  return coefficient * Rational(symmetry) / Rational(24);
}

Rational integral_g1_lambda(std::span<const int> exponents) {
  const int n = static_cast<int>(exponents.size());
  if (n < 1) fail(ErrorKind::InvalidArgument, "integral_g1_lambda needs at least 1 point");
  if (exponent_sum(exponents) != n - 1) return Rational();
  std::vector<int> extended(exponents.begin(), exponents.end());
  extended.push_back(0);
  extended.push_back(0);
  return integral_g0(extended) / Rational(24);
}

Rational vertex_integral(const VertexIntegrand& integrand, IntegralCache* cache) {
  const auto& a = integrand.psi_exponents;
  const int n = static_cast<int>(a.size());
  if (integrand.genus < 0 || integrand.lambda_power < 0) {
    fail(ErrorKind::InvalidArgument, "negative genus or lambda power");
  }
  if (integrand.genus >= 2) {
    fail(ErrorKind::UnsupportedGenus,
         "genus " + std::to_string(integrand.genus) +
             " vertex integrals are not computed natively; supply a Hodge table");
  }
  if (integrand.genus == 0 && integrand.lambda_power != 0) {
    fail(ErrorKind::InvalidArgument, "lambda class does not exist in genus 0");
  }
  if (integrand.genus == 1 && integrand.lambda_power >= 2) return Rational();
  if (exponent_sum(a) + integrand.lambda_power != moduli_dimension(integrand.genus, n)) {
    if (integrand.genus == 0 && n < 3) fail(ErrorKind::InvalidArgument, "M_{0,n} unstable for n < 3");
    return Rational();
  }

  auto compute = [&]() -> Rational {
    if (integrand.genus == 0) return integral_g0(a);
    return integrand.lambda_power == 0 ? integral_g1(a) : integral_g1_lambda(a);
  };
  if (cache == nullptr) return compute();
  return cache->get_or_compute(IntegralKey(integrand.genus, a, integrand.lambda_power), compute);
}

namespace {

Rational oracle_recursive(int genus, std::vector<int> a, std::map<std::vector<int>, Rational>& memo) {
  const int n = static_cast<int>(a.size());
  const int total = std::accumulate(a.begin(), a.end(), 0);
  if (total != moduli_dimension(genus, n)) return Rational();
  if (genus == 0 && n < 3) return Rational();
  if (genus == 1 && n < 1) return Rational();

  std::sort(a.begin(), a.end(), std::greater<>());
  if (genus == 0 && n == 3) return Rational(1);
  if (genus == 1 && n == 1) return Rational(1, 24);
  if (auto it = memo.find(a); it != memo.end()) return it->second;

  Rational value;
  if (a.back() == 0) {
    // string: ⟨τ_0 ∏τ_{a_i}⟩ = Σ_j ⟨... τ_{a_j - 1} ...⟩
    std::vector<int> rest(a.begin(), a.end() - 1);
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (rest[j] == 0) continue;
      auto lowered = rest;
      --lowered[j];
      value += oracle_recursive(genus, lowered, memo);
    }
  } else if (std::find(a.begin(), a.end(), 1) != a.end()) {
    // dilaton: ⟨τ_1 ∏_{i=1}^{m} τ_{a_i}⟩ = (2g - 2 + m) ⟨∏τ_{a_i}⟩
    auto rest = a;
    rest.erase(std::find(rest.begin(), rest.end(), 1));
    value = Rational(2 * genus - 2 + static_cast<int>(rest.size())) * oracle_recursive(genus, rest, memo);
  }
  memo.emplace(a, value);
  return value;
}

}  // namespace

Rational string_dilaton_oracle(int genus, std::span<const int> exponents) {
  if (genus < 0 || genus > 1) fail(ErrorKind::UnsupportedGenus, "oracle covers genus 0 and 1 only");
  exponent_sum(exponents);
  std::map<std::vector<int>, Rational> memo;
  return oracle_recursive(genus, std::vector<int>(exponents.begin(), exponents.end()), memo);
}

}  // namespace gwloc
