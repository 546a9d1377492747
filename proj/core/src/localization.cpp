#include "gwloc/localization.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "gwloc/combinatorics.hpp"
#include "gwloc/error.hpp"
#include "gwloc/moduli_integrals.hpp"

namespace gwloc {

WeightVector::WeightVector(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.size() < 2) fail(ErrorKind::InvalidArgument, "weight vector needs r + 1 >= 2 entries");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    for (std::size_t j = i + 1; j < values_.size(); ++j) {
      if (values_[i] == values_[j]) fail(ErrorKind::NonGenericWeights, "torus weights must be pairwise distinct");
    }
  }
}

WeightVector WeightVector::scaled(const Rational& factor) const {
  if (factor.is_zero()) fail(ErrorKind::InvalidArgument, "scale factor must be nonzero");
  auto out = values_;
  for (auto& v : out) v *= factor;
  return WeightVector(std::move(out));
}

WeightVector WeightVector::permuted(std::span<const int> perm) const {
  if (perm.size() != values_.size()) fail(ErrorKind::InvalidArgument, "permutation size mismatch");
  std::vector<Rational> out;
  out.reserve(values_.size());
  for (int p : perm) out.push_back(values_.at(static_cast<std::size_t>(p)));
  return WeightVector(std::move(out));
}

std::string WeightVector::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < values_.size(); ++i) os << (i ? ", " : "") << values_[i];
  os << ')';
  return os.str();
}

WeightVector default_weights(int r) {
  if (r < 1) fail(ErrorKind::InvalidArgument, "r must be >= 1");
  std::vector<Rational> values;
  for (int k = 0; k <= r; ++k) {
    BigInt p;
    const BigInt start = 1000 * (k + 1);
    mpz_nextprime(p.get_mpz_t(), start.get_mpz_t());
    values.emplace_back(k % 2 == 0 ? p : BigInt(-p));
  }
  return WeightVector(std::move(values));
}

WeightStream::WeightStream(std::uint64_t seed, int r) : rng_(seed), r_(r) {
  if (r < 1) fail(ErrorKind::InvalidArgument, "r must be >= 1");
}

WeightVector WeightStream::next() {
  if (first_) {
    first_ = false;
    return default_weights(r_);
  }
  std::uniform_int_distribution<long> draw(-100000, 100000);
  std::set<long> used;
  std::vector<Rational> values;
  while (static_cast<int>(values.size()) <= r_) {
    const long v = draw(rng_);
    if (v == 0 || !used.insert(v).second) continue;
    values.emplace_back(v);
  }
  return WeightVector(std::move(values));
}

Rational tangent_product(int label, const WeightVector& w) {
  Rational out = 1;
  for (int j = 0; j <= w.r(); ++j) {
    if (j != label) out *= w[label] - w[j];
  }
  return out;
}

Rational flag_weight(const Flag& flag, const WeightVector& w) {
  return (w[flag.near_label] - w[flag.far_label]) / Rational(flag.degree);
}

Rational edge_factor(int i, int j, int degree, const WeightVector& w) {
  if (i == j) fail(ErrorKind::InvalidArgument, "edge endpoints must carry different labels");
  if (degree < 1) fail(ErrorKind::InvalidArgument, "edge degree must be >= 1");
  const BigInt dd = degree;
  BigInt top;
  mpz_pow_ui(top.get_mpz_t(), dd.get_mpz_t(), 2ul * static_cast<unsigned long>(degree));
  const BigInt df = factorial(static_cast<unsigned long>(degree));
  Rational out = Rational(top, df * df) / (w[i] - w[j]).pow(2L * degree);
  if (degree % 2 == 1) out = -out;

  for (int a = 0; a <= degree; ++a) {
    const int b = degree - a;
    const Rational point = (Rational(a) * w[i] + Rational(b) * w[j]) / Rational(degree);
    for (int k = 0; k <= w.r(); ++k) {
      if (k == i || k == j) continue;
      const Rational weight = point - w[k];
      if (weight.is_zero()) fail(ErrorKind::NonGenericWeights, "edge factor denominator vanishes");
      out /= weight;
    }
  }
  return out;
}

LambdaPoly vertex_factor(int genus, int label, const WeightVector& w) {
  if (genus == 0) return {tangent_product(label, w).inverse(), Rational()};
  if (genus == 1) {
    // ∏_j (1 - λ/(λ_i - λ_j)) with λ² = 0.
    Rational linear;
    for (int j = 0; j <= w.r(); ++j) {
      if (j != label) linear -= (w[label] - w[j]).inverse();
    }
    return {Rational(1), linear};
  }
  fail(ErrorKind::UnsupportedGenus,
       "vertex genus " + std::to_string(genus) + " needs Hodge integrals beyond genus one");
}

std::vector<Rational> flag_factor(const Rational& omega, int label, const WeightVector& w, int truncation) {
  if (omega.is_zero()) fail(ErrorKind::SingularWeight, "zero flag weight");
  if (truncation < 0) fail(ErrorKind::InvalidArgument, "negative truncation order");
  const Rational inv = omega.inverse();
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(truncation) + 1);
  Rational term = tangent_product(label, w) * inv;
  for (int k = 0; k <= truncation; ++k) {
    out.push_back(term);
    term *= inv;
  }
  return out;
}

namespace {

Rational genus_one_flag_integral(const std::vector<std::vector<Rational>>& series, int legs, int lambda_power,
                                 IntegralCache& cache) {
  const int val = static_cast<int>(series.size());
  const int dim = val + legs;
  Rational total;
  VertexIntegrand integrand{1, {}, lambda_power};
  for_each_weak_composition(dim - lambda_power, val, [&](std::span<const int> a) {
    Rational coefficient = 1;
    for (int f = 0; f < val; ++f) coefficient *= series[f][a[f]];
    integrand.psi_exponents.assign(a.begin(), a.end());
    integrand.psi_exponents.insert(integrand.psi_exponents.end(), static_cast<std::size_t>(legs), 0);
    const Rational value = vertex_integral(integrand, &cache);
    if (!value.is_zero()) total += coefficient * value;
  });
  return total;
}

}  // namespace

Rational integrate_vertex(int genus, int label, std::span<const Rational> omegas, int legs, const LambdaPoly& extra,
                          const WeightVector& w, IntegralCache& cache) {
  if (omegas.empty()) fail(ErrorKind::InvalidArgument, "vertex must have at least one flag");
  const int val = static_cast<int>(omegas.size());
  const LambdaPoly poly = vertex_factor(genus, label, w) * extra;

  if (genus == 0) {
    if (!extra.linear.is_zero()) fail(ErrorKind::InvalidArgument, "lambda class on a genus-zero vertex");
    return poly.constant * tangent_product(label, w).pow(val) * integral_g0_closed(omegas, legs);
  }

  const int dim = moduli_dimension(genus, val + legs);
  std::vector<std::vector<Rational>> series;
  series.reserve(omegas.size());
  for (const auto& omega : omegas) series.push_back(flag_factor(omega, label, w, dim));
  Rational out;
  if (!poly.constant.is_zero()) out += poly.constant * genus_one_flag_integral(series, legs, 0, cache);
  if (!poly.linear.is_zero()) out += poly.linear * genus_one_flag_integral(series, legs, 1, cache);
  return out;
}

namespace {

std::vector<Rational> vertex_omegas(const FixedGraph& graph, int vertex, const WeightVector& w) {
  std::vector<Rational> out;
  for (const auto& f : graph.flags_at(vertex)) out.push_back(flag_weight(f, w));
  return out;
}

Rational edges_and_automorphisms(const FixedGraph& graph, const WeightVector& w) {
  Rational out = Rational(BigInt(1), automorphism_order(graph));
  const auto& vs = graph.vertices();
  for (const auto& e : graph.edges()) out *= edge_factor(vs[e.u].label, vs[e.v].label, e.degree, w);
  return out;
}

void check_weights(const FixedGraph& graph, const WeightVector& w) {
  if (w.r() != graph.r()) fail(ErrorKind::InvalidArgument, "weight vector length must be r + 1");
}

}  // namespace

Rational graph_contribution(const FixedGraph& graph, const WeightVector& w, std::span<const int> insertions,
                            IntegralCache& cache) {
  check_weights(graph, w);
  if (static_cast<int>(insertions.size()) != graph.legs()) {
    fail(ErrorKind::InvalidArgument, "one insertion per leg required");
  }
  Rational out = edges_and_automorphisms(graph, w);
  const auto& vs = graph.vertices();
  for (std::size_t v = 0; v < vs.size(); ++v) {
    const int label = vs[v].label;
    for (int leg : vs[v].legs) out *= w[label].pow(insertions[static_cast<std::size_t>(leg - 1)]);
    const auto omegas = vertex_omegas(graph, static_cast<int>(v), w);
    out *= integrate_vertex(vs[v].genus, label, omegas, static_cast<int>(vs[v].legs.size()), LambdaPoly{}, w, cache);
    if (out.is_zero()) break;
  }
  return out;
}

InsertionProfile InsertionProfile::of(std::span<const int> insertions) {
  std::map<int, int> counts;
  for (int l : insertions) {
    if (l < 0) fail(ErrorKind::InvalidArgument, "insertion powers must be non-negative");
    ++counts[l];
  }
  InsertionProfile out;
  out.classes.assign(counts.begin(), counts.end());
  return out;
}

int InsertionProfile::count() const {
  int total = 0;
  for (const auto& [power, multiplicity] : classes) total += multiplicity;
  return total;
}

Rational leg_summed_contribution(const FixedGraph& shape, const WeightVector& w, const InsertionProfile& profile,
                                 IntegralCache& cache) {
  check_weights(shape, w);
  if (shape.legs() != 0) fail(ErrorKind::InvalidArgument, "leg summation expects a leg-free shape");
  const int n = profile.count();
  const std::size_t classes = profile.classes.size();

  // States index how many legs of each class are already placed.
  std::vector<std::size_t> stride(classes);
  std::size_t states = 1;
  for (std::size_t c = 0; c < classes; ++c) {
    stride[c] = states;
    states *= static_cast<std::size_t>(profile.classes[c].second + 1);
  }
  auto digits = [&](std::size_t state) {
    std::vector<int> out(classes);
    for (std::size_t c = 0; c < classes; ++c) {
      out[c] = static_cast<int>(state / stride[c]) % (profile.classes[c].second + 1);
    }
    return out;
  };
  std::vector<Rational> inverse_factorial(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) inverse_factorial[k] = Rational(BigInt(1), factorial(static_cast<unsigned long>(k)));

  std::vector<Rational> dp(states);
  dp[0] = 1;
  const auto& vs = shape.vertices();
  for (std::size_t v = 0; v < vs.size(); ++v) {
    const int label = vs[v].label;
    const auto omegas = vertex_omegas(shape, static_cast<int>(v), w);
    std::vector<Rational> integral(static_cast<std::size_t>(n) + 1);
    std::vector<bool> known(static_cast<std::size_t>(n) + 1, false);
    auto vertex_value = [&](int legs) -> const Rational& {
      if (!known[legs]) {
        integral[legs] = integrate_vertex(vs[v].genus, label, omegas, legs, LambdaPoly{}, w, cache);
        known[legs] = true;
      }
      return integral[legs];
    };
    std::vector<std::vector<Rational>> class_power(classes);
    for (std::size_t c = 0; c < classes; ++c) {
      const Rational base = w[label].pow(profile.classes[c].first);
      Rational p = 1;
      for (int k = 0; k <= profile.classes[c].second; ++k) {
        class_power[c].push_back(p * inverse_factorial[k]);
        p *= base;
      }
    }

    std::vector<Rational> next(states);
    for (std::size_t from = 0; from < states; ++from) {
      if (dp[from].is_zero()) continue;
      const auto used = digits(from);
      for (std::size_t add = 0; add < states; ++add) {
        const auto placed = digits(add);
        bool fits = true;
        int legs_here = 0;
        for (std::size_t c = 0; c < classes && fits; ++c) {
          fits = used[c] + placed[c] <= profile.classes[c].second;
          legs_here += placed[c];
        }
        if (!fits) continue;
        const Rational& value = vertex_value(legs_here);
        if (value.is_zero()) continue;
        Rational term = dp[from] * value;
        for (std::size_t c = 0; c < classes; ++c) term *= class_power[c][placed[c]];
        next[from + add] += term;
      }
    }
    dp = std::move(next);
  }

  Rational out = dp[states - 1];
  for (const auto& [power, multiplicity] : profile.classes) out *= Rational(factorial(static_cast<unsigned long>(multiplicity)));
  return out * edges_and_automorphisms(shape, w);
}

}  // namespace gwloc
