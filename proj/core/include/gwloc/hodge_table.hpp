#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gwloc/rational.hpp"

namespace gwloc {

/// One Hodge integral ∫_{M_{g,n}} ∏ψ^{a_i} ∏_k c_k(E). Exponents and Chern
/// indices are kept sorted so lookups ignore presentation order.
struct HodgeRecord {
  int genus = 0;
  std::vector<int> psi_exponents;
  std::vector<int> chern_indices;

  HodgeRecord() = default;
  HodgeRecord(int g, std::vector<int> psi, std::vector<int> chern);

  /// "g; a_1,...,a_n; k_1,k_2,..." (without the value field).
  std::string key_text() const;

  friend auto operator<=>(const HodgeRecord&, const HodgeRecord&) = default;
};

/// User-supplied table of Hodge integrals, one record per line:
///   g; a_1,...,a_n; k_1,k_2,...; p/q
/// Blank lines and lines starting with '#' are ignored.
class HodgeTable {
 public:
  static HodgeTable parse(std::istream& in);
  static HodgeTable load(const std::string& path);

  void add(const HodgeRecord& record, const Rational& value);
  std::optional<Rational> find(const HodgeRecord& record) const;
  std::size_t size() const { return values_.size(); }

 private:
  std::map<HodgeRecord, Rational> values_;
};

}  // namespace gwloc
