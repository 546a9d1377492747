#include "gwloc/hodge_table.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gwloc/error.hpp"

namespace gwloc {

HodgeRecord::HodgeRecord(int g, std::vector<int> psi, std::vector<int> chern)
    : genus(g), psi_exponents(std::move(psi)), chern_indices(std::move(chern)) {
  std::sort(psi_exponents.begin(), psi_exponents.end(), std::greater<>());
  std::sort(chern_indices.begin(), chern_indices.end(), std::greater<>());
}

namespace {

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(text);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string strip(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& text, std::size_t line) {
  const std::string t = strip(text);
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size() || value < 0) {
    fail(ErrorKind::InvalidArgument, "hodge table line " + std::to_string(line) + ": bad integer '" + t + "'");
  }
  return value;
}

std::vector<int> parse_list(const std::string& text, std::size_t line) {
  std::vector<int> out;
  if (strip(text).empty()) return out;
  for (const auto& item : split(text, ',')) out.push_back(parse_int(item, line));
  return out;
}

}  // namespace

std::string HodgeRecord::key_text() const {
  return std::to_string(genus) + "; " + join(psi_exponents) + "; " + join(chern_indices);
}

HodgeTable HodgeTable::parse(std::istream& in) {
  HodgeTable table;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = strip(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto fields = split(text, ';');
    if (fields.size() != 4) {
      fail(ErrorKind::InvalidArgument, "hodge table line " + std::to_string(line) + ": expected 4 ';'-separated fields");
    }
    HodgeRecord record(parse_int(fields[0], line), parse_list(fields[1], line), parse_list(fields[2], line));
    for (int k : record.chern_indices) {
      if (k < 1 || k > record.genus) {
        fail(ErrorKind::InvalidArgument, "hodge table line " + std::to_string(line) + ": Chern index out of range");
      }
    }
    table.add(record, Rational::parse(fields[3]));
  }
  return table;
}

HodgeTable HodgeTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open hodge table '" + path + "'");
  return parse(in);
}

void HodgeTable::add(const HodgeRecord& record, const Rational& value) {
  auto [it, inserted] = values_.emplace(record, value);
  if (!inserted && it->second != value) {
    fail(ErrorKind::InvalidArgument, "conflicting hodge table entries for " + record.key_text());
  }
}

std::optional<Rational> HodgeTable::find(const HodgeRecord& record) const {
  auto it = values_.find(record);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

}  // namespace gwloc
