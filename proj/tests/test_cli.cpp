#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "gwloc/cli/cache_file.hpp"
#include "gwloc/cli/config.hpp"
#include "gwloc/moduli_integrals.hpp"

using namespace gwloc;
using namespace gwloc::cli;

namespace {

struct Outcome {
  int status = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "gwloc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  Outcome outcome;
  std::ostringstream out, err;
  const auto parsed = parse_args(static_cast<int>(argv.size()), argv.data(), out, err);
  if (parsed.config) {
    outcome.status = run(*parsed.config, out, err);
  } else {
    outcome.status = parsed.exit_code;
  }
  outcome.out = out.str();
  outcome.err = err.str();
  return outcome;
}

nlohmann::json first_record(const Outcome& o) { return nlohmann::json::parse(o.out.substr(0, o.out.find('\n'))); }

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("gwloc-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

}  // namespace

TEST_CASE("gw reports twelve plane cubics") {
  const auto o = invoke({"gw", "--g", "0", "--d", "3", "--r", "2", "--points", "8"});
  CHECK(o.status == ExitCode::Ok);
  const auto record = first_record(o);
  CHECK(record["value"] == "12");
  CHECK(record["query"] == "gw g=0 d=3 r=2 insertions=2,2,2,2,2,2,2,2");
  CHECK(record["graph_count"].is_number());
  CHECK(record["weight_vectors_used"].size() == 1);
  CHECK_FALSE(record.contains("elapsed_ms"));
  CHECK_FALSE(record.contains("cache_hits"));
}

TEST_CASE("multicover and conjecture examples") {
  auto o = invoke({"multicover", "--g", "1", "--d", "4", "--mode", "partition"});
  CHECK(o.status == ExitCode::Ok);
  CHECK(first_record(o)["value"] == "1/48");

  o = invoke({"multicover", "--g", "1", "--d", "2", "--trials", "3"});
  CHECK(o.status == ExitCode::Ok);
  std::istringstream lines(o.out);
  std::string line;
  int records = 0;
  while (std::getline(lines, line)) {
    CHECK(nlohmann::json::parse(line)["value"] == "1/24");
    ++records;
  }
  CHECK(records == 2);

  o = invoke({"conjecture", "--g", "2", "--d", "1"});
  CHECK(o.status == ExitCode::Ok);
  CHECK(first_record(o)["value"] == "1/240");

  o = invoke({"conjecture"});
  CHECK(o.status == ExitCode::Ok);
  CHECK(std::count(o.out.begin(), o.out.end(), '\n') == 25);
}

TEST_CASE("series output") {
  const auto o = invoke({"series", "--kind", "gamma", "--order", "3", "--format", "text"});
  CHECK(o.status == ExitCode::Ok);
  CHECK(o.out == "gamma[0] = 0\ngamma[1] = -1/24\ngamma[2] = 1/48\ngamma[3] = -1/72\n");
  const auto manin = invoke({"series", "--kind", "manin", "--order", "2", "--format", "text"});
  CHECK(manin.out == "manin[1] = -1\nmanin[2] = 1\n");
}

TEST_CASE("csv flattens the record fields") {
  const auto o = invoke({"count", "--d", "2", "--format", "csv", "--timing", "--stats"});
  CHECK(o.status == ExitCode::Ok);
  std::istringstream in(o.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "query,value,graph_count,weight_vectors_used,detail,elapsed_ms,cache_hits");
  CHECK(row.rfind("count g=0 d=2,1,", 0) == 0);
}

TEST_CASE("timing and stats are opt-in JSON fields") {
  const auto o = invoke({"count", "--d", "2", "--timing", "--stats"});
  const auto record = first_record(o);
  CHECK(record.contains("elapsed_ms"));
  CHECK(record.contains("cache_hits"));
}

TEST_CASE("graphs command dumps JSON") {
  const auto o = invoke({"graphs", "--g", "0", "--n", "0", "--r", "1", "--d", "2"});
  CHECK(o.status == ExitCode::Ok);
  CHECK(std::count(o.out.begin(), o.out.end(), '\n') == 3);
  CHECK(first_record(o).contains("edges"));
}

TEST_CASE("exit codes name the failure") {
  CHECK(invoke({"gw", "--g", "2", "--d", "1", "--r", "2"}).status == ExitCode::UnsupportedGenus);
  CHECK(invoke({"multicover", "--g", "2", "--d", "1", "--mode", "graph"}).status == ExitCode::UnsupportedGenus);
  const auto missing = invoke({"multicover", "--g", "2", "--d", "1", "--mode", "partition"});
  CHECK(missing.status == ExitCode::MissingHodgeTable);
  CHECK(missing.err.find("2; 3; 1") != std::string::npos);
  CHECK(invoke({"gw", "--d", "3", "--r", "2", "--points", "7"}).status == ExitCode::InvalidArguments);
  CHECK(invoke({"gw", "--d", "0"}).status == ExitCode::InvalidArguments);
  CHECK(invoke({"gw", "--bogus"}).status == ExitCode::InvalidArguments);
  CHECK(invoke({}).status == ExitCode::InvalidArguments);
  CHECK(invoke({"count", "--d", "3", "--graph-cap", "4"}).status == ExitCode::GraphCapExceeded);
  CHECK(invoke({"graphs", "--d", "3", "--graph-cap", "4"}).status == ExitCode::GraphCapExceeded);
  CHECK(invoke({"multicover", "--g", "2", "--d", "1", "--mode", "partition", "--hodge-table", "/nonexistent"}).status ==
        ExitCode::IoFailure);
  CHECK(invoke({"--help"}).status == ExitCode::Ok);
}

TEST_CASE("Hodge table flag enables genus two") {
  const auto o = invoke({"multicover", "--g", "2", "--d", "1", "--mode", "partition", "--hodge-table",
                         std::string(GWLOC_TEST_DATA_DIR) + "/hodge_g2.txt"});
  CHECK(o.status == ExitCode::Ok);
  CHECK(first_record(o)["value"] == "1/240");
}

TEST_CASE("identical configurations give identical bytes") {
  const std::vector<std::string> args{"gw", "--d", "2", "--r", "2", "--points", "5", "--trials", "3", "--seed", "9"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  CHECK(a.out == b.out);
  auto single = args;
  single.insert(single.end(), {"--workers", "1"});
  auto many = args;
  many.insert(many.end(), {"--workers", "4"});
  CHECK(invoke(single).out == a.out);
  CHECK(invoke(many).out == a.out);
  CHECK(first_record(a)["weight_vectors_used"].size() == 3);
}

TEST_CASE("cache entries round-trip through text") {
  const IntegralKey key(1, {0, 3, 1}, 1);
  const std::string line = encode_entry(key, Rational(-5, 12));
  CHECK(line == "1;3,1,0;1;-5/12");
  IntegralKey back;
  Rational value;
  REQUIRE(decode_entry(line, back, value));
  CHECK(back == key);
  CHECK(value == Rational(-5, 12));
  for (const char* bad : {"", "1;2;0", "a;1;0;1/2", "1;1,x;0;1/2", "1;1;0;1/0", "1;-1;0;1/2", "1;1;0;1/2;extra"}) {
    CHECK_FALSE(decode_entry(bad, back, value));
  }
}

TEST_CASE("cache files") {
  TempDir dir;
  const std::string path = dir.file("cache.txt");

  SUBCASE("write then read gives the same map") {
    IntegralCache cache;
    for (int n = 1; n <= 5; ++n) (void)vertex_integral({1, std::vector<int>(static_cast<std::size_t>(n), 1), 0}, &cache);
    std::ostringstream warn;
    REQUIRE(save_cache(path, cache, warn));
    IntegralCache loaded;
    CHECK(load_cache(path, loaded, warn) == cache.size());
    CHECK(loaded.entries() == cache.entries());
    CHECK(warn.str().empty());
  }

  SUBCASE("a missing file is silently empty") {
    IntegralCache loaded;
    std::ostringstream warn;
    CHECK(load_cache(dir.file("absent.txt"), loaded, warn) == 0);
    CHECK(warn.str().empty());
  }

  SUBCASE("a prior-version cache is ignored with a warning") {
    std::ofstream(path) << "gwloc-integral-cache 0\n1;1;0;1/24\n";
    IntegralCache loaded;
    std::ostringstream warn;
    CHECK(load_cache(path, loaded, warn) == 0);
    CHECK(loaded.size() == 0);
    CHECK(warn.str().find("warning") != std::string::npos);
  }

  SUBCASE("a corrupt cache is never trusted") {
    std::ofstream(path) << kCacheHeader << "\n1;1;0;1/24\n1;2,0;0;garbage\n";
    IntegralCache loaded;
    std::ostringstream warn;
    CHECK(load_cache(path, loaded, warn) == 0);
    CHECK(loaded.size() == 0);
    CHECK_FALSE(warn.str().empty());
  }

  SUBCASE("concurrent savers lose no entries") {
    constexpr int writers = 6;
    std::vector<std::thread> threads;
    for (int t = 0; t < writers; ++t) {
      threads.emplace_back([&, t] {
        IntegralCache cache;
        cache.insert(IntegralKey(1, {t + 1}, 0), Rational(t + 1));
        std::ostringstream warn;
        save_cache(path, cache, warn);
      });
    }
    for (auto& t : threads) t.join();
    IntegralCache loaded;
    std::ostringstream warn;
    CHECK(load_cache(path, loaded, warn) == writers);
  }

  SUBCASE("the CLI persists and reuses the cache") {
    const auto first = invoke({"count", "--g", "1", "--d", "3", "--cache", path, "--stats"});
    CHECK(first.status == ExitCode::Ok);
    IntegralCache loaded;
    std::ostringstream warn;
    CHECK(load_cache(path, loaded, warn) > 0);
    const auto second = invoke({"count", "--g", "1", "--d", "3", "--cache", path, "--stats"});
    CHECK(first_record(second)["value"] == first_record(first)["value"]);
    CHECK(first_record(second)["cache_hits"].get<long>() >= first_record(first)["cache_hits"].get<long>());
  }
}
