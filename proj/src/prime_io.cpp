#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "beurling/prime_system.hpp"
#include "json.hpp"

namespace beurling {

PrimeSystem::PrimeSystem(std::vector<double> primes, SystemMeta meta) : primes_(std::move(primes)), meta_(std::move(meta)) {
  std::sort(primes_.begin(), primes_.end());
  for (double p : primes_) {
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("PrimeSystem: primes must be finite and > 1");
  }
  if (!primes_.empty() && primes_.back() > meta_.x_max)
    throw std::invalid_argument("PrimeSystem: prime " + format_g17(primes_.back()) + " beyond x_max");
  logs_.reserve(primes_.size());
  for (double p : primes_) logs_.push_back(std::log(p));
}

PrimeSystem PrimeSystem::finite(std::vector<double> primes) {
  SystemMeta meta;
  meta.complete = true;
  meta.template_id = "finite";
  std::vector<double> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  meta.strictly_increasing = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  return PrimeSystem(std::move(primes), std::move(meta));
}

void PrimeSystem::require_in_range(double x) const {
  if (x > meta_.x_max)
    throw std::out_of_range("query x = " + format_g17(x) + " beyond system cutoff x_max = " + format_g17(meta_.x_max));
}

PrimeSystem PrimeSystem::first(std::size_t k) const {
  std::vector<double> head(primes_.begin(), primes_.begin() + static_cast<std::ptrdiff_t>(std::min(k, primes_.size())));
  SystemMeta meta = meta_;
  meta.complete = true;
  meta.x_max = std::numeric_limits<double>::infinity();
  meta.chebyshev_C = 0.0;
  return PrimeSystem(std::move(head), std::move(meta));
}

std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_prime_system(std::ostream& out, const PrimeSystem& ps) {
  const SystemMeta& m = ps.meta();
  nlohmann::ordered_json header;
  header["format"] = "beurling-primes/1";
  header["seed"] = m.seed;
  header["template"] = m.template_id;
  if (std::isfinite(m.x_max)) {
    header["x_max"] = m.x_max;
  } else {
    header["x_max"] = nullptr;
  }
  header["count"] = ps.size();
  header["strictly_increasing"] = m.strictly_increasing;
  header["chebyshev_C"] = m.chebyshev_C;
  header["complete"] = m.complete;
  header["config"] = m.config.empty() ? nlohmann::ordered_json::object() : nlohmann::ordered_json::parse(m.config);
  out << header.dump() << '\n';
  for (double p : ps.primes()) out << format_g17(p) << '\n';
  if (!out) throw std::runtime_error("write_prime_system: stream error");
}

PrimeSystem read_prime_system(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("prime file: missing header line");
  // ordered, so the config echo keeps its key order through a round trip
  nlohmann::ordered_json header;
  try {
    header = nlohmann::ordered_json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("prime file: malformed header: ") + e.what());
  }
  if (header.value("format", "") != "beurling-primes/1") throw std::runtime_error("prime file: unknown format tag");
  SystemMeta meta;
  meta.seed = header.value("seed", std::uint64_t{0});
  meta.template_id = header.value("template", "");
  if (header.contains("x_max") && header["x_max"].is_number()) meta.x_max = header["x_max"].get<double>();
  meta.strictly_increasing = header.value("strictly_increasing", false);
  meta.chebyshev_C = header.value("chebyshev_C", 0.0);
  meta.complete = header.value("complete", false);
  if (header.contains("config") && !header["config"].empty()) meta.config = header["config"].dump();
  const auto count = header.value("count", std::size_t{0});

  std::vector<double> primes;
  primes.reserve(count);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    char* end = nullptr;
    const double p = std::strtod(line.c_str(), &end);
    if (end == line.c_str() || *end != '\0')
      throw std::runtime_error("prime file: line " + std::to_string(line_no) + " is not a number");
    primes.push_back(p);
  }
  if (primes.size() != count)
    throw std::runtime_error("prime file: header count " + std::to_string(count) + " but " +
                             std::to_string(primes.size()) + " primes listed");
  if (!std::is_sorted(primes.begin(), primes.end())) throw std::runtime_error("prime file: primes not sorted");
  try {
    return PrimeSystem(std::move(primes), std::move(meta));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("prime file: ") + e.what());
  }
}

void save_prime_system(const std::string& path, const PrimeSystem& ps) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_prime_system(out, ps);
}

PrimeSystem load_prime_system(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_prime_system(in);
}

}  // namespace beurling
