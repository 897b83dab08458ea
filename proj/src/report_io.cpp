#include "beurling/report_io.hpp"

#include <cmath>
#include <ostream>

namespace beurling {

Json number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

void write_analytics_csv(std::ostream& out, const PrimeSystem& ps, std::span<const double> xs) {
  CountingCache cache(ps);
  out << "x,pi,Pi,N,M,L\n";
  for (double x : xs) {
    const auto c = cache.at(x);
    out << format_g17(x) << ',' << pi_count(ps, x) << ',' << format_g17(riemann_pi(ps, x)) << ',' << c.N << ','
        << c.M << ',' << c.L << '\n';
  }
}

Json to_json(const ZetaValue& z) {
  return Json{{"s", {z.s.real(), z.s.imag()}},
              {"value", {z.value.real(), z.value.imag()}},
              {"truncation", number(z.truncation)},
              {"tail_bound", number(z.tail_bound)},
              {"certified", z.certified()}};
}

Json to_json(const ZResult& z, std::complex<double> s) {
  return Json{{"s", {s.real(), s.imag()}},
              {"value", {z.value.real(), z.value.imag()}},
              {"abs", std::abs(z.value)},
              {"truncation", number(z.truncation)},
              {"li_tail", number(z.li_tail)}};
}

Json to_json(std::span<const DecadeMax> decades) {
  Json out = Json::array();
  for (const auto& d : decades) out.push_back({{"decade_start", d.decade_start}, {"max_ratio", number(d.max_ratio)}});
  return out;
}

Json to_json(const DeviationReport& r) {
  return Json{{"max_ratio", number(r.max_ratio)},
              {"max_ratio_x", r.max_ratio_x},
              {"max_ratio_t", r.max_ratio_t},
              {"decade_max", to_json(r.decade_max)},
              {"slope", number(r.slope)},
              {"count_deviation", {{"sup", r.count.sup}, {"at", r.count.at}, {"left_limit", r.count.left_limit}}},
              {"records", r.records.size()}};
}

void write_deviation_csv(std::ostream& out, const DeviationReport& report) {
  out << "x,t,deviation,envelope,ratio\n";
  for (const auto& r : report.records) {
    out << format_g17(r.x) << ',' << format_g17(r.t) << ',' << format_g17(r.deviation) << ','
        << format_g17(r.envelope) << ',' << format_g17(r.ratio) << '\n';
  }
}

Json to_json(const TrendSummary& t) {
  Json slopes = Json::array();
  for (double s : t.per_seed_slopes) slopes.push_back(number(s));
  return Json{{"pooled", to_json(t.pooled)},
              {"pooled_slope", number(t.pooled_slope)},
              {"per_seed_slopes", slopes},
              {"max_slope", t.max_slope},
              {"pass", t.pass()}};
}

Json to_json(const GapReport& r) {
  return Json{{"decade_max", to_json(r.decade_max)},
              {"slope", number(r.slope)},
              {"max_ratio", r.max_ratio},
              {"max_ratio_x", r.max_ratio_x},
              {"worst_ceiling_excess", number(r.worst_ceiling_excess)},
              {"count_deviation", r.count_deviation},
              {"points", r.points}};
}

Json to_json(const KolmogorovReport& r) {
  return Json{{"terms", r.terms},
              {"sigma2", r.sigma2},
              {"v", r.v},
              {"regime", r.regime == TailRegime::gaussian ? "gaussian" : "linear"},
              {"bound", r.bound},
              {"trials", r.trials},
              {"hits", r.hits},
              {"empirical", r.empirical},
              {"radius", r.radius},
              {"pass", r.pass()}};
}

Json to_json(const AdmissibilityReport& r) {
  Json tail = Json::array();
  for (const auto& p : r.tail) tail.push_back({{"t", p.t}, {"h", p.h}, {"sum", p.sum}, {"ratio", number(p.ratio)}});
  return Json{{"sup_gap_ratio", number(r.sup_gap_ratio)},
              {"gap_ratio_by_decade", to_json(r.gap_ratio_by_decade)},
              {"tail", tail},
              {"tail_ratio_by_decade", to_json(r.tail_ratio_by_decade)},
              {"gap_growth", number(r.gap_growth)},
              {"tail_growth", number(r.tail_growth)},
              {"gap_flag", r.gap_flag},
              {"tail_flag", r.tail_flag},
              {"admissible", r.admissible()}};
}

}  // namespace beurling
