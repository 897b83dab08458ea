#pragma once

// JSON summaries and CSV rows for the analytics and verification reports.

#include <iosfwd>
#include <span>

#include "beurling/concentration.hpp"
#include "beurling/numsys.hpp"
#include "beurling/verify.hpp"
#include "json.hpp"

namespace beurling {

using Json = nlohmann::ordered_json;

/// Header "x,pi,Pi,N,M,L" and one row per x, streamed.
void write_analytics_csv(std::ostream& out, const PrimeSystem& ps, std::span<const double> xs);

Json to_json(const ZetaValue& z);
Json to_json(const ZResult& z, std::complex<double> s);
Json to_json(std::span<const DecadeMax> decades);
/// Summary only; records go to CSV.
Json to_json(const DeviationReport& report);
/// Header "x,t,deviation,envelope,ratio".
void write_deviation_csv(std::ostream& out, const DeviationReport& report);
Json to_json(const TrendSummary& trend);
Json to_json(const GapReport& report);
Json to_json(const KolmogorovReport& report);
Json to_json(const AdmissibilityReport& report);

/// Non-finite numbers become the strings "inf", "-inf", "nan".
Json number(double value);

}  // namespace beurling
