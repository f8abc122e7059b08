#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "quantinv/invertibility.hpp"
#include "quantinv/mahler.hpp"
#include "quantinv/oracle.hpp"

namespace quantinv {

using Json = nlohmann::json;

// Canonical wire forms: rationals as "p/q" strings, polynomials as ascending
// integer coefficient arrays, intervals as {lo, hi, lo_closed, hi_closed}.

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const BigInt& z);
BigInt bigint_from_json(const Json& j);

Json to_json(const IntPolynomial& p);
IntPolynomial int_polynomial_from_json(const Json& j);

Json to_json(const Interval& iv);
Interval interval_from_json(const Json& j);

Json to_json(const ExactReal& a);
ExactReal exact_real_from_json(const Json& j);

Json to_json(const QuantizedSystem& sys);
QuantizedSystem quantized_system_from_json(const Json& j);
/// Reads and validates a system description file.
QuantizedSystem load_system_file(const std::string& path);

Json to_json(const NormalizedSystem& sys);
NormalizedSystem normalized_system_from_json(const Json& j);

Json to_json(const MahlerResult& m);
MahlerResult mahler_result_from_json(const Json& j);

Json to_json(const UldiVerdict& v);
UldiVerdict uldi_verdict_from_json(const Json& j);

Json to_json(const EpsilonBounds& e);
EpsilonBounds epsilon_bounds_from_json(const Json& j);

Json to_json(const OrbitCertificate& c);
OrbitCertificate orbit_certificate_from_json(const Json& j);

Json to_json(const CounterexampleWitness& w);
CounterexampleWitness counterexample_from_json(const Json& j);

Json to_json(const UliVerdict& v);
UliVerdict uli_verdict_from_json(const Json& j);

Json to_json(const BruteforceResult& r);
BruteforceResult bruteforce_result_from_json(const Json& j);

Json to_json(const ClassifyResult& r);
Json to_json(const DensityProbe& p);

/// Everything one analysis run produces. Serialization round-trips
/// losslessly; timings are opt-in so that default reports are byte-identical
/// across runs.
struct AnalysisReport {
    NormalizedSystem system;
    UldiVerdict uldi;
    EpsilonBounds epsilon;
    UliVerdict uli;
    std::optional<BruteforceResult> oracle_crosscheck;
    std::vector<std::pair<std::string, double>> timings;
    bool include_timings = false;
};

Json to_json(const AnalysisReport& r);
AnalysisReport analysis_report_from_json(const Json& j);

struct RunAnalysisOptions {
    AnalyzeOptions analyze;
    bool crosscheck = false;
    int crosscheck_depth = 6;
    bool timings = false;
};

AnalysisReport run_analysis(const QuantizedSystem& sys, const RunAnalysisOptions& opts = {});

/// Exit-code contract: 0 decided, 2 undecided gap, 3 unsupported contractive.
int exit_code_for(UliVerdict::Status status);

/// Deterministic two-space-indented dump with a trailing newline.
std::string dump_report(const Json& j);

}  // namespace quantinv
