#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "quantinv/report.hpp"

namespace {

using namespace quantinv;

std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        const std::string tok = s.substr(pos, comma - pos);
        if (!tok.empty()) out.push_back(Rational::parse(tok));
        pos = comma + 1;
    }
    if (out.empty()) throw ParseError("empty rational list");
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        const std::string tok = s.substr(pos, comma - pos);
        if (!tok.empty()) out.push_back(std::stod(tok));
        pos = comma + 1;
    }
    if (out.empty()) throw ParseError("empty list");
    return out;
}

/// "(lo,hi)", "[lo,hi]", "(lo,hi]", "[lo,hi)".
Interval parse_interval(const std::string& s) {
    if (s.size() < 5) throw ParseError("malformed interval: " + s);
    const char open = s.front(), close = s.back();
    if ((open != '(' && open != '[') || (close != ')' && close != ']'))
        throw ParseError("interval needs bracket delimiters: " + s);
    const std::string body = s.substr(1, s.size() - 2);
    const size_t comma = body.find(',');
    if (comma == std::string::npos) throw ParseError("interval needs two endpoints: " + s);
    return Interval(Rational::parse(body.substr(0, comma)), Rational::parse(body.substr(comma + 1)),
                    open == '[', close == ']');
}

struct DynamicsArgs {
    std::string rational;
    std::string min_poly;
    std::string isolating;

    void attach(CLI::App* cmd, bool positional) {
        if (positional) cmd->add_option("a", rational, "dynamics coefficient as p/q");
        else cmd->add_option("--a", rational, "dynamics coefficient as p/q");
        cmd->add_option("--min-poly", min_poly,
                        "ascending integer coefficients of the minimal polynomial, e.g. -1,-1,1");
        cmd->add_option("--isolating", isolating, "isolating interval lo,hi for the root");
    }

    ExactReal resolve() const {
        if (!min_poly.empty()) {
            if (isolating.empty())
                throw ParseError("--min-poly needs --isolating lo,hi");
            auto coeffs = parse_rational_list(min_poly);
            std::vector<BigInt> ints;
            ints.reserve(coeffs.size());
            for (const auto& c : coeffs) {
                if (!c.is_integer()) throw ParseError("minimal polynomial wants integers");
                ints.push_back(c.numerator());
            }
            auto iso = parse_rational_list(isolating);
            if (iso.size() != 2) throw ParseError("--isolating wants lo,hi");
            return make_algebraic(IntPolynomial(std::move(ints)),
                                  Interval::closed(iso[0], iso[1]));
        }
        if (rational.empty()) throw ParseError("missing dynamics coefficient");
        return Rational::parse(rational);
    }
};

void emit(const Json& j, const std::string& out_path) {
    const std::string text = dump_report(j);
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

/// Rational when the literal parses as p/q, floating otherwise.
ClassifyResult classify_from_string(const std::string& tau, long qmax, bool* was_rational) {
    try {
        const Rational t = Rational::parse(tau);
        *was_rational = true;
        return classify_exceptional(t, qmax);
    } catch (const ParseError&) {
        *was_rational = false;
        return classify_exceptional(std::stod(tau), qmax);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantinv: exact invertibility analysis of 1-D quantized linear systems"};
    app.require_subcommand(1);

    std::string out_path;
    app.add_option("--out", out_path, "write the report to this path instead of stdout");

    // analyze
    auto* cmd_analyze = app.add_subcommand("analyze", "full verdict for a system file");
    std::string analyze_file;
    cmd_analyze->add_option("system-file", analyze_file, "JSON system description")->required();
    bool crosscheck = false, timings = false;
    int crosscheck_depth = 6;
    RunAnalysisOptions run_opts;
    cmd_analyze->add_flag("--crosscheck", crosscheck, "run the brute-force oracle afterwards");
    cmd_analyze->add_option("--depth", crosscheck_depth, "oracle depth for --crosscheck");
    cmd_analyze->add_option("--max-period", run_opts.analyze.orbit.max_period,
                            "orbit-search period cap");
    cmd_analyze->add_flag("--timings", timings, "include per-stage durations in the report");
    std::string analyze_tol;
    cmd_analyze->add_option("--tol", analyze_tol, "Mahler tolerance as p/q");

    // epsilon
    auto* cmd_eps = app.add_subcommand("epsilon", "margin upper bounds for a");
    DynamicsArgs eps_dyn;
    eps_dyn.attach(cmd_eps, true);
    std::string eps_tol;
    cmd_eps->add_option("--tol", eps_tol, "Mahler tolerance as p/q");

    // mahler
    auto* cmd_mahler = app.add_subcommand("mahler", "certified Mahler measure enclosure");
    std::string mahler_coeffs, mahler_tol = "1/1000000000", mahler_variant = "plain";
    cmd_mahler->add_option("--coeffs", mahler_coeffs, "ascending integer coefficients")->required();
    cmd_mahler->add_option("--tol", mahler_tol, "relative enclosure width, as p/q");
    cmd_mahler->add_option("--variant", mahler_variant, "plain | half | double")
        ->check(CLI::IsMember({"plain", "half", "double"}));

    // orbit
    auto* cmd_orbit = app.add_subcommand("orbit", "invariant-orbit certificate search");
    DynamicsArgs orbit_dyn;
    std::vector<std::string> orbit_args;
    cmd_orbit->add_option("args", orbit_args,
                          "a V [interval], e.g. 10/9 -1/2,0,1/2 \"(-9/10,9/10)\"; with "
                          "--min-poly, just V [interval]");
    cmd_orbit->add_option("--min-poly", orbit_dyn.min_poly,
                          "ascending integer coefficients of the minimal polynomial");
    cmd_orbit->add_option("--isolating", orbit_dyn.isolating, "isolating interval lo,hi");
    int orbit_max_period = 6, orbit_iters = 32;
    cmd_orbit->add_option("--max-period", orbit_max_period, "cycle length cap");
    cmd_orbit->add_option("--fixpoint-iters", orbit_iters, "backward fixpoint iteration cap");

    // counterexample
    auto* cmd_cx = app.add_subcommand("counterexample", "constructive indistinguishable pair");
    std::string cx_file;
    int cx_length = 10;
    cmd_cx->add_option("system-file", cx_file, "JSON system description")->required();
    cmd_cx->add_option("--length", cx_length, "number of steps");

    // invert
    auto* cmd_invert = app.add_subcommand("invert", "reconstruct inputs from outputs");
    std::string invert_file, invert_outputs;
    cmd_invert->add_option("system-file", invert_file, "JSON system description")->required();
    cmd_invert->add_option("--outputs", invert_outputs, "comma-separated output integers")
        ->required();

    // classify
    auto* cmd_classify = app.add_subcommand("classify", "exceptional-denominator scan");
    std::string classify_tau;
    long classify_qmax = 100;
    cmd_classify->add_option("--tau", classify_tau, "threshold, rational p/q or decimal")
        ->required();
    cmd_classify->add_option("--qmax", classify_qmax, "largest denominator to test");

    // probe
    auto* cmd_probe = app.add_subcommand("probe", "Kronecker density probe");
    DynamicsArgs probe_dyn;
    probe_dyn.attach(cmd_probe, false);
    std::string probe_zeta;
    int probe_J = 2;
    long probe_grid = 10000;
    cmd_probe->add_option("--J", probe_J, "number of offsets");
    cmd_probe->add_option("--zeta", probe_zeta, "comma-separated offsets")->required();
    cmd_probe->add_option("--grid", probe_grid, "sample count");

    // bruteforce
    auto* cmd_bf = app.add_subcommand("bruteforce", "exact indistinguishable-pair search");
    std::string bf_file;
    int bf_depth = 6;
    cmd_bf->add_option("system-file", bf_file, "JSON system description")->required();
    cmd_bf->add_option("--depth", bf_depth, "search depth");

    // repro-example
    auto* cmd_repro = app.add_subcommand("repro-example",
                                         "exceptional-denominator scan with the LHS value table");
    std::string repro_tau;
    long repro_qmax = 10;
    cmd_repro->add_option("--tau", repro_tau, "threshold, rational p/q or decimal")->required();
    cmd_repro->add_option("--qmax", repro_qmax, "largest denominator to test");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (*cmd_analyze) {
            run_opts.crosscheck = crosscheck;
            run_opts.crosscheck_depth = crosscheck_depth;
            run_opts.timings = timings;
            if (!analyze_tol.empty()) run_opts.analyze.mahler_tol = Rational::parse(analyze_tol);
            const QuantizedSystem sys = load_system_file(analyze_file);
            const AnalysisReport rep = run_analysis(sys, run_opts);
            emit(to_json(rep), out_path);
            return exit_code_for(rep.uli.status);
        }
        if (*cmd_eps) {
            const ExactReal a = eps_dyn.resolve();
            const Rational tol =
                eps_tol.empty() ? Rational(1, 1000000000) : Rational::parse(eps_tol);
            emit(to_json(epsilon_bounds(a, tol)), out_path);
            return 0;
        }
        if (*cmd_mahler) {
            auto coeffs = parse_rational_list(mahler_coeffs);
            std::vector<BigInt> ints;
            for (const auto& c : coeffs) {
                if (!c.is_integer()) throw ParseError("coefficients must be integers");
                ints.push_back(c.numerator());
            }
            const IntPolynomial p(std::move(ints));
            const Rational tol = Rational::parse(mahler_tol);
            MahlerResult m;
            if (mahler_variant == "half") m = mahler_half(p, tol);
            else if (mahler_variant == "double") m = mahler_double(p, tol);
            else m = mahler_measure(p, tol);
            emit(to_json(m), out_path);
            return 0;
        }
        if (*cmd_orbit) {
            size_t next = 0;
            if (orbit_dyn.min_poly.empty()) {
                if (orbit_args.empty()) throw ParseError("orbit needs a dynamics coefficient");
                orbit_dyn.rational = orbit_args[next++];
            }
            const ExactReal a = orbit_dyn.resolve();
            if (next >= orbit_args.size()) throw ParseError("orbit needs a difference alphabet");
            const auto V = parse_rational_list(orbit_args[next++]);
            const Interval target = next < orbit_args.size() ? parse_interval(orbit_args[next])
                                                             : Interval::open(Rational(-1), Rational(1));
            const OrbitCertificate cert =
                invariant_orbit_search(a, V, target, orbit_max_period, orbit_iters);
            emit(to_json(cert), out_path);
            return 0;
        }
        if (*cmd_cx) {
            const QuantizedSystem sys = load_system_file(cx_file);
            const NormalizedSystem norm = normalize(sys);
            const CounterexampleWitness w =
                counterexample_expansive(norm.a, norm.inputs, cx_length);
            emit(to_json(w), out_path);
            return 0;
        }
        if (*cmd_invert) {
            const QuantizedSystem sys = load_system_file(invert_file);
            const NormalizedSystem norm = normalize(sys);
            std::vector<BigInt> ys;
            for (const auto& y : parse_rational_list(invert_outputs)) {
                if (!y.is_integer()) throw ParseError("outputs must be integers");
                ys.push_back(y.numerator());
            }
            const auto inputs = invert_sequence(norm, ys);
            Json arr = Json::array();
            for (const auto& u : inputs) arr.push_back(to_json(u));
            emit(Json{{"inputs", arr}}, out_path);
            return 0;
        }
        if (*cmd_classify || *cmd_repro) {
            const std::string tau = *cmd_classify ? classify_tau : repro_tau;
            const long qmax = *cmd_classify ? classify_qmax : repro_qmax;
            bool was_rational = false;
            const ClassifyResult res = classify_from_string(tau, qmax, &was_rational);
            Json j = to_json(res);
            j["tau"] = tau;
            j["tau_interpreted_as"] = was_rational ? "rational" : "double";
            j["qmax"] = qmax;
            if (*cmd_repro) {
                Json qs = Json::array();
                for (const auto& h : res.hits) qs.push_back(h.q);
                j["q_list"] = qs;
            }
            emit(j, out_path);
            return 0;
        }
        if (*cmd_probe) {
            const ExactReal a = probe_dyn.resolve();
            const auto zeta = parse_double_list(probe_zeta);
            emit(to_json(kronecker_density_probe(a, probe_J, zeta, probe_grid)), out_path);
            return 0;
        }
        if (*cmd_bf) {
            const QuantizedSystem sys = load_system_file(bf_file);
            const NormalizedSystem norm = normalize(sys);
            emit(to_json(bruteforce_indistinguishable(norm, bf_depth)), out_path);
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 64;
}
