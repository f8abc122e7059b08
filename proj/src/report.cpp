#include "quantinv/report.hpp"

#include <chrono>
#include <fstream>

#include "quantinv/errors.hpp"

namespace quantinv {

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw ParseError("expected rational string, got " + j.dump());
}

Json to_json(const BigInt& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

BigInt bigint_from_json(const Json& j) {
    if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw ParseError("expected integer, got " + j.dump());
}

Json to_json(const IntPolynomial& p) {
    Json arr = Json::array();
    for (const auto& c : p.coefficients()) arr.push_back(to_json(c));
    return arr;
}

IntPolynomial int_polynomial_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected coefficient array");
    std::vector<BigInt> coeffs;
    coeffs.reserve(j.size());
    for (const auto& c : j) coeffs.push_back(bigint_from_json(c));
    return IntPolynomial(std::move(coeffs));
}

Json to_json(const Interval& iv) {
    if (iv.is_empty()) return Json{{"empty", true}};
    return Json{{"lo", to_json(iv.lo())},
                {"hi", to_json(iv.hi())},
                {"lo_closed", iv.lo_closed()},
                {"hi_closed", iv.hi_closed()}};
}

Interval interval_from_json(const Json& j) {
    if (j.contains("empty") && j.at("empty").get<bool>()) return Interval::empty();
    return Interval(rational_from_json(j.at("lo")), rational_from_json(j.at("hi")),
                    j.at("lo_closed").get<bool>(), j.at("hi_closed").get<bool>());
}

Json to_json(const ExactReal& a) {
    if (is_rational(a)) return Json{{"kind", "rational"}, {"value", to_json(as_rational(a))}};
    const auto& alg = std::get<AlgebraicNumber>(a);
    return Json{{"kind", "algebraic"},
                {"min_poly", to_json(alg.min_poly())},
                {"isolating", Json::array({to_json(alg.isolating_interval().lo()),
                                           to_json(alg.isolating_interval().hi())})}};
}

ExactReal exact_real_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rational") return rational_from_json(j.at("value"));
    if (kind == "algebraic") {
        IntPolynomial p = int_polynomial_from_json(j.at("min_poly"));
        const auto& iso = j.at("isolating");
        if (!iso.is_array() || iso.size() != 2)
            throw ParseError("isolating interval wants [lo, hi]");
        Interval hint = Interval::closed(rational_from_json(iso[0]), rational_from_json(iso[1]));
        return make_algebraic(p, hint);
    }
    throw ParseError("unknown dynamics kind: " + kind);
}

Json to_json(const QuantizedSystem& sys) {
    Json inputs = Json::array();
    for (const auto& u : sys.inputs) inputs.push_back(to_json(u));
    return Json{{"a", to_json(sys.a)},
                {"b", to_json(sys.b)},
                {"c", to_json(sys.c)},
                {"delta", to_json(sys.delta)},
                {"inputs", inputs}};
}

QuantizedSystem quantized_system_from_json(const Json& j) {
    std::vector<Rational> inputs;
    for (const auto& u : j.at("inputs")) inputs.push_back(rational_from_json(u));
    Rational b = j.contains("b") ? rational_from_json(j.at("b")) : Rational(1);
    Rational c = j.contains("c") ? rational_from_json(j.at("c")) : Rational(1);
    Rational delta = j.contains("delta") ? rational_from_json(j.at("delta")) : Rational(1);
    return make_quantized_system(exact_real_from_json(j.at("a")), b, c, delta, std::move(inputs));
}

QuantizedSystem load_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open system file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("system file is not valid JSON: ") + e.what());
    }
    return quantized_system_from_json(j);
}

Json to_json(const NormalizedSystem& sys) {
    Json inputs = Json::array();
    for (const auto& u : sys.inputs) inputs.push_back(to_json(u));
    return Json{{"a", to_json(sys.a)},
                {"inputs", inputs},
                {"state_scale", to_json(sys.provenance.state_scale)},
                {"input_scale", to_json(sys.provenance.input_scale)}};
}

NormalizedSystem normalized_system_from_json(const Json& j) {
    NormalizedSystem sys{exact_real_from_json(j.at("a")), {}, {}};
    for (const auto& u : j.at("inputs")) sys.inputs.push_back(rational_from_json(u));
    sys.provenance.state_scale = rational_from_json(j.at("state_scale"));
    sys.provenance.input_scale = rational_from_json(j.at("input_scale"));
    return sys;
}

Json to_json(const MahlerResult& m) {
    return Json{{"lower", to_json(m.lower)}, {"upper", to_json(m.upper)},
                {"iterations", m.iterations}};
}

MahlerResult mahler_result_from_json(const Json& j) {
    return MahlerResult{rational_from_json(j.at("lower")), rational_from_json(j.at("upper")),
                        j.at("iterations").get<int>()};
}

namespace {

Json to_json(const TwoCycleWitness& w) {
    Json j{{"v", to_json(w.v)}, {"period", w.period}, {"exact", w.exact}};
    if (w.exact) {
        j["z1"] = to_json(w.z1);
        j["z2"] = to_json(w.z2);
    } else {
        j["z1_enclosure"] = to_json(w.z1_enclosure);
        j["z2_enclosure"] = to_json(w.z2_enclosure);
    }
    return j;
}

TwoCycleWitness two_cycle_from_json(const Json& j) {
    TwoCycleWitness w;
    w.v = rational_from_json(j.at("v"));
    w.period = j.at("period").get<int>();
    w.exact = j.at("exact").get<bool>();
    if (w.exact) {
        w.z1 = rational_from_json(j.at("z1"));
        w.z2 = rational_from_json(j.at("z2"));
    } else {
        w.z1_enclosure = interval_from_json(j.at("z1_enclosure"));
        w.z2_enclosure = interval_from_json(j.at("z2_enclosure"));
    }
    return w;
}

}  // namespace

Json to_json(const UldiVerdict& v) {
    Json j{{"status", v.status == UldiVerdict::Status::UldiOneStep ? "ULDI_ONE_STEP" : "NOT_ULDI"},
           {"vacuous", v.vacuous},
           {"min_nonzero_abs_v", to_json(v.min_nonzero_abs_v)}};
    if (v.witness) j["witness"] = to_json(*v.witness);
    return j;
}

UldiVerdict uldi_verdict_from_json(const Json& j) {
    UldiVerdict v;
    v.status = j.at("status").get<std::string>() == "ULDI_ONE_STEP"
                   ? UldiVerdict::Status::UldiOneStep
                   : UldiVerdict::Status::NotUldi;
    v.vacuous = j.at("vacuous").get<bool>();
    v.min_nonzero_abs_v = rational_from_json(j.at("min_nonzero_abs_v"));
    if (j.contains("witness")) v.witness = two_cycle_from_json(j.at("witness"));
    return v;
}

Json to_json(const EpsilonBounds& e) {
    Json j;
    if (e.rational_bound) j["rational_bound"] = to_json(*e.rational_bound);
    if (e.mahler_half_bound) j["mahler_half_bound"] = to_json(*e.mahler_half_bound);
    if (e.mahler_double_bound) j["mahler_double_bound"] = to_json(*e.mahler_double_bound);
    if (e.coeff_bound) j["coeff_bound"] = to_json(*e.coeff_bound);
    j["best"] = to_json(e.best);
    return j;
}

EpsilonBounds epsilon_bounds_from_json(const Json& j) {
    EpsilonBounds e;
    if (j.contains("rational_bound")) e.rational_bound = rational_from_json(j.at("rational_bound"));
    if (j.contains("mahler_half_bound"))
        e.mahler_half_bound = interval_from_json(j.at("mahler_half_bound"));
    if (j.contains("mahler_double_bound"))
        e.mahler_double_bound = interval_from_json(j.at("mahler_double_bound"));
    if (j.contains("coeff_bound")) e.coeff_bound = rational_from_json(j.at("coeff_bound"));
    e.best = rational_from_json(j.at("best"));
    return e;
}

namespace {

std::string orbit_kind_name(OrbitCertificate::Kind k) {
    switch (k) {
        case OrbitCertificate::Kind::EmptyCertified: return "EMPTY_CERTIFIED";
        case OrbitCertificate::Kind::PeriodicWitness: return "PERIODIC_WITNESS";
        default: return "UNKNOWN";
    }
}

OrbitCertificate::Kind orbit_kind_from(const std::string& s) {
    if (s == "EMPTY_CERTIFIED") return OrbitCertificate::Kind::EmptyCertified;
    if (s == "PERIODIC_WITNESS") return OrbitCertificate::Kind::PeriodicWitness;
    return OrbitCertificate::Kind::Unknown;
}

}  // namespace

Json to_json(const OrbitCertificate& c) {
    Json j{{"kind", orbit_kind_name(c.kind)},
           {"target", to_json(c.target)},
           {"fixpoint_iterations", c.fixpoint_iterations}};
    if (c.kind == OrbitCertificate::Kind::PeriodicWitness) {
        Json word = Json::array();
        for (const auto& v : c.cycle_word) word.push_back(to_json(v));
        j["cycle_word"] = word;
        j["period"] = c.period;
        j["exact"] = c.exact;
        if (c.exact) j["cycle_start"] = to_json(c.cycle_start);
        else j["cycle_start_enclosure"] = to_json(c.cycle_start_enclosure);
    }
    return j;
}

OrbitCertificate orbit_certificate_from_json(const Json& j) {
    OrbitCertificate c;
    c.kind = orbit_kind_from(j.at("kind").get<std::string>());
    c.target = interval_from_json(j.at("target"));
    c.fixpoint_iterations = j.at("fixpoint_iterations").get<int>();
    if (c.kind == OrbitCertificate::Kind::PeriodicWitness) {
        for (const auto& v : j.at("cycle_word")) c.cycle_word.push_back(rational_from_json(v));
        c.period = j.at("period").get<int>();
        c.exact = j.at("exact").get<bool>();
        if (c.exact) c.cycle_start = rational_from_json(j.at("cycle_start"));
        else c.cycle_start_enclosure = interval_from_json(j.at("cycle_start_enclosure"));
    }
    return c;
}

Json to_json(const CounterexampleWitness& w) {
    Json inputs = Json::array(), inputs_prime = Json::array(), outputs = Json::array(),
         div = Json::array();
    for (const auto& u : w.inputs) inputs.push_back(to_json(u));
    for (const auto& u : w.inputs_prime) inputs_prime.push_back(to_json(u));
    for (const auto& y : w.outputs) outputs.push_back(to_json(y));
    for (size_t s : w.divergence_steps) div.push_back(s);
    return Json{{"x0", to_json(w.x0)},
                {"x0_prime", to_json(w.x0_prime)},
                {"inputs", inputs},
                {"inputs_prime", inputs_prime},
                {"divergence_steps", div},
                {"outputs", outputs}};
}

CounterexampleWitness counterexample_from_json(const Json& j) {
    CounterexampleWitness w;
    w.x0 = rational_from_json(j.at("x0"));
    w.x0_prime = rational_from_json(j.at("x0_prime"));
    for (const auto& u : j.at("inputs")) w.inputs.push_back(rational_from_json(u));
    for (const auto& u : j.at("inputs_prime")) w.inputs_prime.push_back(rational_from_json(u));
    for (const auto& s : j.at("divergence_steps")) w.divergence_steps.push_back(s.get<size_t>());
    for (const auto& y : j.at("outputs")) w.outputs.push_back(bigint_from_json(y));
    return w;
}

namespace {

std::string uli_status_name(UliVerdict::Status s) {
    switch (s) {
        case UliVerdict::Status::UliOneStep: return "ULI_ONE_STEP";
        case UliVerdict::Status::NotUli: return "NOT_ULI";
        case UliVerdict::Status::UndecidedGap: return "UNDECIDED_GAP";
        default: return "UNSUPPORTED_CONTRACTIVE";
    }
}

UliVerdict::Status uli_status_from(const std::string& s) {
    if (s == "ULI_ONE_STEP") return UliVerdict::Status::UliOneStep;
    if (s == "NOT_ULI") return UliVerdict::Status::NotUli;
    if (s == "UNDECIDED_GAP") return UliVerdict::Status::UndecidedGap;
    return UliVerdict::Status::UnsupportedContractive;
}

Json to_json(const GapReport& g) {
    return Json{{"eps_bar", to_json(g.eps_bar)},
                {"min_nonzero_abs_v", to_json(g.min_nonzero_abs_v)},
                {"lower_holds", g.lower_holds},
                {"upper_holds", g.upper_holds},
                {"diagnostics", g.diagnostics}};
}

GapReport gap_from_json(const Json& j) {
    GapReport g;
    g.eps_bar = rational_from_json(j.at("eps_bar"));
    g.min_nonzero_abs_v = rational_from_json(j.at("min_nonzero_abs_v"));
    g.lower_holds = j.at("lower_holds").get<bool>();
    g.upper_holds = j.at("upper_holds").get<bool>();
    g.diagnostics = j.at("diagnostics").get<std::string>();
    return g;
}

}  // namespace

Json to_json(const UliVerdict& v) {
    Json j{{"status", uli_status_name(v.status)}};
    if (v.uldi) j["uldi"] = to_json(*v.uldi);
    if (v.orbit) j["orbit"] = to_json(*v.orbit);
    if (v.counterexample) j["counterexample"] = to_json(*v.counterexample);
    if (v.gap) j["gap"] = to_json(*v.gap);
    if (v.k) j["k"] = *v.k;
    if (v.l) j["l"] = *v.l;
    return j;
}

UliVerdict uli_verdict_from_json(const Json& j) {
    UliVerdict v;
    v.status = uli_status_from(j.at("status").get<std::string>());
    if (j.contains("uldi")) v.uldi = uldi_verdict_from_json(j.at("uldi"));
    if (j.contains("orbit")) v.orbit = orbit_certificate_from_json(j.at("orbit"));
    if (j.contains("counterexample"))
        v.counterexample = counterexample_from_json(j.at("counterexample"));
    if (j.contains("gap")) v.gap = gap_from_json(j.at("gap"));
    if (j.contains("k")) v.k = j.at("k").get<int>();
    if (j.contains("l")) v.l = j.at("l").get<int>();
    return v;
}

Json to_json(const BruteforceResult& r) {
    Json j{{"witness_found", r.witness_found},
           {"depth_requested", r.depth_requested},
           {"states_explored", r.states_explored},
           {"window_lo", to_json(r.window_lo)},
           {"window_hi", to_json(r.window_hi)}};
    if (r.witness_found) {
        Json inputs = Json::array(), inputs_prime = Json::array(), outputs = Json::array(),
             div = Json::array(), boxes = Json::array();
        for (const auto& u : r.inputs) inputs.push_back(to_json(u));
        for (const auto& u : r.inputs_prime) inputs_prime.push_back(to_json(u));
        for (const auto& y : r.outputs) outputs.push_back(to_json(y));
        for (size_t s : r.divergence_steps) div.push_back(s);
        for (const auto& b : r.boxes)
            boxes.push_back(Json{{"box_x", to_json(b.box_x)},
                                 {"box_x_prime", to_json(b.box_x_prime)},
                                 {"cell", to_json(b.cell)}});
        j["x0"] = to_json(r.x0);
        j["x0_prime"] = to_json(r.x0_prime);
        j["inputs"] = inputs;
        j["inputs_prime"] = inputs_prime;
        j["outputs"] = outputs;
        j["divergence_steps"] = div;
        j["boxes"] = boxes;
    } else {
        j["exhausted_depth"] = r.exhausted_depth;
        j["certified"] = r.certified;
    }
    return j;
}

BruteforceResult bruteforce_result_from_json(const Json& j) {
    BruteforceResult r;
    r.witness_found = j.at("witness_found").get<bool>();
    r.depth_requested = j.at("depth_requested").get<int>();
    r.states_explored = j.at("states_explored").get<size_t>();
    r.window_lo = bigint_from_json(j.at("window_lo"));
    r.window_hi = bigint_from_json(j.at("window_hi"));
    if (r.witness_found) {
        r.x0 = rational_from_json(j.at("x0"));
        r.x0_prime = rational_from_json(j.at("x0_prime"));
        for (const auto& u : j.at("inputs")) r.inputs.push_back(rational_from_json(u));
        for (const auto& u : j.at("inputs_prime"))
            r.inputs_prime.push_back(rational_from_json(u));
        for (const auto& y : j.at("outputs")) r.outputs.push_back(bigint_from_json(y));
        for (const auto& s : j.at("divergence_steps"))
            r.divergence_steps.push_back(s.get<size_t>());
        for (const auto& b : j.at("boxes"))
            r.boxes.push_back(PairBox{interval_from_json(b.at("box_x")),
                                      interval_from_json(b.at("box_x_prime")),
                                      bigint_from_json(b.at("cell"))});
    } else {
        r.exhausted_depth = j.at("exhausted_depth").get<int>();
        r.certified = j.at("certified").get<bool>();
    }
    return r;
}

Json to_json(const ClassifyResult& r) {
    Json hits = Json::array();
    for (const auto& h : r.hits) {
        hits.push_back(Json{{"q", h.q},
                            {"p", to_json(h.p)},
                            {"a", to_json(h.a)},
                            {"lhs", to_json(h.lhs)},
                            {"rhs", to_json(h.rhs)}});
    }
    Json j{{"hits", hits}};
    if (!r.lhs_values.empty()) {
        Json vals = Json::array();
        for (const auto& v : r.lhs_values) vals.push_back(to_json(v));
        j["lhs_values"] = vals;
    }
    return j;
}

Json to_json(const DensityProbe& p) {
    Json zeta = Json::array();
    for (double z : p.zeta) zeta.push_back(z);
    return Json{{"a", p.a},       {"estimate", p.estimate}, {"argmin_t", p.argmin_t},
                {"period", p.period}, {"grid", p.grid},     {"J", p.J},
                {"zeta", zeta}};
}

Json to_json(const AnalysisReport& r) {
    Json j{{"system", to_json(r.system)},
           {"uldi", to_json(r.uldi)},
           {"epsilon", to_json(r.epsilon)},
           {"uli", to_json(r.uli)}};
    if (r.oracle_crosscheck) j["oracle_crosscheck"] = to_json(*r.oracle_crosscheck);
    if (r.include_timings) {
        Json t = Json::object();
        for (const auto& [name, secs] : r.timings) t[name] = secs;
        j["timings"] = t;
    }
    return j;
}

AnalysisReport analysis_report_from_json(const Json& j) {
    AnalysisReport r;
    r.system = normalized_system_from_json(j.at("system"));
    r.uldi = uldi_verdict_from_json(j.at("uldi"));
    r.epsilon = epsilon_bounds_from_json(j.at("epsilon"));
    r.uli = uli_verdict_from_json(j.at("uli"));
    if (j.contains("oracle_crosscheck"))
        r.oracle_crosscheck = bruteforce_result_from_json(j.at("oracle_crosscheck"));
    if (j.contains("timings")) {
        r.include_timings = true;
        for (const auto& [name, secs] : j.at("timings").items())
            r.timings.emplace_back(name, secs.get<double>());
    }
    return r;
}

AnalysisReport run_analysis(const QuantizedSystem& sys, const RunAnalysisOptions& opts) {
    using Clock = std::chrono::steady_clock;
    AnalysisReport rep;
    rep.include_timings = opts.timings;

    auto timed = [&](const char* name, auto&& fn) {
        const auto t0 = Clock::now();
        fn();
        const std::chrono::duration<double> dt = Clock::now() - t0;
        rep.timings.emplace_back(name, dt.count());
    };

    timed("normalize", [&] { rep.system = normalize(sys); });
    timed("uldi", [&] {
        rep.uldi = uldi_check(rep.system.a, difference_alphabet(rep.system.inputs));
    });
    timed("epsilon", [&] { rep.epsilon = epsilon_bounds(rep.system.a, opts.analyze.mahler_tol); });
    timed("analyze", [&] { rep.uli = analyze(sys, opts.analyze); });
    if (opts.crosscheck && is_rational(rep.system.a)) {
        timed("oracle", [&] {
            rep.oracle_crosscheck = bruteforce_indistinguishable(rep.system, opts.crosscheck_depth);
        });
    }
    return rep;
}

int exit_code_for(UliVerdict::Status status) {
    switch (status) {
        case UliVerdict::Status::UndecidedGap: return 2;
        case UliVerdict::Status::UnsupportedContractive: return 3;
        default: return 0;
    }
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace quantinv
