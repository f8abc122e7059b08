#include "quantinv/invertibility.hpp"

#include <algorithm>
#include <cmath>

#include "quantinv/errors.hpp"

namespace quantinv {

namespace {

/// Canonical difference-input order: ascending |v|, positive before negative.
std::vector<Rational> canonical_v_order(const std::vector<Rational>& V) {
    std::vector<Rational> vs(V);
    std::sort(vs.begin(), vs.end(), [](const Rational& x, const Rational& y) {
        const Rational ax = x.abs(), ay = y.abs();
        if (ax != ay) return ax < ay;
        return x.sign() > y.sign();
    });
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

std::optional<Rational> min_nonzero_abs(const std::vector<Rational>& V) {
    std::optional<Rational> best;
    for (const auto& v : V) {
        if (v.is_zero()) continue;
        Rational a = v.abs();
        if (!best || a < *best) best = a;
    }
    return best;
}

/// [1/h, 1/l] for a sign-definite bracket [l, h].
Interval reciprocal_bracket(const Interval& box) {
    if (box.lo().sign() == 0 || box.hi().sign() == 0 || box.lo().sign() != box.hi().sign())
        throw std::logic_error("reciprocal of a bracket straddling zero");
    return Interval::closed(box.hi().reciprocal(), box.lo().reciprocal());
}

Interval add_boxes(const Interval& x, const Interval& y) {
    return Interval::closed(x.lo() + y.lo(), x.hi() + y.hi());
}

Interval mul_box_rational(const Interval& x, const Rational& r) {
    if (r.sign() >= 0) return Interval::closed(x.lo() * r, x.hi() * r);
    return Interval::closed(x.hi() * r, x.lo() * r);
}

Interval div_boxes(const Interval& num, const Interval& den) {
    const Interval inv = reciprocal_bracket(den);
    const Rational c[4] = {num.lo() * inv.lo(), num.lo() * inv.hi(), num.hi() * inv.lo(),
                           num.hi() * inv.hi()};
    Rational mn = c[0], mx = c[0];
    for (int i = 1; i < 4; ++i) {
        if (c[i] < mn) mn = c[i];
        if (c[i] > mx) mx = c[i];
    }
    return Interval::closed(mn, mx);
}

}  // namespace

UldiVerdict uldi_check(const ExactReal& a, const std::vector<Rational>& V) {
    UldiVerdict verdict;
    const auto minv = min_nonzero_abs(V);
    if (!minv) {
        verdict.status = UldiVerdict::Status::UldiOneStep;
        verdict.vacuous = true;
        return verdict;
    }
    verdict.min_nonzero_abs_v = *minv;
    // ULDI in one step iff min|v| >= |a| + 1, i.e. |a| <= min|v| - 1.
    if (abs_cmp(a, *minv - Rational(1)) <= 0) {
        verdict.status = UldiVerdict::Status::UldiOneStep;
        return verdict;
    }
    verdict.status = UldiVerdict::Status::NotUldi;

    TwoCycleWitness w;
    w.v = *minv;  // minimal violating v, positive representative
    if (sign_of(a) > 0) {
        w.period = 2;
        if (is_rational(a)) {
            const Rational& ar = as_rational(a);
            w.exact = true;
            w.z1 = -w.v / (ar + Rational(1));
            w.z2 = w.v / (ar + Rational(1));
        } else {
            w.exact = false;
            const Interval abox = enclosure_of(a, precision_budget_bits());
            const Interval denom = add_boxes(abox, Interval::point(Rational(1)));
            w.z2_enclosure = div_boxes(Interval::point(w.v), denom);
            w.z1_enclosure = mul_box_rational(w.z2_enclosure, Rational(-1));
        }
    } else {
        // Negative (or zero) dynamics: the fixed point v/(1-a) lies strictly
        // inside (-1,1) exactly when |v| < |a| + 1.
        w.period = 1;
        if (is_rational(a)) {
            const Rational& ar = as_rational(a);
            w.exact = true;
            w.z1 = w.z2 = w.v / (Rational(1) - ar);
        } else {
            w.exact = false;
            const Interval abox = enclosure_of(a, precision_budget_bits());
            const Interval denom =
                add_boxes(Interval::point(Rational(1)), mul_box_rational(abox, Rational(-1)));
            w.z1_enclosure = w.z2_enclosure = div_boxes(Interval::point(w.v), denom);
        }
    }
    verdict.witness = std::move(w);
    return verdict;
}

EpsilonBounds epsilon_bounds(const ExactReal& a, const Rational& mahler_tol) {
    EpsilonBounds eb;
    const IntPolynomial P = min_poly_of(a);
    const int K = P.degree();

    const MahlerResult mh = mahler_half(P, mahler_tol);
    const MahlerResult md = mahler_double(P, mahler_tol);
    eb.mahler_half_bound = Interval::closed(mh.upper.reciprocal(), mh.lower.reciprocal());
    eb.mahler_double_bound = Interval::closed(md.upper.reciprocal(), md.lower.reciprocal());

    std::optional<Rational> coeff;
    for (int i = 0; i <= K; ++i) {
        const BigInt alpha = P.coeff(i);
        if (alpha == 0) continue;
        const BigInt two_pow = BigInt(1) << static_cast<unsigned>(std::min(i, K - i));
        const Rational cand =
            Rational(binomial(static_cast<unsigned>(K), static_cast<unsigned>(i)) * two_pow,
                     abs(alpha));
        if (!coeff || cand < *coeff) coeff = cand;
    }
    eb.coeff_bound = coeff;

    if (is_rational(a)) {
        const Rational& v = as_rational(a);
        const BigInt p = v.numerator();
        const BigInt q = v.denominator();
        Rational bound(BigInt(1), q);
        if (p != 0) bound = min(bound, Rational(BigInt(1), abs(p)));
        eb.rational_bound = bound;
        eb.best = bound;  // exact; the Mahler routes only corroborate it
        return eb;
    }

    Rational best = eb.mahler_half_bound->hi();
    best = min(best, eb.mahler_double_bound->hi());
    if (coeff) best = min(best, *coeff);
    eb.best = best;
    return eb;
}

namespace {

struct WordEnumerator {
    const std::vector<Rational>& symbols;
    int length;
    std::vector<size_t> idx;
    bool first = true;

    explicit WordEnumerator(const std::vector<Rational>& s, int len)
        : symbols(s), length(len), idx(static_cast<size_t>(len), 0) {}

    bool next() {
        if (first) {
            first = false;
            return true;
        }
        for (size_t i = idx.size(); i-- > 0;) {
            if (++idx[i] < symbols.size()) return true;
            idx[i] = 0;
        }
        return false;
    }
    bool all_zero() const {
        for (size_t i : idx)
            if (!symbols[i].is_zero()) return false;
        return true;
    }
    std::vector<Rational> word() const {
        std::vector<Rational> w;
        w.reserve(idx.size());
        for (size_t i : idx) w.push_back(symbols[i]);
        return w;
    }
};

/// Exact periodic-orbit test for rational dynamics.
std::optional<Rational> periodic_start_exact(const Rational& a, const std::vector<Rational>& word,
                                             const Interval& target) {
    const int L = static_cast<int>(word.size());
    std::vector<Rational> pow(static_cast<size_t>(L) + 1, Rational(1));
    for (int j = 1; j <= L; ++j) pow[static_cast<size_t>(j)] = pow[static_cast<size_t>(j - 1)] * a;
    Rational num(0);
    for (int i = 0; i < L; ++i) num += pow[static_cast<size_t>(L - 1 - i)] * word[static_cast<size_t>(i)];
    const Rational den = Rational(1) - pow[static_cast<size_t>(L)];
    const Rational z0 = num / den;
    Rational z = z0;
    for (int i = 0; i < L; ++i) {
        if (!target.contains(z)) return std::nullopt;
        z = a * z + word[static_cast<size_t>(i)];
    }
    if (z != z0) throw std::logic_error("periodic orbit closure failed");
    return z0;
}

/// Certified periodic-orbit test for algebraic dynamics; nullopt when the
/// orbit leaves the target or cannot be certified within the bit budget.
std::optional<Interval> periodic_start_enclosed(const ExactReal& a,
                                                const std::vector<Rational>& word,
                                                const Interval& target) {
    const int L = static_cast<int>(word.size());
    const unsigned budget = precision_budget_bits();
    for (unsigned bits = kDefaultEnclosureBits;; bits *= 2) {
        if (bits > budget) bits = budget;
        const Interval abox = enclosure_of(a, bits);
        std::vector<Interval> pow(static_cast<size_t>(L) + 1, Interval::point(Rational(1)));
        for (int j = 1; j <= L; ++j)
            pow[static_cast<size_t>(j)] = pow[static_cast<size_t>(j - 1)].affine_enclosure(abox, Rational(0));
        Interval num = Interval::point(Rational(0));
        for (int i = 0; i < L; ++i)
            num = add_boxes(num, mul_box_rational(pow[static_cast<size_t>(L - 1 - i)],
                                                  word[static_cast<size_t>(i)]));
        const Interval den =
            add_boxes(Interval::point(Rational(1)), mul_box_rational(pow[static_cast<size_t>(L)], Rational(-1)));
        if (den.contains(Rational(0))) {
            if (bits >= budget) return std::nullopt;
            continue;
        }
        const Interval z0 = div_boxes(num, den);
        Interval z = z0;
        bool inside = true, undecided = false;
        for (int i = 0; i < L; ++i) {
            if (target.contains(z)) {
                // certified inside; continue
            } else if (!target.intersects(z)) {
                inside = false;
                break;
            } else {
                undecided = true;
                break;
            }
            z = z.affine_enclosure(abox, word[static_cast<size_t>(i)]);
        }
        if (inside && !undecided) return z0;
        if (!undecided) return std::nullopt;
        if (bits >= budget) return std::nullopt;
    }
}

}  // namespace

OrbitCertificate invariant_orbit_search(const ExactReal& a, const std::vector<Rational>& V,
                                        const Interval& target, int max_period,
                                        int max_fixpoint_iters, const OrbitSearchOptions& opts) {
    if (abs_cmp(a, Rational(1)) <= 0)
        throw ContractiveUnsupported("orbit search needs |a| > 1");
    if (target.is_empty()) throw std::invalid_argument("orbit search target is empty");

    OrbitCertificate cert;
    cert.target = target;
    const std::vector<Rational> vs = canonical_v_order(V);

    // Stage 1: backward fixpoint K <- target  intersect  U_v (K - v)/a, with
    // the nonzero-v entry screen U_{v!=0} (a*target + v)  intersect  K.
    // Either emptiness certifies there is no infinite orbit entered through a
    // nonzero difference input.
    const bool rational_a = is_rational(a);
    const unsigned bits = precision_budget_bits();
    Interval abox, inv_abox;
    Rational inv_a;
    if (rational_a) {
        inv_a = as_rational(a).reciprocal();
    } else {
        abox = enclosure_of(a, bits);
        inv_abox = reciprocal_bracket(abox);
    }

    IntervalUnion K = IntervalUnion::single(target);
    for (int it = 0; it <= max_fixpoint_iters; ++it) {
        cert.fixpoint_iterations = it;
        if (K.is_empty()) {
            cert.kind = OrbitCertificate::Kind::EmptyCertified;
            return cert;
        }
        bool entry = false;
        for (const auto& v : vs) {
            if (v.is_zero()) continue;
            const Interval image = rational_a ? target.affine(as_rational(a), v)
                                              : target.affine_enclosure(abox, v);
            if (!K.intersect(image).is_empty()) {
                entry = true;
                break;
            }
        }
        if (!entry) {
            cert.kind = OrbitCertificate::Kind::EmptyCertified;
            return cert;
        }
        if (it == max_fixpoint_iters) break;
        IntervalUnion next = IntervalUnion::empty();
        for (const auto& v : vs) {
            IntervalUnion pre = K.affine(Rational(1), -v);
            pre = rational_a ? pre.affine(inv_a, Rational(0))
                             : pre.affine_enclosure(inv_abox, Rational(0));
            next = next.unite(pre);
        }
        next = next.intersect(target);
        if (next == K) break;  // exact nonempty fixpoint: go hunt for a cycle
        if (next.size() > opts.max_union_parts) break;
        K = std::move(next);
    }

    // Stage 2: exhaustive periodic-orbit search, canonical order (period
    // ascending, then lexicographic over |v|-ordered symbols).
    size_t words_tried = 0;
    for (int L = 1; L <= max_period; ++L) {
        WordEnumerator en(vs, L);
        while (en.next()) {
            if (++words_tried > opts.max_words) return cert;  // Unknown
            if (en.all_zero()) continue;
            const auto word = en.word();
            if (rational_a) {
                if (auto z0 = periodic_start_exact(as_rational(a), word, target)) {
                    cert.kind = OrbitCertificate::Kind::PeriodicWitness;
                    cert.cycle_word = word;
                    cert.period = L;
                    cert.exact = true;
                    cert.cycle_start = *z0;
                    return cert;
                }
            } else {
                if (auto z0 = periodic_start_enclosed(a, word, target)) {
                    cert.kind = OrbitCertificate::Kind::PeriodicWitness;
                    cert.cycle_word = word;
                    cert.period = L;
                    cert.exact = false;
                    cert.cycle_start_enclosure = *z0;
                    return cert;
                }
            }
        }
    }
    return cert;  // Unknown
}

std::optional<OrbitCertificate> not_uli_via_orbit(const ExactReal& a,
                                                  const std::vector<Rational>& V,
                                                  const EpsilonBounds& eps,
                                                  const OrbitSearchOptions& opts) {
    const Rational eps_bar = eps.best;
    if (eps_bar >= Rational(1))
        throw IntervalEmpty("margin bound " + eps_bar.str() + " >= 1 voids the orbit theorem");
    const Interval target = Interval::open(Rational(-1) + eps_bar, Rational(1) - eps_bar);
    OrbitCertificate cert = invariant_orbit_search(a, V, target, opts.max_period,
                                                   opts.max_fixpoint_iters, opts);
    if (cert.kind == OrbitCertificate::Kind::PeriodicWitness) return cert;
    return std::nullopt;
}

CounterexampleWitness counterexample_expansive(const ExactReal& a,
                                               const std::vector<Rational>& inputs, int length) {
    if (length < 1) throw std::invalid_argument("counterexample length must be >= 1");
    if (!is_rational(a))
        throw NotApplicable("set construction needs rational dynamics for exact cell measures");
    const Rational ar = as_rational(a);
    if (abs(ar) <= Rational(2)) throw NotApplicable("constructive theorem needs |a| > 2");

    // Closest distinct pair; any pair with |u1-u2| < |a| works, the closest
    // maximizes the first overlap.
    std::vector<Rational> sorted(inputs);
    std::sort(sorted.begin(), sorted.end());
    std::optional<std::pair<Rational, Rational>> pair;
    Rational best_gap;
    for (size_t i = 0; i + 1 < sorted.size(); ++i) {
        const Rational gap = sorted[i + 1] - sorted[i];
        if (!pair || gap < best_gap) {
            best_gap = gap;
            pair = {sorted[i], sorted[i + 1]};
        }
    }
    if (!pair || best_gap >= abs(ar))
        throw NotApplicable("no input pair closer than |a|");
    const Rational u1 = pair->first, u2 = pair->second;

    CounterexampleWitness w;
    Interval S = Interval::half_open(Rational(0), Rational(1));
    std::vector<BigInt> cells{BigInt(0)};
    for (int step = 0; step < length; ++step) {
        const bool diverge = (step == 0) || (S.length() == Rational(1));
        const Rational& ua = u1;
        const Rational ub = diverge ? u2 : u1;
        if (diverge) w.divergence_steps.push_back(static_cast<size_t>(step));
        w.inputs.push_back(ua);
        w.inputs_prime.push_back(ub);

        Interval T = S.affine(ar, ua);
        if (diverge) T = T.intersect(S.affine(ar, ub));
        if (T.is_empty()) throw ConstructionStalled("common image vanished");

        // Cell maximizing the surviving measure; ties to the smaller index.
        BigInt m_lo = T.lo().floor();
        BigInt m_hi = T.hi().floor();
        std::optional<BigInt> best_cell;
        Rational best_measure(0);
        for (BigInt m = m_lo; m <= m_hi; m += 1) {
            const Rational len = T.intersect(Interval::cell(m)).length();
            if (len > best_measure) {
                best_measure = len;
                best_cell = m;
            }
        }
        if (!best_cell) throw ConstructionStalled("no cell captures positive measure");
        S = T.intersect(Interval::cell(*best_cell));
        cells.push_back(*best_cell);
    }

    // Pull one exact point back through both branches.
    const Rational y = S.midpoint();
    Rational xa = y, xb = y;
    for (int step = length; step-- > 0;) {
        xa = (xa - w.inputs[static_cast<size_t>(step)]) / ar;
        xb = (xb - w.inputs_prime[static_cast<size_t>(step)]) / ar;
    }
    w.x0 = xa;
    w.x0_prime = xb;

    // Verify by exact simulation before returning.
    NormalizedSystem ns{ar, sorted, {}};
    const size_t n = static_cast<size_t>(length);
    Trajectory ta = simulate(ns, w.x0, w.inputs, n);
    Trajectory tb = simulate(ns, w.x0_prime, w.inputs_prime, n);
    if (ta.outputs != tb.outputs) throw std::logic_error("counterexample outputs disagree");
    for (size_t i = 0; i <= n; ++i)
        if (ta.outputs[i] != cells[i]) throw std::logic_error("counterexample left its cells");
    w.outputs = ta.outputs;
    return w;
}

UliVerdict analyze(const QuantizedSystem& sys, const AnalyzeOptions& opts) {
    UliVerdict verdict;
    const NormalizedSystem norm = normalize(sys);
    const std::vector<Rational> V = difference_alphabet(norm.inputs);

    if (abs_cmp(norm.a, Rational(1)) < 0) {
        verdict.status = UliVerdict::Status::UnsupportedContractive;
        return verdict;
    }

    verdict.uldi = uldi_check(norm.a, V);
    if (verdict.uldi->status == UldiVerdict::Status::UldiOneStep) {
        verdict.status = UliVerdict::Status::UliOneStep;
        verdict.k = 1;
        verdict.l = 0;
        return verdict;
    }

    GapReport gap;
    gap.min_nonzero_abs_v = verdict.uldi->min_nonzero_abs_v;

    // Route 1: constructive counterexample for |a| > 2.
    try {
        verdict.counterexample =
            counterexample_expansive(norm.a, norm.inputs, opts.counterexample_length);
        verdict.status = UliVerdict::Status::NotUli;
        verdict.k = static_cast<int>(verdict.counterexample->inputs.size());
        return verdict;
    } catch (const std::exception& e) {
        gap.diagnostics += std::string("counterexample: ") + e.what() + "; ";
    }

    // Route 2: periodic orbit inside the margin-shrunk interval.
    EpsilonBounds eps;
    try {
        eps = epsilon_bounds(norm.a, opts.mahler_tol);
        gap.eps_bar = eps.best;
        if (auto cert = not_uli_via_orbit(norm.a, V, eps, opts.orbit)) {
            verdict.orbit = *cert;
            verdict.status = UliVerdict::Status::NotUli;
            verdict.k = cert->period;
            return verdict;
        }
        gap.diagnostics += "orbit: no periodic witness within budgets; ";
    } catch (const IntervalEmpty& e) {
        gap.diagnostics += std::string("orbit: ") + e.what() + "; ";
    } catch (const std::exception& e) {
        gap.diagnostics += std::string("orbit: ") + e.what() + "; ";
    }

    // Undecided: report the instantiated gap inequality, non-strict on both
    // sides (the boundary case belongs to the gap).
    const Rational threshold = gap.min_nonzero_abs_v - Rational(1);
    gap.lower_holds = abs_cmp(norm.a, threshold + gap.eps_bar) <= 0;
    gap.upper_holds = abs_cmp(norm.a, threshold) >= 0;
    verdict.gap = std::move(gap);
    verdict.status = UliVerdict::Status::UndecidedGap;
    return verdict;
}

std::vector<Rational> invert_sequence(const NormalizedSystem& sys,
                                      std::span<const BigInt> outputs) {
    const UldiVerdict u = uldi_check(sys.a, difference_alphabet(sys.inputs));
    if (u.status != UldiVerdict::Status::UldiOneStep)
        throw std::invalid_argument("invert_sequence needs a one-step invertible system");
    std::vector<Rational> recovered;
    if (outputs.size() < 2) return recovered;
    recovered.reserve(outputs.size() - 1);

    const bool rational_a = is_rational(sys.a);
    const unsigned budget = precision_budget_bits();
    for (size_t k = 0; k + 1 < outputs.size(); ++k) {
        const Interval cell_now = Interval::cell(outputs[k]);
        const Interval cell_next = Interval::cell(outputs[k + 1]);
        std::vector<Rational> candidates;
        if (rational_a) {
            for (const auto& uin : sys.inputs)
                if (cell_now.affine(as_rational(sys.a), uin).intersects(cell_next))
                    candidates.push_back(uin);
        } else {
            for (unsigned bits = kDefaultEnclosureBits;; bits *= 2) {
                if (bits > budget) bits = budget;
                candidates.clear();
                const Interval abox = enclosure_of(sys.a, bits);
                for (const auto& uin : sys.inputs)
                    if (cell_now.affine_enclosure(abox, uin).intersects(cell_next))
                        candidates.push_back(uin);
                if (candidates.size() <= 1 || bits >= budget) break;
            }
        }
        if (candidates.empty())
            throw NoConsistentInput("no input maps cell " + outputs[k].get_str() + " into cell " +
                                    outputs[k + 1].get_str());
        if (candidates.size() > 1)
            throw AmbiguousInput("multiple inputs consistent at step " + std::to_string(k));
        recovered.push_back(candidates.front());
    }
    return recovered;
}

namespace {

template <typename Num>
struct ClassifyOps;

template <>
struct ClassifyOps<Rational> {
    static Rational times_q(const Rational& tau, long q) { return tau * Rational(q); }
    static BigInt floor_of(const Rational& x) { return x.floor(); }
    static Rational fract(const Rational& x) { return x.frac(); }
    static Rational one_minus(const Rational& x) { return Rational(1) - x; }
    static Rational ratio(long q, const BigInt& p) { return Rational(BigInt(q), p); }
    static bool less(const Rational& a, const Rational& b) { return a < b; }
    static Rational to_rational(const Rational& x) { return x; }
};

template <>
struct ClassifyOps<double> {
    static double times_q(double tau, long q) { return tau * static_cast<double>(q); }
    static BigInt floor_of(double x) { return BigInt(static_cast<long>(std::floor(x))); }
    static double fract(double x) { return x - std::floor(x); }
    static double one_minus(double x) { return 1.0 - x; }
    static double ratio(long q, const BigInt& p) {
        return static_cast<double>(q) / p.get_d();
    }
    static bool less(double a, double b) { return a < b; }
    static Rational to_rational(double x) { return Rational::from_double(x); }
};

template <typename Num>
ClassifyResult classify_impl(const Num& tau, long q_max) {
    ClassifyResult res;
    for (long q = 1; q <= q_max; ++q) {
        const Num tq = ClassifyOps<Num>::times_q(tau, q);
        const BigInt p = ClassifyOps<Num>::floor_of(tq) + 1;
        const Num lhs = ClassifyOps<Num>::one_minus(ClassifyOps<Num>::fract(tq));
        const Num rhs = ClassifyOps<Num>::ratio(q, p);
        if (ClassifyOps<Num>::less(lhs, rhs)) {
            ExceptionalCandidate c;
            c.q = q;
            c.p = p;
            c.a = Rational(p, BigInt(q));
            c.lhs = ClassifyOps<Num>::to_rational(lhs);
            c.rhs = ClassifyOps<Num>::to_rational(rhs);
            res.hits.push_back(std::move(c));
        }
    }
    return res;
}

}  // namespace

ClassifyResult classify_exceptional(const Rational& tau, long q_max) {
    if (tau.sign() <= 0) throw std::invalid_argument("tau must be positive");
    if (q_max < 1) throw std::invalid_argument("q_max must be >= 1");
    ClassifyResult res = classify_impl<Rational>(tau, q_max);
    // With tau = l/m in lowest terms, l q mod m sweeps all residues, so the
    // left-hand side takes the m values 1 - j/m, j = 0..m-1.
    const BigInt m = tau.denominator();
    for (BigInt j(0); j < m; j += 1) res.lhs_values.push_back(Rational(m - j, m));
    return res;
}

ClassifyResult classify_exceptional(double tau, long q_max) {
    if (!(tau > 0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
    if (q_max < 1) throw std::invalid_argument("q_max must be >= 1");
    return classify_impl<double>(tau, q_max);
}

}  // namespace quantinv
