#include "quantinv/system.hpp"

#include <algorithm>
#include <stdexcept>

#include "quantinv/errors.hpp"

namespace quantinv {

QuantizedSystem make_quantized_system(ExactReal a, Rational b, Rational c, Rational delta,
                                      std::vector<Rational> inputs) {
    if (inputs.empty()) throw std::invalid_argument("input alphabet must be nonempty");
    if (delta.sign() <= 0) throw std::invalid_argument("partition rate delta must be positive");
    if (b.is_zero()) throw std::invalid_argument("input gain b must be nonzero");
    if (c.is_zero()) throw std::invalid_argument("output gain c must be nonzero");
    std::sort(inputs.begin(), inputs.end());
    for (size_t i = 1; i < inputs.size(); ++i)
        if (inputs[i] == inputs[i - 1])
            throw std::invalid_argument("duplicate input symbol " + inputs[i].str());
    return QuantizedSystem{std::move(a), std::move(b), std::move(c), std::move(delta),
                           std::move(inputs)};
}

NormalizedSystem normalize(const QuantizedSystem& sys) {
    SubstitutionProvenance prov;
    prov.state_scale = sys.c / sys.delta;
    prov.input_scale = sys.c * sys.b / sys.delta;
    std::vector<Rational> scaled;
    scaled.reserve(sys.inputs.size());
    for (const auto& u : sys.inputs) scaled.push_back(prov.input_scale * u);
    std::sort(scaled.begin(), scaled.end());
    return NormalizedSystem{sys.a, std::move(scaled), prov};
}

std::vector<Rational> difference_alphabet(const std::vector<Rational>& inputs) {
    if (inputs.empty()) throw std::invalid_argument("difference alphabet of empty input set");
    std::vector<Rational> diffs;
    diffs.reserve(inputs.size() * inputs.size());
    for (const auto& u : inputs)
        for (const auto& w : inputs) diffs.push_back(u - w);
    std::sort(diffs.begin(), diffs.end());
    diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
    return diffs;
}

DifferenceSystem make_difference_system(const NormalizedSystem& sys) {
    return DifferenceSystem{sys.a, difference_alphabet(sys.inputs)};
}

bool Trajectory::any_indeterminate() const {
    for (bool f : output_indeterminate)
        if (f) return true;
    return false;
}

namespace {

/// floor of an enclosed value, when the enclosure fits a single cell [m,m+1).
std::pair<BigInt, bool> enclosed_floor(const Interval& iv) {
    const BigInt m = iv.lo().floor();
    const Rational next(m + 1);
    if (iv.hi() < next || (iv.hi() == next && !iv.hi_closed())) return {m, true};
    return {m, false};
}

}  // namespace

Trajectory simulate(const NormalizedSystem& sys, const Rational& x0,
                    std::span<const Rational> inputs, size_t n, bool allow_any_inputs) {
    if (inputs.size() < n) throw std::invalid_argument("input word shorter than step count");
    if (!allow_any_inputs) {
        for (size_t i = 0; i < n; ++i)
            if (!std::binary_search(sys.inputs.begin(), sys.inputs.end(), inputs[i]))
                throw std::invalid_argument("input " + inputs[i].str() + " not in alphabet");
    }

    Trajectory tr;
    tr.inputs_used.assign(inputs.begin(), inputs.begin() + static_cast<long>(n));

    if (is_rational(sys.a)) {
        const Rational& a = as_rational(sys.a);
        tr.exact = true;
        tr.states.reserve(n + 1);
        tr.states.push_back(x0);
        for (size_t i = 0; i < n; ++i) tr.states.push_back(a * tr.states.back() + inputs[i]);
        tr.outputs.reserve(n + 1);
        for (const auto& x : tr.states) tr.outputs.push_back(x.floor());
        tr.output_indeterminate.assign(n + 1, false);
        return tr;
    }

    // Enclosure mode: retry the whole run at increasing precision until every
    // output separates from its cell edges or the budget runs out.
    tr.exact = false;
    const unsigned budget = precision_budget_bits();
    for (unsigned bits = kDefaultEnclosureBits;; bits *= 2) {
        if (bits > budget) bits = budget;
        const Interval a_box = enclosure_of(sys.a, bits);
        tr.state_enclosures.clear();
        tr.outputs.clear();
        tr.output_indeterminate.clear();
        tr.state_enclosures.push_back(Interval::point(x0));
        bool undecided = false;
        for (size_t i = 0; i < n; ++i)
            tr.state_enclosures.push_back(
                tr.state_enclosures.back().affine_enclosure(a_box, inputs[i]));
        for (const auto& iv : tr.state_enclosures) {
            auto [m, ok] = enclosed_floor(iv);
            tr.outputs.push_back(m);
            tr.output_indeterminate.push_back(!ok);
            undecided = undecided || !ok;
        }
        if (!undecided || bits >= budget) return tr;
    }
}

}  // namespace quantinv
