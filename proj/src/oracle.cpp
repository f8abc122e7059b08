#include "quantinv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "quantinv/errors.hpp"

namespace quantinv {

namespace {

struct SearchNode {
    Interval box_x, box_x_prime;
    BigInt cell;
    long parent = -1;  // index into the previous level
    size_t u_index = 0, u_prime_index = 0;
};

std::string node_key(const SearchNode& n) {
    return n.box_x.str() + "|" + n.box_x_prime.str();
}

}  // namespace

BruteforceResult bruteforce_indistinguishable(const NormalizedSystem& sys, int depth,
                                              const BruteforceOptions& opts) {
    if (!is_rational(sys.a))
        throw std::invalid_argument("exact brute force needs rational dynamics");
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    if (depth > opts.depth_cap)
        throw DepthCapExceeded("depth " + std::to_string(depth) + " exceeds cap " +
                               std::to_string(opts.depth_cap));
    const Rational a = as_rational(sys.a);
    const std::vector<Rational>& U = sys.inputs;

    BruteforceResult res;
    res.depth_requested = depth;

    // Initial cells: window around the hull of the input fixed points
    // u/(1-a) (the bounded-orbit region), widened by the margin.
    BigInt wlo, whi;
    if (a == Rational(1)) {
        wlo = BigInt(-opts.initial_cell_margin);
        whi = BigInt(opts.initial_cell_margin);
    } else {
        bool first = true;
        Rational mn, mx;
        for (const auto& u : U) {
            const Rational fp = u / (Rational(1) - a);
            if (first || fp < mn) mn = fp;
            if (first || fp > mx) mx = fp;
            first = false;
        }
        wlo = mn.floor() - opts.initial_cell_margin;
        whi = mx.floor() + opts.initial_cell_margin;
    }
    res.window_lo = wlo;
    res.window_hi = whi;

    std::vector<std::vector<SearchNode>> levels;
    levels.emplace_back();
    for (BigInt c = wlo; c <= whi; c += 1) {
        SearchNode n;
        n.box_x = Interval::cell(c);
        n.box_x_prime = Interval::cell(c);
        n.cell = c;
        levels.front().push_back(std::move(n));
    }
    res.states_explored = levels.front().size();

    for (int level = 0; level < depth; ++level) {
        const auto& frontier = levels.back();
        std::vector<SearchNode> next;
        std::map<std::string, bool> seen;
        for (long s = 0; s < static_cast<long>(frontier.size()); ++s) {
            const SearchNode& node = frontier[static_cast<size_t>(s)];
            for (size_t iu = 0; iu < U.size(); ++iu) {
                for (size_t iv = 0; iv < U.size(); ++iv) {
                    if (level == 0 && iu == iv) continue;  // words differ at step 1
                    const Interval ix = node.box_x.affine(a, U[iu]);
                    const Interval ixp = node.box_x_prime.affine(a, U[iv]);
                    // Shared output cell candidates: cells meeting both images.
                    const Rational lo = max(ix.lo(), ixp.lo());
                    const Rational hi = min(ix.hi(), ixp.hi());
                    if (lo > hi) continue;
                    const BigInt mlo = lo.floor();
                    const BigInt mhi = hi.floor();
                    if (BigInt(mhi - mlo) > BigInt(static_cast<long>(opts.max_candidate_cells)))
                        throw CellWindowExceeded("transition fans out over too many cells");
                    for (BigInt m = mlo; m <= mhi; m += 1) {
                        const Interval cell = Interval::cell(m);
                        Interval bx = ix.intersect(cell);
                        Interval bxp = ixp.intersect(cell);
                        if (bx.is_empty() || bxp.is_empty()) continue;
                        SearchNode child;
                        child.box_x = std::move(bx);
                        child.box_x_prime = std::move(bxp);
                        child.cell = m;
                        child.parent = s;
                        child.u_index = iu;
                        child.u_prime_index = iv;
                        const std::string key = node_key(child);
                        if (seen.emplace(key, true).second) next.push_back(std::move(child));
                    }
                }
            }
        }
        if (next.size() > opts.max_states_per_level)
            throw SearchBudgetExceeded("level " + std::to_string(level + 1) + " holds " +
                                       std::to_string(next.size()) + " states");
        res.states_explored += next.size();
        if (next.empty()) {
            res.exhausted_depth = level + 1;
            res.certified = true;
            return res;
        }
        levels.push_back(std::move(next));
    }

    // A pair survived the full depth: extract the first one (deterministic
    // construction order).
    res.witness_found = true;
    std::vector<const SearchNode*> path;
    {
        long idx = 0;
        for (size_t level = levels.size(); level-- > 0;) {
            const SearchNode* n = &levels[level][static_cast<size_t>(idx)];
            path.push_back(n);
            idx = n->parent;
            if (level == 0) break;
        }
        std::reverse(path.begin(), path.end());
    }
    for (size_t i = 1; i < path.size(); ++i) {
        res.inputs.push_back(U[path[i]->u_index]);
        res.inputs_prime.push_back(U[path[i]->u_prime_index]);
    }
    for (size_t i = 0; i < res.inputs.size(); ++i)
        if (res.inputs[i] != res.inputs_prime[i]) res.divergence_steps.push_back(i);

    // Backward refinement: keep only the points whose forward orbit under
    // the witness words survives every later cell, so sampling any point of
    // boxes[k] reproduces the cell tail.
    res.boxes.assign(path.size(), PairBox{});
    res.boxes.back() =
        PairBox{path.back()->box_x, path.back()->box_x_prime, path.back()->cell};
    const Rational inv_a = a.reciprocal();
    for (size_t k = path.size() - 1; k-- > 0;) {
        const Rational& u = res.inputs[k];
        const Rational& up = res.inputs_prime[k];
        Interval bx = res.boxes[k + 1].box_x.affine(Rational(1), -u).affine(inv_a, Rational(0));
        Interval bxp =
            res.boxes[k + 1].box_x_prime.affine(Rational(1), -up).affine(inv_a, Rational(0));
        res.boxes[k] = PairBox{path[k]->box_x.intersect(bx),
                               path[k]->box_x_prime.intersect(bxp), path[k]->cell};
        if (res.boxes[k].box_x.is_empty() || res.boxes[k].box_x_prime.is_empty())
            throw std::logic_error("backward refinement emptied a surviving box");
    }
    res.x0 = res.boxes.front().box_x.midpoint();
    res.x0_prime = res.boxes.front().box_x_prime.midpoint();

    // Re-simulate: the witness must reproduce one shared output sequence.
    Trajectory ta = simulate(sys, res.x0, res.inputs, res.inputs.size());
    Trajectory tb = simulate(sys, res.x0_prime, res.inputs_prime, res.inputs_prime.size());
    if (ta.outputs != tb.outputs)
        throw std::logic_error("bruteforce witness failed re-simulation");
    res.outputs = ta.outputs;
    return res;
}

PsiMatrix banded_matrix_unchecked(const IntPolynomial& p, int J) {
    if (p.is_zero() || p.degree() < 1)
        throw std::invalid_argument("banded matrix needs degree >= 1");
    if (J < 0) throw std::invalid_argument("J must be >= 0");
    PsiMatrix m;
    m.K = p.degree();
    m.J = J;
    const size_t cols = static_cast<size_t>(J + m.K + 1);
    for (int j = 0; j <= J; ++j) {
        std::vector<BigInt> row(cols, BigInt(0));
        for (int i = 0; i <= m.K; ++i) row[static_cast<size_t>(j + i)] = p.coeff(i);
        m.rows.push_back(std::move(row));
    }
    return m;
}

PsiMatrix psi_matrix(const IntPolynomial& p, int J) {
    if (!p.is_zero() && !p.is_primitive())
        throw NotPrimitive("banded lattice matrix needs a primitive polynomial");
    return banded_matrix_unchecked(p, J);
}

namespace {

/// Fraction-free (Bareiss) determinant of a square BigInt matrix.
BigInt bareiss_det(std::vector<std::vector<BigInt>> m) {
    const size_t n = m.size();
    if (n == 0) return BigInt(1);
    BigInt sign(1), prev(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return BigInt(0);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

void minor_gcd_rec(const PsiMatrix& psi, size_t start_col, std::vector<size_t>& chosen,
                   BigInt& g, size_t& count) {
    const size_t need = psi.row_count();
    if (chosen.size() == need) {
        std::vector<std::vector<BigInt>> sub(need, std::vector<BigInt>(need));
        for (size_t r = 0; r < need; ++r)
            for (size_t c = 0; c < need; ++c) sub[r][c] = psi.rows[r][chosen[c]];
        const BigInt d = bareiss_det(std::move(sub));
        ++count;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        return;
    }
    if (g == 1) return;  // early exit: gcd can only stay 1
    for (size_t c = start_col; c + (need - chosen.size()) <= psi.col_count(); ++c) {
        chosen.push_back(c);
        minor_gcd_rec(psi, c + 1, chosen, g, count);
        chosen.pop_back();
        if (g == 1) return;
    }
}

}  // namespace

MinorGcdResult check_minor_gcd(const PsiMatrix& m) {
    MinorGcdResult res;
    res.gcd = 0;
    std::vector<size_t> chosen;
    minor_gcd_rec(m, 0, chosen, res.gcd, res.minors_evaluated);
    if (res.gcd < 0) res.gcd = -res.gcd;
    res.surjective = (res.gcd == 1);
    return res;
}

DensityProbe kronecker_density_probe(const ExactReal& a, int J, const std::vector<double>& zeta,
                                     long grid) {
    if (J < 1) throw std::invalid_argument("probe needs J >= 1");
    if (grid < 1) throw std::invalid_argument("probe needs grid >= 1");
    if (zeta.size() != static_cast<size_t>(J))
        throw std::invalid_argument("zeta must have J components");

    DensityProbe probe;
    probe.a = str_of(a);
    probe.J = J;
    probe.grid = grid;
    probe.zeta = zeta;

    // Fundamental period heuristic: with a = p/q every frac(a^i t) is
    // periodic in t with period dividing q^J; irrational a gets a unit range.
    double period = 1.0;
    if (is_rational(a)) {
        const double q = as_rational(a).denominator().get_d();
        period = std::pow(q, J);
        if (period > 1e9) period = 1e9;
    }
    probe.period = period;

    const double av = approx_of(a);
    std::vector<double> apow(static_cast<size_t>(J) + 1, 1.0);
    for (int i = 1; i <= J; ++i) apow[static_cast<size_t>(i)] = apow[static_cast<size_t>(i - 1)] * av;

    double best = 2.0;
    double best_t = 0.0;
    for (long k = 0; k < grid; ++k) {
        const double t = period * static_cast<double>(k) / static_cast<double>(grid);
        double worst = 0.0;
        for (int i = 1; i <= J; ++i) {
            const double x = zeta[static_cast<size_t>(i - 1)] + apow[static_cast<size_t>(i)] * t;
            const double f = x - std::floor(x);
            if (f > worst) worst = f;
        }
        if (worst < best) {
            best = worst;
            best_t = t;
        }
    }
    probe.estimate = best;
    probe.argmin_t = best_t;
    return probe;
}

bool manifold_membership(const std::vector<double>& point, const PsiMatrix& psi, double tol) {
    if (point.size() != psi.col_count())
        throw std::invalid_argument("point dimension must be J+K+1");
    for (const auto& row : psi.rows) {
        double acc = 0.0;
        for (size_t c = 0; c < row.size(); ++c) acc += row[c].get_d() * point[c];
        const double dist = std::fabs(acc - std::round(acc));
        if (dist > tol) return false;
    }
    return true;
}

}  // namespace quantinv
