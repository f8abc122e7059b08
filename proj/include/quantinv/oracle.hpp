#pragma once

#include <optional>
#include <vector>

#include "quantinv/system.hpp"

namespace quantinv {

/// A set of state pairs confined to one quantizer cell: both boxes lie
/// inside [cell, cell+1).
struct PairBox {
    Interval box_x, box_x_prime;
    BigInt cell;
};

struct BruteforceOptions {
    int depth_cap = 12;
    size_t max_states_per_level = 200000;
    int initial_cell_margin = 2;       // window around the bounded-orbit hull
    size_t max_candidate_cells = 512;  // per-transition fanout guard
};

/// Result of the exact indistinguishability search over the paired system.
struct BruteforceResult {
    bool witness_found = false;
    // Witness: two initial states and words, first inputs differing, with
    // identical outputs for `depth` steps.
    Rational x0, x0_prime;
    std::vector<Rational> inputs, inputs_prime;
    std::vector<BigInt> outputs;
    std::vector<size_t> divergence_steps;
    // Backward-refined surviving boxes: any pair sampled from boxes[k]
    // follows the shared cell tail from step k onward under the witness
    // words.
    std::vector<PairBox> boxes;
    // Exhaustion: every pair of words differing at step 1 (initial cells in
    // the stated window) forces distinct outputs within this many steps.
    int exhausted_depth = 0;
    bool certified = false;
    BigInt window_lo, window_hi;
    size_t states_explored = 0;
    int depth_requested = 0;
};

/// Breadth-first exact search over pairs of input words differing at step 1
/// and shared output-cell sequences, propagating PairBox pairs through exact
/// affine images and cell intersections. Rational dynamics only (exact
/// mode). Returns a concrete re-simulated witness, or an exhaustion
/// certificate scoped to the initial-cell window.
BruteforceResult bruteforce_indistinguishable(const NormalizedSystem& sys, int depth,
                                              const BruteforceOptions& opts = {});

/// The (J+1) x (J+K+1) banded matrix with the minimal-polynomial
/// coefficients alpha_0..alpha_K in row j at offset j.
struct PsiMatrix {
    int K = 0;
    int J = 0;
    std::vector<std::vector<BigInt>> rows;

    size_t row_count() const { return rows.size(); }
    size_t col_count() const { return rows.empty() ? 0 : rows.front().size(); }
};

/// Requires p primitive of degree >= 1.
PsiMatrix psi_matrix(const IntPolynomial& p, int J);

/// Same banded layout without the primitivity screen (for demonstrating the
/// gcd failure pattern on non-primitive inputs).
PsiMatrix banded_matrix_unchecked(const IntPolynomial& p, int J);

struct MinorGcdResult {
    BigInt gcd;
    bool surjective = false;  // onto the integer lattice iff gcd == 1
    size_t minors_evaluated = 0;
};

/// Gcd of all maximal minors, fraction-free determinants, early exit at 1.
MinorGcdResult check_minor_gcd(const PsiMatrix& m);

/// Numeric Kronecker-manifold probe: min over a uniform t-grid of
/// max_{i=1..J} frac(zeta_i + a^i t). A lower-bound estimator, not a
/// certified bound.
struct DensityProbe {
    std::string a;  // dynamics coefficient, exact form
    double estimate = 1.0;
    double argmin_t = 0.0;
    double period = 1.0;  // sampled t range [0, period)
    long grid = 0;
    int J = 0;
    std::vector<double> zeta;
};

DensityProbe kronecker_density_probe(const ExactReal& a, int J, const std::vector<double>& zeta,
                                     long grid);

/// True iff psi * point is within tol of the integer lattice componentwise.
bool manifold_membership(const std::vector<double>& point, const PsiMatrix& psi, double tol);

}  // namespace quantinv
