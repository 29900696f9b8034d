#include "capax/choquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace capax {

namespace {

void check_score_size(int scores, int n, const char* op) {
    if (scores != n)
        throw ParseError(std::string(op) + ": got " + std::to_string(scores) + " scores for " +
                         std::to_string(n) + " elements");
}

// Marginal sums of the compressed Mobius matrix along one sorted pass:
//   sum_i f(x_(i)) * sum_{c <= tail_i} keep(c + e_j) m(c + e_j) prod C(tail_k, c_k)
// where tail_i is the composition of the elements strictly above x_(i) in the
// ascending order and j is the block of x_(i).  With keep == true this is the
// Choquet integral in compressed form; filters carve out parts of the Mobius
// mass (the decomposition residual keeps only straddling compositions).
template <class Keep>
double sorted_mobius_sum(const PSymmetricCapacity& psym_m, const ScoreVector& f, Keep&& keep) {
    const IndifferencePartition& partition = psym_m.partition();
    const std::vector<int> extents = psym_m.extents();
    Composition tail = partition.top();
    double total = 0;
    for (Element idx : f.ascending_order()) {
        const int j = partition.block_of(idx);
        --tail[static_cast<size_t>(j)];
        double inner = 0;
        for_each_composition(tail, [&](const Composition& c) {
            Composition cj(c);
            ++cj[static_cast<size_t>(j)];
            if (!keep(cj)) return;
            const double m = psym_m.matrix()[static_cast<size_t>(composition_index(cj, extents))];
            if (m == 0.0) return;
            double ways = 1;
            for (size_t k = 0; k < c.size(); ++k)
                ways *= static_cast<double>(binomial(tail[k], c[k]));
            inner += m * ways;
        });
        total += f[idx] * inner;
    }
    return total;
}

int nonzero_coords(const Composition& c) {
    int count = 0;
    for (int x : c)
        if (x != 0) ++count;
    return count;
}

}  // namespace

ScoreVector::ScoreVector(std::vector<double> values) : values_(std::move(values)) {
    for (size_t i = 0; i < values_.size(); ++i)
        if (!(values_[i] >= 0))
            throw NegativeScore("score " + std::to_string(i + 1) + " must be a nonnegative number, got " +
                                std::to_string(values_[i]));
}

std::vector<Element> ScoreVector::ascending_order() const {
    std::vector<Element> order(values_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Element a, Element b) {
        if (values_[static_cast<size_t>(a)] != values_[static_cast<size_t>(b)])
            return values_[static_cast<size_t>(a)] < values_[static_cast<size_t>(b)];
        return a < b;
    });
    return order;
}

OwaWeights::OwaWeights(std::vector<double> weights, double tol) : weights_(std::move(weights)) {
    double total = 0;
    for (double w : weights_) {
        if (w < -tol || w > 1 + tol)
            throw ParseError("OWA weight " + std::to_string(w) + " outside [0,1]");
        total += w;
    }
    if (std::abs(total - 1.0) > tol)
        throw ParseError("OWA weights sum to " + std::to_string(total) + ", expected 1");
}

double choquet(const Capacity& mu, const ScoreVector& f, double tol) {
    const int n = mu.n();
    check_score_size(f.size(), n, "choquet");
    const std::vector<Element> order = f.ascending_order();

    // B_i = {x_(i),...,x_(n)} as masks, built from the top down.
    std::vector<Mask> upper(static_cast<size_t>(n) + 2, 0);
    for (int i = n; i >= 1; --i)
        upper[static_cast<size_t>(i)] =
            upper[static_cast<size_t>(i) + 1] | element_mask(order[static_cast<size_t>(i - 1)]);

    double by_increments = 0;  // sum (f_(i) - f_(i-1)) mu(B_i)
    double by_levels = 0;      // sum f_(i) (mu(B_i) - mu(B_{i+1}))
    double prev = 0;
    for (int i = 1; i <= n; ++i) {
        const double fi = f[order[static_cast<size_t>(i - 1)]];
        by_increments += (fi - prev) * mu[upper[static_cast<size_t>(i)]];
        by_levels += fi * (mu[upper[static_cast<size_t>(i)]] - mu[upper[static_cast<size_t>(i) + 1]]);
        prev = fi;
    }
    const double scale = std::max(1.0, std::abs(by_increments));
    if (std::abs(by_increments - by_levels) > tol * scale)
        throw std::logic_error("choquet: the two discrete forms disagree: " +
                               std::to_string(by_increments) + " vs " + std::to_string(by_levels));
    return by_increments;
}

double choquet_mobius(const MobiusRepr& m, const ScoreVector& f, bool allow_out_of_range) {
    const int n = m.n();
    check_score_size(f.size(), n, "choquet_mobius");
    if (!allow_out_of_range)
        for (int i = 0; i < n; ++i)
            if (f[i] > 1.0)
                throw ScoreOutOfRange("score for " + m.ground.label(i) + " is " +
                                      std::to_string(f[i]) + ", outside [0,1]");

    // min_f[T] by peeling the lowest element.
    const size_t size = size_t{1} << n;
    std::vector<double> min_f(size, 0.0);
    double total = 0;
    for (size_t t = 1; t < size; ++t) {
        const Mask tm = static_cast<Mask>(t);
        const Mask rest = tm & (tm - 1);
        const double low = f[mask_lowest(tm)];
        min_f[t] = rest == 0 ? low : std::min(low, min_f[static_cast<size_t>(rest)]);
        total += m.coeffs[t] * min_f[t];
    }
    return total;
}

double choquet_psym(const PSymmetricCapacity& psym, const ScoreVector& f) {
    return choquet_psym_mobius(psym_mobius(psym), f);
}

double choquet_psym_mobius(const PSymmetricCapacity& psym_m, const ScoreVector& f) {
    if (psym_m.tag() != Repr::mobius)
        throw InvariantViolation("choquet_psym_mobius expects a mobius-tagged measure");
    check_score_size(f.size(), psym_m.ground().size(), "choquet_psym");
    return sorted_mobius_sum(psym_m, f, [](const Composition&) { return true; });
}

double owa(const OwaWeights& w, const ScoreVector& f) {
    check_score_size(f.size(), w.size(), "owa");
    const std::vector<Element> order = f.ascending_order();
    double total = 0;
    for (size_t i = 0; i < order.size(); ++i) total += w.values()[i] * f[order[i]];
    return total;
}

PSymmetricCapacity owa_to_capacity(const OwaWeights& w, const GroundSet& ground) {
    const int n = ground.size();
    if (w.size() != n) throw ParseError("owa_to_capacity: weight count does not match ground set");
    IndifferencePartition partition(ground, {ground.full_mask()});
    std::vector<double> matrix(static_cast<size_t>(n) + 1, 0.0);
    // v(k) = sum of the top k weights
    for (int k = 1; k <= n; ++k)
        matrix[static_cast<size_t>(k)] =
            matrix[static_cast<size_t>(k - 1)] + w.values()[static_cast<size_t>(n - k)];
    matrix[static_cast<size_t>(n)] = 1.0;  // guard against drift in the forced endpoint
    return PSymmetricCapacity(ground, std::move(partition), Repr::capacity, std::move(matrix));
}

PSymmetricCapacity owa_to_capacity(const OwaWeights& w) {
    return owa_to_capacity(w, GroundSet(w.size()));
}

OwaWeights capacity_to_owa(const Capacity& mu, double tol) {
    const IndifferencePartition partition = coarsest_partition(mu, tol);
    if (partition.p() != 1)
        throw NotSymmetric("capacity_to_owa: measure is " + std::to_string(partition.p()) +
                           "-symmetric, not symmetric");
    return owa_from_symmetric(compress(mu, partition, tol), tol);
}

OwaWeights owa_from_symmetric(const PSymmetricCapacity& psym, double tol) {
    if (psym.p() != 1)
        throw NotSymmetric("owa_from_symmetric: expected a 1-block compressed measure");
    if (psym.tag() != Repr::capacity)
        throw InvariantViolation("owa_from_symmetric expects a capacity-tagged measure");
    const int n = psym.ground().size();
    std::vector<double> w(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i)
        w[static_cast<size_t>(i - 1)] = psym.matrix()[static_cast<size_t>(n - i + 1)] -
                                        psym.matrix()[static_cast<size_t>(n - i)];
    return OwaWeights(std::move(w), tol);
}

namespace {

// Normalized block measure mu_{A_i} as a symmetric capacity on the block's
// own ground set, built from the compressed Mobius entries confined to the
// block: v(k) = sum_{l<=k} C(k,l) m(l e_i) / mu(A_i).
PSymmetricCapacity block_capacity(const PSymmetricCapacity& psym_m, int block_index,
                                  double block_measure_value) {
    const IndifferencePartition& partition = psym_m.partition();
    const GroundSet& ground = psym_m.ground();
    const int bsize = partition.block_size(block_index);
    const std::vector<int> extents = psym_m.extents();

    std::vector<std::string> labels;
    for_each_element(partition.block(block_index),
                     [&](Element e) { labels.push_back(ground.label(e)); });
    GroundSet sub_ground(std::move(labels));

    std::vector<double> v(static_cast<size_t>(bsize) + 1, 0.0);
    for (int k = 1; k <= bsize; ++k) {
        double acc = 0;
        for (int l = 1; l <= k; ++l) {
            Composition c(static_cast<size_t>(partition.p()), 0);
            c[static_cast<size_t>(block_index)] = l;
            acc += static_cast<double>(binomial(k, l)) *
                   psym_m.matrix()[static_cast<size_t>(composition_index(c, extents))];
        }
        v[static_cast<size_t>(k)] = acc / block_measure_value;
    }
    IndifferencePartition sub_partition(sub_ground, {sub_ground.full_mask()});
    PSymmetricCapacity block(sub_ground, std::move(sub_partition), Repr::capacity, std::move(v));
    block.check_capacity_invariants();
    return block;
}

DecompositionResult decompose_impl(const PSymmetricCapacity& psym, const ScoreVector& f,
                                   double tol, bool belief_route) {
    if (psym.tag() != Repr::capacity)
        throw InvariantViolation("decompose expects a capacity-tagged measure");
    check_score_size(f.size(), psym.ground().size(), "decompose");
    const IndifferencePartition& partition = psym.partition();
    const int p = partition.p();
    const PSymmetricCapacity m = psym_mobius(psym);

    if (belief_route) {
        const std::vector<int>& sizes = partition.block_sizes();
        bool ok = true;
        for_each_composition(sizes, [&](const Composition& c) {
            if (m.at(c) < -tol) ok = false;
        });
        if (!ok) throw NotBelief("belief decomposition needs a nonnegative Mobius transform");
    }

    DecompositionResult result;
    result.block_terms.reserve(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i) {
        const double mu_block = psym.block_measure(i);
        if (mu_block <= tol)
            throw ZeroBlockMeasure("mu(" + psym.ground().format_subset(partition.block(i)) +
                                       ") = " + std::to_string(mu_block) +
                                       "; decomposition needs mu(A_i) > 0",
                                   i);
        PSymmetricCapacity block = block_capacity(m, i, mu_block);

        // The block integral is literally an OWA over the block's scores.
        std::vector<double> block_scores;
        for_each_element(partition.block(i),
                         [&](Element e) { block_scores.push_back(f[e]); });
        const double integral = owa(owa_from_symmetric(block, tol), ScoreVector(block_scores));
        result.block_terms.push_back(mu_block * integral);
        result.block_measures.push_back(std::move(block));
    }

    if (belief_route) {
        // mu*(C) = mu(C) - sum_i mu(C intersect A_i), compressed.
        const std::vector<int> extents = psym.extents();
        std::vector<double> star(psym.matrix().size(), 0.0);
        for_each_composition(partition.block_sizes(), [&](const Composition& c) {
            double value = psym.at(c);
            for (int i = 0; i < p; ++i) {
                Composition only(static_cast<size_t>(p), 0);
                only[static_cast<size_t>(i)] = c[static_cast<size_t>(i)];
                value -= psym.at(only);
            }
            star[static_cast<size_t>(composition_index(c, extents))] = value;
        });
        PSymmetricCapacity mu_star(psym.ground(), partition, Repr::capacity, std::move(star));

        // m* must equal m on straddling compositions and vanish elsewhere.
        PSymmetricCapacity m_star(psym.ground(), partition, Repr::mobius,
                                  kernel::psym_mobius(extents, mu_star.matrix()));
        bool consistent = true;
        for_each_composition(partition.block_sizes(), [&](const Composition& c) {
            const double expected = nonzero_coords(c) >= 2 ? m.at(c) : 0.0;
            if (std::abs(m_star.at(c) - expected) > tol) consistent = false;
        });
        if (!consistent)
            throw std::logic_error("belief_decompose: m* does not match the straddling Mobius mass");

        // residual = Choquet integral of the non-normalized mu*, via the
        // Mobius-form sum (no monotonicity needed).
        result.residual =
            sorted_mobius_sum(m_star, f, [](const Composition&) { return true; });
        result.interaction_degree = mu_star.matrix().back();
        if (psym.ground().size() <= kMaxDenseElements && !ScopedDenseBan::active()) {
            const size_t size = size_t{1} << psym.ground().size();
            std::vector<double> dense(size);
            for (size_t s = 0; s < size; ++s)
                dense[s] = mu_star.at(composition_of(static_cast<Mask>(s), partition));
            result.residual_measure = SetFunction(psym.ground(), std::move(dense));
        }
        result.residual_psym = std::move(mu_star);
    } else {
        // Explicit Mobius sum over compositions straddling several blocks.
        result.residual =
            sorted_mobius_sum(m, f, [](const Composition& c) { return nonzero_coords(c) >= 2; });
    }

    result.total = sorted_mobius_sum(m, f, [](const Composition&) { return true; });
    double parts = result.residual;
    for (double t : result.block_terms) parts += t;
    const double scale = std::max(1.0, std::abs(result.total));
    if (std::abs(result.total - parts) > 100 * tol * scale)
        throw std::logic_error("decompose: blocks + residual = " + std::to_string(parts) +
                               " but the direct integral is " + std::to_string(result.total));
    return result;
}

}  // namespace

DecompositionResult decompose(const PSymmetricCapacity& psym, const ScoreVector& f, double tol) {
    return decompose_impl(psym, f, tol, false);
}

DecompositionResult belief_decompose(const PSymmetricCapacity& psym, const ScoreVector& f,
                                     double tol) {
    return decompose_impl(psym, f, tol, true);
}

double interaction_degree_raw(const PSymmetricCapacity& psym) {
    if (psym.tag() != Repr::capacity)
        throw InvariantViolation("interaction_degree expects a capacity-tagged measure");
    double degree = psym.matrix().back();
    for (int i = 0; i < psym.p(); ++i) degree -= psym.block_measure(i);
    return degree;
}

double interaction_degree(const PSymmetricCapacity& psym, double tol) {
    const PSymmetricCapacity m = psym_mobius(psym);
    bool ok = true;
    for (double c : m.matrix())
        if (c < -tol) ok = false;
    if (!ok)
        throw NotBelief(
            "interaction degree is only guaranteed nonnegative for belief functions; "
            "use the raw diagnostic for non-belief measures");
    return interaction_degree_raw(psym);
}

bool vanishing_degree_check(const PSymmetricCapacity& psym, std::uint64_t seed, int trials,
                            double tol) {
    const double degree = interaction_degree(psym, tol);
    if (degree > tol) return false;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = psym.ground().size();
    for (int t = 0; t < trials; ++t) {
        std::vector<double> scores(static_cast<size_t>(n));
        for (double& s : scores) s = unit(rng);
        const DecompositionResult d = decompose(psym, ScoreVector(std::move(scores)), tol);
        if (std::abs(d.residual) > 100 * tol)
            throw std::logic_error(
                "vanishing_degree_check: degree ~ 0 but a residual of " +
                std::to_string(d.residual) + " remained");
    }
    if (n <= kMaxDenseElements && !ScopedDenseBan::active()) {
        if (!is_interadditive(expand(psym, tol), psym.partition(), 100 * tol))
            throw std::logic_error(
                "vanishing_degree_check: degree ~ 0 but the partition is not interadditive");
    }
    return true;
}

}  // namespace capax
