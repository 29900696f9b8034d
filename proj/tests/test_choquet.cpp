#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "capax/random.hpp"
#include "test_support.hpp"

using namespace capax;
using namespace capax::testing;

namespace {

ScoreVector scores(std::initializer_list<double> xs) { return ScoreVector(std::vector<double>(xs)); }

// Choquet sum evaluated along a caller-supplied nondecreasing arrangement;
// used to show the result ignores how ties are ordered.
double choquet_with_order(const Capacity& mu, const std::vector<double>& f,
                          const std::vector<Element>& order) {
    Mask upper = mu.ground().full_mask();
    double total = 0, prev = 0;
    for (Element e : order) {
        total += (f[static_cast<size_t>(e)] - prev) * mu[upper];
        prev = f[static_cast<size_t>(e)];
        upper &= ~element_mask(e);
    }
    return total;
}

// Random nondecreasing piecewise-linear map on [0,1].
std::vector<double> monotone_map(const std::vector<double>& base, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double knot1 = unit(rng), knot2 = unit(rng);
    const double w0 = unit(rng), w1 = unit(rng), w2 = unit(rng);
    std::vector<double> out(base.size());
    for (size_t i = 0; i < base.size(); ++i)
        out[i] = w0 * base[i] + w1 * std::max(0.0, base[i] - knot1) +
                 w2 * std::max(0.0, base[i] - knot2);
    return out;
}

}  // namespace

TEST_CASE("choquet on the counterexample") {
    Capacity mu = counterexample_capacity();
    CHECK(choquet(mu, scores({1.0, 0.5, 0.0})) == doctest::Approx(0.6).epsilon(1e-12));

    // constant scores integrate to the constant
    CHECK(choquet(mu, scores({0.7, 0.7, 0.7})) == doctest::Approx(0.7));

    // indicator of A integrates to mu(A)
    for (Mask a = 0; a < 8; ++a) {
        std::vector<double> ind(3, 0.0);
        for_each_element(a, [&](Element e) { ind[static_cast<size_t>(e)] = 1.0; });
        CHECK(choquet(mu, ScoreVector(ind)) == doctest::Approx(mu[a]));
    }

    CHECK_THROWS_AS(ScoreVector({1.0, -0.5, 0.0}), NegativeScore);
}

TEST_CASE("choquet via the Mobius form") {
    MobiusRepr m(GroundSet(3), counterexample_mobius());
    // 0.4*1 + 0.3*0.5 + 0.3*0 + 0.1*0.5 + 0.1*0 + 0*0 + (-0.2)*0
    CHECK(choquet_mobius(m, scores({1.0, 0.5, 0.0})) == doctest::Approx(0.6).epsilon(1e-12));

    // additive: weighted arithmetic mean
    Capacity add = additive_capacity(GroundSet(3), {0.2, 0.3, 0.5});
    MobiusRepr ma = mobius_from_capacity(add.set_function());
    CHECK(choquet_mobius(ma, scores({0.9, 0.1, 0.4})) ==
          doctest::Approx(0.2 * 0.9 + 0.3 * 0.1 + 0.5 * 0.4));

    // unanimity: the minimum
    MobiusRepr mu_una = mobius_from_capacity(unanimity_capacity(GroundSet(3)).set_function());
    CHECK(choquet_mobius(mu_una, scores({0.9, 0.1, 0.4})) == doctest::Approx(0.1));

    CHECK_THROWS_AS(choquet_mobius(m, scores({1.5, 0.5, 0.0})), ScoreOutOfRange);
    // the identity extends beyond [0,1] when explicitly allowed
    Capacity mu = counterexample_capacity();
    ScoreVector wide = scores({2.0, 1.0, 0.5});
    CHECK(choquet_mobius(m, wide, true) == doctest::Approx(choquet(mu, wide)).epsilon(1e-12));
}

TEST_CASE("choquet routes agree on random capacities") {
    Rng rng(83);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        GroundSet g(n);
        Capacity mu = random_capacity(g, rng);
        ScoreVector f = random_scores(n, rng);
        const double direct = choquet(mu, f);
        const double via_m = choquet_mobius(mobius_from_capacity(mu.set_function()), f);
        CHECK(direct == doctest::Approx(via_m).epsilon(1e-11));
    }
}

TEST_CASE("choquet_psym never densifies and matches the dense value") {
    Capacity cx = counterexample_capacity();
    PSymmetricCapacity psym = compress(cx, coarsest_partition(cx));
    {
        ScopedDenseBan ban;
        CHECK(choquet_psym(psym, scores({1.0, 0.5, 0.0})) == doctest::Approx(0.6).epsilon(1e-12));
    }

    Rng rng(89);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 9);  // 4..12
        GroundSet g(n);
        IndifferencePartition partition = random_partition(g, 1 + static_cast<int>(rng() % 3), rng);
        PSymmetricCapacity p = random_psym_capacity(g, partition, rng);
        ScoreVector f = random_scores(n, rng);
        const double dense = choquet(expand(p), f);
        double compressed = 0;
        {
            ScopedDenseBan ban;
            compressed = choquet_psym(p, f);
        }
        CHECK(compressed == doctest::Approx(dense).epsilon(1e-9));
    }
}

TEST_CASE("choquet_psym at n = 20 stays compressed") {
    GroundSet g(20);
    IndifferencePartition partition(g, {(Mask{1} << 10) - 1, ((Mask{1} << 20) - 1) ^ ((Mask{1} << 10) - 1)});
    Rng rng(97);
    PSymmetricCapacity psym = random_psym_capacity(g, partition, rng);
    ScopedDenseBan ban;
    ScoreVector f = random_scores(20, rng);
    const double a = choquet_psym(psym, f);
    CHECK(std::isfinite(a));
    CHECK(a >= 0.0);
    CHECK(a <= 1.0 + 1e-9);
}

TEST_CASE("owa basics") {
    ScoreVector f = scores({0.9, 0.1, 0.4});
    CHECK(owa(OwaWeights({1.0, 0.0, 0.0}), f) == doctest::Approx(0.1));  // min
    CHECK(owa(OwaWeights({0.0, 0.0, 1.0}), f) == doctest::Approx(0.9));  // max
    CHECK(owa(OwaWeights({1.0 / 3, 1.0 / 3, 1.0 / 3}), f) ==
          doctest::Approx((0.9 + 0.1 + 0.4) / 3));

    CHECK_THROWS_AS(OwaWeights({0.5, 0.2}), ParseError);
    CHECK_THROWS_AS(OwaWeights({1.5, -0.5}), ParseError);
}

TEST_CASE("owa_to_capacity") {
    // uniform weights: v(k) = k/n
    PSymmetricCapacity v = owa_to_capacity(OwaWeights({0.25, 0.25, 0.25, 0.25}));
    for (int k = 0; k <= 4; ++k)
        CHECK(v.matrix()[static_cast<size_t>(k)] == doctest::Approx(k / 4.0));

    // w = (1,0,...,0) is the minimum: v(k) = 0 below the top
    PSymmetricCapacity vmin = owa_to_capacity(OwaWeights({1.0, 0.0, 0.0}));
    CHECK(vmin.matrix()[0] == doctest::Approx(0.0));
    CHECK(vmin.matrix()[1] == doctest::Approx(0.0));
    CHECK(vmin.matrix()[2] == doctest::Approx(0.0));
    CHECK(vmin.matrix()[3] == doctest::Approx(1.0));

    // roundtrip with the weight extraction
    Rng rng(101);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        std::vector<double> w(static_cast<size_t>(n));
        double total = 0;
        for (double& x : w) total += (x = unit(rng) + 1e-3);
        for (double& x : w) x /= total;
        OwaWeights weights(w);
        OwaWeights back = owa_from_symmetric(owa_to_capacity(weights));
        for (size_t i = 0; i < w.size(); ++i)
            CHECK(back.values()[i] == doctest::Approx(weights.values()[i]).epsilon(1e-12));
    }
}

TEST_CASE("owa equivalence with symmetric capacities") {
    Rng rng(103);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 9);  // 2..10
        GroundSet g(n);
        // random symmetric capacity via sorted levels
        std::vector<double> levels(static_cast<size_t>(n) + 1, 0.0);
        for (int k = 1; k <= n; ++k) levels[static_cast<size_t>(k)] = unit(rng);
        std::sort(levels.begin(), levels.end());
        levels.front() = 0.0;
        levels.back() = 1.0;
        std::vector<double> vals(size_t{1} << n);
        for (size_t s = 0; s < vals.size(); ++s)
            vals[s] = levels[static_cast<size_t>(mask_card(static_cast<Mask>(s)))];
        Capacity sym = validate_capacity(SetFunction(g, std::move(vals)));

        OwaWeights w = capacity_to_owa(sym);
        for (int rep = 0; rep < 4; ++rep) {
            ScoreVector f = random_scores(n, rng);
            CHECK(std::abs(owa(w, f) - choquet(sym, f)) <= 1e-12);
            CHECK(std::abs(choquet_psym(owa_to_capacity(w, g), f) - owa(w, f)) <= 1e-12);
        }
    }

    CHECK_THROWS_AS(capacity_to_owa(jury_capacity()), NotSymmetric);
}

TEST_CASE("decomposition of the counterexample") {
    Capacity cx = counterexample_capacity();
    PSymmetricCapacity psym = compress(cx, coarsest_partition(cx));
    DecompositionResult d = decompose(psym, scores({1.0, 0.5, 0.0}));

    REQUIRE(d.block_terms.size() == 2);
    CHECK(d.block_terms[0] == doctest::Approx(0.4).epsilon(1e-12));   // mu(A_1) * integral
    CHECK(d.block_terms[1] == doctest::Approx(0.15).epsilon(1e-12));  // mu(A_2) * integral
    CHECK(d.residual == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(d.total == doctest::Approx(0.6).epsilon(1e-12));

    // block measures are valid symmetric capacities on their own ground sets
    REQUIRE(d.block_measures.size() == 2);
    CHECK(d.block_measures[0].ground().size() == 1);
    CHECK(d.block_measures[1].ground().size() == 2);
    CHECK_NOTHROW(d.block_measures[0].check_capacity_invariants());
    CHECK_NOTHROW(d.block_measures[1].check_capacity_invariants());
    CHECK(d.block_measures[1].matrix()[1] == doctest::Approx(0.5));  // m(x2)/mu(A_2) = 0.3/0.6

    // raw degree is 0 even though the residual is not: the counterexample
    CHECK(interaction_degree_raw(psym) == doctest::Approx(0.0));
    CHECK_THROWS_AS(interaction_degree(psym), NotBelief);
}

TEST_CASE("decomposition identity on random compressed measures") {
    Rng rng(107);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 7);
        GroundSet g(n);
        IndifferencePartition partition = random_partition(g, 1 + static_cast<int>(rng() % 3), rng);
        PSymmetricCapacity psym = random_psym_capacity(g, partition, rng);
        ScoreVector f = random_scores(n, rng);
        DecompositionResult d = decompose(psym, f);
        double parts = d.residual;
        for (double t : d.block_terms) parts += t;
        CHECK(d.total == doctest::Approx(parts).epsilon(1e-9));
        CHECK(d.total == doctest::Approx(choquet(expand(psym), f)).epsilon(1e-9));
        // single block: one term, no residual
        if (partition.p() == 1) {
            CHECK(d.residual == doctest::Approx(0.0));
            CHECK(d.block_terms.size() == 1);
        }
    }
}

TEST_CASE("zero block measure is rejected") {
    // a capacity that ignores x3: mu({x3}) = 0
    std::vector<double> v(8);
    for (Mask s = 0; s < 8; ++s) {
        const Mask visible = s & 0b011;
        v[s] = visible == 0 ? 0.0 : (visible == 0b011 ? 1.0 : 0.4);
    }
    Capacity mu = validate_capacity(SetFunction(GroundSet(3), v));
    IndifferencePartition p(mu.ground(), {0b001, 0b010, 0b100});
    PSymmetricCapacity psym = compress(mu, p);
    try {
        decompose(psym, scores({0.5, 0.5, 0.5}));
        FAIL("expected ZeroBlockMeasure");
    } catch (const ZeroBlockMeasure& e) {
        CHECK(psym.block_measure(e.block) == doctest::Approx(0.0));
    }
}

TEST_CASE("belief decomposition") {
    GroundSet g(4);
    IndifferencePartition partition(g, {0b0011, 0b1100});

    SUBCASE("lower envelope: no interaction, zero residual") {
        Capacity env = lower_envelope(g, partition, {0.45, 0.55});
        PSymmetricCapacity psym = compress(env, partition);
        DecompositionResult d = belief_decompose(psym, scores({0.9, 0.2, 0.7, 0.4}));
        CHECK(d.interaction_degree == doctest::Approx(0.0));
        CHECK(d.residual == doctest::Approx(0.0));
        REQUIRE(d.residual_psym.has_value());
        for (double x : d.residual_psym->matrix()) CHECK(x == doctest::Approx(0.0));
        REQUIRE(d.residual_measure.has_value());
        for (double x : d.residual_measure->values) CHECK(x == doctest::Approx(0.0));
        CHECK(vanishing_degree_check(psym));
    }

    SUBCASE("unanimity game: everything is interaction") {
        PSymmetricCapacity una = compress(unanimity_capacity(g), partition);
        CHECK_THROWS_AS(belief_decompose(una, scores({0.9, 0.2, 0.7, 0.4})), ZeroBlockMeasure);
        // interaction degree itself is defined regardless of block measures
        CHECK(interaction_degree(una) == doctest::Approx(1.0));
        CHECK_FALSE(vanishing_degree_check(una));
    }

    SUBCASE("unanimity mass on blocks plus the top") {
        // m({A_1}) = 0.3, m({A_2}) = 0.3, m(X) = 0.4: belief, degree 0.4
        std::vector<double> mass(9, 0.0);
        const std::vector<int> extents{3, 3};
        mass[static_cast<size_t>(composition_index({2, 0}, extents))] = 0.3;
        mass[static_cast<size_t>(composition_index({0, 2}, extents))] = 0.3;
        mass[static_cast<size_t>(composition_index({2, 2}, extents))] = 0.4;
        PSymmetricCapacity m(g, partition, Repr::mobius, mass);
        PSymmetricCapacity psym = psym_capacity_from_mobius(m);

        CHECK(interaction_degree(psym) == doctest::Approx(0.4));
        ScoreVector f = scores({0.9, 0.2, 0.7, 0.4});
        DecompositionResult d = belief_decompose(psym, f);
        // mu*: only the top coalition mass remains, so the residual is
        // 0.4 * min f
        CHECK(d.residual == doctest::Approx(0.4 * 0.2));
        CHECK(d.total == doctest::Approx(choquet(expand(psym), f)).epsilon(1e-12));
        REQUIRE(d.residual_measure.has_value());
        CHECK(d.residual_measure->values.back() == doctest::Approx(0.4));
    }

    SUBCASE("the counterexample is not belief") {
        Capacity cx = counterexample_capacity();
        PSymmetricCapacity psym = compress(cx, coarsest_partition(cx));
        CHECK_THROWS_AS(belief_decompose(psym, scores({1.0, 0.5, 0.0})), NotBelief);
    }

    SUBCASE("additive measures have vanishing degree under any indifference partition") {
        // equal masses within blocks, so the blocks are sets of indifference
        Capacity add = additive_capacity(g, {0.15, 0.15, 0.35, 0.35});
        for (const auto& blocks :
             {std::vector<Mask>{0b0011, 0b1100}, std::vector<Mask>{0b0001, 0b0010, 0b1100},
              std::vector<Mask>{0b0001, 0b0010, 0b0100, 0b1000}}) {
            IndifferencePartition p(g, blocks);
            PSymmetricCapacity psym = compress(add, p);
            CHECK(interaction_degree(psym) == doctest::Approx(0.0));
            CHECK(vanishing_degree_check(psym));
        }
    }
}

TEST_CASE("belief decomposition identity on random belief measures") {
    Rng rng(109);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 7);
        GroundSet g(n);
        IndifferencePartition partition = random_partition(g, 2 + static_cast<int>(rng() % 2), rng);
        const bool confined = trial % 3 == 0;
        PSymmetricCapacity psym = random_belief_psym(g, partition, rng, confined);
        ScoreVector f = random_scores(n, rng);

        DecompositionResult d = belief_decompose(psym, f);
        double parts = d.residual;
        for (double t : d.block_terms) parts += t;
        CHECK(d.total == doctest::Approx(parts).epsilon(1e-9));
        CHECK(d.interaction_degree >= -1e-12);
        CHECK(d.interaction_degree <= 1.0 + 1e-12);
        // residual equals the integral of mu* computed densely
        REQUIRE(d.residual_measure.has_value());
        const double via_dense = choquet_mobius(mobius_from_capacity(*d.residual_measure), f, true);
        CHECK(d.residual == doctest::Approx(via_dense).epsilon(1e-9));

        if (confined) {
            CHECK(d.interaction_degree == doctest::Approx(0.0));
            CHECK(d.residual == doctest::Approx(0.0));
            CHECK(vanishing_degree_check(psym));
            CHECK(is_interadditive(expand(psym), partition));
        }
    }
}

TEST_CASE("comonotone additivity") {
    Rng rng(113);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 8);
        GroundSet g(n);
        Capacity mu = random_capacity(g, rng);
        ScoreVector base = random_scores(n, rng);
        ScoreVector f(monotone_map(base.values(), rng));
        ScoreVector h(monotone_map(base.values(), rng));
        std::vector<double> sum(f.values());
        for (size_t i = 0; i < sum.size(); ++i) sum[i] += h[static_cast<int>(i)];
        const double lhs = choquet(mu, f) + choquet(mu, h);
        const double rhs = choquet(mu, ScoreVector(sum));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("monotonicity and idempotence") {
    Rng rng(127);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 8);
        GroundSet g(n);
        Capacity mu = random_capacity(g, rng);

        ScoreVector f = random_scores(n, rng);
        std::vector<double> larger(f.values());
        std::uniform_real_distribution<double> bump(0.0, 0.5);
        for (double& x : larger) x += bump(rng);
        CHECK(choquet(mu, f) <= choquet(mu, ScoreVector(larger)) + 1e-12);

        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double c = unit(rng);
        CHECK(choquet(mu, ScoreVector(std::vector<double>(static_cast<size_t>(n), c))) ==
              doctest::Approx(c).epsilon(1e-12));
    }
}

TEST_CASE("tie order never affects the integral") {
    Rng rng(131);
    std::uniform_int_distribution<int> level(0, 2);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 5);
        GroundSet g(n);
        Capacity mu = random_capacity(g, rng);
        // scores drawn from three levels force ties
        std::vector<double> f(static_cast<size_t>(n));
        for (double& x : f) x = 0.25 * level(rng);
        const double reference = choquet(mu, ScoreVector(f));

        std::vector<Element> order(f.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](Element a, Element b) { return f[static_cast<size_t>(a)] < f[static_cast<size_t>(b)]; });
        for (int rep = 0; rep < 8; ++rep) {
            // shuffle within tie groups
            size_t start = 0;
            while (start < order.size()) {
                size_t end = start + 1;
                while (end < order.size() &&
                       f[static_cast<size_t>(order[end])] == f[static_cast<size_t>(order[start])])
                    ++end;
                std::shuffle(order.begin() + static_cast<long>(start), order.begin() + static_cast<long>(end), rng);
                start = end;
            }
            CHECK(choquet_with_order(mu, f, order) == doctest::Approx(reference).epsilon(1e-12));
        }
    }
}
