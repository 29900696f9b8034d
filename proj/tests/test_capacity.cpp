#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "capax/random.hpp"
#include "capax/set_function.hpp"
#include "test_support.hpp"

using namespace capax;
using namespace capax::testing;

namespace {

constexpr double kTol = 1e-12;

// Independent Shapley-interaction oracle: the literal double sum
//   I(A) = sum_{B subset X\A} (n-b-a)! b! / (n-a+1)! sum_{C subset A} (-1)^{a-c} mu(B u C)
// with factorials taken from a table.  Usable for n <= 10.
double interaction_oracle(const Capacity& mu, Mask a) {
    const int n = mu.n();
    std::vector<double> fact(static_cast<size_t>(n) + 2, 1.0);
    for (size_t i = 1; i < fact.size(); ++i) fact[i] = fact[i - 1] * static_cast<double>(i);

    const int ac = mask_card(a);
    const Mask comp = mu.ground().full_mask() & ~a;
    double total = 0;
    for_each_submask(comp, [&](Mask b) {
        const int bc = mask_card(b);
        const double weight = fact[static_cast<size_t>(n - bc - ac)] * fact[static_cast<size_t>(bc)] /
                              fact[static_cast<size_t>(n - ac + 1)];
        double inner = 0;
        for_each_submask(a, [&](Mask c) {
            const double sign = ((ac - mask_card(c)) % 2 == 0) ? 1.0 : -1.0;
            inner += sign * mu[b | c];
        });
        total += weight * inner;
    });
    return total;
}

// Brute-force check of every condition for a Mobius vector to define a
// fuzzy measure.
bool valid_mobius_oracle(const MobiusRepr& m, double tol) {
    if (std::abs(m[0]) > tol) return false;
    double total = 0;
    for (double c : m.coeffs) total += c;
    if (std::abs(total - 1.0) > tol) return false;
    const size_t size = m.coeffs.size();
    for (size_t a = 1; a < size; ++a) {
        bool ok = true;
        for_each_element(static_cast<Mask>(a), [&](Element i) {
            double sum = 0;
            for_each_submask(static_cast<Mask>(a), [&](Mask b) {
                if (mask_contains(b, i)) sum += m[b];
            });
            if (sum < -tol) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("validate_capacity") {
    CHECK_NOTHROW(counterexample_capacity());
    CHECK_NOTHROW(unanimity_capacity(GroundSet(3)));

    std::vector<double> bad = counterexample_values();
    bad[0] = 0.1;
    CHECK_THROWS_AS(validate_capacity(SetFunction(GroundSet(3), bad)), BoundaryViolation);

    std::vector<double> top = counterexample_values();
    top.back() = 0.9;
    CHECK_THROWS_AS(validate_capacity(SetFunction(GroundSet(3), top)), BoundaryViolation);

    std::vector<double> nonmono = counterexample_values();
    nonmono[0b011] = 0.2;  // below both singletons it contains
    try {
        validate_capacity(SetFunction(GroundSet(3), nonmono));
        FAIL("expected MonotonicityViolation");
    } catch (const MonotonicityViolation& e) {
        // witness is a genuine violating covering pair
        CHECK((e.subset & e.superset) == e.subset);
        CHECK(mask_card(e.superset ^ e.subset) == 1);
        CHECK(nonmono[e.subset] > nonmono[e.superset]);
        CHECK(e.superset == 0b011);
    }
}

TEST_CASE("dual") {
    // involution
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        GroundSet g(5);
        Capacity mu = random_capacity(g, rng);
        Capacity dd = dual(dual(mu));
        for (size_t s = 0; s < mu.values().size(); ++s)
            CHECK(dd.values()[s] == doctest::Approx(mu.values()[s]).epsilon(kTol));
    }

    // unanimity: the dual is 1 on every nonempty set
    Capacity una = unanimity_capacity(GroundSet(3));
    Capacity d = dual(una);
    for (Mask s = 1; s < 8; ++s) CHECK(d[s] == doctest::Approx(1.0));

    // additive measures are self-dual
    Capacity add = additive_capacity(GroundSet(3), {0.2, 0.3, 0.5});
    Capacity da = dual(add);
    for (Mask s = 0; s < 8; ++s) CHECK(da[s] == doctest::Approx(add[s]).epsilon(kTol));
}

TEST_CASE("mobius of the counterexample measure") {
    MobiusRepr m = mobius_from_capacity(counterexample_capacity().set_function());
    const std::vector<double> expected = counterexample_mobius();
    for (size_t s = 0; s < expected.size(); ++s)
        CHECK(m.coeffs[s] == doctest::Approx(expected[s]).epsilon(kTol));

    // zeta recovers the measure; mu(x1,x2) = 0.4 + 0.3 + 0.1 = 0.8
    SetFunction mu = capacity_from_mobius(MobiusRepr(GroundSet(3), expected));
    CHECK(mu[0b011] == doctest::Approx(0.8));
    for (size_t s = 0; s < mu.values.size(); ++s)
        CHECK(mu.values[s] == doctest::Approx(counterexample_values()[s]).epsilon(kTol));
}

TEST_CASE("mobius trivia") {
    // additive capacity: no mass beyond singletons
    Capacity add = additive_capacity(GroundSet(4), {0.1, 0.2, 0.3, 0.4});
    MobiusRepr m = mobius_from_capacity(add.set_function());
    for (Mask s = 0; s < 16; ++s)
        if (mask_card(s) >= 2) CHECK(std::abs(m[s]) < kTol);

    // unanimity game: all mass at the top
    MobiusRepr mu_una = mobius_from_capacity(unanimity_capacity(GroundSet(3)).set_function());
    for (Mask s = 0; s < 7; ++s) CHECK(std::abs(mu_una[s]) < kTol);
    CHECK(mu_una[7] == doctest::Approx(1.0));
}

TEST_CASE("transform kernels match the naive oracles") {
    Rng rng(11);
    GroundSet g(7);
    for (int trial = 0; trial < 10; ++trial) {
        Capacity mu = random_capacity(g, rng);
        std::vector<double> fast(mu.values());
        kernel::mobius_inplace(fast, 7);
        const std::vector<double> naive = kernel::mobius_naive(mu.values(), 7);
        for (size_t s = 0; s < fast.size(); ++s)
            CHECK(fast[s] == doctest::Approx(naive[s]).epsilon(1e-11));

        std::vector<double> back(fast);
        kernel::zeta_inplace(back, 7);
        const std::vector<double> naive_zeta = kernel::zeta_naive(fast, 7);
        for (size_t s = 0; s < back.size(); ++s) {
            CHECK(back[s] == doctest::Approx(naive_zeta[s]).epsilon(1e-11));
            CHECK(back[s] == doctest::Approx(mu.values()[s]).epsilon(1e-11));
        }
    }
}

TEST_CASE("transform roundtrips, float and rational") {
    Rng rng(13);
    for (int n : {4, 8}) {
        GroundSet g(n);
        for (int trial = 0; trial < 25; ++trial) {
            Capacity mu = random_capacity(g, rng);

            MobiusRepr m = mobius_from_capacity(mu.set_function());
            SetFunction back = capacity_from_mobius(m);
            for (size_t s = 0; s < back.values.size(); ++s)
                CHECK(std::abs(back.values[s] - mu.values()[s]) < 1e-12);

            InteractionRepr inter = interaction_from_mobius(m);
            MobiusRepr m2 = mobius_from_interaction(inter);
            for (size_t s = 0; s < m2.coeffs.size(); ++s)
                CHECK(std::abs(m2.coeffs[s] - m.coeffs[s]) < 1e-12);

            // exact roundtrips on the rational backend
            std::vector<Rational> rmu = to_rational(mu.values());
            std::vector<Rational> rm(rmu);
            kernel::mobius_inplace(rm, n);
            std::vector<Rational> rback(rm);
            kernel::zeta_inplace(rback, n);
            CHECK(exact_equal(rback, rmu));

            BernoulliTable table(n);
            std::vector<Rational> ri = kernel::interaction_from_mobius(rm, n);
            CHECK(exact_equal(kernel::mobius_from_interaction(ri, n, table), rm));
        }
    }
}

TEST_CASE("is_valid_mobius") {
    // the counterexample table is a valid Mobius vector
    MobiusRepr good(GroundSet(3), counterexample_mobius());
    CHECK(is_valid_mobius(good).valid);
    CHECK(valid_mobius_oracle(good, kDefaultTolerance));

    // m(x1) = 1, m(x1x2) = -0.5, m(X) = 0.5: condition (ii) fails at
    // A = {x1,x2} for x2 (0 - 0.5 < 0) while it holds for x1 (1 - 0.5 >= 0).
    MobiusRepr bad(GroundSet(3), {0.0, 1.0, 0.0, -0.5, 0.0, 0.0, 0.0, 0.5});
    CHECK_FALSE(valid_mobius_oracle(bad, kDefaultTolerance));
    MobiusValidity v = is_valid_mobius(bad);
    REQUIRE_FALSE(v.valid);
    CHECK(v.witness_set == 0b011);
    CHECK(v.witness_element == 1);

    // Mobius of any validated capacity is valid, and any valid Mobius vector
    // expands to a validated capacity.
    Rng rng(17);
    GroundSet g(6);
    for (int trial = 0; trial < 20; ++trial) {
        Capacity mu = random_capacity(g, rng);
        MobiusRepr m = mobius_from_capacity(mu.set_function());
        CHECK(is_valid_mobius(m).valid);
        CHECK(valid_mobius_oracle(m, kDefaultTolerance));
        CHECK_NOTHROW(validate_capacity(capacity_from_mobius(m)));
    }
}

TEST_CASE("is_belief") {
    CHECK_FALSE(is_belief(counterexample_capacity()));  // m(X) = -0.2
    CHECK(is_belief(additive_capacity(GroundSet(3), {0.2, 0.3, 0.5})));

    GroundSet g(3);
    IndifferencePartition p(g, {0b011, 0b100});
    CHECK(is_belief(lower_envelope(g, p, {0.6, 0.4})));
}

TEST_CASE("interaction examples") {
    // unanimity on X, n = 2: I({x1}) = m(X)/2 = 1/2
    MobiusRepr m2(GroundSet(2), {0.0, 0.0, 0.0, 1.0});
    InteractionRepr i2 = interaction_from_mobius(m2);
    CHECK(i2[0b01] == doctest::Approx(0.5));

    // additive: interactions vanish beyond singletons, singletons are p_i
    Capacity add = additive_capacity(GroundSet(4), {0.1, 0.2, 0.3, 0.4});
    InteractionRepr ia = interaction_from_capacity(add);
    CHECK(ia[0b0001] == doctest::Approx(0.1));
    CHECK(ia[0b1000] == doctest::Approx(0.4));
    for (Mask s = 0; s < 16; ++s)
        if (mask_card(s) >= 2) CHECK(std::abs(ia[s]) < 1e-12);

    // counterexample: I({x1}) = 0.4 + 0.1/2 + 0.1/2 - 0.2/3
    const double expected = 0.4 + 0.05 + 0.05 - 0.2 / 3.0;
    InteractionRepr ic = interaction_from_mobius(MobiusRepr(GroundSet(3), counterexample_mobius()));
    CHECK(ic[0b001] == doctest::Approx(expected).epsilon(kTol));
    InteractionRepr id = interaction_from_capacity(counterexample_capacity());
    CHECK(id[0b001] == doctest::Approx(expected).epsilon(kTol));
}

TEST_CASE("interaction routes agree and match the oracle") {
    Rng rng(23);
    GroundSet g(6);
    for (int trial = 0; trial < 10; ++trial) {
        Capacity mu = random_capacity(g, rng);
        InteractionRepr direct = interaction_from_capacity(mu);
        InteractionRepr via_mobius =
            interaction_from_mobius(mobius_from_capacity(mu.set_function()));
        double shapley_total = 0;
        for (Mask s = 0; s < 64; ++s) {
            CHECK(direct[s] == doctest::Approx(via_mobius[s]).epsilon(1e-9));
            CHECK(direct[s] == doctest::Approx(interaction_oracle(mu, s)).epsilon(1e-9));
            if (mask_card(s) == 1) shapley_total += direct[s];
        }
        CHECK(shapley_total == doctest::Approx(1.0).epsilon(1e-9));  // Shapley efficiency
    }

    // symmetric capacity: all singleton interactions equal, summing to 1
    GroundSet g5(5);
    Rng rng2(29);
    std::vector<double> v(32);
    Capacity sym = [&] {
        std::vector<double> levels{0.0, 0.1, 0.45, 0.7, 0.9, 1.0};
        std::vector<double> vals(32);
        for (Mask s = 0; s < 32; ++s) vals[s] = levels[static_cast<size_t>(mask_card(s))];
        return validate_capacity(SetFunction(g5, vals));
    }();
    InteractionRepr is = interaction_from_capacity(sym);
    for (int i = 0; i < 5; ++i)
        CHECK(is[element_mask(i)] == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("null sets") {
    Capacity add = additive_capacity(GroundSet(3), {0.5, 0.5, 0.0});
    CHECK(is_null_set(add, 0));               // empty set
    CHECK(is_null_set(add, 0b100));           // x3 carries no mass
    CHECK_FALSE(is_null_set(add, 0b001));     // mu(x1) > 0

    // a capacity that ignores x3 entirely
    std::vector<double> v(8);
    for (Mask s = 0; s < 8; ++s) {
        const Mask visible = s & 0b011;
        v[s] = visible == 0 ? 0.0 : (visible == 0b011 ? 1.0 : 0.4);
    }
    Capacity ignoring = validate_capacity(SetFunction(GroundSet(3), v));
    CHECK(is_null_set(ignoring, 0b100));
    // null sets are sets of indifference
    CHECK(is_set_of_indifference(ignoring, 0b100));
}

TEST_CASE("indifferent elements") {
    Capacity jury = jury_capacity();
    CHECK(are_indifferent(jury, 0, 1));        // M1 ~ M2
    CHECK(are_indifferent(jury, 2, 3));        // P1 ~ P2
    CHECK_FALSE(are_indifferent(jury, 0, 2));  // mu(M1) = 0.3 != mu(P1) = 0.2

    // symmetric capacity: every pair indifferent
    GroundSet g(4);
    std::vector<double> levels{0.0, 0.2, 0.5, 0.8, 1.0};
    std::vector<double> vals(16);
    for (Mask s = 0; s < 16; ++s) vals[s] = levels[static_cast<size_t>(mask_card(s))];
    Capacity sym = validate_capacity(SetFunction(g, vals));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) CHECK(are_indifferent(sym, i, j));
}

TEST_CASE("indifference is transitive on random capacities") {
    Rng rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        GroundSet g(6);
        // random psym capacities have nontrivial indifference classes
        IndifferencePartition planted = random_partition(g, 2 + static_cast<int>(trial % 2), rng);
        Capacity mu = expand(random_psym_capacity(g, planted, rng));
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                for (int k = 0; k < 6; ++k) {
                    if (i == j || j == k || i == k) continue;
                    if (are_indifferent(mu, i, j) && are_indifferent(mu, j, k))
                        CHECK(are_indifferent(mu, i, k));
                }
    }
}

TEST_CASE("sets of indifference") {
    Capacity jury = jury_capacity();
    CHECK(is_set_of_indifference(jury, 0b0011));   // {M1,M2}
    CHECK(is_set_of_indifference(jury, 0b1100));   // {P1,P2}
    CHECK_FALSE(is_set_of_indifference(jury, 0b0101));
    CHECK_FALSE(is_set_of_indifference(jury, 0b1111));

    // singletons always qualify
    for (int i = 0; i < 4; ++i) CHECK(is_set_of_indifference(jury, element_mask(i)));

    // witness on failure
    IndifferenceWitness w;
    REQUIRE_FALSE(is_set_of_indifference(jury, 0b0101, kDefaultTolerance, &w));
    CHECK(jury[w.first] != jury[w.second]);
    CHECK(composition_of(w.first, IndifferencePartition(jury.ground(), {0b0101, 0b1010})) ==
          composition_of(w.second, IndifferencePartition(jury.ground(), {0b0101, 0b1010})));
}

TEST_CASE("both characterizations of sets of indifference agree") {
    Rng rng(37);
    GroundSet g(6);
    for (int trial = 0; trial < 8; ++trial) {
        Capacity mu = trial % 2 == 0
                          ? random_capacity(g, rng)
                          : expand(random_psym_capacity(g, random_partition(g, 2, rng), rng));
        for (Mask a = 1; a < 64; ++a)
            CHECK(is_set_of_indifference(mu, a) == is_set_of_indifference_altdef(mu, a));
    }
}

TEST_CASE("subsets of a set of indifference are sets of indifference") {
    Rng rng(41);
    GroundSet g(7);
    IndifferencePartition planted(g, {0b0001111, 0b1110000});
    for (int trial = 0; trial < 5; ++trial) {
        Capacity mu = expand(random_psym_capacity(g, planted, rng));
        for (Mask block : planted.blocks()) {
            REQUIRE(is_set_of_indifference(mu, block));
            for_each_submask(block, [&](Mask sub) {
                if (sub != 0) CHECK(is_set_of_indifference(mu, sub));
            });
        }
    }
}

TEST_CASE("lower envelope") {
    GroundSet g2(2);
    IndifferencePartition singles(g2, {0b01, 0b10});
    Capacity half = lower_envelope(g2, singles, {0.5, 0.5});
    Capacity add = additive_capacity(g2, {0.5, 0.5});
    for (Mask s = 0; s < 4; ++s) CHECK(half[s] == doctest::Approx(add[s]));

    GroundSet g3(3);
    IndifferencePartition p(g3, {0b011, 0b100});
    // canonical order puts the singleton {x3} first
    REQUIRE(p.block(0) == 0b100);
    Capacity env = lower_envelope(g3, p, {0.4, 0.6});
    CHECK(env[0b001] == doctest::Approx(0.0));
    CHECK(env[0b011] == doctest::Approx(0.6));
    CHECK(env[0b101] == doctest::Approx(0.4));
    CHECK(is_belief(env));
    // mu(B_i) = probs[i]
    CHECK(env[0b100] == doctest::Approx(0.4));
    CHECK(env[0b011] == doctest::Approx(0.6));

    // dual is the upper envelope 1 - mu(A^c)
    Capacity up = dual(env);
    for (Mask s = 0; s < 8; ++s) CHECK(up[s] == doctest::Approx(1.0 - env[0b111 & ~s]));

    CHECK_THROWS_AS(lower_envelope(g3, p, {0.7, 0.4}), InvalidProbabilities);
    CHECK_THROWS_AS(lower_envelope(g3, p, {1.4, -0.4}), InvalidProbabilities);
}

TEST_CASE("interadditive partitions") {
    GroundSet g(4);
    IndifferencePartition p(g, {0b0011, 0b1100});

    Capacity add = additive_capacity(g, {0.1, 0.2, 0.3, 0.4});
    CHECK(is_interadditive(add, p));
    CHECK(is_interadditive(add, IndifferencePartition(g, {0b0001, 0b0010, 0b1100})));

    Capacity una = unanimity_capacity(g);
    CHECK_FALSE(is_interadditive(una, p));  // mu(X) = 1 != 0 + 0

    GroundSet g3(3);
    IndifferencePartition env_blocks(g3, {0b011, 0b100});
    Capacity env = lower_envelope(g3, env_blocks, {0.6, 0.4});
    CHECK(is_interadditive(env, env_blocks));
}
