// capax: inspect, transform and integrate fuzzy measures (capacities),
// in dense or compressed p-symmetric storage.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "capax/choquet.hpp"
#include "capax/io.hpp"
#include "capax/psym.hpp"
#include "capax/random.hpp"
#include "capax/set_function.hpp"

using namespace capax;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

// Silent densification is allowed only for small ground sets.
constexpr int kAutoDensifyLimit = 16;

std::string fmt(double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", x);
    return buffer;
}

std::string block_list(const GroundSet& ground, const IndifferencePartition& partition) {
    std::string out;
    for (int i = 0; i < partition.p(); ++i) {
        if (i) out += " ";
        out += ground.format_subset(partition.block(i));
    }
    return out;
}

double tolerance_from_env(double fallback) {
    if (const char* env = std::getenv("CAPAX_TOLERANCE")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
        throw ParseError("CAPAX_TOLERANCE must be a positive number");
    }
    return fallback;
}

struct CommonOptions {
    std::string input;
    std::string output;
    double tolerance = kDefaultTolerance;
    bool rational = false;
    bool densify = false;
    std::uint64_t seed = 12345;
};

// Dense-representation transform dispatch on raw value arrays.
std::vector<double> dense_transform(const std::vector<double>& values, int n, Repr from, Repr to,
                                    bool rational, std::string& note) {
    auto run = [&](auto backend) {
        using T = decltype(backend);
        std::vector<T> a;
        a.reserve(values.size());
        for (double v : values) a.emplace_back(v);
        BernoulliTable table(n);
        std::vector<T> out;
        if (from == Repr::capacity && to == Repr::mobius) {
            kernel::mobius_inplace(a, n);
            out = std::move(a);
            note = "mobius transform of capacity values";
        } else if (from == Repr::mobius && to == Repr::capacity) {
            kernel::zeta_inplace(a, n);
            out = std::move(a);
            note = "zeta transform of mobius coefficients";
        } else if (from == Repr::mobius && to == Repr::interaction) {
            out = kernel::interaction_from_mobius(a, n);
            note = "interaction indices from mobius coefficients";
        } else if (from == Repr::interaction && to == Repr::mobius) {
            out = kernel::mobius_from_interaction(a, n, table);
            note = "mobius coefficients from interaction indices (Bernoulli inverse)";
        } else if (from == Repr::capacity && to == Repr::interaction) {
            kernel::mobius_inplace(a, n);
            out = kernel::interaction_from_mobius(a, n);
            note = "interaction indices via the mobius transform";
        } else {  // interaction -> capacity
            std::vector<T> m = kernel::mobius_from_interaction(a, n, table);
            kernel::zeta_inplace(m, n);
            out = std::move(m);
            note = "capacity values via the mobius coefficients";
        }
        std::vector<double> result;
        result.reserve(out.size());
        for (const auto& v : out) result.push_back(to_double(v));
        return result;
    };
    return rational ? run(Rational{}) : run(double{});
}

// A mobius (or interaction) file only yields a capacity file if the mobius
// coefficients define a fuzzy measure; otherwise report the witness.
void require_valid_mobius(const GroundSet& ground, const std::vector<double>& mobius, double tol) {
    const MobiusValidity v = is_valid_mobius(MobiusRepr(ground, mobius), tol);
    if (v.valid) return;
    std::string what = "mobius coefficients do not define a fuzzy measure: " + v.reason;
    if (v.witness_element >= 0)
        what += " (witness A = " + ground.format_subset(v.witness_set) + ", element " +
                ground.label(v.witness_element) + ")";
    throw InvariantViolation(what);
}

int cmd_transform(const CommonOptions& opt, const std::string& to_name) {
    const Repr target = repr_from_name(to_name);
    MeasureFile file = MeasureFile::load(opt.input);
    std::string note;

    if (file.dense) {
        if (file.representation != target) {
            if (target == Repr::capacity) {
                std::string unused;
                const std::vector<double> mobius =
                    file.representation == Repr::mobius
                        ? file.values
                        : dense_transform(file.values, file.ground.size(), Repr::interaction,
                                          Repr::mobius, opt.rational, unused);
                require_valid_mobius(file.ground, mobius, opt.tolerance);
            }
            file.values = dense_transform(file.values, file.ground.size(), file.representation,
                                          target, opt.rational, note);
            file.representation = target;
        }
    } else {
        std::optional<ScopedDenseBan> ban;
        if (file.ground.size() > kAutoDensifyLimit && !opt.densify) ban.emplace();
        if (file.representation != target) {
            PSymmetricCapacity psym = file.to_psym();
            if (opt.rational) {
                // exact kernels over the matrix, same dispatch as psym_convert
                const std::vector<int> extents = psym.extents();
                std::vector<Rational> a = to_rational(psym.matrix());
                BernoulliTable table(psym.ground().size());
                std::vector<Rational> out;
                const Repr from = file.representation;
                if (from == Repr::capacity)
                    out = target == Repr::mobius
                              ? kernel::psym_mobius(extents, a)
                              : kernel::psym_interaction_from_capacity(extents, a);
                else if (from == Repr::mobius)
                    out = target == Repr::capacity
                              ? kernel::psym_capacity_from_mobius(extents, a)
                              : kernel::psym_interaction_from_mobius(extents, a);
                else
                    out = target == Repr::capacity
                              ? kernel::psym_capacity_from_interaction(extents, a, table)
                              : kernel::psym_mobius_from_interaction(extents, a, table);
                file.matrix = from_rational(out);
            } else {
                file.matrix = psym_convert(psym, target).matrix();
            }
            file.representation = target;
            note = "compressed-coordinate transform";
            if (target == Repr::capacity)
                PSymmetricCapacity(file.ground, file.partition(), target, file.matrix)
                    .check_capacity_invariants(opt.tolerance);
        }
    }

    if (!note.empty()) file.note = note;
    if (!opt.output.empty()) {
        file.save(opt.output);
        std::cout << "wrote " << opt.output << "\n";
    } else {
        std::cout << file.serialize();
    }
    return kExitOk;
}

int cmd_detect(const CommonOptions& opt) {
    const MeasureFile file = MeasureFile::load(opt.input);
    if (!file.dense || file.representation != Repr::capacity)
        throw ParseError("detect expects a dense capacity file");
    const Capacity mu = validate_capacity(file.to_set_function(), opt.tolerance);
    const IndifferencePartition partition = coarsest_partition(mu, opt.tolerance);

    const std::uint64_t dense_count = (std::uint64_t{1} << mu.n()) - 2;
    std::cout << "p = " << partition.p() << "\n";
    std::cout << "blocks: " << block_list(mu.ground(), partition) << "\n";
    std::cout << "coefficients: " << storage_count(partition) << " compressed vs " << dense_count
              << " dense\n";

    if (!opt.output.empty()) {
        MeasureFile out = MeasureFile::from_psym(compress(mu, partition, opt.tolerance));
        out.note = "compressed along the coarsest indifference partition";
        out.save(opt.output);
        std::cout << "wrote " << opt.output << "\n";
    }
    return kExitOk;
}

// Measure file -> compressed capacity, densifying only when allowed.
PSymmetricCapacity measure_as_psym(const MeasureFile& file, const CommonOptions& opt) {
    if (file.dense) {
        std::vector<double> values = file.values;
        std::string note;
        if (file.representation != Repr::capacity)
            values = dense_transform(values, file.ground.size(), file.representation,
                                     Repr::capacity, opt.rational, note);
        const Capacity mu = validate_capacity(SetFunction(file.ground, std::move(values)), opt.tolerance);
        return compress(mu, coarsest_partition(mu, opt.tolerance), opt.tolerance);
    }
    PSymmetricCapacity psym = file.to_psym();
    if (psym.tag() != Repr::capacity) psym = psym_convert(psym, Repr::capacity);
    psym.check_capacity_invariants(opt.tolerance);
    return psym;
}

int cmd_integrate(const CommonOptions& opt, const std::string& scores_path, bool decompose_flag) {
    const MeasureFile file = MeasureFile::load(opt.input);
    std::optional<ScopedDenseBan> ban;
    if (!file.dense && file.ground.size() > kAutoDensifyLimit && !opt.densify) ban.emplace();

    const ScoreVector f = ScoreFile::load(scores_path, file.ground);
    const PSymmetricCapacity psym = measure_as_psym(file, opt);

    const double integral = choquet_psym(psym, f);
    std::cout << "integral = " << fmt(integral) << "\n";

    if (psym.p() == 1) {
        const OwaWeights w = owa_from_symmetric(psym, opt.tolerance);
        std::cout << "symmetric measure; equivalent OWA weights:";
        for (double x : w.values()) std::cout << " " << fmt(x);
        std::cout << "\n";
    }

    if (decompose_flag) {
        const PSymmetricCapacity m = psym_mobius(psym);
        bool belief = true;
        for (double c : m.matrix())
            if (c < -opt.tolerance) belief = false;

        const DecompositionResult d = belief ? belief_decompose(psym, f, opt.tolerance)
                                             : decompose(psym, f, opt.tolerance);
        for (int i = 0; i < psym.p(); ++i) {
            std::cout << "block " << psym.ground().format_subset(psym.partition().block(i))
                      << ": mu = " << fmt(psym.block_measure(i))
                      << ", term = " << fmt(d.block_terms[static_cast<size_t>(i)]) << "\n";
        }
        std::cout << "residual = " << fmt(d.residual) << "\n";
        if (belief)
            std::cout << "interaction degree = " << fmt(d.interaction_degree) << " (belief)\n";
        else
            std::cout << "interaction degree (diagnostic, non-belief) = "
                      << fmt(interaction_degree_raw(psym)) << "\n";
        double parts = d.residual;
        for (double t : d.block_terms) parts += t;
        std::cout << "identity check: blocks + residual = " << fmt(parts) << ", direct = "
                  << fmt(d.total) << "\n";
    }
    return kExitOk;
}

int cmd_verify(const CommonOptions& opt, const std::string& partition_path) {
    const MeasureFile file = MeasureFile::load(opt.input);
    int failures = 0;
    auto report = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "ok: " : "fail: ") << what << "\n";
        if (!ok) ++failures;
    };

    std::optional<Capacity> mu;
    if (file.dense) {
        std::vector<double> values = file.values;
        if (file.representation == Repr::mobius) {
            const MobiusValidity v = is_valid_mobius(MobiusRepr(file.ground, values), opt.tolerance);
            report(v.valid, v.valid ? "mobius coefficients define a fuzzy measure"
                                    : "mobius validity: " + v.reason);
            std::string note;
            values = dense_transform(values, file.ground.size(), Repr::mobius, Repr::capacity,
                                     false, note);
        } else if (file.representation == Repr::interaction) {
            std::string note;
            values = dense_transform(values, file.ground.size(), Repr::interaction, Repr::capacity,
                                     false, note);
        }
        try {
            mu = validate_capacity(SetFunction(file.ground, values), opt.tolerance);
            report(true, "boundary and monotonicity conditions");
        } catch (const Error& e) {
            report(false, std::string("capacity validity: ") + e.what());
        }
    } else {
        try {
            PSymmetricCapacity psym = file.to_psym();
            if (psym.tag() != Repr::capacity) psym = psym_convert(psym, Repr::capacity);
            psym.check_capacity_invariants(opt.tolerance);
            report(true, "compressed matrix invariants");
            if (file.ground.size() <= kAutoDensifyLimit || opt.densify) mu = expand(psym, opt.tolerance);
        } catch (const Error& e) {
            report(false, std::string("compressed matrix invariants: ") + e.what());
        }
    }

    if (mu) {
        report(true, is_belief(*mu, opt.tolerance) ? "belief function (nonnegative mobius mass)"
                                                   : "not a belief function (reported, not a failure)");
        const IndifferencePartition coarsest = coarsest_partition(*mu, opt.tolerance);
        std::cout << "symmetry: p = " << coarsest.p() << ", blocks "
                  << block_list(mu->ground(), coarsest) << "\n";

        if (!partition_path.empty()) {
            const IndifferencePartition supplied = load_partition(partition_path, mu->ground());
            bool all_blocks = true;
            for (Mask b : supplied.blocks())
                if (!is_set_of_indifference(*mu, b, opt.tolerance)) all_blocks = false;
            report(all_blocks, "supplied blocks are sets of indifference");
            std::cout << "interadditive along the supplied partition: "
                      << (is_interadditive(*mu, supplied, opt.tolerance) ? "yes" : "no") << "\n";
        }
    }
    return failures == 0 ? kExitOk : kExitValidation;
}

int cmd_bench(const CommonOptions& opt, int n, const std::vector<int>& block_sizes, int batch) {
    if (n <= 0) throw ParseError("bench needs --n");
    int total = 0;
    for (int s : block_sizes) total += s;
    if (total != n) throw ParseError("block sizes must sum to n");

    GroundSet ground(n);
    std::vector<Mask> blocks;
    int offset = 0;
    for (int s : block_sizes) {
        Mask b = 0;
        for (int i = 0; i < s; ++i) b |= element_mask(offset + i);
        blocks.push_back(b);
        offset += s;
    }
    IndifferencePartition partition(ground, std::move(blocks));

    const std::uint64_t compressed_count = storage_count(partition);
    const std::uint64_t dense_count = n < 64 ? (std::uint64_t{1} << n) - 2 : ~std::uint64_t{0};
    std::cout << "coefficients: " << dense_count << " dense vs " << compressed_count
              << " compressed\n";

    Rng rng(opt.seed);
    PSymmetricCapacity psym = random_psym_capacity(ground, partition, rng);
    std::vector<ScoreVector> scores;
    scores.reserve(static_cast<size_t>(batch));
    for (int i = 0; i < batch; ++i) scores.push_back(random_scores(n, rng));

    using Clock = std::chrono::steady_clock;
    double compressed_sum = 0;
    const auto t0 = Clock::now();
    {
        ScopedDenseBan ban;  // the compressed path must not densify
        const PSymmetricCapacity m = psym_mobius(psym);
        for (const ScoreVector& f : scores) compressed_sum += choquet_psym_mobius(m, f);
    }
    const auto t1 = Clock::now();
    const double compressed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    std::cout << "compressed integration: " << batch << " scores in " << fmt(compressed_ms)
              << " ms (checksum " << fmt(compressed_sum) << ")\n";

    if (n <= kMaxDenseElements && (n <= kAutoDensifyLimit || opt.densify)) {
        const Capacity dense = expand(psym, opt.tolerance);
        double dense_sum = 0;
        const auto t2 = Clock::now();
        for (const ScoreVector& f : scores) dense_sum += choquet(dense, f, opt.tolerance);
        const auto t3 = Clock::now();
        const double dense_ms = std::chrono::duration<double, std::milli>(t3 - t2).count();
        std::cout << "dense integration: " << batch << " scores in " << fmt(dense_ms)
                  << " ms (checksum " << fmt(dense_sum) << ")\n";
        std::cout << "max deviation between routes: "
                  << fmt(std::abs(dense_sum - compressed_sum) / batch) << " (mean)\n";
    } else {
        std::cout << "dense comparison skipped (n = " << n << "; pass --densify for n <= "
                  << kMaxDenseElements << ")\n";
    }
    return kExitOk;
}

int cmd_compress(const CommonOptions& opt, const std::string& partition_path) {
    const MeasureFile file = MeasureFile::load(opt.input);
    if (!file.dense || file.representation != Repr::capacity)
        throw ParseError("compress expects a dense capacity file");
    const Capacity mu = validate_capacity(file.to_set_function(), opt.tolerance);
    const IndifferencePartition coarsest = coarsest_partition(mu, opt.tolerance);
    const IndifferencePartition partition =
        partition_path.empty() ? coarsest : load_partition(partition_path, mu.ground());

    MeasureFile out = MeasureFile::from_psym(compress(mu, partition, opt.tolerance));
    if (partition.p() != coarsest.p())
        out.note = "supplied partition has p = " + std::to_string(partition.p()) +
                   "; the coarsest indifference partition has p = " + std::to_string(coarsest.p());
    if (opt.output.empty()) throw ParseError("compress needs --output");
    out.save(opt.output);
    std::cout << "p = " << partition.p() << ", stored " << out.matrix.size() << " entries ("
              << storage_count(partition) << " free)\n";
    std::cout << "wrote " << opt.output << "\n";
    return kExitOk;
}

int cmd_expand(const CommonOptions& opt) {
    const MeasureFile file = MeasureFile::load(opt.input);
    if (file.dense) throw ParseError("expand expects a psym file");
    if (file.ground.size() > kAutoDensifyLimit && !opt.densify)
        throw GuardExceeded("expanding n = " + std::to_string(file.ground.size()) +
                            " needs an explicit --densify");
    PSymmetricCapacity psym = file.to_psym();
    if (psym.tag() != Repr::capacity) psym = psym_convert(psym, Repr::capacity);
    const Capacity dense = expand(psym, opt.tolerance);

    MeasureFile out = MeasureFile::from_dense(dense.ground(), Repr::capacity, dense.values());
    out.note = "expanded from compressed storage";
    if (opt.output.empty()) throw ParseError("expand needs --output");
    out.save(opt.output);
    std::cout << "wrote " << opt.output << "\n";
    return kExitOk;
}

int cmd_dual(const CommonOptions& opt) {
    MeasureFile file = MeasureFile::load(opt.input);
    if (file.representation != Repr::capacity)
        throw ParseError("dual expects a capacity file");
    if (file.dense) {
        const Capacity mu = validate_capacity(file.to_set_function(), opt.tolerance);
        file.values = dual(mu, opt.tolerance).values();
    } else {
        PSymmetricCapacity psym = file.to_psym();
        psym.check_capacity_invariants(opt.tolerance);
        file.matrix = dual_psym(psym).matrix();
    }
    file.note = "dual measure";
    if (!opt.output.empty()) {
        file.save(opt.output);
        std::cout << "wrote " << opt.output << "\n";
    } else {
        std::cout << file.serialize();
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"capax: fuzzy measures (capacities), compressed p-symmetric storage, "
                 "Choquet integration"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string to_name, scores_path, partition_path;
    bool decompose_flag = false;
    int bench_n = 0, bench_batch = 1000;
    std::vector<int> bench_blocks;

    auto add_common = [&](CLI::App* cmd, bool needs_input = true) {
        if (needs_input) cmd->add_option("--input", opt.input, "input measure file")->required();
        cmd->add_option("--output", opt.output, "output file");
        cmd->add_option("--tolerance", opt.tolerance, "comparison tolerance");
        cmd->add_flag("--rational", opt.rational, "exact rational arithmetic for transforms");
        cmd->add_flag("--densify", opt.densify, "allow dense work past n = 16");
        cmd->add_option("--seed", opt.seed, "PRNG seed for randomized batteries");
    };

    CLI::App* transform = app.add_subcommand("transform", "convert between representations");
    add_common(transform);
    transform->add_option("--to", to_name, "target representation")
        ->required()
        ->check(CLI::IsMember({"capacity", "mobius", "interaction"}));

    CLI::App* detect = app.add_subcommand("detect", "find the coarsest indifference partition");
    add_common(detect);

    CLI::App* integrate = app.add_subcommand("integrate", "Choquet integral of a score vector");
    add_common(integrate);
    integrate->add_option("--scores", scores_path, "scores file")->required();
    integrate->add_flag("--decompose", decompose_flag, "report the block decomposition");

    CLI::App* verify = app.add_subcommand("verify", "check measure properties");
    add_common(verify);
    verify->add_option("--partition", partition_path, "partition file for indifference checks");

    CLI::App* bench = app.add_subcommand("bench", "compressed vs dense coefficient counts and timing");
    add_common(bench, false);
    bench->add_option("--n", bench_n, "ground set size")->required();
    bench->add_option("--blocks", bench_blocks, "block sizes, e.g. --blocks 10 10")->required();
    bench->add_option("--batch", bench_batch, "number of random score vectors");

    CLI::App* compress_cmd = app.add_subcommand("compress", "store a capacity as a psym matrix");
    add_common(compress_cmd);
    compress_cmd->add_option("--partition", partition_path,
                             "partition file (defaults to the detected coarsest)");

    CLI::App* expand_cmd = app.add_subcommand("expand", "densify a psym capacity");
    add_common(expand_cmd);

    CLI::App* dual_cmd = app.add_subcommand("dual", "conjugate measure");
    add_common(dual_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        opt.tolerance = tolerance_from_env(opt.tolerance);
        if (transform->parsed()) return cmd_transform(opt, to_name);
        if (detect->parsed()) return cmd_detect(opt);
        if (integrate->parsed()) return cmd_integrate(opt, scores_path, decompose_flag);
        if (verify->parsed()) return cmd_verify(opt, partition_path);
        if (bench->parsed()) return cmd_bench(opt, bench_n, bench_blocks, bench_batch);
        if (compress_cmd->parsed()) return cmd_compress(opt, partition_path);
        if (expand_cmd->parsed()) return cmd_expand(opt);
        if (dual_cmd->parsed()) return cmd_dual(opt);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}
