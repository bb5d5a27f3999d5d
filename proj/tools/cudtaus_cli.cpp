/* Copyright 2026 The cudtaus Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Command-line front end: search for generators, compute t-value profiles
// and orthogonal multiplicities, dump driving sequences, run the MCQMC
// experiments, and verify the built-in reference tables.
//
// Exit codes: 0 success, 1 validation failure, 2 verification mismatch,
// 3 configuration error (e.g. a (b, m) outside the built-in factorizations).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cudtaus/cud_search.hpp"
#include "cudtaus/experiment_runner.hpp"
#include "cudtaus/io.hpp"
#include "cudtaus/reference_data.hpp"

namespace {

using namespace cudtaus;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitConfiguration = 3;

// Output sink: stdout by default, a file when --out is given.
class OutputSink {
  public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::trunc);
            if (!file_) throw std::invalid_argument("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

struct SearchArgs {
    unsigned b = 4;
    unsigned m = 2;
    unsigned smax = 20;
    bool keep_all = false;
    bool oracle_check = false;
    unsigned threads = 0;
    std::string out;
    std::string cache_dir;
};

template <unsigned B>
int run_search(const SearchArgs& args) {
    SearchOptions opt;
    opt.s_max = args.smax;
    opt.keep_all = args.keep_all;
    opt.threads = args.threads;
    if (!args.cache_dir.empty()) opt.cache_dir = std::filesystem::path(args.cache_dir);
    opt.progress = [](std::uint64_t done, std::uint64_t total) {
        std::cerr << "\rsubtree " << done << "/" << total << std::flush;
        if (done == total) std::cerr << '\n';
    };
    const auto result = run_algorithm1<B>(args.m, opt);

    if (args.oracle_check && field_power<B>(args.m) <= 3125) {
        for (const auto& r : result.results) {
            const auto params = GeneratorParams<B>::create(r.p, r.q, r.sigma, args.m + 2);
            const auto g = korobov_matrices(r.p, r.q, 4);
            for (unsigned s = 2; s <= 4; ++s) {
                const auto pts = overlapping_net(params, s);
                const int oracle = oracle_t_value(pts, B, args.m, s, params.w);
                if (oracle != t_value(g, s)) {
                    std::cerr << "oracle mismatch: m=" << args.m << " s=" << s
                              << " rank=" << t_value(g, s) << " oracle=" << oracle << '\n';
                    return kExitMismatch;
                }
            }
        }
        std::cerr << "oracle check passed for " << result.results.size() << " result(s)\n";
    }

    OutputSink sink(args.out);
    std::ostream& out = sink.stream();
    out << "# b=" << args.b << " m=" << args.m << " t3zero_count=" << result.step5_count
        << " paths=" << result.path_count << " pairs=" << result.distinct_pairs
        << " primitive=" << result.primitive_pairs << " step4=" << result.step4_pairs << '\n';
    for (const auto& r : result.results) {
        ParamRecord rec;
        rec.b = B;
        rec.w = default_digit_count<B>();
        rec.p_tokens = r.p.to_token_string();
        rec.q_tokens = r.q.to_token_string();
        rec.sigma = r.sigma;
        out << '\n' << format_param_record(rec);
        out << "# t-values s=1.." << args.smax << ":";
        for (unsigned s = 1; s <= args.smax; ++s) out << ' ' << r.profile.at(s);
        out << '\n';
    }
    return kExitOk;
}

struct TValueArgs {
    std::string params_path;
    std::size_t index = 0;
    unsigned b = 0;
    std::string p_tokens, q_tokens;
    std::uint64_t sigma = 0;
    unsigned smax = 20;
    bool oracle_check = false;
    std::string out;
};

template <unsigned B>
int run_tvalue(const TValueArgs& args) {
    Poly<B> p, q;
    std::uint64_t sigma = args.sigma;
    if (!args.params_path.empty()) {
        const auto records = load_param_records(args.params_path);
        if (args.index >= records.size()) throw std::invalid_argument("params index out of range");
        const auto params = params_from_record<B>(records[args.index]);
        p = params.p;
        q = params.q;
        sigma = params.sigma;
    } else {
        p = Poly<B>::parse(args.p_tokens);
        q = Poly<B>::parse(args.q_tokens);
    }
    const unsigned m = static_cast<unsigned>(p.degree());
    const auto g = korobov_matrices(p, q, args.smax);
    const auto prof = t_value_profile(g, args.smax);

    if (args.oracle_check) {
        if (field_power<B>(m) > 3125)
            throw std::invalid_argument("--oracle-check needs b^m <= 3125");
        if (sigma == 0) sigma = discrete_log(q, p);
        const auto params = GeneratorParams<B>::create(p, q, sigma, m + 2);
        for (unsigned s = 2; s <= std::min(4u, args.smax); ++s) {
            const auto pts = overlapping_net(params, s);
            const int oracle = oracle_t_value(pts, B, m, s, params.w);
            if (oracle != prof.at(s)) {
                std::cerr << "oracle mismatch at s=" << s << ": rank=" << prof.at(s)
                          << " oracle=" << oracle << '\n';
                return kExitMismatch;
            }
        }
        std::cerr << "oracle check passed\n";
    }

    OutputSink sink(args.out);
    std::ostream& out = sink.stream();
    out << m;
    for (unsigned s = 1; s <= args.smax; ++s) out << ',' << prof.at(s);
    out << '\n';
    return kExitOk;
}

struct MultiplicityArgs {
    unsigned b = 2;
    unsigned m = 2;
    std::string p_tokens;
    bool require_positive = false;
    std::string out;
};

template <unsigned B>
int run_multiplicity(const MultiplicityArgs& args) {
    OutputSink sink(args.out);
    std::ostream& out = sink.stream();
    if (!args.p_tokens.empty()) {
        const Poly<B> p = Poly<B>::parse(args.p_tokens);
        out << orthogonal_multiplicity(p) << '\n';
        return kExitOk;
    }
    const auto hist = multiplicity_histogram<B>(args.m);
    out << "M,count\n";
    std::uint64_t total = 0;
    for (const auto& [mult, count] : hist) {
        out << mult << ',' << count << '\n';
        total += count;
    }
    std::cerr << "irreducibles: " << total << " (expected "
              << monic_irreducible_count(B, args.m) << ")\n";
    if (args.require_positive && hist.count(0) > 0) {
        std::cerr << "found " << hist.at(0) << " irreducible(s) with multiplicity 0\n";
        return kExitMismatch;
    }
    return kExitOk;
}

struct GenArgs {
    std::string params_path;
    std::size_t index = 0;
    std::uint64_t n = 0;
    unsigned s = 0;
    std::string scheme = "loops";
    std::optional<std::uint64_t> shift_seed;
    std::string seed_digits;
    std::string out;
};

template <unsigned B>
int run_gen(const GenArgs& args, const ParamRecord& rec) {
    const auto params = params_from_record<B>(rec);
    OutputSink sink(args.out);
    std::ostream& out = sink.stream();
    std::optional<std::vector<unsigned>> seed;
    if (!args.seed_digits.empty()) {
        std::istringstream ls(args.seed_digits);
        std::vector<unsigned> digits;
        std::string tok;
        while (ls >> tok) digits.push_back(parse_element_token<B>(tok).code());
        seed = digits;
    }
    if (args.s == 0) {
        // raw u_i stream
        const std::uint64_t count = args.n == 0 ? params.period() : args.n;
        const auto stream = full_period_numerators(params, seed);
        const double scale = static_cast<double>(field_power<B>(params.w));
        for (std::uint64_t i = 0; i < count; ++i) {
            const std::uint64_t v = stream[i % stream.size()];
            out << format_stream_value(static_cast<double>(v) / scale, B, params.w) << '\n';
        }
        return kExitOk;
    }
    const BlockScheme scheme =
        args.scheme == "balanced" ? BlockScheme::kBalanced : BlockScheme::kLoops;
    std::vector<std::uint64_t> shift;
    if (args.shift_seed) {
        std::mt19937_64 rng(*args.shift_seed);
        shift = draw_shift<B>(rng, args.s, params.w);
    }
    const std::optional<std::uint64_t> count =
        args.n == 0 ? std::nullopt : std::optional<std::uint64_t>(args.n);
    const auto seq = assemble_driving_sequence(params, args.s, scheme, shift, count);
    for (std::size_t i = 0; i < seq.points.size(); ++i) {
        for (unsigned r = 0; r < args.s; ++r) {
            if (r > 0) out << ',';
            out << format_stream_value(seq.value(i, r), B, params.w);
        }
        out << '\n';
    }
    return kExitOk;
}

int run_verify_tables(const std::vector<unsigned>& which, bool extended, unsigned threads) {
    bool all_ok = true;
    auto note = [](const std::string& line) { std::cerr << line << '\n'; };
    auto report_lines = [&](const VerifyReport& report, const std::string& label) {
        for (const auto& line : report.checks) std::cout << "ok " << line << '\n';
        for (const auto& line : report.mismatches) std::cout << "MISMATCH " << line << '\n';
        if (!report.ok()) all_ok = false;
        std::cerr << label << (report.ok() ? " passed" : " FAILED") << '\n';
    };
    for (unsigned which_table : which) {
        switch (which_table) {
            case 1: report_lines(verify_survivor_counts(extended, threads, note), "counts"); break;
            case 2: report_lines(verify_reference_parameters(), "parameters"); break;
            case 3: report_lines(verify_reference_profiles(extended, note), "profiles"); break;
            default: throw std::invalid_argument("verify-tables: --which takes 1, 2, or 3");
        }
    }
    return all_ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tausworthe generator search over small finite fields and "
                 "Markov chain QMC driving sequences"};
    app.require_subcommand(1);

    SearchArgs search_args;
    auto* search =
        app.add_subcommand("search", "search maximal-period generators with t-value zero at s = 3");
    search->add_option("--b", search_args.b, "field order (2,3,4,5)")->required();
    search->add_option("--m", search_args.m, "degree of the modulus")->required();
    search->add_option("--smax", search_args.smax, "largest dimension profiled (default 20)");
    search->add_flag("--keep-all", search_args.keep_all, "emit every survivor, not just the best");
    search->add_flag("--oracle-check", search_args.oracle_check,
                     "cross-validate t-values against the brute-force oracle (b^m <= 3125)");
    search->add_option("--threads", search_args.threads, "worker count (0 = hardware)");
    search->add_option("--out", search_args.out, "write results to a file instead of stdout");
    search->add_option("--cache-dir", search_args.cache_dir, "primitivity cache directory");

    TValueArgs tvalue_args;
    auto* tvalue = app.add_subcommand("tvalue", "t-value profile of one (p, q) pair");
    tvalue->add_option("--params", tvalue_args.params_path, "parameter file");
    tvalue->add_option("--index", tvalue_args.index, "block index in the parameter file");
    tvalue->add_option("--b", tvalue_args.b, "field order (with --p/--q)");
    tvalue->add_option("--p", tvalue_args.p_tokens, "modulus coefficients, constant first");
    tvalue->add_option("--q", tvalue_args.q_tokens, "multiplier coefficients, constant first");
    tvalue->add_option("--sigma", tvalue_args.sigma, "step size (optional)");
    tvalue->add_option("--smax", tvalue_args.smax, "largest dimension (default 20)");
    tvalue->add_flag("--oracle-check", tvalue_args.oracle_check,
                     "cross-validate against the brute-force oracle");
    tvalue->add_option("--out", tvalue_args.out, "output file");

    MultiplicityArgs mult_args;
    auto* mult = app.add_subcommand("multiplicity", "orthogonal multiplicities M(p)");
    mult->add_option("--b", mult_args.b, "field order")->required();
    mult->add_option("--m", mult_args.m, "degree (histogram over all monic irreducibles)");
    mult->add_option("--p", mult_args.p_tokens, "single polynomial instead of a histogram");
    mult->add_flag("--require-positive", mult_args.require_positive,
                   "exit 2 when any irreducible has M(p) = 0");
    mult->add_option("--out", mult_args.out, "output file");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "dump generator outputs or driving-sequence points");
    gen->add_option("--params", gen_args.params_path, "parameter file")->required();
    gen->add_option("--index", gen_args.index, "block index in the parameter file");
    gen->add_option("--n", gen_args.n, "output count (default: one full period)");
    gen->add_option("--s", gen_args.s, "emit s-dimensional points instead of the raw stream");
    gen->add_option("--scheme", gen_args.scheme, "block scheme: loops (default) or balanced")
        ->check(CLI::IsMember({"loops", "balanced"}));
    std::uint64_t shift_seed_raw = 0;
    auto* shift_opt = gen->add_option("--shift-seed", shift_seed_raw,
                                      "apply a random digital shift drawn from this seed");
    gen->add_option("--seed-digits", gen_args.seed_digits,
                    "initial m state digits (element tokens)");
    gen->add_option("--out", gen_args.out, "output file");

    std::string experiment_config;
    std::string experiment_out;
    unsigned experiment_threads = 0;
    auto* experiment = app.add_subcommand("experiment", "run a configured MCQMC experiment");
    experiment->add_option("--config", experiment_config, "flat key-value config file")->required();
    experiment->add_option("--out", experiment_out, "output CSV file");
    experiment->add_option("--threads", experiment_threads, "worker count (0 = hardware)");

    std::vector<unsigned> verify_which = {1, 2, 3};
    bool verify_extended = false;
    unsigned verify_threads = 0;
    auto* verify = app.add_subcommand("verify-tables", "recompute the built-in reference tables");
    verify->add_option("--which", verify_which,
                       "tables to verify (1 counts, 2 parameters, 3 profiles)");
    verify->add_flag("--extended", verify_extended, "include the long-running rows");
    verify->add_option("--threads", verify_threads, "worker count (0 = hardware)");

    try {
        app.parse(argc, argv);

        if (search->parsed())
            return with_field_order(
                search_args.b, [&](auto tag) { return run_search<decltype(tag)::value>(search_args); });
        if (tvalue->parsed()) {
            unsigned b = tvalue_args.b;
            if (!tvalue_args.params_path.empty()) {
                const auto records = load_param_records(tvalue_args.params_path);
                if (tvalue_args.index >= records.size())
                    throw std::invalid_argument("params index out of range");
                b = records[tvalue_args.index].b;
            } else if (b == 0 || tvalue_args.p_tokens.empty() || tvalue_args.q_tokens.empty()) {
                throw std::invalid_argument("tvalue needs --params or --b with --p and --q");
            }
            return with_field_order(
                b, [&](auto tag) { return run_tvalue<decltype(tag)::value>(tvalue_args); });
        }
        if (mult->parsed())
            return with_field_order(
                mult_args.b, [&](auto tag) { return run_multiplicity<decltype(tag)::value>(mult_args); });
        if (gen->parsed()) {
            if (shift_opt->count() > 0) gen_args.shift_seed = shift_seed_raw;
            const auto records = load_param_records(gen_args.params_path);
            if (gen_args.index >= records.size())
                throw std::invalid_argument("params index out of range");
            const ParamRecord rec = records[gen_args.index];
            return with_field_order(
                rec.b, [&](auto tag) { return run_gen<decltype(tag)::value>(gen_args, rec); });
        }
        if (experiment->parsed()) {
            const auto cfg = load_experiment_config(experiment_config);
            OutputSink sink(experiment_out);
            run_experiment_from_config(cfg, sink.stream(), experiment_threads);
            std::cerr << cfg.get("experiment") << " experiment finished (driver "
                      << cfg.get("driver") << ", n=" << cfg.get("n") << ", r="
                      << cfg.get_or("r", "1") << ")\n";
            return kExitOk;
        }
        if (verify->parsed()) return run_verify_tables(verify_which, verify_extended, verify_threads);
        return kExitValidation;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    } catch (const cudtaus::ConfigurationError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfiguration;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}
