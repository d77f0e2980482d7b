#include "ffdyn/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "ffdyn/bounds.hpp"
#include "ffdyn/dynamics.hpp"
#include "ffdyn/reference.hpp"
#include "ffdyn/wreath.hpp"

namespace ffdyn {

namespace {

std::string float_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string rat_cols(const Rat& r) {
    return Int(r.get_num()).get_str() + "," + Int(r.get_den()).get_str();
}

void comment_line(std::ostream& os, const RunConfig& cfg) {
    os << "# ffdyn " << kVersion << " | " << cfg.echo() << "\n";
}

std::pair<int, int> parse_range(const std::string& text, const char* what) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const int v = std::stoi(text);
            return {v, v};
        }
        const int lo = std::stoi(text.substr(0, colon));
        const int hi = std::stoi(text.substr(colon + 1));
        if (lo > hi) throw ValidationError(std::string(what) + " range is empty: " + text);
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw ValidationError(std::string("malformed ") + what + " range: " + text);
    }
}

MapKind parse_kind(const std::string& s) {
    if (s == "polynomial" || s == "poly") return MapKind::polynomial;
    if (s == "rational" || s == "rat") return MapKind::rational;
    throw ValidationError("kind must be 'polynomial' or 'rational', got '" + s + "'");
}

void warn_if_wild(const RunConfig& cfg, std::uint32_t p, int d, std::ostream& diag) {
    if (p <= std::uint32_t(d))
        diag << "warning: gcd(q, d!) != 1 for p=" << p << ", d=" << d
             << "; the decay guarantee for mean periodic proportions needs gcd(q, d!) = 1, "
                "so these averages are exploratory\n";
    (void)cfg;
}

// --- subcommand bodies ------------------------------------------------------

void cmd_avg_periodic(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    warn_if_wild(cfg, cfg.p, cfg.d, diag);
    comment_line(out, cfg);
    out << "p,j,d,kind,mode,map_count,mean_num,mean_den,se2_num,se2_den,n_samples,seed,"
           "mean_float,stderr_float\n";
    for (int j = cfg.j_lo; j <= cfg.j_hi; ++j) {
        const FieldCtx k = FieldCtx::make(cfg.p, std::uint32_t(j));
        EnsembleSpec spec{cfg.p, std::uint32_t(j), cfg.d, cfg.kind, std::nullopt};
        std::string mode = cfg.mode;
        if (mode == "auto")
            mode = count_maps(Int(k.q()), cfg.d, cfg.kind) <= Int(cfg.budget) ? "exhaustive"
                                                                              : "sampled";
        if (mode == "sampled") spec.sampled = SampledMode{cfg.samples, cfg.seed};
        const EnsembleReport rep = average_periodic(k, spec, cfg.workers, cfg.budget);
        out << cfg.p << "," << j << "," << cfg.d << "," << to_string(cfg.kind) << "," << mode
            << "," << rep.map_count.get_str() << "," << rat_cols(rep.mean) << ","
            << rat_cols(rep.se2) << "," << rep.n_samples << "," << rep.seed << ","
            << float_str(rep.mean.get_d()) << "," << float_str(rep.stderr_value()) << "\n";
    }
}

void cmd_verify_counts(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    comment_line(out, cfg);
    out << "q,d,kind,formula_count,enumerated_count,status\n";
    for (int j = cfg.j_lo; j <= cfg.j_hi; ++j) {
        const FieldCtx k = FieldCtx::make(cfg.p, std::uint32_t(j));
        for (int d = cfg.d_lo; d <= cfg.d_hi; ++d) {
            for (const MapKind kind : {MapKind::polynomial, MapKind::rational}) {
                const Int formula = count_maps(Int(k.q()), d, kind);
                if (formula > Int(cfg.budget)) {
                    out << k.q() << "," << d << "," << to_string(kind) << ","
                        << formula.get_str() << ",0,SKIPPED\n";
                    continue;
                }
                std::uint64_t n = 0;
                for_each_map(k, d, kind, [&n](const RatMap&) { ++n; });
                out << k.q() << "," << d << "," << to_string(kind) << "," << formula.get_str()
                    << "," << n << "," << (Int(n) == formula ? "PASS" : "FAIL") << "\n";
            }
        }
    }
}

void cmd_fix_wreath(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    comment_line(out, cfg);
    out << "d,n,fix_num,fix_den,bound_num,bound_den,method,bound_holds\n";
    for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
        FixReport rep;
        bool holds;
        if (cfg.method == "bruteforce") {
            rep = fix_bruteforce(cfg.d, n);
            holds = rep.fix() < rep.bound;
        } else if (cfg.method == "recursion") {
            rep = fix_recursive(cfg.d, n);
            holds = check_fix_bound(cfg.d, n).holds;
        } else {
            throw ValidationError("method must be 'recursion' or 'bruteforce'");
        }
        const char* method = rep.method == FixMethod::bruteforce ? "bruteforce"
                             : rep.exact()                       ? "recursion"
                                                                 : "recursion_upper";
        out << cfg.d << "," << n << "," << rat_cols(rep.fix()) << "," << rat_cols(rep.bound)
            << "," << method << "," << (holds ? 1 : 0) << "\n";
    }
}

void cmd_image_decay(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    if (cfg.map_text.empty()) throw ValidationError("image-decay requires --map");
    const FieldCtx k = FieldCtx::make(cfg.p, std::uint32_t(cfg.j_lo));
    const RatMap map = RatMap::parse(k, cfg.map_text);
    comment_line(out, cfg);
    out << "q,d,map,step,image_size\n";
    const auto sizes = image_sequence(map, std::uint32_t(cfg.n));
    for (std::size_t s = 0; s < sizes.size(); ++s)
        out << k.q() << "," << map.d << "," << map.to_text() << "," << s << "," << sizes[s]
            << "\n";
}

void cmd_bound_check(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const FieldCtx k = FieldCtx::make(cfg.p, std::uint32_t(cfg.j_lo));
    EnsembleSpec spec{cfg.p, std::uint32_t(cfg.j_lo), cfg.d, cfg.kind, std::nullopt};
    if (cfg.mode == "sampled") spec.sampled = SampledMode{cfg.samples, cfg.seed};
    comment_line(out, cfg);
    if (cfg.survey) {
        const BoundSurvey s = bound_survey(k, spec, cfg.n, cfg.workers, cfg.budget);
        out << "q,d,n,map_count,frac_abs_num,frac_abs_den,frac_rel_num,frac_rel_den,"
               "lhs_min_num,lhs_min_den,lhs_max_num,lhs_max_den,"
               "bin0,bin1,bin2,bin3,bin4,bin5,bin6,bin7,bin8,bin9\n";
        out << k.q() << "," << cfg.d << "," << cfg.n << "," << s.map_count << ","
            << rat_cols(s.frac_abs()) << "," << rat_cols(s.frac_rel()) << ","
            << rat_cols(s.lhs_rel_min) << "," << rat_cols(s.lhs_rel_max);
        for (auto b : s.lhs_hist) out << "," << b;
        out << "\n";
        return;
    }
    out << "q,d,n,map_id,image_size,fix_num,fix_den,lhs_rel_num,lhs_rel_den,"
           "satisfied_abs,satisfied_rel\n";
    auto row = [&](const RatMap& m) {
        const BoundCheck c = bound_check(m, cfg.n);
        out << c.q << "," << c.d << "," << c.n << "," << m.to_text() << "," << c.image_size
            << "," << rat_cols(c.assumed_fix) << "," << rat_cols(c.lhs_relative) << ","
            << (c.satisfied_abs ? 1 : 0) << "," << (c.satisfied_rel ? 1 : 0) << "\n";
    };
    if (!spec.sampled) {
        if (count_maps(Int(k.q()), cfg.d, cfg.kind) > Int(cfg.budget))
            throw BudgetError("bound-check ensemble exceeds budget; use --mode sampled");
        for_each_map(k, cfg.d, cfg.kind, row);
    } else {
        if (spec.sampled->n_samples > cfg.budget) throw BudgetError("samples exceed budget");
        for (std::uint64_t i = 0; i < spec.sampled->n_samples; ++i) row(sample_map(k, spec, i));
    }
}

void cmd_bad_locus(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const FieldCtx k = FieldCtx::make(cfg.p, std::uint32_t(cfg.j_lo));
    const BadLocusReport rep = bad_locus_report(k, cfg.d, cfg.workers, cfg.budget);
    comment_line(out, cfg);
    out << "p,j,d,tuple_count,non_generating,bad_reduction,bound\n";
    out << cfg.p << "," << cfg.j_lo << "," << cfg.d << "," << rep.tuple_count.get_str() << ","
        << rep.non_generating.get_str() << "," << rep.bad_reduction.get_str() << ","
        << rep.bound.get_str() << "\n";
}

}  // namespace

std::string RunConfig::echo() const {
    std::ostringstream os;
    os << "cmd=" << subcommand << " p=" << p << " j=" << j_lo << ":" << j_hi;
    if (subcommand == "verify-counts")
        os << " d=" << d_lo << ":" << d_hi;
    else
        os << " d=" << d;
    os << " kind=" << to_string(kind) << " n=" << n;
    if (subcommand == "fix-wreath") os << " n_range=" << n_lo << ":" << n_hi << " method=" << method;
    os << " mode=" << mode << " samples=" << samples << " seed=" << seed;
    if (subcommand == "image-decay") os << " map=\"" << map_text << "\"";
    if (subcommand == "bound-check") os << " survey=" << (survey ? 1 : 0);
    // worker count deliberately omitted: output bytes are identical for every
    // worker count, and the echo must not break that
    os << " budget=" << budget;
    return os.str();
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    try {
        if (cfg.subcommand == "avg-periodic")
            cmd_avg_periodic(cfg, out, diag);
        else if (cfg.subcommand == "verify-counts")
            cmd_verify_counts(cfg, out, diag);
        else if (cfg.subcommand == "fix-wreath")
            cmd_fix_wreath(cfg, out, diag);
        else if (cfg.subcommand == "image-decay")
            cmd_image_decay(cfg, out, diag);
        else if (cfg.subcommand == "bound-check")
            cmd_bound_check(cfg, out, diag);
        else if (cfg.subcommand == "bad-locus")
            cmd_bad_locus(cfg, out, diag);
        else
            throw ValidationError("unknown subcommand '" + cfg.subcommand + "'");
    } catch (const BudgetError& e) {
        diag << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

namespace {

std::vector<std::string> config_file_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line is not key=value: '" + line + "'");
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        tokens.push_back("--" + strip(line.substr(0, eq)));
        tokens.push_back(strip(line.substr(eq + 1)));
    }
    return tokens;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    RunConfig cfg;
    std::string j_arg = "1", d_range_arg = "2:3", n_range_arg = "1", kind_arg = "rational";
    std::string config_path;

    CLI::App app{"exact periodic-point statistics of polynomial and rational maps over finite "
                 "fields"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--p", cfg.p, "prime characteristic")->capture_default_str();
        sub->add_option("--j,--j-range", j_arg, "extension degree, or inclusive range lo:hi")
            ->capture_default_str();
        sub->add_option("--out", cfg.out, "output CSV path (default: stdout)");
        sub->add_option("--workers", cfg.workers, "worker thread count")->capture_default_str();
        sub->add_option("--budget", cfg.budget, "max maps / tuples enumerated per run")
            ->capture_default_str();
        sub->add_option("--config", config_path, "key=value config file (flags override)");
        for (auto* opt : sub->get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    };
    auto add_kind = [&](CLI::App* sub) {
        sub->add_option("--kind", kind_arg, "polynomial | rational")->capture_default_str();
    };
    auto add_sampling = [&](CLI::App* sub) {
        sub->add_option("--mode", cfg.mode, "auto | exhaustive | sampled")->capture_default_str();
        sub->add_option("--samples", cfg.samples, "sample count in sampled mode")
            ->capture_default_str();
        sub->add_option("--seed", cfg.seed, "master seed for sampled mode")->capture_default_str();
    };

    CLI::App* avg = app.add_subcommand("avg-periodic", "mean periodic proportion per j");
    avg->add_option("--d", cfg.d, "map degree")->capture_default_str();
    add_kind(avg);
    add_sampling(avg);
    add_common(avg);

    CLI::App* vc = app.add_subcommand("verify-counts", "enumerated map counts vs closed forms");
    vc->add_option("--d-range", d_range_arg, "degree range lo:hi")->capture_default_str();
    add_common(vc);

    CLI::App* fw = app.add_subcommand("fix-wreath", "fixed-point proportions of [S_d]^n");
    fw->add_option("--d", cfg.d, "symmetric group degree")->capture_default_str();
    fw->add_option("--n,--n-range", n_range_arg, "iteration depth, or range lo:hi")
        ->capture_default_str();
    fw->add_option("--method", cfg.method, "recursion | bruteforce")->capture_default_str();
    add_common(fw);

    CLI::App* im = app.add_subcommand("image-decay", "iterated image sizes of one map");
    im->add_option("--map", cfg.map_text, "map in 'd; f coeffs; g coeffs' text form")->required();
    im->add_option("--n", cfg.n, "max iterate")->capture_default_str();
    add_common(im);

    CLI::App* bc = app.add_subcommand("bound-check", "diagnostic image-size inequality");
    bc->add_option("--d", cfg.d, "map degree")->capture_default_str();
    bc->add_option("--n", cfg.n, "iterate depth")->capture_default_str();
    bc->add_flag("--survey", cfg.survey, "emit one summary row instead of per-map rows");
    add_kind(bc);
    add_sampling(bc);
    add_common(bc);

    CLI::App* bl = app.add_subcommand("bad-locus", "exhaustive coefficient-tuple statistics");
    bl->add_option("--d", cfg.d, "map degree")->capture_default_str();
    add_common(bl);

    // manual pre-scan so config values become defaults that later flags override
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        if (args.empty()) throw CLI::CallForHelp();
        for (std::size_t i = 0; i + 1 < args.size(); ++i)
            if (args[i] == "--config") config_path = args[i + 1];
        if (!config_path.empty()) {
            const auto extra = config_file_tokens(config_path);
            args.insert(args.begin() + 1, extra.begin(), extra.end());
        }
        std::vector<const char*> cargv{"ffdyn"};
        for (const auto& a : args) cargv.push_back(a.c_str());
        app.parse(int(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        cfg.subcommand = app.get_subcommands().front()->get_name();
        std::tie(cfg.j_lo, cfg.j_hi) = parse_range(j_arg, "j");
        std::tie(cfg.d_lo, cfg.d_hi) = parse_range(d_range_arg, "d");
        std::tie(cfg.n_lo, cfg.n_hi) = parse_range(n_range_arg, "n");
        cfg.kind = parse_kind(kind_arg);
        if (cfg.workers < 1) throw ValidationError("--workers must be >= 1");
        if (cfg.mode != "auto" && cfg.mode != "exhaustive" && cfg.mode != "sampled")
            throw ValidationError("--mode must be auto, exhaustive or sampled");
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (!cfg.out.empty()) {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output file '" << cfg.out << "'\n";
            return 2;
        }
        return run_command(cfg, file, std::cerr);
    }
    return run_command(cfg, std::cout, std::cerr);
}

}  // namespace ffdyn
