#include "cvrep/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "cvrep/codes.hpp"
#include "cvrep/homology.hpp"
#include "cvrep/library.hpp"
#include "cvrep/protocol.hpp"
#include "cvrep/replication.hpp"
#include "cvrep/synthesis.hpp"
#include "cvrep/tolerances.hpp"
#include "json.hpp"

namespace cvrep {

namespace {

/// Thrown for bad flags or unreadable input; maps to exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0 ? 0.0 : v);
    return buf;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read '" + path + "'");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

double parse_entry(const std::string &tok) {
    try {
        auto slash = tok.find('/');
        std::size_t used = 0;
        if (slash == std::string::npos) {
            double v = std::stod(tok, &used);
            if (used != tok.size()) {
                throw std::invalid_argument(tok);
            }
            return v;
        }
        double num = std::stod(tok.substr(0, slash), &used);
        std::size_t used2 = 0;
        std::string den_text = tok.substr(slash + 1);
        double den = std::stod(den_text, &used2);
        if (used != slash || used2 != den_text.size() || den == 0) {
            throw std::invalid_argument(tok);
        }
        return num / den;
    } catch (const std::exception &) {
        throw UsageError("bad matrix entry '" + tok + "'");
    }
}

/// Square matrix, whitespace separated, '#' starts a comment.
MatrixXd parse_matrix_text(const std::string &text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream words(line);
        std::vector<double> row;
        std::string tok;
        while (words >> tok) {
            row.push_back(parse_entry(tok));
        }
        if (!row.empty()) {
            rows.push_back(row);
        }
    }
    const auto n = rows.size();
    if (n == 0) {
        throw UsageError("matrix file is empty");
    }
    MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw UsageError("matrix must be square");
        }
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

std::vector<int> parse_int_list(const std::string &s) {
    std::vector<int> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            out.push_back(v);
        } catch (const std::exception &) {
            throw UsageError("bad integer list '" + s + "'");
        }
    }
    return out;
}

/// "five" for the five-mode code, "six" for the N = 4 graph code, or N >= 4.
struct Selector {
    bool five = false;
    int N = 0;
};

Selector parse_selector(const std::string &s) {
    if (s == "five") {
        return {true, 4};
    }
    if (s == "six") {
        return {false, 4};
    }
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
    } catch (const std::exception &) {
        throw UsageError("selector must be an integer N >= 4, 'five' or 'six'");
    }
    if (n < 4) {
        throw UsageError("codes need N >= 4, got " + s);
    }
    return {false, n};
}

StabilizerCode code_for(const Selector &sel) {
    return sel.five ? build_five_mode_code() : build_general_code(sel.N);
}

int cmd_code_build(const std::string &selector, std::ostream &out) {
    Selector sel = parse_selector(selector);
    StabilizerCode code = code_for(sel);
    MatrixXd g = code.generator_matrix();
    const int r = rank(g, tol::rank);
    const double cross = code.max_cross_product();
    const int expected = sel.five ? 4 : sel.N * (sel.N - 1) / 2 - 1;
    const bool commute = cross <= tol::orthogonality;
    const bool independent = r == g.rows();
    const bool count_ok = g.rows() == expected;
    out << format_matrix(g);
    out << "# modes " << code.n_modes << "\n";
    out << "# generators " << g.rows() << " (x " << code.x_rows.rows() << ", p " << code.p_rows.rows()
        << ", expected " << expected << ")\n";
    out << "# rank " << r << "\n";
    out << "# max |v.w| " << g12(cross) << "\n";
    out << "# commute " << (commute ? "true" : "false") << "\n";
    return commute && independent && count_ok ? exit_ok : exit_fails;
}

int cmd_verify(const std::string &selector, bool homology, const std::string &erase, std::ostream &out) {
    Selector sel = parse_selector(selector);
    if (homology && sel.five) {
        throw UsageError("--homology applies to the general N-vertex codes");
    }
    StabilizerCode code = code_for(sel);
    EdgeBasis basis = edge_basis(sel.N);
    nlohmann::ordered_json report;
    report["code"] = sel.five ? "five" : std::to_string(sel.N);
    report["modes"] = code.n_modes;
    bool all = true;

    if (!erase.empty()) {
        ErasurePattern pattern;
        for (int m : parse_int_list(erase)) {
            if (m < 1 || m > code.n_modes) {
                throw UsageError("erased mode " + std::to_string(m) + " out of range");
            }
            pattern.erased.push_back(m - 1);
        }
        CorrectabilityReport rep = analyze_correctable(code, pattern);
        report["erase"] = parse_int_list(erase);
        report["correctable"] = rep.correctable;
        report["ill_conditioned"] = rep.ill_conditioned;
        all = rep.correctable && !rep.ill_conditioned;
    } else {
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (int v = 1; v <= sel.N; ++v) {
            ErasurePattern pattern = erasure_for_vertex(code, basis, v);
            CorrectabilityReport rep = analyze_correctable(code, pattern);
            std::vector<int> erased;
            for (int m : pattern.erased) {
                erased.push_back(m + 1);
            }
            checks.push_back({{"vertex", v},
                              {"erased", erased},
                              {"correctable", rep.correctable},
                              {"ill_conditioned", rep.ill_conditioned}});
            all = all && rep.correctable && !rep.ill_conditioned;
        }
        report["checks"] = checks;
    }

    if (homology) {
        StabilizerCode hom = build_homological_code(sel.N);
        MatrixXd g1 = code.generator_matrix();
        MatrixXd g2 = hom.generator_matrix();
        double fwd = row_space_residual(g1, g2, tol::rank);
        double back = row_space_residual(g2, g1, tol::rank);
        bool equal = fwd <= tol::rank && back <= tol::rank;
        bool hom_ok = true;
        for (int v = 1; v <= sel.N; ++v) {
            hom_ok = hom_ok && verify_correctability_homological(hom, sel.N, v);
        }
        report["homology"] = {{"row_space_equal", equal},
                              {"residual_graph_in_homological", fwd},
                              {"residual_homological_in_graph", back},
                              {"homological_correctable", hom_ok}};
        all = all && equal && hom_ok;
    }
    report["all_pass"] = all;
    out << report.dump(2) << "\n";
    return all ? exit_ok : exit_fails;
}

int cmd_synth(const std::string &matrix_path, const std::string &error, bool check, const std::string &pivots,
              std::ostream &out, std::ostream &err) {
    if (matrix_path.empty() == error.empty()) {
        throw UsageError("give exactly one of --matrix or --error");
    }
    MatrixXd a;
    SynthesisOptions options;
    if (!error.empty()) {
        ErasureTag tag;
        try {
            tag = parse_erasure_tag(error);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        if (tag == ErasureTag::E1) {
            throw UsageError("E1 has no transformation matrix; use E2, E3 or E4");
        }
        a = decoder_matrix(tag);
        options.wires = surviving_wires(tag);
        if (tag == ErasureTag::E2) {
            // Swap rows 1 and 3 first, matching the hand reduction.
            options.pivot_rows = {2};
        }
    } else {
        a = parse_matrix_text(read_file(matrix_path));
    }
    if (!pivots.empty()) {
        options.pivot_rows.clear();
        for (int p : parse_int_list(pivots)) {
            options.pivot_rows.push_back(p - 1);
        }
    }
    Circuit circuit;
    try {
        circuit = synthesize(a, options);
    } catch (const std::invalid_argument &e) {
        err << "synth: " << e.what() << "\n";
        return exit_fails;
    }
    out << to_text(circuit);
    if (check) {
        double residual = (point_action(circuit) - a).cwiseAbs().maxCoeff();
        bool ok = residual <= 1e-9;
        out << "# check " << (ok ? "ok" : "FAILED") << " residual " << g12(residual) << "\n";
        return ok ? exit_ok : exit_fails;
    }
    return exit_ok;
}

std::vector<ErasureTag> parse_tags(const std::string &list) {
    std::vector<ErasureTag> tags;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            tags.push_back(parse_erasure_tag(item));
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }
    if (tags.empty()) {
        throw UsageError("--errors needs at least one of E1..E4");
    }
    return tags;
}

struct SweepSpec {
    double r_min = 0;
    double r_max = 4;
    int steps = 9;
    std::vector<ErasureTag> errors;
    std::complex<double> alpha;
};

int cmd_fidelity(const SweepSpec &spec, const std::string &homodyne_mode, int shots, std::uint64_t seed,
                 const std::string &gnuplot_path, std::ostream &out) {
    if (!(spec.r_min <= spec.r_max) || spec.steps < 1 || spec.r_min < 0) {
        throw UsageError("need 0 <= r-min <= r-max and steps >= 1");
    }
    if (homodyne_mode != "average" && homodyne_mode != "sampled") {
        throw UsageError("--homodyne must be average or sampled");
    }
    if (shots < 1) {
        throw UsageError("--shots must be positive");
    }
    std::mt19937_64 rng(seed);
    // Fidelity is linear in the state, so the outcome average of per-shot
    // fidelities estimates the fidelity of the averaged output.
    auto simulate = [&](ErasureTag tag, double r) {
        if (homodyne_mode == "average") {
            return optical_recovery_fidelity(tag, r, spec.alpha, AverageOutcome{});
        }
        double sum = 0;
        for (int i = 0; i < shots; ++i) {
            sum += optical_recovery_fidelity(tag, r, spec.alpha, SampleOutcome{&rng});
        }
        return sum / shots;
    };
    bool selected[5] = {false, false, false, false, false};
    for (ErasureTag t : spec.errors) {
        selected[static_cast<int>(t)] = true;
    }

    std::ostringstream csv;
    csv << "r,F1,F2,F3,F4,formula_F1,formula_F2,formula_F3,formula_F4,max_abs_dev\n";
    double worst = 0;
    for (int i = 0; i < spec.steps; ++i) {
        double r = spec.steps == 1 ? spec.r_min : spec.r_min + (spec.r_max - spec.r_min) * i / (spec.steps - 1);
        std::string sim_cols;
        std::string formula_cols;
        double dev = 0;
        for (int k = 1; k <= 4; ++k) {
            auto tag = static_cast<ErasureTag>(k);
            if (selected[k]) {
                double f = simulate(tag, r);
                double g = fidelity_formula(tag, r);
                dev = std::max(dev, std::abs(f - g));
                sim_cols += "," + g12(f);
                formula_cols += "," + g12(g);
            } else {
                sim_cols += ",";
                formula_cols += ",";
            }
        }
        worst = std::max(worst, dev);
        csv << g12(r) << sim_cols << formula_cols << "," << g12(dev) << "\n";
    }
    out << csv.str();

    if (!gnuplot_path.empty()) {
        std::ofstream gp(gnuplot_path);
        if (!gp) {
            throw UsageError("cannot write '" + gnuplot_path + "'");
        }
        gp << "# Recovery fidelity against squeezing; data inline.\n"
           << "set datafile separator ','\n"
           << "set key bottom right\n"
           << "set xlabel 'r'\n"
           << "set ylabel 'fidelity'\n"
           << "set yrange [0:1.05]\n"
           << "$data << EOD\n"
           << csv.str() << "EOD\n"
           << "plot ";
        bool first = true;
        for (int k = 1; k <= 4; ++k) {
            if (!selected[k]) {
                continue;
            }
            gp << (first ? "" : ", \\\n     ") << "$data using 1:" << (k + 1) << " skip 1 with points title 'F" << k
               << " simulated', $data using 1:" << (k + 5) << " skip 1 with lines title 'F" << k << " formula'";
            first = false;
        }
        gp << "\n";
    }
    // Sampled sweeps carry Monte Carlo error, so only the exact average is held to 1e-8.
    double bound = homodyne_mode == "average" ? 1e-8 : 5 / std::sqrt(static_cast<double>(shots));
    return worst <= bound ? exit_ok : exit_fails;
}

int cmd_threshold(const std::string &target_text, std::ostream &out) {
    double target = 0;
    try {
        target = parse_entry(target_text);
    } catch (const UsageError &) {
        throw UsageError("--target must be a number or a fraction p/q");
    }
    if (!(target > 0) || target > 1) {
        throw UsageError("--target must lie in (0, 1)");
    }
    out << "target " << g12(target) << "\n";
    if (target >= 1) {
        out << "unreachable: the fidelities approach 1 only as r -> infinity\n";
        return exit_unreachable;
    }
    ThresholdResult res = find_threshold(target);
    if (!res.reachable) {
        out << "unreachable within the search interval\n";
        return exit_unreachable;
    }
    // The binding curve is F2 = F3 = 1/(1 + 2e^-2r); invert it for comparison.
    double analytic = std::max(0.0, 0.5 * std::log(2 * target / (1 - target)));
    out << "r_star " << g12(res.r_star) << "\n";
    out << "min_fidelity_at_r_star " << g12(res.fidelity) << "\n";
    out << "analytic_r_star " << g12(analytic) << "\n";
    return exit_ok;
}

int cmd_spacetime(const std::string &config, bool as_json, std::ostream &out) {
    Configuration cfg;
    try {
        if (config == "fig2a" || config == "fig2b" || config == "fig2c" || config == "fig4") {
            cfg = builtin_configuration(config);
        } else {
            cfg = parse_configuration(read_file(config));
        }
        Validity check = config_valid(cfg);
        nlohmann::ordered_json report;
        report["valid"] = check.valid;
        std::vector<std::string> violations;
        for (const auto &v : check.violations) {
            violations.push_back(v.describe());
        }
        report["violations"] = violations;
        if (check.valid) {
            CausalGraph g = causal_graph(cfg);
            nlohmann::ordered_json edges = nlohmann::ordered_json::array();
            for (const auto &e : g.edges) {
                edges.push_back({e.from, e.to});
            }
            report["edges"] = edges;
            report["shares"] = g.share_count();
            if (auto chain = find_chain(cfg)) {
                auto [i, j, k] = *chain;
                report["chain"] = {{"y", i}, {"z_mid", j}, {"z_end", k}};
            }
            CodeChoice code = select_code(cfg);
            report["code"] = code.describe();
            report["code_modes"] = code.modes();
        }
        if (as_json) {
            out << report.dump(2) << "\n";
        } else {
            out << (check.valid ? "valid" : "invalid") << "\n";
            for (const auto &v : violations) {
                out << "violation: " << v << "\n";
            }
            if (check.valid) {
                for (const auto &e : report["edges"]) {
                    out << "edge " << e[0].get<int>() << " -> " << e[1].get<int>() << "\n";
                }
                if (report.contains("chain")) {
                    const auto &c = report["chain"];
                    out << "chain y" << c["y"].get<int>() << " <= z" << c["z_mid"].get<int>() << " <= z"
                        << c["z_end"].get<int>() << "\n";
                }
                out << "code " << report["code"].get<std::string>() << " (" << report["code_modes"].get<int>()
                    << " modes)\n";
            }
        }
        return check.valid ? exit_ok : exit_fails;
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

}  // namespace

ThresholdResult find_threshold(double target, double r_max, double tolerance) {
    ThresholdResult res;
    if (min_simulated_fidelity(0) >= target) {
        res.reachable = true;
        res.fidelity = min_simulated_fidelity(0);
        return res;
    }
    double hi_f = min_simulated_fidelity(r_max);
    if (hi_f < target) {
        return res;
    }
    double lo = 0;
    double hi = r_max;
    while (hi - lo > tolerance) {
        double mid = 0.5 * (lo + hi);
        if (min_simulated_fidelity(mid) >= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // The upper end of the bracket always meets the target.
    res.reachable = true;
    res.r_star = hi;
    res.fidelity = min_simulated_fidelity(res.r_star);
    return res;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Continuous-variable replication codes: build, verify, synthesize, simulate."};
    app.name("cvrep");
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "Seed for every random draw")->capture_default_str();

    auto *code = app.add_subcommand("code", "Stabilizer code matrices");
    code->require_subcommand(1);
    auto *build = code->add_subcommand("build", "Print a generator matrix and its checks");
    std::string build_sel;
    build->add_option("selector", build_sel, "N >= 4, 'five' or 'six'")->required();

    auto *verify = app.add_subcommand("verify", "Check erasure correctability");
    std::string verify_sel;
    bool homology = false;
    std::string erase;
    verify->add_option("selector", verify_sel, "N >= 4 or 'five'")->required();
    verify->add_flag("--homology", homology, "Also compare with the homological construction");
    verify->add_option("--erase", erase, "Comma-separated 1-based modes to erase instead of vertex patterns");

    auto *synth = app.add_subcommand("synth", "Synthesize a QND circuit from a point transform");
    std::string matrix_path;
    std::string error_tag;
    std::string pivots;
    bool check = false;
    synth->add_option("--matrix", matrix_path, "Whitespace-separated square matrix file");
    synth->add_option("--error", error_tag, "Built-in decoder matrix E2, E3 or E4");
    synth->add_option("--pivots", pivots, "Comma-separated 1-based pivot rows per column");
    synth->add_flag("--check", check, "Re-verify the point action");

    auto *fidelity = app.add_subcommand("fidelity", "Sweep recovery fidelity over squeezing");
    SweepSpec spec;
    std::string errors = "E1,E2,E3,E4";
    double alpha_re = 1;
    double alpha_im = 0.5;
    std::string homodyne_mode = "average";
    int shots = 2000;
    std::string gnuplot_path;
    fidelity->add_option("--r-min", spec.r_min)->capture_default_str();
    fidelity->add_option("--r-max", spec.r_max)->capture_default_str();
    fidelity->add_option("--steps", spec.steps)->capture_default_str();
    fidelity->add_option("--errors", errors, "Subset of E1..E4")->capture_default_str();
    fidelity->add_option("--alpha-re", alpha_re)->capture_default_str();
    fidelity->add_option("--alpha-im", alpha_im)->capture_default_str();
    fidelity->add_option("--homodyne", homodyne_mode, "average (exact) or sampled (Monte Carlo)")
        ->capture_default_str();
    fidelity->add_option("--shots", shots, "Samples per point when sampled")->capture_default_str();
    fidelity->add_option("--gnuplot", gnuplot_path, "Also write a gnuplot script here");

    auto *threshold = app.add_subcommand("threshold", "Squeezing needed to reach a fidelity");
    std::string target;
    threshold->add_option("--target", target, "Fidelity target in (0, 1), e.g. 0.5 or 2/3")->required();

    auto *spacetime = app.add_subcommand("spacetime", "Check a causal-diamond configuration");
    std::string config;
    bool as_json = false;
    spacetime->add_option("--config", config, "fig2a, fig2b, fig2c, fig4 or a JSON file")->required();
    spacetime->add_flag("--json", as_json, "Machine-readable report");

    std::vector<std::string> argv_store{"cvrep"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_store) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code_ = app.exit(e, out, err);
        return code_ == 0 ? exit_ok : exit_usage;
    }

    try {
        if (build->parsed()) {
            return cmd_code_build(build_sel, out);
        }
        if (verify->parsed()) {
            return cmd_verify(verify_sel, homology, erase, out);
        }
        if (synth->parsed()) {
            return cmd_synth(matrix_path, error_tag, check, pivots, out, err);
        }
        if (fidelity->parsed()) {
            spec.errors = parse_tags(errors);
            spec.alpha = {alpha_re, alpha_im};
            return cmd_fidelity(spec, homodyne_mode, shots, seed, gnuplot_path, out);
        }
        if (threshold->parsed()) {
            return cmd_threshold(target, out);
        }
        if (spacetime->parsed()) {
            return cmd_spacetime(config, as_json, out);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_fails;
    }
    return exit_usage;
}

}  // namespace cvrep
