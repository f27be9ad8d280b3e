/**
 * @file carrytool.cpp
 * @brief Command line front end: analyze the growth and carry rate of a
 *        system, estimate the mean carry empirically, probe the carry
 *        sum at chosen indices, and tabulate cylinder measures.
 *
 * Exit codes: 0 when the question is answered (a rate exists, a report
 * was produced), 2 when the analysis is inconclusive, 1 on errors.
 */

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "carry/analyzer.hpp"
#include "carry/beta.hpp"
#include "carry/counting.hpp"
#include "carry/dfa.hpp"
#include "carry/gns.hpp"
#include "carry/odometer.hpp"
#include "carry/rational_base.hpp"
#include "carry/signature.hpp"
#include "carry/spectral.hpp"

namespace {

using nlohmann::ordered_json;

struct SystemOpts {
    std::string builtin_name;
    std::string dfa_file;
    long base = 0;
    std::string rational;
    std::string signature_file;
    std::string basis_file;
    std::string beta_poly;
    std::string beta_interval;
    std::string builtin_lang;

    int count_given() const {
        int n = 0;
        n += !builtin_name.empty();
        n += !dfa_file.empty();
        n += base != 0;
        n += !rational.empty();
        n += !signature_file.empty();
        n += !basis_file.empty();
        n += !beta_poly.empty();
        n += !builtin_lang.empty();
        return n;
    }
};

struct RunConfig {
    std::uint64_t n = 1000000;
    std::size_t lmax = 20;
    std::size_t layers = 20;
    std::string out_file;
    std::string format = "json";
    std::string sequence;
    std::string points;
    std::string word;
};

void add_system_flags(CLI::App* cmd, SystemOpts& sys) {
    cmd->add_option("--builtin", sys.builtin_name,
                    "built-in automaton: base(p), fibonacci, fina, K1..K4");
    cmd->add_option("--dfa", sys.dfa_file, "automaton description file");
    cmd->add_option("--base", sys.base, "integer base p >= 2");
    cmd->add_option("--rational", sys.rational, "rational base p/q, e.g. 3/2");
    cmd->add_option("--signature", sys.signature_file, "signature file (prefix/period lines)");
    cmd->add_option("--basis", sys.basis_file, "basis file, one term per line");
    cmd->add_option("--beta", sys.beta_poly,
                    "defining polynomial of the base, descending coefficients");
    cmd->add_option("--interval", sys.beta_interval, "isolating interval 'lo hi'");
    cmd->add_option("--builtin-lang", sys.builtin_lang, "built-in language: H");
}

void require_one_system(SystemOpts const& sys) {
    if (sys.count_given() != 1)
        throw std::invalid_argument("give exactly one system flag");
}

carry::RationalBase parse_rational_base(std::string const& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos)
        throw std::invalid_argument("rational base must look like p/q");
    long p = std::stol(text.substr(0, slash));
    long q = std::stol(text.substr(slash + 1));
    return carry::RationalBase(p, q);
}

carry::AlgebraicReal beta_from_opts(SystemOpts const& sys) {
    auto coeffs = carry::parse_poly_line(sys.beta_poly);
    std::optional<std::pair<carry::BigRat, carry::BigRat>> interval;
    if (!sys.beta_interval.empty()) {
        std::istringstream is(sys.beta_interval);
        std::string lo, hi;
        if (!(is >> lo >> hi))
            throw std::invalid_argument("interval needs two endpoints");
        interval = {carry::parse_rational(lo), carry::parse_rational(hi)};
    }
    return carry::make_beta(coeffs, interval);
}

template <class T>
T parse_file(std::string const& path, T (*parser)(std::istream&)) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parser(in);
}

/// Builds the empirical source named by the flags.
carry::SystemSource resolve_source(SystemOpts const& sys, bool with_theory) {
    using namespace carry;
    if (!sys.builtin_name.empty())
        return source_from_dfa(builtin(sys.builtin_name), sys.builtin_name, with_theory);
    if (!sys.dfa_file.empty())
        return source_from_dfa(parse_file(sys.dfa_file, +[](std::istream& in) { return parse_dfa(in); }),
                               sys.dfa_file, with_theory);
    if (sys.base != 0)
        return source_from_rational_base(RationalBase(sys.base, 1));
    if (!sys.rational.empty())
        return source_from_rational_base(parse_rational_base(sys.rational));
    if (!sys.signature_file.empty())
        return source_from_signature(
            parse_file(sys.signature_file, +[](std::istream& in) { return parse_signature(in); }),
            sys.signature_file);
    if (!sys.basis_file.empty())
        return source_from_basis(
            parse_file(sys.basis_file, +[](std::istream& in) { return parse_basis(in); }),
            sys.basis_file);
    if (!sys.beta_poly.empty()) {
        auto prof = quasi_greedy(beta_expand_one(beta_from_opts(sys)));
        return source_from_beta(prof, "beta [" + sys.beta_poly + "]");
    }
    if (sys.builtin_lang == "H") return source_from_h_language();
    if (!sys.builtin_lang.empty())
        throw std::invalid_argument("unknown built-in language: " + sys.builtin_lang);
    throw std::invalid_argument("no system given");
}

void write_output(RunConfig const& cfg, std::string const& text) {
    if (cfg.out_file.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + cfg.out_file);
    out << text;
}

std::string render_json(ordered_json const& j) { return j.dump(2) + "\n"; }

// --- analyze ---

int cmd_analyze(SystemOpts const& sys, RunConfig const& cfg) {
    using namespace carry;
    ordered_json out;
    int exit_code = 0;

    if (!sys.builtin_name.empty() || !sys.dfa_file.empty()) {
        Dfa d = !sys.builtin_name.empty()
                    ? builtin(sys.builtin_name)
                    : parse_file(sys.dfa_file, +[](std::istream& in) { return parse_dfa(in); });
        std::string name = !sys.builtin_name.empty() ? sys.builtin_name : sys.dfa_file;
        CpDecision dec = decide_cp(d);

        ordered_json meta;
        meta["system"] = name;
        meta["states"] = trim(d).state_count();
        out["meta"] = meta;
        ordered_json pce;
        pce["ok"] = dec.pce.ok();
        if (!dec.pce.ok()) {
            pce["failure"] = dec.pce.kind == PceVerdict::Kind::not_prefix_closed
                                 ? "not prefix-closed"
                                 : "not right-extendable";
            pce["witness_state"] = dec.pce.witness_state;
        }
        out["pce"] = pce;
        if (dec.pce.ok()) {
            CountTable ct(d);
            LinearRecurrence rec = minimal_recurrence(ct);
            ordered_json rj;
            rj["order"] = rec.order();
            std::vector<std::string> poly;
            for (auto const& c : rec.poly) poly.push_back(rational_string(c));
            rj["poly"] = poly;
            std::vector<std::string> init;
            for (auto const& t : rec.initial) init.push_back(t.get_str());
            rj["initial"] = init;
            out["recurrence"] = rj;
            out["spectral"] = spectral_report_json(dec.main);
        }
        ordered_json dj;
        dj["determined"] = dec.determined;
        if (dec.determined) {
            dj["cp"] = decimal_string(BigRat(dec.cp_value));
            if (dec.cp_exact) dj["cp_exact"] = rational_string(*dec.cp_exact);
        } else {
            dj["reason"] = dec.reason;
            dj["offending_states"] = dec.offending_states;
        }
        out["decision"] = dj;
        exit_code = dec.determined ? 0 : 2;
    } else if (!sys.beta_poly.empty()) {
        BetaProfile prof = quasi_greedy(beta_expand_one(beta_from_opts(sys)));
        ordered_json meta;
        meta["system"] = "beta [" + sys.beta_poly + "]";
        out["meta"] = meta;
        out["beta"] = prof.beta.to_double();
        out["expansion_of_one"] = [&] {
            std::string s;
            for (std::size_t i = 0; i < prof.bge.size(); ++i) {
                if (i) s += '.';
                s += std::to_string(prof.bge[i]);
            }
            return s;
        }();
        switch (prof.kind) {
        case ParryClass::simple: out["class"] = "simple"; break;
        case ParryClass::nonsimple: out["class"] = "nonsimple"; break;
        case ParryClass::unknown: out["class"] = "unknown"; break;
        }
        if (prof.kind == ParryClass::unknown) {
            out["warning"] = prof.warning;
            write_output(cfg, render_json(out));
            return 2;
        }
        Basis b = basis_from_beta(prof);
        std::vector<std::string> start;
        for (std::size_t l = 0; l < 8; ++l) start.push_back(b.G(l).get_str());
        out["basis"] = start;
        double beta_d = prof.beta.to_double();
        out["cp"] = decimal_string(BigRat(beta_d / (beta_d - 1.0)));
        if (auto exact = prof.beta.exact_rational(); exact && *exact > 1)
            out["cp_exact"] = rational_string(*exact / (*exact - 1));
        exit_code = 0;
    } else if (!sys.signature_file.empty() || sys.base != 0 || !sys.rational.empty()) {
        Signature sig;
        std::string name;
        if (!sys.signature_file.empty()) {
            sig = parse_file(sys.signature_file,
                             +[](std::istream& in) { return parse_signature(in); });
            name = sys.signature_file;
        } else {
            RationalBase rb =
                sys.base != 0 ? RationalBase(sys.base, 1) : parse_rational_base(sys.rational);
            sig = rational_base_signature(rb.p, rb.q);
            name = "base " + std::to_string(rb.p);
            if (rb.q != 1) name += "/" + std::to_string(rb.q);
        }
        auto verdict = validate(sig);
        ordered_json meta;
        meta["system"] = name;
        out["meta"] = meta;
        out["valid"] = verdict.valid;
        if (!verdict.valid) {
            out["failure_index"] = *verdict.failure_index;
            write_output(cfg, render_json(out));
            return 1;
        }
        long p = sig.period.p();
        int q = sig.period.q();
        out["period_sum"] = p;
        out["period_length"] = q;
        if (q > 0 && p > q) {
            BigRat rate = theoretical_cp(sig);
            out["cp_exact"] = rational_string(rate);
            out["cp"] = decimal_string(rate);
            exit_code = 0;
        } else {
            out["reason"] = "period does not outgrow its length; no finite rate";
            exit_code = 2;
        }
    } else {
        throw std::invalid_argument("analyze needs an automaton, signature, base, or beta");
    }

    write_output(cfg, render_json(out));
    return exit_code;
}

// --- estimate ---

int cmd_estimate(SystemOpts const& sys, RunConfig const& cfg) {
    using namespace carry;
    SystemSource src = resolve_source(sys, true);
    CpReport rep = empirical_cp(src, cfg.n);
    if (cfg.format == "csv") write_output(cfg, cp_report_csv(rep));
    else write_output(cfg, render_json(cp_report_json(rep)));
    return 0;
}

// --- probe ---

int cmd_probe(SystemOpts const& sys, RunConfig const& cfg) {
    using namespace carry;
    SystemSource src = resolve_source(sys, false);

    std::vector<BigInt> points;
    if (!cfg.points.empty()) {
        std::istringstream is(cfg.points);
        std::string tok;
        while (std::getline(is, tok, ',')) points.emplace_back(tok);
    } else if (cfg.sequence == "M") {
        if (sys.builtin_lang != "H")
            throw std::invalid_argument("sequence M is defined for the built-in language H");
        for (std::size_t l = 1; l <= cfg.lmax; ++l)
            points.push_back(BigInt(3) * big_pow(2, (unsigned long)l) - 1);
    } else if (cfg.sequence == "V") {
        if (!src.cumulative_count)
            throw std::invalid_argument("system has no level counts for sequence V");
        for (std::size_t l = 1; l <= cfg.lmax; ++l) points.push_back(src.cumulative_count(l));
    } else if (cfg.sequence == "pow2") {
        for (std::size_t l = 1; l <= cfg.lmax; ++l) points.push_back(big_pow(2, (unsigned long)l));
    } else {
        throw std::invalid_argument("give --points or --sequence {M,V,pow2}");
    }

    auto rows = probe(src, points);
    if (cfg.format == "csv") {
        std::string text;
        text += "# system: " + src.name + "\n";
        text += "n,scp,mean\n";
        for (auto const& r : rows)
            text += r.n.get_str() + "," + r.scp.get_str() + "," + decimal_string(r.mean) + "\n";
        write_output(cfg, text);
    } else {
        ordered_json j;
        ordered_json meta;
        meta["system"] = src.name;
        j["meta"] = meta;
        ordered_json arr = ordered_json::array();
        for (auto const& r : rows) {
            ordered_json row;
            row["n"] = r.n.get_str();
            row["scp"] = r.scp.get_str();
            row["mean_exact"] = rational_string(r.mean);
            row["mean"] = decimal_string(r.mean);
            arr.push_back(row);
        }
        j["points"] = arr;
        write_output(cfg, render_json(j));
    }
    return 0;
}

// --- measures ---

int cmd_measures(SystemOpts const& sys, RunConfig const& cfg) {
    using namespace carry;
    Basis basis = [&]() -> Basis {
        if (!sys.basis_file.empty())
            return parse_file(sys.basis_file, +[](std::istream& in) { return parse_basis(in); });
        if (!sys.beta_poly.empty())
            return basis_from_beta(quasi_greedy(beta_expand_one(beta_from_opts(sys))));
        if (sys.base != 0)
            return Basis::from_recurrence({BigInt(sys.base)}, {BigInt(1)});
        throw std::invalid_argument("measures needs --beta, --basis, or --base");
    }();

    int digit_span = 10;
    {
        BigInt r = basis.G(1) / basis.G(0);
        digit_span = std::max(10, (int)r.get_ui() + 1);
    }

    if (!cfg.word.empty()) {
        Word w = parse_word(cfg.word, Alphabet(digit_span));
        BigRat nu = cylinder_measure(basis, {w, cfg.n});
        ordered_json j;
        ordered_json meta;
        meta["word"] = cfg.word;
        meta["n"] = cfg.n;
        j["meta"] = meta;
        j["nu_exact"] = rational_string(nu);
        j["nu"] = decimal_string(nu);
        write_output(cfg, render_json(j));
        return 0;
    }

    LayerTable table = layer_cp(basis, cfg.layers, cfg.n);
    if (cfg.format == "csv") write_output(cfg, layer_table_csv(table, Alphabet(digit_span)));
    else write_output(cfg, render_json(layer_table_json(table, Alphabet(digit_span))));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"carry propagation toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file with [subcommand] sections");

    SystemOpts sys_analyze, sys_estimate, sys_probe, sys_measures;
    RunConfig cfg_analyze, cfg_estimate, cfg_probe, cfg_measures;

    auto* analyze = app.add_subcommand("analyze", "exact growth and carry-rate analysis");
    add_system_flags(analyze, sys_analyze);
    analyze->add_option("--out", cfg_analyze.out_file, "output file (default stdout)");

    auto* estimate = app.add_subcommand("estimate", "empirical mean carry with checkpoints");
    add_system_flags(estimate, sys_estimate);
    estimate->add_option("--n", cfg_estimate.n, "how many values to stream");
    estimate->add_option("--format", cfg_estimate.format, "json or csv");
    estimate->add_option("--out", cfg_estimate.out_file, "output file (default stdout)");

    auto* probe_cmd = app.add_subcommand("probe", "carry sum at chosen indices");
    add_system_flags(probe_cmd, sys_probe);
    probe_cmd->add_option("--sequence", cfg_probe.sequence, "index family: M, V, or pow2");
    probe_cmd->add_option("--points", cfg_probe.points, "comma-separated explicit indices");
    probe_cmd->add_option("--lmax", cfg_probe.lmax, "family depth");
    probe_cmd->add_option("--format", cfg_probe.format, "json or csv");
    probe_cmd->add_option("--out", cfg_probe.out_file, "output file (default stdout)");

    auto* measures = app.add_subcommand("measures", "cylinder measures and the layer table");
    add_system_flags(measures, sys_measures);
    measures->add_option("--k", cfg_measures.layers, "number of layers");
    measures->add_option("--n", cfg_measures.n, "sample size");
    measures->add_option("--word", cfg_measures.word, "single cylinder word instead of a table");
    measures->add_option("--format", cfg_measures.format, "json or csv");
    measures->add_option("--out", cfg_measures.out_file, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1; // help/version keep 0, bad flags become 1
    }

    try {
        if (analyze->parsed()) {
            require_one_system(sys_analyze);
            return cmd_analyze(sys_analyze, cfg_analyze);
        }
        if (estimate->parsed()) {
            require_one_system(sys_estimate);
            return cmd_estimate(sys_estimate, cfg_estimate);
        }
        if (probe_cmd->parsed()) {
            require_one_system(sys_probe);
            return cmd_probe(sys_probe, cfg_probe);
        }
        if (measures->parsed()) {
            require_one_system(sys_measures);
            return cmd_measures(sys_measures, cfg_measures);
        }
    } catch (CLI::Error const& e) {
        return app.exit(e);
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
