// sigmasa: Sigma-method structural analysis of DAE systems from .sig or .dae
// files. Subcommands: analyze, convert, check-offsets.
//
// Exit codes: 0 success; 1 I/O, parse or usage error; 2 structurally
// ill-posed input or offsets failing their semantic checks.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sigmasa/sigmasa.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<int> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw sigmasa::Error(flag + ": empty element in list");
        size_t used = 0;
        int v = std::stoi(cur, &used);
        if (used != cur.size()) throw sigmasa::Error(flag + ": bad integer \"" + cur + "\"");
        out.push_back(v);
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    flush();
    return out;
}

int run_analyze(const std::string& path, const std::string& print_what,
                const std::string& json_path, const std::string& dot_path,
                std::optional<int> enumerate_bound, const std::string& offsets_csv,
                const std::string& k_csv, unsigned threads) {
    sigmasa::SignatureMatrix sm = sigmasa::read_signature_file(path);

    sigmasa::AnalyzeOptions opts;
    opts.threads = threads;
    if (!offsets_csv.empty()) {
        sigmasa::OffsetPair off;
        off.c = parse_int_list(offsets_csv, "--offsets");
        if (static_cast<int>(off.c.size()) != sm.size())
            throw sigmasa::InvalidOffsets("--offsets: expected " + std::to_string(sm.size()) +
                                          " values");
        off.d = sigmasa::d_from_c(sm, sigmasa::solve_hvt(sm).hvt, off.c);
        auto cls = sigmasa::check_offsets(sm, off);
        if (!cls.is_general || !cls.is_valid)
            throw sigmasa::InvalidOffsets("--offsets: not a valid offset vector");
        opts.offsets = off;
    }
    sigmasa::DaeAnalysis a = sigmasa::analyze(sm, opts);

    std::optional<sigmasa::LeadTimeVector> k;
    if (!k_csv.empty()) {
        k = parse_int_list(k_csv, "--k");
        if (!sigmasa::check_lead_times(a.fbg, *k).solution)
            throw sigmasa::NotASolution("--k: not a solution of the block inequalities");
    }

    if (print_what.empty()) {
        std::cout << sigmasa::render_summary(a);
    } else if (print_what == "sigma") {
        std::cout << sigmasa::render_matrix({a.sigma, std::nullopt, a.used, a.hvt, std::nullopt});
    } else if (print_what == "coarse") {
        std::cout << sigmasa::render_matrix({a.sigma, a.coarse, a.used, a.hvt, std::nullopt});
        std::cout << sigmasa::render_blocks_line(a.coarse, a.sigma.row_labels(),
                                                 a.sigma.col_labels());
    } else if (print_what == "fine") {
        std::cout << sigmasa::render_matrix({a.sigma, a.fine, a.used, a.hvt, std::nullopt});
        std::cout << sigmasa::render_blocks_line(a.fine, a.sigma.row_labels(),
                                                 a.sigma.col_labels());
    } else if (print_what == "sess") {
        std::cout << sigmasa::render_matrix({a.sigma, a.fine, std::nullopt, std::nullopt, a.sess});
    } else if (print_what == "fbg") {
        std::cout << sigmasa::render_fbg(a);
    } else {
        throw sigmasa::Error("--print: expected one of sigma|coarse|fine|sess|fbg");
    }

    if (enumerate_bound) std::cout << sigmasa::render_enumeration(a, *enumerate_bound);
    if (!json_path.empty())
        sigmasa::write_text_file(json_path, sigmasa::json_report(a).dump(2) + "\n");
    if (!dot_path.empty()) sigmasa::write_text_file(dot_path, sigmasa::dot_fbg(a, k));
    return 0;
}

int run_convert(const std::string& in_path, const std::string& out_path) {
    sigmasa::SignatureMatrix sm = sigmasa::read_signature_file(in_path);
    sigmasa::write_text_file(out_path, sigmasa::write_sig(sm));
    return 0;
}

int run_check_offsets(const std::string& path, const std::string& c_csv,
                      const std::string& d_csv) {
    sigmasa::SignatureMatrix sm = sigmasa::read_signature_file(path);
    sigmasa::OffsetPair off;
    off.c = parse_int_list(c_csv, "--c");
    if (static_cast<int>(off.c.size()) != sm.size())
        throw sigmasa::Error("--c: expected " + std::to_string(sm.size()) + " values");
    if (!d_csv.empty()) {
        off.d = parse_int_list(d_csv, "--d");
        if (static_cast<int>(off.d.size()) != sm.size())
            throw sigmasa::Error("--d: expected " + std::to_string(sm.size()) + " values");
    } else {
        off.d = sigmasa::d_from_c(sm, sigmasa::solve_hvt(sm).hvt, off.c);
    }
    auto cls = sigmasa::check_offsets(sm, off);
    if (!cls.is_general) {
        std::cerr << "not a general offset vector\n";
        return 2;
    }
    std::string line = "general";
    if (cls.is_valid) line += " valid";
    if (cls.is_normalised) line += " normalised";
    std::cout << line << "\n";
    std::cout << "witness HVT:";
    for (int i = 0; i < sm.size(); ++i)
        std::cout << " (" << sm.row_labels()[i] << ","
                  << sm.col_labels()[cls.witness_hvt->col(i)] << ")";
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sigma-method structural analysis of DAE systems"};
    app.require_subcommand(1);

    std::string path, print_what, json_path, dot_path, offsets_csv, k_csv;
    std::optional<int> enumerate_bound;
    unsigned threads = 1;

    auto* analyze = app.add_subcommand("analyze", "analyze a .sig or .dae file");
    analyze->add_option("path", path, "input file (.sig or .dae)")->required();
    analyze->add_option("--print", print_what, "section: sigma|coarse|fine|sess|fbg");
    analyze->add_option("--json", json_path, "write JSON report to PATH");
    analyze->add_option("--dot", dot_path, "write FBG in DOT format to PATH");
    analyze->add_option("--enumerate-k", enumerate_bound,
                        "list normalised lead-time vectors with max K <= BOUND");
    analyze->add_option("--offsets", offsets_csv, "use these equation offsets c1,...,cn");
    analyze->add_option("--k", k_csv, "lead-time vector K1,...,Kp for DOT critical edges");
    analyze->add_option("--threads", threads, "per-coarse-block worker threads");

    std::string in_path, out_path;
    auto* convert = app.add_subcommand("convert", "extract a .sig file from a .dae model");
    convert->add_option("input", in_path, "input file (.dae or .sig)")->required();
    convert->add_option("output", out_path, "output .sig path")->required();

    std::string c_csv, d_csv, check_path;
    auto* check = app.add_subcommand("check-offsets", "classify an offset vector");
    check->add_option("path", check_path, "input file (.sig or .dae)")->required();
    check->add_option("--c", c_csv, "equation offsets c1,...,cn")->required();
    check->add_option("--d", d_csv, "variable offsets d1,...,dn (derived via a HVT if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (analyze->parsed())
            return run_analyze(path, print_what, json_path, dot_path, enumerate_bound,
                               offsets_csv, k_csv, threads);
        if (convert->parsed()) return run_convert(in_path, out_path);
        if (check->parsed()) return run_check_offsets(check_path, c_csv, d_csv);
    } catch (const sigmasa::StructurallyIllPosed& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const sigmasa::StructurallySingular& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const sigmasa::InvalidOffsets& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const sigmasa::NotASolution& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const sigmasa::NotBlockConstant& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const sigmasa::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
