#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sigmasa/core.hpp"
#include "sigmasa/dae.hpp"
#include "sigmasa/errors.hpp"

namespace sigmasa {

/// Parses the .sig format: line 1 "SIG v1"; line 2 "n <N>"; one 1-based
/// triplet "i j sigma" per line; '#' starts a comment; unmentioned positions
/// are -inf; optional trailing "rows <labels>" / "cols <labels>" lines.
/// A duplicate (i,j) and a negative sigma are errors.
inline SignatureMatrix read_sig(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::string cur;
        for (char ch : text) {
            if (ch == '\n') {
                lines.push_back(cur);
                cur.clear();
            } else if (ch != '\r') {
                cur.push_back(ch);
            }
        }
        if (!cur.empty()) lines.push_back(cur);
    }
    for (auto& l : lines) {
        auto hash = l.find('#');
        if (hash != std::string::npos) l.erase(hash);
        while (!l.empty() && (l.back() == ' ' || l.back() == '\t')) l.pop_back();
    }

    auto fail = [](size_t ln, const std::string& what) -> void {
        throw FormatError(".sig line " + std::to_string(ln + 1) + ": " + what);
    };

    size_t ln = 0;
    auto next_content = [&]() -> std::string {
        while (ln < lines.size() && lines[ln].find_first_not_of(" \t") == std::string::npos) ++ln;
        return ln < lines.size() ? lines[ln] : std::string();
    };

    if (next_content() != "SIG v1") fail(ln, "expected \"SIG v1\"");
    ++ln;
    int n = 0;
    {
        std::istringstream is(next_content());
        std::string kw;
        if (!(is >> kw >> n) || kw != "n" || n <= 0) fail(ln, "expected \"n <positive integer>\"");
        std::string rest;
        if (is >> rest) fail(ln, "trailing input after n");
        ++ln;
    }

    std::vector<Triplet> trips;
    std::vector<std::string> row_labels, col_labels;
    for (; ln < lines.size(); ++ln) {
        const std::string& l = lines[ln];
        if (l.find_first_not_of(" \t") == std::string::npos) continue;
        std::istringstream is(l);
        std::string first;
        is >> first;
        if (first == "rows" || first == "cols") {
            std::vector<std::string> labels;
            std::string w;
            while (is >> w) labels.push_back(w);
            if (static_cast<int>(labels.size()) != n)
                fail(ln, first + ": expected " + std::to_string(n) + " labels");
            (first == "rows" ? row_labels : col_labels) = std::move(labels);
            continue;
        }
        std::istringstream ts(l);
        long long i, j, s;
        if (!(ts >> i >> j >> s)) fail(ln, "expected triplet \"i j sigma\"");
        std::string rest;
        if (ts >> rest) fail(ln, "trailing input after triplet");
        if (i < 1 || i > n || j < 1 || j > n) fail(ln, "triplet position out of range");
        if (s < 0) fail(ln, "sigma must be >= 0");
        trips.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1),
                           static_cast<int>(s));
    }
    try {
        return SignatureMatrix::from_triplets(n, trips, std::move(row_labels),
                                              std::move(col_labels));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string(".sig: ") + e.what());
    }
}

/// Canonical bit-exact emission: sorted triplets (rows then columns
/// ascending), 1-based, single spaces; label lines only when labels differ
/// from the defaults.
inline std::string write_sig(const SignatureMatrix& sm) {
    std::ostringstream os;
    os << "SIG v1\n";
    os << "n " << sm.size() << "\n";
    for (const auto& [i, j, s] : sm.entries())
        os << (i + 1) << ' ' << (j + 1) << ' ' << s << '\n';
    if (sm.row_labels() != default_row_labels(sm.size())) {
        os << "rows";
        for (const auto& l : sm.row_labels()) os << ' ' << l;
        os << '\n';
    }
    if (sm.col_labels() != default_col_labels(sm.size())) {
        os << "cols";
        for (const auto& l : sm.col_labels()) os << ' ' << l;
        os << '\n';
    }
    return os.str();
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Loads a signature matrix from a .sig or .dae file, by extension.
inline SignatureMatrix read_signature_file(const std::string& path) {
    const std::string text = read_text_file(path);
    if (ends_with(path, ".dae")) return signature_of(parse_dae(text));
    if (ends_with(path, ".sig")) return read_sig(text);
    throw Error("unrecognized file extension (expected .sig or .dae): " + path);
}

} // namespace sigmasa
