#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sigmasa/analysis.hpp"
#include "sigmasa/core.hpp"
#include "sigmasa/fineblock.hpp"

namespace sigmasa {

namespace render_detail {

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

inline std::string int_list(const std::vector<int>& v) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i];
    }
    os << ')';
    return os.str();
}

} // namespace render_detail

/// Grid rendering of a signature matrix: labelled rows/columns, "." for -inf,
/// "*" on the marked transversal, offsets on the right/bottom edges, and
/// block separators when a block form is given. Restricting to a pattern
/// shows only those entries.
struct MatrixView {
    const SignatureMatrix& sigma;
    std::optional<BtfResult> btf;            ///< permute and draw block separators
    std::optional<OffsetPair> offsets;       ///< annotate c (right) and d (bottom)
    std::optional<Transversal> mark;         ///< positions marked with '*'
    std::optional<SparsityPattern> restrict_to; ///< show entries of this pattern only
};

inline std::string render_matrix(const MatrixView& view) {
    const SignatureMatrix& sm = view.sigma;
    const int n = sm.size();
    std::vector<int> row_at(n), col_at(n); // presentation position -> original index
    for (int k = 0; k < n; ++k) {
        row_at[k] = view.btf ? view.btf->form.row_perm()(k) : k;
        col_at[k] = view.btf ? view.btf->form.col_perm()(k) : k;
    }
    std::set<Position> marks;
    if (view.mark) marks = view.mark->positions();

    auto cell = [&](int i, int j) -> std::string {
        auto s = sm.sigma(i, j);
        if (!s || (view.restrict_to && !view.restrict_to->contains(i, j))) return ".";
        std::string t = std::to_string(*s);
        if (marks.count({i, j})) t += "*";
        return t;
    };

    std::vector<size_t> width(n, 1);
    for (int jq = 0; jq < n; ++jq) {
        width[jq] = sm.col_labels()[col_at[jq]].size();
        for (int iq = 0; iq < n; ++iq)
            width[jq] = std::max(width[jq], cell(row_at[iq], col_at[jq]).size());
        if (view.offsets)
            width[jq] = std::max(width[jq], std::to_string(view.offsets->d[col_at[jq]]).size());
    }
    size_t label_w = 0;
    for (const auto& l : sm.row_labels()) label_w = std::max(label_w, l.size());
    if (view.offsets) label_w = std::max(label_w, std::string("d").size());

    auto block_of_col_pos = [&](int jq) { return view.btf ? view.btf->form.block_of(jq) : 0; };
    auto pad = [](const std::string& s, size_t w) {
        return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
    };

    std::ostringstream os;
    auto emit_row = [&](const std::string& head, auto&& cell_at, bool with_sep) {
        os << pad(head, label_w);
        for (int jq = 0; jq < n; ++jq) {
            if (with_sep && jq > 0 && block_of_col_pos(jq) != block_of_col_pos(jq - 1))
                os << " |";
            os << ' ' << pad(cell_at(jq), width[jq]);
        }
    };

    // header
    emit_row("", [&](int jq) { return sm.col_labels()[col_at[jq]]; }, view.btf.has_value());
    if (view.offsets) os << "   c";
    os << '\n';
    size_t total_w = label_w;
    for (int jq = 0; jq < n; ++jq) total_w += width[jq] + 1;
    if (view.btf) total_w += 2 * (view.btf->p() - 1);

    for (int iq = 0; iq < n; ++iq) {
        if (view.btf && iq > 0 &&
            view.btf->form.block_of(iq) != view.btf->form.block_of(iq - 1))
            os << std::string(total_w, '-') << '\n';
        const int i = row_at[iq];
        emit_row(sm.row_labels()[i], [&](int jq) { return cell(i, col_at[jq]); },
                 view.btf.has_value());
        if (view.offsets) os << "   " << view.offsets->c[i];
        os << '\n';
    }
    if (view.offsets) {
        emit_row("d", [&](int jq) { return std::to_string(view.offsets->d[col_at[jq]]); },
                 view.btf.has_value());
        os << '\n';
    }
    return os.str();
}

inline std::string render_blocks_line(const BtfResult& btf,
                                      const std::vector<std::string>& row_labels,
                                      const std::vector<std::string>& col_labels) {
    std::ostringstream os;
    for (int l = 0; l < btf.p(); ++l) {
        std::vector<std::string> rs, cs;
        for (int r : btf.block_rows[l]) rs.push_back(row_labels[r]);
        for (int c : btf.block_cols[l]) cs.push_back(col_labels[c]);
        os << "  B" << (l + 1) << ": rows {" << render_detail::join(rs, ",") << "} cols {"
           << render_detail::join(cs, ",") << "}\n";
    }
    return os.str();
}

inline std::string render_fbg(const DaeAnalysis& a) {
    std::ostringstream os;
    const FineBlockGraph& fbg = a.fbg;
    os << "fine-block graph: p = " << fbg.p << "\n";
    for (int l = 0; l < fbg.p; ++l) {
        std::vector<std::string> rs, cs, lc, ld;
        for (int r : fbg.fine.block_rows[l]) rs.push_back(fbg.row_labels[r]);
        for (int c : fbg.fine.block_cols[l]) cs.push_back(fbg.col_labels[c]);
        for (int r : fbg.fine.block_rows[l]) lc.push_back(std::to_string(fbg.local_c_row[r]));
        for (int c : fbg.fine.block_cols[l]) ld.push_back(std::to_string(fbg.local_d_col[c]));
        os << "  B" << (l + 1) << ": rows {" << render_detail::join(rs, ",") << "} cols {"
           << render_detail::join(cs, ",") << "} local_c (" << render_detail::join(lc, ",")
           << ") local_d (" << render_detail::join(ld, ",") << ") anchor "
           << fbg.row_labels[fbg.anchors[l]] << "\n";
    }
    os << "edges:\n";
    for (const auto& e : fbg.edges)
        os << "  B" << (e.from + 1) << " -> B" << (e.to + 1) << "  w = " << e.weight << "\n";
    os << "canonical K: " << render_detail::int_list(a.canonical_k) << "\n";
    os << "classification: " << to_string(a.classification) << "\n";
    return os.str();
}

inline std::string render_summary(const DaeAnalysis& a) {
    std::ostringstream os;
    os << "n = " << a.sigma.size() << ", structurally well-posed\n";
    os << "val(Sigma) = " << a.val << " (degrees of freedom)\n";
    os << "HVT:";
    for (int i = 0; i < a.sigma.size(); ++i)
        os << " (" << a.sigma.row_labels()[i] << "," << a.sigma.col_labels()[a.hvt.col(i)] << ")";
    os << "\n";
    os << "canonical offsets:\n";
    os << "  c = " << render_detail::int_list(a.canonical.c) << "\n";
    os << "  d = " << render_detail::int_list(a.canonical.d) << "\n";
    os << "coarse blocks: " << a.coarse.p() << ", sizes "
       << render_detail::int_list(a.coarse.form.block_sizes()) << "\n";
    os << "fine blocks: " << a.fine.p() << ", sizes "
       << render_detail::int_list(a.fine.form.block_sizes()) << "\n";
    os << "essential pattern: " << a.sess.count() << " of " << a.sigma.entry_count()
       << " finite entries\n";
    os << "canonical K: " << render_detail::int_list(a.canonical_k) << "\n";
    os << "offset set: " << to_string(a.classification) << "\n";
    return os.str();
}

inline std::string render_enumeration(const DaeAnalysis& a, int bound) {
    auto en = enumerate_normalised_lead_times(a.fbg, bound);
    std::ostringstream os;
    os << "normalised lead-time vectors (max K <= " << bound << "): " << en.vectors.size()
       << "\n";
    for (const auto& k : en.vectors) os << "  " << render_detail::int_list(k) << "\n";
    if (en.truncated) os << "truncated (set is infinite)\n";
    return os.str();
}

/// JSON report; key order is alphabetical (nlohmann default), array order is
/// the deterministic block order, so output is byte-stable across runs.
inline nlohmann::json json_report(const DaeAnalysis& a) {
    nlohmann::json j;
    const int n = a.sigma.size();
    j["n"] = n;
    j["labels"] = {{"rows", a.sigma.row_labels()}, {"cols", a.sigma.col_labels()}};
    auto triplet_array = [](const std::vector<Triplet>& ts) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [i, jj, s] : ts) arr.push_back({i + 1, jj + 1, s});
        return arr;
    };
    j["sigma"] = triplet_array(a.sigma.entries());
    {
        nlohmann::json arr = nlohmann::json::array();
        for (int i = 0; i < n; ++i) arr.push_back({i + 1, a.hvt.col(i) + 1});
        j["hvt"] = arr;
    }
    j["val"] = a.val;
    j["offsets"] = {{"c", a.used.c}, {"d", a.used.d}};
    auto blocks_json = [&](const BtfResult& b) {
        nlohmann::json blocks = nlohmann::json::array();
        for (int l = 0; l < b.p(); ++l) {
            std::vector<std::string> rs, cs;
            for (int r : b.block_rows[l]) rs.push_back(a.sigma.row_labels()[r]);
            for (int c : b.block_cols[l]) cs.push_back(a.sigma.col_labels()[c]);
            blocks.push_back({{"rows", rs}, {"cols", cs}});
        }
        return blocks;
    };
    j["coarse"] = {{"sizes", a.coarse.form.block_sizes()}, {"blocks", blocks_json(a.coarse)}};
    {
        std::vector<int> order(a.fine.p());
        for (int l = 0; l < a.fine.p(); ++l) order[l] = l + 1;
        j["fine"] = {{"sizes", a.fine.form.block_sizes()},
                     {"blocks", blocks_json(a.fine)},
                     {"order", order}};
    }
    {
        std::vector<Triplet> sess_trips;
        for (const auto& [i, jj] : a.sess.positions())
            sess_trips.emplace_back(i, jj, *a.sigma.sigma(i, jj));
        j["sess"] = triplet_array(sess_trips);
    }
    {
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& e : a.fbg.edges)
            edges.push_back({{"from", e.from + 1}, {"to", e.to + 1}, {"w", e.weight}});
        std::vector<int> anchors;
        for (int r : a.fbg.anchors) anchors.push_back(r + 1);
        j["fbg"] = {{"p", a.fbg.p},
                    {"edges", edges},
                    {"local_c", a.fbg.local_c},
                    {"local_d", a.fbg.local_d},
                    {"anchors", anchors},
                    {"canonical_K", a.canonical_k},
                    {"classification", to_string(a.classification)}};
    }
    return j;
}

/// DOT emission of the FBG. Node label "B<k>\n{row labels}|{col labels}";
/// edge label W_kl. With a lead-time vector, K-critical edges are bold and
/// nodes carry "K=<value>".
inline std::string dot_fbg(const DaeAnalysis& a, const std::optional<LeadTimeVector>& k) {
    const FineBlockGraph& fbg = a.fbg;
    std::optional<Digraph> crit;
    if (k) crit = critical_subgraph(fbg, *k); // validates K is a solution
    std::ostringstream os;
    os << "digraph fbg {\n";
    os << "  node [shape=box];\n";
    for (int l = 0; l < fbg.p; ++l) {
        std::vector<std::string> rs, cs;
        for (int r : fbg.fine.block_rows[l]) rs.push_back(fbg.row_labels[r]);
        for (int c : fbg.fine.block_cols[l]) cs.push_back(fbg.col_labels[c]);
        os << "  b" << (l + 1) << " [label=\"B" << (l + 1) << "\\n{"
           << render_detail::join(rs, ",") << "}|{" << render_detail::join(cs, ",") << "}";
        if (k) os << "\\nK=" << (*k)[l];
        os << "\"];\n";
    }
    for (const auto& e : fbg.edges) {
        os << "  b" << (e.from + 1) << " -> b" << (e.to + 1) << " [label=\"" << e.weight << "\"";
        if (crit && crit->has_edge(e.from, e.to)) os << ", style=bold";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace sigmasa
