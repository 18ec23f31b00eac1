#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sigmasa/core.hpp"
#include "sigmasa/errors.hpp"

namespace sigmasa {

/// Expression tree of the .dae language. Value semantics; children live in a
/// vector so the type stays regular.
struct Expr {
    enum class Kind { Number, Ident, Der, Call, Pow, Neg, Binary };
    Kind kind = Kind::Number;
    std::string text;         ///< Ident/Der variable name, Call function name, Number literal
    int order = 0;            ///< Der order, Pow exponent
    char op = 0;              ///< Binary operator: + - * /
    std::vector<Expr> children;
};

/// Parsed .dae source: ordered variable/constant declarations and labelled
/// equations, each meaning expr = 0.
struct DaeSource {
    std::vector<std::string> variables;
    std::vector<std::string> constants;
    std::vector<std::pair<std::string, Expr>> equations;
};

namespace dae_detail {

inline const std::set<std::string>& known_functions() {
    static const std::set<std::string> fns = {"sin", "cos", "tan", "exp", "log", "sqrt"};
    return fns;
}

struct Cursor {
    const std::string& s;
    int line;
    int base_col; ///< column of s[0] in the original line
    size_t pos = 0;

    int col() const { return base_col + static_cast<int>(pos) + 1; }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    char get() {
        skip_ws();
        return pos < s.size() ? s[pos++] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c))
            throw SyntaxError(std::string("expected '") + c + "' " + what, line, col());
    }
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline std::string read_ident(Cursor& c) {
    c.skip_ws();
    if (c.pos >= c.s.size() || !ident_start(c.s[c.pos]))
        throw SyntaxError("expected identifier", c.line, c.col());
    size_t start = c.pos;
    while (c.pos < c.s.size() && ident_char(c.s[c.pos])) ++c.pos;
    return c.s.substr(start, c.pos - start);
}

inline int read_uint(Cursor& c, const char* what) {
    c.skip_ws();
    if (c.pos >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
        throw SyntaxError(std::string("expected unsigned integer ") + what, c.line, c.col());
    long long v = 0;
    while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
        v = v * 10 + (c.s[c.pos] - '0');
        if (v > 1000000) throw SyntaxError("integer too large", c.line, c.col());
        ++c.pos;
    }
    return static_cast<int>(v);
}

inline Expr parse_expr(Cursor& c);

// base := number | ident | Der(ident, uint) | func '(' expr ')' | '(' expr ')' | '-' factor
inline Expr parse_factor(Cursor& c);

inline Expr parse_base(Cursor& c) {
    c.skip_ws();
    if (c.pos >= c.s.size()) throw SyntaxError("unexpected end of expression", c.line, c.col());
    char ch = c.s[c.pos];
    if (ch == '(') {
        ++c.pos;
        Expr e = parse_expr(c);
        c.expect(')', "to close parenthesis");
        return e;
    }
    if (ch == '-') {
        ++c.pos;
        Expr e;
        e.kind = Expr::Kind::Neg;
        e.children.push_back(parse_factor(c));
        return e;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
        size_t start = c.pos;
        while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
        if (c.pos < c.s.size() && c.s[c.pos] == '.') {
            ++c.pos;
            if (c.pos >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
                throw SyntaxError("digits expected after decimal point", c.line, c.col());
            while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
                ++c.pos;
        }
        Expr e;
        e.kind = Expr::Kind::Number;
        e.text = c.s.substr(start, c.pos - start);
        return e;
    }
    if (ident_start(ch)) {
        int name_col = c.col();
        std::string name = read_ident(c);
        if (name == "Der") {
            c.expect('(', "after Der");
            std::string var = read_ident(c);
            c.expect(',', "between Der arguments");
            int ord = read_uint(c, "as derivative order");
            c.expect(')', "to close Der");
            Expr e;
            e.kind = Expr::Kind::Der;
            e.text = var;
            e.order = ord;
            return e;
        }
        if (known_functions().count(name)) {
            c.expect('(', ("after function " + name).c_str());
            Expr e;
            e.kind = Expr::Kind::Call;
            e.text = name;
            e.children.push_back(parse_expr(c));
            c.expect(')', "to close function call");
            return e;
        }
        if (c.peek() == '(')
            throw SyntaxError("unknown function \"" + name + "\"", c.line, name_col);
        Expr e;
        e.kind = Expr::Kind::Ident;
        e.text = name;
        return e;
    }
    throw SyntaxError(std::string("unexpected character '") + ch + "'", c.line, c.col());
}

// factor := base ('^' uint)?
inline Expr parse_factor(Cursor& c) {
    Expr base = parse_base(c);
    if (c.accept('^')) {
        Expr e;
        e.kind = Expr::Kind::Pow;
        e.order = read_uint(c, "as exponent");
        e.children.push_back(std::move(base));
        return e;
    }
    return base;
}

// term := factor (('*'|'/') factor)*
inline Expr parse_term(Cursor& c) {
    Expr e = parse_factor(c);
    while (true) {
        char ch = c.peek();
        if (ch != '*' && ch != '/') break;
        ++c.pos;
        Expr parent;
        parent.kind = Expr::Kind::Binary;
        parent.op = ch;
        parent.children.push_back(std::move(e));
        parent.children.push_back(parse_factor(c));
        e = std::move(parent);
    }
    return e;
}

// expr := term (('+'|'-') term)*
inline Expr parse_expr(Cursor& c) {
    Expr e = parse_term(c);
    while (true) {
        char ch = c.peek();
        if (ch != '+' && ch != '-') break;
        ++c.pos;
        Expr parent;
        parent.kind = Expr::Kind::Binary;
        parent.op = ch;
        parent.children.push_back(std::move(e));
        parent.children.push_back(parse_term(c));
        e = std::move(parent);
    }
    return e;
}

inline void collect_identifiers(const Expr& e, std::vector<std::string>& idents) {
    if (e.kind == Expr::Kind::Ident || e.kind == Expr::Kind::Der) idents.push_back(e.text);
    for (const auto& ch : e.children) collect_identifiers(ch, idents);
}

} // namespace dae_detail

/// Parses the .dae text format: first line "DAE v1", '#' comments,
/// "vars <names>", "const <names>", and equations "eq <label>: <expr>"
/// meaning expr = 0.
inline DaeSource parse_dae(const std::string& text) {
    using namespace dae_detail;
    DaeSource src;
    std::set<std::string> declared, labels;

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
    }
    if (lines.empty()) throw SyntaxError("empty input, expected \"DAE v1\"", 1, 1);
    {
        std::string first = lines[0];
        while (!first.empty() && (first.back() == ' ' || first.back() == '\t')) first.pop_back();
        if (first != "DAE v1")
            throw SyntaxError("first line must be \"DAE v1\"", 1, 1);
    }

    auto declare = [&](const std::string& name, std::vector<std::string>& into, int line,
                       int col) {
        if (known_functions().count(name) || name == "Der")
            throw SyntaxError("\"" + name + "\" is reserved and cannot be declared", line, col);
        if (!declared.insert(name).second)
            throw SyntaxError("\"" + name + "\" declared twice", line, col);
        into.push_back(name);
    };

    for (size_t ln = 1; ln < lines.size(); ++ln) {
        const int line_no = static_cast<int>(ln) + 1;
        Cursor c{lines[ln], line_no, 0};
        if (c.eof()) continue;
        std::string head = read_ident(c);
        if (head == "vars" || head == "const") {
            bool any = false;
            while (!c.eof()) {
                int col = c.col();
                std::string name = read_ident(c);
                declare(name, head == "vars" ? src.variables : src.constants, line_no, col);
                any = true;
            }
            if (!any) throw SyntaxError("expected at least one name", line_no, c.col());
        } else if (head == "eq") {
            std::string label = read_ident(c);
            if (!labels.insert(label).second)
                throw SyntaxError("duplicate equation label \"" + label + "\"", line_no, c.col());
            c.expect(':', "after equation label");
            Expr e = parse_expr(c);
            if (!c.eof())
                throw SyntaxError("trailing input after expression", line_no, c.col());
            src.equations.emplace_back(label, std::move(e));
        } else {
            throw SyntaxError("expected \"vars\", \"const\" or \"eq\", got \"" + head + "\"",
                              line_no, 1);
        }
    }

    // Semantic checks: identifiers resolve, Der targets are variables,
    // equation count matches variable count.
    std::set<std::string> varset(src.variables.begin(), src.variables.end());
    for (const auto& [label, expr] : src.equations) {
        std::vector<std::string> idents;
        collect_identifiers(expr, idents);
        for (const auto& name : idents)
            if (!declared.count(name)) throw UndeclaredIdentifier(name);
        // Der must target a state variable.
        auto check_der = [&](const Expr& e, auto&& self) -> void {
            if (e.kind == Expr::Kind::Der && !varset.count(e.text))
                throw SyntaxError("Der expects a declared variable, got \"" + e.text + "\"");
            for (const auto& ch : e.children) self(ch, self);
        };
        check_der(expr, check_der);
    }
    if (src.equations.size() != src.variables.size())
        throw CountMismatch("equation count (" + std::to_string(src.equations.size()) +
                            ") differs from variable count (" +
                            std::to_string(src.variables.size()) + ")");
    if (src.variables.empty())
        throw CountMismatch("empty system: no variables or equations");
    return src;
}

/// Highest syntactic derivative order of each variable in each equation;
/// -inf when absent. No symbolic simplification: Der(x,1) - Der(x,1) still
/// reports order 1, an overestimation risk only.
inline SignatureMatrix signature_of(const DaeSource& src) {
    const int n = static_cast<int>(src.variables.size());
    std::map<std::string, int> var_index;
    for (int j = 0; j < n; ++j) var_index[src.variables[j]] = j;

    std::vector<Triplet> trips;
    std::vector<std::string> row_labels;
    for (int i = 0; i < n; ++i) {
        row_labels.push_back(src.equations[i].first);
        std::map<int, int> orders; // var -> max order
        auto walk = [&](const Expr& e, auto&& self) -> void {
            if (e.kind == Expr::Kind::Ident || e.kind == Expr::Kind::Der) {
                auto it = var_index.find(e.text);
                if (it != var_index.end()) {
                    const int ord = e.kind == Expr::Kind::Der ? e.order : 0;
                    auto [pos, inserted] = orders.emplace(it->second, ord);
                    if (!inserted) pos->second = std::max(pos->second, ord);
                }
            }
            for (const auto& ch : e.children) self(ch, self);
        };
        walk(src.equations[i].second, walk);
        for (const auto& [j, ord] : orders) trips.emplace_back(i, j, ord);
    }
    return SignatureMatrix::from_triplets(n, trips, std::move(row_labels), src.variables);
}

} // namespace sigmasa
