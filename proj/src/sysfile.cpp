#include "msymp/sysfile.hpp"

#include <sstream>

#include "msymp/error.hpp"
#include "msymp/parser.hpp"

namespace msymp {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw MsympError(Errc::SyntaxError, "line " + std::to_string(line) + ": " + msg,
                     static_cast<size_t>(line), msg);
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

struct RawBlock {
    std::string kind;
    std::string name;
    std::vector<std::pair<int, std::string>> lines;  // line number, content
    int head_line = 0;
};

std::vector<RawBlock> split_blocks(const std::string& text) {
    std::vector<RawBlock> blocks;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    RawBlock* cur = nullptr;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string s = strip(line);
        if (s.empty()) continue;
        if (!cur) {
            auto words = split_ws(s);
            if (words.size() > 2) fail(lineno, "block header takes at most one name");
            blocks.push_back(RawBlock{words[0], words.size() == 2 ? words[1] : "", {}, lineno});
            cur = &blocks.back();
            continue;
        }
        if (s == "end") {
            cur = nullptr;
            continue;
        }
        cur->lines.emplace_back(lineno, s);
    }
    if (cur) fail(lineno, "unterminated block '" + cur->kind + "'");
    return blocks;
}

ExprPtr parse_line_expr(int lineno, const std::string& text) {
    try {
        return parse_expr(text);
    } catch (const MsympError& e) {
        fail(lineno, std::string(e.what()) + " in '" + text + "'");
    }
}

// "<expr> : <name> <name> ..." records
DiffForm form_from_records(const ChartPtr& chart, int degree, const RawBlock& b) {
    DiffForm a(chart, degree);
    for (const auto& [ln, s] : b.lines) {
        auto colon = s.find(':');
        if (colon == std::string::npos) fail(ln, "expected '<expr> : <basis>' record");
        ExprPtr coeff = parse_line_expr(ln, strip(s.substr(0, colon)));
        auto names = split_ws(s.substr(colon + 1));
        if (static_cast<int>(names.size()) != degree)
            fail(ln, "basis needs exactly " + std::to_string(degree) + " coordinate names");
        std::vector<int> ix;
        for (const auto& n : names) {
            int i = chart->index_of(n);
            if (i < 0) fail(ln, "unknown coordinate '" + n + "'");
            ix.push_back(i);
        }
        for (size_t i = 0; i < ix.size(); ++i)
            for (size_t j = i + 1; j < ix.size(); ++j)
                if (ix[i] == ix[j]) fail(ln, "duplicate coordinate in basis");
        a.set(ix, coeff);
    }
    return a;
}

void check_symbols_declared(const ChartPtr& chart, const ExprPtr& e, int ln) {
    std::set<std::string> syms;
    collect_symbols(e, syms);
    for (const auto& s : syms)
        if (chart->index_of(s) < 0) fail(ln, "undeclared symbol '" + s + "'");
}

}  // namespace

SystemFile parse_system_file(const std::string& text) {
    auto blocks = split_blocks(text);

    SystemFile f;
    // chart first
    for (const auto& b : blocks) {
        if (b.kind != "chart") continue;
        if (f.chart) fail(b.head_line, "duplicate chart block");
        std::vector<std::string> base, fiber;
        for (const auto& [ln, s] : b.lines) {
            auto words = split_ws(s);
            if (words.size() < 2) fail(ln, "expected 'base <names>' or 'fiber <names>'");
            if (words[0] == "base") {
                base.insert(base.end(), words.begin() + 1, words.end());
            } else if (words[0] == "fiber") {
                fiber.insert(fiber.end(), words.begin() + 1, words.end());
            } else {
                fail(ln, "expected 'base' or 'fiber'");
            }
        }
        try {
            f.chart = make_chart(base, fiber);
        } catch (const MsympError& e) {
            fail(b.head_line, e.what());
        }
    }
    if (!f.chart) fail(1, "missing chart block");
    int m = f.chart->base_dim();

    for (const auto& b : blocks) {
        if (b.kind == "chart") continue;
        if (b.kind == "theta") {
            if (f.theta) fail(b.head_line, "duplicate theta block");
            f.theta = form_from_records(f.chart, m, b);
            for (const auto& [k, v] : f.theta->g().coeffs()) {
                (void)k;
                check_symbols_declared(f.chart, v, b.head_line);
            }
        } else if (b.kind == "omega") {
            if (f.omega) fail(b.head_line, "duplicate omega block");
            f.omega = form_from_records(f.chart, m + 1, b);
            for (const auto& [k, v] : f.omega->g().coeffs()) {
                (void)k;
                check_symbols_declared(f.chart, v, b.head_line);
            }
        } else if (b.kind == "coordinate_data") {
            if (f.data) fail(b.head_line, "duplicate coordinate_data block");
            CoordinateData data;
            data.F.assign(static_cast<size_t>(f.chart->fiber_dim()),
                          std::vector<ExprPtr>(static_cast<size_t>(m), zero()));
            data.E = zero();
            for (const auto& [ln, s] : b.lines) {
                auto eq = s.find('=');
                if (eq == std::string::npos) fail(ln, "expected '=' in coordinate_data entry");
                auto head = split_ws(s.substr(0, eq));
                ExprPtr e = parse_line_expr(ln, strip(s.substr(eq + 1)));
                check_symbols_declared(f.chart, e, ln);
                if (head.size() == 1 && head[0] == "E") {
                    data.E = e;
                } else if (head.size() == 3 && head[0] == "F") {
                    int j = f.chart->index_of(head[1]);
                    int mu = f.chart->index_of(head[2]);
                    if (j < m || j < 0) fail(ln, "'" + head[1] + "' is not a fiber coordinate");
                    if (mu < 0 || mu >= m) fail(ln, "'" + head[2] + "' is not a base coordinate");
                    data.F[static_cast<size_t>(j - m)][static_cast<size_t>(mu)] = e;
                } else {
                    fail(ln, "expected 'F <fiber> <base> = <expr>' or 'E = <expr>'");
                }
            }
            f.data = std::move(data);
        } else if (b.kind == "section") {
            if (b.name.empty()) fail(b.head_line, "section needs a name");
            std::map<std::string, ExprPtr> comp;
            for (const auto& [ln, s] : b.lines) {
                auto eq = s.find('=');
                if (eq == std::string::npos) fail(ln, "expected '<fiber> = <expr>'");
                std::string nm = strip(s.substr(0, eq));
                int i = f.chart->index_of(nm);
                if (i < 0) fail(ln, "unknown coordinate '" + nm + "'");
                if (i < m) fail(ln, "'" + nm + "' is not a fiber coordinate");
                ExprPtr e = parse_line_expr(ln, strip(s.substr(eq + 1)));
                check_symbols_declared(f.chart, e, ln);
                comp[nm] = e;
            }
            std::vector<ExprPtr> fns;
            for (int j = 0; j < f.chart->fiber_dim(); ++j) {
                auto it = comp.find(f.chart->name(m + j));
                if (it == comp.end())
                    fail(b.head_line, "section '" + b.name + "' missing component '" +
                                          f.chart->name(m + j) + "'");
                fns.push_back(it->second);
            }
            try {
                f.sections.emplace(b.name, Section(f.chart, fns));
            } catch (const MsympError& e) {
                fail(b.head_line, e.what());
            }
        } else if (b.kind == "vectorfield") {
            if (b.name.empty()) fail(b.head_line, "vectorfield needs a name");
            std::vector<ExprPtr> comps(static_cast<size_t>(f.chart->dim()), zero());
            for (const auto& [ln, s] : b.lines) {
                auto eq = s.find('=');
                if (eq == std::string::npos) fail(ln, "expected '<coordinate> = <expr>'");
                std::string nm = strip(s.substr(0, eq));
                int i = f.chart->index_of(nm);
                if (i < 0) fail(ln, "unknown coordinate '" + nm + "'");
                ExprPtr e = parse_line_expr(ln, strip(s.substr(eq + 1)));
                check_symbols_declared(f.chart, e, ln);
                comps[static_cast<size_t>(i)] = e;
            }
            f.vectorfields.emplace(b.name, vector_field(f.chart, comps));
        } else if (b.kind == "ansatz") {
            if (b.name.empty()) fail(b.head_line, "ansatz needs a name");
            std::vector<std::vector<ExprPtr>> coef(
                static_cast<size_t>(f.chart->fiber_dim()),
                std::vector<ExprPtr>(static_cast<size_t>(m), zero()));
            for (const auto& [ln, s] : b.lines) {
                auto eq = s.find('=');
                if (eq == std::string::npos) fail(ln, "expected '<fiber> <base> = <expr>'");
                auto head = split_ws(s.substr(0, eq));
                if (head.size() != 2) fail(ln, "expected '<fiber> <base> = <expr>'");
                int j = f.chart->index_of(head[0]);
                int mu = f.chart->index_of(head[1]);
                if (j < 0) fail(ln, "unknown coordinate '" + head[0] + "'");
                if (j < m) fail(ln, "'" + head[0] + "' is not a fiber coordinate");
                if (mu < 0 || mu >= m) fail(ln, "'" + head[1] + "' is not a base coordinate");
                ExprPtr e = parse_line_expr(ln, strip(s.substr(eq + 1)));
                check_symbols_declared(f.chart, e, ln);
                coef[static_cast<size_t>(j - m)][static_cast<size_t>(mu)] = e;
            }
            f.ansaetze.emplace(b.name, DecomposableAnsatz(f.chart, coef));
        } else if (b.kind == "conserved") {
            if (b.name.empty()) fail(b.head_line, "conserved needs a name");
            DiffForm a = form_from_records(f.chart, m - 1, b);
            for (const auto& [k, v] : a.g().coeffs()) {
                (void)k;
                check_symbols_declared(f.chart, v, b.head_line);
            }
            f.conserved.emplace(b.name, a);
        } else {
            fail(b.head_line, "unknown block '" + b.kind + "'");
        }
    }

    int sources = (f.theta ? 1 : 0) + (f.omega ? 1 : 0) + (f.data ? 1 : 0);
    if (sources == 0) fail(1, "missing theta, omega or coordinate_data block");
    if (sources > 1) fail(1, "theta, omega and coordinate_data are mutually exclusive");
    return f;
}

PremultisymplecticSystem build_system(const SystemFile& f) {
    if (f.theta) return system_from_theta(f.chart, *f.theta);
    if (f.data) return system_from_coordinate_data(f.chart, *f.data);
    return system_from_omega(f.chart, *f.omega);
}

}  // namespace msymp
