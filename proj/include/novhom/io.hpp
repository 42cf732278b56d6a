#ifndef NOVHOM_IO_HPP
#define NOVHOM_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "novhom/cellcomplex.hpp"
#include "novhom/genfun.hpp"

namespace novhom {
namespace io {

struct parse_error : usage_error {
    using usage_error::usage_error;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline int to_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parse_error("expected an integer for " + what + ", got '" + s + "'");
    }
}

inline double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parse_error("expected a number for " + what + ", got '" + s + "'");
    }
}

/// strip comments ('#' to end of line) and surrounding whitespace
inline std::string clean_line(std::string line) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto is_space = [](unsigned char c) { return std::isspace(c); };
    while (!line.empty() && is_space(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && is_space(static_cast<unsigned char>(line[start]))) ++start;
    return line.substr(start);
}

/// split "directive: payload" or bare "directive"
inline std::pair<std::string, std::string> directive_of(const std::string& line) {
    auto colon = line.find(':');
    if (colon == std::string::npos) return {line, ""};
    std::string head = clean_line(line.substr(0, colon));
    std::string tail = clean_line(line.substr(colon + 1));
    return {head, tail};
}

}  // namespace detail

// ---------------------------------------------------------------------
// complex files
//
//   simplicial                     explicit
//   dim 2                          vars 1
//   simplex 0: 0                   cells: 1 4 1
//   simplex 1: 0 1                 boundary 1: 0 0 t1 - 1
//   cocycle 1: 0 1 -> 1            boundary 2: 1 0 t1 - 1
//
// '#' starts a comment; blank lines are skipped; anything else is an error.
// ---------------------------------------------------------------------

struct ComplexInput {
    std::optional<cells::SimplicialComplex> simplicial;
    std::optional<cells::Cocycle> cocycle;  // default: zero of rank 1
    std::optional<cells::TwistedComplex> explicit_complex;

    bool is_simplicial() const { return simplicial.has_value(); }

    /// the twisted complex this input denotes
    cells::TwistedComplex twisted() const {
        if (explicit_complex) return *explicit_complex;
        return cells::twist(*simplicial, effective_cocycle());
    }
    cells::Cocycle effective_cocycle() const {
        if (cocycle) return *cocycle;
        return cells::Cocycle::zero(*simplicial, 1);
    }
};

inline ComplexInput parse_complex(std::istream& in, const std::string& name) {
    std::vector<std::string> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = detail::clean_line(raw);
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw parse_error(name + ": empty complex file");

    ComplexInput out;
    if (lines[0] == "simplicial") {
        std::optional<int> declared_dim;
        std::vector<std::vector<int>> simplices;
        std::map<std::pair<int, int>, std::vector<int>> weights;
        std::optional<int> cocycle_rank;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            auto [head, payload] = detail::directive_of(lines[i]);
            auto words = detail::split_ws(head);
            if (words.empty()) throw parse_error(name + ": malformed line '" + lines[i] + "'");
            if (words[0] == "dim") {
                if (words.size() != 2 || declared_dim)
                    throw parse_error(name + ": malformed dim directive");
                declared_dim = detail::to_int(words[1], "dim");
            } else if (words[0] == "simplex") {
                if (words.size() != 2) throw parse_error(name + ": malformed simplex directive");
                int d = detail::to_int(words[1], "simplex dimension");
                auto verts = detail::split_ws(payload);
                if (static_cast<int>(verts.size()) != d + 1)
                    throw parse_error(name + ": simplex of dimension " + std::to_string(d) + " needs " +
                                      std::to_string(d + 1) + " vertices");
                std::vector<int> s;
                for (const auto& v : verts) s.push_back(detail::to_int(v, "vertex"));
                simplices.push_back(std::move(s));
            } else if (words[0] == "cocycle") {
                if (words.size() != 2) throw parse_error(name + ": malformed cocycle directive");
                int r = detail::to_int(words[1], "cocycle rank");
                if (cocycle_rank && *cocycle_rank != r)
                    throw parse_error(name + ": inconsistent cocycle rank");
                cocycle_rank = r;
                auto arrow = payload.find("->");
                if (arrow == std::string::npos)
                    throw parse_error(name + ": cocycle line needs 'u v -> k1 .. kr'");
                auto uv = detail::split_ws(payload.substr(0, arrow));
                auto ks = detail::split_ws(payload.substr(arrow + 2));
                if (uv.size() != 2 || static_cast<int>(ks.size()) != r)
                    throw parse_error(name + ": malformed cocycle line '" + lines[i] + "'");
                int u = detail::to_int(uv[0], "edge endpoint");
                int v = detail::to_int(uv[1], "edge endpoint");
                std::vector<int> w;
                for (const auto& k : ks) w.push_back(detail::to_int(k, "weight"));
                if (u > v) {
                    std::swap(u, v);
                    for (auto& x : w) x = -x;
                }
                if (weights.count({u, v})) throw parse_error(name + ": repeated cocycle edge");
                weights[{u, v}] = std::move(w);
            } else {
                throw parse_error(name + ": unknown directive '" + words[0] + "'");
            }
        }
        out.simplicial.emplace(simplices);
        if (declared_dim && *declared_dim != out.simplicial->dim())
            throw usage_error(name + ": declared dim " + std::to_string(*declared_dim) +
                              " but the simplices have dimension " + std::to_string(out.simplicial->dim()));
        if (cocycle_rank) out.cocycle.emplace(*cocycle_rank, std::move(weights));
        return out;
    }

    if (lines[0] == "explicit") {
        std::optional<int> vars;
        std::vector<int> counts;
        struct Entry {
            int degree, row, col;
            std::string poly;
        };
        std::vector<Entry> entries;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            auto [head, payload] = detail::directive_of(lines[i]);
            auto words = detail::split_ws(head);
            if (words.empty()) throw parse_error(name + ": malformed line '" + lines[i] + "'");
            if (words[0] == "vars") {
                if (words.size() != 2 || vars) throw parse_error(name + ": malformed vars directive");
                vars = detail::to_int(words[1], "vars");
            } else if (words[0] == "cells") {
                if (!counts.empty()) throw parse_error(name + ": repeated cells directive");
                for (const auto& c : detail::split_ws(payload))
                    counts.push_back(detail::to_int(c, "cell count"));
                if (counts.empty()) throw parse_error(name + ": cells directive needs counts");
            } else if (words[0] == "boundary") {
                if (words.size() != 2) throw parse_error(name + ": malformed boundary directive");
                int d = detail::to_int(words[1], "boundary degree");
                auto toks = detail::split_ws(payload);
                if (toks.size() < 3) throw parse_error(name + ": boundary line needs 'row col poly'");
                int row = detail::to_int(toks[0], "row");
                int col = detail::to_int(toks[1], "col");
                std::string poly = payload;
                // drop the two leading indices, keep the polynomial text
                std::size_t p = poly.find(toks[0]);
                p = poly.find(toks[1], p + toks[0].size());
                poly = detail::clean_line(poly.substr(p + toks[1].size()));
                entries.push_back({d, row, col, poly});
            } else {
                throw parse_error(name + ": unknown directive '" + words[0] + "'");
            }
        }
        if (counts.empty()) throw parse_error(name + ": explicit complex needs a cells directive");
        int nvars = 0;
        std::vector<LaurentQ> parsed;
        parsed.reserve(entries.size());
        if (!vars) {
            for (const auto& e : entries) {
                LaurentQ p = parse_laurent(e.poly);
                nvars = std::max(nvars, p.nvars());
            }
        } else {
            nvars = *vars;
        }
        const int dim = static_cast<int>(counts.size()) - 1;
        std::vector<SparseMatrix<LaurentQ>> boundaries;
        boundaries.emplace_back(0, counts[0]);
        for (int d = 1; d <= dim; ++d)
            boundaries.emplace_back(counts[static_cast<std::size_t>(d - 1)], counts[static_cast<std::size_t>(d)]);
        for (const auto& e : entries) {
            if (e.degree < 1 || e.degree > dim)
                throw usage_error(name + ": boundary degree " + std::to_string(e.degree) + " out of range");
            LaurentQ p = parse_laurent(e.poly, nvars);
            auto& m = boundaries[static_cast<std::size_t>(e.degree)];
            if (e.row < 0 || e.row >= m.rows() || e.col < 0 || e.col >= m.cols())
                throw usage_error(name + ": boundary entry out of range");
            m.set(e.row, e.col, p);
        }
        cells::TwistedComplex tc(nvars, counts, std::move(boundaries));
        tc.validate_square_zero();
        out.explicit_complex = std::move(tc);
        return out;
    }

    throw parse_error(name + ": expected 'simplicial' or 'explicit' header, got '" + lines[0] + "'");
}

inline ComplexInput load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open complex file " + path);
    return parse_complex(in, path);
}

// ---------------------------------------------------------------------
// function files
//
//   torus 1
//   term: 1 3 -1.5707963267948966      # freq.. amp phase
//   beta: 1                            # constant part a
//   beta_exact: 1 0.3 0.7              # terms of the exact part h
//   fiber 1                            # optional generating-function data
//   quadratic: -1
//   radius 4
//   coupling_poly: 1 0.7               # fiber-degrees.. coeff (default 1)
//
// A file opening with 'pair' holds two such blocks; beta lives in the first.
// ---------------------------------------------------------------------

struct FunctionInput {
    genfun::GeneratingFunction f1;
    std::optional<genfun::GeneratingFunction> f2;
    smooth::BetaForm beta;
    bool is_pair() const { return f2.has_value(); }
};

namespace detail {

struct FunctionBlock {
    int n = 0;
    std::vector<smooth::TorusTrig::Term> terms;
    std::optional<std::vector<double>> beta_a;
    std::vector<smooth::TorusTrig::Term> beta_exact;
    std::optional<int> fiber;
    std::vector<int> quadratic;
    std::optional<double> radius;
    std::vector<genfun::FiberPolyTerm> poly;
};

inline smooth::TorusTrig::Term parse_trig_term(const std::vector<std::string>& toks, int n,
                                               const std::string& name) {
    if (static_cast<int>(toks.size()) != n + 2)
        throw parse_error(name + ": trig term needs " + std::to_string(n) + " frequencies, amp, phase");
    smooth::TorusTrig::Term t;
    for (int i = 0; i < n; ++i) t.freq.push_back(to_int(toks[static_cast<std::size_t>(i)], "frequency"));
    t.amp = to_double(toks[static_cast<std::size_t>(n)], "amplitude");
    t.phase = to_double(toks[static_cast<std::size_t>(n) + 1], "phase");
    return t;
}

inline genfun::GeneratingFunction build_function(const FunctionBlock& b, const std::string& name) {
    smooth::TorusTrig trig(b.n);
    for (const auto& t : b.terms) trig.add_term(t.freq, t.amp, t.phase);
    int m = b.fiber.value_or(0);
    if (m > 0) {
        if (static_cast<int>(b.quadratic.size()) != m)
            throw usage_error(name + ": quadratic directive must list " + std::to_string(m) + " signs");
        if (!b.radius) throw usage_error(name + ": generating functions need a radius");
        return genfun::GeneratingFunction(b.n, b.quadratic, *b.radius, std::move(trig), b.poly);
    }
    if (!b.quadratic.empty() || b.radius || !b.poly.empty())
        throw usage_error(name + ": fiber directives present without a fiber dimension");
    return genfun::GeneratingFunction(b.n, {}, 0.0, std::move(trig));
}

}  // namespace detail

inline FunctionInput parse_function(std::istream& in, const std::string& name) {
    std::vector<std::string> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = detail::clean_line(raw);
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw parse_error(name + ": empty function file");

    bool pair = lines[0] == "pair";
    std::size_t i = pair ? 1 : 0;
    std::vector<detail::FunctionBlock> blocks;
    for (; i < lines.size(); ++i) {
        auto [head, payload] = detail::directive_of(lines[i]);
        auto words = detail::split_ws(head);
        if (words.empty()) throw parse_error(name + ": malformed line '" + lines[i] + "'");
        const std::string& d = words[0];
        if (d == "torus") {
            if (words.size() != 2) throw parse_error(name + ": malformed torus directive");
            blocks.emplace_back();
            blocks.back().n = detail::to_int(words[1], "torus dimension");
            if (blocks.back().n < 1) throw usage_error(name + ": torus dimension must be positive");
            continue;
        }
        if (blocks.empty()) throw parse_error(name + ": directives before the torus header");
        auto& b = blocks.back();
        auto toks = detail::split_ws(payload);
        if (d == "term") {
            b.terms.push_back(detail::parse_trig_term(toks, b.n, name));
        } else if (d == "beta") {
            if (b.beta_a) throw parse_error(name + ": repeated beta directive");
            if (static_cast<int>(toks.size()) != b.n)
                throw parse_error(name + ": beta needs " + std::to_string(b.n) + " components");
            std::vector<double> a;
            for (const auto& t : toks) a.push_back(detail::to_double(t, "beta component"));
            b.beta_a = std::move(a);
        } else if (d == "beta_exact") {
            b.beta_exact.push_back(detail::parse_trig_term(toks, b.n, name));
        } else if (d == "fiber") {
            if (words.size() != 2) throw parse_error(name + ": malformed fiber directive");
            b.fiber = detail::to_int(words[1], "fiber dimension");
            if (*b.fiber < 0) throw usage_error(name + ": negative fiber dimension");
        } else if (d == "quadratic") {
            for (const auto& t : toks) b.quadratic.push_back(detail::to_int(t, "quadratic sign"));
        } else if (d == "radius") {
            if (words.size() == 2)
                b.radius = detail::to_double(words[1], "radius");
            else if (toks.size() == 1)
                b.radius = detail::to_double(toks[0], "radius");
            else
                throw parse_error(name + ": malformed radius directive");
        } else if (d == "coupling_poly") {
            int m = b.fiber.value_or(0);
            if (static_cast<int>(toks.size()) != m + 1)
                throw parse_error(name + ": coupling_poly needs " + std::to_string(m) + " degrees and a coefficient");
            genfun::FiberPolyTerm t;
            for (int q = 0; q < m; ++q) t.degrees.push_back(detail::to_int(toks[static_cast<std::size_t>(q)], "degree"));
            t.coeff = detail::to_double(toks.back(), "coefficient");
            b.poly.push_back(std::move(t));
        } else {
            throw parse_error(name + ": unknown directive '" + d + "'");
        }
    }

    if (blocks.empty()) throw parse_error(name + ": no torus block");
    if (pair && blocks.size() != 2) throw parse_error(name + ": pair files need exactly two torus blocks");
    if (!pair && blocks.size() != 1) throw parse_error(name + ": multiple torus blocks need the pair header");
    if (blocks.size() == 2 && blocks[1].n != blocks[0].n)
        throw usage_error(name + ": the two functions live over different tori");
    if (blocks.size() == 2 && (blocks[1].beta_a || !blocks[1].beta_exact.empty()))
        throw usage_error(name + ": beta belongs to the first block of a pair");

    const auto& b0 = blocks[0];
    smooth::Vec a = smooth::Vec::Zero(b0.n);
    if (b0.beta_a)
        for (int j = 0; j < b0.n; ++j) a[j] = (*b0.beta_a)[static_cast<std::size_t>(j)];
    smooth::TorusTrig h(b0.n);
    for (const auto& t : b0.beta_exact) h.add_term(t.freq, t.amp, t.phase);

    FunctionInput out{detail::build_function(blocks[0], name), std::nullopt,
                      smooth::BetaForm(std::move(a), std::move(h))};
    if (blocks.size() == 2) out.f2 = detail::build_function(blocks[1], name);
    return out;
}

inline FunctionInput load_function(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open function file " + path);
    return parse_function(in, path);
}

}  // namespace io
}  // namespace novhom

#endif
