#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cycleforge/interval.hpp"
#include "cycleforge/multipoly.hpp"

namespace cycleforge::io {

using ratpoly::MultiPoly;
using ratpoly::Rational;

/// Loads the canonical polynomial text format:
///   '#' comment lines, one "vars: <v1> <v2> ..." header, then the
///   polynomial body (any number of lines, concatenated).
inline MultiPoly load_poly_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw std::runtime_error("cannot open " + path);
    std::string line, body;
    std::vector<std::string> vars;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("vars:", 0) == 0) {
            std::istringstream vs(line.substr(5));
            std::string v;
            while (vs >> v) vars.push_back(v);
            continue;
        }
        body += line;
    }
    if (vars.empty())
        throw std::runtime_error(path + ": missing 'vars:' header");
    return MultiPoly::parse(body, vars);
}

inline void save_poly_file(const std::string& path, const MultiPoly& p,
                           const std::string& comment = {}) {
    std::ofstream out(path);
    if (!out.good()) throw std::runtime_error("cannot write " + path);
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "vars:";
    for (const auto& v : p.vars()) out << " " << v;
    out << "\n" << p.to_string() << "\n";
}

/// The certified root intervals used throughout the algebraic case analysis:
/// K1, K2, a1..a5, b1..b20, bstar.
class PaperBoxes {
  public:
    explicit PaperBoxes(const std::string& path) {
        std::ifstream in(path);
        if (!in.good()) throw std::runtime_error("cannot open " + path);
        nlohmann::json j;
        in >> j;
        for (auto& [name, iv] : j.at("intervals").items()) {
            intervals_.emplace(
                name, isolate::Interval(ratpoly::parse_rational(iv.at("lo")),
                                        ratpoly::parse_rational(iv.at("hi"))));
        }
    }

    const isolate::Interval& at(const std::string& name) const {
        auto it = intervals_.find(name);
        if (it == intervals_.end())
            throw std::out_of_range("no interval named '" + name + "'");
        return it->second;
    }

    bool has(const std::string& name) const { return intervals_.count(name) > 0; }

    /// Box over (K, a, b) from three named intervals.
    isolate::Box kab_box(const std::string& K, const std::string& a,
                         const std::string& b, bool negate_b = false) const {
        isolate::Interval bi = at(b);
        if (negate_b) bi = isolate::Interval(-bi.hi, -bi.lo);
        return isolate::Box({"K", "a", "b"}, {at(K), at(a), bi});
    }

    const std::map<std::string, isolate::Interval>& all() const {
        return intervals_;
    }

  private:
    std::map<std::string, isolate::Interval> intervals_;
};

struct DataDir {
    std::string root;

    std::string poly(int i) const {
        return root + "/appendix_b/phi" + std::to_string(i) + ".poly";
    }
    std::string boxes() const { return root + "/paper_boxes.json"; }
    std::string params(const std::string& name) const {
        return root + "/params/" + name;
    }
};

/// Loads phi1..phi4 and validates the transcription gates (term counts and
/// the exact case-split factorization of phi1 at a=1) before anything else
/// may use them.
class AppendixB {
  public:
    explicit AppendixB(const DataDir& dir) {
        for (int i = 1; i <= 4; ++i) phi_[i - 1] = load_poly_file(dir.poly(i));
        validate();
    }

    const MultiPoly& phi(int i) const {
        if (i < 1 || i > 4) throw std::out_of_range("phi index");
        return phi_[i - 1];
    }

    /// phi_i with b -> -b (the reflected-variable device).
    MultiPoly phi_hat(int i) const { return phi(i).negate_var("b"); }

    void validate() const {
        static constexpr std::size_t expected[4] = {29, 340, 1216, 2947};
        for (int i = 0; i < 4; ++i)
            if (phi_[i].term_count() != expected[i])
                throw std::runtime_error("phi" + std::to_string(i + 1) +
                                         ": term count " +
                                         std::to_string(phi_[i].term_count()) +
                                         " != " + std::to_string(expected[i]));
        const auto& vars = phi_[0].vars();
        auto factored = MultiPoly::parse("b + 4", vars) *
                        MultiPoly::parse("b + 2", vars) *
                        MultiPoly::parse("b + 2", vars) *
                        MultiPoly::parse("K^2 - 4*K + 1 - K*b", vars);
        if (phi_[0].subst("a", Rational(1)) != MultiPoly(vars) - factored)
            throw std::runtime_error("phi1 fails the a=1 factorization gate");
    }

  private:
    MultiPoly phi_[4];
};

}  // namespace cycleforge::io
