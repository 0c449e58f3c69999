#include "geomsched/mip_model.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "geomsched/instance.hpp"

namespace geomsched {

namespace {
long long job_period_key(int job, int period) {
    return static_cast<long long>(job) * 1000003LL + period;
}
}  // namespace

int MipModel::add_var(const std::string& name, int job, int period) {
    int idx = static_cast<int>(vars.size());
    vars.push_back({name, job, period});
    by_name_[name] = idx;
    if (job >= 0) by_job_period_[job_period_key(job, period)] = idx;
    return idx;
}

int MipModel::var_index(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
}

int MipModel::var_index(int job, int period) const {
    auto it = by_job_period_.find(job_period_key(job, period));
    return it == by_job_period_.end() ? -1 : it->second;
}

double MipModel::objective_value(const std::vector<double>& point) const {
    double v = 0.0;
    for (const auto& t : objective) v += t.coef * point[static_cast<size_t>(t.var)];
    return v;
}

bool MipModel::satisfied(const std::vector<double>& point) const {
    for (const auto& c : constraints) {
        double lhs = 0.0;
        for (const auto& t : c.terms) lhs += t.coef * point[static_cast<size_t>(t.var)];
        if (c.rel == Relation::LessEqual) {
            if (lhs > c.rhs + 1e-9) return false;
        } else {
            if (std::abs(lhs - c.rhs) > 1e-9) return false;
        }
    }
    return true;
}

namespace {

std::string format_coef(double c) {
    if (!std::isfinite(c)) throw StructuralError("non-finite coefficient in model");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", c);
    return buf;
}

// "c1 x1 + c2 x2 - c3 x3" with one leading sign per term after the first.
void append_terms(std::ostringstream& os, const MipModel& model,
                  const std::vector<LinTerm>& terms) {
    bool first = true;
    for (const auto& t : terms) {
        double c = t.coef;
        if (first) {
            if (c < 0.0) {
                os << "- ";
                c = -c;
            }
            first = false;
        } else {
            os << (c < 0.0 ? " - " : " + ");
            c = std::abs(c);
        }
        os << format_coef(c) << " " << model.vars[static_cast<size_t>(t.var)].name;
    }
}

}  // namespace

std::string write_lp(const MipModel& model) {
    std::ostringstream os;
    os << "\\ geomsched model\n";
    os << "Maximize\n obj:";
    if (!model.objective.empty()) {
        os << " ";
        append_terms(os, model, model.objective);
    }
    os << "\nSubject To\n";
    for (const auto& c : model.constraints) {
        if (c.terms.empty()) continue;
        os << " " << c.name << ": ";
        append_terms(os, model, c.terms);
        os << (c.rel == Relation::LessEqual ? " <= " : " = ");
        os << format_coef(c.rhs) << "\n";
    }
    os << "Bounds\n";
    os << "Binaries\n";
    for (const auto& v : model.vars) os << " " << v.name << "\n";
    os << "End\n";
    return os.str();
}

namespace {

struct Token {
    std::string text;
};

std::vector<std::string> tokenize_expr(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) {
                out.push_back(cur);
                cur.clear();
            }
        } else if (ch == '+' || ch == '-') {
            if (!cur.empty()) {
                out.push_back(cur);
                cur.clear();
            }
            out.push_back(std::string(1, ch));
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool looks_numeric(const std::string& s) {
    return !s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '.');
}

// Parses "[sign] [coef] var [sign coef var ...]" into terms, creating vars.
std::vector<LinTerm> parse_terms(const std::string& expr, MipModel& model) {
    std::vector<LinTerm> terms;
    auto tokens = tokenize_expr(expr);
    size_t i = 0;
    while (i < tokens.size()) {
        double sign = 1.0;
        while (i < tokens.size() && (tokens[i] == "+" || tokens[i] == "-")) {
            if (tokens[i] == "-") sign = -sign;
            ++i;
        }
        if (i >= tokens.size()) break;
        double coef = 1.0;
        if (looks_numeric(tokens[i])) {
            coef = std::stod(tokens[i]);
            ++i;
        }
        if (i >= tokens.size())
            throw StructuralError("LP parse error: dangling coefficient in '" + expr + "'");
        const std::string& name = tokens[i++];
        int idx = model.var_index(name);
        if (idx < 0) idx = model.add_var(name);
        terms.push_back({idx, sign * coef});
    }
    return terms;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

MipModel parse_lp(const std::string& text) {
    MipModel model;
    enum Section { None, Objective, Constraints, Bounds, Binaries, Done };
    Section section = None;

    std::istringstream in(text);
    std::string line;
    std::string pending;  // accumulated objective text
    auto flush_objective = [&]() {
        std::string expr = trim(pending);
        auto colon = expr.find(':');
        if (colon != std::string::npos) expr = expr.substr(colon + 1);
        model.objective = parse_terms(expr, model);
        pending.clear();
    };

    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '\\') continue;
        if (t == "Maximize") { section = Objective; continue; }
        if (t == "Subject To") {
            if (section == Objective) flush_objective();
            section = Constraints;
            continue;
        }
        if (t == "Bounds") { section = Bounds; continue; }
        if (t == "Binaries") { section = Binaries; continue; }
        if (t == "End") { section = Done; break; }

        switch (section) {
            case Objective:
                pending += " " + t;
                break;
            case Constraints: {
                auto colon = t.find(':');
                std::string name = colon == std::string::npos ? "" : trim(t.substr(0, colon));
                std::string body = colon == std::string::npos ? t : t.substr(colon + 1);
                Relation rel;
                size_t op = body.find("<=");
                size_t oplen = 2;
                if (op != std::string::npos) {
                    rel = Relation::LessEqual;
                } else {
                    op = body.find('=');
                    oplen = 1;
                    if (op == std::string::npos)
                        throw StructuralError("LP parse error: no relation in '" + t + "'");
                    rel = Relation::Equal;
                }
                LinConstraint c;
                c.name = name;
                c.terms = parse_terms(body.substr(0, op), model);
                c.rel = rel;
                c.rhs = std::stod(trim(body.substr(op + oplen)));
                model.constraints.push_back(std::move(c));
                break;
            }
            case Bounds:
                break;  // binaries carry implicit 0/1 bounds
            case Binaries: {
                for (const auto& name : tokenize_expr(t))
                    if (model.var_index(name) < 0) model.add_var(name);
                break;
            }
            default:
                throw StructuralError("LP parse error: content outside sections: '" + t + "'");
        }
    }
    return model;
}

}  // namespace geomsched
