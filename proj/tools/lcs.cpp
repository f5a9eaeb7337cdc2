// lcs: command-line front end for checking LCS structures, twisted
// cohomology, extensions, lattice certificates and corpus regression.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

#include "lcs/lcs.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef LCS_DEFAULT_CORPUS
#define LCS_DEFAULT_CORPUS "data/corpus.txt"
#endif

namespace {

using json = nlohmann::ordered_json;
using namespace lcs;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Inputs {
    std::string file;
    std::vector<std::string> entries;
    std::string eq;
    std::string name = "inline";
    std::vector<std::string> params;
    std::string omega;
    std::string theta;
    bool json = false;
};

std::string default_corpus() {
    if (const char* env = std::getenv("LCS_CORPUS"); env && *env) return env;
    return LCS_DEFAULT_CORPUS;
}

void add_input_options(CLI::App* cmd, Inputs& in, bool with_omega) {
    cmd->add_option("file", in.file, "Corpus file (default: $LCS_CORPUS or the shipped corpus)");
    cmd->add_option("--entry,-e", in.entries, "Only these corpus entries (by name)");
    cmd->add_option("--eq", in.eq, "Inline structure equations, e.g. \"(0,-12,13,0)\"");
    cmd->add_option("--name", in.name, "Name for the inline algebra");
    cmd->add_option("--param,-p", in.params, "Parameter for inline equations, e.g. α=-1/3");
    if (with_omega) cmd->add_option("--omega", in.omega, "2-form overriding the entry's omega");
    cmd->add_option("--theta", in.theta, "1-form overriding the entry's theta");
    cmd->add_flag("--json", in.json, "Machine-readable output");
}

std::vector<CorpusEntry> select_entries(const Inputs& in) {
    std::vector<CorpusEntry> out;
    if (!in.eq.empty()) {
        std::string joined;
        for (const auto& p : in.params) joined += (joined.empty() ? "" : ",") + p;
        CorpusEntry e;
        e.name = in.name;
        e.equations = {in.eq, 1, 1};
        e.parameters = detail::parse_parameters(joined, 1, 1);
        out.push_back(std::move(e));
    } else {
        auto all = read_corpus(in.file.empty() ? default_corpus() : in.file);
        if (in.entries.empty()) {
            out = std::move(all);
        } else {
            for (const auto& want : in.entries) {
                bool found = false;
                for (const auto& e : all)
                    if (e.name == want) {
                        out.push_back(e);
                        found = true;
                    }
                if (!found) throw CLI::ValidationError("--entry", "no corpus entry named " + want);
            }
        }
    }
    for (auto& e : out) {
        if (!in.omega.empty()) e.omega = Located{in.omega, 1, 1};
        if (!in.theta.empty()) e.theta = Located{in.theta, 1, 1};
    }
    return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string tuple(const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

// "e3 - 1/2 e4"
std::string vector_expr(const Vector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        const Rational a = abs(v[i]);
        out += out.empty() ? (v[i] < 0 ? "-" : "") : (v[i] < 0 ? " - " : " + ");
        if (a != 1) out += a.get_str() + " ";
        out += "e" + std::to_string(i + 1);
    }
    return out.empty() ? "0" : out;
}

json vector_json(const Vector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

json emit(bool as_json, const json& doc, const std::string& text) {
    if (as_json)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text;
    return doc;
}

// check

int run_check(const Inputs& in) {
    const auto entries = select_entries(in);
    bool all_ok = true;
    json doc{{"command", "check"}, {"entries", json::array()}};
    std::ostringstream text;
    for (const auto& e : entries) {
        const LieAlgebra g = e.algebra();
        if (!e.has_structure()) continue;
        const KForm omega = e.omega_form(g.dim());
        const KForm theta = e.theta_form(g.dim());
        json item{{"name", e.name}, {"verdicts", json::object()}, {"vectors", json::object()}};
        const LcsCheck c = check_lcs(g, omega, theta);
        item["verdicts"]["lcs"] = c.ok;
        text << e.name << ": ";
        if (!c) {
            all_ok = false;
            item["diagnosis"] = c.diagnosis;
            item["vectors"]["witness"] = vector_json(c.witness);
            text << "LCS: no\n  diagnosis: " << c.diagnosis << "\n";
            doc["entries"].push_back(item);
            continue;
        }
        const KindVerdict kind = classify_kind(g, omega, theta);
        const auto eta = is_exact(g, omega, theta);
        const bool uni = is_unimodular(g);
        item["verdicts"]["kind"] = to_string(kind.kind);
        item["verdicts"]["exact"] = eta.has_value();
        item["verdicts"]["unimodular"] = uni;
        json basis = json::array();
        for (const auto& x : kind.automorphism_basis) basis.push_back(vector_json(x));
        item["vectors"]["automorphism_basis"] = basis;
        item["vectors"]["lee_values"] = vector_json(kind.lee_values);
        if (eta) item["vectors"]["primitive"] = vector_json(eta->as_vector());
        text << "LCS: yes, kind: " << to_string(kind.kind) << ", exact: " << yes_no(eta.has_value())
             << ", unimodular: " << yes_no(uni) << "\n";
        text << "  g_omega basis:";
        if (kind.automorphism_basis.empty()) text << " (none)";
        for (const auto& x : kind.automorphism_basis) text << " " << to_string(x);
        text << "\n";
        if (eta) text << "  omega = d_theta(" << format_form(*eta) << ")\n";
        doc["entries"].push_back(item);
    }
    if (doc["entries"].empty()) text << "no entries with an LCS structure\n";
    emit(in.json, doc, text.str());
    return all_ok ? kOk : kFailed;
}

// cohomology

int run_cohomology(const Inputs& in) {
    const auto entries = select_entries(in);
    bool all_ok = true;
    json doc{{"command", "cohomology"}, {"entries", json::array()}};
    std::ostringstream text;
    for (const auto& e : entries) {
        const LieAlgebra g = e.algebra();
        const KForm theta = e.theta_form(g.dim());
        const CohomologyReport r = cohomology(g, theta);
        all_ok = all_ok && r.formula_check;
        json item{{"name", e.name},
                  {"verdicts", {{"formula_check", r.formula_check}}},
                  {"vectors",
                   {{"theta", vector_json(theta.as_vector())},
                    {"betti", r.betti},
                    {"twisted_betti", r.twisted_betti},
                    {"closed_dims", r.closed_dims},
                    {"twisted_closed_dims", r.twisted_closed_dims}}}};
        doc["entries"].push_back(item);
        text << e.name << ":\n";
        text << "  betti: " << tuple(r.betti) << "\n";
        text << "  twisted betti (theta = " << format_form(theta) << "): " << tuple(r.twisted_betti) << "\n";
        text << "  closed-form count check: " << (r.formula_check ? "pass" : "FAIL") << "\n";
    }
    emit(in.json, doc, text.str());
    return all_ok ? kOk : kFailed;
}

// extend

struct ExtendOptions {
    Inputs in;
    std::string rep_file;
    std::string result_name;
    bool check_unimodular = false;
};

int run_extend(const ExtendOptions& opt) {
    const auto entries = select_entries(opt.in);
    if (entries.size() != 1)
        throw CLI::ValidationError("extend", "select exactly one algebra (use --entry or --eq)");
    const CorpusEntry& e = entries.front();
    const LieAlgebra h = e.algebra();
    const KForm omega = e.omega_form(h.dim());
    const KForm theta = e.theta_form(h.dim());
    const Representation rep = read_representation(opt.rep_file, h);
    if (auto c = is_lcs_representation(rep, theta); !c) {
        std::cerr << "not an LCS representation: " << c.diagnosis << "\n";
        return kFailed;
    }
    const ExtensionResult x = extend(h, omega, theta, rep);
    const std::size_t m = rep.space().dim() / 2;

    // Unimodular exactly when tr ad^h = m theta on h.
    bool trace_condition = true;
    for (std::size_t i = 0; i < h.dim(); ++i)
        if (adjoint(h, unit_vector(h.dim(), i)).trace() != Rational(m) * theta.as_vector()[i]) trace_condition = false;
    if (trace_condition != x.unimodular) throw InternalError("extend: unimodularity disagrees with the trace condition");

    CorpusEntry out;
    out.name = opt.result_name.empty() ? e.name + "_ext" + std::to_string(2 * m) : opt.result_name;
    out.equations.text = format_structure_equations(x.algebra);
    out.omega = Located{format_form(x.structure.omega)};
    out.theta = Located{format_form(x.structure.theta)};
    out.expect.kind = x.verdict.kind;
    out.expect.exact = x.exact;
    out.expect.unimodular = x.unimodular;
    out.note = "extension of " + e.name + " by a " + std::to_string(2 * m) + "-dimensional LCS representation";

    std::vector<std::string> brackets;
    const std::size_t n = x.algebra.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vector b = x.algebra.bracket_basis(i, j);
            if (is_zero(b)) continue;
            brackets.push_back("[e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + "] = " + vector_expr(b));
        }

    if (opt.in.json) {
        json doc{{"command", "extend"},
                 {"record", format_corpus_entry(out)},
                 {"verdicts",
                  {{"kind", to_string(x.verdict.kind)},
                   {"exact", x.exact},
                   {"unimodular", x.unimodular},
                   {"trace_condition", trace_condition}}},
                 {"vectors", {{"brackets", brackets}, {"theta", vector_json(x.structure.theta.as_vector())}}}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "# nonzero brackets:\n";
        for (const auto& b : brackets) std::cout << "#   " << b << "\n";
        std::cout << format_corpus_entry(out) << "\n";
    }
    if (opt.check_unimodular && !x.unimodular) {
        std::cerr << "extension is not unimodular\n";
        return kFailed;
    }
    return kOk;
}

// lattice

std::string poly_text(const IntPolynomial& p) {
    std::string out;
    const std::size_t deg = p.size() - 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const long long c = p[i];
        if (c == 0) continue;
        const std::size_t k = deg - i;
        out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        const long long a = c < 0 ? -c : c;
        if (a != 1 || k == 0) out += std::to_string(a);
        if (k > 0) out += "x";
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
}

struct LatticeOptions {
    long long m = 0;
    std::string range;
    bool distinguish = false;
    double tol = kDefaultTolerance;
    bool json = false;
};

std::pair<long long, long long> parse_range(const std::string& r) {
    const auto dots = r.find("..");
    if (dots == std::string::npos) throw CLI::ValidationError("--range", "expected A..B");
    try {
        return {std::stoll(r.substr(0, dots)), std::stoll(r.substr(dots + 2))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--range", "expected integers in A..B");
    }
}

int run_lattice(const LatticeOptions& opt) {
    long long lo = opt.m, hi = opt.m;
    if (!opt.range.empty()) std::tie(lo, hi) = parse_range(opt.range);
    if (opt.m == 0 && opt.range.empty()) throw CLI::ValidationError("lattice", "give --m or --range");
    if (lo > hi) throw CLI::ValidationError("--range", "empty range");

    std::vector<std::future<LatticeCertificate>> jobs;
    if (lo <= 2) throw CLI::ValidationError("lattice", "m must exceed 2 (got " + std::to_string(lo) + ")");
    for (long long m = lo; m <= hi; ++m) {
        jobs.push_back(std::async(std::launch::async, [m, tol = opt.tol] { return build_certificate(m, tol); }));
    }
    json doc{{"command", "lattice"}, {"certificates", json::array()}, {"residuals", json::object()}};
    std::ostringstream text;
    bool ok = true;
    for (auto& j : jobs) {
        const LatticeCertificate c = j.get();
        const bool integral = integer_char_poly(c.D.topLeftCorner(3, 3)) == family_char_poly(c.m);
        ok = ok && integral;
        json rows = json::array();
        for (Eigen::Index i = 0; i < c.D.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index k = 0; k < c.D.cols(); ++k) row.push_back(c.D(i, k));
            rows.push_back(row);
        }
        doc["certificates"].push_back(
            {{"m", c.m}, {"t_m", format_double(c.t_m, "%.15g")}, {"D_m", rows}, {"char_poly_matches", integral}});
        doc["residuals"][std::to_string(c.m)] = c.residual;
        text << certificate_report(c);
        text << "char poly of C_m: " << poly_text(integer_char_poly(c.D.topLeftCorner(3, 3)))
             << (integral ? "" : "  MISMATCH") << "\n\n";
    }
    if (opt.distinguish) {
        json pairs = json::array();
        std::size_t unexpected = 0;
        text << "distinguish (m, n):\n";
        for (long long m = lo; m <= hi; ++m)
            for (long long n = m; n <= hi; ++n) {
                const bool d = distinguish_solvmanifolds(m, n, opt.tol);
                const bool expected = m != n;
                ok = ok && d == expected;
                unexpected += d != expected;
                pairs.push_back({{"m", m}, {"n", n}, {"distinct", d}});
                text << "  (" << m << ", " << n << "): " << (d ? "distinct" : "same spectrum")
                     << (d == expected ? "" : "  UNEXPECTED") << "\n";
            }
        doc["verdicts"] = {{"pairs", pairs}};
        if (unexpected == 0)
            text << "all pairs with m != n distinct\n";
        else
            text << unexpected << " unexpected pair verdicts\n";
    }
    const double psi_err = max_abs(psi_matrix(2 * std::numbers::pi) - RealMatrix::Identity(7, 7));
    doc["residuals"]["psi_2pi"] = psi_err;
    ok = ok && psi_err < opt.tol;
    text << "psi(2 pi) - Id: " << format_double(psi_err, "%.3e") << "\n";
    emit(opt.json, doc, text.str());
    return ok ? kOk : kFailed;
}

// regress

struct EntryOutcome {
    std::string name;
    std::size_t line = 0;
    std::vector<std::string> mismatches;
    std::vector<std::string> facts;
    json verdicts = json::object();
    bool no_ideal = false;
    std::string error;
};

template <class T>
void compare(EntryOutcome& o, const char* what, const std::optional<T>& expected, const T& actual,
             std::string (*show)(const T&)) {
    if (expected && !(*expected == actual))
        o.mismatches.push_back(std::string(what) + ": expected " + show(*expected) + ", got " + show(actual));
}

std::string show_bool(const bool& b) { return yes_no(b); }
std::string show_kind(const Kind& k) { return to_string(k); }
std::string show_rational(const Rational& r) { return r.get_str(); }

EntryOutcome regress_entry(const CorpusEntry& e) {
    EntryOutcome o;
    o.name = e.name;
    o.line = e.line;
    try {
        const LieAlgebra g = e.algebra();
        const bool uni = is_unimodular(g);
        o.verdicts["unimodular"] = uni;
        compare(o, "unimodular", e.expect.unimodular, uni, show_bool);
        if (!e.has_structure()) {
            if (e.expect.kind || e.expect.exact || e.expect.decomposable)
                o.mismatches.push_back("expectations given but no omega");
            return o;
        }
        const KForm omega = e.omega_form(g.dim());
        const KForm theta = e.theta_form(g.dim());
        const LcsCheck c = check_lcs(g, omega, theta);
        o.verdicts["lcs"] = c.ok;
        if (!c) {
            o.mismatches.push_back("not LCS: " + c.diagnosis);
            return o;
        }
        if (g.dim() >= 4) {
            const auto lee = recover_lee_form(g, omega);
            if (!lee || !(*lee == theta))
                o.mismatches.push_back("recovered Lee form " + (lee ? format_form(*lee) : std::string("(none)")) +
                                       " differs from theta " + format_form(theta));
        }
        const Kind kind = classify_kind(g, omega, theta).kind;
        o.verdicts["kind"] = to_string(kind);
        compare(o, "kind", e.expect.kind, kind, show_kind);
        const bool exact = is_exact(g, omega, theta).has_value();
        o.verdicts["exact"] = exact;
        compare(o, "exact", e.expect.exact, exact, show_bool);
        if (e.expect.extension_dim) {
            const auto n = unimodular_extension_dim(g, theta);
            o.verdicts["extension_n"] = n ? n->get_str() : "none";
            if (!n)
                o.mismatches.push_back("extension n: expected " + e.expect.extension_dim->get_str() + ", got none");
            else
                compare(o, "extension n", e.expect.extension_dim, *n, show_rational);
        }
        if (e.expect.decomposable && !theta.is_zero()) {
            const auto u = find_nondegenerate_abelian_ideal(g, omega, theta);
            o.verdicts["decomposable"] = u.has_value();
            if (u) {
                const Decomposition d = decompose(g, omega, theta, *u);
                std::string span;
                for (const auto& v : *u) span += (span.empty() ? "" : ", ") + to_string(v);
                o.facts.push_back("ideal span{" + span + "}, acting algebra " +
                                  format_structure_equations(d.acting));
            } else {
                o.no_ideal = true;
            }
            compare(o, "decomposable", e.expect.decomposable, u.has_value(), show_bool);
        }
    } catch (const Error& ex) {
        o.error = ex.what();
    }
    return o;
}

int run_regress(const std::string& file, bool as_json) {
    const std::string path = file.empty() ? default_corpus() : file;
    const auto entries = read_corpus(path);
    if (entries.empty()) {
        std::cerr << "warning: corpus " << path << " has no entries\n";
        if (as_json) std::cout << json{{"command", "regress"}, {"entries", json::array()}, {"passed", 0}, {"failed", 0}}.dump(2) << "\n";
        else std::cout << "0 entries, 0 passed, 0 failed\n";
        return kOk;
    }
    // Malformed records abort the run; semantic failures are reported per entry.
    for (const auto& e : entries) {
        try {
            const std::size_t n = e.algebra().dim();
            if (e.has_structure()) {
                e.omega_form(n);
                e.theta_form(n);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error&) {
        }
    }
    std::vector<std::future<EntryOutcome>> jobs;
    for (const auto& e : entries) jobs.push_back(std::async(std::launch::async, [&e] { return regress_entry(e); }));
    std::vector<EntryOutcome> results;
    for (auto& j : jobs) results.push_back(j.get());

    std::size_t passed = 0;
    json doc{{"command", "regress"}, {"entries", json::array()}};
    std::ostringstream text;
    std::vector<std::string> exceptional;
    for (const auto& r : results) {
        const bool ok = r.error.empty() && r.mismatches.empty();
        passed += ok;
        if (r.no_ideal) exceptional.push_back(r.name);
        json item{{"name", r.name}, {"line", r.line}, {"pass", ok}, {"verdicts", r.verdicts},
                  {"mismatches", r.mismatches}};
        if (!r.error.empty()) item["error"] = r.error;
        doc["entries"].push_back(item);
        text << (ok ? "PASS " : "FAIL ") << r.name << " (line " << r.line << ")\n";
        if (!r.error.empty()) text << "  error: " << r.error << "\n";
        for (const auto& m : r.mismatches) text << "  " << m << "\n";
        for (const auto& f : r.facts) text << "  " << f << "\n";
    }
    const std::size_t failed = results.size() - passed;
    doc["passed"] = passed;
    doc["failed"] = failed;
    doc["no_decomposable_ideal"] = exceptional;
    text << results.size() << " entries, " << passed << " passed, " << failed << " failed\n";
    text << "no decomposable coordinate-subspace ideal:";
    if (exceptional.empty()) text << " (none)";
    for (const auto& n : exceptional) text << " " << n;
    text << "\n";
    emit(as_json, doc, text.str());
    return failed == 0 ? kOk : kFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Locally conformal symplectic Lie algebras: checks, cohomology, extensions, lattices"};
    app.require_subcommand(1);

    Inputs check_in, coh_in;
    auto* check = app.add_subcommand("check", "Verify LCS structures and classify their kind");
    add_input_options(check, check_in, true);

    auto* coh = app.add_subcommand("cohomology", "Betti numbers of the untwisted and twisted complexes");
    add_input_options(coh, coh_in, false);

    ExtendOptions ext;
    auto* extend_cmd = app.add_subcommand("extend", "Extend an LCS algebra by an LCS representation");
    add_input_options(extend_cmd, ext.in, true);
    extend_cmd->add_option("--rep-file,-r", ext.rep_file, "Representation file")->required();
    extend_cmd->add_option("--result-name", ext.result_name, "Name of the emitted record");
    extend_cmd->add_flag("--check-unimodular", ext.check_unimodular, "Fail unless the extension is unimodular");

    LatticeOptions lat;
    auto* lattice = app.add_subcommand("lattice", "Lattice certificates for the almost abelian family");
    auto* m_opt = lattice->add_option("--m", lat.m, "Family index m > 2");
    auto* range_opt = lattice->add_option("--range", lat.range, "Index range A..B");
    m_opt->excludes(range_opt);
    lattice->add_flag("--distinguish", lat.distinguish, "Compare spectra for all pairs in the range");
    lattice->add_option("--tol", lat.tol, "Numeric tolerance")->check(CLI::PositiveNumber);
    lattice->add_flag("--json", lat.json, "Machine-readable output");

    std::string regress_file;
    bool regress_json = false;
    auto* regress = app.add_subcommand("regress", "Recompute and compare every corpus expectation");
    regress->add_option("file", regress_file, "Corpus file (default: $LCS_CORPUS or the shipped corpus)");
    regress->add_flag("--json", regress_json, "Machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*check) return run_check(check_in);
        if (*coh) return run_cohomology(coh_in);
        if (*extend_cmd) return run_extend(ext);
        if (*lattice) return run_lattice(lat);
        if (*regress) return run_regress(regress_file, regress_json);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kFailed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}
