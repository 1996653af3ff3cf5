// Command-line surface for the pointspec library.
//
// Exit codes: 0 success / affirmative verdict, 1 negative verdict,
// 2 indeterminate or inconclusive, 3 usage error, 4 input parse or IO error,
// 5 domain error (precondition violated by otherwise well-formed input).

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pointspec/congruence.hpp"
#include "pointspec/errors.hpp"
#include "pointspec/fixtures.hpp"
#include "pointspec/jsonio.hpp"
#include "pointspec/miner.hpp"
#include "pointspec/permact.hpp"
#include "pointspec/recon.hpp"
#include "pointspec/relideal.hpp"
#include "pointspec/volrel.hpp"

using namespace pointspec;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kNegative = 1, kIndeterminate = 2, kUsage = 3;

struct Global {
    std::string format;  // empty = per-command default
    unsigned jobs = 1;
    double tol = 1e-9;

    std::string fmt(const char* fallback) const { return format.empty() ? fallback : format; }
};

[[noreturn]] void reject_format(const std::string& got, const char* allowed) {
    throw CLI::ValidationError("--format", "\"" + got + "\" not available here (use " +
                                               allowed + ")");
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        default: return "indeterminate";
    }
}

json perm_to_json(const std::vector<size_t>& pi) {  // report 1-based labels
    json a = json::array();
    for (size_t x : pi) a.push_back(x + 1);
    return a;
}

json qmat_to_json(const QMat& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

json scalars_to_json(const std::vector<QuadScalar>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

PointConfiguration lift_config(const PointConfiguration& p, long d) {
    if (p.d() == d) return p;
    std::vector<std::vector<QuadScalar>> pts;
    for (const auto& row : p.points()) {
        std::vector<QuadScalar> out;
        for (const auto& c : row) out.push_back(c.lift_to(d));
        pts.push_back(std::move(out));
    }
    std::vector<QuadScalar> form;
    for (const auto& w : p.form()) form.push_back(w.lift_to(d));
    return {p.m(), d, std::move(pts), std::move(form)};
}

// brings a rational-only configuration into its partner's field
void align_fields(PointConfiguration& p, PointConfiguration& q) {
    if (p.d() == q.d()) return;
    if (p.d() == 1)
        p = lift_config(p, q.d());
    else if (q.d() == 1)
        q = lift_config(q, p.d());
}

SpectrumKind parse_kind(const std::string& s) {
    return s == "distance" ? SpectrumKind::distance : SpectrumKind::volume;
}

// ---------------------------------------------------------------- spectrum

int run_spectrum(const Global& g, const std::string& kind, const std::string& file) {
    const PointConfiguration p = load_config(file);
    const Spectrum s =
        parse_kind(kind) == SpectrumKind::distance ? distance_spectrum(p) : volume_spectrum(p);
    const std::string f = g.fmt("csv");
    if (f == "csv") {
        std::cout << spectrum_to_csv(s);
    } else if (f == "json") {
        print_json(spectrum_to_json(s));
    } else {
        std::cout << "{";
        for (size_t i = 0; i < s.values.size(); ++i)
            std::cout << (i ? ", " : "") << s.values[i].str();
        std::cout << "}\n";
    }
    return kOk;
}

// -------------------------------------------------------------------- hist

int run_hist(const Global& g, const std::string& kind, double bin, bool take_sqrt,
             const std::string& file) {
    const PointConfiguration p = load_config(file);
    const Spectrum s =
        parse_kind(kind) == SpectrumKind::distance ? distance_spectrum(p) : volume_spectrum(p);
    const Histogram h = histogram(s, bin, take_sqrt);
    const std::string f = g.fmt("csv");
    if (f == "csv") {
        std::cout << histogram_to_csv(h);
    } else if (f == "json") {
        json j;
        j["bin_size"] = h.bin_size;
        json counts = json::array();
        for (auto [edge, count] : h.counts) counts.push_back({edge, count});
        j["counts"] = std::move(counts);
        print_json(j);
    } else {
        for (auto [edge, count] : h.counts)
            std::cout << edge << "\t" << std::string(size_t(count), '#') << " " << count << "\n";
    }
    return kOk;
}

// ------------------------------------------------------------------- equiv

int run_equiv(const Global& g, const std::string& group, const std::string& file_a,
              const std::string& file_b) {
    PointConfiguration p = load_config(file_a), q = load_config(file_b);
    align_fields(p, q);
    json out;
    out["group"] = group;
    int rc = kNegative;
    if (group == "rigid") {
        if (auto pi = orbit_congruent(p, q)) {
            out["equivalent"] = true;
            out["relabeling"] = perm_to_json(*pi);
            if (auto w = rigid_witness(reorder(p, *pi), q)) {
                json wj;
                wj["exact"] = w->exact;
                if (w->exact) {
                    wj["map"] = qmat_to_json(w->map);
                    wj["shift"] = scalars_to_json(w->shift);
                } else {
                    wj["map_approx"] = w->map_approx;
                    wj["shift_approx"] = w->shift_approx;
                    wj["residual"] = w->residual;
                }
                out["witness"] = std::move(wj);
            }
            rc = kOk;
        } else {
            out["equivalent"] = false;
        }
    } else {  // affine: equal volume spectra up to relabeling and a global sign
        std::vector<size_t> pi;
        AffineWitness w;
        const Verdict v = orbit_volume_equivalent(p, q, &pi, &w);
        if (v == Verdict::yes) {
            out["equivalent"] = true;
            out["relabeling"] = perm_to_json(pi);
            json wj;
            wj["map"] = qmat_to_json(w.map);
            wj["shift"] = scalars_to_json(w.shift);
            wj["det_sign"] = w.det_sign;
            out["witness"] = std::move(wj);
            rc = kOk;
        } else if (v == Verdict::no) {
            out["equivalent"] = false;
        } else {
            out["equivalent"] = "indeterminate";
            out["reason"] = "both configurations are flat: volumes carry no information";
            rc = kIndeterminate;
        }
    }
    const std::string f = g.fmt("json");
    if (f == "csv") reject_format(f, "json, text");
    if (f == "json") {
        print_json(out);
    } else {
        std::cout << (rc == kOk ? "equivalent"
                                : rc == kNegative ? "not equivalent" : "indeterminate (flat)")
                  << "\n";
    }
    return rc;
}

// ----------------------------------------------------------------- certify

int run_certify(const Global& g, const std::string& file, size_t budget) {
    const PointConfiguration p = load_config(file);
    const CertifyReport r = certify_reconstructible(p, budget);
    const char* verdict = r.verdict == CertifyVerdict::certified        ? "certified"
                          : r.verdict == CertifyVerdict::not_applicable ? "not_applicable"
                                                                        : "inconclusive";
    const std::string f = g.fmt("json");
    if (f == "csv") reject_format(f, "json, text");
    if (f == "json") {
        json out;
        out["verdict"] = verdict;
        if (!r.reason.empty()) out["reason"] = r.reason;
        json cosets;
        cosets["count"] = r.cosets.representatives.size();
        cosets["sizes"] = r.cosets.sizes;
        json reps = json::array();
        for (const auto& rep : r.cosets.representatives) reps.push_back(rep.cycle_string());
        cosets["representatives"] = std::move(reps);
        out["double_cosets"] = std::move(cosets);
        json certs = json::array();
        for (const auto& c : r.certificates) {
            json cj;
            cj["psi"] = c.psi.cycle_string();
            cj["separated"] = c.separated;
            cj["relation"] = c.f_text;
            cj["relation_value"] = c.f_value.str();
            cj["permuted_value"] = c.separated_value.str();
            certs.push_back(std::move(cj));
        }
        out["certificates"] = std::move(certs);
        print_json(out);
    } else {
        std::cout << "verdict: " << verdict << "\n";
        if (!r.reason.empty()) std::cout << "reason: " << r.reason << "\n";
        std::cout << "double cosets: " << r.cosets.representatives.size() << " (sizes";
        for (uint64_t s : r.cosets.sizes) std::cout << " " << s;
        std::cout << ")\n";
        for (const auto& c : r.certificates) {
            std::cout << "psi " << c.psi.cycle_string() << ": "
                      << (c.separated ? "separated" : "not separated") << " by " << c.f_text
                      << " (value " << c.f_value.str() << ", permuted "
                      << c.separated_value.str() << ")\n";
        }
    }
    return r.verdict == CertifyVerdict::certified ? kOk : kIndeterminate;
}

// ------------------------------------------------------------- reconstruct

int run_reconstruct(const Global& g, const std::string& kind_name, size_t n, size_t m,
                    long sqrt_base, const std::string& file) {
    const SpectrumKind kind = parse_kind(kind_name);
    const Spectrum s = load_spectrum(file, kind, sqrt_base);
    json out;
    out["kind"] = kind_name;
    out["n"] = n;
    out["m"] = m;
    size_t count = 0;
    json reps = json::array();
    if (kind == SpectrumKind::distance) {
        const auto classes = realize_from_distances(s, n, m, g.tol);
        count = classes.size();
        for (const auto& c : classes) {
            json cj;
            cj["distances"] = scalars_to_json(c.distances);
            cj["gram"] = qmat_to_json(c.gram);
            cj["coords"] = c.coords;
            cj["residual"] = c.residual;
            reps.push_back(std::move(cj));
        }
    } else {
        const auto classes = realize_from_volumes(s, n, m);
        count = classes.size();
        for (const auto& c : classes) reps.push_back(config_to_json(c));
        if (n >= 4 && n <= m + 1) {
            // below the relation-bearing range: counts rest on search alone
            out["experimental"] = true;
        }
    }
    out["class_count"] = count;
    out["reconstructible"] = (count == 1);
    out["representatives"] = std::move(reps);
    const std::string f = g.fmt("json");
    if (f == "csv") reject_format(f, "json, text");
    if (f == "json") {
        print_json(out);
    } else {
        std::cout << count << (count == 1 ? " class" : " classes") << "\n";
    }
    return count == 1 ? kOk : kNegative;
}

// --------------------------------------------------------- check-relations

int run_check_relations(const Global& g, const std::string& file) {
    const PointConfiguration p = load_config(file);
    const size_t n = p.n(), m = p.m();
    std::vector<std::optional<QuadScalar>> values;
    for (const auto& idx : subset_list(n, m + 1)) values.emplace_back(signed_volume(p, idx));
    const RelationVerdict v = linear_relation_filter(n, m, values);
    const size_t checked = n >= m + 2 ? subset_list(n, m + 2).size() : 0;
    const std::string f = g.fmt("json");
    if (f == "csv") reject_format(f, "json, text");
    if (f == "json") {
        json out;
        out["n"] = n;
        out["m"] = m;
        out["relations_checked"] = checked;
        out["consistent"] = v.consistent;
        if (!v.consistent) out["violated"] = v.violated;
        print_json(out);
    } else {
        std::cout << checked << " relations checked: "
                  << (v.consistent ? "all hold" : "violated") << "\n";
    }
    return v.consistent ? kOk : kNegative;
}

// -------------------------------------------------------------------- mine

int run_mine(const Global& g, const std::string& grid, size_t n, const std::string& kind_name,
             uint64_t budget) {
    long w = 0, h = 0;
    if (std::sscanf(grid.c_str(), "%ldx%ld", &w, &h) != 2)
        throw CLI::ValidationError("--grid", "expected WxH, e.g. 4x2");
    const MineKind kind = kind_name == "distance" ? MineKind::distance
                          : kind_name == "volume" ? MineKind::volume
                                                  : MineKind::both;
    std::cerr << "mining " << w << "x" << h << " grid, n=" << n << ", kind=" << kind_name
              << ", jobs=" << g.jobs << "\n";
    const MineResult r = mine(w, h, n, kind, budget, g.jobs);
    std::cerr << "enumerated " << r.subsets_enumerated << " subsets -> " << r.canonical_configs
              << " canonical configurations in " << r.buckets << " spectrum buckets\n";
    const std::string f = g.fmt("json");
    if (f == "csv") reject_format(f, "json, text");
    if (f == "json") {
        for (const auto& pr : r.pairs) {  // one object per line: a streamable report
            json pj;
            pj["spectrum"] = pr.spectrum_key;
            pj["first"] = config_to_json(pr.first);
            pj["second"] = config_to_json(pr.second);
            if (pr.affine) pj["affine"] = verdict_name(*pr.affine);
            std::cout << pj.dump() << "\n";
        }
        json summary;
        summary["pairs"] = r.pairs.size();
        summary["subsets_enumerated"] = r.subsets_enumerated;
        summary["canonical_configs"] = r.canonical_configs;
        summary["buckets"] = r.buckets;
        summary["budget_exhausted"] = r.budget_exhausted;
        std::cout << json{{"summary", std::move(summary)}}.dump() << "\n";
    } else {
        for (const auto& pr : r.pairs) {
            std::cout << "collision (" << pr.spectrum_key << ")";
            if (pr.affine) std::cout << " affine=" << verdict_name(*pr.affine);
            std::cout << "\n";
            for (const auto* cfg : {&pr.first, &pr.second}) {
                std::cout << " ";
                for (const auto& pt : cfg->points()) {
                    std::cout << " (";
                    for (size_t k = 0; k < pt.size(); ++k)
                        std::cout << (k ? "," : "") << pt[k].str();
                    std::cout << ")";
                }
                std::cout << "\n";
            }
        }
        std::cout << r.pairs.size() << " collision pairs"
                  << (r.budget_exhausted ? " (budget exhausted, partial results)" : "") << "\n";
    }
    if (!r.pairs.empty()) return kOk;
    return r.budget_exhausted ? kIndeterminate : kNegative;
}

// ---------------------------------------------------------------- fixtures

int run_fixtures_list(const Global& g) {
    const std::string f = g.fmt("text");
    if (f == "json") {
        json out = json::array();
        for (const auto& fx : fixtures()) {
            json j;
            j["name"] = fx.name;
            j["description"] = fx.description;
            j["configs"] = fx.configs.size();
            j["n"] = fx.configs[0].n();
            j["dim"] = fx.configs[0].m();
            j["sqrt_base"] = fx.configs[0].d();
            out.push_back(std::move(j));
        }
        print_json(out);
    } else if (f == "csv") {
        std::cout << "name,configs,n,dim,sqrt_base\n";
        for (const auto& fx : fixtures())
            std::cout << fx.name << "," << fx.configs.size() << "," << fx.configs[0].n() << ","
                      << fx.configs[0].m() << "," << fx.configs[0].d() << "\n";
    } else {
        for (const auto& fx : fixtures())
            std::cout << fx.name << " (" << fx.configs.size() << " configs, n="
                      << fx.configs[0].n() << ", dim=" << fx.configs[0].m()
                      << "): " << fx.description << "\n";
    }
    return kOk;
}

int run_fixtures_show(const std::string& name, int index) {
    const Fixture& fx = fixture(name);
    if (index >= 0) {
        if (size_t(index) >= fx.configs.size())
            throw DomainError("fixture \"" + name + "\" has only " +
                              std::to_string(fx.configs.size()) + " configurations");
        print_json(config_to_json(fx.configs[size_t(index)]));
    } else if (fx.configs.size() == 1) {
        print_json(config_to_json(fx.configs[0]));
    } else {
        json out = json::array();
        for (const auto& c : fx.configs) out.push_back(config_to_json(c));
        print_json(out);
    }
    return kOk;
}

// ---------------------------------------------------------- relideal minor

int run_minor(const Global& g, size_t n, const std::vector<int>& rows,
              const std::vector<int>& cols) {
    const auto mat = symbolic_relation_matrix(n);
    const PairPolynomial f = minor(mat, rows, cols);
    const std::string fmt = g.fmt("text");
    if (fmt == "json") {
        json out;
        out["n"] = n;
        out["rows"] = rows;
        out["cols"] = cols;
        out["degree"] = f.degree();
        out["polynomial"] = f.str();
        print_json(out);
    } else if (fmt == "csv") {
        reject_format(fmt, "json, text");
    } else {
        std::cout << f.str() << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact distance and volume spectra of point configurations"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--jobs", g.jobs, "parallel workers (mine)")->check(CLI::PositiveNumber);
    app.add_option("--tol", g.tol, "coordinate tolerance for approximate outputs");

    int rc = kOk;
    std::string kind = "distance", file, file_b, group, grid_spec, fixture_name;
    double bin = 0;
    bool take_sqrt = false;
    size_t n = 0, m = 0, budget = 10000;
    uint64_t mine_budget = 50'000'000;
    long sqrt_base = 1;
    int index = -1;
    std::vector<int> rows, cols;

    auto* spectrum = app.add_subcommand("spectrum", "sorted exact spectrum of a configuration");
    spectrum->fallthrough();
    spectrum->add_option("--kind", kind, "distance or volume")
        ->check(CLI::IsMember({"distance", "volume"}));
    spectrum->add_option("file", file, "configuration JSON")->required();
    spectrum->callback([&] { rc = run_spectrum(g, kind, file); });

    auto* hist = app.add_subcommand("hist", "histogram of a spectrum");
    hist->fallthrough();
    hist->add_option("--kind", kind)->check(CLI::IsMember({"distance", "volume"}));
    hist->add_option("--bin", bin, "bin size")->required();
    hist->add_flag("--sqrt", take_sqrt, "bin square roots of the exact values");
    hist->add_option("file", file, "configuration JSON")->required();
    hist->callback([&] { rc = run_hist(g, kind, bin, take_sqrt, file); });

    auto* equiv = app.add_subcommand("equiv", "orbit equivalence of two configurations");
    equiv->fallthrough();
    equiv->add_option("--group", group, "rigid or affine")
        ->required()
        ->check(CLI::IsMember({"rigid", "affine"}));
    equiv->add_option("first", file, "configuration JSON")->required();
    equiv->add_option("second", file_b, "configuration JSON")->required();
    equiv->callback([&] { rc = run_equiv(g, group, file, file_b); });

    auto* certify = app.add_subcommand(
        "certify", "one-sided reconstructibility certificate from the distance spectrum");
    certify->fallthrough();
    certify->add_option("file", file, "configuration JSON")->required();
    certify->add_option("--budget", budget, "candidate relations tried per coset");
    certify->callback([&] { rc = run_certify(g, file, budget); });

    auto* recon = app.add_subcommand("reconstruct", "enumerate realizations of a spectrum");
    recon->fallthrough();
    recon->add_option("--kind", kind)->check(CLI::IsMember({"distance", "volume"}));
    recon->add_option("--n", n, "number of points")->required();
    recon->add_option("--m", m, "ambient dimension")->required();
    recon->add_option("--sqrt-base", sqrt_base, "field parameter d for parsing values");
    recon->add_option("file", file, "spectrum CSV")->required();
    recon->callback([&] { rc = run_reconstruct(g, kind, n, m, sqrt_base, file); });

    auto* check = app.add_subcommand("check-relations",
                                     "verify the linear volume relations on a configuration");
    check->fallthrough();
    check->add_option("file", file, "configuration JSON")->required();
    check->callback([&] { rc = run_check_relations(g, file); });

    auto* mine_cmd = app.add_subcommand("mine", "search a lattice grid for spectrum collisions");
    mine_cmd->fallthrough();
    mine_cmd->add_option("--grid", grid_spec, "grid size WxH")->required();
    mine_cmd->add_option("--n", n, "points per configuration")->required();
    mine_cmd->add_option("--kind", kind)->check(CLI::IsMember({"distance", "volume", "both"}));
    mine_cmd->add_option("--budget", mine_budget, "max subsets enumerated");
    mine_cmd->callback([&] { rc = run_mine(g, grid_spec, n, kind, mine_budget); });

    auto* fix = app.add_subcommand("fixtures", "bundled example configurations");
    fix->fallthrough();
    fix->require_subcommand(1);
    auto* fix_list = fix->add_subcommand("list", "list fixture names");
    fix_list->fallthrough();
    fix_list->callback([&] { rc = run_fixtures_list(g); });
    auto* show = fix->add_subcommand("show", "print a fixture as configuration JSON");
    show->fallthrough();
    show->add_option("name", fixture_name)->required();
    show->add_option("--index", index, "pick one configuration (0-based)");
    show->callback([&] { rc = run_fixtures_show(fixture_name, index); });

    auto* relideal = app.add_subcommand("relideal", "symbolic distance-relation tools");
    relideal->fallthrough();
    relideal->require_subcommand(1);
    auto* minor_cmd = relideal->add_subcommand("minor", "minor of the symbolic relation matrix");
    minor_cmd->fallthrough();
    minor_cmd->add_option("--n", n, "number of points")->required();
    minor_cmd->add_option("--rows", rows, "1-based row labels")->required()->delimiter(',');
    minor_cmd->add_option("--cols", cols, "1-based column labels")->required()->delimiter(',');
    minor_cmd->callback([&] { rc = run_minor(g, n, rows, cols); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return rc;
}
