// Command-line surface: generation, certification, verification, counting,
// and grid inspection, tied into reproducible runs.  Exit codes: 0 success,
// 1 verification failure, 2 configuration error.

#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsw/io.hpp"
#include "nsw/order_certificates.hpp"

using namespace nsw;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_config = 2;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Caps {
    bool unsafe = false;
    int max_d = 4;
    int max_n = 12;
};

GridParams validated_params(int d, int n, const Caps& caps) {
    if (d < 2 || n < 2) throw ConfigError("need --d >= 2 and --n >= 2");
    if (!caps.unsafe && (d > caps.max_d || n > caps.max_n))
        throw ConfigError("parameters exceed default caps (d <= " + std::to_string(caps.max_d) +
                          ", n <= " + std::to_string(caps.max_n) +
                          "); pass --unsafe-caps to override");
    GridParams p(d, n);
    if (std::size_t(d) * std::size_t(n) + std::size_t(num_bands(p)) + 1 > VertexSet::capacity)
        throw ConfigError("vertex count exceeds the representable range");
    return p;
}

struct ChoiceSource {
    std::string explicit_bits;
    bool random = false;
    std::uint64_t seed = 0;
    int all_choice = 0;  // 0 = unset

    ChoiceVector resolve(const GridParams& p) const {
        int given = int(!explicit_bits.empty()) + int(random) + int(all_choice != 0);
        if (given != 1)
            throw ConfigError("give exactly one of --choices, --random, --all-choice");
        if (!explicit_bits.empty()) {
            ChoiceVector cv{explicit_bits};
            try {
                validate_choices(cv, choice_slots(p).size());
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
            return cv;
        }
        if (all_choice != 0) return uniform_choice(p, all_choice);
        return sample_choices(p, 1, seed).front();
    }

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--choices", explicit_bits, "explicit choice string over {1,2}");
        cmd->add_flag("--random", random, "one seeded sample (see --seed)");
        cmd->add_option("--seed", seed, "seed for --random")->capture_default_str();
        cmd->add_option("--all-choice", all_choice, "use the same choice everywhere (1 or 2)")
            ->check(CLI::Range(1, 2));
    }
};

unsigned worker_count(std::size_t jobs) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("NSW_THREADS")) {
        long t = std::strtol(env, nullptr, 10);
        if (t >= 1) hw = unsigned(t);
    }
    if (hw > jobs) hw = unsigned(jobs ? jobs : 1);
    return hw;
}

// ----------------------------------------------------------------- reports

struct ReportLine {
    std::vector<std::pair<std::string, std::string>> kv;
    void add(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
    void add(const std::string& k, std::int64_t v) { kv.emplace_back(k, std::to_string(v)); }
};

void print_report(const ReportLine& line, const std::optional<CheckViolation>& violation,
                  bool as_json) {
    if (as_json) {
        json out;
        for (const auto& [k, v] : line.kv) {
            if (k == "ok") {
                out[k] = v == "1";
            } else if (!v.empty() && v.find_first_not_of("0123456789") == std::string::npos) {
                out[k] = std::stoll(v);
            } else {
                out[k] = v;
            }
        }
        out["violations"] = json::array();
        if (violation) {
            json v;
            v["kind"] = violation->kind;
            v["detail"] = violation->detail;
            if (violation->step >= 0) v["step"] = violation->step;
            if (!violation->facet.empty()) v["facet"] = face_line(violation->facet);
            if (!violation->node_path.empty()) v["node"] = violation->node_path;
            out["violations"].push_back(v);
        }
        std::cout << out.dump() << "\n";
        return;
    }
    std::string s;
    for (const auto& [k, v] : line.kv) {
        if (!s.empty()) s += ' ';
        std::string quoted = v.find(' ') == std::string::npos ? v : "\"" + v + "\"";
        s += k + "=" + quoted;
    }
    if (violation) {
        s += " kind=" + violation->kind;
        if (violation->step >= 0) s += " step=" + std::to_string(violation->step);
        if (!violation->facet.empty()) s += " facet=\"" + face_line(violation->facet) + "\"";
        if (!violation->node_path.empty()) s += " node=" + violation->node_path;
        s += " detail=\"" + violation->detail + "\"";
    }
    std::cout << s << "\n";
}

// ---------------------------------------------------------------- commands

int cmd_grid(const GridParams& p, int band) {
    std::cout << format_header(p) << "\n";
    std::cout << "bands " << num_bands(p) << "\n";
    if (has_extra_corner_band(p))
        std::cout << "note band-width divides the maximal index sum; the top band is the "
                     "single corner simplex\n";
    std::cout << "grid-boundary-facets " << grid_boundary_facets(p).size() << "\n";
    for (int k = 1; k <= num_bands(p); ++k) {
        if (band != 0 && k != band) continue;
        BandContext ctx(p, k);
        auto tuples = band_tuples(p, k);
        std::cout << "band " << k << " tuples " << tuples.size();
        if (ctx.simplex_band) {
            std::cout << " simplex\n";
            std::cout << "  tuple :";
            for (int i : tuples.front()) std::cout << " " << i;
            std::cout << " : " << face_line(tuple_face(p, tuples.front())) << "\n";
            continue;
        }
        auto connect = connecting_cells(p, ctx);
        std::cout << " low " << ctx.diag.low.size() << " up " << ctx.diag.up.size()
                  << " connecting " << connect.size() << " boundary-facets "
                  << ctx.bd.num_facets() << "\n";
        auto print_tuples = [&](const char* label, const std::vector<GridTuple>& ts) {
            for (const GridTuple& t : ts) {
                std::cout << "  " << label << " :";
                for (int i : t) std::cout << " " << i;
                std::cout << " : " << face_line(tuple_face(p, t)) << "\n";
            }
        };
        print_tuples("low", ctx.diag.low);
        print_tuples("up", ctx.diag.up);
        std::sort(connect.begin(), connect.end(),
                  [&](const Face& a, const Face& b) { return restriction_less(a, b, p.d); });
        for (const Face& f : connect) std::cout << "  connecting : " << face_line(f) << "\n";
    }
    return exit_ok;
}

int cmd_generate(const GridParams& p, const ChoiceSource& src, const std::string& emit,
                 const std::string& out_path) {
    ChoiceVector cv = src.resolve(p);
    SimplicialComplex c;
    if (emit == "sphere") {
        c = build_sphere(p, cv);
    } else if (emit == "ball") {
        c = build_ball(p, cv);
    } else if (emit.rfind("band=", 0) == 0) {
        int k = std::atoi(emit.c_str() + 5);
        if (k < 1 || k > num_bands(p)) throw ConfigError("band index out of range");
        c = build_band_ball(p, k, cv);
    } else {
        throw ConfigError("--emit must be sphere, ball, or band=K");
    }
    atomic_write_file(out_path, write_complex_text(c, p));
    std::cout << "wrote " << out_path << " facets=" << c.num_facets()
              << " vertices=" << c.support().size() << " choices=" << cv.bits << "\n";
    return exit_ok;
}

int cmd_certify(const GridParams& p, const ChoiceSource& src, const std::string& kind,
                const std::string& out_path) {
    ChoiceVector cv = src.resolve(p);
    std::string text;
    if (kind == "shelling3d") {
        if (p.d != 2) throw ConfigError("shelling3d certificates exist for --d 2 only");
        text = write_shelling_text(sphere_shelling_3d(p, cv), p);
    } else if (kind == "constructible") {
        text = write_tree_text(sphere_certificate(p, cv), p);
    } else {
        throw ConfigError("--kind must be shelling3d or constructible");
    }
    atomic_write_file(out_path, text);
    std::cout << "wrote " << out_path << " kind=" << kind << " choices=" << cv.bits << "\n";
    return exit_ok;
}

int cmd_verify(const std::string& complex_path, const std::string& shelling_path,
               const std::string& cert_path, bool sphere_check, bool as_json) {
    ParsedComplex pc = parse_complex_text(read_file(complex_path));
    const SimplicialComplex& c = pc.complex;

    int given = int(!shelling_path.empty()) + int(!cert_path.empty()) + int(sphere_check);
    if (given != 1)
        throw ConfigError("give exactly one of --shelling, --certificate, --sphere-check");

    ReportLine line;
    std::optional<CheckViolation> violation;
    bool ok = true;

    if (!shelling_path.empty()) {
        line.add("check", "shelling");
        ParsedCertificate cert = parse_certificate_text(read_file(shelling_path));
        if (cert.is_tree) throw ConfigError("--shelling expects a single shelling block");
        try {
            CheckReport rep = check_shelling(c, cert.shelling);
            ok = rep.ok;
            violation = rep.violation;
        } catch (const std::invalid_argument& e) {
            ok = false;
            violation = CheckViolation{"shelling-input", e.what(), -1, Face(), ""};
        }
        line.add("facets", std::int64_t(c.num_facets()));
    } else if (!cert_path.empty()) {
        line.add("check", "constructibility");
        ParsedCertificate cert = parse_certificate_text(read_file(cert_path));
        if (!cert.is_tree && cert.shelling.size() != 1)
            throw ConfigError("--certificate expects a chain certificate, not a shelling");
        ConstructibilityTree tree =
            cert.is_tree ? cert.tree : ConstructibilityTree::make_leaf(cert.shelling.front());
        CheckReport rep = check_constructibility(tree);
        ok = rep.ok;
        violation = rep.violation;
        if (ok && !labeled_equal(complex_of(tree), c)) {
            ok = false;
            violation = CheckViolation{"certificate-complex",
                                       "union of leaf simplices differs from the complex", -1,
                                       Face(), "root"};
        }
    } else {
        line.add("check", "sphere");
        int dim = c.dim();
        line.add("dim", dim);
        line.add("facets", std::int64_t(c.num_facets()));
        line.add("vertices", std::int64_t(c.support().size()));
        if (!c.is_pure() || dim < 1) {
            ok = false;
            violation = CheckViolation{"not-pure", "sphere check requires a pure complex", -1,
                                       Face(), ""};
        } else {
            CheckReport pm = is_closed_pseudomanifold(c);
            bool sc = strongly_connected(c);
            ComplexStats st = complex_stats(c);
            auto betti = homology_mod2(c);
            std::vector<std::int64_t> want(std::size_t(dim) + 1, 0);
            want.front() = want.back() = 1;
            std::string bs;
            for (std::size_t i = 0; i < betti.size(); ++i)
                bs += (i ? "," : "") + std::to_string(betti[i]);
            line.add("euler", st.euler);
            line.add("betti", bs);
            line.add("pseudomanifold", std::int64_t(pm.ok));
            line.add("strongly-connected", std::int64_t(sc));
            if (!pm.ok) {
                ok = false;
                violation = pm.violation;
            } else if (!sc) {
                ok = false;
                violation = CheckViolation{"not-strongly-connected",
                                           "facet adjacency graph is disconnected", -1, Face(),
                                           ""};
            } else if (st.euler != 1 + (dim % 2 == 0 ? 1 : -1)) {
                ok = false;
                violation = CheckViolation{"euler", "Euler characteristic is not a sphere's",
                                           -1, Face(), ""};
            } else if (betti != want) {
                ok = false;
                violation = CheckViolation{"betti", "mod-2 Betti numbers are not a sphere's",
                                           -1, Face(), ""};
            }
        }
    }

    ReportLine full;
    full.add("ok", std::int64_t(ok));
    for (auto& kv : line.kv) full.kv.push_back(std::move(kv));
    print_report(full, violation, as_json);
    return ok ? exit_ok : exit_check_failed;
}

int cmd_count(const GridParams& p, std::uint64_t seed, std::size_t samples, std::size_t bit_cap) {
    std::size_t bits = choice_slots(p).size();
    std::cout << format_header(p) << "\n";
    for (int k = 1; k <= num_bands(p); ++k) {
        Diagonals dg = diagonals(p, k);
        std::size_t size = is_simplex_band(p, k) ? 0 : dg.low.size() + dg.up.size();
        std::cout << "band " << k << " cells " << size << "\n";
    }
    std::cout << "bits " << bits << "\n";

    bool exhaustive = bits <= bit_cap;
    std::vector<ChoiceVector> cvs =
        exhaustive ? enumerate_all_choices(p) : sample_choices(p, samples, seed);
    std::cout << "mode " << (exhaustive ? "exhaustive" : "sample") << " vectors " << cvs.size()
              << "\n";
    if (!exhaustive) std::cout << "note bit cap exceeded; sampling with seed " << seed << "\n";

    std::vector<std::string> keys(cvs.size());
    unsigned workers = worker_count(cvs.size());
    std::vector<std::thread> pool;
    std::size_t chunk = (cvs.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(cvs.size(), lo + chunk);
        pool.emplace_back([&, lo, hi]() {
            for (std::size_t i = lo; i < hi; ++i)
                keys[i] = write_complex_text(build_sphere(p, cvs[i]), std::nullopt);
        });
    }
    for (auto& t : pool) t.join();

    std::unordered_set<std::string> distinct(keys.begin(), keys.end());
    std::cout << "distinct " << distinct.size() << "\n";
    if (exhaustive) {
        bool all_distinct = distinct.size() == cvs.size();
        std::cout << "all-distinct " << (all_distinct ? "yes" : "no") << "\n";
        return all_distinct ? exit_ok : exit_check_failed;
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"build, certify, and verify band-retriangulated sphere triangulations"};
    app.require_subcommand(1);
    app.fallthrough();

    Caps caps;
    app.add_flag("--unsafe-caps", caps.unsafe, "lift the default d/n caps");

    int d = 2, n = 4;
    auto add_params = [&](CLI::App* cmd) {
        cmd->add_option("--d", d, "number of paths")->required();
        cmd->add_option("--n", n, "vertices per path")->required();
    };

    // grid
    auto* grid = app.add_subcommand("grid", "print bands, diagonals, and boundary data");
    int band = 0;
    add_params(grid);
    grid->add_option("--band", band, "restrict to one band");

    // generate
    auto* generate = app.add_subcommand("generate", "build a complex and write it out");
    ChoiceSource gen_src;
    std::string gen_emit = "sphere", gen_out;
    add_params(generate);
    gen_src.add_flags(generate);
    generate->add_option("--emit", gen_emit, "sphere | ball | band=K")->capture_default_str();
    generate->add_option("--out", gen_out, "output file")->required();

    // certify
    auto* certify = app.add_subcommand("certify", "emit a shelling or chain certificate");
    ChoiceSource cert_src;
    std::string cert_kind, cert_out;
    add_params(certify);
    cert_src.add_flags(certify);
    certify->add_option("--kind", cert_kind, "shelling3d | constructible")->required();
    certify->add_option("--out", cert_out, "output file")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "check a complex or certificate");
    std::string v_complex, v_shelling, v_cert, v_report = "text";
    bool v_sphere = false;
    verify->add_option("--complex", v_complex, "facet-list file")->required();
    verify->add_option("--shelling", v_shelling, "shelling certificate to check");
    verify->add_option("--certificate", v_cert, "chain certificate to check");
    verify->add_flag("--sphere-check", v_sphere, "run the sphere battery");
    verify->add_option("--report", v_report, "text | json")->capture_default_str()
        ->check(CLI::IsMember({"text", "json"}));

    // count
    auto* count = app.add_subcommand("count", "enumerate choice vectors and distinct spheres");
    std::uint64_t count_seed = 0;
    std::size_t count_samples = 64, count_cap = exhaustive_choice_bit_cap;
    add_params(count);
    count->add_option("--seed", count_seed, "sampling seed")->capture_default_str();
    count->add_option("--samples", count_samples, "sample size beyond the cap")->capture_default_str();
    count->add_option("--bit-cap", count_cap, "largest bit count enumerated exhaustively")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return exit_config;
    }

    try {
        if (grid->parsed()) return cmd_grid(validated_params(d, n, caps), band);
        if (generate->parsed())
            return cmd_generate(validated_params(d, n, caps), gen_src, gen_emit, gen_out);
        if (certify->parsed())
            return cmd_certify(validated_params(d, n, caps), cert_src, cert_kind, cert_out);
        if (verify->parsed())
            return cmd_verify(v_complex, v_shelling, v_cert, v_sphere, v_report == "json");
        if (count->parsed())
            return cmd_count(validated_params(d, n, caps), count_seed, count_samples, count_cap);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
    return exit_config;
}
