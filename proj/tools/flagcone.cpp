// flagcone: command-line front end for the flag f-vector cone library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>

#include <CLI11.hpp>

#include <flagcone.hpp>

using namespace flagcone;

namespace {

constexpr int max_cone_rank = 6;
constexpr int max_check_rank = 7;
constexpr int max_witness_N = 64;
constexpr int max_witness_intervals = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    bool quiet = false;
};

void require_rank(const std::string& cmd, int rank, int cap) {
    if (rank < 1 || rank > cap)
        throw UsageError(cmd + ": --rank must be in [1," + std::to_string(cap) + "], got " + std::to_string(rank));
}

DDOptions dd_options(const Globals& g) {
    DDOptions opts;
    if (const char* env = std::getenv("FLAGCONE_THREADS")) {
        try {
            int t = std::stoi(env);
            if (t > 0) opts.threads = static_cast<unsigned>(t);
        } catch (const std::exception&) {
            throw UsageError("FLAGCONE_THREADS must be a positive integer");
        }
    }
    if (!g.quiet) {
        opts.progress = [](std::size_t done, std::size_t total, std::size_t rays) {
            if (done == total || done % 50 == 0)
                std::cerr << "dd: " << done << "/" << total << " constraints, " << rays << " rays\n";
        };
    }
    return opts;
}

std::vector<std::string> rank_set_labels(int n) {
    std::vector<std::string> labels;
    for_each_subset(n, [&](RankSet s) { labels.push_back(s.to_string()); });
    return labels;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    return in;
}

std::string form_line(const Form& f, Basis basis) { return to_expression(f, basis); }

// ---------------------------------------------------------------------------

int run_facets(int rank, const std::string& format) {
    require_rank("facets", rank, max_cone_rank);
    const FacetSystem fs = facet_system(rank - 1);
    if (format == "csv") {
        std::vector<std::vector<Integer>> rows;
        for (const auto& f : fs.facets) rows.emplace_back(f.normal.begin(), f.normal.end());
        write_csv(std::cout, rank_set_labels(fs.n), rows);
        return 0;
    }
    for (const auto& f : fs.facets) {
        std::string normal;
        for (int v : f.normal) normal += v ? '1' : '0';
        std::cout << f.system.to_string() << '\t' << normal << '\n';
    }
    std::cout << "facets=" << fs.facets.size() << '\n';
    return 0;
}

void print_rays(const std::vector<ExtremeRay>& rays, Basis basis) {
    for (const auto& r : rays)
        std::cout << form_line(r.form, basis) << '\t' << to_string(r.tag) << '\t' << "active=" << r.active.size() << '\n';
}

int run_extremes(const Globals& g, int rank, const std::string& method, const std::string& basis_name,
                 const std::string& format, bool allow_slow) {
    require_rank("extremes", rank, max_cone_rank);
    if (rank == max_cone_rank && !allow_slow) throw UsageError("extremes: rank 6 needs --allow-slow");
    const Basis basis = basis_name == "h" ? Basis::h : Basis::f;
    ExtremeOptions opts;
    opts.allow_slow = allow_slow;
    opts.dd = dd_options(g);

    // Lower ranks always come from double description: generation needs their new rays.
    const bool need_dd = method != "generate";
    std::vector<ExtremeReport> catalog;
    if (need_dd || rank >= 2) catalog = extreme_catalog(need_dd ? rank - 1 : rank - 2, opts);
    const ExtremeReport* dd = need_dd ? &catalog.back() : nullptr;

    std::vector<ExtremeRay> generated;
    if (method != "dd") {
        auto injected = new_rays_by_rank(catalog);
        injected.erase(rank);
        std::vector<ExtremeReport> lower(catalog.begin(), catalog.begin() + (rank - 1));
        for (const Form& f : generate_extremes(rank, injected))
            generated.push_back({f, classify(f, lower), active_facets(f)});
    }

    const std::vector<ExtremeRay>& shown = dd ? dd->rays : generated;
    if (format == "csv") {
        std::vector<Ray> rays;
        for (const auto& r : shown) rays.push_back(ray_of(r.form));
        write_rays_csv(std::cout, rank_set_labels(rank - 1), rays);
        return 0;
    }
    print_rays(shown, basis);
    auto count = [&](Tag t) {
        return std::count_if(shown.begin(), shown.end(), [&](const ExtremeRay& r) { return r.tag == t; });
    };
    std::cout << "rays=" << shown.size() << " lift=" << count(Tag::lift) << " convolution=" << count(Tag::convolution)
              << " new=" << count(Tag::fresh) << '\n';
    if (method == "both") {
        auto dd_set = dd->ray_set();
        std::size_t outside = 0;
        for (const auto& r : generated)
            if (!dd_set.contains(ray_of(r.form))) ++outside;
        std::cout << "generated=" << generated.size() << " dd=" << dd_set.size() << " generated_not_in_dd=" << outside
                  << " inclusion=" << (outside == 0 ? "ok" : "FAILED") << '\n';
        if (outside != 0) return 1;
    }
    return 0;
}

int run_check(int rank, const std::string& path, bool certificate) {
    require_rank("check", rank, max_check_rank);
    auto in = open_input(path);
    Form f = parse_form_text(in);
    if (f.degree() != rank)
        throw UsageError("check: form has rank " + std::to_string(f.degree()) + ", expected " + std::to_string(rank));
    auto result = contains(f);
    std::cout << (result.in_cone ? "in cone" : "not in cone") << '\n';
    if (certificate && result.certificate) {
        const auto& c = *result.certificate;
        std::cout << "violated " << c.violated.to_string() << " value=" << to_fraction_string(c.facet_value) << '\n';
        if (c.witness)
            std::cout << "witness n=" << c.witness->n << " intervals=" << c.witness->intervals.to_string()
                      << " N=" << c.witness->N << " value=" << to_fraction_string(c.witness_value) << '\n';
        else
            std::cout << "witness none (N above 2^" << witness_size_cap_log2 << ")\n";
    }
    return result.in_cone ? 0 : 1;
}

void print_flag_vector(int n, const FlagVector& fv) {
    for_each_subset(n, [&](RankSet s) { std::cout << s.to_string() << ' ' << fv[s.bits()].get_str() << '\n'; });
}

int run_fvector(const std::string& path) {
    auto in = open_input(path);
    GradedPoset p = read_poset(in);
    print_flag_vector(p.n(), flag_vector(p));
    return 0;
}

int run_witness(int rank, const std::string& expr, int N, const std::string& emit) {
    require_rank("witness", rank, max_check_rank);
    if (N < 1 || N > max_witness_N) throw UsageError("witness: --N must be in [1,64]");
    WitnessSpec spec{rank - 1, IntervalSystem::parse(rank - 1, expr), N};
    if (spec.intervals.size() > static_cast<std::size_t>(max_witness_intervals))
        throw UsageError("witness: at most 4 intervals");
    std::cout << "witness n=" << spec.n << " intervals=" << spec.intervals.to_string() << " N=" << N
              << " elements=" << witness_size(spec) << '\n';
    if (!emit.empty()) {
        GradedPoset p = witness_poset(spec);
        std::ofstream out(emit);
        if (!out) throw UsageError("cannot write '" + emit + "'");
        write_poset(out, p);
        print_flag_vector(spec.n, flag_vector(p));
    } else {
        print_flag_vector(spec.n, witness_flag_vector(spec));
    }
    return 0;
}

int run_partition(const std::string& path) {
    auto in = open_input(path);
    GradedPoset p = read_poset(in);
    auto fv = flag_vector(p);
    auto part = partition_classes(p);
    bool ok = true;
    for_each_subset(p.n(), [&](RankSet s) {
        const Integer size{static_cast<unsigned long>(part.class_size(s))};
        const bool match = size == fv[s.bits()];
        ok = ok && match;
        std::cout << s.to_string() << " |F_S|=" << size.get_str() << " f_S=" << fv[s.bits()].get_str() << ' '
                  << (match ? "ok" : "MISMATCH") << '\n';
    });
    for (const auto& c : part.chains) {
        std::string ids;
        for (std::size_t i = 0; i < c.elements.size(); ++i) ids += (i ? " < " : "") + p.id(c.elements[i]);
        std::cout << "chain " << ids << "\tI_C=" << chain_interval_system(p, c).to_string() << '\n';
    }
    std::cout << "chains=" << part.chains.size() << " identity=" << (ok ? "ok" : "FAILED") << '\n';
    return ok ? 0 : 1;
}

int run_polar(const Globals& g, int rank) {
    require_rank("polar", rank, max_cone_rank);
    const int n = rank - 1;
    auto cone = flag_cone(n, dd_options(g));
    std::cout << "generators\n";
    std::size_t extreme = 0;
    for (std::size_t i = 0; i < cone.generators.size(); ++i) {
        std::string v;
        for (const auto& z : cone.generators[i].coords) v += z == 0 ? '0' : '1';
        const bool ext = generator_is_extreme(cone, i);
        extreme += ext ? 1 : 0;
        std::cout << cone.generator_systems[i].to_string() << '\t' << v << '\t' << (ext ? "extreme" : "redundant") << '\n';
    }
    std::cout << "facets\n";
    for (std::size_t r = 0; r < cone.facets.rows(); ++r)
        std::cout << to_expression(Form::from_dense(rank, canonicalize(cone.facets.row(r)).as_rational())) << '\n';
    std::cout << "generators=" << cone.generators.size() << " extreme_generators=" << extreme
              << " facets=" << cone.facets.rows();
    ExtremeOptions opts;
    opts.allow_slow = true;
    opts.dd = dd_options(g);
    const auto rays = extreme_rays(n, opts).rays.size();
    const bool ok = rays == cone.facets.rows();
    std::cout << " extreme_rays=" << rays << " cross_count=" << (ok ? "ok" : "FAILED") << '\n';
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flag f-vector cone: facets, extreme rays, membership and witness posets"};
    app.require_subcommand(1);
    Globals globals;
    app.add_flag("--quiet", globals.quiet, "Suppress progress output on long runs");

    int rank = 0, N = 1;
    std::string format = "table", method = "dd", basis = "f", form_path, poset_path, intervals, emit;
    bool allow_slow = false, certificate = false;
    const auto formats = CLI::IsMember({"table", "csv"});

    auto* facets = app.add_subcommand("facets", "List the facet antichains and normals");
    facets->add_option("--rank", rank, "Rank n+1")->required();
    facets->add_option("--format", format)->check(formats);

    auto* extremes = app.add_subcommand("extremes", "Extreme rays with provenance tags");
    extremes->add_option("--rank", rank)->required();
    extremes->add_option("--method", method)->check(CLI::IsMember({"dd", "generate", "both"}));
    extremes->add_option("--basis", basis)->check(CLI::IsMember({"f", "h"}));
    extremes->add_option("--format", format)->check(formats);
    extremes->add_flag("--allow-slow", allow_slow);

    auto* check = app.add_subcommand("check", "Decide membership of a form");
    check->add_option("--rank", rank)->required();
    check->add_option("--form", form_path)->required();
    check->add_flag("--certificate", certificate);

    auto* fvector = app.add_subcommand("fvector", "Flag f-vector of a poset");
    fvector->add_option("--poset", poset_path)->required();

    auto* witness = app.add_subcommand("witness", "Witness poset for an interval system");
    witness->add_option("--rank", rank)->required();
    witness->add_option("--intervals", intervals)->required();
    witness->add_option("--N", N)->required();
    witness->add_option("--emit-poset", emit);

    auto* partition = app.add_subcommand("partition", "Chain classes F_S and interval systems I_C");
    partition->add_option("--poset", poset_path)->required();

    auto* polar = app.add_subcommand("polar", "Generators and facets of the flag cone");
    polar->add_option("--rank", rank)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*facets) return run_facets(rank, format);
        if (*extremes) return run_extremes(globals, rank, method, basis, format, allow_slow);
        if (*check) return run_check(rank, form_path, certificate);
        if (*fvector) return run_fvector(poset_path);
        if (*witness) return run_witness(rank, intervals, N, emit);
        if (*partition) return run_partition(poset_path);
        if (*polar) return run_polar(globals, rank);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
