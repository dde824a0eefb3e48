// Command-line front end: generate, measure, bounds, render.
//
// Exit codes: 0 pass, 1 a requested check failed, 2 usage or parse error,
// 3 invalid instance, 4 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "otheta/otheta.hpp"

namespace {

using namespace otheta;

enum Exit : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kInvalidInstance = 3, kIo = 4 };

struct Failure {
    int code;
    std::string message;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kIo, "cannot read " + path};
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
    if (!path || *path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw Failure{kIo, "cannot write " + *path};
    out << text;
    if (!out.flush()) throw Failure{kIo, "cannot write " + *path};
}

InstanceFile load_instance(const std::string& path) {
    const std::string text = read_input(path);
    try {
        return parse_instance(text);
    } catch (const ParseError& e) {
        throw Failure{kUsage, e.what()};
    }
}

std::string general_position_json(const InstanceFile& f, const GeneralPositionError& e) {
    Json j;
    j["error"] = e.what();
    Json vs = Json::array();
    for (const auto& v : e.report().violations) {
        vs.push_back({{"pair", {f.labels.at(v.first), f.labels.at(v.second)}}, {"kind", std::string(to_string(v.kind))}});
    }
    j["violations"] = std::move(vs);
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    int m = 0;
    std::optional<int> steps, reps, n;
    double eps = kDefaultEps;
    std::uint64_t seed = kDefaultSeed;
    std::optional<std::string> family;
    bool random = false;
    double box = 1.0;
    std::optional<std::int64_t> epoch;
    std::optional<std::string> out;
};

int run_generate(const GenerateArgs& a) {
    const auto count = [](std::optional<int> v, const char* flag) {
        if (!v) throw Failure{kUsage, std::string("this generator needs ") + flag};
        return *v;
    };
    if (a.m < 3) throw Failure{kUsage, "--m must be at least 3"};
    const BoundFamily fam = classify(a.m);
    if (a.family) {
        const std::string expected = a.random ? "random" : std::string(to_string(fam.family));
        if (*a.family != expected) {
            throw Failure{kUsage, "--family " + *a.family + " does not match m = " + std::to_string(a.m) + " (" +
                                      expected + ")"};
        }
    }
    GeneratedInstance inst;
    try {
        if (a.random) {
            inst = gen_random(a.m, count(a.n, "--n"), a.seed, a.box);
        } else {
            switch (fam.family) {
                case Family::NonSpanner: inst = gen_tower(a.m, count(a.n ? a.n : a.steps, "--n"), a.eps, a.seed); break;
                case Family::F4k4: inst = gen_staircase_4k4(a.m, count(a.steps, "--steps"), a.eps, a.seed); break;
                case Family::F4k2: inst = gen_staircase_4k2(a.m, count(a.reps, "--reps"), a.eps, a.seed); break;
                default: inst = gen_staircase_odd(a.m, count(a.steps, "--steps"), a.eps, a.seed); break;
            }
        }
    } catch (const Error& e) {
        throw Failure{kInvalidInstance, e.what()};
    }
    InstanceFile file = to_instance_file(inst);
    if (a.epoch) file.family->params["epoch"] = *a.epoch;
    write_output(a.out, serialize(file));
    return kPass;
}

// ---------------------------------------------------------------- measure

struct MeasureArgs {
    std::string instance;
    bool unordered = false;
    bool per_pair = false;
    std::optional<std::string> csv;
    bool certificate = false;
    bool oracle = false;
    unsigned threads = 1;
    std::optional<double> perturb;
    std::uint64_t seed = kDefaultSeed;
    std::optional<std::string> out;
};

int run_measure(const MeasureArgs& a) {
    const InstanceFile f = load_instance(a.instance);
    const BuildMode mode = a.unordered ? BuildMode::Unordered : BuildMode::Ordered;
    if (f.points.size() < 2) throw Failure{kInvalidInstance, "measuring needs at least two points"};
    std::optional<ConeSystem> system;
    std::optional<InsertionOrder> order;
    SpannerGraph graph;
    try {
        system.emplace(f.m);
        order = f.insertion_order();
        BuildOptions opts;
        opts.perturbation = a.perturb;
        opts.seed = a.seed;
        graph = mode == BuildMode::Ordered ? build_ordered(*system, f.points, *order, opts)
                                           : build_unordered(*system, f.points, opts);
    } catch (const GeneralPositionError& e) {
        write_output(a.out, general_position_json(f, e));
        return kInvalidInstance;
    } catch (const Error& e) {
        throw Failure{kInvalidInstance, e.what()};
    }

    const StretchReport stretch = all_pairs_stretch(graph, {a.per_pair || a.csv.has_value(), a.threads});
    std::vector<Check> checks;
    const BoundFamily fam = classify(f.m);
    if (mode == BuildMode::Ordered) {
        if (const auto ub = upper_bound(f.m)) {
            const bool ok = stretch.max_stretch <= *ub + 1e-9;
            checks.push_back({"upper_bound", ok,
                              "max stretch " + format_number(stretch.max_stretch) + (ok ? " <= " : " > ") +
                                  format_number(*ub) + " + 1e-9"});
        } else {
            checks.push_back({"upper_bound", true, "no constant bound: ordered graphs with m <= 6 are not spanners"});
        }
    }
    if (a.certificate) {
        if (mode == BuildMode::Ordered && fam.family == Family::F4k4) {
            const auto entries = ordered_path_certificate(*system, graph, *order);
            std::size_t failed = 0;
            for (const auto& c : entries) failed += c.pass ? 0 : 1;
            checks.push_back({"certificate", failed == 0,
                              std::to_string(entries.size() - failed) + "/" + std::to_string(entries.size()) +
                                  " ordered pairs within the path bound"});
        } else {
            std::cerr << "note: --certificate applies only to ordered builds with m = 0 mod 4, m >= 8; skipped\n";
        }
    }
    if (a.oracle) {
        if (graph.size() > kOracleLimit) {
            throw Failure{kUsage, "--oracle is limited to " + std::to_string(kOracleLimit) + " vertices"};
        }
        const StretchReport ref = stretch_oracle(graph);
        const bool ok = std::abs(ref.max_stretch - stretch.max_stretch) <= 1e-9 && ref.witness == stretch.witness;
        checks.push_back({"oracle", ok,
                          "dijkstra " + format_number(stretch.max_stretch) + ", floyd-warshall " +
                              format_number(ref.max_stretch)});
    }
    if (a.csv) write_output(a.csv, per_pair_csv(f, *stretch.per_pair));
    StretchReport shown = stretch;
    if (!a.per_pair) shown.per_pair.reset();
    write_output(a.out, report_to_json(f, mode, shown, checks).dump(2) + "\n");
    for (const auto& c : checks) {
        if (!c.pass) return kCheckFailed;
    }
    return kPass;
}

// ---------------------------------------------------------------- bounds

std::pair<int, int> parse_range(const std::string& s) {
    const auto sep = s.find_first_of(":-");
    try {
        if (sep == std::string::npos) throw std::invalid_argument("no separator");
        std::size_t used = 0;
        const int lo = std::stoi(s.substr(0, sep), &used);
        if (used != sep) throw std::invalid_argument("trailing characters");
        const std::string rest = s.substr(sep + 1);
        const int hi = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("trailing characters");
        return {lo, hi};
    } catch (const std::exception&) {
        throw Failure{kUsage, "--range expects LO:HI, got '" + s + "'"};
    }
}

int run_bounds(std::optional<int> m, const std::optional<std::string>& range, bool csv) {
    if (m.has_value() == range.has_value()) throw Failure{kUsage, "give exactly one of --m and --range"};
    const auto [lo, hi] = m ? std::pair{*m, *m} : parse_range(*range);
    if (lo < 3 || hi < lo) throw Failure{kUsage, "cone counts must satisfy 3 <= LO <= HI"};
    const auto num = [](std::optional<double> v) {
        if (!v) return std::string("none");
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.7f", *v);
        return std::string(buf);
    };
    std::string out;
    char line[160];
    if (csv) {
        out += "m,family,k,theta,upper,lower,tight\n";
    } else {
        std::snprintf(line, sizeof line, "%4s  %-11s %3s  %-9s  %-10s  %-10s  %s\n", "m", "family", "k", "theta", "upper",
                      "lower", "tight");
        out += line;
    }
    for (int c = lo; c <= hi; ++c) {
        const BoundFamily f = classify(c);
        const auto ub = upper_bound(c), lb = lower_bound(c);
        const bool tight = ub && lb && std::abs(*ub - *lb) <= 1e-12;
        char theta[32];
        std::snprintf(theta, sizeof theta, "%.7f", kTwoPi / c);
        const std::string fam(to_string(f.family));
        const std::string k = f.family == Family::NonSpanner ? "-" : std::to_string(f.k);
        const std::string status = tight ? "tight" : (f.family == Family::NonSpanner ? "non-spanner" : "gap");
        if (csv) {
            out += std::to_string(c) + "," + fam + "," + k + "," + theta + "," + num(ub) + "," + num(lb) + "," + status +
                   "\n";
        } else {
            std::snprintf(line, sizeof line, "%4d  %-11s %3s  %-9s  %-10s  %-10s  %s\n", c, fam.c_str(), k.c_str(), theta,
                          num(ub).c_str(), num(lb).c_str(), status.c_str());
            out += line;
        }
    }
    write_output(std::nullopt, out);
    return kPass;
}

// ---------------------------------------------------------------- render

int run_render(const std::string& instance, const std::string& graph_kind, const std::optional<std::string>& cones_at,
               const std::optional<std::string>& out) {
    const InstanceFile f = load_instance(instance);
    if (cones_at && std::find(f.labels.begin(), f.labels.end(), *cones_at) == f.labels.end()) {
        throw Failure{kUsage, "--cones-at names unknown label '" + *cones_at + "'"};
    }
    std::vector<Edge> edges;
    try {
        const ConeSystem s(f.m);
        if (graph_kind == "ordered") {
            edges = build_ordered(s, f.points, f.insertion_order()).edges();
        } else if (graph_kind == "unordered") {
            edges = build_unordered(s, f.points).edges();
        }
    } catch (const GeneralPositionError& e) {
        std::cerr << general_position_json(f, e);
        return kInvalidInstance;
    } catch (const Error& e) {
        throw Failure{kInvalidInstance, e.what()};
    }
    RenderOptions opt;
    opt.cones_at = cones_at;
    write_output(out, render_svg(f, edges, opt));
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ordered and unordered theta-graph toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Write an adversarial or random instance as JSON");
    g->add_option("--m", gen.m, "Cone count")->required();
    g->add_option("--steps", gen.steps, "Staircase steps (4k+3, 4k+4, 4k+5)");
    g->add_option("--reps", gen.reps, "Six-point configurations (4k+2)");
    g->add_option("--n", gen.n, "Tower steps (m <= 6) or random point count");
    g->add_option("--eps", gen.eps, "Closeness of the adversarial placements")->capture_default_str();
    g->add_option("--seed", gen.seed, "Jitter and random-instance seed")->capture_default_str();
    g->add_option("--family", gen.family, "Expected family name (checked against m)");
    g->add_flag("--random", gen.random, "Uniform random instance instead of an adversarial one");
    g->add_option("--box", gen.box, "Side of the random instance's square")->capture_default_str();
    g->add_option("--epoch", gen.epoch, "Fixed timestamp recorded in the family parameters");
    g->add_option("--out", gen.out, "Output path (default stdout)");

    MeasureArgs mea;
    bool ordered_flag = false;
    auto* me = app.add_subcommand("measure", "Build the graph of an instance and report its stretch");
    me->add_option("instance", mea.instance, "Instance JSON path, or - for stdin")->required();
    auto* o1 = me->add_flag("--ordered", ordered_flag, "Build the ordered graph (default)");
    auto* o2 = me->add_flag("--unordered", mea.unordered, "Build the unordered graph");
    o1->excludes(o2);
    me->add_flag("--per-pair", mea.per_pair, "Embed the per-pair table in the report");
    me->add_option("--csv", mea.csv, "Also write the per-pair table as CSV to this path");
    me->add_flag("--certificate", mea.certificate, "Check the per-pair path bound (m = 0 mod 4, m >= 8)");
    me->add_flag("--oracle", mea.oracle, "Cross-check the stretch with the Floyd-Warshall oracle");
    me->add_option("--threads", mea.threads, "Worker threads for the all-pairs computation")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
    me->add_option("--perturb", mea.perturb, "Jitter every point by up to this much before building")
        ->check(CLI::PositiveNumber);
    me->add_option("--seed", mea.seed, "Seed for --perturb")->capture_default_str();
    me->add_option("--out", mea.out, "Report path (default stdout)");

    std::optional<int> bm;
    std::optional<std::string> brange;
    bool bcsv = false;
    auto* b = app.add_subcommand("bounds", "Print upper and lower spanning-ratio bounds");
    b->add_option("--m", bm, "Cone count");
    b->add_option("--range", brange, "Inclusive range LO:HI of cone counts");
    b->add_flag("--csv", bcsv, "CSV instead of an aligned table");

    std::string rinst, rgraph = "ordered";
    std::optional<std::string> rcones, rout;
    auto* r = app.add_subcommand("render", "Draw an instance and its graph as SVG");
    r->add_option("instance", rinst, "Instance JSON path, or - for stdin")->required();
    r->add_option("--graph", rgraph, "Edges to draw")
        ->check(CLI::IsMember({"ordered", "unordered", "none"}))
        ->capture_default_str();
    r->add_option("--cones-at", rcones, "Draw the cone boundaries at this vertex");
    r->add_option("--out", rout, "SVG path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        if (g->parsed()) return run_generate(gen);
        if (me->parsed()) return run_measure(mea);
        if (b->parsed()) return run_bounds(bm, brange, bcsv);
        return run_render(rinst, rgraph, rcones, rout);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInstance;
    }
}
